"""
Restricted Annulus Service
Penalized rectangular annuli whose rectangle centers lie on a horizontal line y = line_y

Both rectangles are symmetric about the line, so the vertical part of the
annulus is described by two half-heights: the outer top T and the inner top t
(bottoms mirror them through the line). Top and bottom flags stay independent.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from annulus_cover.errors import DimensionMismatchError
from annulus_cover.models.geom_core import Instance, Mode, Rect, RectAnnulus, Solution, make_solution
from annulus_cover.services.annulus_rect_2d import (
    INF, NC, NNC, UNIFORM, AxisFrame, AxisPattern, _prefix, _segment_value, _with_defining,
    annulus_from_frames, axis_patterns,
)
from annulus_cover.utils.helpers import OperationCounter, to_fraction, tick

logger = logging.getLogger(__name__)

VARIANT_TAGS = {UNIFORM: 'restricted-u', NC: 'restricted-nc', NNC: 'restricted-nnc'}
FLAG_CHOICES = list(itertools.product((False, True), repeat=4))


@dataclass(frozen=True)
class RestrictedFrame:
    """Vertical part of a restricted annulus: outer top, inner top and the four top/bottom flags"""

    line_y: Fraction
    outer_top: Fraction
    inner_top: Fraction
    flags: Tuple[bool, bool, bool, bool] = (False, False, False, False)

    def axis_frame(self) -> AxisFrame:
        bottom_open, top_open, in_bottom_open, in_top_open = self.flags
        return AxisFrame(
            lo=2 * self.line_y - self.outer_top, hi=self.outer_top,
            in_lo=2 * self.line_y - self.inner_top, in_hi=self.inner_top,
            lo_open=bottom_open, hi_open=top_open, in_lo_open=in_bottom_open, in_hi_open=in_top_open,
        )

    @property
    def width(self) -> Fraction:
        return self.outer_top - self.inner_top


def half_heights(instance: Instance, line_y: Fraction) -> List[Fraction]:
    """Top coordinates a symmetric boundary can pass through: line_y + |y - line_y|"""
    return sorted({line_y + abs(p.y - line_y) for p in instance.points})


def restricted_frames(instance: Instance, line_y: Fraction, width: Optional[Fraction] = None,
                      counter: Optional[OperationCounter] = None) -> List[Tuple[RestrictedFrame, Tuple[int, ...]]]:
    """Vertical frames with distinct status signatures; fixed band width when width is given"""
    tops = half_heights(instance, line_y)
    inner_tops = sorted(set(tops) | {line_y})
    if width is None:
        shapes = [(T, t) for T in tops for t in inner_tops if t <= T]
    else:
        outer_tops = sorted(set(tops) | {t + width for t in inner_tops})
        shapes = [(T, T - width) for T in outer_tops if T - width >= line_y]

    ys = [p.y for p in instance.points]
    frames, seen = [], set()
    for (T, t), flags in itertools.product(shapes, FLAG_CHOICES):
        frame = RestrictedFrame(line_y, T, t, flags)
        axis = frame.axis_frame()
        signature = tuple(axis.status(y) for y in ys)
        tick(counter, len(ys), phase='vertical_frames')
        if signature in seen:
            continue
        seen.add(signature)
        frames.append((frame, signature))
    return frames


def _x_weights(instance: Instance, x_group: Sequence[int], kx: int, signature: Sequence[int]):
    """Per x-group weight of points with vertical status >= 1 and == 1"""
    band = [Fraction(0)] * kx
    hole = [Fraction(0)] * kx
    for p, gx, s in zip(instance.points, x_group, signature):
        if s == 0:
            continue
        gain = p.penalty if p.is_red else -p.penalty
        band[gx] += gain
        if s == 1:
            hole[gx] += gain
    return band, hole


def _best_free_pattern(band: Sequence[Fraction], hole: Sequence[Fraction]) -> Tuple[Fraction, Tuple[int, int, int, int]]:
    """Best out | band | hole | band | out split of the x-groups with independent widths"""
    k = len(band)
    best, best_cuts = Fraction(0), (k, k, k, k)
    first = second = third = None  # (value, p1) / (value, p1, p2) / (value, p1, p2, p3)
    for g in range(k):
        u, v = band[g], hole[g]
        candidates = [(v, g, g)]
        if first is not None:
            candidates.append((first[0] + v, first[1], g))
        if second is not None:
            candidates.append((second[0] + v, second[1], second[2]))
        next_second = max(candidates, key=lambda c: c[0])

        candidates = []
        if third is not None:
            candidates.append((third[0] + u, *third[1:]))
        if second is not None:
            candidates.append((second[0] + u, second[1], second[2], g))
        next_third = max(candidates, key=lambda c: c[0]) if candidates else None

        if first is not None and first[0] > 0:
            first = (first[0] + u, first[1])
        else:
            first = (u, g)
        second, third = next_second, next_third

        for value, cuts in ((first[0], (first[1], g + 1, g + 1, g + 1)),
                            (second[0], (second[1], second[2], g + 1, g + 1)),
                            (third[0] if third else None, (third[1], third[2], third[3], g + 1) if third else None)):
            if value is not None and value > best:
                best, best_cuts = value, cuts
    return best, best_cuts


def _empty_centered(instance: Instance, line_y: Fraction) -> RectAnnulus:
    """Degenerate annulus on the line, left of every point"""
    x = min((p.x for p in instance.points), default=Fraction(1)) - 1
    box = Rect(x, x, line_y, line_y)
    return RectAnnulus(box, box)


def solve_restricted(instance: Instance, shape: str, line_y, counter: Optional[OperationCounter] = None) -> Solution:
    """Optimal penalized annulus with both rectangle centers on y = line_y"""
    if instance.dimension != 2:
        raise DimensionMismatchError(f"solve_restricted needs a 2D instance, got dimension {instance.dimension}")
    if shape not in VARIANT_TAGS:
        raise ValueError(f"unknown restricted shape: {shape}")
    line_y = to_fraction(line_y)
    variant = VARIANT_TAGS[shape]
    if not instance.points:
        return make_solution(instance, _empty_centered(instance, line_y), Mode.PENALIZED, variant, Fraction(0))

    x_coords = sorted({p.x for p in instance.points})
    x_index = {x: g for g, x in enumerate(x_coords)}
    x_group = [x_index[p.x] for p in instance.points]
    kx = len(x_coords)

    best_value, best_choice = Fraction(0), None

    if shape == NNC:
        for frame, signature in restricted_frames(instance, line_y, counter=counter):
            band, hole = _x_weights(instance, x_group, kx, signature)
            tick(counter, kx, phase='x_sweep')
            value, cuts = _best_free_pattern(band, hole)
            if value > best_value:
                best_value, best_choice = value, (frame, AxisPattern(cuts, Fraction(0), INF).free_frame(x_coords))
    elif shape == NC:
        x_patterns = axis_patterns(x_coords)
        for frame, signature in restricted_frames(instance, line_y, counter=counter):
            band, hole = _x_weights(instance, x_group, kx, signature)
            prefix_band, prefix_hole = _prefix(band), _prefix(hole)
            tick(counter, len(x_patterns), phase='pattern_pairs')
            for xp in x_patterns:
                value = _segment_value(prefix_band, prefix_hole, xp.cuts)
                if value > best_value:
                    best_value, best_choice = value, (frame, xp.frame(x_coords, xp.width_lo))
    else:
        x_patterns = axis_patterns(x_coords)
        widths = {Fraction(0)} | {xp.width_lo for xp in x_patterns} | {
            xp.width_hi for xp in x_patterns if xp.width_hi != INF}
        levels = half_heights(instance, line_y) + [line_y]
        widths |= {abs(a - b) for a in levels for b in levels}
        for width in sorted(widths):
            fitting = [xp for xp in x_patterns if xp.width_lo <= width <= xp.width_hi]
            if not fitting:
                continue
            for frame, signature in restricted_frames(instance, line_y, width, counter):
                band, hole = _x_weights(instance, x_group, kx, signature)
                prefix_band, prefix_hole = _prefix(band), _prefix(hole)
                tick(counter, len(fitting), phase='pattern_pairs')
                for xp in fitting:
                    value = _segment_value(prefix_band, prefix_hole, xp.cuts)
                    if value > best_value:
                        best_value, best_choice = value, (frame, xp.frame(x_coords, width))

    if best_choice is None:
        annulus = _empty_centered(instance, line_y)
    else:
        frame, x_frame = best_choice
        annulus = _with_defining(instance, annulus_from_frames(x_frame, frame.axis_frame()))
    expected = instance.total_red_penalty - best_value
    solution = make_solution(instance, annulus, Mode.PENALIZED, variant, expected,
                             {'line_y': line_y})
    logger.debug("solve_restricted %s line_y=%s n=%d m=%d lambda=%s", shape, line_y, instance.n, instance.m,
                 solution.lambda_value)
    return solution
