"""
Rectangular Annulus Service
Axis-parallel annulus solvers in the plane: nonuniform non-concentric (nnc),
nonuniform concentric (nc) and uniform, each in constraint and penalized mode

Along one axis an annulus is a frame: outer range [lo, hi] with an inner
range [in_lo, in_hi]. Every point gets an axis status (0 outside, 1 band,
2 hole) and is covered iff both statuses are >= 1 and not both are 2, so the
covered weight of two frames is the outer box minus the hole box.

The concentric solvers only visit frames with one band running between two
red-holding groups and the opposite band sliding at the same width; any
optimum shrinks into that form without losing value.
"""

import bisect
import logging
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from annulus_cover.errors import DimensionMismatchError, InfeasibleError
from annulus_cover.models.geom_core import (
    Instance, Mode, Point, Rect, RectAnnulus, SideOpen, Solution, in_hole, in_range, make_solution,
    red_defining_points,
)
from annulus_cover.utils.helpers import OperationCounter, tick

logger = logging.getLogger(__name__)

NNC = 'nnc'
NC = 'nc'
UNIFORM = 'uniform'
SHAPES = (NNC, NC, UNIFORM)

INF = math.inf

VARIANT_TAGS = {NNC: 'rect-nnc', NC: 'rect-nc', UNIFORM: 'rect-u'}


@dataclass(frozen=True)
class AxisFrame:
    """One axis of an annulus; open outer ends exclude, open inner ends include"""

    lo: Fraction
    hi: Fraction
    in_lo: Fraction
    in_hi: Fraction
    lo_open: bool = False
    hi_open: bool = False
    in_lo_open: bool = False
    in_hi_open: bool = False

    def status(self, v: Fraction) -> int:
        if not in_range(v, self.lo, self.hi, self.lo_open, self.hi_open):
            return 0
        return 2 if in_hole(v, self.in_lo, self.in_hi, self.in_lo_open, self.in_hi_open) else 1


@dataclass(frozen=True)
class AxisPattern:
    """Statuses of the sorted coordinate groups of one axis: out | band | hole | band | out

    cuts (p1, p2, p3, p4) split the groups into [0,p1) out, [p1,p2) band,
    [p2,p3) hole, [p3,p4) band and [p4,k) out. width_lo/width_hi bound the
    common band width of a concentric frame realizing the pattern.
    """

    cuts: Tuple[int, int, int, int]
    width_lo: Fraction
    width_hi: object

    def status_of(self, g: int) -> int:
        p1, p2, p3, p4 = self.cuts
        if g < p1 or g >= p4:
            return 0
        return 2 if p2 <= g < p3 else 1

    def frame(self, coords: Sequence[Fraction], width: Fraction) -> AxisFrame:
        """Concrete frame with the given band width on both sides"""
        p1, p2, p3, p4 = self.cuts
        low_l, high_l = _bounds(coords, p1)
        low_1, high_1 = _bounds(coords, p2)
        low_2, high_2 = _bounds(coords, p3)
        low_r, high_r = _bounds(coords, p4)

        r_max = min(high_r, high_2 + width)
        lo = max(low_l, low_1 - width)
        if lo == -INF:
            lo = min(high_l, high_1 - width, r_max - 2 * width)
        hi = r_max
        if hi == INF:
            hi = max(v for v in (low_r, low_2 + width, lo + 2 * width) if v != -INF)
        in_lo, in_hi = lo + width, hi - width
        return AxisFrame(
            lo=lo, hi=hi, in_lo=in_lo, in_hi=in_hi,
            lo_open=lo == low_l,
            hi_open=hi == high_r,
            in_lo_open=in_lo == high_1,
            in_hi_open=in_hi == low_2,
        )

    def free_frame(self, coords: Sequence[Fraction]) -> AxisFrame:
        """Frame with independent band widths whose boundaries sit on the groups just inside each cut"""
        p1, p2, p3, p4 = self.cuts
        if p1 == p4:
            return AxisFrame(coords[-1], coords[-1], coords[-1], coords[-1], lo_open=True)
        lo, hi = coords[p1], coords[p4 - 1]
        if p2 == p3:
            return AxisFrame(lo, hi, lo, lo)
        return AxisFrame(lo, hi, coords[p2], coords[p3 - 1], in_lo_open=True, in_hi_open=True)


def _bounds(coords: Sequence[Fraction], cut: int) -> Tuple[object, object]:
    """Range a boundary may take while splitting groups [0,cut) from [cut,k)"""
    low = coords[cut - 1] if cut > 0 else -INF
    high = coords[cut] if cut < len(coords) else INF
    return low, high


def width_range(coords: Sequence[Fraction], cuts: Tuple[int, int, int, int]) -> Tuple[object, object]:
    """Feasible common band widths of a concentric frame with the given cuts"""
    low_l, high_l = _bounds(coords, cuts[0])
    low_1, high_1 = _bounds(coords, cuts[1])
    low_2, high_2 = _bounds(coords, cuts[2])
    low_r, high_r = _bounds(coords, cuts[3])
    lower = max(Fraction(0), low_1 - high_l, low_r - high_2)
    upper = min(high_1 - low_l, high_r - low_2, (high_r - low_l) / 2, high_2 - low_l, high_r - low_1)
    return lower, upper


def axis_patterns(coords: Sequence[Fraction], concentric: bool = True) -> List[AxisPattern]:
    """Every realizable status pattern of one axis; concentric patterns carry their width range"""
    k = len(coords)
    patterns = []
    seen = set()
    for p1 in range(k + 1):
        for p2 in range(p1, k + 1):
            for p3 in range(p2, k + 1):
                for p4 in range(p3, k + 1):
                    cuts = (k, k, k, k) if p1 == p4 else (p1, p2, p3, p4)
                    lower, upper = width_range(coords, cuts) if concentric else (Fraction(0), INF)
                    if lower > upper:
                        continue
                    key = (cuts, lower, upper)
                    if key in seen:
                        continue
                    seen.add(key)
                    patterns.append(AxisPattern(cuts, lower, upper))
    return patterns


def annulus_from_frames(fx: AxisFrame, fy: AxisFrame) -> RectAnnulus:
    return RectAnnulus(
        outer=Rect(fx.lo, fx.hi, fy.lo, fy.hi),
        inner=Rect(fx.in_lo, fx.in_hi, fy.in_lo, fy.in_hi),
        side_open=SideOpen(
            outer_left=fx.lo_open, outer_right=fx.hi_open, outer_bottom=fy.lo_open, outer_top=fy.hi_open,
            inner_left=fx.in_lo_open, inner_right=fx.in_hi_open,
            inner_bottom=fy.in_lo_open, inner_top=fy.in_hi_open,
        ),
    )


def _empty_annulus(instance: Instance) -> RectAnnulus:
    if instance.points:
        x = min(p.x for p in instance.points) - 1
        y = min(p.y for p in instance.points) - 1
    else:
        x = y = Fraction(0)
    box = Rect(x, x, y, y)
    return RectAnnulus(box, box)


def _with_defining(instance: Instance, annulus: RectAnnulus) -> RectAnnulus:
    return RectAnnulus(annulus.outer, annulus.inner, annulus.side_open, red_defining_points(instance, annulus))


def max_weight_rectangle(points: Iterable[Tuple[Sequence[Fraction], Fraction]], clip: Optional[Rect] = None,
                         counter: Optional[OperationCounter] = None) -> Tuple[Optional[Rect], Fraction]:
    """Axis rectangle with boundaries on point coordinates maximizing the weight of the points it contains

    Returns (None, 0) when no rectangle has positive weight. Ties go to the
    lexicographically smallest (left, right, bottom, top).
    """
    points = [(tuple(c), Fraction(w)) for c, w in points]
    if clip is not None:
        points = [(c, w) for c, w in points
                  if clip.left <= c[0] <= clip.right and clip.bottom <= c[1] <= clip.top]
    xs = sorted({c[0] for c, _ in points})
    ys = sorted({c[1] for c, _ in points})
    x_index = {x: i for i, x in enumerate(xs)}
    y_index = {y: i for i, y in enumerate(ys)}
    grid: Dict[int, List[Tuple[int, Fraction]]] = {}
    for c, w in points:
        grid.setdefault(x_index[c[0]], []).append((y_index[c[1]], w))

    best_weight, best_box = Fraction(0), None
    for i in range(len(xs)):
        column = [Fraction(0)] * len(ys)
        for j in range(i, len(xs)):
            for yi, w in grid.get(j, ()):
                column[yi] += w
            tick(counter, len(ys), phase='max_weight_rectangle')
            running, start = None, 0
            for t, value in enumerate(column):
                if running is None or running < 0:
                    running, start = value, t
                else:
                    running += value
                box = (xs[i], xs[j], ys[start], ys[t])
                if running > best_weight or (running == best_weight and best_box is not None and box < best_box):
                    best_weight, best_box = running, box
    if best_box is None or best_weight <= 0:
        return None, Fraction(0)
    return Rect(*best_box), best_weight


@dataclass
class CandidateFrame:
    """Best hole found inside the pinned outer rectangle during the constraint sweep"""

    outer: Rect
    x_bounds: Tuple[object, object] = (-INF, INF)
    y_bounds: Tuple[object, object] = (-INF, INF)
    blues_in_hole: int = 0

    def inner(self) -> Tuple[Rect, Dict[str, bool]]:
        o = self.outer
        left, right = self.x_bounds
        bottom, top = self.y_bounds
        flags = {
            'inner_left': left == -INF,
            'inner_right': right == INF,
            'inner_bottom': bottom == -INF,
            'inner_top': top == INF,
        }
        rect = Rect(
            o.left if left == -INF else left,
            o.right if right == INF else right,
            o.bottom if bottom == -INF else bottom,
            o.top if top == INF else top,
        )
        return rect, flags


def _best_anchored_hole(cells: Sequence[Tuple[Fraction, Fraction, bool]], counter) -> Tuple[int, tuple, tuple]:
    """Most blues in a red-free open hole whose low u side rests on a red

    cells are (u, v, is_red) for the points inside the outer rectangle. The
    sweep walks u groups to the right of every red anchor and keeps the v
    range around the anchor clear of reds, so each anchor costs one pass.
    Bounds of +-INF run through the outer rectangle.
    """
    cells = sorted(cells, key=lambda c: (c[0], c[1]))
    us = [c[0] for c in cells]
    vs = sorted({c[1] for c in cells})
    v_group = {v: g for g, v in enumerate(vs)}
    kv = len(vs)

    def v_bounds(low: int, high: int) -> Tuple[object, object]:
        return (vs[low] if low >= 0 else -INF, vs[high] if high < kv else INF)

    best = (0, None, None)
    for qu, qv, anchor_red in cells:
        if not anchor_red:
            continue
        gq = v_group[qv]
        reached = [0] * kv
        low, high, count = -1, kv, 0
        i = bisect.bisect_right(us, qu)
        tick(counter, kv, phase='hole_sweep')
        while i < len(cells):
            u = us[i]
            if count > best[0]:
                best = (count, (qu, u), v_bounds(low, high))
            j = bisect.bisect_right(us, u, i)
            blocked = False
            for _, v, red in cells[i:j]:
                if not red:
                    continue
                g = v_group[v]
                if g == gq:
                    blocked = True
                elif gq < g < high:
                    count -= sum(reached[g:high])
                    high = g
                elif low < g < gq:
                    count -= sum(reached[low + 1:g + 1])
                    low = g
            if blocked:
                break
            for _, v, red in cells[i:j]:
                if not red:
                    g = v_group[v]
                    reached[g] += 1
                    if low < g < high:
                        count += 1
            tick(counter, j - i, phase='hole_sweep')
            i = j
        else:
            if count > best[0]:
                best = (count, (qu, INF), v_bounds(low, high))
    return best


# (flip u, swap axes): the sweep runs right, left, up and down from its anchor
SWEEP_DIRECTIONS = ((False, False), (True, False), (False, True), (True, True))


def _solve_nnc_constraint(instance: Instance, counter) -> Solution:
    reds, blues = instance.reds, instance.blues
    outer = Rect(min(q.x for q in reds), max(q.x for q in reds), min(q.y for q in reds), max(q.y for q in reds))
    blues_in_outer = [p for p in blues if outer.left <= p.x <= outer.right and outer.bottom <= p.y <= outer.top]
    inside = [(p.x, p.y, p.is_red) for p in reds + tuple(blues_in_outer)]

    best = CandidateFrame(outer)
    for flip, swap in SWEEP_DIRECTIONS:
        cells = []
        for x, y, red in inside:
            u, v = (y, x) if swap else (x, y)
            cells.append((-u if flip else u, v, red))
        count, u_bounds, v_bounds = _best_anchored_hole(cells, counter)
        if count <= best.blues_in_hole:
            continue
        if flip:
            u_bounds = (-u_bounds[1], -u_bounds[0])
        x_bounds, y_bounds = (v_bounds, u_bounds) if swap else (u_bounds, v_bounds)
        best = CandidateFrame(outer, x_bounds, y_bounds, count)

    if best.blues_in_hole == 0:
        inner, flags = Rect(outer.left, outer.left, outer.bottom, outer.bottom), {}
    else:
        inner, flags = best.inner()
    annulus = _with_defining(instance, RectAnnulus(outer, inner, SideOpen(**flags)))
    expected = len(blues_in_outer) - best.blues_in_hole
    return make_solution(instance, annulus, Mode.CONSTRAINT, VARIANT_TAGS[NNC], expected,
                         {'blues_in_hole': best.blues_in_hole})


def _solve_nnc_penalized(instance: Instance, counter) -> Solution:
    red_xs = sorted({q.x for q in instance.reds})
    red_ys = sorted({q.y for q in instance.reds})
    weight = {p.pid: (p.penalty if p.is_red else -p.penalty) for p in instance.points}

    best_value, best_annulus = Fraction(0), None
    for i, left in enumerate(red_xs):
        for right in red_xs[i:]:
            for j, bottom in enumerate(red_ys):
                for top in red_ys[j:]:
                    tick(counter, instance.n + instance.m, phase='outer')
                    outer = Rect(left, right, bottom, top)
                    inside = [p for p in instance.points
                              if left <= p.x <= right and bottom <= p.y <= top]
                    outer_weight = sum((weight[p.pid] for p in inside), Fraction(0))
                    hole, hole_gain = max_weight_rectangle(
                        [(p.coords, -weight[p.pid]) for p in inside], outer, counter)
                    value = outer_weight + hole_gain
                    if value > best_value:
                        if hole is None:
                            annulus = RectAnnulus(outer, Rect(left, left, bottom, bottom))
                        else:
                            annulus = RectAnnulus(outer, hole, SideOpen(
                                inner_left=True, inner_right=True, inner_bottom=True, inner_top=True))
                        best_value, best_annulus = value, annulus

    annulus = _empty_annulus(instance) if best_annulus is None else _with_defining(instance, best_annulus)
    expected = instance.total_red_penalty - best_value
    return make_solution(instance, annulus, Mode.PENALIZED, VARIANT_TAGS[NNC], expected)


def _prefix(values) -> list:
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return out


def _segment_value(prefix_band, prefix_hole, cuts) -> object:
    p1, p2, p3, p4 = cuts
    return (prefix_band[p2] - prefix_band[p1] + prefix_band[p4] - prefix_band[p3]
            + prefix_hole[p3] - prefix_hole[p2])


class _Axis:
    """Sorted coordinate groups of one axis, the group of every point and the groups holding reds"""

    def __init__(self, points: Sequence[Point], index: int):
        values = [p.coords[index] for p in points]
        self.coords = sorted(set(values))
        position = {c: g for g, c in enumerate(self.coords)}
        self.group = [position[v] for v in values]
        self.red_groups = sorted({g for g, p in zip(self.group, points) if p.is_red})

    @property
    def k(self) -> int:
        return len(self.coords)

    def fits(self, cuts: Tuple[int, int, int, int], width: Fraction) -> bool:
        lower, upper = width_range(self.coords, cuts)
        return lower <= width <= upper

    def spans_reds(self, cuts: Tuple[int, int, int, int]) -> bool:
        return cuts[0] <= self.red_groups[0] and cuts[3] > self.red_groups[-1]

    def upper_sides(self, width: Fraction, first: int, last: Optional[int] = None) -> Iterator[Tuple[int, int]]:
        """Cuts (c3, c4) of an upper band of the given width with first <= c3 <= last"""
        c, k = self.coords, len(self.coords)
        last = k if last is None else last
        for c3 in range(first, last + 1):
            low, high = _bounds(c, c3)
            start = max(c3, bisect.bisect_left(c, low + width))
            stop = min(k, bisect.bisect_right(c, high + width))
            for c4 in range(start, stop + 1):
                yield c3, c4

    def lower_sides(self, width: Fraction, first: int, last: int) -> Iterator[Tuple[int, int]]:
        """Cuts (c1, c2) of a lower band of the given width with first <= c2 <= last"""
        c = self.coords
        for c2 in range(first, last + 1):
            low, high = _bounds(c, c2)
            start = bisect.bisect_left(c, low - width)
            stop = min(c2, bisect.bisect_right(c, high - width))
            for c1 in range(start, stop + 1):
                yield c1, c2


class _Grid:
    """Integer prefix sums over (u group, v group) cells"""

    def __init__(self, ku: int, kv: int, cells: Iterable[Tuple[int, int, int]]):
        weight = [[0] * kv for _ in range(ku)]
        for gu, gv, w in cells:
            weight[gu][gv] += w
        self.kv = kv
        self.table = [[0] * (kv + 1)]
        for row in weight:
            above = self.table[-1]
            running, line = 0, [0]
            for j, w in enumerate(row):
                running += w
                line.append(above[j + 1] + running)
            self.table.append(line)

    def box(self, u1: int, u2: int, v1: int, v2: int) -> int:
        t = self.table
        return t[u2][v2] - t[u1][v2] - t[u2][v1] + t[u1][v1]

    def strip(self, u1: int, u2: int) -> List[int]:
        """Prefix sums along v of the cells with u1 <= u group < u2"""
        top, bottom = self.table[u2], self.table[u1]
        return [a - b for a, b in zip(top, bottom)]

    def covered(self, ucuts: Tuple[int, int, int, int], vcuts: Tuple[int, int, int, int]) -> int:
        return (self.box(ucuts[0], ucuts[3], vcuts[0], vcuts[3])
                - self.box(ucuts[1], ucuts[2], vcuts[1], vcuts[2]))


def _cell_weights(instance: Instance, mode: Mode) -> Tuple[List[int], int]:
    """Integer weight per point and the scale applied: blue counts, or signed penalties times their lcm"""
    if mode is Mode.CONSTRAINT:
        return [0 if p.is_red else 1 for p in instance.points], 1
    scale = 1
    for p in instance.points:
        d = p.penalty.denominator
        scale = scale * d // math.gcd(scale, d)
    return [int(p.penalty * scale) * (1 if p.is_red else -1) for p in instance.points], scale


class _Plane:
    """Both axes of an instance, read as (u, v) = (x, y) or transposed, with cell prefix sums"""

    def __init__(self, instance: Instance, weights: Sequence[int], transposed: bool = False):
        points = instance.points
        u_index, v_index = (1, 0) if transposed else (0, 1)
        self.u = _Axis(points, u_index)
        self.v = _Axis(points, v_index)
        self.transposed = transposed
        self.red_cells = [(gu, gv) for gu, gv, p in zip(self.u.group, self.v.group, points) if p.is_red]
        self.weight = _Grid(self.u.k, self.v.k, zip(self.u.group, self.v.group, weights))
        self.reds = _Grid(self.u.k, self.v.k, ((gu, gv, 1) for gu, gv in self.red_cells))
        self.reds_by_u: Dict[int, List[int]] = {}
        for gu, gv in self.red_cells:
            self.reds_by_u.setdefault(gu, []).append(gv)

    def xy(self, ucuts, vcuts) -> Tuple[tuple, tuple]:
        return (vcuts, ucuts) if self.transposed else (ucuts, vcuts)

    def blocking(self, ucuts: Tuple[int, int, int, int]) -> List[int]:
        """v groups of the reds lying in the u hole"""
        return [gv for gu, gv in self.red_cells if ucuts[1] <= gu < ucuts[2]]

    def feasible(self, ucuts, vcuts) -> bool:
        return (self.reds.box(ucuts[0], ucuts[3], vcuts[0], vcuts[3]) == len(self.red_cells)
                and self.reds.box(ucuts[1], ucuts[2], vcuts[1], vcuts[2]) == 0)


def _neighbours(blocking: Iterable[int], gq: int) -> Optional[Tuple[Optional[int], Optional[int]]]:
    """Nearest blocking groups below and above gq, None when gq itself is blocked"""
    below = above = None
    for g in blocking:
        if g == gq:
            return None
        if g < gq and (below is None or g > below):
            below = g
        elif g > gq and (above is None or g < above):
            above = g
    return below, above


Frame = Tuple[Tuple[int, int, int, int], Fraction, Optional[int]]


def _zero_width_frames(pairs: Iterable[Tuple[int, int]]) -> Iterator[Frame]:
    """Frames of width zero whose outer range runs from group a to group d"""
    for a, d in pairs:
        for a2 in (a, a + 1):
            for a3 in (d, d + 1):
                if a2 <= a3:
                    yield (a, a2, a3, d + 1), Fraction(0), None


def _pinned_frames(axis: _Axis, lower_bands: Iterable[Tuple[int, int]],
                   upper_bands: Iterable[Tuple[int, int]], counter) -> Iterator[Frame]:
    """Frames with one band pinned to groups a..b and the other band sliding at width coords[b] - coords[a]

    lower_bands pin the lower band, upper_bands the upper one. Each frame
    comes with the pinned band's inner end group.
    """
    c = axis.coords
    for a, b in lower_bands:
        width = c[b] - c[a]
        tick(counter, axis.k, phase='slide')
        for c3, c4 in axis.upper_sides(width, b + 1):
            cuts = (a, b + 1, c3, c4)
            if axis.fits(cuts, width):
                yield cuts, width, b
    for a, b in upper_bands:
        width = c[b] - c[a]
        tick(counter, axis.k, phase='slide')
        for c1, c2 in axis.lower_sides(width, 0, a):
            cuts = (c1, c2, a, b + 1)
            if axis.fits(cuts, width):
                yield cuts, width, a


def _extreme_frames(axis: _Axis, lower_ends: Iterable[int], upper_ends: Iterable[int], counter) -> Iterator[Frame]:
    """Constraint frames: zero width across the red span, or a band pinned to an extreme red group"""
    lo, hi = axis.red_groups[0], axis.red_groups[-1]
    yield from _zero_width_frames([(lo, hi)])
    frames = _pinned_frames(axis, [(lo, e) for e in lower_ends if e > lo],
                            [(e, hi) for e in upper_ends if e < hi], counter)
    for frame in frames:
        if axis.spans_reds(frame[0]):
            yield frame


def _red_pair_frames(axis: _Axis, counter) -> Iterator[Frame]:
    """Penalized frames: zero width between two red groups, or a band pinned between two red groups"""
    reds = axis.red_groups
    yield from _zero_width_frames((a, d) for i, a in enumerate(reds) for d in reds[i:])
    pairs = [(a, b) for i, a in enumerate(reds) for b in reds[i + 1:]]
    yield from _pinned_frames(axis, pairs, pairs, counter)


def _frame_table(axis: _Axis, counter) -> Dict[Tuple[int, int, int, int], Fraction]:
    table: Dict[Tuple[int, int, int, int], Fraction] = {}
    for cuts, width, _ in _red_pair_frames(axis, counter):
        table.setdefault(cuts, width)
    return table


def _best_side(options: Iterable[Tuple[int, tuple]], better, counter) -> Optional[Tuple[int, tuple]]:
    best = None
    for value, cuts in options:
        tick(counter, phase='sides')
        if best is None or better(value, best[0]):
            best = (value, cuts)
    return best


def _solve_nc_constraint(instance: Instance, counter) -> tuple:
    plane = _Plane(instance, _cell_weights(instance, Mode.CONSTRAINT)[0])
    u, v = plane.u, plane.v
    best = None
    for ucuts, uwidth, end in _extreme_frames(u, u.red_groups, u.red_groups, counter):
        blocking = plane.blocking(ucuts)
        tick(counter, len(plane.red_cells), phase='frames')
        if end is None:
            ends = [sorted(set(blocking))] * 2
        else:
            ends = ([], [])
            for gq in set(plane.reds_by_u[end]):
                near = _neighbours(blocking, gq)
                if near is None:
                    continue
                for side, g in zip(ends, near):
                    if g is not None and g not in side:
                        side.append(g)
        for vcuts, vwidth, _ in _extreme_frames(v, ends[0], ends[1], counter):
            tick(counter, phase='frames')
            if not plane.feasible(ucuts, vcuts):
                continue
            cost = plane.weight.covered(ucuts, vcuts)
            if best is None or cost < best[0]:
                best = (cost, ucuts, vcuts, uwidth, vwidth)
    return best


def _solve_uniform_constraint(instance: Instance, counter) -> tuple:
    weights = _cell_weights(instance, Mode.CONSTRAINT)[0]
    planes = (_Plane(instance, weights), _Plane(instance, weights, transposed=True))
    best = None
    for plane in planes:
        u, v = plane.u, plane.v
        v_lo, v_hi = v.red_groups[0], v.red_groups[-1]
        for ucuts, width, end in _extreme_frames(u, u.red_groups, u.red_groups, counter):
            if end is None:
                continue
            blocking = plane.blocking(ucuts)
            outer = plane.weight.strip(ucuts[0], ucuts[3])
            hole = plane.weight.strip(ucuts[1], ucuts[2])
            tick(counter, len(plane.red_cells) + v.k, phase='frames')
            for gq in set(plane.reds_by_u[end]):
                near = _neighbours(blocking, gq)
                if near is None:
                    continue
                below, above = near
                first = 0 if below is None else below + 1
                last = v.k if above is None else above
                bottom = _best_side(((hole[c2] - outer[c1], (c1, c2))
                                     for c1, c2 in v.lower_sides(width, first, gq) if c1 <= v_lo),
                                    operator.lt, counter)
                top = _best_side(((outer[c4] - hole[c3], (c3, c4))
                                  for c3, c4 in v.upper_sides(width, gq + 1, last) if c4 > v_hi),
                                 operator.lt, counter)
                if bottom is None or top is None:
                    continue
                cost = bottom[0] + top[0]
                if best is None or cost < best[0]:
                    best = (cost, *plane.xy(ucuts, bottom[1] + top[1]), width, width)

    plane = planes[0]
    for xcuts, width, _ in _extreme_frames(plane.u, (), (), counter):
        for ycuts, _, _ in _extreme_frames(plane.v, (), (), counter):
            if plane.feasible(xcuts, ycuts):
                cost = plane.weight.covered(xcuts, ycuts)
                if best is None or cost < best[0]:
                    best = (cost, xcuts, ycuts, width, width)
    return best


def _solve_nc_penalized(instance: Instance, counter) -> tuple:
    plane = _Plane(instance, _cell_weights(instance, Mode.PENALIZED)[0])
    x_frames = _frame_table(plane.u, counter)
    y_frames = _frame_table(plane.v, counter)
    best = (0, None, None, None, None)
    for xcuts, xwidth in x_frames.items():
        outer = plane.weight.strip(xcuts[0], xcuts[3])
        hole = plane.weight.strip(xcuts[1], xcuts[2])
        tick(counter, len(y_frames) + plane.v.k, phase='frame_pairs')
        for ycuts, ywidth in y_frames.items():
            b1, b2, b3, b4 = ycuts
            value = outer[b4] - outer[b1] - hole[b3] + hole[b2]
            if value > best[0]:
                best = (value, xcuts, ycuts, xwidth, ywidth)
    return best


def _solve_uniform_penalized(instance: Instance, counter) -> tuple:
    weights = _cell_weights(instance, Mode.PENALIZED)[0]
    planes = (_Plane(instance, weights), _Plane(instance, weights, transposed=True))
    best = (0, None, None, None, None)
    for plane in planes:
        u, v = plane.u, plane.v
        pairs = [(a, b) for i, a in enumerate(u.red_groups) for b in u.red_groups[i + 1:]]
        for ucuts, width, end in _pinned_frames(u, pairs, pairs, counter):
            outer = plane.weight.strip(ucuts[0], ucuts[3])
            hole = plane.weight.strip(ucuts[1], ucuts[2])
            tick(counter, v.k, phase='frames')
            for gq in set(plane.reds_by_u[end]):
                bottom = _best_side(((hole[c2] - outer[c1], (c1, c2)) for c1, c2 in v.lower_sides(width, 0, gq)),
                                    operator.gt, counter)
                top = _best_side(((outer[c4] - hole[c3], (c3, c4)) for c3, c4 in v.upper_sides(width, gq + 1)),
                                 operator.gt, counter)
                value = bottom[0] + top[0]
                if value > best[0]:
                    best = (value, *plane.xy(ucuts, bottom[1] + top[1]), width, width)

    plane = planes[0]
    x_zero = list(_zero_width_frames((a, d) for i, a in enumerate(plane.u.red_groups) for d in plane.u.red_groups[i:]))
    y_zero = list(_zero_width_frames((a, d) for i, a in enumerate(plane.v.red_groups) for d in plane.v.red_groups[i:]))
    tick(counter, len(x_zero) * len(y_zero), phase='frame_pairs')
    for xcuts, width, _ in x_zero:
        for ycuts, _, _ in y_zero:
            value = plane.weight.covered(xcuts, ycuts)
            if value > best[0]:
                best = (value, xcuts, ycuts, width, width)
    return best


CONCENTRIC_SOLVERS = {
    (NC, Mode.CONSTRAINT): _solve_nc_constraint,
    (NC, Mode.PENALIZED): _solve_nc_penalized,
    (UNIFORM, Mode.CONSTRAINT): _solve_uniform_constraint,
    (UNIFORM, Mode.PENALIZED): _solve_uniform_penalized,
}


def _solve_concentric(instance: Instance, shape: str, mode: Mode, counter) -> Solution:
    best = CONCENTRIC_SOLVERS[shape, mode](instance, counter)
    if best is None:
        raise InfeasibleError(f"no feasible {shape} annulus")
    value, xcuts, ycuts, x_width, y_width = best
    if mode is Mode.CONSTRAINT:
        expected = value
    else:
        expected = instance.total_red_penalty - Fraction(value, _cell_weights(instance, mode)[1])
    if xcuts is None:
        return make_solution(instance, _empty_annulus(instance), mode, VARIANT_TAGS[shape], expected)

    x_coords = sorted({p.x for p in instance.points})
    y_coords = sorted({p.y for p in instance.points})
    fx = AxisPattern(xcuts, *width_range(x_coords, xcuts)).frame(x_coords, x_width)
    fy = AxisPattern(ycuts, *width_range(y_coords, ycuts)).frame(y_coords, y_width)
    annulus = _with_defining(instance, annulus_from_frames(fx, fy))
    return make_solution(instance, annulus, mode, VARIANT_TAGS[shape], expected,
                         {'x_cuts': xcuts, 'y_cuts': ycuts, 'widths': (x_width, y_width)})


def solve_rect_2d(instance: Instance, shape: str = NNC, mode: Mode = Mode.PENALIZED,
                  counter: Optional[OperationCounter] = None) -> Solution:
    """Optimal axis-parallel rectangular annulus of the requested shape class"""
    if instance.dimension != 2:
        raise DimensionMismatchError(f"solve_rect_2d needs a 2D instance, got dimension {instance.dimension}")
    if shape not in SHAPES:
        raise ValueError(f"unknown rectangular shape: {shape}")
    mode = Mode(mode)
    if mode is Mode.CONSTRAINT and instance.n == 0:
        raise InfeasibleError("constraint mode needs at least one red point")
    if not instance.points:
        return make_solution(instance, _empty_annulus(instance), mode, VARIANT_TAGS[shape])

    tick(counter, instance.n + instance.m, phase='sort')
    if shape == NNC:
        solver = _solve_nnc_constraint if mode is Mode.CONSTRAINT else _solve_nnc_penalized
        solution = solver(instance, counter)
    else:
        solution = _solve_concentric(instance, shape, mode, counter)
    logger.debug("solve_rect_2d %s/%s n=%d m=%d lambda=%s ops=%s", shape, mode.value, instance.n, instance.m,
                 solution.lambda_value, counter.count if counter else '-')
    return solution
