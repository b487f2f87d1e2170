"""
Brute-Force Oracle
Exhaustive reference solvers for every variant, used as ground truth by the tests and --oracle-check

Nothing here shares code with the fast solvers except the coverage semantics
of geom_core. Each family enumerates a finite candidate set that provably
contains an optimum:

- interval pairs and rectangle frames: every boundary sits on a point
  coordinate (or on one shifted by the common width) with every open/closed
  flag assignment; widths are differences and half differences of same-axis
  coordinates;
- circles: centers at every vertex, edge piece and face sample of the
  arrangement of all pairwise bisectors, with every distance range.

Candidates are turned into per-axis bitmasks over instance.points and
combined with bit operations, then scored from a table indexed by mask.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from annulus_cover.errors import DimensionMismatchError, InfeasibleError, OracleBudgetError
from annulus_cover.models.geom_core import (
    INFEASIBLE, CircAnnulus, Instance, IntervalPair, Mode, Rect, RectAnnulus, SideOpen, Solution, in_hole, in_range,
    make_solution,
)
from annulus_cover.services.voronoi import arrangement_samples, bisector_line
from annulus_cover.utils.helpers import to_fraction

logger = logging.getLogger(__name__)

FLAGS_2 = list(itertools.product((False, True), repeat=2))
FLAGS_4 = list(itertools.product((False, True), repeat=4))

# lo, in_lo, in_hi, hi
Frame = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class OracleBudget:
    max_reds: int = 6
    max_blues: int = 6
    max_candidates: int = 2_000_000

    @classmethod
    def from_settings(cls, settings) -> "OracleBudget":
        return cls(settings.oracle_max_reds, settings.oracle_max_blues, settings.oracle_max_candidates)

    def check(self, instance: Instance) -> None:
        if instance.n > self.max_reds or instance.m > self.max_blues:
            raise OracleBudgetError(instance.n, instance.m, self.max_reds, self.max_blues)


class _Tally:
    """Running candidate count; refuses to go past the budget"""

    def __init__(self, instance: Instance, budget: OracleBudget):
        self.instance = instance
        self.budget = budget
        self.count = 0

    def add(self, amount: int) -> None:
        self.count += amount
        if self.count > self.budget.max_candidates:
            raise OracleBudgetError(self.instance.n, self.instance.m, self.budget.max_reds, self.budget.max_blues,
                                    self.count, self.budget.max_candidates)


class _ValueTable:
    """Objective of a covered set given as a bitmask over instance.points"""

    def __init__(self, instance: Instance, mode: Mode):
        self.mode = mode
        self.points = instance.points
        self.red_mask = sum(1 << i for i, p in enumerate(self.points) if p.is_red)
        self.blue_mask = sum(1 << i for i, p in enumerate(self.points) if not p.is_red)
        self._cache: Dict[int, object] = {}

    def value(self, covered: int):
        if covered in self._cache:
            return self._cache[covered]
        if self.mode is Mode.CONSTRAINT:
            if covered & self.red_mask != self.red_mask:
                result = INFEASIBLE
            else:
                result = bin(covered & self.blue_mask).count('1')
        else:
            result = Fraction(0)
            for i, p in enumerate(self.points):
                hit = bool(covered >> i & 1)
                if hit != p.is_red:
                    result += p.penalty
        self._cache[covered] = result
        return result


class _Best:
    """Keeps the first candidate with the smallest finite value"""

    def __init__(self):
        self.value = None
        self.witness = None

    def offer(self, value, witness) -> None:
        if value is INFEASIBLE:
            return
        if self.value is None or value < self.value:
            self.value, self.witness = value, witness


def _prepare(instance: Instance, mode: Mode, dimension: int, budget: Optional[OracleBudget], vacuous: bool = False):
    if instance.dimension != dimension:
        raise DimensionMismatchError(f"oracle needs a {dimension}D instance, got dimension {instance.dimension}")
    budget = budget or OracleBudget()
    budget.check(instance)
    mode = Mode(mode)
    if mode is Mode.CONSTRAINT and instance.n == 0 and not vacuous:
        raise InfeasibleError("constraint mode needs at least one red point")
    return mode, _ValueTable(instance, mode), _Tally(instance, budget)


def candidate_widths(coords: Iterable[Fraction]) -> List[Fraction]:
    """Zero plus every difference and half difference of the given coordinates"""
    values = sorted(set(coords))
    diffs = {b - a for a, b in itertools.combinations(values, 2)}
    return sorted({Fraction(0)} | diffs | {d / 2 for d in diffs})


def _interval_mask(values: Sequence[Fraction], lo: Fraction, hi: Fraction, flags) -> int:
    return sum(1 << i for i, v in enumerate(values) if in_range(v, lo, hi, *flags))


def _interval_table(values, intervals, keep_right: bool) -> Dict[int, Tuple]:
    """Distinct interval masks; per mask the leftmost end (left role) or rightmost start (right role)"""
    table: Dict[int, Tuple] = {}
    for lo, hi in intervals:
        for flags in FLAGS_2:
            mask = _interval_mask(values, lo, hi, flags)
            held = table.get(mask)
            if held is None or (lo > held[0] if keep_right else hi < held[1]):
                table[mask] = (lo, hi, flags)
    return table


def _best_interval_pair(table: _ValueTable, lefts, rights, tally: _Tally, best: _Best) -> None:
    tally.add(len(lefts) * len(rights))
    for left_mask, left in lefts.items():
        for right_mask, right in rights.items():
            if left[1] <= right[0]:
                best.offer(table.value(left_mask | right_mask), (left, right))


def oracle_1d(instance: Instance, shape: str = 'nonuniform', mode: Mode = Mode.PENALIZED,
              budget: Optional[OracleBudget] = None) -> Solution:
    """Exhaustive minimum over interval pairs on a 1D instance"""
    mode, table, tally = _prepare(instance, mode, 1, budget)
    if shape not in ('nonuniform', 'uniform'):
        raise ValueError(f"unknown 1D shape: {shape}")
    values = [p.coords[0] for p in instance.points]
    coords = sorted(set(values)) or [Fraction(0)]
    best = _Best()

    if shape == 'nonuniform':
        intervals = list(itertools.combinations_with_replacement(coords, 2))
        lefts = _interval_table(values, intervals, keep_right=False)
        rights = _interval_table(values, intervals, keep_right=True)
        _best_interval_pair(table, lefts, rights, tally, best)
    else:
        for length in candidate_widths(coords):
            starts = set(coords) | {c - length for c in coords}
            lefts = _interval_table(values, [(a, a + length) for a in starts | {coords[0] - 1 - length}], False)
            rights = _interval_table(values, [(a, a + length) for a in starts | {coords[-1] + 1}], True)
            _best_interval_pair(table, lefts, rights, tally, best)

    (lo, li, left_flags), (ri, ro, right_flags) = best.witness
    annulus = IntervalPair((lo, li), (ri, ro), left_flags + right_flags)
    variant = '1d-nu' if shape == 'nonuniform' else '1d-u'
    logger.debug("oracle_1d %s/%s: %d candidates, lambda=%s", shape, mode.value, tally.count, best.value)
    return make_solution(instance, annulus, mode, f"oracle:{variant}", best.value, {'candidates': tally.count})


def _free_frames(coords: Sequence[Fraction]) -> Iterable[Frame]:
    return itertools.combinations_with_replacement(sorted(coords), 4)


def _concentric_frames(coords: Sequence[Fraction]) -> Iterable[Frame]:
    """Centers at midpoints of coordinate pairs, half-widths at distances to coordinates"""
    centers = {(a + b) / 2 for a, b in itertools.combinations_with_replacement(coords, 2)}
    for m in sorted(centers):
        radii = sorted({abs(c - m) for c in coords} | {Fraction(0)})
        for outer, inner in itertools.combinations_with_replacement(reversed(radii), 2):
            yield (m - outer, m - inner, m + inner, m + outer)


def _uniform_frames(coords: Sequence[Fraction], width: Fraction) -> Iterable[Frame]:
    """Frames with both bands of the given width; each outer side on a coordinate or one shifted by the width"""
    los = set(coords) | {c - width for c in coords}
    his = set(coords) | {c + width for c in coords}
    for lo in sorted(los):
        for hi in sorted(his):
            if hi - lo >= 2 * width:
                yield (lo, lo + width, hi - width, hi)


def _symmetric_frames(values: Sequence[Fraction], line_y: Fraction,
                      width: Optional[Fraction] = None) -> Iterable[Frame]:
    """Frames mirrored through line_y; tops at line_y + |y - line_y|"""
    tops = {line_y + abs(v - line_y) for v in values}
    inner_tops = tops | {line_y}
    if width is None:
        shapes = [(T, t) for T in tops for t in inner_tops if t <= T]
    else:
        shapes = [(T, T - width) for T in tops | {t + width for t in inner_tops} if T - width >= line_y]
    for T, t in sorted(shapes):
        yield (2 * line_y - T, 2 * line_y - t, t, T)


def _frame_masks(values: Sequence[Fraction], frames: Iterable[Frame], flag_choices=FLAGS_4) -> Dict[Tuple[int, int], Tuple]:
    """(outer mask, hole mask) -> first frame and flags producing it"""
    table: Dict[Tuple[int, int], Tuple] = {}
    for frame in frames:
        lo, in_lo, in_hi, hi = frame
        for flags in flag_choices:
            out = hole = 0
            for i, v in enumerate(values):
                if in_range(v, lo, hi, flags[0], flags[1]):
                    out |= 1 << i
                if in_hole(v, in_lo, in_hi, flags[2], flags[3]):
                    hole |= 1 << i
            table.setdefault((out, hole), (frame, flags))
    return table


def _best_frame_pair(table: _ValueTable, x_masks, y_masks, tally: _Tally, best: _Best) -> None:
    tally.add(len(x_masks) * len(y_masks))
    for (ox, hx), fx in x_masks.items():
        for (oy, hy), fy in y_masks.items():
            best.offer(table.value(ox & oy & ~(hx & hy)), (fx, fy))


def _rect_witness(witness) -> RectAnnulus:
    ((x_lo, x_in_lo, x_in_hi, x_hi), fx), ((y_lo, y_in_lo, y_in_hi, y_hi), fy) = witness
    side_open = SideOpen(outer_left=fx[0], outer_right=fx[1], outer_bottom=fy[0], outer_top=fy[1],
                         inner_left=fx[2], inner_right=fx[3], inner_bottom=fy[2], inner_top=fy[3])
    return RectAnnulus(Rect(x_lo, x_hi, y_lo, y_hi), Rect(x_in_lo, x_in_hi, y_in_lo, y_in_hi), side_open)


def _axis_values(instance: Instance):
    xs = [p.x for p in instance.points]
    ys = [p.y for p in instance.points]
    return xs, ys, sorted(set(xs)) or [Fraction(0)], sorted(set(ys)) or [Fraction(0)]


def oracle_rect_2d(instance: Instance, shape: str = 'nnc', mode: Mode = Mode.PENALIZED,
                   budget: Optional[OracleBudget] = None) -> Solution:
    """Exhaustive minimum over rectangular annuli of the given shape"""
    mode, table, tally = _prepare(instance, mode, 2, budget)
    xs, ys, cx, cy = _axis_values(instance)
    best = _Best()
    if shape == 'nnc':
        _best_frame_pair(table, _frame_masks(xs, _free_frames(cx)), _frame_masks(ys, _free_frames(cy)), tally, best)
    elif shape == 'nc':
        _best_frame_pair(table, _frame_masks(xs, _concentric_frames(cx)),
                         _frame_masks(ys, _concentric_frames(cy)), tally, best)
    elif shape == 'uniform':
        for width in sorted(set(candidate_widths(cx)) | set(candidate_widths(cy))):
            tally.add(len(cx) + len(cy))
            x_masks = _frame_masks(xs, _uniform_frames(cx, width))
            y_masks = _frame_masks(ys, _uniform_frames(cy, width))
            _best_frame_pair(table, x_masks, y_masks, tally, best)
    else:
        raise ValueError(f"unknown rectangular shape: {shape}")

    variant = {'nnc': 'rect-nnc', 'nc': 'rect-nc', 'uniform': 'rect-u'}[shape]
    logger.debug("oracle_rect_2d %s/%s: %d candidates, lambda=%s", shape, mode.value, tally.count, best.value)
    return make_solution(instance, _rect_witness(best.witness), mode, f"oracle:{variant}", best.value,
                         {'candidates': tally.count})


def oracle_restricted(instance: Instance, shape: str, line_y, budget: Optional[OracleBudget] = None) -> Solution:
    """Exhaustive minimum over penalized rectangular annuli centered on y = line_y"""
    mode, table, tally = _prepare(instance, Mode.PENALIZED, 2, budget)
    line_y = to_fraction(line_y)
    xs, ys, cx, cy = _axis_values(instance)
    best = _Best()
    if shape == 'nnc':
        _best_frame_pair(table, _frame_masks(xs, _free_frames(cx)),
                         _frame_masks(ys, _symmetric_frames(cy, line_y)), tally, best)
    elif shape == 'nc':
        _best_frame_pair(table, _frame_masks(xs, _concentric_frames(cx)),
                         _frame_masks(ys, _symmetric_frames(cy, line_y)), tally, best)
    elif shape == 'uniform':
        levels = sorted({line_y + abs(y - line_y) for y in cy} | {line_y})
        widths = set(candidate_widths(cx)) | set(candidate_widths(levels))
        for width in sorted(widths):
            tally.add(len(cx) + len(cy))
            x_masks = _frame_masks(xs, _uniform_frames(cx, width))
            y_masks = _frame_masks(ys, _symmetric_frames(cy, line_y, width))
            _best_frame_pair(table, x_masks, y_masks, tally, best)
    else:
        raise ValueError(f"unknown restricted shape: {shape}")

    variant = {'nnc': 'restricted-nnc', 'nc': 'restricted-nc', 'uniform': 'restricted-u'}[shape]
    logger.debug("oracle_restricted %s line_y=%s: %d candidates, lambda=%s", shape, line_y, tally.count, best.value)
    return make_solution(instance, _rect_witness(best.witness), mode, f"oracle:{variant}", best.value,
                         {'candidates': tally.count, 'line_y': line_y})


def _circumcenter(a, b, c) -> Optional[Tuple[Fraction, Fraction]]:
    d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if d == 0:
        return None
    sa, sb, sc = (a[0] ** 2 + a[1] ** 2), (b[0] ** 2 + b[1] ** 2), (c[0] ** 2 + c[1] ** 2)
    ux = (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d
    uy = (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d
    return (ux, uy)


def circle_centers(instance: Instance) -> List[Tuple[Fraction, Fraction]]:
    """Circumcenters, bisector crossings and a sample of every edge piece and face of the bisector arrangement"""
    coords = sorted({p.coords for p in instance.points})
    if len(coords) < 2:
        return list(coords) or [(Fraction(0), Fraction(0))]
    centers = set()
    for a, b, c in itertools.combinations(coords, 3):
        center = _circumcenter(a, b, c)
        if center is not None:
            centers.add(center)
    samples = arrangement_samples([bisector_line(a, b) for a, b in itertools.combinations(coords, 2)])
    centers.update(samples.vertices)
    centers.update(point for point, _ in samples.pieces)
    centers.update(samples.offsets)
    return sorted(centers)


def oracle_circ(instance: Instance, mode: Mode = Mode.PENALIZED, budget: Optional[OracleBudget] = None) -> Solution:
    """Exhaustive minimum over circular annuli: every sampled center with every distance range"""
    mode, table, tally = _prepare(instance, mode, 2, budget, vacuous=True)
    best = _Best()
    points = instance.points
    if not points:
        best.offer(table.value(0), None)
    for center in circle_centers(instance):
        distances = [(center[0] - p.x) ** 2 + (center[1] - p.y) ** 2 for p in points]
        radii = sorted(set(distances))
        tally.add(len(radii) * (len(radii) + 1) // 2 + 1)
        best.offer(table.value(0), None)
        for i, r_in in enumerate(radii):
            for r_out in radii[i:]:
                covered = sum(1 << k for k, d in enumerate(distances) if r_in <= d <= r_out)
                best.offer(table.value(covered), (center, r_in, r_out))

    if best.witness is None:
        far = (max((p.x for p in points), default=Fraction(0)) + 1, Fraction(0))
        annulus = CircAnnulus(far, Fraction(0), Fraction(0))
    else:
        annulus = CircAnnulus(*best.witness)
    logger.debug("oracle_circ %s: %d candidates, lambda=%s", mode.value, tally.count, best.value)
    return make_solution(instance, annulus, mode, 'oracle:circ', best.value, {'candidates': tally.count})


@dataclass(frozen=True)
class GridCheck:
    """Outcome of the grid self-check: the refined grid must not beat the oracle"""

    oracle_lambda: object
    grid_lambda: object

    @property
    def passed(self) -> bool:
        return self.grid_lambda >= self.oracle_lambda

    def to_dict(self) -> Dict:
        return {'oracle_lambda': str(self.oracle_lambda), 'grid_lambda': str(self.grid_lambda),
                'passed': self.passed}


def refined_grid(coords: Iterable[Fraction]) -> List[Fraction]:
    """Coordinates plus midpoints of neighbours plus one half-step beyond each end"""
    values = sorted(set(coords)) or [Fraction(0)]
    step = min((b - a for a, b in zip(values, values[1:])), default=Fraction(2))
    grid = set(values) | {(a + b) / 2 for a, b in zip(values, values[1:])}
    grid |= {values[0] - step / 2, values[-1] + step / 2}
    return sorted(grid)


def _grid_axis(values, grid, kind: str, line_y=None) -> Dict[object, Dict]:
    """Closed frames on the grid keyed by width (None when widths are free)"""
    closed = [(False, False, False, False)]
    groups: Dict[object, List[Frame]] = {}
    for frame in itertools.combinations_with_replacement(grid, 4):
        lo, in_lo, in_hi, hi = frame
        if kind.endswith('symmetric') and (lo + hi != 2 * line_y or in_lo + in_hi != 2 * line_y):
            continue
        if kind in ('concentric', 'symmetric') and lo + hi != in_lo + in_hi:
            continue
        if kind.startswith('uniform'):
            if in_lo - lo != hi - in_hi:
                continue
            groups.setdefault(in_lo - lo, []).append(frame)
        else:
            groups.setdefault(None, []).append(frame)
    return {key: _frame_masks(values, frames, closed) for key, frames in groups.items()}


def grid_self_check(instance: Instance, family: str, shape: str, mode: Mode = Mode.PENALIZED,
                    line_y=None, budget: Optional[OracleBudget] = None) -> GridCheck:
    """Solve again over a doubled-resolution grid with closed boundaries only and compare with the oracle

    family is '1d', 'rect' or 'restricted'.
    """
    mode = Mode(mode)
    if family == '1d':
        oracle = oracle_1d(instance, shape, mode, budget)
    elif family == 'rect':
        oracle = oracle_rect_2d(instance, shape, mode, budget)
    elif family == 'restricted':
        line_y = to_fraction(line_y)
        oracle = oracle_restricted(instance, shape, line_y, budget)
    else:
        raise ValueError(f"grid self-check does not cover family {family!r}")

    _, table, tally = _prepare(instance, mode, 1 if family == '1d' else 2, budget)
    best = _Best()
    if family == '1d':
        values = [p.coords[0] for p in instance.points]
        grid = refined_grid(values)
        intervals = [(a, b) for a, b in itertools.combinations_with_replacement(grid, 2)]
        by_length: Dict[object, List] = {}
        for a, b in intervals:
            by_length.setdefault(None if shape == 'nonuniform' else b - a, []).append((a, b))
        for group in by_length.values():
            masks = {}
            for a, b in group:
                masks.setdefault(_interval_mask(values, a, b, (False, False)), []).append((a, b))
            tally.add(len(group) ** 2)
            for (ma, left), (mb, right) in itertools.product(masks.items(), repeat=2):
                if min(b for _, b in left) <= max(a for a, _ in right):
                    best.offer(table.value(ma | mb), None)
    else:
        xs, ys, cx, cy = _axis_values(instance)
        gx = refined_grid(cx)
        gy = refined_grid(cy)
        x_kind = {'nnc': 'free', 'nc': 'concentric', 'uniform': 'uniform'}[shape]
        if family == 'restricted':
            gy = sorted(set(gy) | {2 * line_y - g for g in gy} | {line_y})
            y_kind = 'uniform-symmetric' if shape == 'uniform' else 'symmetric'
        else:
            y_kind = x_kind
        x_axis = _grid_axis(xs, gx, x_kind)
        y_axis = _grid_axis(ys, gy, y_kind, line_y)
        for key, x_masks in x_axis.items():
            y_masks = y_axis.get(key if x_kind == 'uniform' else None, {})
            _best_frame_pair(table, x_masks, y_masks, tally, best)

    check = GridCheck(oracle.lambda_value, best.value)
    if not check.passed:
        logger.warning("grid self-check beat the oracle on %s: %s < %s", instance.id, best.value, oracle.lambda_value)
    return check
