"""
Geometry Core
Exact point sets, annulus types, coverage semantics and the penalty functional

Every coordinate and penalty is a Fraction. Boundary flags are pure coverage
modifiers: an open outer side excludes the points on it, an open inner side
puts the points on it inside the hole. Containment of inner in outer is
checked on the numeric values only.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from annulus_cover.errors import AnnulusCoverError, DimensionMismatchError, InstanceFormatError
from annulus_cover.utils.helpers import format_fraction, to_fraction

logger = logging.getLogger(__name__)

Coords = Tuple[Fraction, ...]


class Color(Enum):
    RED = "R"
    BLUE = "B"


class Mode(Enum):
    PENALIZED = "penalized"
    CONSTRAINT = "constraint"


class RectShape(Enum):
    UNIFORM = "uniform"
    NONUNIFORM_CONCENTRIC = "nonuniform_concentric"
    NONUNIFORM_NONCONCENTRIC = "nonuniform_nonconcentric"


class _Infeasible:
    """Sentinel returned by penalty_of when a constraint-mode annulus misses a red"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFEASIBLE"


INFEASIBLE = _Infeasible()


@dataclass(frozen=True)
class Point:
    pid: str
    color: Color
    coords: Coords
    penalty: Fraction

    @property
    def x(self) -> Fraction:
        return self.coords[0]

    @property
    def y(self) -> Fraction:
        return self.coords[1]

    @property
    def is_red(self) -> bool:
        return self.color is Color.RED


@dataclass(frozen=True)
class Instance:
    dimension: int
    reds: Tuple[Point, ...]
    blues: Tuple[Point, ...]
    id: str = "instance"

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise InstanceFormatError(f"dimension must be 1 or 2, got {self.dimension}")
        for group in (self.reds, self.blues):
            seen = set()
            for point in group:
                if len(point.coords) != self.dimension:
                    raise DimensionMismatchError(
                        f"point {point.pid} has {len(point.coords)} coordinates, expected {self.dimension}")
                if point.penalty <= 0:
                    raise InstanceFormatError(f"point {point.pid} has non-positive penalty {point.penalty}")
                if point.coords in seen:
                    raise InstanceFormatError(f"duplicate {point.color.name.lower()} point at {point.coords}")
                seen.add(point.coords)

    @classmethod
    def build(cls, dimension: int, reds: Iterable = (), blues: Iterable = (), id: str = "instance") -> "Instance":
        """Build from (coords, penalty) pairs; numbers may be ints, Fractions or rational text"""
        def make(color: Color, items) -> Tuple[Point, ...]:
            points = []
            for index, (coords, penalty) in enumerate(items):
                if not isinstance(coords, (tuple, list)):
                    coords = (coords,)
                points.append(Point(
                    pid=f"{color.value}{index}",
                    color=color,
                    coords=tuple(to_fraction(c) for c in coords),
                    penalty=to_fraction(penalty),
                ))
            return tuple(points)

        return cls(dimension=dimension, reds=make(Color.RED, reds), blues=make(Color.BLUE, blues), id=id)

    @property
    def n(self) -> int:
        return len(self.reds)

    @property
    def m(self) -> int:
        return len(self.blues)

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.reds + self.blues

    @property
    def total_red_penalty(self) -> Fraction:
        return sum((q.penalty for q in self.reds), Fraction(0))

    def point(self, pid: str) -> Point:
        for p in self.points:
            if p.pid == pid:
                return p
        raise KeyError(pid)

    def translated(self, vector: Sequence) -> "Instance":
        shift = tuple(to_fraction(v) for v in vector)
        move = lambda p: replace(p, coords=tuple(c + s for c, s in zip(p.coords, shift)))
        return replace(self, reds=tuple(map(move, self.reds)), blues=tuple(map(move, self.blues)))

    def scaled_penalties(self, factor) -> "Instance":
        factor = to_fraction(factor)
        scale = lambda p: replace(p, penalty=p.penalty * factor)
        return replace(self, reds=tuple(map(scale, self.reds)), blues=tuple(map(scale, self.blues)))

    def with_point(self, color: Color, coords: Sequence, penalty) -> "Instance":
        group = self.reds if color is Color.RED else self.blues
        point = Point(f"{color.value}{len(group)}", color, tuple(to_fraction(c) for c in coords), to_fraction(penalty))
        if color is Color.RED:
            return replace(self, reds=self.reds + (point,))
        return replace(self, blues=self.blues + (point,))

    def reordered(self, red_order: Sequence[int], blue_order: Sequence[int]) -> "Instance":
        """Permute input order; point ids are reassigned to the new positions"""
        def relabel(points):
            return tuple(replace(p, pid=f"{p.color.value}{i}") for i, p in enumerate(points))
        return replace(self,
                       reds=relabel([self.reds[i] for i in red_order]),
                       blues=relabel([self.blues[i] for i in blue_order]))


@dataclass(frozen=True)
class Rect:
    left: Fraction
    right: Fraction
    bottom: Fraction
    top: Fraction

    def __post_init__(self):
        if self.left > self.right or self.bottom > self.top:
            raise AnnulusCoverError(f"degenerate rectangle {self}")

    @property
    def center(self) -> Tuple[Fraction, Fraction]:
        return ((self.left + self.right) / 2, (self.bottom + self.top) / 2)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.left, self.right, self.bottom, self.top)


@dataclass(frozen=True)
class SideOpen:
    outer_left: bool = False
    outer_right: bool = False
    outer_bottom: bool = False
    outer_top: bool = False
    inner_left: bool = False
    inner_right: bool = False
    inner_bottom: bool = False
    inner_top: bool = False


@dataclass(frozen=True)
class RectAnnulus:
    outer: Rect
    inner: Rect
    side_open: SideOpen = field(default_factory=SideOpen)
    defining_points: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        o, i = self.outer, self.inner
        if not (i.left >= o.left and i.right <= o.right and i.bottom >= o.bottom and i.top <= o.top):
            raise AnnulusCoverError(f"inner rectangle {i} is not contained in outer rectangle {o}")

    @property
    def widths(self) -> Dict[str, Fraction]:
        o, i = self.outer, self.inner
        return {
            'left': i.left - o.left,
            'right': o.right - i.right,
            'top': o.top - i.top,
            'bottom': i.bottom - o.bottom,
        }


@dataclass(frozen=True)
class IntervalPair:
    left_interval: Tuple[Fraction, Fraction]
    right_interval: Tuple[Fraction, Fraction]
    endpoint_open: Tuple[bool, bool, bool, bool] = (False, False, False, False)
    defining_points: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        lo, li = self.left_interval
        ri, ro = self.right_interval
        if not (lo <= li <= ri <= ro):
            raise AnnulusCoverError(f"interval pair out of order: {lo} {li} {ri} {ro}")

    @property
    def lengths(self) -> Tuple[Fraction, Fraction]:
        return (self.left_interval[1] - self.left_interval[0], self.right_interval[1] - self.right_interval[0])


@dataclass(frozen=True)
class CircAnnulus:
    center: Tuple[Fraction, Fraction]
    r_in_sq: Fraction
    r_out_sq: Fraction
    boundary_open: Tuple[bool, bool] = (False, False)
    defining_points: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        if not (0 <= self.r_in_sq <= self.r_out_sq):
            raise AnnulusCoverError(f"invalid radii r_in_sq={self.r_in_sq} r_out_sq={self.r_out_sq}")

    def check_defining(self, instance: Instance) -> bool:
        for pid, circle in self.defining_points:
            radius_sq = self.r_in_sq if circle == 'inner' else self.r_out_sq
            if dist_sq(self.center, instance.point(pid).coords) != radius_sq:
                return False
        return True


Annulus = Union[IntervalPair, RectAnnulus, CircAnnulus]


@dataclass(frozen=True)
class Solution:
    lambda_value: Union[Fraction, int]
    annulus: Annulus
    covered_blue_ids: FrozenSet[str]
    uncovered_red_ids: FrozenSet[str]
    variant: str
    mode: Mode
    details: Dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': format_fraction(self.lambda_value),
            'variant': self.variant,
            'mode': self.mode.value,
            'annulus': annulus_to_dict(self.annulus),
            'covered_blue_ids': sorted(self.covered_blue_ids),
            'uncovered_red_ids': sorted(self.uncovered_red_ids),
        }


def dist_sq(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(((p - q) * (p - q) for p, q in zip(a, b)), Fraction(0))


def in_range(v: Fraction, lo: Fraction, hi: Fraction, lo_open: bool, hi_open: bool) -> bool:
    """Membership in an outer range; an open end excludes its boundary value"""
    return (lo < v or (lo == v and not lo_open)) and (v < hi or (v == hi and not hi_open))


def in_hole(v: Fraction, lo: Fraction, hi: Fraction, lo_open: bool, hi_open: bool) -> bool:
    """Membership in a hole range; an open end pulls its boundary value into the hole"""
    return (lo < v or (lo == v and lo_open)) and (v < hi or (v == hi and hi_open))


def _dimension_of(annulus: Annulus) -> int:
    return 1 if isinstance(annulus, IntervalPair) else 2


def covers(annulus: Annulus, point: Sequence[Fraction]) -> bool:
    """True iff the point lies in the annulus region after applying the boundary flags"""
    if len(point) != _dimension_of(annulus):
        raise DimensionMismatchError(
            f"{type(annulus).__name__} expects {_dimension_of(annulus)}D points, got {len(point)}D")

    if isinstance(annulus, IntervalPair):
        x = point[0]
        lo, li = annulus.left_interval
        ri, ro = annulus.right_interval
        f = annulus.endpoint_open
        return in_range(x, lo, li, f[0], f[1]) or in_range(x, ri, ro, f[2], f[3])

    if isinstance(annulus, RectAnnulus):
        x, y = point
        o, i, s = annulus.outer, annulus.inner, annulus.side_open
        if not (in_range(x, o.left, o.right, s.outer_left, s.outer_right)
                and in_range(y, o.bottom, o.top, s.outer_bottom, s.outer_top)):
            return False
        return not (in_hole(x, i.left, i.right, s.inner_left, s.inner_right)
                    and in_hole(y, i.bottom, i.top, s.inner_bottom, s.inner_top))

    d2 = dist_sq(annulus.center, point)
    inner_open, outer_open = annulus.boundary_open
    if d2 > annulus.r_out_sq or (d2 == annulus.r_out_sq and outer_open):
        return False
    return not (d2 < annulus.r_in_sq or (d2 == annulus.r_in_sq and inner_open))


def coverage(instance: Instance, annulus: Annulus) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(covered blue ids, uncovered red ids)"""
    if instance.dimension != _dimension_of(annulus):
        raise DimensionMismatchError(
            f"{instance.dimension}D instance against {type(annulus).__name__}")
    covered_blues = frozenset(p.pid for p in instance.blues if covers(annulus, p.coords))
    uncovered_reds = frozenset(q.pid for q in instance.reds if not covers(annulus, q.coords))
    return covered_blues, uncovered_reds


def penalty_of(instance: Instance, annulus: Annulus, mode: Mode = Mode.PENALIZED):
    """λ in penalized mode; covered-blue count or INFEASIBLE in constraint mode"""
    covered_blues, uncovered_reds = coverage(instance, annulus)
    if mode is Mode.CONSTRAINT:
        return INFEASIBLE if uncovered_reds else len(covered_blues)
    penalties = {p.pid: p.penalty for p in instance.points}
    return (sum((penalties[pid] for pid in uncovered_reds), Fraction(0))
            + sum((penalties[pid] for pid in covered_blues), Fraction(0)))


def classify_rect(annulus: RectAnnulus) -> RectShape:
    w = annulus.widths
    if w['left'] == w['right'] == w['top'] == w['bottom']:
        if annulus.outer.center != annulus.inner.center:
            raise AnnulusCoverError("uniform annulus with distinct rectangle centers")
        return RectShape.UNIFORM
    if w['left'] == w['right'] and w['top'] == w['bottom']:
        return RectShape.NONUNIFORM_CONCENTRIC
    return RectShape.NONUNIFORM_NONCONCENTRIC


def make_solution(instance: Instance, annulus: Annulus, mode: Mode, variant: str,
                  expected=None, details: Optional[Dict[str, Any]] = None) -> Solution:
    """Recompute λ from the witness annulus; a disagreement with the solver's value is a bug"""
    covered_blues, uncovered_reds = coverage(instance, annulus)
    value = penalty_of(instance, annulus, mode)
    if value is INFEASIBLE:
        raise AnnulusCoverError(f"{variant}: constraint-mode witness leaves reds {sorted(uncovered_reds)} uncovered")
    if expected is not None and value != expected:
        raise AnnulusCoverError(f"{variant}: witness annulus gives {value}, solver reported {expected}")
    logger.debug("%s/%s on %s: lambda=%s", variant, mode.value, instance.id, value)
    return Solution(value, annulus, covered_blues, uncovered_reds, variant, mode, dict(details or {}))


def red_defining_points(instance: Instance, annulus: RectAnnulus) -> Tuple[Tuple[str, str], ...]:
    """(point id, side) for every red lying on a closed side of the annulus"""
    o, i, s = annulus.outer, annulus.inner, annulus.side_open
    sides = [
        ('outer_left', lambda p: p.x == o.left and o.bottom <= p.y <= o.top, s.outer_left),
        ('outer_right', lambda p: p.x == o.right and o.bottom <= p.y <= o.top, s.outer_right),
        ('outer_bottom', lambda p: p.y == o.bottom and o.left <= p.x <= o.right, s.outer_bottom),
        ('outer_top', lambda p: p.y == o.top and o.left <= p.x <= o.right, s.outer_top),
        ('inner_left', lambda p: p.x == i.left and i.bottom <= p.y <= i.top, s.inner_left),
        ('inner_right', lambda p: p.x == i.right and i.bottom <= p.y <= i.top, s.inner_right),
        ('inner_bottom', lambda p: p.y == i.bottom and i.left <= p.x <= i.right, s.inner_bottom),
        ('inner_top', lambda p: p.y == i.top and i.left <= p.x <= i.right, s.inner_top),
    ]
    found: List[Tuple[str, str]] = []
    for name, on_side, is_open in sides:
        if is_open:
            continue
        found.extend((q.pid, name) for q in instance.reds if on_side(q))
    return tuple(found)


def annulus_to_dict(annulus: Annulus) -> Dict[str, Any]:
    f = format_fraction
    if isinstance(annulus, IntervalPair):
        return {
            'kind': 'interval_pair',
            'left_interval': [f(v) for v in annulus.left_interval],
            'right_interval': [f(v) for v in annulus.right_interval],
            'endpoint_open': list(annulus.endpoint_open),
            'defining_points': [list(d) for d in annulus.defining_points],
        }
    if isinstance(annulus, RectAnnulus):
        return {
            'kind': 'rect_annulus',
            'outer': [f(v) for v in annulus.outer.as_tuple()],
            'inner': [f(v) for v in annulus.inner.as_tuple()],
            'side_open': dict(vars(annulus.side_open)),
            'defining_points': [list(d) for d in annulus.defining_points],
        }
    return {
        'kind': 'circ_annulus',
        'center': [f(v) for v in annulus.center],
        'r_in_sq': f(annulus.r_in_sq),
        'r_out_sq': f(annulus.r_out_sq),
        'boundary_open': {'inner': annulus.boundary_open[0], 'outer': annulus.boundary_open[1]},
        'defining_points': [list(d) for d in annulus.defining_points],
    }
