"""
Voronoi Service
Exact nearest- and farthest-site Voronoi diagrams over rational sites

Diagrams are built by clipping every pairwise bisector against the
half-planes of the remaining sites. Edges are segments or rays with rational
endpoints and directions; a bisector surviving unclipped is stored as two
opposite rays from the midpoint of its sites.
"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from annulus_cover.errors import DuplicateSiteError
from annulus_cover.utils.helpers import OperationCounter, tick, to_fraction

logger = logging.getLogger(__name__)

Point2 = Tuple[Fraction, Fraction]

NEAREST = 'nearest'
FARTHEST = 'farthest'


def _sub(a: Point2, b: Point2) -> Point2:
    return (a[0] - b[0], a[1] - b[1])


def _dot(a: Point2, b: Point2) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a: Point2, b: Point2) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _perp(a: Point2) -> Point2:
    return (-a[1], a[0])


def dist_sq(a: Point2, b: Point2) -> Fraction:
    d = _sub(a, b)
    return _dot(d, d)


def as_point(coords: Sequence) -> Point2:
    return (to_fraction(coords[0]), to_fraction(coords[1]))


@dataclass(frozen=True)
class Edge:
    """origin + s * direction for s in [s_lo, s_hi]; None marks an unbounded end"""

    origin: Point2
    direction: Point2
    s_lo: Optional[Fraction] = Fraction(0)
    s_hi: Optional[Fraction] = Fraction(1)

    def point_at(self, s: Fraction) -> Point2:
        return (self.origin[0] + s * self.direction[0], self.origin[1] + s * self.direction[1])

    @property
    def kind(self) -> str:
        if self.s_lo is not None and self.s_hi is not None:
            return 'segment'
        if self.s_lo is None and self.s_hi is None:
            return 'line'
        return 'ray'

    @property
    def endpoints(self) -> List[Point2]:
        return [self.point_at(s) for s in (self.s_lo, self.s_hi) if s is not None]

    def contains_param(self, s: Fraction) -> bool:
        return (self.s_lo is None or s >= self.s_lo) and (self.s_hi is None or s <= self.s_hi)

    def param_of(self, point: Point2) -> Optional[Fraction]:
        """Parameter of a point on the supporting line, None when it is off the line"""
        offset = _sub(point, self.origin)
        if _cross(self.direction, offset) != 0:
            return None
        return _dot(offset, self.direction) / _dot(self.direction, self.direction)

    def line(self) -> Tuple[Point2, Fraction]:
        """(normal, constant) with normal . X == constant on the supporting line"""
        normal = _perp(self.direction)
        return normal, _dot(normal, self.origin)


@dataclass(frozen=True)
class VoronoiEdge:
    sites: Tuple[int, int]
    geometry: Edge


@dataclass(frozen=True)
class VoronoiVertex:
    point: Point2
    sites: FrozenSet[int]


@dataclass(frozen=True)
class VoronoiDiagram:
    sites: Tuple[Point2, ...]
    vertices: Tuple[VoronoiVertex, ...]
    edges: Tuple[VoronoiEdge, ...]
    adjacency: Dict[int, FrozenSet[int]] = field(default_factory=dict, compare=False, hash=False)

    kind = NEAREST

    def cell_edges(self, site: int) -> List[VoronoiEdge]:
        return [e for e in self.edges if site in e.sites]

    def site_index(self, point: Sequence) -> int:
        return self.sites.index(as_point(point))


class NearestDiagram(VoronoiDiagram):
    kind = NEAREST


class FarthestDiagram(VoronoiDiagram):
    kind = FARTHEST


def _check_sites(sites: Sequence[Point2]) -> None:
    seen = set()
    for s in sites:
        if s in seen:
            raise DuplicateSiteError(f"duplicate Voronoi site {s}", {'site': [str(v) for v in s]})
        seen.add(s)


def _clip_bisector(sites: Sequence[Point2], i: int, j: int, farthest: bool, counter) -> List[Edge]:
    a, b = sites[i], sites[j]
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    direction = _perp(_sub(b, a))
    lo, hi = None, None
    for k, c in enumerate(sites):
        if k in (i, j):
            continue
        tick(counter, phase='voronoi_clip')
        # nearest: |P-a|^2 <= |P-c|^2  <=>  2 P.(c-a) <= |c|^2 - |a|^2
        normal = _sub(c, a)
        alpha = 2 * _dot(direction, normal)
        beta = _dot(c, c) - _dot(a, a) - 2 * _dot(mid, normal)
        if farthest:
            alpha, beta = -alpha, -beta
        if alpha == 0:
            if beta < 0:
                return []
            continue
        bound = beta / alpha
        if alpha > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo >= hi:
        return []
    if lo is None and hi is None:
        return [Edge(mid, direction, Fraction(0), None), Edge(mid, (-direction[0], -direction[1]), Fraction(0), None)]
    if lo is None:
        start = (mid[0] + hi * direction[0], mid[1] + hi * direction[1])
        return [Edge(start, (-direction[0], -direction[1]), Fraction(0), None)]
    start = (mid[0] + lo * direction[0], mid[1] + lo * direction[1])
    if hi is None:
        return [Edge(start, direction, Fraction(0), None)]
    end = (mid[0] + hi * direction[0], mid[1] + hi * direction[1])
    return [Edge(start, _sub(end, start), Fraction(0), Fraction(1))]


def extremal_sites(sites: Sequence[Point2], query: Point2, farthest: bool) -> FrozenSet[int]:
    distances = [dist_sq(s, query) for s in sites]
    target = max(distances) if farthest else min(distances)
    return frozenset(k for k, d in enumerate(distances) if d == target)


def _build(sites: Iterable, farthest: bool, counter: Optional[OperationCounter]) -> VoronoiDiagram:
    sites = tuple(as_point(s) for s in sites)
    if not sites:
        raise ValueError("a Voronoi diagram needs at least one site")
    _check_sites(sites)

    edges: List[VoronoiEdge] = []
    adjacency: Dict[int, set] = {k: set() for k in range(len(sites))}
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            for geometry in _clip_bisector(sites, i, j, farthest, counter):
                edges.append(VoronoiEdge((i, j), geometry))
                adjacency[i].add(j)
                adjacency[j].add(i)

    vertices = []
    for p in sorted({p for e in edges for p in e.geometry.endpoints}):
        tied = extremal_sites(sites, p, farthest)
        if len(tied) >= 3:
            vertices.append(VoronoiVertex(p, tied))
    cls = FarthestDiagram if farthest else NearestDiagram
    return cls(sites, tuple(vertices), tuple(edges), {k: frozenset(v) for k, v in adjacency.items()})


def build_nearest(sites: Iterable, counter: Optional[OperationCounter] = None) -> NearestDiagram:
    return _build(sites, False, counter)


def build_farthest(sites: Iterable, counter: Optional[OperationCounter] = None) -> FarthestDiagram:
    """Farthest-site diagram; sites off the convex hull get no edges"""
    return _build(sites, True, counter)


def insert_sites(diagram: VoronoiDiagram, new_sites: Iterable,
                 counter: Optional[OperationCounter] = None) -> VoronoiDiagram:
    """New diagram over the old sites plus one or two new ones; the new sites get the last indices"""
    new_sites = [as_point(s) for s in new_sites]
    for s in new_sites:
        if s in diagram.sites:
            raise DuplicateSiteError(f"site {s} is already in the diagram", {'site': [str(v) for v in s]})
    return _build(diagram.sites + tuple(new_sites), diagram.kind == FARTHEST, counter)


def locate(diagram: VoronoiDiagram, query: Sequence) -> Tuple[Point2, ...]:
    """Closest (nearest diagram) or farthest (farthest diagram) sites of the query, ties included"""
    tied = extremal_sites(diagram.sites, as_point(query), diagram.kind == FARTHEST)
    return tuple(diagram.sites[k] for k in sorted(tied))


def intersect_edges(e1: Edge, e2: Edge) -> Tuple[Optional[Point2], bool]:
    """(single intersection point or None, collinear overlap of positive length)"""
    d1, d2 = e1.direction, e2.direction
    offset = _sub(e2.origin, e1.origin)
    denom = _cross(d1, d2)
    if denom == 0:
        if _cross(offset, d1) != 0:
            return None, False
        # collinear: project e2's parameter range onto e1
        scale = _dot(d2, d1) / _dot(d1, d1)
        shift = _dot(offset, d1) / _dot(d1, d1)
        ends = [None if s is None else shift + s * scale for s in (e2.s_lo, e2.s_hi)]
        if scale < 0:
            ends.reverse()
        lo = e1.s_lo if ends[0] is None else (ends[0] if e1.s_lo is None else max(e1.s_lo, ends[0]))
        hi = e1.s_hi if ends[1] is None else (ends[1] if e1.s_hi is None else min(e1.s_hi, ends[1]))
        if lo is not None and hi is not None:
            if lo > hi:
                return None, False
            if lo == hi:
                return e1.point_at(lo), False
        return None, True
    s = _cross(offset, d2) / denom
    u = _cross(offset, d1) / denom
    if e1.contains_param(s) and e2.contains_param(u):
        return e1.point_at(s), False
    return None, False


@dataclass
class CrossResult:
    points: List[Point2] = field(default_factory=list)
    overlaps: List[Tuple[Tuple[int, int], Tuple[int, int]]] = field(default_factory=list)

    @property
    def overlap(self) -> bool:
        return bool(self.overlaps)


def cross_intersections(d1: VoronoiDiagram, d2: VoronoiDiagram, restrict_1: Optional[int] = None,
                        restrict_2: Optional[int] = None) -> CrossResult:
    """Points where edges of d1 meet edges of d2, optionally only edges bounding the given cells"""
    edges_1 = d1.edges if restrict_1 is None else d1.cell_edges(restrict_1)
    edges_2 = d2.edges if restrict_2 is None else d2.cell_edges(restrict_2)
    result = CrossResult()
    seen = set()
    for a in edges_1:
        for b in edges_2:
            point, overlap = intersect_edges(a.geometry, b.geometry)
            if overlap:
                result.overlaps.append((a.sites, b.sites))
            elif point is not None and point not in seen:
                seen.add(point)
                result.points.append(point)
    result.points.sort()
    return result


def _angle_key(d: Point2):
    """Sort key class ordering directions counter-clockwise from the positive x axis"""
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def compare(a, b):
        if half(a) != half(b):
            return half(a) - half(b)
        c = _cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return functools.cmp_to_key(compare)(d)


def wedge_directions(directions: Iterable[Point2]) -> List[Point2]:
    """One direction strictly inside each angular wedge cut out by lines with the given directions"""
    rays = set()
    for d in directions:
        if d == (0, 0):
            continue
        scale = max(abs(d[0]), abs(d[1]))
        d = (d[0] / scale, d[1] / scale)
        rays.add(d)
        rays.add((-d[0], -d[1]))
    ordered = sorted(rays, key=_angle_key)
    if not ordered:
        return [(Fraction(1), Fraction(0))]
    if len(ordered) == 2:
        normal = _perp(ordered[0])
        return [normal, (-normal[0], -normal[1])]
    # consecutive rays are less than pi apart once two distinct lines are present
    return [(a[0] + b[0], a[1] + b[1]) for a, b in zip(ordered, ordered[1:] + ordered[:1])]


@dataclass
class ArrangementSamples:
    """Points sampling every vertex, edge piece and face of an edge arrangement"""

    vertices: Dict[Point2, set] = field(default_factory=dict)
    pieces: List[Tuple[Point2, int]] = field(default_factory=list)
    offsets: List[Point2] = field(default_factory=list)


def offset_step(point: Point2, normal: Point2, lines: Sequence[Tuple[Point2, Fraction]],
                 stops: Iterable[Point2] = ()) -> Fraction:
    """Half the distance (in units of normal) to the nearest line not through point

    stops are vertices; those straight along the normal bound the step too, which
    matters for a segment lying on a line through point parallel to the normal.
    """
    best = None
    for q in stops:
        offset = _sub(q, point)
        if offset != (0, 0) and _cross(offset, normal) == 0:
            hit = abs(_dot(offset, normal) / _dot(normal, normal))
            best = hit if best is None else min(best, hit)
    for line_normal, constant in lines:
        value = _dot(line_normal, point)
        rate = _dot(line_normal, normal)
        if value == constant or rate == 0:
            continue
        hit = abs((constant - value) / rate)
        best = hit if best is None else min(best, hit)
    return Fraction(1) if best is None else best / 2


def arrangement_samples(edges: Sequence[Edge], counter: Optional[OperationCounter] = None) -> ArrangementSamples:
    samples = ArrangementSamples()
    params: List[set] = [set() for _ in edges]
    for i, e in enumerate(edges):
        for s in (e.s_lo, e.s_hi):
            if s is not None:
                params[i].add(s)
                samples.vertices.setdefault(e.point_at(s), set()).add(i)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            tick(counter, phase='arrangement')
            point, overlap = intersect_edges(edges[i], edges[j])
            if overlap:
                for a, b in ((i, j), (j, i)):
                    for p in edges[b].endpoints:
                        s = edges[a].param_of(p)
                        if s is not None and edges[a].contains_param(s):
                            params[a].add(s)
                continue
            if point is None:
                continue
            samples.vertices.setdefault(point, set()).update((i, j))
            params[i].add(edges[i].param_of(point))
            params[j].add(edges[j].param_of(point))

    lines = [e.line() for e in edges]
    for i, e in enumerate(edges):
        cuts = sorted(params[i])
        inner = [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
        if not cuts:
            inner = [Fraction(0) if e.s_lo is None else e.s_lo + 1]
        else:
            if e.s_lo is None:
                inner.append(cuts[0] - 1)
            if e.s_hi is None:
                inner.append(cuts[-1] + 1)
        normal = _perp(e.direction)
        for s in inner:
            point = e.point_at(s)
            samples.pieces.append((point, i))
            step = offset_step(point, normal, lines, samples.vertices)
            tick(counter, len(lines), phase='arrangement')
            samples.offsets.append((point[0] + step * normal[0], point[1] + step * normal[1]))
            samples.offsets.append((point[0] - step * normal[0], point[1] - step * normal[1]))
    return samples


def bisector_line(a: Point2, b: Point2) -> Edge:
    """Full perpendicular bisector of two distinct points"""
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return Edge(mid, _perp(_sub(b, a)), None, None)
