"""
Circular Annulus Service
Concentric-circle annulus solvers: minimum covered blues with every red covered
(solve_rbcac) and minimum total penalty (solve_grbcac)

For a fixed center the best annulus is a contiguous range of the distinct
point distances. That value only changes where two relevant points become
equidistant from the center, so each solver samples every vertex, edge piece
and face of the corresponding bisector arrangement:

- constraint mode uses the nearest/farthest Voronoi diagrams of the reds and
  the cell boundaries each blue gets when inserted into them;
- penalized mode uses the full bisectors of every pair holding a red.

Vertices are additionally shifted into each adjacent wedge (certify_shift),
which is how blue defining points are released from the annulus.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from annulus_cover.errors import DimensionMismatchError
from annulus_cover.models.geom_core import CircAnnulus, Instance, Mode, Solution, make_solution
from annulus_cover.services.voronoi import (
    Edge, Point2, arrangement_samples, bisector_line, build_farthest, build_nearest, dist_sq, insert_sites,
    offset_step, wedge_directions,
)
from annulus_cover.utils.helpers import OperationCounter, sqrt_bounds, tick

logger = logging.getLogger(__name__)

VARIANT_TAG = 'circ'
MAX_HALVINGS = 64


@dataclass(frozen=True)
class CircCandidate:
    """A candidate center with its defining points (pid, color, circle) and the case that produced it

    r_in_sq/r_out_sq are the radii of the best annulus at this center; the
    removable blues are defining blues a certified shift leaves uncovered.
    """

    center: Point2
    defining: Tuple[Tuple[str, str, str], ...] = ()
    removable_blue_ids: FrozenSet[str] = frozenset()
    case_tag: str = 'face'
    r_in_sq: Optional[Fraction] = None
    r_out_sq: Optional[Fraction] = None

    def structural_annulus(self) -> Optional[CircAnnulus]:
        """Closed annulus at the candidate center carrying its defining tuple"""
        if self.r_in_sq is None:
            return None
        return CircAnnulus(self.center, self.r_in_sq, self.r_out_sq, (False, False),
                           tuple((pid, circle) for pid, _, circle in self.defining))

    def to_dict(self) -> Dict:
        return {
            'center': [str(v) for v in self.center],
            'case': self.case_tag,
            'defining': [list(d) for d in self.defining],
            'removable_blue_ids': sorted(self.removable_blue_ids),
        }


@dataclass(frozen=True)
class CenterValue:
    """Best annulus for one fixed center; radii are None when it covers nothing"""

    center: Point2
    lambda_value: object
    r_in_sq: Optional[Fraction]
    r_out_sq: Optional[Fraction]
    covered_ids: FrozenSet[str] = frozenset()


@dataclass(frozen=True)
class ShiftCertificate:
    removable_blue_ids: FrozenSet[str]
    witness_center: Point2
    direction: Optional[Point2] = None
    step: Optional[Fraction] = None
    lambda_value: object = None


def evaluate_center(instance: Instance, center: Point2, mode: Mode,
                    counter: Optional[OperationCounter] = None) -> CenterValue:
    """Optimal annulus centered at the given point (the distance-range scan)"""
    tick(counter, instance.n + instance.m, phase='evaluate')
    groups: Dict[Fraction, List] = {}
    for p in instance.points:
        entry = groups.setdefault(dist_sq(center, p.coords), [Fraction(0), 0, 0])
        entry[0] += p.penalty if p.is_red else -p.penalty
        entry[1 if not p.is_red else 2] += 1
    radii = sorted(groups)

    if mode is Mode.CONSTRAINT:
        red_radii = [r for r in radii if groups[r][2]]
        lo, hi = red_radii[0], red_radii[-1]
        blues = sum(groups[r][1] for r in radii if lo <= r <= hi)
        return CenterValue(center, blues, lo, hi, _covered(instance, center, lo, hi))

    best, run = Fraction(0), None
    running, start = Fraction(0), 0
    for index, r in enumerate(radii):
        if index == 0 or running <= 0:
            running, start = groups[r][0], index
        else:
            running += groups[r][0]
        if running > best:
            best, run = running, (radii[start], r)
    lam = instance.total_red_penalty - best
    if run is None:
        return CenterValue(center, lam, None, None)
    return CenterValue(center, lam, run[0], run[1], _covered(instance, center, *run))


def _covered(instance: Instance, center: Point2, lo: Fraction, hi: Fraction) -> FrozenSet[str]:
    return frozenset(p.pid for p in instance.points if lo <= dist_sq(center, p.coords) <= hi)


def annulus_for(instance: Instance, value: CenterValue) -> CircAnnulus:
    if value.r_in_sq is None:
        far = (max((p.x for p in instance.points), default=Fraction(0)) + 1, Fraction(0))
        return CircAnnulus(far, Fraction(0), Fraction(0))
    defining = []
    for p in instance.points:
        d2 = dist_sq(value.center, p.coords)
        if d2 == value.r_in_sq:
            defining.append((p.pid, 'inner'))
        if d2 == value.r_out_sq:
            defining.append((p.pid, 'outer'))
    return CircAnnulus(value.center, value.r_in_sq, value.r_out_sq, (False, False), tuple(defining))


def _defining_tuple(instance: Instance, value: CenterValue) -> Tuple[Tuple[str, str, str], ...]:
    if value.r_in_sq is None:
        return ()
    colors = {p.pid: p.color.value for p in instance.points}
    return tuple((pid, colors[pid], circle) for pid, circle in annulus_for(instance, value).defining_points)


def _root_gap(a: Fraction, b: Fraction) -> Fraction:
    """|sqrt(a) - sqrt(b)| exactly when both roots are rational, else a certified lower bound"""
    if a == b:
        return Fraction(0)
    a_lo, a_hi = sqrt_bounds(a)
    b_lo, b_hi = sqrt_bounds(b)
    if a_lo == a_hi and b_lo == b_hi:
        return abs(a_lo - b_lo)
    return abs(a - b) / (a_hi + b_hi)


def compute_delta(annulus: CircAnnulus, instance: Instance) -> Optional[Fraction]:
    """Smallest distance from a non-defining point to the nearer circle; None if every point is defining"""
    defining = {pid for pid, _ in annulus.defining_points}
    best = None
    for p in instance.points:
        if p.pid in defining:
            continue
        d2 = dist_sq(annulus.center, p.coords)
        if d2 in (annulus.r_in_sq, annulus.r_out_sq):
            return Fraction(0)
        gap = min(_root_gap(d2, annulus.r_in_sq), _root_gap(d2, annulus.r_out_sq))
        best = gap if best is None else min(best, gap)
    return best


def _pair_lines(instance: Instance, center: Point2):
    """Bisector directions through center and (normal, constant) of every other pair bisector"""
    through, others = [], []
    coords = sorted({p.coords for p in instance.points})
    for a, b in itertools.combinations(coords, 2):
        line = bisector_line(a, b)
        if dist_sq(center, a) == dist_sq(center, b):
            through.append(line.direction)
        else:
            others.append(line.line())
    return through, others


def certify_shift(candidate: CircCandidate, instance: Instance, mode: Mode = Mode.CONSTRAINT,
                  counter: Optional[OperationCounter] = None) -> ShiftCertificate:
    """Move the center into each wedge around it and report the blue defining points left uncovered

    The step starts below both the nearest bisector hit and the delta bound and
    is halved until halving no longer changes the covered set, so the witness
    lies strictly inside the wedge's cell.
    """
    center = candidate.center
    base = evaluate_center(instance, center, mode, counter)
    blue_defining = {pid for pid, color, _ in (candidate.defining or _defining_tuple(instance, base))
                     if color == 'B'}
    through, others = _pair_lines(instance, center)
    delta = compute_delta(annulus_for(instance, base), instance) if base.r_in_sq is not None else None

    best: Optional[ShiftCertificate] = None
    for direction in wedge_directions(through):
        step = offset_step(center, direction, others)
        if delta:
            length_sq = direction[0] * direction[0] + direction[1] * direction[1]
            step = min(step, delta / (2 * sqrt_bounds(length_sq)[1]))
        moved = None
        for _ in range(MAX_HALVINGS):
            tick(counter, phase='certify_shift')
            here = evaluate_center(instance, _move(center, direction, step), mode, counter)
            half = evaluate_center(instance, _move(center, direction, step / 2), mode, counter)
            if here.covered_ids == half.covered_ids and here.lambda_value == half.lambda_value:
                moved = here
                break
            step /= 2
        if moved is None:
            continue
        if best is None or moved.lambda_value < best.lambda_value:
            removable = frozenset(blue_defining - moved.covered_ids)
            best = ShiftCertificate(removable, moved.center, direction, step, moved.lambda_value)

    if best is None or best.lambda_value > base.lambda_value:
        return ShiftCertificate(frozenset(), center, None, None, base.lambda_value)
    return best


def _move(center: Point2, direction: Point2, step: Fraction) -> Point2:
    return (center[0] + step * direction[0], center[1] + step * direction[1])


def _constraint_edges(instance: Instance, counter) -> List[Tuple[Edge, Tuple[str, Optional[str]]]]:
    """Edges of VD(R), FVD(R) and of every blue's cell after inserting it into each"""
    red_sites = [q.coords for q in instance.reds]
    red_set = set(red_sites)
    nearest = build_nearest(red_sites, counter)
    farthest = build_farthest(red_sites, counter)
    sources = [(e.geometry, ('VD', None)) for e in nearest.edges]
    sources += [(e.geometry, ('FVD', None)) for e in farthest.edges]
    new_index = len(red_sites)
    for p in instance.blues:
        if p.coords in red_set:
            continue
        sources += [(e.geometry, ('VD_i', p.pid)) for e in insert_sites(nearest, [p.coords], counter).cell_edges(new_index)]
        sources += [(e.geometry, ('FVD_i', p.pid)) for e in insert_sites(farthest, [p.coords], counter).cell_edges(new_index)]
    return sources


def constraint_case(tags) -> str:
    """Case label of a vertex from the diagrams its edges come from"""
    kinds = {kind for kind, _ in tags}
    near_blues = {pid for kind, pid in tags if kind == 'VD_i'}
    far_blues = {pid for kind, pid in tags if kind == 'FVD_i'}
    has_near = 'VD' in kinds or near_blues
    has_far = 'FVD' in kinds or far_blues
    if has_near and has_far:
        near = 'VD' if 'VD' in kinds else 'VD_i'
        far = 'FVD' if 'FVD' in kinds else 'FVD_j'
        return {('VD', 'FVD'): 'C.1', ('VD_i', 'FVD'): 'C.2', ('VD', 'FVD_j'): 'C.3', ('VD_i', 'FVD_j'): 'C.4'}[(near, far)]
    if has_far:
        if 'FVD' in kinds:
            return 'A.1'
        return 'A.3' if len(far_blues) >= 2 else 'A.2'
    if 'VD' in kinds:
        return 'B.1'
    return 'B.3' if len(near_blues) >= 2 else 'B.2'


def _penalized_edges(instance: Instance) -> List[Tuple[Edge, Tuple[str, Optional[str]]]]:
    """Full bisectors of every pair with at least one red; coincident pairs never separate"""
    sources = []
    for a, b in itertools.combinations(instance.points, 2):
        if not (a.is_red or b.is_red) or a.coords == b.coords:
            continue
        sources.append((bisector_line(a.coords, b.coords), ('pair', f"{a.pid}|{b.pid}")))
    return sources


def penalized_case(tags) -> str:
    pairs = [set(pid.split('|')) for _, pid in tags]
    shared = any(p & q for p, q in itertools.combinations(pairs, 2))
    return 'three-point' if shared else 'two-plus-two'


def _edge_tag(instance: Instance, value: CenterValue) -> str:
    """Diametric tags when two points on one circle sit opposite each other across the center"""
    if value.r_in_sq is None:
        return 'edge'
    for circle, radius in (('diametric-outer', value.r_out_sq), ('diametric-inner', value.r_in_sq)):
        on_circle = [p.coords for p in instance.points if dist_sq(value.center, p.coords) == radius]
        for a, b in itertools.combinations(on_circle, 2):
            if (a[0] + b[0]) / 2 == value.center[0] and (a[1] + b[1]) / 2 == value.center[1]:
                return circle
    return 'edge'


def _candidate(instance: Instance, value: CenterValue, case_tag: str,
               removable: FrozenSet[str] = frozenset()) -> CircCandidate:
    return CircCandidate(value.center, _defining_tuple(instance, value), removable, case_tag,
                         value.r_in_sq, value.r_out_sq)


def _solve(instance: Instance, mode: Mode, counter: Optional[OperationCounter]) -> Solution:
    """Best annulus over the arrangement samples

    details['candidate'] is the structural record of the answer: for a shifted
    witness it is the vertex the shift was certified from, with the blues the
    shift releases; details['witness'] names where the returned center came from.
    """
    if instance.dimension != 2:
        raise DimensionMismatchError(f"circular annuli need a 2D instance, got dimension {instance.dimension}")
    if not instance.points or (mode is Mode.CONSTRAINT and instance.n == 0):
        value = CenterValue((Fraction(0), Fraction(0)), 0 if mode is Mode.CONSTRAINT else Fraction(0), None, None)
        return make_solution(instance, annulus_for(instance, value), mode, VARIANT_TAG, value.lambda_value,
                             {'candidate': CircCandidate(value.center, case_tag='vacuous').to_dict(),
                              'witness': 'vacuous', 'structure': None})

    if mode is Mode.CONSTRAINT:
        sources, case_of = _constraint_edges(instance, counter), constraint_case
    else:
        sources, case_of = _penalized_edges(instance), penalized_case
    samples = arrangement_samples([edge for edge, _ in sources], counter)

    best: Optional[Tuple[CenterValue, CircCandidate, str]] = None

    def consider(value: CenterValue, candidate: CircCandidate, witness: str):
        nonlocal best
        if best is None or value.lambda_value < best[0].lambda_value:
            best = (value, candidate, witness)

    for vertex in sorted(samples.vertices):
        value = evaluate_center(instance, vertex, mode, counter)
        tag = case_of([sources[i][1] for i in samples.vertices[vertex]])
        candidate = _candidate(instance, value, tag)
        consider(value, candidate, 'vertex')
        certificate = certify_shift(candidate, instance, mode, counter)
        if certificate.direction is not None:
            shifted = evaluate_center(instance, certificate.witness_center, mode, counter)
            consider(shifted, _candidate(instance, value, tag, certificate.removable_blue_ids), 'shifted')

    for point, _ in samples.pieces:
        value = evaluate_center(instance, point, mode, counter)
        consider(value, _candidate(instance, value, _edge_tag(instance, value)), 'piece')
    for point in samples.offsets:
        value = evaluate_center(instance, point, mode, counter)
        consider(value, _candidate(instance, value, 'face'), 'offset')
    if best is None:
        anchor = instance.reds[0].coords if instance.reds else instance.points[0].coords
        value = evaluate_center(instance, anchor, mode, counter)
        consider(value, _candidate(instance, value, 'single'), 'single')

    value, candidate, witness = best
    details = {
        'candidate': candidate.to_dict(),
        'structure': candidate,
        'witness': witness,
        'candidates_evaluated': len(samples.vertices) + len(samples.pieces) + len(samples.offsets),
    }
    solution = make_solution(instance, annulus_for(instance, value), mode, VARIANT_TAG, value.lambda_value, details)
    logger.debug("circ/%s n=%d m=%d lambda=%s case=%s witness=%s", mode.value, instance.n, instance.m,
                 solution.lambda_value, candidate.case_tag, witness)
    return solution


def solve_rbcac(instance: Instance, counter: Optional[OperationCounter] = None) -> Solution:
    """Circular annulus covering every red with the fewest blues"""
    return _solve(instance, Mode.CONSTRAINT, counter)


def solve_grbcac(instance: Instance, counter: Optional[OperationCounter] = None) -> Solution:
    """Circular annulus minimizing uncovered red plus covered blue penalty"""
    return _solve(instance, Mode.PENALIZED, counter)


def solve_circ(instance: Instance, mode: Mode = Mode.PENALIZED,
               counter: Optional[OperationCounter] = None) -> Solution:
    return solve_rbcac(instance, counter) if Mode(mode) is Mode.CONSTRAINT else solve_grbcac(instance, counter)
