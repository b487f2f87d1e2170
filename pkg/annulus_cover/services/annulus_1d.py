"""
One-Dimensional Annulus Service
Interval-pair solvers for points on a line, nonuniform and uniform, constraint and penalized

Points sharing a coordinate form a group and are always covered together, so
every interval pair covers at most two runs of consecutive groups.
"""

import bisect
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from annulus_cover.errors import DimensionMismatchError, InfeasibleError
from annulus_cover.models.geom_core import Instance, IntervalPair, Mode, Solution, make_solution
from annulus_cover.utils.helpers import OperationCounter, tick

logger = logging.getLogger(__name__)

NONUNIFORM = 'nonuniform'
UNIFORM = 'uniform'

Run = Tuple[int, int]


@dataclass
class Groups1D:
    """Distinct coordinates in increasing order with per-group weights"""

    coords: List[Fraction] = field(default_factory=list)
    net: List[Fraction] = field(default_factory=list)
    blues: List[int] = field(default_factory=list)
    reds: List[int] = field(default_factory=list)

    @classmethod
    def from_instance(cls, instance: Instance) -> "Groups1D":
        table = {}
        for p in instance.points:
            entry = table.setdefault(p.coords[0], [Fraction(0), 0, 0])
            if p.is_red:
                entry[0] += p.penalty
                entry[2] += 1
            else:
                entry[0] -= p.penalty
                entry[1] += 1
        groups = cls()
        for c in sorted(table):
            net, blues, reds = table[c]
            groups.coords.append(c)
            groups.net.append(net)
            groups.blues.append(blues)
            groups.reds.append(reds)
        return groups

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def red_groups(self) -> List[int]:
        return [g for g, r in enumerate(self.reds) if r]

    def mirrored(self) -> "Groups1D":
        return Groups1D([-c for c in reversed(self.coords)], self.net[::-1], self.blues[::-1], self.reds[::-1])


@dataclass
class SweepState1D:
    """Running optimum of the left-to-right pass; runs are (first group, last group)"""

    best_single: Tuple[Fraction, Optional[Run]] = (Fraction(0), None)
    best_pair: Tuple[Fraction, Optional[Run], Optional[Run]] = (Fraction(0), None, None)
    anchored: Tuple[Fraction, int] = (Fraction(0), -1)
    pair_end: Tuple[Fraction, Optional[Run], int] = (Fraction(0), None, -1)


def _prefix(values) -> List:
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return out


def _empty_pair(groups: Groups1D) -> IntervalPair:
    a = groups.coords[0] - 1 if groups.coords else Fraction(0)
    return IntervalPair((a, a), (a, a))


def _runs_pair(groups: Groups1D, first: Optional[Run], second: Optional[Run]) -> IntervalPair:
    c = groups.coords
    if first is None and second is None:
        return _empty_pair(groups)
    if second is None or first is None:
        s, e = first or second
        return IntervalPair((c[s], c[s]), (c[s], c[e]))
    return IntervalPair((c[first[0]], c[first[1]]), (c[second[0]], c[second[1]]))


def _solve_nonuniform_penalized(instance: Instance, groups: Groups1D, counter) -> Solution:
    state = SweepState1D()
    for g, w in enumerate(groups.net):
        tick(counter, phase='sweep')
        single_before = state.best_single

        options = []
        pair_value, pair_first, second_start = state.pair_end
        if pair_first is not None:
            options.append((pair_value + w, pair_first, second_start))
        if single_before[1] is not None:
            options.append((single_before[0] + w, single_before[1], g))
        if options:
            state.pair_end = max(options, key=lambda o: o[0])

        value, start = state.anchored
        state.anchored = (value + w, start) if start >= 0 and value > 0 else (w, g)

        if state.anchored[0] > state.best_single[0]:
            state.best_single = (state.anchored[0], (state.anchored[1], g))
        if state.pair_end[1] is not None and state.pair_end[0] > state.best_pair[0]:
            state.best_pair = (state.pair_end[0], state.pair_end[1], (state.pair_end[2], g))

    best, first, second = Fraction(0), None, None
    if state.best_single[1] is not None and state.best_single[0] > best:
        best, first = state.best_single
    if state.best_pair[1] is not None and state.best_pair[0] > best:
        best, first, second = state.best_pair
    expected = instance.total_red_penalty - best
    return make_solution(instance, _runs_pair(groups, first, second), Mode.PENALIZED, '1d-nu', expected,
                         {'runs': [r for r in (first, second) if r is not None]})


def _solve_nonuniform_constraint(instance: Instance, groups: Groups1D, counter) -> Solution:
    red_groups = groups.red_groups
    first, last = red_groups[0], red_groups[-1]
    blue_prefix = _prefix(groups.blues)

    best_gap, split = 0, None
    for lo, hi in zip(red_groups, red_groups[1:]):
        tick(counter, phase='gaps')
        gap_blues = blue_prefix[hi] - blue_prefix[lo + 1]
        if gap_blues > best_gap:
            best_gap, split = gap_blues, (lo, hi)

    expected = blue_prefix[last + 1] - blue_prefix[first] - best_gap
    c = groups.coords
    if split is None:
        annulus = _runs_pair(groups, (first, last), None)
    else:
        annulus = IntervalPair((c[first], c[split[0]]), (c[split[1]], c[last]))
    return make_solution(instance, annulus, Mode.CONSTRAINT, '1d-nu', expected,
                         {'split_gap': split, 'gap_blues': best_gap})


def _partner_interval(groups: Groups1D, s: int, e: int, length: Fraction) -> Tuple[Fraction, Fraction, bool, bool]:
    """Interval of the given length covering exactly groups s..e (s >= 1)"""
    c = groups.coords
    a = max(c[s - 1], c[e] - length)
    b = a + length
    return a, b, a == c[s - 1], e + 1 < len(c) and b == c[e + 1]


def _best_partner_penalized(groups: Groups1D, prefix, j: int, length: Fraction, counter):
    """Max-weight run strictly right of group j that fits in an interval of the given length"""
    c, k = groups.coords, len(groups)
    window = deque()
    best = None
    e = j + 1
    for s in range(j + 1, k):
        hi = bisect.bisect_right(c, c[s] + length) - 1
        lo = max(s, bisect.bisect_left(c, c[s - 1] + length) - 1)
        while e <= hi:
            tick(counter, phase='partner')
            while window and prefix[window[-1] + 1] <= prefix[e + 1]:
                window.pop()
            window.append(e)
            e += 1
        while window and window[0] < lo:
            window.popleft()
        if window and lo <= hi:
            value = prefix[window[0] + 1] - prefix[s]
            if best is None or value > best[0]:
                best = (value, s, window[0])
    return best


def _uniform_pair(groups: Groups1D, base: Run, partner, length: Fraction, mirrored: bool,
                  mirror: Groups1D) -> IntervalPair:
    c = groups.coords
    base_iv = (c[base[0]], c[base[1]])
    if partner is None:
        far = c[-1] + 1
        return IntervalPair(base_iv, (far, far + length))
    if not mirrored:
        a, b, a_open, b_open = _partner_interval(groups, partner[0], partner[1], length)
        return IntervalPair(base_iv, (a, b), (False, False, a_open, b_open))
    a, b, a_open, b_open = _partner_interval(mirror, partner[0], partner[1], length)
    return IntervalPair((-b, -a), base_iv, (b_open, a_open, False, False))


def _solve_uniform_penalized(instance: Instance, groups: Groups1D, counter) -> Solution:
    k = len(groups)
    mirror = groups.mirrored()
    prefix, mirror_prefix = _prefix(groups.net), _prefix(mirror.net)
    red_groups = groups.red_groups

    best, witness = Fraction(0), None
    for index, i in enumerate(red_groups):
        for j in red_groups[index:]:
            tick(counter, phase='base')
            length = groups.coords[j] - groups.coords[i]
            base_value = prefix[j + 1] - prefix[i]
            options = [(Fraction(0), None, False)]
            right = _best_partner_penalized(groups, prefix, j, length, counter)
            if right is not None:
                options.append((right[0], right[1:], False))
            left = _best_partner_penalized(mirror, mirror_prefix, k - 1 - i, length, counter)
            if left is not None:
                options.append((left[0], left[1:], True))
            partner_value, partner, mirrored = max(options, key=lambda o: o[0])
            if base_value + partner_value > best:
                best = base_value + partner_value
                witness = ((i, j), partner, length, mirrored)

    if witness is None:
        annulus = _empty_pair(groups)
    else:
        annulus = _uniform_pair(groups, *witness, mirror)
    expected = instance.total_red_penalty - best
    return make_solution(instance, annulus, Mode.PENALIZED, '1d-u', expected,
                         {'base': witness[0] if witness else None})


def _best_partner_constraint(groups: Groups1D, blue_prefix, j: int, last_red: int, length: Fraction, counter):
    """Fewest-blue run right of group j covering every red group after j"""
    c, k = groups.coords, len(groups)
    later_reds = [g for g in groups.red_groups if g > j]
    if not later_reds:
        return None
    best = None
    for s in range(j + 1, later_reds[0] + 1):
        tick(counter, phase='partner')
        hi = bisect.bisect_right(c, c[s] + length) - 1
        lo = max(last_red, bisect.bisect_left(c, c[s - 1] + length) - 1)
        if lo > hi:
            continue
        blues = blue_prefix[lo + 1] - blue_prefix[s]
        if best is None or blues < best[0]:
            best = (blues, s, lo)
    return best


def _solve_uniform_constraint(instance: Instance, groups: Groups1D, counter) -> Solution:
    k = len(groups)
    mirror = groups.mirrored()
    blue_prefix, mirror_blue_prefix = _prefix(groups.blues), _prefix(mirror.blues)
    red_groups = groups.red_groups
    first, last = red_groups[0], red_groups[-1]

    def base_blues(i, j):
        return blue_prefix[j + 1] - blue_prefix[i]

    best = base_blues(first, last)
    witness = ((first, last), None, groups.coords[last] - groups.coords[first], False)
    for j in red_groups[:-1]:
        tick(counter, phase='base')
        length = groups.coords[j] - groups.coords[first]
        right = _best_partner_constraint(groups, blue_prefix, j, last, length, counter)
        if right is not None and base_blues(first, j) + right[0] < best:
            best = base_blues(first, j) + right[0]
            witness = ((first, j), right[1:], length, False)
    for i in red_groups[1:]:
        tick(counter, phase='base')
        length = groups.coords[last] - groups.coords[i]
        left = _best_partner_constraint(mirror, mirror_blue_prefix, k - 1 - i, k - 1 - first, length, counter)
        if left is not None and base_blues(i, last) + left[0] < best:
            best = base_blues(i, last) + left[0]
            witness = ((i, last), left[1:], length, True)

    annulus = _uniform_pair(groups, *witness, mirror)
    return make_solution(instance, annulus, Mode.CONSTRAINT, '1d-u', best, {'base': witness[0]})


def solve_1d(instance: Instance, shape: str = NONUNIFORM, mode: Mode = Mode.PENALIZED,
             counter: Optional[OperationCounter] = None) -> Solution:
    """Optimal interval pair for a 1D instance"""
    if instance.dimension != 1:
        raise DimensionMismatchError(f"solve_1d needs a 1D instance, got dimension {instance.dimension}")
    if shape not in (NONUNIFORM, UNIFORM):
        raise ValueError(f"unknown 1D shape: {shape}")
    mode = Mode(mode)
    if mode is Mode.CONSTRAINT and instance.n == 0:
        raise InfeasibleError("constraint mode needs at least one red point")

    groups = Groups1D.from_instance(instance)
    tick(counter, len(groups), phase='sort')
    if shape == NONUNIFORM:
        solver = _solve_nonuniform_constraint if mode is Mode.CONSTRAINT else _solve_nonuniform_penalized
    else:
        solver = _solve_uniform_constraint if mode is Mode.CONSTRAINT else _solve_uniform_penalized
    solution = solver(instance, groups, counter)
    logger.debug("solve_1d %s/%s n=%d m=%d lambda=%s ops=%s", shape, mode.value, instance.n, instance.m,
                 solution.lambda_value, counter.count if counter else '-')
    return solution
