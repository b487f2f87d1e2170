"""
Complexity Smoke Tests
======================

Operation counters must grow no faster than the solvers' bounds when the input doubles.
"""

import pytest

from annulus_cover.models.geom_core import Mode
from annulus_cover.services.annulus_1d import NONUNIFORM, solve_1d
from annulus_cover.services.annulus_rect_2d import NC, NNC, UNIFORM, solve_rect_2d
from annulus_cover.utils.helpers import OperationCounter
from annulus_cover.utils.instance_io import generate

MAX_GROWTH = 2.5
RUNS_PER_SIZE = 20
PLANE_RUNS = 5


def mean_count(solver, sizes, runs=RUNS_PER_SIZE):
    """Average counter total over seeded instances of each (n, m) size"""
    totals = []
    for n, m, dim, grid in sizes:
        counts = []
        for seed in range(runs):
            counter = OperationCounter()
            solver(generate(seed, 'uniform_grid', n, m, dim, grid=grid), counter)
            counts.append(counter.count)
        totals.append(sum(counts) / len(counts))
    return totals


def rect_solver(shape, mode):
    return lambda instance, counter: solve_rect_2d(instance, shape, mode, counter)


def assert_growth(totals, limit):
    for small, large in zip(totals, totals[1:]):
        assert large / small <= limit, totals


@pytest.mark.slow
class TestLinearGrowth:
    """Test near-linear counter growth of the 1D solvers."""

    SIZES = [(500, 500, 1, 10_000), (1000, 1000, 1, 10_000), (2000, 2000, 1, 10_000)]

    @pytest.mark.parametrize("mode", [Mode.CONSTRAINT, Mode.PENALIZED])
    def test_nonuniform(self, mode):
        totals = mean_count(lambda instance, counter: solve_1d(instance, NONUNIFORM, mode, counter), self.SIZES)
        assert_growth(totals, MAX_GROWTH)


@pytest.mark.slow
class TestHoleSweepGrowth:
    """Test counter growth of the nonconcentric constraint sweep."""

    def test_blues_double(self):
        sizes = [(8, 100, 2, 1000), (8, 200, 2, 1000), (8, 400, 2, 1000)]
        totals = mean_count(rect_solver(NNC, Mode.CONSTRAINT), sizes, runs=PLANE_RUNS)
        assert_growth(totals, MAX_GROWTH)

    def test_reds_double(self):
        # n (n + m) with m fixed stays under 3x per doubling while n < m
        sizes = [(20, 100, 2, 1000), (40, 100, 2, 1000), (80, 100, 2, 1000)]
        totals = mean_count(rect_solver(NNC, Mode.CONSTRAINT), sizes, runs=PLANE_RUNS)
        assert_growth(totals, 3.2)

    def test_both_double(self):
        sizes = [(10, 50, 2, 1000), (20, 100, 2, 1000), (40, 200, 2, 1000)]
        totals = mean_count(rect_solver(NNC, Mode.CONSTRAINT), sizes, runs=PLANE_RUNS)
        assert_growth(totals, 5)


@pytest.mark.slow
class TestConcentricGrowth:
    """Test counter growth of the concentric and uniform solvers."""

    @pytest.mark.parametrize("shape", [NC, UNIFORM])
    def test_constraint_both_double(self, shape):
        # n (n + m)^2
        sizes = [(4, 16, 2, 1000), (8, 32, 2, 1000), (16, 64, 2, 1000)]
        totals = mean_count(rect_solver(shape, Mode.CONSTRAINT), sizes, runs=PLANE_RUNS)
        assert_growth(totals, 10)

    @pytest.mark.parametrize("shape", [NC, UNIFORM])
    @pytest.mark.parametrize("mode", [Mode.CONSTRAINT, Mode.PENALIZED])
    def test_blues_double(self, shape, mode):
        sizes = [(5, 20, 2, 1000), (5, 40, 2, 1000), (5, 80, 2, 1000)]
        totals = mean_count(rect_solver(shape, mode), sizes, runs=PLANE_RUNS)
        assert_growth(totals, 5)
