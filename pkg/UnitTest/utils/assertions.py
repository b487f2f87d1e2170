"""
Custom Assertion Functions
==========================

Checks that a solver's witness is well formed and really achieves the reported value.
"""

import os
import sys
from typing import Optional

# Add project root to path
project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, project_root)

from annulus_cover.models.geom_core import (
    INFEASIBLE, CircAnnulus, Instance, IntervalPair, Mode, RectAnnulus, RectShape, Solution,
    classify_rect, coverage, penalty_of,
)


def assert_solution_valid(solution: Solution, instance: Instance, expected_lambda=None):
    """Assert the witness annulus reproduces lambda and the reported coverage sets."""
    assert solution is not None, "Solution should not be None"
    value = penalty_of(instance, solution.annulus, solution.mode)
    assert value is not INFEASIBLE, "Constraint-mode witness must cover every red"
    assert value == solution.lambda_value, f"Witness gives {value}, solution reports {solution.lambda_value}"

    covered, uncovered = coverage(instance, solution.annulus)
    assert covered == solution.covered_blue_ids, "Covered blue ids should match the witness"
    assert uncovered == solution.uncovered_red_ids, "Uncovered red ids should match the witness"
    if solution.mode is Mode.CONSTRAINT:
        assert not solution.uncovered_red_ids, "Constraint mode leaves no red uncovered"

    if expected_lambda is not None:
        assert solution.lambda_value == expected_lambda, \
            f"Expected lambda {expected_lambda}, got {solution.lambda_value}"


def assert_interval_pair_valid(annulus: IntervalPair, uniform: bool = False):
    """Assert interval ordering and, for uniform pairs, equal lengths."""
    assert isinstance(annulus, IntervalPair), f"Expected an IntervalPair, got {type(annulus).__name__}"
    lo, li = annulus.left_interval
    ri, ro = annulus.right_interval
    assert lo <= li <= ri <= ro, "Intervals should be ordered"
    if uniform:
        assert annulus.lengths[0] == annulus.lengths[1], f"Uniform pair has lengths {annulus.lengths}"


def assert_rect_annulus_valid(annulus: RectAnnulus, shape: Optional[str] = None):
    """Assert containment and that the widths fit the requested shape class."""
    assert isinstance(annulus, RectAnnulus), f"Expected a RectAnnulus, got {type(annulus).__name__}"
    o, i = annulus.outer, annulus.inner
    assert o.left <= i.left <= i.right <= o.right, "Inner x-range should lie inside the outer one"
    assert o.bottom <= i.bottom <= i.top <= o.top, "Inner y-range should lie inside the outer one"

    found = classify_rect(annulus)
    if shape == 'uniform':
        assert found is RectShape.UNIFORM, f"Expected a uniform annulus, got {found}"
    elif shape == 'nc':
        assert found in (RectShape.UNIFORM, RectShape.NONUNIFORM_CONCENTRIC), \
            f"Expected a concentric annulus, got {found}"


def assert_center_on_line(annulus: RectAnnulus, line_y):
    """Assert both rectangle centers lie on y = line_y."""
    assert annulus.outer.center[1] == line_y, f"Outer center {annulus.outer.center} is off y={line_y}"
    assert annulus.inner.center[1] == line_y, f"Inner center {annulus.inner.center} is off y={line_y}"


def assert_circ_annulus_valid(annulus: CircAnnulus, instance: Instance):
    """Assert radii ordering and that every defining point lies on its circle."""
    assert isinstance(annulus, CircAnnulus), f"Expected a CircAnnulus, got {type(annulus).__name__}"
    assert 0 <= annulus.r_in_sq <= annulus.r_out_sq, "Radii should satisfy 0 <= r_in <= r_out"
    assert annulus.check_defining(instance), f"Defining points {annulus.defining_points} are off their circles"
