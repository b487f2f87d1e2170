"""
Restricted Annulus Tests
========================

Penalized rectangular annuli whose centers are pinned to a horizontal line.
"""

from fractions import Fraction

import pytest

from annulus_cover.errors import DimensionMismatchError
from annulus_cover.models.geom_core import Mode
from annulus_cover.services.annulus_rect_2d import NC, NNC, UNIFORM, solve_rect_2d
from annulus_cover.services.restricted_line import (
    RestrictedFrame, half_heights, restricted_frames, solve_restricted,
)
from UnitTest.utils.assertions import assert_center_on_line, assert_rect_annulus_valid, assert_solution_valid

F = Fraction
SHAPES = (UNIFORM, NC, NNC)


@pytest.fixture
def stacked_line(make_instance):
    """Reds (0,0), (0,4) and a blue P=5 between them, all on x = 0."""
    return make_instance(2, reds=[((0, 0), 1), ((0, 4), 1)], blues=[((0, 2), 5)], id='stacked_line')


@pytest.mark.unit
class TestSolveRestricted:
    """Test the restricted solvers for all three shapes."""

    @pytest.mark.parametrize("shape", SHAPES)
    def test_far_blue_costs_nothing(self, vertical_pair, shape):
        solution = solve_restricted(vertical_pair, shape, 0)

        assert_solution_valid(solution, vertical_pair, expected_lambda=0)
        assert_center_on_line(solution.annulus, 0)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_line_through_the_blue(self, stacked_line, shape):
        solution = solve_restricted(stacked_line, shape, 2)

        assert_solution_valid(solution, stacked_line, expected_lambda=0)
        assert_center_on_line(solution.annulus, 2)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_far_line_loses_a_red(self, stacked_line, shape):
        # any hole centered on y=10 that reaches the blue also swallows the red at y=4
        solution = solve_restricted(stacked_line, shape, 10)

        assert_solution_valid(solution, stacked_line, expected_lambda=1)
        assert_center_on_line(solution.annulus, 10)

    def test_uniform_shape(self, make_instance):
        instance = make_instance(2, reds=[((0, 2), 1), ((0, -2), 1), ((4, 0), 1)], blues=[((2, 0), 3)])
        solution = solve_restricted(instance, UNIFORM, 1)

        assert_solution_valid(solution, instance, expected_lambda=0)
        assert_rect_annulus_valid(solution.annulus, 'uniform')
        assert solution.variant == 'restricted-u'

    def test_never_beats_the_free_center(self, stacked_line):
        for shape in SHAPES:
            restricted = solve_restricted(stacked_line, shape, 10).lambda_value
            free = solve_rect_2d(stacked_line, shape, Mode.PENALIZED).lambda_value
            assert free <= restricted

    def test_line_given_as_text(self, stacked_line):
        solution = solve_restricted(stacked_line, NNC, '2')
        assert solution.details['line_y'] == 2

    def test_empty_instance(self, make_instance):
        solution = solve_restricted(make_instance(2), UNIFORM, F(1, 2))
        assert solution.lambda_value == 0
        assert_center_on_line(solution.annulus, F(1, 2))

    def test_1d_instance_is_rejected(self, split_line):
        with pytest.raises(DimensionMismatchError):
            solve_restricted(split_line, NNC, 0)

    def test_unknown_shape(self, stacked_line):
        with pytest.raises(ValueError):
            solve_restricted(stacked_line, 'oval', 0)


@pytest.mark.unit
class TestVerticalFrames:
    """Test the symmetric vertical frames."""

    def test_half_heights_fold_onto_the_line(self, stacked_line):
        assert half_heights(stacked_line, F(1)) == [F(2), F(4)]

    def test_axis_frame_mirrors_through_the_line(self):
        frame = RestrictedFrame(F(1), F(4), F(2), (False, True, False, False)).axis_frame()

        assert (frame.lo, frame.hi, frame.in_lo, frame.in_hi) == (F(-2), F(4), F(0), F(2))
        assert frame.hi_open and not frame.lo_open

    def test_frame_signatures_are_distinct(self, stacked_line):
        frames = restricted_frames(stacked_line, F(10))
        signatures = [signature for _, signature in frames]
        assert len(signatures) == len(set(signatures))

    def test_fixed_width_frames(self, stacked_line):
        for frame, _ in restricted_frames(stacked_line, F(10), width=F(2)):
            assert frame.width == 2
            assert frame.inner_top >= 10
