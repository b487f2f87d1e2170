"""
Rectangular Annulus Tests
=========================

Nonconcentric, concentric and uniform rectangular annuli plus the maximum-weight rectangle.
"""

import math
from fractions import Fraction

import pytest

from annulus_cover.errors import DimensionMismatchError, InfeasibleError
from annulus_cover.models.geom_core import Mode, Rect, RectShape, classify_rect
from annulus_cover.services import solve_oracle
from annulus_cover.services.annulus_rect_2d import (
    NC, NNC, UNIFORM, AxisFrame, _best_anchored_hole, axis_patterns, max_weight_rectangle, solve_rect_2d,
    width_range,
)
from annulus_cover.utils.instance_io import generate
from UnitTest.utils.assertions import assert_rect_annulus_valid, assert_solution_valid

F = Fraction


@pytest.mark.unit
class TestMaxWeightRectangle:
    """Test the maximum-weight rectangle helper."""

    def test_single_positive_point(self):
        rect, weight = max_weight_rectangle([((F(1), F(1)), F(5)), ((F(2), F(2)), F(-3))])

        assert rect == Rect(F(1), F(1), F(1), F(1))
        assert weight == 5

    def test_all_negative_gives_nothing(self):
        rect, weight = max_weight_rectangle([((F(0), F(0)), F(-1)), ((F(3), F(4)), F(-2))])
        assert rect is None
        assert weight == 0

    def test_spans_a_light_negative(self):
        points = [((F(1), F(1)), F(2)), ((F(3), F(1)), F(2)), ((F(2), F(1)), F(-1))]
        rect, weight = max_weight_rectangle(points)

        assert rect == Rect(F(1), F(3), F(1), F(1))
        assert weight == 3

    def test_clip_drops_outside_points(self):
        points = [((F(0), F(0)), F(4)), ((F(9), F(9)), F(7))]
        rect, weight = max_weight_rectangle(points, clip=Rect(F(-1), F(1), F(-1), F(1)))
        assert rect == Rect(F(0), F(0), F(0), F(0))
        assert weight == 4

    def test_empty_input(self):
        assert max_weight_rectangle([]) == (None, 0)


@pytest.mark.unit
class TestAxisPatterns:
    """Test the per-axis status patterns the concentric solvers enumerate."""

    COORDS = [F(0), F(1), F(3), F(7)]

    def test_every_pattern_is_realized_at_its_smallest_width(self):
        for pattern in axis_patterns(self.COORDS):
            frame = pattern.frame(self.COORDS, pattern.width_lo)
            statuses = [frame.status(v) for v in self.COORDS]
            assert statuses == [pattern.status_of(g) for g in range(len(self.COORDS))], pattern.cuts

    def test_all_out_pattern_is_present(self):
        cuts = {p.cuts for p in axis_patterns(self.COORDS)}
        assert (4, 4, 4, 4) in cuts

    def test_width_range_of_a_wide_hole(self):
        lower, upper = width_range(self.COORDS, (0, 1, 3, 4))
        assert lower == 0
        assert upper == math.inf

    def test_axis_frame_status(self):
        frame = AxisFrame(F(0), F(10), F(2), F(8), in_lo_open=True)

        assert frame.status(F(-1)) == 0
        assert frame.status(F(2)) == 2
        assert frame.status(F(8)) == 1
        assert frame.status(F(9)) == 1


@pytest.mark.unit
class TestNonconcentric:
    """Test the nonconcentric solver."""

    def test_blue_inside_square(self, square_with_center):
        solution = solve_rect_2d(square_with_center, NNC, Mode.CONSTRAINT)

        assert_solution_valid(solution, square_with_center, expected_lambda=0)
        assert_rect_annulus_valid(solution.annulus)
        assert solution.variant == 'rect-nnc'

    def test_blue_on_the_outer_side(self, square_with_edge_blue):
        # the blue shares the right side with two reds; an open inner side takes it into the hole
        solution = solve_rect_2d(square_with_edge_blue, NNC, Mode.CONSTRAINT)
        assert_solution_valid(solution, square_with_edge_blue, expected_lambda=0)

    def test_penalized_hole_around_blue(self, two_corners):
        solution = solve_rect_2d(two_corners, NNC, Mode.PENALIZED)
        assert_solution_valid(solution, two_corners, expected_lambda=0)

    def test_penalized_gives_up_a_red_inside_blues(self, make_instance):
        # a degenerate open hole at the blue keeps both reds
        instance = make_instance(2, reds=[((0, 0), 1), ((2, 0), 1)], blues=[((1, 0), 5)])
        solution = solve_rect_2d(instance, NNC, Mode.PENALIZED)
        assert_solution_valid(solution, instance, expected_lambda=0)

    def test_defining_points_are_reds_on_closed_sides(self, square_with_center):
        solution = solve_rect_2d(square_with_center, NNC, Mode.CONSTRAINT)
        red_ids = {q.pid for q in square_with_center.reds}
        assert {pid for pid, _ in solution.annulus.defining_points} <= red_ids


@pytest.mark.unit
class TestConcentric:
    """Test the concentric and uniform solvers."""

    def test_uniform_penalized_two_corners(self, two_corners_heavy):
        solution = solve_rect_2d(two_corners_heavy, UNIFORM, Mode.PENALIZED)

        assert_solution_valid(solution, two_corners_heavy, expected_lambda=0)
        assert_rect_annulus_valid(solution.annulus, 'uniform')

    def test_nc_shape(self, square_with_center):
        solution = solve_rect_2d(square_with_center, NC, Mode.CONSTRAINT)

        assert_solution_valid(solution, square_with_center)
        assert_rect_annulus_valid(solution.annulus, 'nc')
        assert solution.variant == 'rect-nc'

    def test_shape_classes_are_nested(self, square_with_center, square_with_edge_blue, unit_square_center):
        for instance in (square_with_center, square_with_edge_blue, unit_square_center):
            for mode in Mode:
                free = solve_rect_2d(instance, NNC, mode).lambda_value
                concentric = solve_rect_2d(instance, NC, mode).lambda_value
                uniform = solve_rect_2d(instance, UNIFORM, mode).lambda_value
                assert free <= concentric <= uniform

    def test_unit_square_center_blue(self, unit_square_center):
        solution = solve_rect_2d(unit_square_center, UNIFORM, Mode.CONSTRAINT)

        assert_solution_valid(solution, unit_square_center, expected_lambda=0)
        assert classify_rect(solution.annulus) is RectShape.UNIFORM


@pytest.mark.unit
class TestInputs:
    """Test argument validation."""

    def test_1d_instance_is_rejected(self, split_line):
        with pytest.raises(DimensionMismatchError):
            solve_rect_2d(split_line)

    def test_constraint_without_reds(self, make_instance):
        with pytest.raises(InfeasibleError):
            solve_rect_2d(make_instance(2, blues=[((0, 0), 1)]), NC, Mode.CONSTRAINT)

    def test_unknown_shape(self, two_corners):
        with pytest.raises(ValueError):
            solve_rect_2d(two_corners, 'hexagonal')

    def test_empty_instance(self, make_instance):
        for shape in (NNC, NC, UNIFORM):
            assert solve_rect_2d(make_instance(2), shape).lambda_value == 0


@pytest.mark.unit
class TestAnchoredHoleSweep:
    """Test the red-anchored hole sweep behind the nonconcentric constraint solver."""

    CELLS = [
        (F(0), F(0), True), (F(10), F(0), True), (F(5), F(5), True), (F(5), F(-5), True),
        (F(3), F(0), False), (F(7), F(0), False),
    ]

    def test_reds_above_and_below_narrow_the_hole(self):
        count, u_bounds, v_bounds = _best_anchored_hole(self.CELLS, None)

        assert count == 2
        assert u_bounds == (F(0), F(10))
        assert v_bounds == (F(-5), F(5))

    def test_unblocked_sweep_runs_to_the_outer_side(self):
        cells = [(F(0), F(0), True), (F(2), F(1), False), (F(2), F(-1), False)]
        assert _best_anchored_hole(cells, None) == (2, (F(0), math.inf), (-math.inf, math.inf))

    def test_only_reds(self):
        cells = [(F(0), F(0), True), (F(1), F(1), True)]
        assert _best_anchored_hole(cells, None) == (0, None, None)

    def test_solver_empties_the_hole(self, make_instance):
        instance = make_instance(2, reds=[((0, 0), 1), ((10, 0), 1), ((5, 5), 1), ((5, -5), 1)],
                                 blues=[((3, 0), 1), ((7, 0), 1)])
        solution = solve_rect_2d(instance, NNC, Mode.CONSTRAINT)

        assert_solution_valid(solution, instance, expected_lambda=0)
        assert solution.details['blues_in_hole'] == 2


COLLINEAR_CASES = {
    'horizontal': ([(0, 0), (4, 0), (8, 0)], [(2, 0), (6, 0), (4, 1)]),
    'vertical': ([(0, 0), (0, 4), (0, 8)], [(0, 2), (0, 6), (1, 4)]),
    'diagonal': ([(0, 0), (2, 2), (4, 4)], [(1, 1), (3, 3), (2, 0)]),
    'anti_diagonal': ([(0, 4), (2, 2), (4, 0)], [(1, 3), (2, 3), (3, 1)]),
}


@pytest.mark.unit
class TestCollinearReds:
    """Test the rectangular solvers against the oracle when the extreme reds share a line."""

    @pytest.mark.parametrize("case", sorted(COLLINEAR_CASES))
    @pytest.mark.parametrize("variant", ['rect-nnc', 'rect-nc', 'rect-u'])
    @pytest.mark.parametrize("mode", [Mode.CONSTRAINT, Mode.PENALIZED])
    def test_hand_built(self, make_instance, case, variant, mode):
        reds, blues = COLLINEAR_CASES[case]
        instance = make_instance(2, reds=[(c, 2) for c in reds], blues=[(c, 1) for c in blues], id=case)
        shape = {'rect-nnc': NNC, 'rect-nc': NC, 'rect-u': UNIFORM}[variant]
        solution = solve_rect_2d(instance, shape, mode)

        assert_solution_valid(solution, instance, solve_oracle(instance, variant, mode).lambda_value)

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("variant", ['rect-nnc', 'rect-nc', 'rect-u'])
    @pytest.mark.parametrize("mode", [Mode.CONSTRAINT, Mode.PENALIZED])
    def test_generated(self, seed, variant, mode):
        instance = generate(seed, 'collinear', 4, 3, 2, grid=6)
        shape = {'rect-nnc': NNC, 'rect-nc': NC, 'rect-u': UNIFORM}[variant]
        solution = solve_rect_2d(instance, shape, mode)

        assert_solution_valid(solution, instance, solve_oracle(instance, variant, mode).lambda_value)
