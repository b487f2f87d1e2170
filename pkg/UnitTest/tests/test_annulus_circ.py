"""
Circular Annulus Tests
======================

Constraint (every red covered) and penalized circular annulus solvers and their helpers.
"""

from fractions import Fraction

import pytest

from annulus_cover.errors import DimensionMismatchError
from annulus_cover.models.geom_core import CircAnnulus, Mode
from annulus_cover.services.annulus_circ import (
    CircCandidate, annulus_for, certify_shift, compute_delta, constraint_case, evaluate_center,
    penalized_case, solve_circ, solve_grbcac, solve_rbcac,
)
from annulus_cover.utils.helpers import OperationCounter
from annulus_cover.utils.instance_io import generate
from UnitTest.utils.assertions import assert_circ_annulus_valid, assert_solution_valid
from UnitTest.utils.mock_data import MockInstanceGenerator

F = Fraction
ORIGIN = (F(0), F(0))


@pytest.fixture
def blue_above(make_instance):
    """Reds (5,0), (-5,0), (0,-3) and a blue (0,5) on the same circle about the origin."""
    return make_instance(2, reds=[((5, 0), 1), ((-5, 0), 1), ((0, -3), 1)], blues=[((0, 5), 1)], id='blue_above')


@pytest.mark.unit
class TestEvaluateCenter:
    """Test the fixed-center distance scan."""

    def test_constraint_range_spans_the_reds(self, blue_above):
        value = evaluate_center(blue_above, ORIGIN, Mode.CONSTRAINT)

        assert (value.r_in_sq, value.r_out_sq) == (9, 25)
        assert value.lambda_value == 1
        assert 'B0' in value.covered_ids

    def test_penalized_prefers_dropping_a_red(self, make_instance):
        instance = make_instance(2, reds=[((1, 0), 1), ((3, 0), 1)], blues=[((2, 0), 5)])
        value = evaluate_center(instance, ORIGIN, Mode.PENALIZED)

        assert value.lambda_value == 1
        assert value.r_in_sq == value.r_out_sq

    def test_penalized_with_nothing_worth_covering(self, make_instance):
        instance = make_instance(2, blues=[((1, 0), 1)])
        value = evaluate_center(instance, ORIGIN, Mode.PENALIZED)

        assert value.lambda_value == 0
        assert value.r_in_sq is None
        assert annulus_for(instance, value).r_out_sq == 0


@pytest.mark.unit
class TestDelta:
    """Test the separation bound used to size center shifts."""

    def test_delta_to_the_nearer_circle(self, make_instance):
        instance = make_instance(2, reds=[((3, 0), 1), (('1/2', 0), 1)])
        annulus = CircAnnulus(ORIGIN, F(1), F(4))
        assert compute_delta(annulus, instance) == F(1, 2)

    def test_delta_none_when_every_point_is_defining(self, make_instance):
        instance = make_instance(2, reds=[((1, 0), 1), ((2, 0), 1)])
        annulus = CircAnnulus(ORIGIN, F(1), F(4), defining_points=(('R0', 'inner'), ('R1', 'outer')))
        assert compute_delta(annulus, instance) is None

    def test_delta_zero_for_a_point_on_a_circle(self, make_instance):
        instance = make_instance(2, reds=[((0, 2), 1)])
        assert compute_delta(CircAnnulus(ORIGIN, F(1), F(4)), instance) == 0

    def test_irrational_gap_is_a_lower_bound(self, make_instance):
        instance = make_instance(2, reds=[((1, 1), 1)])
        delta = compute_delta(CircAnnulus(ORIGIN, F(1), F(1)), instance)
        # sqrt(2) - 1 is about 0.4142
        assert 0 < delta <= F(4143, 10000)


@pytest.mark.unit
class TestCertifyShift:
    """Test moving a center off a vertex to release blue defining points."""

    def test_shift_releases_the_blue(self, blue_above):
        certificate = certify_shift(CircCandidate(ORIGIN), blue_above)

        assert certificate.removable_blue_ids == frozenset({'B0'})
        assert certificate.lambda_value == 0
        assert certificate.direction is not None
        assert certificate.witness_center != ORIGIN

    def test_no_improvement_keeps_the_center(self, unit_circle_reds):
        certificate = certify_shift(CircCandidate(ORIGIN), unit_circle_reds)
        assert certificate.lambda_value == 0


@pytest.mark.unit
class TestCaseTags:
    """Test the labels attached to candidate vertices."""

    @pytest.mark.parametrize("tags,expected", [
        ([('VD', None), ('VD', None)], 'B.1'),
        ([('VD_i', 'B0'), ('VD_i', 'B0')], 'B.2'),
        ([('VD_i', 'B0'), ('VD_i', 'B1')], 'B.3'),
        ([('FVD', None)], 'A.1'),
        ([('FVD_i', 'B0'), ('FVD_i', 'B1')], 'A.3'),
        ([('VD', None), ('FVD', None)], 'C.1'),
        ([('VD_i', 'B0'), ('FVD_i', 'B1')], 'C.4'),
    ])
    def test_constraint_case(self, tags, expected):
        assert constraint_case(tags) == expected

    def test_penalized_case(self):
        assert penalized_case([('pair', 'R0|B0'), ('pair', 'R0|R1')]) == 'three-point'
        assert penalized_case([('pair', 'R0|B0'), ('pair', 'R1|B1')]) == 'two-plus-two'


@pytest.mark.unit
class TestSolveConstraint:
    """Test the constraint-mode solver."""

    def test_blue_at_the_center_of_the_red_circle(self, unit_circle_reds):
        solution = solve_rbcac(unit_circle_reds)

        assert_solution_valid(solution, unit_circle_reds, expected_lambda=0)
        assert_circ_annulus_valid(solution.annulus, unit_circle_reds)
        assert solution.variant == 'circ'

    def test_red_at_the_center(self, unit_circle_with_origin):
        # centered at the blue, the reds span [1/4, 9/4] and the blue sits in the hole
        solution = solve_rbcac(unit_circle_with_origin)
        assert_solution_valid(solution, unit_circle_with_origin, expected_lambda=0)

    def test_shift_is_needed(self, blue_above):
        solution = solve_rbcac(blue_above)
        assert_solution_valid(solution, blue_above, expected_lambda=0)

    def test_blue_on_a_red(self, make_instance):
        instance = make_instance(2, reds=[((0, 0), 1), ((4, 0), 1)], blues=[((4, 0), 1)])
        assert solve_rbcac(instance).lambda_value == 1

    def test_single_red(self, make_instance):
        instance = make_instance(2, reds=[((2, 3), 1)], blues=[((0, 0), 1)])
        solution = solve_rbcac(instance)
        assert_solution_valid(solution, instance, expected_lambda=0)

    def test_no_reds_is_vacuous(self, make_instance):
        instance = make_instance(2, blues=[((0, 0), 1)])
        solution = solve_rbcac(instance)

        assert solution.lambda_value == 0
        assert solution.details['candidate']['case'] == 'vacuous'

    def test_candidate_details(self, unit_circle_reds):
        counter = OperationCounter()
        solution = solve_rbcac(unit_circle_reds, counter)

        assert solution.details['candidates_evaluated'] > 0
        assert 'center' in solution.details['candidate']
        assert counter.by_phase.get('evaluate', 0) > 0


@pytest.mark.unit
class TestSolvePenalized:
    """Test the penalized solver."""

    def test_single_red_far_blue(self, make_instance):
        instance = make_instance(2, reds=[((0, 0), 5)], blues=[((3, 0), 1)])
        solution = solve_grbcac(instance)
        assert_solution_valid(solution, instance, expected_lambda=0)

    def test_heavy_blue_between_reds(self, collinear_heavy_blue):
        solution = solve_grbcac(collinear_heavy_blue)

        assert_solution_valid(solution, collinear_heavy_blue, expected_lambda=0)
        assert_circ_annulus_valid(solution.annulus, collinear_heavy_blue)

    def test_only_blues(self, make_instance):
        instance = make_instance(2, blues=[((0, 0), 1), ((1, 0), 2)])
        assert solve_grbcac(instance).lambda_value == 0

    def test_coincident_red_and_heavy_blue(self, make_instance):
        instance = make_instance(2, reds=[((0, 0), 1)], blues=[((0, 0), 3)])
        assert solve_grbcac(instance).lambda_value == 1

    def test_penalized_never_exceeds_constraint_count(self, blue_above, unit_circle_reds):
        for instance in (blue_above, unit_circle_reds):
            assert solve_grbcac(instance).lambda_value <= solve_rbcac(instance).lambda_value

    def test_solve_circ_dispatch(self, collinear_heavy_blue):
        assert solve_circ(collinear_heavy_blue, Mode.CONSTRAINT).mode is Mode.CONSTRAINT
        assert solve_circ(collinear_heavy_blue, 'penalized').mode is Mode.PENALIZED

    def test_1d_instance_is_rejected(self, split_line):
        with pytest.raises(DimensionMismatchError):
            solve_grbcac(split_line)


@pytest.mark.unit
class TestStructuralRecord:
    """Test the certified candidate reported next to the returned annulus."""

    def test_structural_annulus_carries_the_defining_tuple(self, unit_circle_reds):
        value = evaluate_center(unit_circle_reds, ORIGIN, Mode.CONSTRAINT)
        candidate = CircCandidate(ORIGIN, (('R0', 'R', 'inner'), ('R0', 'R', 'outer')), r_in_sq=value.r_in_sq,
                                  r_out_sq=value.r_out_sq)
        annulus = candidate.structural_annulus()

        assert annulus.defining_points == (('R0', 'inner'), ('R0', 'outer'))
        assert annulus.check_defining(unit_circle_reds)

    def test_off_circle_point_fails_the_check(self, unit_circle_reds):
        annulus = CircAnnulus(ORIGIN, F(1), F(1), defining_points=(('R0', 'inner'),))
        moved = CircAnnulus(ORIGIN, F(4), F(4), defining_points=(('R0', 'outer'),))

        assert annulus.check_defining(unit_circle_reds)
        assert not moved.check_defining(unit_circle_reds)

    def test_empty_candidate_has_no_structure(self):
        assert CircCandidate(ORIGIN).structural_annulus() is None

    @pytest.mark.parametrize("mode", [Mode.CONSTRAINT, Mode.PENALIZED])
    def test_record_audits_on_random_instances(self, mode):
        instances = MockInstanceGenerator(seed=31).batch(6, n=3, m=3, span=3)
        instances += [generate(seed, 'cocircular', 4, 2, 2) for seed in range(2)]
        for instance in instances:
            solution = solve_circ(instance, mode)
            record = solution.details['structure']
            witness = solution.details['witness']

            assert_circ_annulus_valid(solution.annulus, instance)
            assert witness in ('vertex', 'shifted', 'piece', 'offset', 'single')
            assert solution.details['candidate'] == record.to_dict()
            structural = record.structural_annulus()
            if structural is not None:
                assert structural.check_defining(instance), instance.id
            blue_defining = {pid for pid, color, _ in record.defining if color == 'B'}
            assert record.removable_blue_ids <= blue_defining, instance.id
            if witness == 'vertex':
                assert solution.annulus.center == record.center
                assert not record.removable_blue_ids
            if witness in ('vertex', 'shifted') and mode is Mode.CONSTRAINT:
                at_vertex = evaluate_center(instance, record.center, mode)
                assert solution.lambda_value == at_vertex.lambda_value - len(record.removable_blue_ids), instance.id

    def test_shifted_witness_releases_a_blue(self, blue_above):
        solution = solve_rbcac(blue_above)
        record = solution.details['structure']

        assert solution.lambda_value == 0
        if solution.details['witness'] == 'shifted':
            assert 'B0' in record.removable_blue_ids
            assert solution.annulus.center != record.center
