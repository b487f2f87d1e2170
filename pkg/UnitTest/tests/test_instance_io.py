"""
Instance I/O Tests
==================

Text format parsing and emitting, the seeded generator and SVG rendering.
"""

from fractions import Fraction

import pytest

from annulus_cover.errors import InstanceFormatError
from annulus_cover.models.geom_core import Color, Mode
from annulus_cover.services import solve
from annulus_cover.utils.instance_io import PROFILES, emit_instance, generate, parse_instance, read_instance
from annulus_cover.utils.svg_render import render_svg, write_svg

F = Fraction

SAMPLE = """\
# id: sample
dim 2
R 0 0 1
R 10 0 1/2
B 5 0.5 3   # trailing comment
"""


@pytest.mark.unit
class TestParse:
    """Test parsing of the text format."""

    def test_sample(self):
        instance = parse_instance(SAMPLE)

        assert instance.id == 'sample'
        assert instance.dimension == 2
        assert [p.pid for p in instance.points] == ['R0', 'R1', 'B0']
        assert instance.reds[1].penalty == F(1, 2)
        assert instance.blues[0].coords == (F(5), F(1, 2))
        assert instance.blues[0].color is Color.BLUE

    def test_explicit_id_wins(self):
        assert parse_instance(SAMPLE, instance_id='other').id == 'other'

    def test_default_id(self):
        assert parse_instance("dim 1\nR 3 1\n").id == 'instance'

    def test_emit_then_parse_keeps_points(self):
        instance = parse_instance(SAMPLE)
        again = parse_instance(emit_instance(instance))

        assert again == instance

    def test_emit_format(self):
        text = emit_instance(parse_instance(SAMPLE))
        assert text.splitlines()[:3] == ['# id: sample', 'dim 2', 'R 0 0 1']
        assert 'R 10 0 1/2' in text

    def test_read_from_file(self, tmp_path):
        path = tmp_path / 'sample.txt'
        path.write_text(SAMPLE, encoding='utf-8')
        assert read_instance(str(path)).n == 2

    @pytest.mark.parametrize("text,line_number", [
        ("R 0 0 1\n", 1),
        ("dim 3\n", 1),
        ("dim 2\ndim 2\n", 2),
        ("dim 2\nR 0 1\n", 2),
        ("dim 1\nG 0 1\n", 2),
        ("dim 1\nR 0 0\n", 2),
        ("dim 1\nR 0 -1\n", 2),
        ("dim 1\nR x 1\n", 2),
        ("dim 1\nR 1/0 1\n", 2),
        ("dim 1\n# note\nR 2 1\nR 2 3\n", 4),
        ("dim 1\nR 1e999999999 1\n", 2),
        ("dim 1\nR 1 1e-5000\n", 2),
        ("dim 1\nR Infinity 1\n", 2),
        ("dim 1\nR NaN 1\n", 2),
    ])
    def test_errors_name_the_line(self, text, line_number):
        with pytest.raises(InstanceFormatError) as excinfo:
            parse_instance(text)

        assert excinfo.value.line_number == line_number
        assert excinfo.value.to_dict()['line_number'] == line_number

    def test_missing_header(self):
        with pytest.raises(InstanceFormatError):
            parse_instance("# only a comment\n")

    def test_red_and_blue_may_coincide(self):
        instance = parse_instance("dim 1\nR 2 1\nB 2 1\n")
        assert instance.reds[0].coords == instance.blues[0].coords

    def test_large_but_bounded_exponent(self):
        instance = parse_instance("dim 1\nR 1e40 1\nB 25e-3 1\n")

        assert instance.reds[0].coords == (F(10 ** 40),)
        assert instance.blues[0].coords == (F(1, 40),)


@pytest.mark.unit
class TestGenerate:
    """Test the seeded generator."""

    @pytest.mark.parametrize("profile", PROFILES)
    @pytest.mark.parametrize("dim", [1, 2])
    def test_profiles(self, profile, dim):
        instance = generate(3, profile, n=5, m=4, dim=dim)

        assert instance.n == 5
        assert instance.m == 4
        assert instance.dimension == dim
        assert instance.id == f"{profile}-s3-n5-m4-d{dim}"
        assert all(1 <= p.penalty <= 5 for p in instance.points)

    def test_same_seed_same_instance(self):
        assert generate(9, 'clustered') == generate(9, 'clustered')

    def test_different_seeds_differ(self):
        assert generate(1) != generate(2)

    def test_cocircular_reds_share_a_circle(self):
        instance = generate(4, 'cocircular', n=6, m=2)
        xs = [q.x for q in instance.reds]
        ys = [q.y for q in instance.reds]
        # the shift is bounded by 3, the circle has radius sqrt(325)
        center = next((cx, cy) for cx in range(-3, 4) for cy in range(-3, 4)
                      if len({(x - cx) ** 2 + (y - cy) ** 2 for x, y in zip(xs, ys)}) == 1)
        assert center is not None

    def test_collinear_points_share_a_line(self):
        instance = generate(2, 'collinear', n=4, m=3)
        (x0, y0), (x1, y1) = instance.points[0].coords, instance.points[1].coords
        for p in instance.points[2:]:
            assert (x1 - x0) * (p.y - y0) == (y1 - y0) * (p.x - x0)

    def test_unknown_profile(self):
        with pytest.raises(ValueError):
            generate(1, 'spiral')

    def test_too_many_points(self):
        with pytest.raises(ValueError):
            generate(1, 'uniform_grid', n=5, m=5, dim=1, grid=2)


@pytest.mark.unit
class TestSvg:
    """Test SVG rendering of instances and solutions."""

    def test_instance_only(self, two_corners):
        svg = render_svg(two_corners)

        assert svg.startswith('<svg')
        assert svg.count('class="point red"') == 2
        assert svg.count('class="point blue"') == 1
        assert 'class="outline"' not in svg

    def test_rect_solution_draws_eight_sides(self, two_corners):
        svg = render_svg(two_corners, solve(two_corners, 'rect-nnc', Mode.PENALIZED))
        assert svg.count('class="outline"') == 8

    def test_circ_solution_draws_two_circles(self, collinear_heavy_blue):
        svg = render_svg(collinear_heavy_blue, solve(collinear_heavy_blue, 'circ', Mode.PENALIZED))

        assert 'data-boundary="inner"' in svg
        assert 'data-boundary="outer"' in svg

    def test_interval_pair_draws_endpoint_ticks(self, split_line):
        svg = render_svg(split_line, solve(split_line, '1d-nu', Mode.CONSTRAINT))

        assert svg.count('class="outline"') == 4
        assert svg.count('class="band"') == 2

    def test_open_boundaries_are_dashed(self, square_with_edge_blue):
        solution = solve(square_with_edge_blue, 'rect-nnc', Mode.CONSTRAINT)
        svg = render_svg(square_with_edge_blue, solution)
        opened = sum(vars(solution.annulus.side_open).values())
        assert svg.count('stroke-dasharray') == opened

    def test_write_svg(self, tmp_path, two_corners):
        path = write_svg(str(tmp_path / 'out.svg'), two_corners, size=200)
        text = (tmp_path / 'out.svg').read_text(encoding='utf-8')

        assert path.endswith('out.svg')
        assert 'width="200"' in text
