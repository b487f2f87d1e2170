"""
Pytest Configuration and Global Fixtures
========================================

Shared fixtures: settings, an instance factory and every worked instance used across the suites.
"""

import os
import sys

import pytest

# Add the project root to Python path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from annulus_cover.config import get_config
from annulus_cover.models.geom_core import Instance


@pytest.fixture(scope='session')
def settings():
    """Settings for the testing environment."""
    return get_config('testing')


@pytest.fixture
def make_instance():
    """Factory: make_instance(dim, reds=[(coords, penalty)], blues=[...])."""
    def factory(dimension, reds=(), blues=(), id='test'):
        return Instance.build(dimension, reds, blues, id=id)
    return factory


# ----- 1D fixtures -----

@pytest.fixture
def split_line():
    """Reds {0,1,5,6}, blues {2,3,4}, unit penalties."""
    return Instance.build(1, [(x, 1) for x in (0, 1, 5, 6)], [(x, 1) for x in (2, 3, 4)], id='split_line')


@pytest.fixture
def far_reds_line():
    """Reds {0,10} around blues 1..9."""
    return Instance.build(1, [(0, 1), (10, 1)], [(x, 1) for x in range(1, 10)], id='far_reds_line')


@pytest.fixture
def alternating_line():
    """Reds {0,2,4} P=1 interleaved with blues {1,3} P=5."""
    return Instance.build(1, [(x, 1) for x in (0, 2, 4)], [(1, 5), (3, 5)], id='alternating_line')


@pytest.fixture
def twin_pairs_line():
    """Reds {0,1,7,8} P=1 around a heavy blue at 4."""
    return Instance.build(1, [(x, 1) for x in (0, 1, 7, 8)], [(4, 10)], id='twin_pairs_line')


@pytest.fixture
def equal_gaps_line():
    """Reds {0,4,10,14} and a blue at 5."""
    return Instance.build(1, [(x, 1) for x in (0, 4, 10, 14)], [(5, 1)], id='equal_gaps_line')


# ----- rectangular fixtures -----

@pytest.fixture
def square_with_center():
    """Reds on the corners and center of [0,10]^2, blue at (1,5)."""
    reds = [((0, 0), 1), ((10, 0), 1), ((0, 10), 1), ((10, 10), 1), ((5, 5), 1)]
    return Instance.build(2, reds, [((1, 5), 1)], id='square_with_center')


@pytest.fixture
def square_with_edge_blue():
    """Same reds, blue on the right side of the square."""
    reds = [((0, 0), 1), ((10, 0), 1), ((0, 10), 1), ((10, 10), 1), ((5, 5), 1)]
    return Instance.build(2, reds, [((10, 5), 1)], id='square_with_edge_blue')


@pytest.fixture
def two_corners():
    """Reds at opposite corners, heavy blue in the middle."""
    return Instance.build(2, [((0, 0), 1), ((10, 10), 1)], [((5, 5), 3)], id='two_corners')


@pytest.fixture
def two_corners_heavy():
    return Instance.build(2, [((0, 0), 1), ((10, 10), 1)], [((5, 5), 100)], id='two_corners_heavy')


@pytest.fixture
def unit_square_center():
    """Reds on the unit square corners, blue at its center."""
    reds = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]
    return Instance.build(2, reds, [(('1/2', '1/2'), 1)], id='unit_square_center')


@pytest.fixture
def vertical_pair():
    """Reds (0,1) and (0,-1) with a blue P=9 at (5,0)."""
    return Instance.build(2, [((0, 1), 1), ((0, -1), 1)], [((5, 0), 9)], id='vertical_pair')


# ----- circular fixtures -----

@pytest.fixture
def unit_circle_reds():
    """Three reds on the unit circle, blue at the center."""
    return Instance.build(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1)], [((0, 0), 1)], id='unit_circle_reds')


@pytest.fixture
def unit_circle_with_origin():
    """Unit-circle reds plus a red at the origin, blue at (1/2, 0)."""
    reds = [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, 0), 1)]
    return Instance.build(2, reds, [(('1/2', 0), 1)], id='unit_circle_with_origin')


@pytest.fixture
def collinear_heavy_blue():
    """Reds (0,0), (4,0) P=1, blue (2,0) P=10."""
    return Instance.build(2, [((0, 0), 1), ((4, 0), 1)], [((2, 0), 10)], id='collinear_heavy_blue')


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests")
    config.addinivalue_line("markers", "integration: Integration tests")
    config.addinivalue_line("markers", "slow: Slow running tests")
    config.addinivalue_line("markers", "oracle: Oracle comparison tests")
    config.addinivalue_line("markers", "geometry: Geometry tests")


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically."""
    for item in items:
        # Add unit marker to all tests by default
        if not any(marker.name in ['integration', 'slow'] for marker in item.iter_markers()):
            item.add_marker(pytest.mark.unit)

        # Add specific markers based on file name
        if "test_oracle" in item.nodeid or "test_properties" in item.nodeid:
            item.add_marker(pytest.mark.oracle)
        if "test_geom_core" in item.nodeid or "test_voronoi" in item.nodeid:
            item.add_marker(pytest.mark.geometry)
