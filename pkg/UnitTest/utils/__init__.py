"""
Test Utilities Package
======================

Mock instance generators and witness assertions for the test suite.
"""

from .mock_data import MockInstanceGenerator, create_mock_instance
from .assertions import (
    assert_solution_valid,
    assert_interval_pair_valid,
    assert_rect_annulus_valid,
    assert_center_on_line,
    assert_circ_annulus_valid,
)

__all__ = [
    'MockInstanceGenerator',
    'create_mock_instance',
    'assert_solution_valid',
    'assert_interval_pair_valid',
    'assert_rect_annulus_valid',
    'assert_center_on_line',
    'assert_circ_annulus_valid',
]
