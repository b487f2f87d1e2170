"""
Annulus Cover - Unit Test Package
=================================

Unit, oracle-comparison and integration tests for the annulus cover solvers.

Test Structure:
- tests/: Test modules, one per package module
- utils/: Mock instance generators and witness assertions

Usage:
- Run all tests: python -m pytest
- Run specific test: python -m pytest UnitTest/tests/test_annulus_1d.py
- Skip slow tests: python -m pytest -m "not slow"
"""

__version__ = "1.0.0"
