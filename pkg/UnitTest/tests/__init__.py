"""
Tests Package
=============

Test Organization:
- test_geom_core.py: coverage semantics and the penalty functional
- test_annulus_1d.py, test_annulus_rect_2d.py, test_restricted_line.py, test_annulus_circ.py: solvers
- test_voronoi.py: nearest/farthest diagrams and arrangement sampling
- test_oracle.py, test_properties.py: brute-force agreement
- test_instance_io.py, test_cli.py: text format, generator and command line
- test_complexity.py: operation-count growth (slow)
"""
