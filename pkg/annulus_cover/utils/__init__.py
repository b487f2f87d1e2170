"""
Annulus Cover Utils Package
Rational helpers, instance I/O and SVG rendering
"""
