"""
Domain models
Exact point sets, annuli and solutions shared by every solver
"""

from annulus_cover.models.geom_core import (
    INFEASIBLE,
    CircAnnulus,
    Color,
    Instance,
    IntervalPair,
    Mode,
    Point,
    Rect,
    RectAnnulus,
    RectShape,
    SideOpen,
    Solution,
    classify_rect,
    coverage,
    covers,
    make_solution,
    penalty_of,
)

__all__ = [
    'INFEASIBLE', 'CircAnnulus', 'Color', 'Instance', 'IntervalPair', 'Mode', 'Point', 'Rect',
    'RectAnnulus', 'RectShape', 'SideOpen', 'Solution', 'classify_rect', 'coverage', 'covers',
    'make_solution', 'penalty_of',
]
