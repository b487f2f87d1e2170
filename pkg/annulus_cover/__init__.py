"""
Annulus Cover Package
Exact red-blue annulus cover solvers: interval pairs, rectangular and circular annuli
"""

from annulus_cover.models.geom_core import Instance, Mode, Solution, coverage, covers, penalty_of
from annulus_cover.services import VARIANTS, solve, solve_oracle
from annulus_cover.services.annulus_1d import solve_1d
from annulus_cover.services.annulus_circ import solve_grbcac, solve_rbcac
from annulus_cover.services.annulus_rect_2d import solve_rect_2d
from annulus_cover.services.restricted_line import solve_restricted

__version__ = "1.0.0"
__all__ = [
    'Instance', 'Mode', 'Solution', 'VARIANTS', 'coverage', 'covers', 'penalty_of', 'solve', 'solve_1d',
    'solve_grbcac', 'solve_oracle', 'solve_rbcac', 'solve_rect_2d', 'solve_restricted',
]
