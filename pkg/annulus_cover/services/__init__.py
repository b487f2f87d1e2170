"""
Annulus Cover Services Package
Solvers, Voronoi machinery and the brute-force oracle, plus the variant table used by the CLI
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

from annulus_cover.errors import AnnulusCoverError
from annulus_cover.models.geom_core import Instance, Mode, Solution
from annulus_cover.services import oracle
from annulus_cover.services.annulus_1d import solve_1d
from annulus_cover.services.annulus_circ import solve_circ
from annulus_cover.services.annulus_rect_2d import solve_rect_2d
from annulus_cover.services.restricted_line import solve_restricted
from annulus_cover.utils.helpers import OperationCounter


@dataclass(frozen=True)
class Variant:
    """One --variant value: its family, shape, and which modes it supports"""

    name: str
    family: str
    shape: Optional[str]
    dimension: int
    modes: tuple = (Mode.PENALIZED, Mode.CONSTRAINT)


VARIANTS: Dict[str, Variant] = {v.name: v for v in (
    Variant('1d-nu', '1d', 'nonuniform', 1),
    Variant('1d-u', '1d', 'uniform', 1),
    Variant('rect-nnc', 'rect', 'nnc', 2),
    Variant('rect-nc', 'rect', 'nc', 2),
    Variant('rect-u', 'rect', 'uniform', 2),
    Variant('restricted-u', 'restricted', 'uniform', 2, (Mode.PENALIZED,)),
    Variant('restricted-nc', 'restricted', 'nc', 2, (Mode.PENALIZED,)),
    Variant('restricted-nnc', 'restricted', 'nnc', 2, (Mode.PENALIZED,)),
    Variant('circ', 'circ', None, 2),
)}


def get_variant(name: str, mode: Mode, line_y=None) -> Variant:
    if name not in VARIANTS:
        raise AnnulusCoverError(f"unknown variant {name!r}; expected one of {', '.join(VARIANTS)}")
    variant = VARIANTS[name]
    if Mode(mode) not in variant.modes:
        raise AnnulusCoverError(f"variant {name} supports only {', '.join(m.value for m in variant.modes)} mode")
    if variant.family == 'restricted' and line_y is None:
        raise AnnulusCoverError(f"variant {name} needs a line_y")
    return variant


def solve(instance: Instance, name: str, mode: Mode = Mode.PENALIZED, line_y=None,
          counter: Optional[OperationCounter] = None) -> Solution:
    """Run the fast solver for a variant name"""
    mode = Mode(mode)
    variant = get_variant(name, mode, line_y)
    dispatch: Dict[str, Callable[[], Solution]] = {
        '1d': lambda: solve_1d(instance, variant.shape, mode, counter),
        'rect': lambda: solve_rect_2d(instance, variant.shape, mode, counter),
        'restricted': lambda: solve_restricted(instance, variant.shape, line_y, counter),
        'circ': lambda: solve_circ(instance, mode, counter),
    }
    return dispatch[variant.family]()


def solve_oracle(instance: Instance, name: str, mode: Mode = Mode.PENALIZED, line_y=None,
                 budget: Optional[oracle.OracleBudget] = None) -> Solution:
    """Run the brute-force oracle for a variant name"""
    mode = Mode(mode)
    variant = get_variant(name, mode, line_y)
    dispatch: Dict[str, Callable[[], Solution]] = {
        '1d': lambda: oracle.oracle_1d(instance, variant.shape, mode, budget),
        'rect': lambda: oracle.oracle_rect_2d(instance, variant.shape, mode, budget),
        'restricted': lambda: oracle.oracle_restricted(instance, variant.shape, line_y, budget),
        'circ': lambda: oracle.oracle_circ(instance, mode, budget),
    }
    return dispatch[variant.family]()


__all__ = ['VARIANTS', 'Variant', 'get_variant', 'solve', 'solve_oracle']
