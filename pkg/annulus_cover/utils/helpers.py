"""
Helper Utility Functions
Exact rational parsing/formatting and the operation counter shared by the solvers
"""

import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Dict, Union

Rational = Fraction
Number = Union[int, Fraction, str]

MAX_EXPONENT = 1000


def to_fraction(value: Number) -> Fraction:
    """Convert an int, Fraction or text ('p/q', '-3', '0.25', '1e-2') to an exact Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass text or a Fraction")
    text = str(value).strip()
    if '/' in text:
        num, den = text.split('/', 1)
        return Fraction(int(num.strip()), int(den.strip()))
    try:
        decimal = Decimal(text)
    except InvalidOperation as e:
        raise ValueError(f"not a rational literal: {text!r}") from e
    if not decimal.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    if abs(decimal.as_tuple().exponent) > MAX_EXPONENT:
        raise ValueError(f"exponent out of range (at most {MAX_EXPONENT} in magnitude): {text!r}")
    return Fraction(decimal)


def format_fraction(value: Fraction) -> str:
    """Serialize as 'p/q' (or 'p' for integers)"""
    return str(Fraction(value))


def sqrt_bounds(value: Fraction, scale: int = 1 << 20) -> tuple:
    """Rational (lower, upper) bounds on sqrt(value); exact when value is a rational square"""
    if value < 0:
        raise ValueError("negative radicand")
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        exact = Fraction(num_root, den_root)
        return exact, exact
    scaled = math.isqrt(math.floor(value * scale * scale))
    return Fraction(scaled, scale), Fraction(scaled + 1, scale)


@dataclass
class OperationCounter:
    """Counts elementary solver steps; used by the complexity smoke tests"""

    count: int = 0
    by_phase: Dict[str, int] = field(default_factory=dict)

    def tick(self, amount: int = 1, phase: str = 'main') -> None:
        self.count += amount
        self.by_phase[phase] = self.by_phase.get(phase, 0) + amount

    def to_dict(self) -> Dict[str, int]:
        return {'total': self.count, **self.by_phase}


def tick(counter, amount: int = 1, phase: str = 'main') -> None:
    if counter is not None:
        counter.tick(amount, phase)
