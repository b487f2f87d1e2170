"""
Annulus Cover Errors
Structured exceptions raised by the geometry core, the solvers and the CLI
"""

from enum import Enum
from typing import Any, Dict, Optional


class ErrorCode(Enum):
    DIMENSION_MISMATCH = "dimension_mismatch"
    INSTANCE_FORMAT = "instance_format"
    INFEASIBLE = "infeasible"
    DUPLICATE_SITE = "duplicate_site"
    ORACLE_BUDGET = "oracle_budget"
    INVALID_ANNULUS = "invalid_annulus"


class AnnulusCoverError(Exception):
    """Base class for every error raised by the package"""

    code = ErrorCode.INVALID_ANNULUS

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        payload = {'error': self.code.value, 'message': self.message}
        payload.update(self.details)
        return payload


class DimensionMismatchError(AnnulusCoverError):
    code = ErrorCode.DIMENSION_MISMATCH


class InstanceFormatError(AnnulusCoverError):
    """Malformed instance text; carries the 1-based line number"""

    code = ErrorCode.INSTANCE_FORMAT

    def __init__(self, message: str, line_number: Optional[int] = None):
        details = {'line_number': line_number} if line_number is not None else {}
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message, details)
        self.line_number = line_number


class InfeasibleError(AnnulusCoverError):
    code = ErrorCode.INFEASIBLE


class DuplicateSiteError(AnnulusCoverError):
    code = ErrorCode.DUPLICATE_SITE


class OracleBudgetError(AnnulusCoverError):
    """The brute-force oracle refuses instances larger than its budget"""

    code = ErrorCode.ORACLE_BUDGET

    def __init__(self, reds: int, blues: int, max_reds: int, max_blues: int,
                 candidates: Optional[int] = None, max_candidates: Optional[int] = None):
        details = {'reds': reds, 'blues': blues, 'max_reds': max_reds, 'max_blues': max_blues}
        if candidates is None:
            message = (f"instance with {reds} reds / {blues} blues exceeds oracle budget "
                       f"({max_reds} reds / {max_blues} blues)")
        else:
            message = f"oracle enumeration needs more than {max_candidates} candidates"
            details.update({'candidates': candidates, 'max_candidates': max_candidates})
        super().__init__(message, details)
