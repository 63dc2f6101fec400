"""
Exception hierarchy for the laboratory.

Every error raised on purpose by a module derives from LabError and carries the
process exit code the CLI maps it to.
"""

from typing import Any, Optional


class LabError(Exception):
    """Base exception for laboratory errors."""

    exit_code: int = 1


class InputError(LabError):
    """Raised when an input violates a documented precondition."""

    exit_code = 1

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class UnsupportedModeError(LabError):
    """Raised when an exact algorithm is requested outside its supported range."""

    exit_code = 1


class BudgetExhaustedError(LabError):
    """Raised when an iteration or search budget runs out before an answer."""

    exit_code = 2

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class UndecidedError(LabError):
    """Raised when an exhaustive search aborts on its node budget."""

    exit_code = 2


class NumericalError(LabError):
    """Raised when a numerical solver fails to reach its residual target."""

    exit_code = 3
