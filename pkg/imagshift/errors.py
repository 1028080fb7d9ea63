"""Exceptions raised by the numerical routines."""

from typing import Any, Optional


class NumericalError(Exception):
    """Base class for every failure signalled instead of returning NaN."""

    kind = "Numerical error"

    def __init__(self, message: str, value: Any = None, detail: Optional[str] = None):
        super().__init__(message)
        self.value = value
        self.detail = detail

    def __str__(self):
        text = f"{self.kind}: {super().__str__()}"
        if self.detail:
            text += f" ({self.detail})"
        return text


class PoleError(NumericalError):
    """Raised when an argument hits (or is within the pole distance of) a pole."""

    kind = "Pole"


class DomainError(NumericalError):
    """Raised when an argument lies outside the domain of definition."""

    kind = "Domain error"


class ParameterError(NumericalError):
    """Raised for parameters outside the admissible range."""

    kind = "Parameter error"


class DivergenceError(NumericalError):
    """Raised when a series or integrator cannot reach its tolerance."""

    kind = "Divergence"


class PathError(NumericalError):
    """Raised when a continuation path violates its clearance."""

    kind = "Path error"


class ToleranceError(NumericalError):
    """Raised when quadrature refinement is exhausted."""

    kind = "Tolerance not met"

    def __init__(self, message: str, value: Any = None, detail: Optional[str] = None,
                 estimate: Optional[float] = None):
        super().__init__(message, value=value, detail=detail)
        self.estimate = estimate


class StripError(NumericalError):
    """Raised when a shift leaves the declared strip of analyticity."""

    kind = "Strip error"


class WindowError(NumericalError):
    """Raised outside the analyticity window of a Mellin transform."""

    kind = "Window error"


class StepError(NumericalError):
    """Raised when an extrapolated finite difference does not stabilise."""

    kind = "Step error"
