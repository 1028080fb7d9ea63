"""imagshift - difference operators in the imaginary direction and their index transforms."""

__version__ = "0.1.0"
__author__ = "imagshift developers"
__email__ = "dev@imagshift.org"

from imagshift.errors import (
    DivergenceError,
    DomainError,
    NumericalError,
    ParameterError,
    PathError,
    PoleError,
    StepError,
    StripError,
    ToleranceError,
    WindowError,
)

__all__ = [
    'NumericalError',
    'PoleError',
    'DomainError',
    'ParameterError',
    'DivergenceError',
    'PathError',
    'ToleranceError',
    'StripError',
    'WindowError',
    'StepError',
]
