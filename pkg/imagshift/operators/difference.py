"""
Second-order difference operators in the imaginary direction.

    Lf(s) = up(s) f(s+i) + diag(s) f(s) + down(s) f(s-i)
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Tuple, Union

import numpy as np

from imagshift.errors import StripError
from imagshift.operators.weights import WeightSpec, coeff_A, coeff_B, weight_analytic, weight_w
from imagshift.quadrature import DecayClass, QuadratureConfig, StripFunction, inner_product

# Contour used for the inner products of operators with a pole near the real axis
SINGULAR_CONTOUR = -0.1
_NEAR_AXIS = 0.05


def _zero(s):
    return np.zeros(np.shape(s), dtype=complex)


@dataclass(frozen=True)
class DifferenceOperator:
    """
    Immutable difference operator with meromorphic coefficient functions.

    ``singular_points`` lists the poles of the coefficients that matter for
    contour placement; ``spec`` is the weight in which the operator is
    symmetric, when there is one.
    """

    up: Callable
    diag: Callable
    down: Callable
    name: str = ''
    singular_points: Tuple[complex, ...] = ()
    spec: Optional[WeightSpec] = field(default=None, compare=False)

    @classmethod
    def zero(cls) -> 'DifferenceOperator':
        return cls(_zero, _zero, _zero, name='zero')

    def apply(self, f: Union[StripFunction, Callable], s):
        """
        Evaluate (Lf)(s).

        Raises:
            StripError: If s +- i leaves the strip of ``f``
            PoleError: At a pole of a coefficient
        """
        s = np.asarray(s, dtype=complex)
        if isinstance(f, StripFunction):
            reach = np.max(np.abs(s.imag)) + 1.0 if s.size else 1.0
            if reach > f.half_width + 1e-12:
                raise StripError("operator needs f on |Im s| <= |Im s0| + 1",
                                 value=reach, detail=f"{f.name or 'f'} has half width {f.half_width}")
        out = (self.up(s) * f(s + 1j) + self.diag(s) * f(s) + self.down(s) * f(s - 1j))
        out = np.asarray(out, dtype=complex) * np.ones(s.shape)
        return complex(out) if out.ndim == 0 else out

    def __call__(self, f: Union[StripFunction, Callable]) -> StripFunction:
        """Lf as a StripFunction, one unit narrower than f."""
        width = f.half_width - 1.0 if isinstance(f, StripFunction) else np.inf
        decay = f.decay if isinstance(f, StripFunction) else DecayClass()
        name = f"{self.name or 'L'}({getattr(f, 'name', '') or 'f'})"
        return StripFunction(lambda s: self.apply(f, s), half_width=width, decay=decay, name=name)

    def scaled(self, factor: complex) -> 'DifferenceOperator':
        """The operator factor * L."""
        return DifferenceOperator(
            lambda s: factor * self.up(s),
            lambda s: factor * self.diag(s),
            lambda s: factor * self.down(s),
            name=self.name, singular_points=self.singular_points, spec=self.spec)

    def __neg__(self) -> 'DifferenceOperator':
        return self.scaled(-1.0)

    def plus_multiplication(self, m: Callable) -> 'DifferenceOperator':
        """The operator L + m(s), m acting by multiplication."""
        return DifferenceOperator(
            self.up, lambda s: self.diag(s) + m(s), self.down,
            name=self.name, singular_points=self.singular_points, spec=self.spec)

    def coefficient_law(self) -> Callable:
        """
        Coefficient L(s) = up(s) down(s+i) of the operator carried to L^2(ds).

        For an operator symmetric in L^2(w) this satisfies
        L(s) = conj(L(conj s - i)).
        """
        return lambda s: self.up(s) * self.down(np.asarray(s) + 1j)

    @property
    def needs_contour_shift(self) -> bool:
        return any(abs(complex(p).imag) < _NEAR_AXIS for p in self.singular_points)


def apply(op: DifferenceOperator, f: Union[StripFunction, Callable], s):
    """Evaluate op applied to f at s; see :meth:`DifferenceOperator.apply`."""
    return op.apply(f, s)


def make_operator(spec: WeightSpec, name: str = '') -> DifferenceOperator:
    """
    Difference operator A f(s+i) - (A+B) f(s) + B f(s-i) of a weight.

    A and B are the closed product forms of :func:`coeff_A` and
    :func:`coeff_B`; the poles of both are recorded as singular points.
    """
    points = []
    for b in spec.b:
        points += [-1j * np.conj(b), 1j * b]
    for beta in spec.b_double:
        points += [-0.5j * np.conj(beta), -0.5j * (np.conj(beta) + 1.0),
                   0.5j * beta, 0.5j * (beta + 1.0)]

    def up(s):
        return coeff_A(spec, s)

    def down(s):
        return coeff_B(spec, s)

    def diag(s):
        return -(coeff_A(spec, s) + coeff_B(spec, s))

    return DifferenceOperator(up, diag, down, name=name,
                              singular_points=tuple(complex(p) for p in points), spec=spec)


class SymmetryDefect(NamedTuple):
    """|<Lf, g> - <f, Lg>| with the combined error estimate of both products."""

    defect: float
    error: float
    lhs: complex
    rhs: complex

    def within(self, factor: float = 10.0) -> bool:
        return self.defect <= factor * self.error


# Roundoff of the coefficient arithmetic, relative to the products
COEFFICIENT_ROUNDOFF = 1e-13


def symmetry_defect(op: DifferenceOperator, f: Union[StripFunction, Callable],
                    g: Union[StripFunction, Callable], w: Optional[Callable] = None,
                    cfg: Optional[QuadratureConfig] = None) -> SymmetryDefect:
    """
    Measure the symmetry defect of op in L^2(w).

    Operators with a coefficient pole near the real axis are integrated
    along Im s = -0.1, using the holomorphic continuation of the weight.

    Args:
        op: Difference operator
        f: First test function
        g: Second test function
        w: Weight; defaults to the weight of ``op.spec`` (or 1)
        cfg: Quadrature configuration

    Returns:
        SymmetryDefect with the defect and the error estimate
    """
    offset = SINGULAR_CONTOUR if op.needs_contour_shift else 0.0
    if w is None and op.spec is not None:
        spec = op.spec
        w = (lambda s: weight_analytic(spec, s)) if offset else (lambda s: weight_w(spec, s))

    lf = lambda s: op.apply(f, s)  # noqa: E731
    lg = lambda s: op.apply(g, s)  # noqa: E731
    left = inner_product(lf, g, w, cfg, imag_offset=offset)
    right = inner_product(f, lg, w, cfg, imag_offset=offset)
    roundoff = COEFFICIENT_ROUNDOFF * (abs(left.value) + abs(right.value))
    return SymmetryDefect(
        defect=float(abs(left.value - right.value)),
        error=float(left.error + right.error + roundoff),
        lhs=complex(left.value),
        rhs=complex(right.value),
    )
