"""
Double-Mellin images of the Delta family.

    Psi_k^(n)(s) = B(1/2+is, 1/2+2i tau-is) 2F1[1/2+is, 1/2-sigma+i tau-n; 1+2i tau; 1-e^{-2i phi}]

with the Gauss function continued along z = 1 - e^{-2i theta}, theta in [0, phi]
for k = 1 and along z = 1 - e^{2i theta}, theta in [0, pi - phi] for k = 2. Both
paths end at the same point on different sheets. The image of
Delta_{sigma+n} is e^{-i phi/2} e^{phi s} (Psi_1, e^{-2 pi s} Psi_2).
"""

from typing import Callable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from imagshift.extensions.delta import DeltaFunction, ExtensionParams
from imagshift.operators.catalog import sec6_operator
from imagshift.quadrature import QuadratureConfig, integrate_circle, integrate_line
from imagshift.specfun.gamma import beta
from imagshift.specfun.hypergeometric import ContinuationPath, hyp2F1_continued
from imagshift.transforms.double_mellin import double_mellin_forward

PSI_ORDERS = (-1, 0, 1)
EIGEN_POINTS = (0.3, 1.0)
RESIDUE_RADIUS = 0.25
ARC_POINTS = 64


def _paths(phi: float) -> Tuple[ContinuationPath, ContinuationPath]:
    return (ContinuationPath.arc(phi, sign=-1, n_points=ARC_POINTS),
            ContinuationPath.arc(np.pi - phi, sign=1, n_points=ARC_POINTS))


def _parameters(params: ExtensionParams, n: int, s: np.ndarray):
    a = 0.5 + 1j * s
    b = 0.5 - params.sigma + 1j * params.tau - n
    c = 1.0 + 2j * params.tau
    return a, b, c


def psi_eval(params: ExtensionParams, n: int, s) -> Tuple[np.ndarray, np.ndarray]:
    """
    (Psi_1^(n)(s), Psi_2^(n)(s)) at complex s.

    Raises:
        PoleError: At a pole of the Beta prefactor
        PathError: If a continuation path violates its clearance
    """
    arr = np.asarray(s, dtype=complex)
    flat = np.atleast_1d(arr).ravel()
    a, b, c = _parameters(params, n, flat)
    prefactor = np.atleast_1d(beta(a, 0.5 + 2j * params.tau - 1j * flat))
    first_path, second_path = _paths(params.phi)
    first = prefactor * np.atleast_1d(hyp2F1_continued(a, b, c, first_path))
    second = prefactor * np.atleast_1d(hyp2F1_continued(a, b, c, second_path))
    if arr.ndim == 0:
        return complex(first[0]), complex(second[0])
    return first.reshape(arr.shape), second.reshape(arr.shape)


def psi_image(params: ExtensionParams, n: int, s) -> Tuple[np.ndarray, np.ndarray]:
    """Both components of the double-Mellin image of Delta_{sigma+n}."""
    s = np.asarray(s, dtype=complex)
    first, second = psi_eval(params, n, s)
    factor = np.exp(-0.5j * params.phi + params.phi * s)
    return factor * first, factor * np.exp(-2.0 * np.pi * s) * second


def _component(params: ExtensionParams, n: int, k: int) -> Callable:
    return lambda s: psi_image(params, n, s)[k]


def eigen_defect_of(components: Sequence[Callable], eigenvalue: complex, tau: float, phi: float,
                    points: Sequence[float] = EIGEN_POINTS) -> float:
    """Largest |L f_k(s) - eigenvalue f_k(s)| over the components and points."""
    operator = sec6_operator(tau, phi)
    s = np.asarray(points, dtype=complex)
    worst = 0.0
    for f in components:
        residual = np.atleast_1d(operator.apply(f, s)) - eigenvalue * np.atleast_1d(f(s))
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst


def sec6_eigen_defect(params: ExtensionParams, n: int,
                      points: Sequence[float] = EIGEN_POINTS) -> float:
    """Eigen-defect of the image of Delta_{sigma+n} with eigenvalue 2 sin(phi)(sigma+n)."""
    components = [_component(params, n, 0), _component(params, n, 1)]
    return eigen_defect_of(components, params.eigenvalue(n), params.tau, params.phi, points)


class PsiGram(NamedTuple):
    """Gram matrix in L^2(R, ds) + L^2(R, e^{2 pi s} ds)."""

    orders: tuple
    matrix: np.ndarray
    off_diagonal: float
    diagonal: float


def psi_gram(params: ExtensionParams, orders: Sequence[int] = PSI_ORDERS,
             cfg: Optional[QuadratureConfig] = None) -> PsiGram:
    """
    Gram matrix of the images of Delta_{sigma+n}, n in ``orders``.

    By Plancherel its diagonal is 2pi^2/sin(phi).
    """
    orders = tuple(orders)

    def integrand(s):
        s = np.real(s)
        pairs = [psi_image(params, n, s) for n in orders]
        first = np.stack([np.atleast_1d(p[0]) for p in pairs])
        second = np.stack([np.atleast_1d(p[1]) for p in pairs])
        weight = np.exp(2.0 * np.pi * s)
        return (first[:, None, :] * np.conj(first)[None, :, :]
                + second[:, None, :] * np.conj(second)[None, :, :] * weight)

    matrix = np.asarray(integrate_line(integrand, cfg=cfg).value, dtype=complex)
    diagonal = float(np.max(np.abs(np.diag(matrix))))
    off = np.abs(matrix - np.diag(np.diag(matrix)))
    return PsiGram(orders, matrix, float(np.max(off)) / diagonal, diagonal)


class ResidueRatio(NamedTuple):
    """
    Residues of (Psi_1, Psi_2) at the two Beta poles.

    ``ratios`` are Res Psi_2 / Res Psi_1; the expected values are 1 at
    s = i/2 and -e^{2pi(tau + i sigma)} at s = 2tau - i/2.
    """

    poles: tuple
    residues: tuple
    ratios: tuple
    expected: tuple
    defect: float


def residue_ratio(params: ExtensionParams, n: int = 0, radius: float = RESIDUE_RADIUS,
                  cfg: Optional[QuadratureConfig] = None) -> ResidueRatio:
    """Estimate the residues by contour quadrature on small circles."""
    poles = (0.5j, 2.0 * params.tau - 0.5j)
    expected = (1.0 + 0j, -np.exp(2.0 * np.pi * (params.tau + 1j * params.sigma)))
    residues, ratios = [], []
    for pole in poles:

        def integrand(z):
            first, second = psi_eval(params, n, z)
            return np.stack([first, second]) / (2j * np.pi)

        value = np.asarray(integrate_circle(integrand, pole, radius, cfg).value)
        residues.append((complex(value[0]), complex(value[1])))
        ratios.append(complex(value[1] / value[0]))
    defect = max(abs(r - e) / abs(e) for r, e in zip(ratios, expected))
    return ResidueRatio(poles, tuple(residues), tuple(ratios), expected, float(defect))


def psi_transform_defect(params: ExtensionParams, n: int, points: Sequence[float] = EIGEN_POINTS,
                         cfg: Optional[QuadratureConfig] = None) -> float:
    """Largest difference between psi_image and the numerical double-Mellin image of Delta_{sigma+n}."""
    g1, g2 = double_mellin_forward(DeltaFunction(params, n), cfg=cfg)
    s = np.asarray(points, dtype=float)
    first, second = psi_image(params, n, s)
    return float(max(np.max(np.abs(g1(s) - first)), np.max(np.abs(g2(s) - second))))
