"""Index transforms, their inverses, norms and the operators they intertwine."""

from typing import Callable, Dict

from imagshift.transforms.base import (
    DEFAULT_SOURCE_POINTS,
    DEFAULT_TARGET_POINTS,
    PlancherelResult,
    TransformPair,
    intertwining_defect,
    memoize_points,
    plancherel,
    round_trip_defect,
)
from imagshift.transforms.batteries import BATTERIES, BatteryFunction, get_battery
from imagshift.transforms.double_mellin import (
    double_mellin_forward,
    double_mellin_image_norm,
    double_mellin_inverse,
    double_mellin_plancherel,
    double_mellin_source_norm,
)
from imagshift.transforms.j_alpha import (
    j_alpha_forward,
    j_alpha_inner,
    j_alpha_inverse,
    j_alpha_measure,
    phi_vector,
    psi_vector,
    reproducing_check,
)
from imagshift.transforms.kontorovich import (
    kl_derivative_defect,
    kl_derivative_probe,
    kl_forward,
    kl_inverse,
    kl_pair,
)
from imagshift.transforms.mellin import mellin_forward, mellin_inverse, mellin_pair, mellin_pair_identity
from imagshift.transforms.vilenkin import (
    ROUTES,
    vilenkin_adjoint_check,
    vilenkin_degeneration,
    vilenkin_forward,
    vilenkin_image_norm,
    vilenkin_inverse,
    vilenkin_kernel,
    vilenkin_pair,
)
from imagshift.transforms.wimp import (
    whittaker_difference_residual,
    wimp_forward,
    wimp_from_kl,
    wimp_inverse,
    wimp_pair,
)

# Pair constructors by name; keyword parameters go to the constructor
TRANSFORMS: Dict[str, Callable[..., TransformPair]] = {
    'mellin': mellin_pair,
    'kl': kl_pair,
    'wimp': wimp_pair,
    'vilenkin': vilenkin_pair,
}

__all__ = [
    'TransformPair',
    'PlancherelResult',
    'BatteryFunction',
    'BATTERIES',
    'TRANSFORMS',
    'ROUTES',
    'DEFAULT_SOURCE_POINTS',
    'DEFAULT_TARGET_POINTS',
    'get_battery',
    'memoize_points',
    'intertwining_defect',
    'plancherel',
    'round_trip_defect',
    'mellin_forward',
    'mellin_inverse',
    'mellin_pair',
    'mellin_pair_identity',
    'kl_forward',
    'kl_inverse',
    'kl_pair',
    'kl_derivative_probe',
    'kl_derivative_defect',
    'wimp_forward',
    'wimp_inverse',
    'wimp_pair',
    'wimp_from_kl',
    'whittaker_difference_residual',
    'vilenkin_forward',
    'vilenkin_inverse',
    'vilenkin_image_norm',
    'vilenkin_kernel',
    'vilenkin_pair',
    'vilenkin_adjoint_check',
    'vilenkin_degeneration',
    'j_alpha_forward',
    'j_alpha_inverse',
    'j_alpha_inner',
    'j_alpha_measure',
    'phi_vector',
    'psi_vector',
    'reproducing_check',
    'double_mellin_forward',
    'double_mellin_inverse',
    'double_mellin_source_norm',
    'double_mellin_image_norm',
    'double_mellin_plancherel',
]
