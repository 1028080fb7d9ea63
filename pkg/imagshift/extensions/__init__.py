"""The Delta family, its double-Mellin images and their eigen-relations."""

from imagshift.extensions.delta import (
    DeltaFunction,
    DeltaGram,
    ExtensionParams,
    UnitarityCheck,
    d_eigen_residual,
    d_operator_apply,
    delta_derivative,
    delta_eval,
    delta_gram,
    s_map,
    s_map_defect,
    s_map_unitarity,
    theta_derivative,
    theta_substitution,
)
from imagshift.extensions.psi import (
    PsiGram,
    ResidueRatio,
    eigen_defect_of,
    psi_eval,
    psi_gram,
    psi_image,
    psi_transform_defect,
    residue_ratio,
    sec6_eigen_defect,
)

__all__ = [
    'ExtensionParams',
    'DeltaFunction',
    'DeltaGram',
    'UnitarityCheck',
    'PsiGram',
    'ResidueRatio',
    'delta_eval',
    'delta_derivative',
    'delta_gram',
    'theta_substitution',
    'theta_derivative',
    'd_operator_apply',
    'd_eigen_residual',
    's_map',
    's_map_defect',
    's_map_unitarity',
    'psi_eval',
    'psi_image',
    'psi_gram',
    'psi_transform_defect',
    'sec6_eigen_defect',
    'eigen_defect_of',
    'residue_ratio',
]
