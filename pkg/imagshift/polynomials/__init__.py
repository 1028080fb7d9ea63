"""Meixner-Pollaczek, continuous Hahn, continuous dual Hahn and Wilson polynomials."""

from imagshift.polynomials.families import (
    EIGEN_LAWS,
    FAMILIES,
    RESOLVED_LAW,
    GramResult,
    LawResolution,
    NormResult,
    PolynomialFamily,
    eigen_defect,
    eval_polynomial,
    gram_matrix,
    mp_norm_closed_form,
    norm_squared,
    resolve_eigen_law,
    total_mass,
)

__all__ = [
    'PolynomialFamily',
    'FAMILIES',
    'EIGEN_LAWS',
    'RESOLVED_LAW',
    'GramResult',
    'NormResult',
    'LawResolution',
    'eval_polynomial',
    'norm_squared',
    'mp_norm_closed_form',
    'gram_matrix',
    'eigen_defect',
    'resolve_eigen_law',
    'total_mass',
]
