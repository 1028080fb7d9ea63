"""Gamma-quotient weights and difference operators in the imaginary direction."""

from imagshift.operators.catalog import (
    OPERATORS,
    OperatorFit,
    dual_hahn_operator,
    dual_hahn_spec,
    fit_mp_operator,
    hahn_operator,
    hahn_spec,
    kl_operator,
    kl_spec,
    mp_operator,
    mp_spec,
    olevsky_spec,
    sec6_operator,
    vilenkin_operator,
    vilenkin_spec,
    wilson_operator,
    wilson_spec,
    wimp_operator,
    wimp_spec,
)
from imagshift.operators.difference import (
    DifferenceOperator,
    SymmetryDefect,
    apply,
    make_operator,
    symmetry_defect,
)
from imagshift.operators.weights import (
    AsymptoticEnvelope,
    DecayReport,
    WeightSpec,
    asymptotic_envelope,
    check_shift_symmetry_law,
    coeff_A,
    coeff_B,
    is_w_decreasing,
    log_mu,
    mu,
    nu,
    weight_analytic,
    weight_w,
)

__all__ = [
    'WeightSpec',
    'AsymptoticEnvelope',
    'DecayReport',
    'DifferenceOperator',
    'SymmetryDefect',
    'OperatorFit',
    'mu',
    'nu',
    'log_mu',
    'weight_w',
    'weight_analytic',
    'coeff_A',
    'coeff_B',
    'asymptotic_envelope',
    'is_w_decreasing',
    'check_shift_symmetry_law',
    'make_operator',
    'apply',
    'symmetry_defect',
    'kl_spec',
    'kl_operator',
    'wimp_spec',
    'wimp_operator',
    'vilenkin_spec',
    'vilenkin_operator',
    'mp_spec',
    'mp_operator',
    'fit_mp_operator',
    'hahn_spec',
    'hahn_operator',
    'dual_hahn_spec',
    'dual_hahn_operator',
    'wilson_spec',
    'wilson_operator',
    'olevsky_spec',
    'sec6_operator',
    'OPERATORS',
]
