"""Complex special functions: gamma, hypergeometric series, Macdonald and Whittaker functions."""

from imagshift.specfun.bessel import macdonald_K, whittaker_W
from imagshift.specfun.gamma import (
    beta,
    gamma,
    log_gamma,
    log_rgamma,
    pochhammer,
    rgamma,
)
from imagshift.specfun.hypergeometric import (
    ContinuationPath,
    hyp2f1,
    hyp2F1_about_one,
    hyp2F1_continued,
    hyp_pFq,
)

__all__ = [
    'gamma',
    'log_gamma',
    'log_rgamma',
    'rgamma',
    'pochhammer',
    'beta',
    'hyp_pFq',
    'hyp2f1',
    'hyp2F1_continued',
    'hyp2F1_about_one',
    'ContinuationPath',
    'macdonald_K',
    'whittaker_W',
]
