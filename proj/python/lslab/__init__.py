"""Exact Jacobi-Stirling triangles, root certificates and limit-law checks.

Exact values come back as int or fractions.Fraction; high-precision reals come
back as decimal strings carrying only the digits the working precision supports.
"""

from ._lslab import (
    CacheError,
    DegenerateVarianceError,
    DomainError,
    LslabError,
    PrecisionError,
    ResourceLimitError,
    cdf,
    certify_roots,
    expansion_errors,
    js_number,
    l_polynomial,
    local_residual,
    m_polynomial,
    modified_ls,
    mu_sigma,
    omega,
    ratio_check,
    refine_roots,
    triangle,
    unimodality,
    verify,
)

__all__ = [
    "CacheError",
    "DegenerateVarianceError",
    "DomainError",
    "LslabError",
    "PrecisionError",
    "ResourceLimitError",
    "cdf",
    "certify_roots",
    "expansion_errors",
    "js_number",
    "l_polynomial",
    "local_residual",
    "m_polynomial",
    "modified_ls",
    "mu_sigma",
    "omega",
    "ratio_check",
    "refine_roots",
    "triangle",
    "unimodality",
    "verify",
]
