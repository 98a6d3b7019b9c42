"""Quadratic Hecke characters over Z[i] and their L-functions.

Numerical toolkit for the family of quadratic characters attached to odd
squarefree Gaussian integers: exact Gauss-sum arithmetic, L-function
evaluation by smoothed approximate functional equation, mollified moment
computations, and surveys for real zeros of the completed L-functions.
"""

__version__ = "0.1.0"

from .gaussint import (
    GaussInt,
    canonical_decomposition,
    factor,
    gcd,
    is_coprime,
    is_gaussian_prime,
    is_primary,
    primarize,
    residue_system,
    units,
)
from .primary_table import PrimaryTable, table_for
from .characters import (
    chi_value,
    chi_on_table,
    character_gauss_sum,
    dual_weight,
    gauss_sum,
    gauss_sum_direct,
    poisson_pair,
    residue_symbol,
    smooth_bump,
    symbol_array,
)
from .specfun import (
    KernelConfig,
    KernelTable,
    dedekind_zeta,
    dirichlet_beta,
    upper_gamma,
    vertical_line_integral,
    w00_closed_form,
    w_kernel,
    zeta_k2,
)
from .lfunctions import (
    LFunction,
    deformed_moment_sum,
    moment_identity_pair,
    r_delta_on_table,
)
from .mollifier import (
    HeadlineResult,
    MollifierSpec,
    MomentConfig,
    family_sum,
    headline_constant,
    lambda_coeff,
    mollified_ratio,
    mollifier_value,
    predicted_moment_ratio,
    v_formula,
)
from .survey import (
    BoxSpec,
    SurveyConfig,
    SurveyConfigMismatch,
    SurveyRecord,
    enumerate_family,
    run_survey,
    scan_real_zeros,
    selberg_box_count,
    write_csv,
)

__all__ = [
    "__version__",
    "GaussInt",
    "canonical_decomposition",
    "factor",
    "gcd",
    "is_coprime",
    "is_gaussian_prime",
    "is_primary",
    "primarize",
    "residue_system",
    "units",
    "PrimaryTable",
    "table_for",
    "chi_value",
    "chi_on_table",
    "character_gauss_sum",
    "dual_weight",
    "gauss_sum",
    "gauss_sum_direct",
    "poisson_pair",
    "residue_symbol",
    "smooth_bump",
    "symbol_array",
    "KernelConfig",
    "KernelTable",
    "dedekind_zeta",
    "dirichlet_beta",
    "upper_gamma",
    "vertical_line_integral",
    "w00_closed_form",
    "w_kernel",
    "zeta_k2",
    "LFunction",
    "deformed_moment_sum",
    "moment_identity_pair",
    "r_delta_on_table",
    "HeadlineResult",
    "MollifierSpec",
    "MomentConfig",
    "family_sum",
    "headline_constant",
    "lambda_coeff",
    "mollified_ratio",
    "mollifier_value",
    "predicted_moment_ratio",
    "v_formula",
    "BoxSpec",
    "SurveyConfig",
    "SurveyConfigMismatch",
    "SurveyRecord",
    "enumerate_family",
    "run_survey",
    "scan_real_zeros",
    "selberg_box_count",
    "write_csv",
]
