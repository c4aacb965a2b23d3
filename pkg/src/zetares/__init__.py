"""Residues of Dedekind zeta functions of S_n-fields, n = 3, 4, 5, through the
Euler product of the standard Artin L-function at s = 1.
"""

from .arith import (
    CycleType,
    FactorizationModP,
    IntPolynomial,
    factor_degrees_mod_p,
    factor_mod_p,
    partitions,
    poly_discriminant,
    primes_up_to,
    real_root_count,
    signature,
)
from .artin import (
    StandardRepGroup,
    TruncatedEstimate,
    a_rho,
    bounded_class,
    factor_bounds,
    grh_window,
    l_rho_local_factor,
    log_sum_L1,
    mertens_product,
    orthogonality_check,
    predicted_target,
    truncated_product_L1,
)
from .catalog import (
    LocalCondition,
    NumberFieldRecord,
    enumerate_cubics,
    filter_by_conditions,
    frobenius_class,
    load_catalog,
    make_record,
    write_catalog,
)
from .constants import constants, euler_gamma, zeta_value
from .model import ChebotarevDistribution, model_L1, model_moment, sample_frobenius_sequence
from .quadratic import class_number_imaginary, compare_truncation, is_fundamental, kronecker_chi
from .stats import (
    chebotarev_densities,
    composition_inequality_check,
    empirical_moment,
    exceptional_budget,
    lemma44_check,
    moment_bound_rhs,
    scan_residues,
    small_prime_sum,
)

__version__ = "0.1.0"

__all__ = [
    "ChebotarevDistribution",
    "CycleType",
    "FactorizationModP",
    "IntPolynomial",
    "LocalCondition",
    "NumberFieldRecord",
    "StandardRepGroup",
    "TruncatedEstimate",
    "a_rho",
    "bounded_class",
    "chebotarev_densities",
    "class_number_imaginary",
    "compare_truncation",
    "composition_inequality_check",
    "constants",
    "empirical_moment",
    "enumerate_cubics",
    "euler_gamma",
    "exceptional_budget",
    "factor_bounds",
    "factor_degrees_mod_p",
    "factor_mod_p",
    "filter_by_conditions",
    "frobenius_class",
    "grh_window",
    "is_fundamental",
    "kronecker_chi",
    "l_rho_local_factor",
    "lemma44_check",
    "load_catalog",
    "log_sum_L1",
    "make_record",
    "mertens_product",
    "model_L1",
    "model_moment",
    "moment_bound_rhs",
    "orthogonality_check",
    "partitions",
    "poly_discriminant",
    "predicted_target",
    "primes_up_to",
    "real_root_count",
    "sample_frobenius_sequence",
    "scan_residues",
    "signature",
    "small_prime_sum",
    "truncated_product_L1",
    "write_catalog",
    "zeta_value",
]
