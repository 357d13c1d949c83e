"""polycomb: exact-arithmetic experiments on irreducibility of integral
combinations ell*P + Q of coprime integer polynomials, small-shift
irreducibility for cubics, and brute-force Diophantine approximation
exponent estimators with certified numerics."""

from .polynomial import (
    IntPolynomial,
    MobiusMap,
    evaluate_rational,
    from_json_coeffs,
    is_coprime,
    mobius_conjugate,
    poly_gcd,
    pseudo_divmod,
    to_json_coeffs,
    try_exact_div,
)
from .factorization import (
    Factorization,
    factor,
    is_irreducible,
    linear_factors,
    small_value_factor,
)
from .arith import (
    BoundInputs,
    gamma_bounds,
    gyory_log_bound,
    is_prime,
    omega,
    omega_asymptotic_check,
    primes_up_to,
    primorial,
    tau,
)
from .analytic import (
    CoprimeCensus,
    GapResult,
    IndeterminateError,
    ProximityThresholds,
    RationalWitness,
    RootDisk,
    RootSet,
    Verdict,
    WbsReport,
    evaluate_at_witness,
    liouville_floor,
    midpoint_witness,
    min_root_gap,
    roots,
    small_coprime_census,
    verify_pop,
    wbs_root_report,
)
from .exponents import (
    ExponentEstimate,
    asymptotic_exact_bound,
    comparison_table,
    continued_fraction_witness,
    equilibrium_value,
    estimate_lambda,
    estimate_w,
    german_transfer,
    liouville_witness,
    reciprocal_lower_bound,
    transfer_lower_bound,
    uniform_quadratic_bound,
    wirsing_exact_bound,
)
from .families import (
    CensusReport,
    ClosePair,
    FamilySpec,
    ShiftResult,
    build_member,
    census,
    construct_close_root_pair,
    counterexample_family,
    linear_factor_divisibility_filter,
    pairwise_coprime_check,
    random_strict_instance,
    szegedy_shift,
)

__version__ = "0.1.0"
