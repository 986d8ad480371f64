"""Ideal counting, smooth densities, sieve weights, and sign statistics for
Hecke-multiplicative coefficient systems over the rationals and real
quadratic fields."""

from .coefficients import (
    CoefficientSystem,
    Mode,
    Provenance,
    from_prime_values,
    load_csv,
    sample_sato_tate,
    write_csv,
)
from .dickman import DickmanTable, rho, rho_table, solve_kappa
from .errors import (
    BracketError,
    ConfigError,
    DegenerateFit,
    DomainError,
    DuplicatePrime,
    HeckesignsError,
    MissingPrime,
    NonFundamentalDiscriminant,
    NotSquareFree,
    ParseError,
    RamanujanViolation,
    WeightMismatch,
)
from .experiments import ExperimentConfig, config_from_json, run_experiment
from .field import (
    QuadraticField,
    analytic_conductor,
    chi,
    is_fundamental_discriminant,
    kronecker_symbol,
    make_field,
    residue_cF,
    zetaF,
)
from .ideals import (
    IdealEntry,
    PrimeIdeal,
    Splitting,
    enumerate_ideals,
    ideal_count,
    moebius,
    prime_ideals_above,
    prime_ideals_up_to,
    prime_reciprocal_sum,
    smooth_count,
    squarefree_count,
    unit_ideal,
)
from .sieve import (
    ConvolutionReport,
    LowerBoundReport,
    convolution_check,
    g_weight,
    h_partial_sum,
    h_sum_prediction,
    h_weight,
    lower_bound_check,
)
from .sums import (
    EulerProductEstimate,
    LValueResult,
    SignReport,
    L_value,
    S_sum,
    S_via_integral,
    T_sum,
    euler_product_prediction,
    first_negative,
    growth_exponent,
    mean_value_empirical,
    sign_counts,
)

__version__ = "0.1.0"
