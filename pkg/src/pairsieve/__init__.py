"""Verified counting of primes, composites and interval Goldbach prime
pairs through residue sieves, with independent brute-force oracles."""

from .oracle import (
    PrimeTable,
    build_prime_table,
    goldbach_pairs_oracle,
    is_prime_trial,
    pi_oracle,
)
from .theta import (
    DEFAULT_EPSILON,
    EXACT,
    GuardedDomain,
    GuardError,
    ThetaMode,
    double_theta,
    float_approx,
    theta,
    theta_sin,
    theta_sin_shift,
    theta_sum_identity,
)
from .legendre import (
    COMPOSITE_METHODS,
    PRIME_METHODS,
    SieveBasis,
    composite_count,
    count_multiples,
    make_basis,
    prime_count,
    subset_products,
    theta_sum_multiples,
    varpi_p,
    varpi_pq,
)
from .xi import (
    COMPOSITE,
    DEFAULT_BLOCK,
    ONE,
    PRIME,
    BoundReport,
    PairClass,
    PairCounts,
    ResidueBasis,
    ResidueEntry,
    ScanSummary,
    bound_value,
    check_bound,
    classify_pair,
    default_interval,
    double_sieve,
    hat_composite_pairs,
    iter_pair_counts,
    make_residue_basis,
    pair_counts,
    prime_pair_list,
    scan_bounds,
    tilde_composite_pairs,
    tilde_composite_pairs_ie,
    xi_identity,
)

__version__ = "0.1.0"
