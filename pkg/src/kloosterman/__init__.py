"""Kloosterman-type exponential sums, exactly and numerically.

The package evaluates S(m, n; c), the xy = k lattice sums Xi_k(m, n; c), and
character-twisted Kloosterman sums, carrying exact values in the cyclotomic
integers so that the Selberg identity and its relatives can be verified by
algebraic equality rather than float proximity. The `kloosterman` CLI exposes
evaluation, verification, sweeps, a proof trace, and benchmarks.
"""

from .characters import (
    DirichletCharacter,
    UnitGroupStructure,
    enumerate_characters,
    evaluate,
    unit_group_structure,
)
from .cyclotomic import (
    CyclotomicInteger,
    ExponentHistogram,
    ModulusMismatch,
    NotDivisor,
    add,
    cyclotomic_poly,
    equal_exact,
    from_int,
    lift,
    reduce,
    rotate,
    scale,
    sub,
    to_complex,
)
from .identities import (
    ExactBackendUnavailable,
    IdentityReport,
    SweepSummary,
    TraceCapExceeded,
    TraceResult,
    TwistedExploration,
    WeightTally,
    explore_twisted,
    proof_trace_selberg,
    sweep,
    verify_selberg,
    verify_xi_reduces_to_s,
    verify_xi_selberg,
    verify_xi_symmetry,
)
from .modarith import (
    Factorization,
    ModuliNotCoprime,
    NotInvertible,
    OutOfRange,
    crt_combine,
    divisors,
    euler_phi,
    factorize,
    gcd,
    is_prime,
    mod_inverse,
    moebius,
)
from .sums import (
    DEFAULT_EXACT_CAP,
    ModulusIncompatible,
    SumValue,
    kloosterman,
    kloosterman_crt,
    kloosterman_histogram,
    ramanujan,
    selberg_rhs,
    twisted_kloosterman,
    xi_rhs_mk,
    xi_rhs_mn,
    xi_sum,
)

__version__ = "0.1.0"
