"""Verification engine: exact identity checks, a numeric five-stage replay of
the orthogonality proof of the Selberg identity, deterministic parameter
sweeps, and an empirical explorer for candidate twisted identities.

Verdicts come from the exact cyclotomic backend only; float values are carried
along purely for human-readable reporting.
"""

from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import cyclotomic as cyclo
from .characters import DirichletCharacter, enumerate_characters, evaluate
from .cyclotomic import _root_table, equal_exact
from .modarith import OutOfRange, divisors, factorize, gcd, mod_inverse
from .sums import (
    SumValue,
    kloosterman,
    selberg_rhs,
    twisted_kloosterman,
    xi_rhs_mk,
    xi_rhs_mn,
    xi_sum,
)

DEFAULT_TRACE_CAP = 30

IDENTITY_IDS = (
    "selberg",
    "xi_selberg_mn",
    "xi_selberg_mk",
    "xi_symmetry",
    "xi_reduces_to_s",
    "twisted_candidate",
)

TWIST_WEIGHTS = ("one", "chi", "chibar")


class TraceCapExceeded(ValueError):
    """proof_trace_selberg was asked for a modulus above its cubic-cost cap."""


class ExactBackendUnavailable(ValueError):
    """A verifier needed exact values but the field degree exceeds the cap."""


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check; both sides carry their exact
    coefficient vectors so any failure can be re-checked independently."""

    identity_id: str
    params: dict
    lhs: SumValue
    rhs: SumValue
    exact_equal: bool
    abs_diff: float
    status: str  # "pass" | "fail"


@dataclass(frozen=True)
class SweepSummary:
    identity_id: str
    params: dict
    total_cases: int
    failures: tuple[IdentityReport, ...]
    wall_time: float


def _report(identity_id, params, lhs, rhs, ok, diff=None) -> IdentityReport:
    if diff is None:
        diff = abs(lhs.approx - rhs.approx)
    return IdentityReport(
        identity_id, params, lhs, rhs, ok, diff, "pass" if ok else "fail"
    )


def _need_exact(*values: SumValue):
    for v in values:
        if v.exact is None:
            raise ExactBackendUnavailable(
                f"exact backend unavailable at field modulus {v.field_modulus}; "
                "raise the exactness cap or shrink the modulus"
            )


def verify_selberg(m: int, n: int, c: int) -> IdentityReport:
    """S(m, n; c) against its divisor-sum side, decided by exact equality."""
    lhs = kloosterman(m, n, c)
    rhs = selberg_rhs(m, n, c)
    _need_exact(lhs, rhs)
    return _report(
        "selberg", {"m": m, "n": n, "c": c}, lhs, rhs, equal_exact(lhs.exact, rhs.exact)
    )


def verify_xi_symmetry(m: int, n: int, k: int, c: int) -> IdentityReport:
    """Xi_k(m, n; c) under all six permutations of (m, n, k); passes when the
    six exact values coincide."""
    perms = list(permutations((m, n, k)))
    values = [xi_sum(a, b, d, c) for a, b, d in perms]
    _need_exact(*values)
    base = values[0]
    ok = all(equal_exact(base.exact, v.exact) for v in values[1:])
    diffs = [
        abs(u.approx - v.approx) for i, u in enumerate(values) for v in values[i + 1 :]
    ]
    worst = max(range(1, 6), key=lambda i: abs(base.approx - values[i].approx))
    return _report(
        "xi_symmetry", {"m": m, "n": n, "k": k, "c": c}, base, values[worst], ok, max(diffs)
    )


def verify_xi_selberg(m: int, n: int, k: int, c: int) -> tuple[IdentityReport, IdentityReport]:
    """Xi_k(m, n; c) against both divisor-sum sides (the (m, n) and (m, k)
    groupings); returns one report per side."""
    lhs = xi_sum(m, n, k, c)
    rhs1 = xi_rhs_mn(m, n, k, c)
    rhs2 = xi_rhs_mk(m, n, k, c)
    _need_exact(lhs, rhs1, rhs2)
    params = {"m": m, "n": n, "k": k, "c": c}
    return (
        _report("xi_selberg_mn", params, lhs, rhs1, equal_exact(lhs.exact, rhs1.exact)),
        _report("xi_selberg_mk", params, lhs, rhs2, equal_exact(lhs.exact, rhs2.exact)),
    )


def verify_xi_reduces_to_s(m: int, n: int, c: int) -> IdentityReport:
    """Xi_1(m, n; c) = S(m, n; c): the two independent enumerations agree."""
    lhs = xi_sum(m, n, 1, c)
    rhs = kloosterman(m, n, c)
    _need_exact(lhs, rhs)
    return _report(
        "xi_reduces_to_s",
        {"m": m, "n": n, "c": c},
        lhs,
        rhs,
        equal_exact(lhs.exact, rhs.exact),
    )


@dataclass(frozen=True)
class TraceResult:
    """Real parts of the five derivation stages plus the largest pairwise
    complex deviation between them."""

    stages: tuple[float, float, float, float, float]
    max_deviation: float


def proof_trace_selberg(m: int, n: int, c: int, cap: int = DEFAULT_TRACE_CAP) -> TraceResult:
    """Numerically replay the orthogonality derivation of the Selberg identity.

    Stage A is the direct sum; B inserts the full c^3-term orthogonality
    average; C splits the a-variable over divisors; D restricts to
    d | (m, n, c) and collapses the y-sum; E is the final divisor sum. All
    five must agree (up to float round-off) when the identity holds.
    """
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    if c > cap:
        raise TraceCapExceeded(f"trace modulus {c} exceeds cap {cap}")
    m %= c
    n %= c
    roots = _root_table(c)

    stage_a = kloosterman(m, n, c, exact_cap=0).approx

    grid = np.arange(c, dtype=np.int64)
    a = grid[:, None, None]
    x = grid[None, :, None]
    y = grid[None, None, :]
    exponents = (x * (m + a * y) + n * y - a) % c
    stage_b = complex(roots[exponents.ravel()].sum()) / c

    stage_c = 0j
    for d in divisors(factorize(c)):
        cd = c // d
        for u in range(cd):
            if math.gcd(u, cd) != 1:
                continue
            ud = u * d % c
            g = math.gcd(ud, c)
            if m % g:
                continue
            cg = c // g
            y0 = (-m // g) % cg * mod_inverse((ud // g) % cg, cg) % cg
            for t in range(g):
                yy = y0 + t * cg
                stage_c += roots[(n * yy - ud) % c]

    stage_d = 0j
    for d in divisors(factorize(gcd(m, n, c))):
        cd = c // d
        block = 0j
        for u in range(cd):
            if math.gcd(u, cd) != 1:
                continue
            ubar = mod_inverse(u, cd)
            block += roots[(ubar * (m // d) * n + u * d) % c]
        stage_d += d * block

    stage_e = selberg_rhs(m, n, c, exact_cap=0).approx

    values = tuple(
        complex(v) for v in (stage_a, stage_b, stage_c, stage_d, stage_e)
    )
    deviation = max(
        abs(u - v) for i, u in enumerate(values) for v in values[i + 1 :]
    )
    return TraceResult(tuple(v.real for v in values), float(deviation))


def _sweep_block(args) -> tuple[int, list[IdentityReport]]:
    """All cases of one identity at one modulus, in lexicographic order."""
    identity_id, c = args
    failures = []
    count = 0
    if identity_id == "selberg":
        for m in range(c):
            for n in range(c):
                r = verify_selberg(m, n, c)
                count += 1
                if r.status != "pass":
                    failures.append(r)
    elif identity_id == "xi_reduces_to_s":
        for m in range(c):
            for n in range(c):
                r = verify_xi_reduces_to_s(m, n, c)
                count += 1
                if r.status != "pass":
                    failures.append(r)
    elif identity_id == "xi_symmetry":
        for m in range(c):
            for n in range(c):
                for k in range(c):
                    r = verify_xi_symmetry(m, n, k, c)
                    count += 1
                    if r.status != "pass":
                        failures.append(r)
    elif identity_id in ("xi_selberg_mn", "xi_selberg_mk"):
        pick = 0 if identity_id == "xi_selberg_mn" else 1
        for m in range(c):
            for n in range(c):
                for k in range(c):
                    r = verify_xi_selberg(m, n, k, c)[pick]
                    count += 1
                    if r.status != "pass":
                        failures.append(r)
    else:
        raise ValueError(f"unknown sweep identity {identity_id!r}")
    return count, failures


def sweep(identity_id: str, c_max: int, jobs: int = 1) -> SweepSummary:
    """Run one identity over every parameter tuple with 1 <= c <= c_max.

    Iteration order is lexicographic in (c, m, n[, k]); results are merged in
    that order regardless of the worker count, so output is reproducible.
    """
    if identity_id not in IDENTITY_IDS or identity_id == "twisted_candidate":
        raise ValueError(f"unknown sweep identity {identity_id!r}")
    blocks = [(identity_id, c) for c in range(1, c_max + 1)]
    start = time.perf_counter()
    if jobs <= 1:
        results = [_sweep_block(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_block, blocks))
    total = sum(n for n, _ in results)
    failures = tuple(r for _, fs in results for r in fs)
    return SweepSummary(
        identity_id,
        {"c_max": c_max},
        total,
        failures,
        time.perf_counter() - start,
    )


@dataclass
class WeightTally:
    """Outcome counts for one (character, divisor-weight) candidate identity."""

    chi_index: int
    weight: str
    holds: int = 0
    fails: int = 0
    counterexamples: list = field(default_factory=list)


@dataclass
class TwistedExploration:
    """Tallies from the empirical twisted-identity explorer. The explorer
    asserts nothing: it reports, per character and candidate weight, how often
    the divisor-sum shape matched the twisted sum exactly."""

    modulus: int
    c_max: int
    weights: tuple[str, ...]
    tallies: list[WeightTally]
    cases: int
    filtered: int


def _weight_angle(weight: str, chi: DirichletCharacter, d: int):
    """Divisor weight eps(d) as a rational angle, or None when it vanishes."""
    if weight == "one":
        return (0, 1)
    v = evaluate(chi, d)
    if v is None:
        return None
    num, den = v
    if weight == "chibar":
        num = (-num) % den
    return (num, den)


def _twisted_rhs(chi, weight, m, n, c, field_modulus):
    """sum over d | (m, n, c) of eps(d) * d * S_chi((m/d)*(n/d), 1; c/d),
    lifted into Z[zeta_field_modulus]."""
    acc_exact = cyclo.zero(field_modulus)
    acc = 0j
    for d in divisors(factorize(gcd(m, n, c))):
        angle = _weight_angle(weight, chi, d)
        if angle is None:
            continue
        num, den = angle
        term = twisted_kloosterman(chi, (m // d) * (n // d), 1, c // d)
        _need_exact(term)
        lifted = cyclo.lift(term.exact, field_modulus)
        rotated = cyclo.rotate(lifted, num * (field_modulus // den))
        acc_exact = cyclo.add(acc_exact, cyclo.scale(d, rotated))
        acc += d * cmath.exp(2j * cmath.pi * num / den) * term.approx
    return SumValue(acc_exact, acc, field_modulus)


def explore_twisted(
    N: int, c_max: int, weights: tuple[str, ...] = TWIST_WEIGHTS
) -> TwistedExploration:
    """Test candidate twisted Selberg shapes and tally the outcomes.

    Sweeps every (m, n, c) with N | c, gcd(c/N, N) = 1 and gcd(n, N) = 1 up to
    c_max; for each character chi mod N and each divisor weight in `weights`
    it checks, exactly, whether S_chi(m, n; c) equals the weighted divisor
    sum. Counterexamples are recorded verbatim; no conclusion is drawn.
    """
    if N < 1:
        raise OutOfRange(f"character modulus must be >= 1, got {N}")
    for w in weights:
        if w not in TWIST_WEIGHTS:
            raise ValueError(f"unknown weight {w!r}")
    chars = enumerate_characters(N)
    tallies = [
        WeightTally(i, w) for i in range(len(chars)) for w in weights
    ]
    cases = 0
    filtered = 0
    for c in range(1, c_max + 1):
        if c % N or gcd(c // N, N) != 1:
            continue
        for m in range(c):
            for n in range(c):
                if gcd(n, N) != 1:
                    filtered += 1
                    continue
                cases += 1
                slot = 0
                for i, chi in enumerate(chars):
                    lhs = twisted_kloosterman(chi, m, n, c)
                    _need_exact(lhs)
                    for w in weights:
                        rhs = _twisted_rhs(chi, w, m, n, c, lhs.field_modulus)
                        tally = tallies[slot]
                        slot += 1
                        if equal_exact(lhs.exact, rhs.exact):
                            tally.holds += 1
                        else:
                            tally.fails += 1
                            tally.counterexamples.append(
                                _report(
                                    "twisted_candidate",
                                    {
                                        "N": N,
                                        "chi_index": i,
                                        "weight": w,
                                        "m": m,
                                        "n": n,
                                        "c": c,
                                    },
                                    lhs,
                                    rhs,
                                    False,
                                )
                            )
    return TwistedExploration(N, c_max, tuple(weights), tallies, cases, filtered)
