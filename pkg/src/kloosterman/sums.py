"""Evaluators for every exponential sum in the package.

Each evaluator enumerates its summands into an exponent histogram and returns
a SumValue with the exact cyclotomic form (while the field degree stays under
the exactness cap) plus a float approximation taken straight from the
histogram. kloosterman_crt is the float-only fast path through the prime-power
factorisation of the modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import cyclotomic as cyclo
from .characters import DirichletCharacter, evaluate
from .cyclotomic import CyclotomicInteger, ExponentHistogram
from .modarith import (
    OutOfRange,
    divisors,
    euler_phi,
    factorize,
    gcd,
    mod_inverse,
    moebius,
)

#: Skip the exact backend once the cyclotomic field degree passes this.
DEFAULT_EXACT_CAP = 5000

_UNIT_CACHE_MAX = 4096


class ModulusIncompatible(ValueError):
    """A character mod N was used in a sum whose modulus N does not divide."""


@dataclass(frozen=True)
class SumValue:
    """One evaluated sum: exact cyclotomic value (or None when the exactness
    cap was exceeded), float approximation, and the field modulus carrying
    the exact value."""

    exact: Optional[CyclotomicInteger]
    approx: complex
    field_modulus: int


def _batch_inverse(values: list[int], c: int) -> list[int]:
    """Inverses mod c of a list of units, with one modular inversion total."""
    prefix = [1] * (len(values) + 1)
    acc = 1
    for i, v in enumerate(values):
        acc = acc * v % c
        prefix[i + 1] = acc
    inv = pow(acc, -1, c)
    out = [0] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * inv % c
        inv = inv * values[i] % c
    return out


def _build_unit_tables(c: int):
    if c == 1:
        return np.array([0], dtype=np.int64), np.array([0], dtype=np.int64)
    res = np.arange(c, dtype=np.int64)
    units = res[np.gcd(res, c) == 1]
    inv = _batch_inverse(units.tolist(), c)
    return units, np.array(inv, dtype=np.int64)


@lru_cache(maxsize=None)
def _unit_tables_cached(c: int):
    return _build_unit_tables(c)


def _unit_tables(c: int):
    """(units, inverses) arrays for the reduced residues mod c."""
    if c <= _UNIT_CACHE_MAX:
        return _unit_tables_cached(c)
    return _build_unit_tables(c)


def _sum_value(h: ExponentHistogram, exact_cap: int) -> SumValue:
    exact = cyclo.reduce(h) if euler_phi(h.modulus) <= exact_cap else None
    return SumValue(exact, cyclo.to_complex(h), h.modulus)


def kloosterman_histogram(m: int, n: int, c: int) -> ExponentHistogram:
    """counts[j] = #{units a mod c : m*a + n*inverse(a) = j (mod c)}."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    m %= c
    n %= c
    units, inv = _unit_tables(c)
    if c < (1 << 31):
        counts = np.bincount((m * units + n * inv) % c, minlength=c)
    else:
        counts = [0] * c
        for a, ai in zip(units.tolist(), inv.tolist()):
            counts[(m * a + n * ai) % c] += 1
    return ExponentHistogram(c, counts)


@lru_cache(maxsize=30_000)
def _kloosterman_cached(m: int, n: int, c: int, exact_cap: int) -> SumValue:
    return _sum_value(kloosterman_histogram(m, n, c), exact_cap)


def kloosterman(m: int, n: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP) -> SumValue:
    """S(m, n; c): sum of e((m*a + n*inverse(a)) / c) over units a mod c."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    return _kloosterman_cached(m % c, n % c, c, exact_cap)


def ramanujan(m: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP):
    """S(m, 0; c) by direct enumeration, paired with the independent
    divisor-Moebius closed form sum_{d | (m, c)} d * mu(c/d).

    Both routes are returned so callers can check them against each other;
    the value is always a rational integer.
    """
    sv = kloosterman(m, 0, c, exact_cap)
    g = gcd(m, c)
    closed = sum(d * moebius(c // d) for d in divisors(factorize(g)))
    return sv, closed


def _xi_histogram(m: int, n: int, k: int, c: int) -> ExponentHistogram:
    """Enumerate pairs (x, y) mod c with x*y = k by solving, for each x, the
    linear congruence x*y = k (mod c): solvable iff gcd(x, c) | k, and then
    it has exactly gcd(x, c) solutions."""
    m %= c
    n %= c
    k %= c
    counts = [0] * c
    for x in range(c):
        g = math.gcd(x, c)
        if k % g:
            continue
        cg = c // g
        y0 = (k // g) * mod_inverse((x // g) % cg, cg) % cg
        # the g solutions are y0 + t*(c/g), so the exponent steps by n*(c/g)
        e = (m * x + n * y0) % c
        step = n * cg % c
        for _ in range(g):
            counts[e] += 1
            e += step
            if e >= c:
                e -= c
    return ExponentHistogram(c, counts)


@lru_cache(maxsize=150_000)
def _xi_cached(m: int, n: int, k: int, c: int, exact_cap: int) -> SumValue:
    return _sum_value(_xi_histogram(m, n, k, c), exact_cap)


def xi_sum(m: int, n: int, k: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP) -> SumValue:
    """Xi_k(m, n; c): sum of e((m*x + n*y) / c) over pairs with x*y = k (mod c)."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    return _xi_cached(m % c, n % c, k % c, c, exact_cap)


@lru_cache(maxsize=256)
def _twist_offsets(chi: DirichletCharacter, c: int) -> np.ndarray:
    """Per-unit exponent offsets (in Z[zeta_L], L = lcm(c, order chi))
    encoding the character value at each unit of Z/cZ."""
    L = math.lcm(c, chi.order)
    units, _ = _unit_tables(c)
    offsets = np.empty(len(units), dtype=np.int64)
    for i, a in enumerate(units.tolist()):
        num, den = evaluate(chi, a)
        offsets[i] = num * (L // den)
    return offsets


@lru_cache(maxsize=50_000)
def _twisted_cached(chi: DirichletCharacter, m: int, n: int, c: int, exact_cap: int) -> SumValue:
    L = math.lcm(c, chi.order)
    units, inv = _unit_tables(c)
    offsets = _twist_offsets(chi, c)
    exponents = (offsets + ((m * units + n * inv) % c) * (L // c)) % L
    counts = np.bincount(exponents, minlength=L)
    h = ExponentHistogram(L, counts)
    exact = cyclo.reduce(h) if euler_phi(L) <= exact_cap else None
    return SumValue(exact, cyclo.to_complex(h), L)


def twisted_kloosterman(
    chi: DirichletCharacter, m: int, n: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP
) -> SumValue:
    """S_chi(m, n; c): the Kloosterman sum with each term weighted by
    chi(x mod N). The character modulus N must divide c; the exact value is
    carried in Z[zeta_L] with L = lcm(c, order of chi)."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    if c % chi.modulus:
        raise ModulusIncompatible(
            f"character modulus {chi.modulus} does not divide {c}"
        )
    return _twisted_cached(chi, m % c, n % c, c, exact_cap)


def kloosterman_crt(m: int, n: int, c: int) -> SumValue:
    """Float-only fast path: S(m, n; c) as the product over prime powers q || c
    of S(m*rbar, n*rbar; q), where rbar inverts c/q mod q."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    m %= c
    n %= c
    total = 1 + 0j
    for p, a in factorize(c).factors:
        q = p**a
        rbar = mod_inverse((c // q) % q, q)
        total *= cyclo.to_complex(kloosterman_histogram(m * rbar % q, n * rbar % q, q))
    return SumValue(None, total, c)


def _divisor_sum(m: int, n: int, k: int, g: int, c: int, exact_cap: int) -> SumValue:
    """sum over d | g of d * S((m/d)*(n/d), k; c/d), exact terms lifted to
    modulus c before accumulating."""
    want_exact = euler_phi(c) <= exact_cap
    acc_exact = cyclo.zero(c) if want_exact else None
    acc = 0j
    for d in divisors(factorize(g)):
        term = kloosterman((m // d) * (n // d), k, c // d, exact_cap if want_exact else 0)
        acc += d * term.approx
        if want_exact:
            acc_exact = cyclo.add(acc_exact, cyclo.scale(d, cyclo.lift(term.exact, c)))
    return SumValue(acc_exact, acc, c)


def selberg_rhs(m: int, n: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP) -> SumValue:
    """The divisor side of the Selberg identity:
    sum over d | (m, n, c) of d * S((m/d)*(n/d), 1; c/d), compared at modulus c.

    gcd(0, 0, c) = c, so for m = n = 0 the sum runs over every divisor of c.
    """
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    m %= c
    n %= c
    return _divisor_sum(m, n, 1, gcd(m, n, c), c, exact_cap)


def xi_rhs_mn(m: int, n: int, k: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP) -> SumValue:
    """sum over d | (m, n, c) of d * S((m/d)*(n/d), k; c/d) at modulus c."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    m %= c
    n %= c
    k %= c
    return _divisor_sum(m, n, k, gcd(m, n, c), c, exact_cap)


def xi_rhs_mk(m: int, n: int, k: int, c: int, exact_cap: int = DEFAULT_EXACT_CAP) -> SumValue:
    """sum over d | (m, k, c) of d * S((m/d)*(k/d), n; c/d) at modulus c."""
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    m %= c
    n %= c
    k %= c
    return _divisor_sum(m, k, n, gcd(m, k, c), c, exact_cap)
