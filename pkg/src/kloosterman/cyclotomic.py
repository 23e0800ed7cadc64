"""Exact arithmetic with sums of c-th roots of unity.

A sum of roots of unity is first collected into an ExponentHistogram (how many
summands land on each exponent), then reduced to a canonical CyclotomicInteger:
the remainder of the histogram polynomial modulo the c-th cyclotomic
polynomial. Two values are mathematically equal exactly when their canonical
coefficient vectors match, which is what makes identity verification an
algebraic check instead of a float comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .modarith import OutOfRange, divisors, euler_phi, factorize


class ModulusMismatch(ValueError):
    """Two values from different cyclotomic fields were combined directly."""


class NotDivisor(ValueError):
    """lift() was asked to embed into a modulus the source does not divide."""


# Guard rails for the int64 fast path inside reduce(); anything bigger is
# handled by the exact big-int fallback.
_INT64_SAFE = 1 << 62
_ROW_LIMIT = 1 << 31
_PHI_HEIGHT_LIMIT = 1 << 20
_TABLE_CACHE_MAX = 4096


@lru_cache(maxsize=None)
def cyclotomic_poly(c: int) -> tuple[int, ...]:
    """Coefficients (constant term first, monic) of the c-th cyclotomic polynomial.

    Computed by exact division of x^c - 1 by the cyclotomic polynomials of the
    proper divisors of c; every divisor is monic, so the division stays in the
    integers.
    """
    if c < 1:
        raise OutOfRange(f"cyclotomic_poly needs c >= 1, got {c}")
    poly = [-1] + [0] * (c - 1) + [1]
    for d in divisors(factorize(c)):
        if d != c:
            poly = _exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


def _exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials when the division is exact (monic den)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q = num[i]
        if q:
            out[i - dd] = q
            for j in range(dd + 1):
                num[i - dd + j] -= q * den[j]
    assert not any(num), "polynomial division was not exact"
    return out


@dataclass
class ExponentHistogram:
    """Counts[j] = multiplicity of zeta_c^j among the summands of a sum.

    Entries may be negative for histograms built by subtraction; histograms
    coming straight from a sum enumeration are non-negative and total the
    number of summands.
    """

    modulus: int
    counts: Union[np.ndarray, list[int]]

    def __post_init__(self):
        if self.modulus < 1:
            raise OutOfRange(f"modulus must be >= 1, got {self.modulus}")
        if len(self.counts) != self.modulus:
            raise ValueError(
                f"need {self.modulus} counts, got {len(self.counts)}"
            )

    def total(self) -> int:
        if isinstance(self.counts, np.ndarray):
            return int(self.counts.sum())
        return sum(self.counts)


@dataclass(frozen=True)
class CyclotomicInteger:
    """Canonical element of Z[zeta_c]: phi(c) power-basis coefficients."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise OutOfRange(f"modulus must be >= 1, got {self.modulus}")
        if len(self.coeffs) != euler_phi(self.modulus):
            raise ValueError(
                f"need phi({self.modulus}) = {euler_phi(self.modulus)} "
                f"coefficients, got {len(self.coeffs)}"
            )


def zero(c: int) -> CyclotomicInteger:
    return CyclotomicInteger(c, (0,) * euler_phi(c))


def from_int(k: int, c: int) -> CyclotomicInteger:
    """The rational integer k viewed inside Z[zeta_c]."""
    return CyclotomicInteger(c, (k,) + (0,) * (euler_phi(c) - 1))


def is_zero(v: CyclotomicInteger) -> bool:
    return not any(v.coeffs)


@lru_cache(maxsize=128)
def _reduction_table(c: int):
    """Rows writing zeta_c^j (phi(c) <= j < c) in the power basis.

    Returns (int64 matrix, max absolute column sum), or (None, 0) when entries
    would not provably fit the fast path; reduce() then falls back to exact
    big-int division. Entries are built by repeated shift-and-reduce, checking
    magnitudes at every step so the int64 arithmetic can never silently wrap.
    """
    phi = cyclotomic_poly(c)
    deg = len(phi) - 1
    nrows = c - deg
    if nrows <= 0:
        return np.zeros((0, deg), dtype=np.int64), 0
    if max(abs(v) for v in phi) >= _PHI_HEIGHT_LIMIT:
        return None, 0
    low = np.array(phi[:deg], dtype=np.int64)
    rows = np.empty((nrows, deg), dtype=np.int64)
    row = -low
    for r in range(nrows):
        if int(np.abs(row).max()) >= _ROW_LIMIT:
            return None, 0
        rows[r] = row
        if r + 1 < nrows:
            nxt = np.empty(deg, dtype=np.int64)
            nxt[0] = 0
            nxt[1:] = row[:-1]
            top = int(row[-1])
            if top:
                nxt -= top * low
            row = nxt
    col_bound = int(np.abs(rows).sum(axis=0).max())
    return rows, col_bound


def reduce(h: ExponentHistogram) -> CyclotomicInteger:
    """Canonical form of the histogram's value: remainder modulo Phi_c."""
    c = h.modulus
    deg = euler_phi(c)
    counts = h.counts
    table, col_bound = _reduction_table(c)
    if table is not None:
        arr = None
        if isinstance(counts, np.ndarray):
            arr = counts.astype(np.int64, copy=False)
        else:
            try:
                arr = np.array(counts, dtype=np.int64)
            except OverflowError:
                arr = None
        if arr is not None:
            cmax = int(np.abs(arr).max()) if arr.size else 0
            if cmax * (col_bound + 1) < _INT64_SAFE:
                res = arr[:deg].astype(np.int64, copy=True)
                if c > deg:
                    res += arr[deg:] @ table
                return CyclotomicInteger(c, tuple(int(v) for v in res))
    return _reduce_exact(c, counts)


def _reduce_exact(c: int, counts) -> CyclotomicInteger:
    """Plain big-int polynomial remainder; exact for arbitrary counts."""
    phi = cyclotomic_poly(c)
    deg = len(phi) - 1
    rem = [int(v) for v in counts]
    for i in range(len(rem) - 1, deg - 1, -1):
        q = rem[i]
        if q:
            for j in range(deg):
                rem[i - deg + j] -= q * phi[j]
            rem[i] = 0
    return CyclotomicInteger(c, tuple(rem[:deg]))


def lift(v: CyclotomicInteger, c: int) -> CyclotomicInteger:
    """Image of v under zeta_{c'} -> zeta_c^{c/c'}; requires c' | c."""
    if c % v.modulus:
        raise NotDivisor(f"{v.modulus} does not divide {c}")
    if c == v.modulus:
        return v
    step = c // v.modulus
    counts = [0] * c
    for j, a in enumerate(v.coeffs):
        if a:
            counts[j * step] = a
    return reduce(ExponentHistogram(c, counts))


def _check_moduli(x: CyclotomicInteger, y: CyclotomicInteger):
    if x.modulus != y.modulus:
        raise ModulusMismatch(f"moduli differ: {x.modulus} vs {y.modulus}")


def add(x: CyclotomicInteger, y: CyclotomicInteger) -> CyclotomicInteger:
    _check_moduli(x, y)
    return CyclotomicInteger(x.modulus, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def sub(x: CyclotomicInteger, y: CyclotomicInteger) -> CyclotomicInteger:
    _check_moduli(x, y)
    return CyclotomicInteger(x.modulus, tuple(a - b for a, b in zip(x.coeffs, y.coeffs)))


def scale(k: int, x: CyclotomicInteger) -> CyclotomicInteger:
    if k == 1:
        return x
    return CyclotomicInteger(x.modulus, tuple(k * a for a in x.coeffs))


def rotate(v: CyclotomicInteger, e: int) -> CyclotomicInteger:
    """Multiply by the root of unity zeta_c^e (exponent shift, then reduce)."""
    c = v.modulus
    e %= c
    if e == 0:
        return v
    counts = [0] * c
    for j, a in enumerate(v.coeffs):
        if a:
            counts[(j + e) % c] = a
    return reduce(ExponentHistogram(c, counts))


def equal_exact(x: CyclotomicInteger, y: CyclotomicInteger) -> bool:
    """Canonical coefficient equality; the moduli must already agree."""
    _check_moduli(x, y)
    return x.coeffs == y.coeffs


@lru_cache(maxsize=64)
def _root_table_cached(c: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(c) / c)


def _root_table(c: int) -> np.ndarray:
    if c <= _TABLE_CACHE_MAX:
        return _root_table_cached(c)
    return np.exp(2j * np.pi * np.arange(c) / c)


def to_complex(v: Union[CyclotomicInteger, ExponentHistogram]) -> complex:
    """Double-precision value of the sum; for reporting, never for verdicts."""
    if isinstance(v, CyclotomicInteger):
        c, coeffs = v.modulus, v.coeffs
    else:
        c, coeffs = v.modulus, v.counts
    roots = _root_table(c)[: len(coeffs)]
    return complex(np.asarray(coeffs, dtype=np.float64) @ roots)
