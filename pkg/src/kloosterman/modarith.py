"""Exact integer and modular arithmetic shared by the whole package.

Everything here is a pure function; results depend only on the arguments, so
all of it is safe to call from worker pools.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NotInvertible(ValueError):
    """The residue shares a factor with the modulus, so no inverse exists."""


class OutOfRange(ValueError):
    """An integer argument lies outside the supported domain."""


class ModuliNotCoprime(ValueError):
    """crt_combine was handed moduli that share a factor."""


#: Upper bound on factorize() inputs.
MAX_FACTOR_INPUT = 1 << 63

# Witness bases proving primality for every n below 3.3e24 (covers 64-bit).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def gcd(*values: int) -> int:
    """Non-negative gcd of any number of integers; gcd of all zeros is 0."""
    return math.gcd(*values)


def mod_inverse(a: int, c: int) -> int:
    """The residue x in [0, c) with a*x = 1 (mod c); 0 for the modulus 1.

    Raises NotInvertible when gcd(a, c) > 1.
    """
    if c < 1:
        raise OutOfRange(f"modulus must be >= 1, got {c}")
    try:
        return pow(a, -1, c)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible mod {c}") from None


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin over the fixed witness bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : n + 1 : p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its prime-power decomposition."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise OutOfRange(f"value must be >= 1, got {self.value}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("prime factors must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")


@lru_cache(maxsize=100_000)
def factorize(n: int) -> Factorization:
    """Prime-power decomposition by wheel trial division.

    Small primes 2, 3, 5 are stripped first, then a 2-4 wheel runs to the
    square root of the shrinking cofactor; a deterministic primality test
    bails out early once the cofactor turns prime.
    """
    if n < 1:
        raise OutOfRange(f"factorize needs n >= 1, got {n}")
    if n > MAX_FACTOR_INPUT:
        raise OutOfRange(f"factorize supports n <= 2^63, got {n}")
    value = n
    factors = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n > 1 and is_prime(n):
        factors.append((n, 1))
        n = 1
    d, step = 7, 4
    while n > 1 and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
            if n > 1 and is_prime(n):
                factors.append((n, 1))
                n = 1
        d, step = d + step, 6 - step
    if n > 1:
        factors.append((n, 1))
    return Factorization(value, tuple(factors))


def divisors(f: Factorization) -> list[int]:
    """All divisors of f.value, ascending."""
    divs = [1]
    for p, e in f.factors:
        pk = 1
        block = list(divs)
        for _ in range(e):
            pk *= p
            divs.extend(d * pk for d in block)
    divs.sort()
    return divs


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    """0 when a square divides n, else (-1)^(number of prime factors)."""
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    """Count of residues mod n coprime to n, via the product formula."""
    if n < 1:
        raise OutOfRange(f"euler_phi needs n >= 1, got {n}")
    out = 1
    for p, e in factorize(n).factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def crt_combine(r1: int, c1: int, r2: int, c2: int) -> int:
    """The unique x in [0, c1*c2) with x = r1 (mod c1) and x = r2 (mod c2)."""
    if c1 < 1 or c2 < 1:
        raise OutOfRange("moduli must be >= 1")
    if math.gcd(c1, c2) != 1:
        raise ModuliNotCoprime(f"moduli {c1} and {c2} share a factor")
    m = mod_inverse(c1 % c2, c2)
    return (r1 + c1 * ((r2 - r1) * m % c2)) % (c1 * c2)
