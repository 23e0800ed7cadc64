import math
import random

import pytest

from kloosterman.modarith import (
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
    primes_up_to,
)


def test_gcd_examples():
    assert gcd(12, 18) == 6
    assert gcd(0, 0) == 0
    assert gcd(0, 7) == 7
    assert gcd(-12, 18) == 6
    assert gcd(-12, -18) == 6


def test_gcd_triple_form():
    assert gcd(0, 0, 6) == 6
    assert gcd(4, 6, 10) == 2
    assert gcd(0, 0, 0) == 0


def test_mod_inverse_examples():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(1, 1) == 0
    assert mod_inverse(0, 1) == 0
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)
    with pytest.raises(OutOfRange):
        mod_inverse(3, 0)


def test_mod_inverse_exhaustive():
    # a * inverse(a) = 1 mod c for every unit, every modulus up to 1000
    for c in range(1, 1001):
        for a in range(c):
            if math.gcd(a, c) == 1:
                assert a * mod_inverse(a, c) % c == 1 % c


def test_factorize_examples():
    assert factorize(60).factors == ((2, 2), (3, 1), (5, 1))
    assert factorize(1).factors == ()
    assert factorize(1).value == 1


def test_factorize_large_prime_oracle():
    # Independent deterministic primality check: trial division by every
    # prime up to the square root.
    n = 9999999967
    for p in primes_up_to(math.isqrt(n)):
        assert n % p != 0
    assert factorize(n).factors == ((n, 1),)
    assert is_prime(n)


def test_factorize_out_of_range():
    with pytest.raises(OutOfRange):
        factorize(0)
    with pytest.raises(OutOfRange):
        factorize((1 << 63) + 2)


def test_factorize_left_inverse_of_product():
    rng = random.Random(41)
    primes = primes_up_to(2000) + [10_000_019, 9999999967]
    for _ in range(10_000):
        chosen = {}
        value = 1
        for _ in range(rng.randrange(1, 5)):
            p = rng.choice(primes)
            e = rng.randrange(1, 4)
            if value * p**e > 1 << 63:
                continue
            value *= p**e
            chosen[p] = chosen.get(p, 0) + e
        expected = tuple(sorted(chosen.items()))
        assert factorize(value).factors == expected


def test_factorization_invariants_enforced():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))  # not ascending
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))  # wrong product


def test_divisors_examples():
    assert divisors(factorize(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1)) == [1]
    f = factorize(36)
    expected_count = math.prod(e + 1 for _, e in f.factors)
    assert expected_count == 9
    assert len(divisors(f)) == 9


def test_divisors_sorted_and_complete():
    for n in (2, 7, 48, 60, 360, 1024):
        ds = divisors(factorize(n))
        assert ds == sorted(set(ds))
        assert ds == [d for d in range(1, n + 1) if n % d == 0]


def test_moebius_examples():
    assert moebius(1) == 1
    assert moebius(6) == 1
    assert moebius(12) == 0
    assert moebius(30) == -1


def test_moebius_divisor_sum():
    # sum over d | n of mu(d) is 1 at n = 1 and 0 otherwise
    for n in range(1, 10_001):
        total = sum(moebius(d) for d in divisors(factorize(n)))
        assert total == (1 if n == 1 else 0)


def test_euler_phi_examples():
    assert euler_phi(1) == 1
    assert euler_phi(10) == 4
    brute = sum(1 for a in range(360) if math.gcd(a, 360) == 1)
    assert brute == 96
    assert euler_phi(360) == 96


def test_euler_phi_divisor_sum():
    for n in range(1, 10_001):
        assert sum(euler_phi(d) for d in divisors(factorize(n))) == n


def test_crt_combine_examples():
    assert crt_combine(2, 3, 3, 5) == 8
    assert crt_combine(0, 1, 5, 9) == 5
    # oracle: scan the full range
    scan = [x for x in range(91) if x % 7 == 4 and x % 13 == 11]
    assert scan == [11]
    assert crt_combine(4, 7, 11, 13) == 11


def test_crt_combine_errors():
    with pytest.raises(ModuliNotCoprime):
        crt_combine(1, 6, 1, 4)
    with pytest.raises(OutOfRange):
        crt_combine(0, 0, 1, 3)


def test_crt_combine_roundtrip():
    rng = random.Random(43)
    pairs = [(3, 5), (7, 8), (1, 9), (16, 27), (25, 121), (1, 1)]
    for c1, c2 in pairs:
        for _ in range(200):
            x = rng.randrange(10**9)
            assert crt_combine(x % c1, c1, x % c2, c2) == x % (c1 * c2)


def test_is_prime_small():
    sieve = set(primes_up_to(2000))
    for n in range(2000):
        assert is_prime(n) == (n in sieve)
