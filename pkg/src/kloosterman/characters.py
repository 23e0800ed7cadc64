"""Dirichlet characters mod N, built on an explicit unit-group decomposition.

A character is stored as one exponent per generator of (Z/NZ)^*; its values
are exact rational angles (k, d) meaning e(k/d), so downstream cyclotomic
accumulation stays exact. Structures are immutable once built and the
per-modulus construction is cached with initialize-once semantics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .modarith import OutOfRange, crt_combine, euler_phi, factorize, gcd


@dataclass(frozen=True)
class UnitGroupStructure:
    """Generators (residue, order) whose direct product is (Z/NZ)^*, plus
    a full discrete-log table mapping each unit to its exponent vector."""

    modulus: int
    generators: tuple[tuple[int, int], ...]
    dlog: dict

    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.generators)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod N given by its exponents against the canonical generators."""

    modulus: int
    exponents: tuple[int, ...]
    order: int


def _primitive_root(q: int, p: int) -> int:
    """Smallest generator of the units mod q = p^a (p odd), by the order test."""
    phi = euler_phi(q)
    checks = [phi // r for r, _ in factorize(phi).factors]
    g = 2
    while True:
        if g % p and all(pow(g, k, q) != 1 for k in checks):
            return g
        g += 1


@lru_cache(maxsize=None)
def unit_group_structure(N: int) -> UnitGroupStructure:
    """Generator decomposition of (Z/NZ)^* assembled prime power by prime power.

    Odd p^a contributes one primitive root; 2 contributes nothing; 4
    contributes 3 (order 2); 2^a for a >= 3 contributes -1 (order 2) and 5
    (order 2^(a-2)). Local generators are CRT-extended to be 1 at the other
    prime powers.
    """
    if N < 1:
        raise OutOfRange(f"modulus must be >= 1, got {N}")
    local = []  # (prime power, local generator, order)
    for p, a in factorize(N).factors:
        q = p**a
        if p == 2:
            if a == 2:
                local.append((q, 3, 2))
            elif a >= 3:
                local.append((q, q - 1, 2))
                local.append((q, 5, 1 << (a - 2)))
        else:
            local.append((q, _primitive_root(q, p), euler_phi(q)))
    generators = []
    for q, g, order in local:
        rest = N // q
        generators.append((crt_combine(g % q, q, 1 % rest, rest), order))

    orders = [o for _, o in generators]
    pow_tables = [
        [pow(g, k, N) for k in range(o)] for (g, _), o in zip(generators, orders)
    ]
    dlog = {}
    for vec in product(*[range(o) for o in orders]):
        v = 1 % N
        for table, k in zip(pow_tables, vec):
            v = v * table[k] % N
        dlog[v] = vec
    assert len(dlog) == euler_phi(N), "generators do not span the unit group"
    return UnitGroupStructure(N, tuple(generators), dlog)


def _char_order(exponents, orders) -> int:
    return math.lcm(*(o // math.gcd(o, e) for e, o in zip(exponents, orders))) if orders else 1


def enumerate_characters(N: int) -> list[DirichletCharacter]:
    """All phi(N) characters mod N, ordered by their exponent vectors
    (lexicographic); index 0 is the principal character."""
    st = unit_group_structure(N)
    orders = st.orders()
    return [
        DirichletCharacter(N, vec, _char_order(vec, orders))
        for vec in product(*[range(o) for o in orders])
    ]


def evaluate(chi: DirichletCharacter, x: int):
    """chi(x) as a reduced rational angle (k, d) meaning e(k/d); None when
    gcd(x, N) > 1, i.e. the character vanishes."""
    N = chi.modulus
    st = unit_group_structure(N)
    x %= N
    if gcd(x, N) != 1:
        return None
    vec = st.dlog[x]
    angle = Fraction(0)
    for e, v, (_, o) in zip(chi.exponents, vec, st.generators):
        angle += Fraction(e * v, o)
    angle %= 1
    return (angle.numerator, angle.denominator)
