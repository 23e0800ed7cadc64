import math
from fractions import Fraction

from kloosterman.characters import (
    enumerate_characters,
    evaluate,
    unit_group_structure,
)
from kloosterman.cyclotomic import ExponentHistogram, from_int, is_zero, reduce
from kloosterman.modarith import euler_phi, gcd


def _angle(chi, x) -> Fraction:
    num, den = evaluate(chi, x)
    return Fraction(num, den)


def test_structure_examples():
    st = unit_group_structure(1)
    assert st.generators == ()
    assert st.dlog == {0: ()}

    st = unit_group_structure(8)
    assert sorted(st.orders()) == [2, 2]
    # the two generators really span {1, 3, 5, 7}
    assert set(st.dlog) == {1, 3, 5, 7}

    st = unit_group_structure(7)
    assert st.orders() == (6,)
    assert st.generators[0][0] == 3  # 2 has order 3, the next candidate works


def test_structure_reproduces_units():
    for N in range(1, 61):
        st = unit_group_structure(N)
        assert math.prod(st.orders()) == euler_phi(N)
        for unit, vec in st.dlog.items():
            v = 1 % N
            for (g, _), e in zip(st.generators, vec):
                v = v * pow(g, e, N) % N
            assert v == unit


def test_enumerate_characters_counts():
    assert len(enumerate_characters(1)) == 1
    assert len(enumerate_characters(5)) == 4
    chars12 = enumerate_characters(12)
    assert len(chars12) == 4
    assert all(chi.order <= 2 for chi in chars12)
    # index 0 is principal: value 1 on every unit
    principal = enumerate_characters(15)[0]
    for x in range(15):
        if math.gcd(x, 15) == 1:
            assert evaluate(principal, x) == (0, 1)


def test_evaluate_examples():
    for N in (1, 5, 12):
        for chi in enumerate_characters(N):
            assert evaluate(chi, 1) == (0, 1)
    chi = enumerate_characters(10)[1]
    assert evaluate(chi, 5) is None
    # mod 5: generator 2; the character with exponent 1 sends 2 to i,
    # so 4 = 2^2 goes to -1
    st = unit_group_structure(5)
    assert st.generators == ((2, 4),)
    chi = enumerate_characters(5)[1]
    assert chi.exponents == (1,)
    assert evaluate(chi, 2) == (1, 4)
    assert evaluate(chi, 4) == (1, 2)


def test_periodicity_and_zero_pattern():
    for N in (6, 9, 16, 24):
        for chi in enumerate_characters(N):
            for x in range(N):
                v = evaluate(chi, x)
                assert v == evaluate(chi, x + N)
                assert (v is None) == (math.gcd(x, N) > 1)


def test_multiplicativity_small_moduli():
    for N in range(1, 31):
        units = [x for x in range(N) if math.gcd(x, N) == 1]
        for chi in enumerate_characters(N):
            table = {x: _angle(chi, x) for x in units}
            for x in units:
                for y in units:
                    assert (table[x] + table[y]) % 1 == table[x * y % N]


def test_column_orthogonality_exact():
    # sum over x of chi(x) vanishes for nonprincipal chi (exactly, in the
    # cyclotomic field of the character order)
    for N in range(1, 31):
        for i, chi in enumerate(enumerate_characters(N)):
            d = chi.order
            counts = [0] * d
            for x in range(N):
                v = evaluate(chi, x)
                if v is not None:
                    num, den = v
                    counts[num * (d // den) % d] += 1
            total = reduce(ExponentHistogram(d, counts))
            if i == 0:
                assert total.coeffs == (euler_phi(N),)
            else:
                assert is_zero(total)


def test_row_orthogonality_exact():
    # sum over chi of chi(x) vanishes for every unit x != 1
    for N in range(1, 31):
        chars = enumerate_characters(N)
        exponent = math.lcm(*(chi.order for chi in chars))
        for x in range(N):
            if math.gcd(x, N) != 1:
                continue
            counts = [0] * exponent
            for chi in chars:
                num, den = evaluate(chi, x)
                counts[num * (exponent // den) % exponent] += 1
            total = reduce(ExponentHistogram(exponent, counts))
            if x == 1 % N:
                assert total.coeffs == from_int(len(chars), exponent).coeffs
            else:
                assert is_zero(total)
