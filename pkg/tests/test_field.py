import random

import pytest

from sidon.field import (MAX_PRIME, NotPrimitiveError, build_extension, dlog_table,
                         find_primitive, is_prime, is_primitive, prime_factors,
                         smallest_nonresidue)

PRIMES = [2, 3, 5, 7, 11, 13]


def naive_order(g):
    x, k = g, 1
    while x != g.field.one:
        x, k = x * g, k + 1
    return k


def test_number_theory_helpers():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(24) == [2, 3]
    assert prime_factors(97 * 97 - 1) == [2, 3, 7]
    assert smallest_nonresidue(3) == 2 and smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3


def test_reductions():
    assert build_extension(3).s == 2
    assert build_extension(5).s == 2
    F2 = build_extension(2)
    x = F2.theta
    assert x * x == x + F2.one


def test_rejects_bad_p():
    for bad in (1, 4, 9, MAX_PRIME + 3):
        with pytest.raises(ValueError):
            build_extension(bad)


def test_arithmetic_examples():
    F9 = build_extension(3)
    t = F9.theta
    assert t * t == F9(2, 0)
    assert (F9.one + t) ** 2 == F9(0, 2)
    assert F9.zero ** 0 == F9.one
    with pytest.raises(TypeError):
        _ = t + build_extension(5).theta


@pytest.mark.parametrize("p", PRIMES)
def test_ring_axioms(p):
    F = build_extension(p)
    rng = random.Random(p)
    elems = list(F.elements())
    for _ in range(200):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert (a - b) + b == a
        e = rng.randint(0, 40)
        expected = F.one
        for _ in range(e):
            expected = expected * a
        assert a ** e == expected


@pytest.mark.parametrize("p", PRIMES)
def test_primitive_is_first_full_order_element(p):
    F = build_extension(p)
    g = find_primitive(F)
    assert naive_order(g) == p * p - 1
    first = next(x for x in F.nonzero() if naive_order(x) == p * p - 1)
    assert g == first
    assert is_primitive(g)


def test_primitive_examples():
    F4 = build_extension(2)
    assert find_primitive(F4) == F4.theta
    F9 = build_extension(3)
    assert find_primitive(F9) == F9(1, 1)
    assert naive_order(F9.theta) == 4
    r = find_primitive(build_extension(5))
    one = r.field.one
    assert r ** 12 != one and r ** 8 != one and r ** 24 == one


@pytest.mark.parametrize("p", PRIMES)
def test_dlog_table(p):
    F = build_extension(p)
    g = find_primitive(F)
    T = dlog_table(F, g)
    assert sorted(T.log.values()) == list(range(1, p * p))
    assert T[F.one] == p * p - 1
    for x in F.nonzero():
        assert T.power(T[x]) == x
    base = {x for x, e in T.log.items() if e % (p + 1) == 0}
    assert base == {F(x, 0) for x in range(1, p)}


def test_dlog_examples():
    F4 = build_extension(2)
    x = F4.theta
    assert dlog_table(F4, x).log == {x: 1, x + F4.one: 2, F4.one: 3}
    F9 = build_extension(3)
    T = dlog_table(F9, F9(1, 1))
    assert len(T) == 8 and T[F9.one] == 8
    with pytest.raises(NotPrimitiveError):
        dlog_table(F9, F9.theta)
