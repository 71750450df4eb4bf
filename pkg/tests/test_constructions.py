import random

import pytest

from setgen import icbrt, random_sidon
from sidon.constructions import (bose_chowla, bose_chowla_record, greedy_record, greedy_sidon,
                                 powers_of_two, powers_of_two_record, thin_direct,
                                 thin_from_bose_chowla, thin_record)
from sidon.core import IntegerSet, difference_histogram, is_sidon, is_thin, format_set_text, parse_set_text


def greedy_oracle(n, seed=()):
    chosen = sorted(seed)
    for x in range(1, n + 1):
        if x not in chosen and is_sidon(IntegerSet(tuple(chosen + [x]))):
            chosen.append(x)
    return tuple(sorted(chosen))


def test_powers_of_two():
    assert powers_of_two(8).elements == (1, 2, 4, 8)
    assert powers_of_two(1).elements == (1,)
    assert len(powers_of_two(100)) == 7
    assert powers_of_two_record(100).verified


def test_greedy_is_mian_chowla():
    assert greedy_sidon(25).elements == (1, 2, 4, 8, 13, 21)
    assert greedy_sidon(1).elements == (1,)
    assert greedy_sidon(300).elements[:10] == (1, 2, 4, 8, 13, 21, 31, 45, 66, 81)


def test_greedy_matches_oracle():
    for n in range(1, 200, 7):
        assert greedy_sidon(n).elements == greedy_oracle(n)
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 150)
        seed = random_sidon(rng, n, rng.randint(1, 4))
        got = greedy_sidon(n, seed)
        assert got.elements == greedy_oracle(n, seed.elements)
        assert set(seed.elements) <= set(got.elements)


def test_greedy_seed_example():
    A = greedy_sidon(10, IntegerSet((3,)))
    assert 3 in A and is_sidon(A) and A.elements[-1] <= 10
    assert A.elements == greedy_oracle(10, (3,))


def test_greedy_rejects_bad_seed():
    with pytest.raises(ValueError):
        greedy_sidon(10, IntegerSet((1, 2, 3)))
    with pytest.raises(ValueError):
        greedy_sidon(5, IntegerSet((7,)))


def test_greedy_prefixes_and_growth():
    big = greedy_sidon(10**5)
    for n in (10, 10**2, 10**3, 10**4, 10**5):
        A = greedy_sidon(n)
        assert A.elements == tuple(a for a in big.elements if a <= n)
        assert len(A) >= icbrt(n)


def test_greedy_million():
    assert len(greedy_sidon(10**6)) >= 100


def test_bose_chowla_examples():
    assert bose_chowla(2) == IntegerSet.cyclic([1, 2], 3)
    assert bose_chowla(3) == IntegerSet.cyclic([1, 6, 7], 8)
    A = bose_chowla(7)
    assert len(A) == 7 and A.modulus == 48 and is_sidon(A)
    assert is_sidon(IntegerSet.interval(A.elements, 48))
    rec = bose_chowla_record(3)
    assert rec.verified and rec.parameters["generator"] == [1, 1]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_bose_chowla_histogram(p):
    A = bose_chowla(p)
    h = difference_histogram(A)
    assert len(A) == p
    assert all(h[r] == (0 if r % (p + 1) == 0 else 1) for r in range(1, p * p - 1))


def test_thin_examples():
    assert thin_from_bose_chowla(3, 2) == IntegerSet.cyclic([1, 2, 3], 4)
    assert difference_histogram(thin_from_bose_chowla(3, 2)).entries == {1: 2, 2: 2, 3: 2}
    A = thin_from_bose_chowla(5, 2)
    assert len(A) == 5 and A.modulus == 12 and is_thin(A, 2)
    B = thin_from_bose_chowla(5, 4)
    h = difference_histogram(B)
    assert B.modulus == 6 and all(h[r] == 4 for r in range(1, 6))
    assert thin_direct(7, 3) == thin_from_bose_chowla(7, 3)
    assert len(thin_direct(7, 3)) == 7 and thin_direct(7, 3).modulus == 16


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_thin_constructions_agree(p):
    assert thin_direct(p, 1) == bose_chowla(p)
    for ell in range(1, p):
        if (p - 1) % ell:
            continue
        A = thin_from_bose_chowla(p, ell)
        assert A == thin_direct(p, ell)
        assert len(A) == p and is_thin(A, ell)


def test_thin_rejects_bad_ell():
    with pytest.raises(ValueError):
        thin_from_bose_chowla(7, 4)
    with pytest.raises(ValueError):
        thin_direct(5, 3)


def test_records_round_trip_text():
    for rec in (thin_record(7, 3), greedy_record(50), bose_chowla_record(5)):
        assert rec.verified
        text = format_set_text(rec.set, rec.header())
        assert text.startswith(f"# method={rec.method}")
        assert parse_set_text(text) == rec.set
