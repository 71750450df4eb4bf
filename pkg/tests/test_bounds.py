import math
import random
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest

from sidon import bounds
from sidon.bounds import (FeasibilityParams, IndeterminateSignError, closed_form_bound,
                          feasible_translate_count, integer_in_negative_window,
                          johnson_min_ground, parameter_feasibility, quadratic_window,
                          translate_count_certified, translate_window)


class TestClosedForms:
    def test_examples(self):
        lin = closed_form_bound("lindstrom", 10000)
        assert (lin.value, lin.implied_max) == (111.0, 110)
        cil = closed_form_bound("cilleruelo", 10000)
        assert (cil.value, cil.implied_max) == (110.5, 110)
        assert closed_form_bound("thin", 10000, ell=1).value == 110.5
        assert closed_form_bound("main_theorem", 10000, gamma=0.002).value == pytest.approx(109.98, abs=1e-12)
        assert closed_form_bound("trivial", 100).value == 20.0

    def test_flags(self):
        assert "+O(1) suppressed" in closed_form_bound("kayll_weak", 10).flags
        assert closed_form_bound("main_theorem", 10).flags
        assert closed_form_bound("lindstrom", 10).flags == ()

    def test_errors(self):
        with pytest.raises(ValueError):
            closed_form_bound("nope", 10)
        with pytest.raises(ValueError):
            closed_form_bound("thin", 10)
        with pytest.raises(ValueError):
            closed_form_bound("trivial", 0)

    def test_kayll_uses_square_root_leading_term(self):
        v = closed_form_bound("kayll_weak", 10**4).value
        assert v == pytest.approx(100 + math.sqrt(3) * 10)

    def test_ordering_and_identities(self):
        for n in list(range(16, 2000)) + [10**5, 10**6, 10**8]:
            v = {k: closed_form_bound(k, n).value for k in ("cilleruelo", "lindstrom", "trivial")}
            assert v["cilleruelo"] < v["lindstrom"] < v["trivial"]
            assert closed_form_bound("thin", n, ell=1).value == v["cilleruelo"]
        for n in range(2, 3000):
            assert closed_form_bound("main_theorem", n).value < closed_form_bound("cilleruelo", n).value

    def test_implied_max_is_strict(self):
        for kind in ("trivial", "lindstrom", "cilleruelo"):
            for n in range(1, 500):
                r = closed_form_bound(kind, n)
                assert r.implied_max < r.value <= r.implied_max + 1

    def test_accuracy_against_high_precision(self):
        rng = random.Random(3)
        with mpmath.workdps(50):
            for _ in range(200):
                n = rng.randint(1, 10**12)
                exact = mpmath.sqrt(n) + mpmath.root(n, 4) + mpmath.mpf(1) / 2
                got = closed_form_bound("cilleruelo", n).value
                assert abs(got - exact) / exact < 2.0 ** -40


class TestJohnson:
    def test_examples(self):
        assert johnson_min_ground(3, 7, 1) == 7
        assert johnson_min_ground(5, 1, 2) == 5
        assert johnson_min_ground(2, 3, 1) == 3
        assert isinstance(johnson_min_ground(4, 5, 1), Fraction)

    def test_fano_plane_is_tight(self):
        lines = [frozenset((x + d) % 7 for d in (0, 1, 3)) for x in range(7)]
        assert len(set(lines)) == 7
        assert all(len(a & b) == 1 for a, b in combinations(lines, 2))
        points = set().union(*lines)
        assert len(points) == johnson_min_ground(3, 7, 1)

    def test_triangle(self):
        edges = [{1, 2}, {2, 3}, {1, 3}]
        assert all(len(a & b) <= 1 for a, b in combinations(edges, 2))
        assert len(set().union(*edges)) == johnson_min_ground(2, 3, 1)

    def test_monotonicity(self):
        for k in range(1, 21):
            for m in range(1, 21):
                for t in range(0, k + 1):
                    v = johnson_min_ground(k, m, t)
                    if k < 20:
                        # enlarging k with t fixed
                        assert johnson_min_ground(k + 1, m, t) >= v
                    if m < 20:
                        assert johnson_min_ground(k, m + 1, t) >= v
                    if t < k:
                        assert johnson_min_ground(k, m, t + 1) <= v

    def test_errors(self):
        with pytest.raises(ValueError):
            johnson_min_ground(0, 1, 0)
        with pytest.raises(ValueError):
            johnson_min_ground(3, 2, 4)


class TestNegativeWindow:
    def test_examples(self):
        assert integer_in_negative_window(1, -3, 1) == 1
        assert integer_in_negative_window(1, -2, 1) is None
        assert integer_in_negative_window(2, -10, 3) == 1
        w = quadratic_window(1, -3, 1)
        assert w.roots[0] == pytest.approx(0.381966) and w.roots[1] == pytest.approx(2.618034)

    def test_hypotheses(self):
        for bad in ((0, -1, 1), (1, 1, 1), (1, -1, 0), (-1, -3, 1)):
            with pytest.raises(ValueError):
                integer_in_negative_window(*bad)

    def test_against_scan(self):
        rng = random.Random(11)
        for _ in range(500):
            a2 = Fraction(rng.randint(1, 20), rng.randint(1, 5))
            a1 = -Fraction(rng.randint(1, 400), rng.randint(1, 5))
            a0 = Fraction(rng.randint(1, 2000), rng.randint(1, 5))
            got = integer_in_negative_window(a2, a1, a0)
            top = int(-a1 / a2) + 2
            scan = next((m for m in range(1, top + 1) if a2 * m * m + a1 * m + a0 < 0), None)
            assert got == scan
            if a1 * a1 - 4 * a2 * a0 - a2 * a2 > 0:
                assert got is not None

    def test_indeterminate_sign_is_reported(self, monkeypatch):
        # a root exactly at an integer with an irrational-looking enclosure never resolves
        def coeffs(bits):
            eps = Fraction(1, 2 ** bits)
            return ((Fraction(1), Fraction(1)), (Fraction(-5) - eps, Fraction(-5) + eps),
                    (Fraction(6), Fraction(6)))
        with pytest.raises(IndeterminateSignError):
            bounds._sign_at(2, coeffs)


class TestTranslateCount:
    def test_reference_case(self):
        w = translate_window(10000, 1)
        assert w.roots[0] == pytest.approx(953.675, abs=1e-3)
        assert w.roots[1] == pytest.approx(1148.07, abs=1e-2)
        assert feasible_translate_count(10000, 1) == 954
        assert translate_count_certified(10000, 1, 954)
        assert translate_count_certified(10000, 1, 1000)
        assert not translate_count_certified(10000, 1, 953)
        assert not translate_count_certified(10000, 1, 1149)

    def test_exact_expansion_at_reference_kappa(self):
        kap = Fraction(221, 2)
        f = (10000 + 954 - 1) * (954 + kap - 1) - kap * kap * 954
        assert f == -63

    def test_small_cases(self):
        m = feasible_translate_count(100, 4)
        assert translate_count_certified(100, 4, m)
        assert feasible_translate_count(1, 1) == 1

    def test_minimality_against_mpmath(self):
        rng = random.Random(5)
        with mpmath.workdps(60):
            for _ in range(40):
                ell = rng.randint(1, 4)
                n = rng.randint(ell, 10**5)
                m = feasible_translate_count(n, ell)
                N = mpmath.mpf(ell * n)
                kap = mpmath.sqrt(N) + mpmath.root(N, 4) + mpmath.mpf(1) / 2

                def f(x):
                    return (n + x - 1) * (ell * x + kap - ell) - kap * kap * x
                assert f(m) < 0
                assert m == 1 or f(m - 1) >= 0

    def test_kappa_enclosure_brackets(self):
        with mpmath.workdps(120):
            for n, ell in ((10000, 1), (12345, 3), (999999, 4), (2, 2)):
                N = mpmath.mpf(ell * n)
                ref = mpmath.sqrt(N) + mpmath.root(N, 4) + mpmath.mpf(1) / 2
                for bits in (32, 64, 128, 256):
                    lo, hi = bounds.kappa_enclosure(n, ell, bits)
                    assert mpmath.mpf(lo.numerator) / lo.denominator <= ref
                    assert ref <= mpmath.mpf(hi.numerator) / hi.denominator
                    assert hi - lo <= Fraction(4, 2 ** bits)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            translate_window(3, 4)


class TestFeasibility:
    def run(self, mode, a, b, e, g):
        return parameter_feasibility(FeasibilityParams(a, b, e, g, mode))

    def test_sidon_mode(self):
        r = self.run("sidon", 0.137, 0.037, 0.235, 0.002)
        assert r.feasible and r.lhs_min == pytest.approx(0.002043, abs=1e-6)
        assert r.margin == pytest.approx(r.lhs_min - 0.002)
        assert not self.run("sidon", 0.137, 0.037, 0.235, 0.0021).feasible

    def test_weak_mode(self):
        r = self.run("weak", 0.273, 0.068, 0.363, 0.0089)
        assert r.feasible and r.lhs_min > 0.00896
        assert not self.run("weak", 0.273, 0.068, 0.363, 0.0090).feasible

    def test_invariants(self):
        for bad in ((0.1, 0.06, 0.2, 0.001), (1.2, 0.1, 0.2, 0.001), (0.1, 0.01, 0.2, 0.0)):
            with pytest.raises(ValueError):
                FeasibilityParams(*bad)
        with pytest.raises(ValueError):
            FeasibilityParams(0.1, 0.01, 0.2, 0.01, mode="other")
