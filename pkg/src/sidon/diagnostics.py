"""Exact diagnostics behind the upper-bound arguments.

Integer and rational quantities (degrees, defect, slack, window bounds) are
exact.  Closed-form comparisons against the asymptotic gain terms are
reported as floats and never asserted.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import (IntegerSet, Interval, difference_histogram, is_sidon,
                   is_weak_sidon, order_differences, repeated_distances)


class BelowDiagnosticScale(ValueError):
    """n is too small for the edge windows to be non-empty."""


class SideConditionWarning(UserWarning):
    pass


def _interval_n(A: IntegerSet) -> int:
    if A.is_cyclic:
        raise ValueError("translate families live in an interval; got a cyclic set")
    return A.span


# --- translate families ------------------------------------------------------

@dataclass(frozen=True)
class DegreeProfile:
    """Degrees ``d_x`` of the family ``A, A+1, ..., A+(m-1)`` on ``[1, n+m-1]``."""

    base: IntegerSet
    n: int
    m: int
    degrees: tuple[int, ...]

    @property
    def v(self) -> int:
        return self.n + self.m - 1

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def average(self) -> Fraction:
        return Fraction(self.total, self.v)

    def degree(self, x: int) -> int:
        return self.degrees[x - 1]


def translate_degree_profile(A: IntegerSet, m: int) -> DegreeProfile:
    if m < 1:
        raise ValueError("m must be positive")
    n = _interval_n(A)
    v = n + m - 1
    # d_x = |A ∩ [x-m+1, x]| via prefix counts
    prefix = [0] * (v + 1)
    members = set(A.elements)
    for x in range(1, v + 1):
        prefix[x] = prefix[x - 1] + (x in members)
    degrees = tuple(prefix[x] - prefix[max(0, x - m)] for x in range(1, v + 1))
    return DegreeProfile(A, n, m, degrees)


@dataclass(frozen=True)
class Defect:
    value: Fraction
    sum_squares: int
    total: int
    v: int


def defect(profile: DegreeProfile) -> Defect:
    """``K = sum d^2 - (sum d)^2 / v``, cross-checked against ``sum (avg - d)^2``."""
    v, S = profile.v, profile.total
    sq = sum(d * d for d in profile.degrees)
    K = Fraction(sq * v - S * S, v)
    # sum (S/v - d)^2 = sum (S - v d)^2 / v^2, kept in integers
    dev = Fraction(sum((S - v * d) ** 2 for d in profile.degrees), v * v)
    if dev != K:
        raise AssertionError(f"variance identity failed: {K} != {dev}")
    return Defect(K, sq, S, v)


def window_variance_bound(profile: DegreeProfile, X: Iterable[int]) -> Fraction:
    """``|X| (avg - d_X)^2``; a certified lower bound on the defect."""
    X = sorted(set(X))
    if not X:
        raise ValueError("window must be non-empty")
    if X[0] < 1 or X[-1] > profile.v:
        raise ValueError(f"window must lie in [1, {profile.v}]")
    d_bar = profile.average
    d_X = Fraction(sum(profile.degree(x) for x in X), len(X))
    bound = len(X) * (d_bar - d_X) ** 2
    dev = sum((d_bar - d) ** 2 for d in (profile.degree(x) for x in X))
    if bound > dev:
        raise AssertionError("window bound exceeds the window's own deviation")
    return bound


@dataclass(frozen=True)
class TranslateAudit:
    max_pair_intersection: int
    pairs_with_size_2: int
    overlap_by_shift: dict[int, int]


def translate_intersection_audit(A: IntegerSet, m: int) -> TranslateAudit:
    """Exact intersection sizes over all pairs ``A+i, A+j`` with ``0 <= i < j < m``.

    ``|(A+i) ∩ (A+j)|`` depends only on ``c = j - i`` and there are ``m - c``
    pairs at shift c.
    """
    if m < 2:
        raise ValueError("need at least two translates")
    _interval_n(A)
    hist = difference_histogram(A)
    overlap = {c: hist[c] for c in range(1, m)}
    return TranslateAudit(max(overlap.values(), default=0),
                          sum(m - c for c, size in overlap.items() if size == 2),
                          overlap)


# --- order-limited difference sums --------------------------------------------

def distinct_count(k: int, ell: int) -> int:
    """Number of differences of order at most ell: ``ell k - ell(ell+1)/2``."""
    return ell * k - ell * (ell + 1) // 2


def order_limited_difference_sum(A: IntegerSet, ell: int) -> int:
    return sum(d for _, _, d in order_differences(A, ell))


@dataclass(frozen=True)
class SumDiffChain:
    """``T^2/2 < T(T+1)/2 <= sum < ell(ell+1)n/2`` with T distinct differences."""

    total: int
    distinct: int
    square_floor: Fraction
    triangular: int
    ceiling: Fraction
    lower_holds: bool
    upper_holds: bool


def sumdiff_chain(A: IntegerSet, ell: int, n: int | None = None) -> SumDiffChain:
    """Both sides of the counting chain; the lower side needs A to be Sidon."""
    n = A.span if n is None else n
    total = order_limited_difference_sum(A, ell)
    T = distinct_count(A.k, ell)
    square_floor = Fraction(T * T, 2)
    triangular = T * (T + 1) // 2
    ceiling = Fraction(ell * (ell + 1) * n, 2)
    lower = square_floor < triangular <= total
    return SumDiffChain(total, T, square_floor, triangular, ceiling, lower, total < ceiling)


def slack(A: IntegerSet, ell: int) -> int:
    """Excess of the order-<=ell difference sum over ``1 + 2 + ... + T``."""
    if A.is_cyclic or not is_sidon(A):
        raise ValueError("slack needs an integer Sidon set")
    T = distinct_count(A.k, ell)
    return order_limited_difference_sum(A, ell) - T * (T + 1) // 2


@dataclass(frozen=True)
class WeakSlack:
    value: int
    repeated: int
    differences: tuple[int, ...]


def weak_slack(A: IntegerSet, ell: int) -> WeakSlack:
    """``sum max(a_j - a_i - (ell-1)k, 0)`` over ``i < j <= i + ell``."""
    if A.is_cyclic or not is_weak_sidon(A):
        raise ValueError("weak slack needs an integer weak Sidon set")
    diffs = tuple(d for _, _, d in order_differences(A, ell))
    shift = (ell - 1) * A.k
    return WeakSlack(sum(max(d - shift, 0) for d in diffs), len(repeated_distances(A)), diffs)


# --- edge discrepancy and the three-case split ------------------------------------

@dataclass(frozen=True)
class DiscrepancyStats:
    s: int
    m: int
    r1: int
    r2: int
    R1: int
    R2: int

    @property
    def r(self) -> int:
        return self.r1 + self.r2

    @property
    def R(self) -> int:
        return self.R1 + self.R2


def discrepancy_stats(A: IntegerSet, n: int, s: int, m: int) -> DiscrepancyStats:
    if not (1 <= s <= m - s and m <= n):
        raise ValueError("need 1 <= s <= m - s and m <= n")
    if A.elements and A.elements[-1] > n:
        raise ValueError(f"set does not lie in [{n}]")

    def count(lo, hi):
        return sum(1 for a in A.elements if lo <= a <= hi)

    return DiscrepancyStats(s, m, count(1, s), count(n + 1 - s, n),
                            count(1, m - s), count(n + 1 - m + s, n))


LOW_EDGE, HIGH_EDGE, MIDDLE_GAP = "LowEdgeMass", "HighEdgeMass", "MiddleGap"


@dataclass(frozen=True)
class CaseReport:
    case: str
    n: int
    k: int
    m: int
    s: int
    slack_order: int
    stats: DiscrepancyStats
    K_exact: Fraction
    C_exact: int
    low_window_bound: Fraction
    high_window_bound: Fraction
    claim_reference_gain: float
    params: dict = field(default_factory=dict)

    @property
    def window_bound(self) -> Optional[Fraction]:
        """Certified defect lower bound from the window matching the case."""
        if self.case == LOW_EDGE:
            return self.low_window_bound
        if self.case == HIGH_EDGE:
            return self.high_window_bound
        return None


def _floor_three_quarters(n: int) -> int:
    # floor(n^(3/4)) = floor((n^3)^(1/4))
    return math.isqrt(math.isqrt(n ** 3))


def classify(r: int, R: int, n: int, eps: float) -> str:
    q = n ** 0.25
    if r <= 2 * (1 - eps) * q:
        return LOW_EDGE
    if R >= 2 * (1 + eps) * q:
        return HIGH_EDGE
    return MIDDLE_GAP


def case_report(A: IntegerSet, alpha: float, beta: float, eps: float,
                n: int | None = None) -> CaseReport:
    """Assign the edge-mass case and attach exact defect, slack and window bounds.

    The slack order is ``floor((1-alpha) n^(1/4))``, capped at ``k - 1`` for
    sets too sparse to have that many orders.
    """
    if not (0 < 2 * beta < alpha < 1 and 0 < eps < 1):
        raise ValueError("need 0 < 2 beta < alpha < 1 and 0 < eps < 1")
    if A.is_cyclic or not is_sidon(A):
        raise ValueError("case report needs an integer Sidon set")
    n = A.span if n is None else n
    if A.k < 2:
        raise BelowDiagnosticScale("need at least two elements")
    m = _floor_three_quarters(n)
    s = math.floor(beta * n ** 0.75)
    L = math.floor((1 - alpha) * n ** 0.25)
    if s == 0 or L == 0:
        raise BelowDiagnosticScale(f"n = {n}: s = {s}, L = {L}; windows are empty")
    stats = discrepancy_stats(A, n, s, m)
    base = A.with_ambient(Interval(n))
    profile = translate_degree_profile(base, m)
    K = defect(profile).value
    order = min(L, A.k - 1)
    C = slack(base, order)
    low_X = list(range(1, s + 1)) + list(range(n + m - s, n + m))
    high_X = list(range(m - s + 1, m + 1)) + list(range(n, n + s))
    case = classify(stats.r, stats.R, n, eps)
    n54 = n ** 1.25
    if case == MIDDLE_GAP:
        gain = (1 - alpha - 2 * eps) ** 2 * (alpha - 2 * beta) * n54
    else:
        gain = 2 * eps * eps * beta * n54
    return CaseReport(case, n, A.k, m, s, order, stats, K, C,
                      window_variance_bound(profile, low_X),
                      window_variance_bound(profile, high_X), gain,
                      {"alpha": alpha, "beta": beta, "eps": eps})


# --- refined bounds ------------------------------------------------------------

def refined_bound_from_slack(n: int, alpha: float, C: float) -> float:
    if not (0 <= alpha < 1 and C >= 0):
        raise ValueError("need 0 <= alpha < 1 and C >= 0")
    q = n ** 0.25
    penalty = (2 * C / n - q * alpha * alpha * (1 - alpha)) / (2 * (1 - alpha) ** 2)
    return math.sqrt(n) + q - penalty + 0.5


def refined_bound_from_defect(n: int, K: float) -> float:
    """``sqrt(n) + n^(1/4) - K/(2n) + 2``; warns outside ``K < 2 n^(3/2)``."""
    if K < 0:
        raise ValueError("K must be non-negative")
    if K >= 2 * n ** 1.5:
        warnings.warn(f"K = {K} >= 2 n^(3/2); the bound's derivation assumes otherwise",
                      SideConditionWarning, stacklevel=2)
    return math.sqrt(n) + n ** 0.25 - K / (2 * n) + 2
