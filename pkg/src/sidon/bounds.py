"""Closed-form upper bounds, the Johnson inequality, and the translate-count window.

Bound values are binary floats.  Each formula is a handful of correctly
rounded operations (sqrt, a second sqrt for the fourth root, adds and one
multiply), so the relative error stays well below 2**-40.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

KINDS = ("trivial", "lindstrom", "cilleruelo", "main_theorem", "kayll_weak", "thin")
SQRT3 = math.sqrt(3.0)

START_BITS = 32
MAX_BITS = 256


@dataclass(frozen=True)
class BoundReport:
    kind: str
    n: int
    value: float
    implied_max: int
    ell: Optional[int] = None
    gamma: Optional[float] = None
    flags: tuple[str, ...] = ()


def _fourth_root(x: float) -> float:
    return math.sqrt(math.sqrt(x))


def closed_form_bound(kind: str, n: int, ell: int | None = None,
                      gamma: float = 0.002) -> BoundReport:
    """Evaluate one of the published upper bounds on the size of a set in [n].

    All six are strict inequalities, so ``implied_max = ceil(value) - 1``.
    ``main_theorem`` holds only beyond an unspecified threshold and
    ``kayll_weak`` drops an O(1) term; both carry flags saying so.
    """
    if n < 1:
        raise ValueError("n must be positive")
    flags: tuple[str, ...] = ()
    root, quart = math.sqrt(n), _fourth_root(n)
    if kind == "trivial":
        value = 2.0 * root
    elif kind == "lindstrom":
        value = root + quart + 1.0
    elif kind == "cilleruelo":
        value = root + quart + 0.5
    elif kind == "main_theorem":
        value = root + quart * (1.0 - gamma)
        flags = ("asymptotic: valid only for n > n0, n0 unspecified",)
    elif kind == "kayll_weak":
        value = root + SQRT3 * quart
        flags = ("+O(1) suppressed",)
    elif kind == "thin":
        if ell is None or ell < 1:
            raise ValueError("thin bound needs ell >= 1")
        N = ell * n
        value = math.sqrt(N) + _fourth_root(N) + 0.5
    else:
        raise ValueError(f"unknown bound kind {kind!r}")
    return BoundReport(kind, n, value, math.ceil(value) - 1,
                       ell if kind == "thin" else None,
                       gamma if kind == "main_theorem" else None, flags)


def weak_pair_sum_bound(n: int) -> int:
    """Largest k with ``k(k-1)/2 <= 2n - 3``: the pair sums of a weak Sidon set
    in [n] are distinct values in [3, 2n-1]."""
    if n < 2:
        return n
    k = 1
    while (k + 1) * k // 2 <= 2 * n - 3:
        k += 1
    return k


def johnson_min_ground(k: int, m: int, t: int) -> Fraction:
    """Minimum ground-set size ``k^2 m / (t m + k - t)`` for m k-sets meeting pairwise in <= t points."""
    if k < 1 or m < 1 or not 0 <= t <= k:
        raise ValueError("need k >= 1, m >= 1, 0 <= t <= k")
    return Fraction(k * k * m, t * m + k - t)


# --- sign certification ------------------------------------------------------

class IndeterminateSignError(ArithmeticError):
    """Interval evaluation could not decide a sign within the precision cap."""


Enclosure = tuple[Fraction, Fraction]
CoefficientEnclosure = Callable[[int], tuple[Enclosure, Enclosure, Enclosure]]


def _exact(a2, a1, a0) -> CoefficientEnclosure:
    c = tuple((Fraction(v), Fraction(v)) for v in (a2, a1, a0))
    return lambda bits: c


def _sign_at(m: int, coeffs: CoefficientEnclosure) -> int:
    """Sign of ``a2 m^2 + a1 m + a0`` at a positive integer, with escalating precision."""
    bits = START_BITS
    while True:
        (l2, h2), (l1, h1), (l0, h0) = coeffs(bits)
        lo = l2 * m * m + l1 * m + l0
        hi = h2 * m * m + h1 * m + h0
        if hi < 0:
            return -1
        if lo > 0:
            return 1
        if lo == hi == 0:
            return 0
        if bits >= MAX_BITS:
            raise IndeterminateSignError(
                f"f({m}) in [{float(lo):.3e}, {float(hi):.3e}] at {bits} fractional bits")
        bits *= 2


@dataclass(frozen=True)
class QuadraticWindow:
    a2: float
    a1: float
    a0: float
    roots: Optional[tuple[float, float]]
    chosen: Optional[int]


def _window(coeffs: CoefficientEnclosure) -> QuadraticWindow:
    (l2, h2), (l1, h1), (l0, h0) = coeffs(MAX_BITS // 2)
    a2, a1, a0 = (l2 + h2) / 2, (l1 + h1) / 2, (l0 + h0) / 2
    disc = a1 * a1 - 4 * a2 * a0
    if disc <= 0:
        return QuadraticWindow(float(a2), float(a1), float(a0), None, None)
    sq = math.sqrt(disc)
    m1 = (-float(a1) - sq) / (2 * float(a2))
    m2 = (-float(a1) + sq) / (2 * float(a2))
    # float roots only seed the search; every sign below is certified
    c = max(1, math.floor(m1) + 1)
    while c > 1 and _sign_at(c - 1, coeffs) < 0:
        c -= 1
    limit = max(c, math.ceil(m2)) + 1
    while c <= limit and _sign_at(c, coeffs) >= 0:
        c += 1
    chosen = c if c <= limit else None
    return QuadraticWindow(float(a2), float(a1), float(a0), (m1, m2), chosen)


def _check_hypotheses(a2, a1, a0, strict_a0=True):
    if not (a2 > 0 and a1 < 0 and (a0 > 0 if strict_a0 else a0 >= 0)):
        raise ValueError("need a2 > 0, a1 < 0, a0 > 0")


def quadratic_window(a2, a1, a0) -> QuadraticWindow:
    _check_hypotheses(a2, a1, a0)
    return _window(_exact(a2, a1, a0))


def integer_in_negative_window(a2, a1, a0) -> Optional[int]:
    """Smallest positive integer m with ``a2 m^2 + a1 m + a0 < 0``, or None.

    Coefficients are taken as exact rationals (floats included), so the sign
    test is exact.  When ``a1^2 - 4 a2 a0 - a2^2 > 0`` a result always exists.
    """
    return quadratic_window(a2, a1, a0).chosen


# --- translate-count feasibility --------------------------------------------

def _root_enclosure(N: int, bits: int) -> Enclosure:
    scale = 1 << bits
    lo = math.isqrt(N * scale * scale)
    hi = lo if lo * lo == N * scale * scale else lo + 1
    return Fraction(lo, scale), Fraction(hi, scale)


def _fourth_root_enclosure(N: int, bits: int) -> Enclosure:
    scale = 1 << bits
    X = N * scale ** 4
    lo = math.isqrt(math.isqrt(X))  # floor(X^(1/4))
    hi = lo if lo ** 4 == X else lo + 1
    return Fraction(lo, scale), Fraction(hi, scale)


def kappa_enclosure(n: int, ell: int, bits: int) -> Enclosure:
    """Rational bracket of ``sqrt(ell n) + (ell n)^(1/4) + 1/2``."""
    r_lo, r_hi = _root_enclosure(ell * n, bits)
    q_lo, q_hi = _fourth_root_enclosure(ell * n, bits)
    half = Fraction(1, 2)
    return r_lo + q_lo + half, r_hi + q_hi + half


def kappa(n: int, ell: int = 1) -> float:
    N = ell * n
    return math.sqrt(N) + _fourth_root(N) + 0.5


def _translate_coefficients(n: int, ell: int) -> CoefficientEnclosure:
    # f(x) = ell x^2 + (n ell - kappa^2 + kappa - 2 ell) x + (kappa - ell)(n - 1)
    def coeffs(bits):
        k_lo, k_hi = kappa_enclosure(n, ell, bits)
        a2 = (Fraction(ell), Fraction(ell))
        a1 = (n * ell - k_hi * k_hi + k_lo - 2 * ell, n * ell - k_lo * k_lo + k_hi - 2 * ell)
        a0 = ((k_lo - ell) * (n - 1), (k_hi - ell) * (n - 1))
        return a2, a1, a0
    return coeffs


def translate_window(n: int, ell: int = 1) -> QuadraticWindow:
    if not n >= ell >= 1:
        raise ValueError("need n >= ell >= 1")
    return _window(_translate_coefficients(n, ell))


def feasible_translate_count(n: int, ell: int = 1) -> int:
    """Smallest m with ``(n + m - 1)(ell m + kappa - ell) < kappa^2 m``, sign-certified."""
    m = translate_window(n, ell).chosen
    if m is None:
        raise ArithmeticError(f"no feasible translate count for n={n}, ell={ell}")
    return m


def translate_count_certified(n: int, ell: int, m: int) -> bool:
    """Certified check that m lies strictly inside the negative window."""
    return _sign_at(m, _translate_coefficients(n, ell)) < 0


# --- parameter feasibility ---------------------------------------------------

@dataclass(frozen=True)
class FeasibilityParams:
    alpha: float
    beta: float
    eps: float
    gamma: float
    mode: str = "sidon"

    def __post_init__(self):
        if self.mode not in ("sidon", "weak"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 < 2 * self.beta < self.alpha < 1:
            raise ValueError("need 0 < 2 beta < alpha < 1")
        if not (0 < self.eps < 1 and 0 < self.gamma < 1):
            raise ValueError("eps and gamma must lie in (0, 1)")


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    lhs_min: float
    margin: float
    defect_term: float
    slack_term: float


def parameter_feasibility(params: FeasibilityParams) -> FeasibilityReport:
    a, b, e = params.alpha, params.beta, params.eps
    if params.mode == "sidon":
        defect_term = e * e * b
        slack_term = (2 * (1 - a - 2 * e) ** 2 * (a - 2 * b) - a * a * (1 - a)) / (2 * (1 - a) ** 2)
    else:
        w = SQRT3 - a
        defect_term = b * e * e
        slack_term = (SQRT3 - a - 2 * e) ** 2 * (a - 2 * b) / w ** 2 - a * a / (2 * w)
    lhs = min(defect_term, slack_term)
    return FeasibilityReport(lhs > params.gamma, lhs, lhs - params.gamma, defect_term, slack_term)
