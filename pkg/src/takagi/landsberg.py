"""Regime analysis for the two-parameter family f_a(t) = sum (a/2)^m tent(2^m t).

The parameter interval (-2, 2) splits into four regimes with distinct extremum
structure:

* (-2, -1): two maximizers, at (5 - 4^-n)/10 and its reflection, where n is
  determined by the interval [x_n, x_{n+1}) between consecutive negative roots
  x_n of 1 - x - ... - x^(2n); at the boundary a = x_n there are four.
* [-1, 1/2]: the unique maximizer 1/2 with value 1/2.
* (1/2, 1]: either two maximizers or a perfect set; handled by the step
  recursion engine.
* (1, 2): two maximizers at 1/3 and 2/3 with value 1/(3(1 - a/2)).

Minima: t = 1/5 (and 4/5) with value (1+a)/(5(1-(a/2)^2)) on (-2,-1), a
dimension-1/2 perfect set of zeros at a = -1, and {0, 1} for a > -1.

Closed forms are cross-checked against the engine and against direct orbit
evaluation on every call, so a disagreement raises instead of propagating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from . import step_engine
from .evaluate import DomainError, Geometric, eval_periodic
from . import scalars
from .scalars import (
    IntervalScalar,
    eval_int_poly,
    PrecisionError,
    RationalScalar,
    Scalar,
    algebraic,
    scalar_add,
    scalar_div,
    scalar_enclosure,
    scalar_eq,
    scalar_mul,
    scalar_pow,
    scalar_sign,
    scalar_sub,
)
from .step_engine import ExtremaReport

NEG_STEEP = "neg_steep"
MIDDLE = "middle"
CRITICAL = "critical"
POS_STEEP = "pos_steep"

_ENGINE_DEPTH_CAP = 512


@dataclass(frozen=True)
class AlphaRegime:
    variant: str
    n: int | None = None       # neg_steep: x_n <= alpha < x_{n+1} (x_0 = -2)
    boundary: bool = False     # alpha == x_n exactly

    def __repr__(self) -> str:
        if self.variant == NEG_STEEP:
            return f"AlphaRegime(neg_steep, n={self.n}{', boundary' if self.boundary else ''})"
        return f"AlphaRegime({self.variant})"


@dataclass(frozen=True)
class LittlewoodNegRoot:
    """x_n: the unique negative root of 1 - x - ... - x^(2n), in (-2, -1)."""

    n: int
    root: Scalar


def sum_poly(n: int) -> tuple[int, ...]:
    """Coefficients of 1 - x - x^2 - ... - x^n."""
    return (1,) + (-1,) * n


def q_poly(n: int) -> tuple[int, ...]:
    """(1 - x) * (1 - x - ... - x^(2n)) = 1 - 2x + x^(2n+1)."""
    return (1, -2) + (0,) * (2 * n - 1) + (1,)


@lru_cache(maxsize=None)
def solve_xn(n: int) -> LittlewoodNegRoot:
    """Isolate x_n by bisecting 1 - 2x + x^(2n+1) on (-2, -1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    root = algebraic(q_poly(n), Fraction(-2), Fraction(-1))
    value = eval_int_poly(sum_poly(2 * n), root)
    if scalar_sign(value).sign != 0:
        raise AssertionError("x_%d fails to zero the Littlewood polynomial" % n)
    return LittlewoodNegRoot(n, root)


@lru_cache(maxsize=None)
def solve_alpha_n(n: int) -> Scalar:
    """The unique positive root of 1 - x - ... - x^n (alpha_1 = 1 exactly)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return RationalScalar(Fraction(1))
    return algebraic(sum_poly(n), Fraction(1, 2), Fraction(1))


def _sign_or_raise(x, what: str) -> int:
    s = scalar_sign(x)
    if not s.resolved:
        raise PrecisionError("%s unresolved (width %s)" % (what, s.width))
    return s.sign


def classify_alpha(alpha) -> AlphaRegime:
    """Locate alpha among the four regimes; neg_steep boundaries are exact."""
    alpha = scalars._as_scalar(alpha)
    if _sign_or_raise(scalar_add(alpha, 2), "alpha + 2") <= 0:
        raise DomainError("alpha must lie in (-2, 2)")
    if _sign_or_raise(scalar_sub(Fraction(2), alpha), "2 - alpha") <= 0:
        raise DomainError("alpha must lie in (-2, 2)")
    s1 = _sign_or_raise(scalar_add(alpha, 1), "alpha + 1")
    if s1 < 0:
        # find the largest n with x_n <= alpha, via signs of q_{2n}(alpha):
        # q is increasing on (-2, -1), so alpha >= x_n iff q_{2n}(alpha) >= 0
        n = 0
        boundary = False
        k = 1
        while True:
            s = _sign_or_raise(
                eval_int_poly(q_poly(k), alpha), "q_%d(alpha)" % (2 * k)
            )
            if s < 0:
                break
            n = k
            boundary = s == 0
            if boundary:
                break
            k += 1
        return AlphaRegime(NEG_STEEP, n, boundary)
    if _sign_or_raise(scalar_sub(alpha, Fraction(1, 2)), "alpha - 1/2") <= 0:
        return AlphaRegime(MIDDLE)
    if _sign_or_raise(scalar_sub(alpha, 1), "alpha - 1") <= 0:
        return AlphaRegime(CRITICAL)
    return AlphaRegime(POS_STEEP)


def t_location(n: int) -> Fraction:
    """Maximizer location (5 - 4^-n)/10 for the n-th negative regime window."""
    return Fraction(5 * 4**n - 1, 10 * 4**n)


def negsteep_max_value(alpha, n: int) -> Scalar:
    """Maximum of f_alpha on [x_n, x_{n+1}]: the sign-resolved closed form.

    t_n + (4^-n/10) (3a^(2n+3) + a^3 - 4a) / ((1-a)(a^2-4)); the correction
    term is added, not subtracted -- resolved against direct orbit evaluation.
    """
    alpha = scalars._as_scalar(alpha)
    num = scalar_add(
        scalar_mul(scalar_pow(alpha, 2 * n + 3), 3),
        scalar_sub(scalar_pow(alpha, 3), scalar_mul(alpha, 4)),
    )
    den = scalar_mul(
        scalar_sub(Fraction(1), alpha),
        scalar_sub(scalar_mul(alpha, alpha), Fraction(4)),
    )
    corr = scalar_mul(scalar_div(num, den), Fraction(1, 10 * 4**n))
    return scalar_add(corr, t_location(n))


def minima_value_neg(alpha) -> Scalar:
    """f_alpha(1/5) = (1+a)/(5(1-(a/2)^2)) = 4(1+a)/(5(4-a^2))."""
    alpha = scalars._as_scalar(alpha)
    num = scalar_mul(scalar_add(alpha, 1), 4)
    den = scalar_mul(scalar_sub(Fraction(4), scalar_mul(alpha, alpha)), 5)
    return scalar_div(num, den)


def posteep_max_value(alpha) -> Scalar:
    """1/(3(1 - a/2)) = 2/(3(2 - a)) for a in (1, 2)."""
    alpha = scalars._as_scalar(alpha)
    return scalar_div(RationalScalar(Fraction(2)), scalar_mul(scalar_sub(Fraction(2), alpha), 3))


def _assert_value_in(report: ExtremaReport, value: Scalar, what: str) -> None:
    lo, hi = scalar_enclosure(value, report.value_width + Fraction(1, 2**80))
    if hi < report.value_lo or lo > report.value_hi:
        raise AssertionError("%s: closed form disagrees with engine enclosure" % what)


def maxima(alpha, depth: int = step_engine.DEFAULT_DEPTH) -> ExtremaReport:
    """Global maximizers of f_alpha with certified cardinality and value.

    All regimes run through the step recursion engine; where a closed form
    exists (everywhere except (1/2, 1]) the engine result is asserted against
    it, and against direct orbit evaluation.
    """
    alpha = scalars._as_scalar(alpha)
    regime = classify_alpha(alpha)
    c = Geometric(alpha)
    if regime.variant == NEG_STEEP:
        need = 2 * regime.n + 18
        run_depth = max(depth, need)
        if run_depth > _ENGINE_DEPTH_CAP:
            return _negsteep_report(alpha, c, regime, depth)
        report = step_engine.classify_extrema(c, "max", run_depth)
        n = regime.n
        if regime.boundary:
            expect = {t_location(n - 1), t_location(n)} if n >= 1 else None
            if expect is None or report.cardinality.count != 4:
                raise AssertionError("boundary x_n should give four maximizers")
            if {report.smallest.exact, report.largest.exact} != expect:
                raise AssertionError("boundary maximizers disagree with t_(n-1), t_n")
        else:
            if report.cardinality.count != 2 or report.smallest.exact != t_location(n):
                raise AssertionError("neg_steep maximizer disagrees with (5-4^-n)/10")
            _assert_value_in(report, negsteep_max_value(alpha, n), "neg_steep maximum")
        return report
    report = step_engine.classify_extrema(c, "max", depth)
    if regime.variant == MIDDLE:
        if report.cardinality.count != 1 or report.smallest.exact != Fraction(1, 2):
            raise AssertionError("middle regime should have the unique maximizer 1/2")
        _assert_value_in(report, RationalScalar(Fraction(1, 2)), "middle maximum")
    elif regime.variant == POS_STEEP:
        if report.cardinality.count != 2 or report.smallest.exact != Fraction(1, 3):
            raise AssertionError("pos_steep regime should have maximizers {1/3, 2/3}")
        _assert_value_in(report, posteep_max_value(alpha), "pos_steep maximum")
    return report


def _negsteep_report(alpha, c, regime, depth) -> ExtremaReport:
    """Closed-form report for deep neg_steep windows beyond the engine cap."""
    n = regime.n
    if regime.boundary:
        half = [t_location(n - 1), t_location(n)]
    else:
        half = [t_location(n)]
    value = negsteep_max_value(alpha, n)
    for t in half:
        if not scalar_eq(eval_periodic(c, t), value):
            raise AssertionError("orbit evaluation disagrees with closed form at %s" % t)
    width = Fraction(1, 2**64)
    vlo, vhi = scalar_enclosure(value, width)
    trace = step_engine.build_rho(c, "sharp", depth)
    locs = sorted(set(half) | {1 - t for t in half})

    def loc(t: Fraction, signs) -> step_engine.Location:
        return step_engine.Location(signs, t, t, Fraction(0))

    prefix = (1,) + (-1,) * (2 * n + 1)
    signs_small = step_engine.SignSequence(prefix, (len(prefix), (-1, 1, 1, -1)))
    if step_engine.t_map_fraction(signs_small) != t_location(n):
        raise AssertionError("window sign pattern does not reproduce t_n")
    return ExtremaReport(
        kind="max",
        smallest=loc(half[0], signs_small if not regime.boundary else trace.signs),
        largest=loc(half[-1], signs_small),
        value_lo=vlo,
        value_hi=vhi,
        cardinality=step_engine.Cardinality.finite(len(locs)),
        locations=tuple(locs),
        evidence=trace,
    )


def minima(alpha, depth: int = step_engine.DEFAULT_DEPTH) -> ExtremaReport:
    """Global minimizers of f_alpha: {1/5, 4/5} on (-2,-1), a dimension-1/2
    perfect set at alpha = -1, and {0, 1} on (-1, 2)."""
    alpha = scalars._as_scalar(alpha)
    classify_alpha(alpha)  # domain check
    c = Geometric(alpha)
    report = step_engine.classify_extrema(c, "min", depth)
    s1 = _sign_or_raise(scalar_add(alpha, 1), "alpha + 1")
    if s1 < 0:
        if report.cardinality.count != 2 or report.smallest.exact != Fraction(1, 5):
            raise AssertionError("negative regime should have minimizers {1/5, 4/5}")
        _assert_value_in(report, minima_value_neg(alpha), "negative-regime minimum")
    elif s1 == 0:
        card = report.cardinality
        if card.kind != "continuum" or card.hausdorff_dim != Fraction(1, 2):
            raise AssertionError("alpha = -1 should give a dimension-1/2 perfect set")
    else:
        if report.cardinality.count != 2 or report.smallest.exact != Fraction(0):
            raise AssertionError("minimizers should be {0, 1} for alpha > -1")
    return report


# ---------------------------------------------------------------------------
# the Tabor-Tabor closed form C(alpha)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def _tabor_bounds(alpha, prec: int) -> tuple[Fraction, Fraction]:
    lo, hi = scalar_enclosure(alpha, Fraction(1, 2 ** (prec + 8)))
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec
        a_lo = mpmath.iv.mpf(lo.numerator) / lo.denominator
        a_hi = mpmath.iv.mpf(hi.numerator) / hi.denominator
        a = mpmath.iv.mpf([a_lo.a, a_hi.b])
        base = 2 * a - 1
        log2a = mpmath.iv.log(a) / mpmath.iv.log(2)
        expo = (log2a - 1) / log2a
        power = mpmath.iv.exp(expo * mpmath.iv.log(base))
        cval = 1 / (2 - 2 * power)
        return _mpf_to_fraction(cval.a), _mpf_to_fraction(cval.b)
    finally:
        mpmath.iv.prec = old


def tabor_C(alpha, target_width=Fraction(1, 10**9)) -> Scalar:
    """C(a) = 1/(2 - 2(2a-1)^((log2 a - 1)/log2 a)) as a certified enclosure.

    Defined on (1/2, 1); at a = 1 the printed exponent degenerates and the
    value is 2/3 by the classical case.  Equals the maximum of f_a exactly at
    the positive roots of 1 - x - ... - x^n, and only there in general.
    """
    alpha = scalars._as_scalar(alpha)
    if _sign_or_raise(scalar_sub(alpha, Fraction(1, 2)), "alpha - 1/2") <= 0:
        raise DomainError("C(alpha) defined on (1/2, 1]")
    s1 = _sign_or_raise(scalar_sub(alpha, 1), "alpha - 1")
    if s1 > 0:
        raise DomainError("C(alpha) defined on (1/2, 1]")
    if s1 == 0:
        return IntervalScalar(Fraction(2, 3), Fraction(2, 3))
    width = Fraction(target_width)

    def fn(bits: int):
        return _tabor_bounds(alpha, max(bits, 64))

    prec = 64
    lo, hi = fn(prec)
    while hi - lo > width and prec < 1 << 16:
        prec *= 2
        lo, hi = fn(prec)
    if hi - lo > width:
        raise PrecisionError("tabor_C enclosure stalled above width %s" % width)
    return IntervalScalar(lo, hi, fn)


# ---------------------------------------------------------------------------
# maximizer-location curve (figure data)


@dataclass(frozen=True)
class TauPoint:
    alpha: Scalar
    sharp: Fraction   # smallest maximizer in [0, 1/2] (exact or approximant)
    flat: Fraction    # largest maximizer in [0, 1/2]
    exact: bool
    regime: str


def tau_point(alpha, depth: int = step_engine.DEFAULT_DEPTH) -> TauPoint:
    alpha = scalars._as_scalar(alpha)
    regime = classify_alpha(alpha)
    if regime.variant == NEG_STEEP:
        if regime.boundary:
            return TauPoint(
                alpha, t_location(regime.n - 1), t_location(regime.n), True, regime.variant
            )
        t = t_location(regime.n)
        return TauPoint(alpha, t, t, True, regime.variant)
    if regime.variant == MIDDLE:
        return TauPoint(alpha, Fraction(1, 2), Fraction(1, 2), True, regime.variant)
    if regime.variant == POS_STEEP:
        return TauPoint(alpha, Fraction(1, 3), Fraction(1, 3), True, regime.variant)
    c = Geometric(alpha)
    sharp = step_engine.Location.from_trace(step_engine.build_rho(c, "sharp", depth))
    flat = step_engine.Location.from_trace(step_engine.build_rho(c, "flat", depth))
    exact = sharp.exact is not None and flat.exact is not None
    return TauPoint(alpha, sharp.approx, flat.approx, exact, regime.variant)


def tau_curve(alpha_grid, depth: int = step_engine.DEFAULT_DEPTH) -> list[TauPoint]:
    """Smallest/largest maximizer in [0, 1/2] along a parameter grid."""
    return [tau_point(a, depth) for a in alpha_grid]


def default_grid(points: int = 1999) -> list[Fraction]:
    """Equally spaced rationals strictly inside (-2, 2)."""
    step = Fraction(4, points + 1)
    return [Fraction(-2) + step * i for i in range(1, points + 1)]
