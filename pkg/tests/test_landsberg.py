"""Regime classification, closed forms, root solvers, and the C(alpha) curve."""

from fractions import Fraction as F

import pytest

from takagi import evaluate as ev
from takagi import landsberg as lb
from takagi import scalars as sc

SQRT2 = sc.algebraic([-2, 0, 1], 1, 2)
QUARTIC = sc.algebraic([1, -1, -1, -1, 1], F(1, 2), 1)


def dec(x, digits=12):
    return sc.scalar_decimal(x, digits)


# ---------------------------------------------------------------------------
# root solvers


def test_solve_xn_values():
    # x_1 is the negated golden ratio; the rest match the printed 5-decimal values
    x1 = lb.solve_xn(1).root
    neg_golden = sc.algebraic([-1, 1, 1], -2, -1)  # root of p(-x) for p = x^2-x-1
    assert sc.same_root(x1, neg_golden)
    printed = {2: "-1.29065", 3: "-1.19004", 4: "-1.14118", 5: "-1.11231"}
    for n, text in printed.items():
        approx = dec(lb.solve_xn(n).root, 6)
        assert approx.startswith(text), (n, approx)


def test_solve_xn_monotone_in_window():
    roots = [lb.solve_xn(n).root for n in range(1, 9)]
    for a, b in zip(roots, roots[1:]):
        assert sc.scalar_sign(sc.scalar_sub(b, a)).sign == 1
        assert sc.scalar_sign(sc.scalar_add(b, 1)).sign == -1
        assert sc.scalar_sign(sc.scalar_add(a, 2)).sign == 1


def test_solve_alpha_n():
    assert lb.solve_alpha_n(1) == sc.RationalScalar(F(1))
    a2 = lb.solve_alpha_n(2)
    assert dec(a2).startswith("0.61803398875")
    assert sc.scalar_sign(sc.eval_int_poly([1, -1, -1], a2)).sign == 0
    a3, a4 = lb.solve_alpha_n(3), lb.solve_alpha_n(4)
    assert sc.scalar_sign(sc.scalar_sub(a3, a2)).sign == -1
    assert sc.scalar_sign(sc.scalar_sub(a4, a3)).sign == -1


# ---------------------------------------------------------------------------
# regime classification


def test_classify_alpha_regimes():
    assert lb.classify_alpha(F(-3, 2)) == lb.AlphaRegime(lb.NEG_STEEP, 1)
    assert lb.classify_alpha(F(-199, 100)) == lb.AlphaRegime(lb.NEG_STEEP, 0)
    assert lb.classify_alpha(F(-1)).variant == lb.MIDDLE
    assert lb.classify_alpha(F(1, 2)).variant == lb.MIDDLE
    assert lb.classify_alpha(F(3, 4)).variant == lb.CRITICAL
    assert lb.classify_alpha(F(1)).variant == lb.CRITICAL
    assert lb.classify_alpha(SQRT2).variant == lb.POS_STEEP
    with pytest.raises(ev.DomainError):
        lb.classify_alpha(F(2))
    with pytest.raises(ev.DomainError):
        lb.classify_alpha(F(-2))


def test_classify_alpha_boundary_exact():
    x2 = lb.solve_xn(2).root
    regime = lb.classify_alpha(x2)
    assert regime == lb.AlphaRegime(lb.NEG_STEEP, 2, boundary=True)


def test_classify_alpha_unresolved_interval():
    close = sc.interval(F(-13, 10), F(-129, 100))  # straddles x_2
    with pytest.raises(sc.PrecisionError):
        lb.classify_alpha(close)


# ---------------------------------------------------------------------------
# maxima


def test_maxima_neg_steep_interior():
    r = lb.maxima(F(-3, 2))
    assert r.locations == (F(19, 40), F(21, 40))
    assert r.value_lo == r.value_hi == F(661, 1120)
    direct = ev.eval_periodic(ev.Geometric(sc.rational(F(-3, 2))), F(19, 40))
    assert direct.value == F(661, 1120)


def test_maxima_closed_form_vs_printed_form():
    """The published one-line maximum uses a minus sign that its own proof
    does not support; direct orbit evaluation certifies the plus sign."""
    alpha = F(-9, 5)
    n = 0  # -1.8 lies in the outermost window

    def derivation_form(a):  # resolved reading: correction added
        num = 3 * a ** (2 * n + 3) + a**3 - 4 * a
        den = (1 - a) * (a**2 - 4)
        return lb.t_location(n) + F(1, 10 * 4**n) * num / den

    def printed_form(a):  # the minus-sign reading, kept for the record
        num = 3 * a ** (2 * n + 3) + a**3 - 4 * a
        den = (1 - a) * (a**2 - 4)
        return lb.t_location(n) - F(1, 10 * 4**n) * num / den

    direct = ev.eval_periodic(ev.Geometric(sc.rational(alpha)), F(2, 5)).value
    assert direct == derivation_form(alpha) == F(22, 19)
    assert printed_form(alpha) != direct
    assert printed_form(alpha) < 0  # visibly impossible for a maximum
    lib = lb.negsteep_max_value(sc.rational(alpha), n)
    assert lib.value == direct


def test_maxima_boundary_four_locations():
    x1 = lb.solve_xn(1).root
    r = lb.maxima(x1)
    assert r.cardinality.count == 4
    assert r.locations == (F(2, 5), F(19, 40), F(21, 40), F(3, 5))


def test_maxima_middle_and_pos_steep():
    r = lb.maxima(F(-1, 2))
    assert r.locations == (F(1, 2),) and r.value_lo == r.value_hi == F(1, 2)
    r = lb.maxima(SQRT2)
    assert r.locations == (F(1, 3), F(2, 3))
    target = sc.scalar_div(sc.scalar_add(SQRT2, F(2)), sc.rational(3))
    lo, hi = sc.scalar_enclosure(target, F(1, 10**13))
    assert r.value_lo <= hi and lo <= r.value_hi


def test_maxima_critical_quartic():
    r = lb.maxima(QUARTIC)
    assert r.smallest.exact == F(14, 31)
    assert r.largest.exact == F(451, 992)
    assert r.cardinality.hausdorff_dim == F(1, 5)


def test_maxima_deep_window_closed_form():
    r = lb.maxima(F(-101, 100))
    assert r.cardinality.count == 2
    n = lb.classify_alpha(F(-101, 100)).n
    assert r.smallest.exact == lb.t_location(n)
    direct = ev.eval_periodic(ev.Geometric(sc.rational(F(-101, 100))), r.smallest.exact)
    assert r.value_lo <= direct.value <= r.value_hi


def test_maxima_values_exceed_half_in_negative_regime():
    for alpha in (F(-19, 10), F(-3, 2), F(-13, 10), F(-11, 10)):
        r = lb.maxima(alpha)
        assert r.value_lo > F(1, 2)


# ---------------------------------------------------------------------------
# minima


def test_minima_cases():
    r = lb.minima(F(-3, 2))
    assert r.locations == (F(1, 5), F(4, 5))
    assert r.value_lo == r.value_hi == F(-8, 35)
    r = lb.minima(F(-1))
    assert r.cardinality.kind == "continuum"
    assert r.cardinality.hausdorff_dim == F(1, 2)
    assert r.value_lo <= 0 <= r.value_hi
    for alpha in (F(-1, 2), F(1), SQRT2):
        r = lb.minima(alpha)
        assert r.locations == (F(0), F(1))
        assert r.value_lo == r.value_hi == 0


def test_minima_value_formula():
    v = lb.minima_value_neg(sc.rational(F(-3, 2)))
    assert v.value == F(-8, 35)


# ---------------------------------------------------------------------------
# tabor C


def test_tabor_c_special_and_domain():
    c1 = lb.tabor_C(sc.rational(1))
    assert (c1.lo, c1.hi) == (F(2, 3), F(2, 3))
    with pytest.raises(ev.DomainError):
        lb.tabor_C(sc.rational(F(1, 2)))
    with pytest.raises(ev.DomainError):
        lb.tabor_C(SQRT2)


def test_tabor_c_matches_maximum_at_alpha_n():
    for n in (2, 3):
        a = lb.solve_alpha_n(n)
        cv = lb.tabor_C(a, F(1, 10**10))
        r = lb.maxima(a)
        assert not (cv.hi < r.value_lo or r.value_hi < cv.lo), n


def test_tabor_c_differs_from_maximum_at_quartic():
    cv = lb.tabor_C(QUARTIC, F(1, 10**8))
    assert abs((cv.lo + cv.hi) / 2 - F("0.508008")) < F(1, 10**6)
    r = lb.maxima(QUARTIC)
    assert cv.hi < r.value_lo  # enclosures disjoint: C(alpha) underestimates


# ---------------------------------------------------------------------------
# tau curve


def test_tau_points():
    assert lb.tau_point(F(-19, 10)).sharp == F(2, 5)
    assert lb.tau_point(F(0)).sharp == F(1, 2)
    assert lb.tau_point(F(3, 2)).sharp == F(1, 3)
    x1 = lb.solve_xn(1).root
    tp = lb.tau_point(x1)
    assert (tp.sharp, tp.flat) == (F(2, 5), F(19, 40))
    tp = lb.tau_point(F(7, 10))
    assert not tp.exact and abs(tp.sharp - tp.flat) < F(1, 2**40)


def test_tau_curve_grid_and_uniqueness_regions():
    grid = [F(-3, 2), F(-1, 2), F(0), F(1, 4), F(6, 5), F(19, 10)]
    points = lb.tau_curve(grid)
    assert len(points) == 6
    for tp in points:
        if tp.regime in (lb.MIDDLE, lb.POS_STEEP, lb.NEG_STEEP):
            assert tp.sharp == tp.flat  # unique maximizer off the critical zone


def test_default_grid():
    g = lb.default_grid(1999)
    assert len(g) == 1999
    assert g[0] > -2 and g[-1] < 2
    assert g[999] == 0


def test_grid_maxima_dominate_samples():
    # sampled global-maximum property: the reported value enclosure contains
    # the orbit evaluation at each reported maximizer and dominates random
    # evaluations elsewhere
    import random

    rng = random.Random(99)
    grid = [F(-39, 20) + F(i, 7) for i in range(27)]  # 27 rationals across (-2,2)
    for alpha in grid:
        if not (-2 < alpha < 2):
            continue
        c = ev.Geometric(sc.rational(alpha))
        r = lb.maxima(alpha, depth=48)
        locs = r.locations or (
            r.smallest.exact if r.smallest.exact is not None else r.smallest.approx,
        )
        for t in locs:
            lo, hi = sc.scalar_enclosure(ev.eval_periodic(c, t), F(1, 2**60))
            margin = max(r.smallest.error, F(1, 2**40))
            assert lo <= r.value_hi + margin and r.value_lo - margin <= hi, (alpha, t)
        for _ in range(8):
            t = F(rng.randint(0, 840), 840)
            lo, hi = sc.scalar_enclosure(ev.eval_periodic(c, t), F(1, 2**40))
            assert lo <= r.value_hi + F(1, 2**30), (alpha, t)


def test_critical_maximizers_never_dyadic():
    for alpha in (QUARTIC, lb.solve_alpha_n(2), lb.solve_alpha_n(5)):
        r = lb.maxima(alpha)
        for t in (r.smallest.exact, r.largest.exact):
            assert t is not None
            assert t.denominator & (t.denominator - 1) != 0  # not a power of two
