"""Evaluation of Takagi-class functions and Rademacher expansions.

A Takagi-class function is f(t) = sum_m c_m * tent(2^m t) for an absolutely
summable coefficient sequence (c_m), with tent(t) the distance from t to the
nearest integer.  This module evaluates such functions exactly at rationals
(via the eventually periodic doubling orbit), with certified enclosures
elsewhere, and converts between points in [0, 1] and their +-1 Rademacher
digit sequences.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import scalars
from .scalars import (
    IntervalScalar,
    RationalScalar,
    Scalar,
    scalar_add,
    scalar_enclosure,
    scalar_inverse,
    scalar_mul,
    scalar_pow,
    scalar_sign,
)

ORBIT_CAP = 10**6


class DomainError(ValueError):
    """Argument outside the function's domain."""


class InsufficientPrefixError(ValueError):
    """A sign-sequence prefix is too short for the requested accuracy."""


# ---------------------------------------------------------------------------
# basic types


@dataclass(frozen=True)
class DyadicRational:
    """k / 2**n in [0, 1], stored reduced (k odd, or n == 0)."""

    k: int
    n: int

    def __post_init__(self):
        if not (0 <= self.k <= 2**self.n):
            raise ValueError("dyadic rational outside [0, 1]")
        if self.n > 0 and self.k % 2 == 0:
            raise ValueError("dyadic rational not reduced")

    @staticmethod
    def from_fraction(x: Fraction) -> "DyadicRational":
        num, den = x.numerator, x.denominator
        n = den.bit_length() - 1
        if den != 2**n:
            raise ValueError("%s is not dyadic" % x)
        return DyadicRational(num, n)

    def to_fraction(self) -> Fraction:
        return Fraction(self.k, 2**self.n)

    def to_json_dict(self) -> dict:
        return {"k": self.k, "n": self.n}

    def __repr__(self) -> str:
        return f"DyadicRational({self.k}/2^{self.n})"


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class SignSequence:
    """A +-1 sequence given by a finite prefix plus an optional periodic tail.

    ``period = (start, block)`` means entry n equals block[(n - start) % len(block)]
    for every n >= start; start must not exceed the prefix length, and the
    prefix must agree with the periodic description where they overlap.
    """

    prefix: tuple[int, ...]
    period: tuple[int, tuple[int, ...]] | None = None

    def __post_init__(self):
        if any(v not in (-1, 1) for v in self.prefix):
            raise ValueError("sign sequence entries must be +-1")
        if self.period is not None:
            start, block = self.period
            if not block or any(v not in (-1, 1) for v in block):
                raise ValueError("period block must be a nonempty +-1 tuple")
            if start > len(self.prefix):
                raise ValueError("period start beyond known prefix")
            for n in range(start, len(self.prefix)):
                if self.prefix[n] != block[(n - start) % len(block)]:
                    raise ValueError("prefix disagrees with period descriptor")

    @property
    def eventually_periodic(self) -> bool:
        return self.period is not None

    def determined_upto(self) -> int | None:
        """Exclusive bound on known indices; None when fully determined."""
        return None if self.period is not None else len(self.prefix)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        if n < len(self.prefix):
            return self.prefix[n]
        if self.period is None:
            raise IndexError("sign sequence only determined up to %d" % len(self.prefix))
        start, block = self.period
        return block[(n - start) % len(block)]

    def negated(self) -> "SignSequence":
        per = None
        if self.period is not None:
            per = (self.period[0], tuple(-v for v in self.period[1]))
        return SignSequence(tuple(-v for v in self.prefix), per)

    def take(self, n: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(n))


# ---------------------------------------------------------------------------
# coefficient sequences


class CoefficientSequence(ABC):
    """Source of coefficients c_m with a certified l1 tail bound."""

    @abstractmethod
    def coefficient(self, m: int) -> Scalar:
        ...

    @abstractmethod
    def tail_bound(self, n: int) -> Fraction:
        """Upper bound on sum_{m>n} |c_m|, nonincreasing in n and -> 0."""

    def weight(self, m: int) -> Scalar:
        """2^m c_m, the slope increment used by the step recursion."""
        return scalar_mul(self.coefficient(m), Fraction(2**m))

    # Optional structure hooks used by the step engine's certificates.

    def geometric_ratio(self) -> Scalar | None:
        """alpha such that c_m = (alpha/2)^m, when the sequence is geometric."""
        return None

    def support_end(self) -> int | None:
        """Largest index with c_m != 0, for finitely supported sequences."""
        return None

    def weights_increasing_from(self) -> int | None:
        """Index M with 0 < 2^m c_m < 2^(m+1) c_(m+1) for all m >= M, if known."""
        return None

    def residue_tail_enclosures(self, m0: int, p: int) -> list[tuple[Fraction, Fraction]] | None:
        """Enclosures of S_j = sum_{k>=0} c_{m0+j+kp} for j = 0..p-1, if available.

        Lets slowly decaying sequences be summed against a periodic tent orbit
        without touching astronomically many terms.
        """
        return None


class Geometric(CoefficientSequence):
    """c_m = (alpha/2)^m for a fixed |alpha| < 2."""

    def __init__(self, alpha):
        self.alpha = scalars._as_scalar(alpha)
        if scalar_sign(scalar_add(self.alpha, Fraction(2))).sign != 1:
            raise DomainError("alpha must exceed -2")
        if scalar_sign(scalars.scalar_sub(Fraction(2), self.alpha)).sign != 1:
            raise DomainError("alpha must be below 2")
        self._ratio = scalar_mul(self.alpha, Fraction(1, 2))

    def coefficient(self, m: int) -> Scalar:
        return scalar_pow(self._ratio, m)

    def weight(self, m: int) -> Scalar:
        return scalar_pow(self.alpha, m)

    def tail_bound(self, n: int) -> Fraction:
        lo, hi = scalar_enclosure(self._ratio, Fraction(1, 2**16))
        q = max(abs(lo), abs(hi))
        if q >= 1:
            raise DomainError("geometric ratio not inside (-1, 1)")
        return q ** (n + 1) / (1 - q)

    def geometric_ratio(self) -> Scalar:
        return self.alpha

    def __repr__(self) -> str:
        return f"Geometric({self.alpha})"


class PowerSquared(CoefficientSequence):
    """c_m = 1/(m+1)^2."""

    def coefficient(self, m: int) -> RationalScalar:
        return RationalScalar(Fraction(1, (m + 1) ** 2))

    def tail_bound(self, n: int) -> Fraction:
        # sum_{m>n} 1/(m+1)^2 < integral_{n+1}^inf dx/x^2 = 1/(n+1)
        return Fraction(1, n + 1)

    def weights_increasing_from(self) -> int:
        # 2^(m+1)/(m+2)^2 > 2^m/(m+1)^2 iff 2(m+1)^2 > (m+2)^2, true for m >= 2
        return 2

    def residue_tail_enclosures(self, m0: int, p: int) -> list[tuple[Fraction, Fraction]]:
        # Euler-Maclaurin for g(k) = 1/(a+pk)^2 through the B_4 term; the
        # remainder is bounded by |g'''(0)|/720 = p^3/(30 a^5)
        out = []
        for j in range(p):
            a = m0 + j + 1
            center = (
                Fraction(1, p * a)
                + Fraction(1, 2 * a**2)
                + Fraction(p, 6 * a**3)
                - Fraction(p**3, 30 * a**5)
            )
            rad = Fraction(p**3, 30 * a**5)
            out.append((center - rad, center + rad))
        return out

    def __repr__(self) -> str:
        return "PowerSquared()"


class FiniteSupport(CoefficientSequence):
    def __init__(self, values: Sequence):
        self.values = tuple(scalars._as_scalar(v) for v in values)

    def coefficient(self, m: int) -> Scalar:
        if m < len(self.values):
            return self.values[m]
        return RationalScalar(Fraction(0))

    def tail_bound(self, n: int) -> Fraction:
        total = Fraction(0)
        for m in range(n + 1, len(self.values)):
            lo, hi = scalar_enclosure(self.values[m], Fraction(1, 2**72))
            total += max(abs(lo), abs(hi))
        return total

    def support_end(self) -> int:
        return len(self.values) - 1

    def __repr__(self) -> str:
        return f"FiniteSupport({[str(v) for v in self.values]})"


class Custom(CoefficientSequence):
    """Caller-supplied coefficients with a caller-supplied (and trusted) tail bound.

    ``tail_bound_fn(n)`` must really bound sum_{m>n} |c_m|; nothing here can
    check it, and every enclosure downstream inherits its correctness.
    """

    def __init__(self, coefficient_fn, tail_bound_fn, increasing_from=None):
        self._coeff = coefficient_fn
        self._tail = tail_bound_fn
        self._increasing_from = increasing_from

    def coefficient(self, m: int) -> Scalar:
        return scalars._as_scalar(self._coeff(m))

    def tail_bound(self, n: int) -> Fraction:
        return Fraction(self._tail(n))

    def weights_increasing_from(self) -> int | None:
        return self._increasing_from


# ---------------------------------------------------------------------------
# the tent map and function evaluation


def tent(t) -> Fraction:
    """Distance from t to the nearest integer, exactly."""
    t = Fraction(t)
    x = t - (t.numerator // t.denominator)
    return min(x, 1 - x)


def _check_unit_interval(t: Fraction) -> Fraction:
    t = Fraction(t)
    if not (0 <= t <= 1):
        raise DomainError("t=%s outside [0, 1]" % t)
    return t


def eval_truncated(c: CoefficientSequence, n: int, t) -> Scalar:
    """Exact value of f_n(t) = sum_{m<=n} c_m tent(2^m t) at rational t."""
    t = _check_unit_interval(t)
    total: Scalar = RationalScalar(Fraction(0))
    pw = Fraction(1)
    for m in range(n + 1):
        phi = tent(pw * t)
        if phi:
            total = scalar_add(total, scalar_mul(c.coefficient(m), phi))
        pw *= 2
    return total


def _doubling_orbit(t: Fraction) -> tuple[list[Fraction], int]:
    """Tent values along the doubling orbit of t mod 1; returns (values, preperiod).

    The orbit of a rational becomes periodic within its (odd-part) denominator;
    the returned list covers preperiod + one full period.
    """
    u = t - (t.numerator // t.denominator)
    seen: dict[Fraction, int] = {}
    phis: list[Fraction] = []
    while u not in seen:
        seen[u] = len(phis)
        phis.append(min(u, 1 - u))
        u = 2 * u
        if u >= 1:
            u -= 1
        if len(phis) > ORBIT_CAP:
            raise DomainError("doubling orbit exceeds cap")
    return phis, seen[u]


def eval_periodic(c: Geometric, t) -> Scalar:
    """Exact closed-form value of a Takagi-Landsberg function at rational t.

    Splits the doubling orbit of t into preperiod and period and sums the
    periodic part as a geometric series in (alpha/2)^p.
    """
    t = _check_unit_interval(t)
    if not isinstance(c, Geometric):
        raise TypeError("eval_periodic requires a Geometric sequence")
    try:
        phis, s = _doubling_orbit(t)
    except DomainError:
        return eval_series(c, t, Fraction(1, 2**96))
    r = c._ratio
    p = len(phis) - s
    total: Scalar = RationalScalar(Fraction(0))
    for k in range(s):
        if phis[k]:
            total = scalar_add(total, scalar_mul(scalar_pow(r, k), phis[k]))
    block: Scalar = RationalScalar(Fraction(0))
    for j in range(p):
        if phis[s + j]:
            block = scalar_add(block, scalar_mul(scalar_pow(r, j), phis[s + j]))
    if scalar_sign(block).sign != 0:
        geom = scalar_inverse(scalars.scalar_sub(Fraction(1), scalar_pow(r, p)))
        total = scalar_add(total, scalar_mul(scalar_mul(scalar_pow(r, s), block), geom))
    return total


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def _dyadic_prefix_bounds(
    c: CoefficientSequence, n: int, t: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    """Enclosure of f_n(t) with dyadically rounded terms (bounded denominators)."""
    bits = _bits_for(width / (2 * (n + 2)))
    lo = hi = Fraction(0)
    pw = Fraction(1)
    for m in range(n + 1):
        phi = tent(pw * t)
        pw *= 2
        if not phi:
            continue
        cm = c.coefficient(m)
        if isinstance(cm, RationalScalar):
            clo = chi = cm.value
        else:
            clo, chi = scalar_enclosure(cm, Fraction(1, 2**bits))
        lo += _round_down(clo * phi, bits)
        hi += _round_up(chi * phi, bits)
    return lo, hi


def _bits_for(width: Fraction) -> int:
    b = 1
    while Fraction(1, 2**b) > width:
        b += 1
    return b + 2


_DIRECT_TERM_CAP = 512
_DYADIC_TERM_CAP = 1 << 21


def _tail_index(c: CoefficientSequence, bound: Fraction, cap: int) -> int | None:
    n = 1
    while n <= cap:
        if c.tail_bound(n) <= bound:
            return n
        n *= 2
    return None


def _series_bounds(c: CoefficientSequence, t: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    half = width / 2
    n = _tail_index(c, half, _DIRECT_TERM_CAP)
    if n is not None:
        partial = eval_truncated(c, n, t)
        tail = c.tail_bound(n) / 2
        plo, phi = scalar_enclosure(partial, half)
        return plo - tail, phi + tail
    blockwise = _blockwise_bounds(c, t, width)
    if blockwise is not None:
        return blockwise
    n = _tail_index(c, half, _DYADIC_TERM_CAP)
    if n is None:
        raise DomainError("tail bound too weak for width %s" % width)
    lo, hi = _dyadic_prefix_bounds(c, n, t, half)
    tail = c.tail_bound(n) / 2
    return lo - tail, hi + tail


def _blockwise_bounds(
    c: CoefficientSequence, t: Fraction, width: Fraction
) -> tuple[Fraction, Fraction] | None:
    """Enclosure via residue-class tail sums against the periodic tent orbit."""
    phis, s = _doubling_orbit(t)
    p = len(phis) - s
    half = width / 2
    m0 = s
    for _ in range(80):
        encl = c.residue_tail_enclosures(m0, p)
        if encl is None:
            return None
        spread = sum(phis[s + j] * (encl[j][1] - encl[j][0]) for j in range(p))
        if spread <= half:
            break
        m0 += p * max(1, m0 // p)
    else:
        return None
    plo, phi = _dyadic_prefix_bounds(c, m0 - 1, t, half)
    for j in range(p):
        f = phis[s + j]
        plo += f * encl[j][0]
        phi += f * encl[j][1]
    return plo, phi


def eval_series(c: CoefficientSequence, t, target_width) -> IntervalScalar:
    """Certified enclosure of f(t) of width <= target_width.

    Tail terms are bounded by tail_bound(N)/2, since tent <= 1/2.  The result
    carries a refinement hook recomputing at any finer width.
    """
    t = _check_unit_interval(t)
    width = Fraction(target_width)
    lo, hi = _series_bounds(c, t, width)

    def fn(bits: int):
        return _series_bounds(c, t, Fraction(1, 2**bits))

    return IntervalScalar(lo, hi, fn)


# ---------------------------------------------------------------------------
# Rademacher expansions


def T_map(rho: SignSequence):
    """Value T(rho) = sum_n 2^-(n+2) (1 - rho_n).

    Exact ``RationalScalar`` for a periodic descriptor; otherwise a
    ``DyadicRational`` approximant t0 with T(rho) in [t0, t0 + 2^-L] for
    prefix length L.
    """
    if rho.period is not None:
        return RationalScalar(t_map_fraction(rho))
    L = len(rho.prefix)
    acc = Fraction(0)
    for n, v in enumerate(rho.prefix):
        acc += Fraction(1 - v, 2 ** (n + 2))
    # T(rho) lies in [acc, acc + 2^-L]; the midpoint is within 2^-(L+1)
    return DyadicRational.from_fraction(acc + Fraction(1, 2 ** (L + 1)))


def t_map_fraction(rho: SignSequence) -> Fraction:
    """Exact T(rho) for an eventually periodic sequence."""
    if rho.period is None:
        raise InsufficientPrefixError("sequence has no period descriptor")
    start, block = rho.period
    acc = Fraction(0)
    for n in range(start):
        acc += Fraction(1 - rho.prefix[n], 2 ** (n + 2))
    p = len(block)
    blk = Fraction(0)
    for j, v in enumerate(block):
        blk += Fraction(1 - v, 2 ** (j + 2))
    acc += blk * Fraction(2**p, 2**p - 1) / 2**start
    return acc


def rademacher_of(t) -> list[SignSequence]:
    """Rademacher expansion(s) of t in [0, 1], standard one first.

    Non-dyadic rationals have a single eventually periodic expansion; dyadic
    rationals in (0, 1) have two, with the standard one (infinitely many +1
    entries) listed first.
    """
    t = _check_unit_interval(t)
    if t == 0:
        return [SignSequence((), (0, (1,)))]
    if t == 1:
        return [SignSequence((), (0, (-1,)))]
    if is_dyadic(t):
        d = DyadicRational.from_fraction(t)
        digits = [(d.k >> (d.n - 1 - i)) & 1 for i in range(d.n)]
        rho = tuple(1 - 2 * b for b in digits)
        standard = SignSequence(rho, (d.n, (1,)))
        other = SignSequence(rho[:-1] + (1,), (d.n, (-1,)))
        return [standard, other]
    u = t
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    while u not in seen:
        seen[u] = len(digits)
        b = 1 if u >= Fraction(1, 2) else 0
        digits.append(b)
        u = 2 * u - b
    start = seen[u]
    rho = tuple(1 - 2 * b for b in digits)
    return [SignSequence(rho, (start, rho[start:]))]


def _inner_rademacher_sums(rho: SignSequence, upto: int) -> list[tuple[Fraction, Fraction]]:
    """Enclosures of A_m = sum_{k>=1} 2^-k rho_{m+k} for m = 0..upto."""
    if rho.period is not None:
        start, block = rho.period
        p = len(block)

        def a_tail(j: int) -> Fraction:
            # for j >= start: A_j = (sum_{k=1..p} 2^-k rho_{j+k}) * 2^p/(2^p - 1)
            s = Fraction(0)
            for k in range(1, p + 1):
                s += Fraction(rho[j + k], 2**k)
            return s * Fraction(2**p, 2**p - 1)

        exact: dict[int, Fraction] = {}
        top = max(upto + 1, start)
        for m in range(top, -1, -1):
            if m >= start:
                exact[m] = a_tail(m)
            else:
                exact[m] = Fraction(rho[m + 1], 2) + exact[m + 1] / 2
        return [(exact[m], exact[m]) for m in range(upto + 1)]
    L = len(rho.prefix)
    out = []
    for m in range(upto + 1):
        if m + 1 >= L:
            raise InsufficientPrefixError("prefix too short for inner sums")
        s = Fraction(0)
        for k in range(1, L - m):
            s += Fraction(rho.prefix[m + k], 2**k)
        err = Fraction(1, 2 ** (L - m - 1))
        out.append((s - err, s + err))
    return out


def eval_from_rademacher(c: CoefficientSequence, rho: SignSequence, target_width) -> IntervalScalar:
    """Enclosure of f(T(rho)) computed from the expansion alone.

    Uses f(t) = (1/4) sum_m c_m (1 - sum_k 2^-k rho_m rho_{m+k}); must overlap
    eval_series at the same point.
    """
    width = Fraction(target_width)
    half = width / 2
    n = _tail_index(c, half, _DYADIC_TERM_CAP)
    if n is None:
        raise DomainError("tail bound too weak for width %s" % width)
    inner = _inner_rademacher_sums(rho, n)
    bits = _bits_for(half / (2 * (n + 2)))
    lo = hi = Fraction(0)
    for m in range(n + 1):
        alo, ahi = inner[m]
        rm = rho[m]
        factor_lo, factor_hi = 1 - rm * ahi, 1 - rm * alo
        if factor_lo > factor_hi:
            factor_lo, factor_hi = factor_hi, factor_lo
        cm = c.coefficient(m)
        if isinstance(cm, RationalScalar):
            clo = chi = cm.value
        else:
            clo, chi = scalar_enclosure(cm, Fraction(1, 2**bits))
        cands = (clo * factor_lo, clo * factor_hi, chi * factor_lo, chi * factor_hi)
        lo += _round_down(min(cands), bits)
        hi += _round_up(max(cands), bits)
    tail = c.tail_bound(n) / 2
    return IntervalScalar(lo / 4 - tail, hi / 4 + tail)
