"""Littlewood polynomial scans: real roots, step roots, density evidence.

A Littlewood polynomial has all coefficients +-1; its real roots lie in
(-2,-1/2) u (1/2,2).  A root a of P_n with coefficients rho_0..rho_n is a
*step root* when rho_{k+1} P_k(a) <= 0 for every prefix P_k; step roots are
exactly the parameters where the associated fractal function has non-unique
maximizers.  The scanner enumerates all sign patterns with rho_0 = +1 up to a
degree bound, isolates every distinct real root by Sturm bisection, decides
the step property with exact arithmetic, and aggregates deterministic counts
and histograms (the same totals independent of worker count).
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction

from . import intpoly
from .intpoly import IntPoly
from .scalars import (
    RationalScalar,
    Scalar,
    algebraic,
    eval_int_poly,
    scalar_sign,
)

NEG_LO, NEG_HI = Fraction(-2), Fraction(-1, 2)
POS_LO, POS_HI = Fraction(1, 2), Fraction(2)
ROOT_WIDTH = Fraction(1, 2**40)
_BIN_WIDTH_BITS = 12  # isolation width for binning/dedup inside the scan
MAX_SCAN_DEGREE = 24


class BudgetError(ValueError):
    """Requested scan exceeds the degree budget guard."""


@dataclass(frozen=True)
class LittlewoodPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1 or any(c not in (-1, 1) for c in self.coeffs):
            raise ValueError("coefficients must be +-1")
        if self.coeffs[0] != 1:
            raise ValueError("normalization requires coeffs[0] = +1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_mask(degree: int, mask: int) -> "LittlewoodPoly":
        """Bit j of mask set means coefficient j+1 is -1."""
        return LittlewoodPoly((1,) + tuple(-1 if (mask >> j) & 1 else 1 for j in range(degree)))

    def mask(self) -> int:
        m = 0
        for j, c in enumerate(self.coeffs[1:]):
            if c < 0:
                m |= 1 << j
        return m

    def __repr__(self) -> str:
        return f"LittlewoodPoly({''.join('+' if c > 0 else '-' for c in self.coeffs)})"


@dataclass(frozen=True)
class RootRecord:
    poly: LittlewoodPoly
    root: Scalar
    is_step_root: bool
    degree: int


@dataclass
class ScanSummary:
    """Aggregated scan counts.

    ``total_roots`` / ``total_step_roots`` count distinct real roots per
    polynomial (multiplicities collapsed), both signs.  The companion counters
    ``pos_roots_with_multiplicity`` / ``neg_roots_with_multiplicity`` count
    every root as many times as its multiplicity; the positive one is the
    published degree-20 figure (2,255,683).
    """

    max_degree: int
    total_roots: int = 0
    total_step_roots: int = 0
    pos_roots: int = 0
    neg_roots: int = 0
    pos_step_roots: int = 0
    neg_step_roots: int = 0
    pos_roots_with_multiplicity: int = 0
    neg_roots_with_multiplicity: int = 0
    per_degree: dict = field(default_factory=dict)  # degree -> [roots, step_roots]
    bins: int = 200
    hist_neg_roots: list = field(default_factory=list)
    hist_pos_roots: list = field(default_factory=list)
    hist_neg_steps: list = field(default_factory=list)
    hist_pos_steps: list = field(default_factory=list)
    roots_seen: list = field(default_factory=list)  # (degree, mask, midpoint, is_step)

    def merge(self, other: "ScanSummary") -> None:
        for name in (
            "total_roots",
            "total_step_roots",
            "pos_roots",
            "neg_roots",
            "pos_step_roots",
            "neg_step_roots",
            "pos_roots_with_multiplicity",
            "neg_roots_with_multiplicity",
        ):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for d, (r, s) in other.per_degree.items():
            cur = self.per_degree.setdefault(d, [0, 0])
            cur[0] += r
            cur[1] += s
        for mine, theirs in (
            (self.hist_neg_roots, other.hist_neg_roots),
            (self.hist_pos_roots, other.hist_pos_roots),
            (self.hist_neg_steps, other.hist_neg_steps),
            (self.hist_pos_steps, other.hist_pos_steps),
        ):
            for i, v in enumerate(theirs):
                mine[i] += v
        self.roots_seen.extend(other.roots_seen)

    def to_json_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "total_roots": self.total_roots,
            "total_step_roots": self.total_step_roots,
            "positive_roots": self.pos_roots,
            "negative_roots": self.neg_roots,
            "positive_step_roots": self.pos_step_roots,
            "negative_step_roots": self.neg_step_roots,
            "positive_roots_with_multiplicity": self.pos_roots_with_multiplicity,
            "negative_roots_with_multiplicity": self.neg_roots_with_multiplicity,
            "per_degree": {str(d): list(v) for d, v in sorted(self.per_degree.items())},
            "bins": self.bins,
            "histograms": {
                "neg_roots": self.hist_neg_roots,
                "pos_roots": self.hist_pos_roots,
                "neg_step_roots": self.hist_neg_steps,
                "pos_step_roots": self.hist_pos_steps,
            },
        }


def _empty_summary(max_degree: int, bins: int) -> ScanSummary:
    s = ScanSummary(max_degree=max_degree, bins=bins)
    s.hist_neg_roots = [0] * bins
    s.hist_pos_roots = [0] * bins
    s.hist_neg_steps = [0] * bins
    s.hist_pos_steps = [0] * bins
    return s


# ---------------------------------------------------------------------------
# public per-polynomial operations


def real_roots(p: LittlewoodPoly, width: Fraction = ROOT_WIDTH) -> list[Scalar]:
    """All distinct real roots, isolated to `width` inside the root annulus."""
    out: list[Scalar] = []
    for lo, hi in ((NEG_LO, NEG_HI), (POS_LO, POS_HI)):
        for a, b in intpoly.isolate_roots(p.coeffs, lo, hi, width):
            if a == b:
                out.append(RationalScalar(a))
            else:
                out.append(algebraic(p.coeffs, a, b))
    return out


def rational_root_filter(p: LittlewoodPoly) -> list[int]:
    """The subset of {-1, +1} that are roots (the only possible rational roots)."""
    return [r for r in (-1, 1) if intpoly.eval_int(p.coeffs, r) == 0]


def is_step_root(p: LittlewoodPoly, root: Scalar) -> bool:
    """Exact check of rho_{k+1} P_k(root) <= 0 for all proper prefixes."""
    if scalar_sign(eval_int_poly(p.coeffs, root)).sign != 0:
        raise ValueError("given scalar is not a root of the polynomial")
    for k in range(p.degree):
        s = scalar_sign(eval_int_poly(p.coeffs[: k + 1], root)).sign
        if p.coeffs[k + 1] * s > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# fast integer-only scan internals


def _isolate_fast(coeffs: IntPoly):
    """(squarefree part, isolating brackets, repeated part) for annulus roots.

    Brackets are integer-scaled dyadics (anum, bnum, kbits) meaning the open
    interval (anum, bnum) / 2^kbits, with a sign change of the squarefree part
    across it.  The repeated part (gcd with the derivative, or None) carries
    the multiplicity excess.
    """
    chain = intpoly.sturm_chain(coeffs)
    repeated = None
    if intpoly.degree(chain[-1]) >= 1:
        repeated = chain[-1]
        sq = intpoly.squarefree_part(coeffs)
        chain = intpoly.sturm_chain(sq)
    else:
        sq = chain[0]
    brackets: list[tuple[int, int, int]] = []

    def split(a: int, b: int, k: int, va: int, vb: int) -> None:
        n = va - vb
        if n == 0:
            return
        if n == 1:
            brackets.append((a, b, k))
            return
        m, a2, b2, k2 = a + b, 2 * a, 2 * b, k + 1
        while intpoly.sign_at_dyadic(sq, m, k2) == 0:
            # midpoint is a rational root; nudge right on a finer grid
            m, a2, b2, k2 = 2 * m + 1, 2 * a2, 2 * b2, k2 + 1
        vm = intpoly.sign_variations_at_dyadic(chain, m, k2)
        split(a2, m, k2, va, vm)
        split(m, b2, k2, vm, vb)

    for a, b in ((-4, -1), (1, 4)):  # (-2,-1/2) and (1/2,2) at kbits=1
        va = intpoly.sign_variations_at_dyadic(chain, a, 1)
        vb = intpoly.sign_variations_at_dyadic(chain, b, 1)
        split(a, b, 1, va, vb)
    return sq, brackets, repeated


def _annulus_counts_recursive(p: IntPoly) -> tuple[int, int]:
    """(negative, positive) annulus root counts of p, with multiplicity.

    Distinct roots per level plus a recursion into gcd(p, p'): a root of
    multiplicity m is seen once at each of m levels.
    """
    neg = pos = 0
    while True:
        chain = intpoly.sturm_chain(p)
        neg += intpoly.sign_variations_at_dyadic(chain, -4, 1) - intpoly.sign_variations_at_dyadic(
            chain, -1, 1
        )
        pos += intpoly.sign_variations_at_dyadic(chain, 1, 1) - intpoly.sign_variations_at_dyadic(
            chain, 4, 1
        )
        if intpoly.degree(chain[-1]) < 1:
            return neg, pos
        p = chain[-1]


def _refine_fast(sq: IntPoly, a: int, b: int, k: int, width_bits: int):
    """Bisect the bracket until its width is at most 2^-width_bits."""
    slo = intpoly.sign_at_dyadic(sq, a, k)
    while ((b - a) << width_bits) > (1 << k):
        m, k = a + b, k + 1
        a, b = 2 * a, 2 * b
        sm = intpoly.sign_at_dyadic(sq, m, k)
        if sm == 0:
            return m, m, k
        if sm == slo:
            a = m
        else:
            b = m
    return a, b, k


def _step_root_fast(coeffs: IntPoly, sq: IntPoly, a: int, b: int, k: int) -> bool:
    """Step-root test for the root of sq inside (a, b)/2^k; exact."""
    n = len(coeffs) - 1
    if coeffs[1] > 0:
        return False  # rho_1 * P_0 = rho_1 must be <= 0
    for j in range(1, n):
        prefix = coeffs[: j + 1]
        s = None
        while s is None:
            if a == b:
                s = intpoly.sign_at_dyadic(prefix, a, k)
                break
            vlo, vhi = intpoly.eval_interval_dyadic(prefix, a, b, k)
            if vlo > 0:
                s = 1
            elif vhi < 0:
                s = -1
            elif (b - a) << 64 > (1 << k):
                a, b, k = _refine_fast(sq, a, b, k, k - (b - a).bit_length() + 5)
            else:
                g = intpoly.poly_gcd(sq, intpoly.normalize(prefix))
                if intpoly.degree(g) >= 1 and (
                    intpoly.sign_at_dyadic(g, a, k) * intpoly.sign_at_dyadic(g, b, k) < 0
                ):
                    s = 0
                else:
                    a, b, k = _refine_fast(sq, a, b, k, k - (b - a).bit_length() + 9)
        if coeffs[j + 1] * s > 0:
            return False
    return True


def _scan_chunk(args) -> ScanSummary:
    degree, mask_lo, mask_hi, bins, collect = args
    out = _empty_summary(degree, bins)
    neg_w = (NEG_HI - NEG_LO) / bins
    pos_w = (POS_HI - POS_LO) / bins
    for mask in range(mask_lo, mask_hi):
        coeffs = (1,) + tuple(-1 if (mask >> j) & 1 else 1 for j in range(degree))
        sq, brackets, repeated = _isolate_fast(coeffs)
        if repeated is not None:
            xneg, xpos = _annulus_counts_recursive(repeated)
            out.neg_roots_with_multiplicity += xneg
            out.pos_roots_with_multiplicity += xpos
        if not brackets:
            continue
        dcount = out.per_degree.setdefault(degree, [0, 0])
        for a, b, k in brackets:
            a, b, k = _refine_fast(sq, a, b, k, _BIN_WIDTH_BITS)
            mid = Fraction(a + b, 2 ** (k + 1))
            out.total_roots += 1
            dcount[0] += 1
            step = _step_root_fast(coeffs, sq, a, b, k)
            if step:
                out.total_step_roots += 1
                dcount[1] += 1
            if mid < 0:
                out.neg_roots += 1
                out.neg_roots_with_multiplicity += 1
                idx = min(int((mid - NEG_LO) / neg_w), bins - 1)
                out.hist_neg_roots[idx] += 1
                if step:
                    out.neg_step_roots += 1
                    out.hist_neg_steps[idx] += 1
            else:
                out.pos_roots += 1
                out.pos_roots_with_multiplicity += 1
                idx = min(int((mid - POS_LO) / pos_w), bins - 1)
                out.hist_pos_roots[idx] += 1
                if step:
                    out.pos_step_roots += 1
                    out.hist_pos_steps[idx] += 1
            if collect:
                out.roots_seen.append((degree, mask, float(mid), step))
    return out


def scan(
    max_degree: int,
    step_roots_only: bool = False,
    jobs: int = 1,
    bins: int = 200,
    collect_roots: bool = False,
    min_degree: int = 1,
) -> ScanSummary:
    """Count (step) roots of every Littlewood polynomial with rho_0 = +1.

    Enumerates all 2^n sign patterns per degree n in [min_degree, max_degree];
    each distinct real root of each polynomial counts once.  Work is split
    into contiguous mask ranges; merging is a plain sum, so totals do not
    depend on `jobs`.
    """
    if not (1 <= max_degree <= MAX_SCAN_DEGREE):
        raise BudgetError("max_degree must lie in 1..%d" % MAX_SCAN_DEGREE)
    jobs = max(1, jobs)
    tasks = []
    for degree in range(min_degree, max_degree + 1):
        total = 1 << degree
        chunk = max(256, total // (jobs * 8)) if jobs > 1 else total
        for lo in range(0, total, chunk):
            tasks.append((degree, lo, min(lo + chunk, total), bins, collect_roots))
    summary = _empty_summary(max_degree, bins)
    if jobs == 1:
        for t in tasks:
            summary.merge(_scan_chunk(t))
    else:
        with multiprocessing.Pool(jobs) as pool:
            for part in pool.imap_unordered(_scan_chunk, tasks, chunksize=1):
                summary.merge(part)
    if step_roots_only:
        summary.roots_seen = [r for r in summary.roots_seen if r[3]]
    summary.roots_seen.sort()
    return summary


def step_root_records(max_degree: int, jobs: int = 1) -> list[RootRecord]:
    """Full RootRecords for every step root up to max_degree (exact scalars)."""
    summary = scan(max_degree, jobs=jobs, collect_roots=True)
    with_steps = sorted({(d, m) for d, m, _mid, step in summary.roots_seen if step})
    records = []
    for degree, mask in with_steps:
        poly = LittlewoodPoly.from_mask(degree, mask)
        for root in real_roots(poly):
            if is_step_root(poly, root):
                records.append(RootRecord(poly, root, True, degree))
    return records


def closure_gap_report(
    roots, resolution, lo=POS_LO, hi=POS_HI
) -> list[tuple[float, float]]:
    """Maximal root-free sub-intervals of [lo, hi] of width >= resolution.

    `roots` is any iterable of positions (the scan's recorded midpoints);
    evidence for the density of roots, not a proof.
    """
    resolution = Fraction(resolution)
    pts = sorted(float(r) for r in roots if lo <= r <= hi)
    gaps = []
    prev = float(lo)
    for x in pts + [float(hi)]:
        if Fraction(x) - Fraction(prev) >= resolution:
            gaps.append((prev, x))
        prev = x
    return gaps
