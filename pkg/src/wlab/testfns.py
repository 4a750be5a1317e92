"""Smooth (E), Schwartz (S) and bump (D) functions on the real line.

An E-name q lists at q(<N, m, n>) a rational polynomial within 2^-n of f^(m)
on [-N, N]. An S-name interleaves decay witnesses (even entries: for all
d, m, k <= n, |x| >= q(2n) implies |x^d f^(m)(x)| <= 2^-k) with an E-name (odd
entries). A D-name puts a support bound in front of an E-name.

Functions built here come from internal families with closed-form derivative
data, which is what the seminorm and validation routines use as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable

from .bumps import BumpSum, SmoothFamily, bump_sup, fit_slice, seminorm
from .intervals import Interval, IntervalC, precision
from .names import Name, enum_rational_poly, pair, poly_index, triple, unpair, untriple
from .spaces import MetricName, cinterval_space, point_of

__all__ = [
    "SmoothName", "SchwartzName", "BumpName", "ChoiceSeries", "ColumnSeries",
    "smooth_name", "schwartz_name", "bump", "bump_name", "eval_smooth_derivative",
    "seminorm_S", "seminorm_E", "frechet_distance",
    "include_D_to_S", "include_S_to_E", "include_D_to_S_name", "include_S_to_E_name",
    "proj_ED_pre", "proj_ED_post", "bound_projSD_pre", "bound_projSD_post",
    "proj_ES_pre", "proj_ES_post", "boundseq_projES_pre", "boundseq_projES_post",
    "project_E_to_D", "cn_via_project_S_to_D", "project_E_to_S", "bound_seq_via_project_E_to_S",
    "check_slices", "check_schwartz", "check_bump", "dyadic_point",
]


# --------------------------------------------------------------------------
# names

@dataclass(frozen=True)
class SmoothName:
    name: Name
    family: SmoothFamily | None = None

    def entry(self, N: int, m: int, n: int) -> int:
        return self.name(triple(N, m, n))

    def approx(self, N: int, m: int, n: int):
        return enum_rational_poly(self.entry(N, m, n))

    def slice(self, N: int, m: int) -> MetricName:
        return MetricName(cinterval_space(N), Name(lambda n: self.entry(N, m, n)))


@dataclass(frozen=True)
class SchwartzName:
    decay: Name
    smooth: SmoothName

    @property
    def family(self):
        return self.smooth.family

    @property
    def name(self) -> Name:
        def q(i: int) -> int:
            k, r = divmod(i, 2)
            return self.smooth.name(k) if r else self.decay(k)

        return Name(q, label="schwartz")

    @classmethod
    def parse(cls, q: Name, family: SmoothFamily | None = None) -> "SchwartzName":
        return cls(Name(lambda n: q(2 * n)), SmoothName(Name(lambda n: q(2 * n + 1)), family))


@dataclass(frozen=True)
class BumpName:
    support_bound: int
    smooth: SmoothName

    @property
    def family(self):
        return self.smooth.family

    @property
    def name(self) -> Name:
        return Name(lambda n: self.support_bound if n == 0 else self.smooth.name(n - 1), label="bump")

    @classmethod
    def parse(cls, q: Name, family: SmoothFamily | None = None) -> "BumpName":
        return cls(q(0), SmoothName(Name(lambda n: q(n + 1)), family))


def smooth_name(family: SmoothFamily, label: str | None = None) -> SmoothName:
    def q(i: int) -> int:
        N, m, n = untriple(i)
        return poly_index(fit_slice(family, N, m, n))

    return SmoothName(Name(q, label=label), family)


def schwartz_name(family: SmoothFamily, decay: Callable[[int], int], label: str | None = None) -> SchwartzName:
    return SchwartzName(Name(decay), smooth_name(family, label))


def bump_name(family: BumpSum, label: str | None = None) -> BumpName:
    return BumpName(family.support_bound(), smooth_name(family, label))


def bump(lam=0) -> BumpName:
    """The bump shifted by a rational lambda, with support bound ceil(|lambda|) + 1."""
    lam = Fraction(lam)
    return BumpName(ceil(abs(lam)) + 1, smooth_name(BumpSum.bump(lam), label=f"bump({lam})"))


# --------------------------------------------------------------------------
# evaluation

def _real_point(x, n: int) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return point_of(x, n).re


def eval_smooth_derivative(f: SmoothName, m: int, x, n: int) -> IntervalC:
    """Width <= 2^-n enclosure of f^(m)(x), read from the slice [-N, N] with N >= |x|.

    The polynomial P is within 2^-(n+2) of f^(m); P is evaluated exactly at a
    rational c with |x - c| < 2^-k, where k makes the Lipschitz term
    sum_j j |a_j| (N+1)^(j-1) 2^-k at most 2^-(n+2).
    """
    N = ceil(abs(_real_point(x, 0))) + 1
    P = f.approx(N, m, n + 2)
    coeffs = [P.coefficient(j).re for j in range(P.degree + 1)]
    lip = sum((j * abs(a) * (N + 1) ** (j - 1) for j, a in enumerate(coeffs) if j), Fraction(0))
    k = n + 2 + ceil(lip).bit_length()
    c = _real_point(x, k)
    val = Fraction(0)
    for a in reversed(coeffs):
        val = val * c + a
    r = lip / (1 << k) + Fraction(1, 1 << (n + 2))
    with precision(max(64, 2 * n + 64)):
        return IntervalC(Interval.ball(val, r), Interval.point(0))


# --------------------------------------------------------------------------
# seminorms and the Frechet metric (internal families only)

def seminorm_S(family: BumpSum, d: int, m: int, n: int) -> Interval:
    """Enclosure of sup_x |x^d g^(m)(x)| of width <= 2^-n."""
    return seminorm(family, d, m, Fraction(1, 1 << n))


def seminorm_E(family: BumpSum, N: int, m: int, n: int) -> Interval:
    """Enclosure of sup_{|x| <= N} |g^(m)(x)| of width <= 2^-n."""
    return seminorm(family, 0, m, Fraction(1, 1 << n), N=N)


def frechet_distance(f: BumpSum, g: BumpSum, n: int, kind: str = "S") -> Interval:
    """Enclosure of sum_i 2^-i s_i / (s_i + 1), s_i the i-th seminorm of f - g.

    Seminorm i = <d, m> (kind "S") or <N, m> (kind "E"); indices above n + 1
    contribute at most 2^-(n+1) in total.
    """
    diff = f - g
    top = n + 1
    tol = Fraction(1, 1 << (n + 2))
    lo, hi = Fraction(0), Fraction(0)
    for i in range(top + 1):
        a, m = unpair(i)
        s = seminorm(diff, a, m, tol) if kind == "S" else seminorm(diff, 0, m, tol, N=a)
        w = Fraction(1, 1 << i)
        lo += w * s.lo / (s.lo + 1)
        hi += w * s.hi / (s.hi + 1)
    return Interval(lo, hi + Fraction(1, 1 << top))


# --------------------------------------------------------------------------
# inclusions

def include_D_to_S_name(q: Name) -> Name:
    """2n -> q(0), 2n + 1 -> q(n + 1)."""
    return Name(lambda i: q(0) if i % 2 == 0 else q(i // 2 + 1), label="D->S")


def include_S_to_E_name(q: Name) -> Name:
    return Name(lambda n: q(2 * n + 1), label="S->E")


def include_D_to_S(f: BumpName) -> SchwartzName:
    b = f.support_bound
    return SchwartzName(Name(lambda n: b), f.smooth)


def include_S_to_E(f: SchwartzName) -> SmoothName:
    return f.smooth


# --------------------------------------------------------------------------
# counterexample searches (the partial inverses)

def dyadic_point(j: int) -> Fraction:
    """Enumeration of the dyadic rationals: <a, e, s> -> (-1)^s a / 2^e."""
    a, e, s = untriple(j)
    return Fraction(-a if s else a, 1 << e)


def proj_ED_pre(p: Name) -> Name:
    """E-name of f in D to an enumeration of the complement of its support bounds.

    Entry <<n, j>, K> lists K when the dyadic x_j has |x_j| > K and an
    enclosure of width 2^-(n+2) proves |f(x_j)| > 2^-n.
    """
    f = SmoothName(p)

    def q(s: int) -> int:
        t, K = unpair(s)
        n, j = unpair(t)
        x = dyadic_point(j)
        if abs(x) <= K:
            return 0
        v = eval_smooth_derivative(f, 0, x, n + 2)
        return K + 1 if v.re.mig() > Fraction(1, 1 << n) else 0

    return Name(q, label="proj_ED_pre")


def proj_ED_post(p: Name, a: Name) -> Name:
    return Name(lambda n: a(0) if n == 0 else p(n - 1), label="proj_ED_post")


class ChoiceSeries(SmoothFamily):
    """g = sum_i 2^(-i-1) (2p(i) + 1)^(-i) (17i)^(-4i) f_{2p(i)} for a stream p."""

    def __init__(self, p: Name):
        self.p = p

    def weight(self, i: int) -> Fraction:
        return Fraction(1, (1 << (i + 1)) * (2 * self.p(i) + 1) ** i * (17 * i) ** (4 * i))

    def terms_near(self, N, m, eps):
        F = bump_sup(m)
        I = 0
        while F / (1 << (I + 1)) > eps:
            I += 1
        terms = [(Fraction(2 * self.p(i)), self.weight(i)) for i in range(I + 1) if 2 * self.p(i) < N + 1]
        return terms, F / (1 << (I + 1))

    def decay(self, n: int) -> int:
        """Beyond max_{i<=n} 2p(i) + 1 only terms i > n remain, each below 2^(-i-1)."""
        return max(2 * self.p(i) + 1 for i in range(n + 1)) + 1


def bound_projSD_pre(p: Name) -> Name:
    g = ChoiceSeries(p)
    return schwartz_name(g, g.decay, label="choice_series").name


def bound_projSD_post(p: Name, a: Name) -> Name:
    b = a(0)
    return Name(lambda n: b, label="support_bound")


def proj_ES_pre(p: Name) -> Name:
    """E-name of f in S to a sequence of closed-choice instances.

    Instance n (entries <n, s>) enumerates the b for which a dyadic x with
    |x| >= 2^b and some d, m <= n give |x^d f^(m)(x)| > 2^-n provably; entry
    s = <<j, r>, b> tests x_j at enclosure width 2^-r.
    """
    f = SmoothName(p)

    def q(i: int) -> int:
        n, s = unpair(i)
        t, b = unpair(s)
        j, r = unpair(t)
        x = dyadic_point(j)
        if abs(x) < (1 << b):
            return 0
        bound = Fraction(1, 1 << n)
        for m in range(n + 1):
            v = eval_smooth_derivative(f, m, x, r).re
            for d in range(n + 1):
                if v.mig() * abs(x) ** d > bound:
                    return b + 1
        return 0

    return Name(q, label="proj_ES_pre")


def proj_ES_post(p: Name, a: Name) -> Name:
    """Decay witness 2^a(n) next to the unchanged E-name."""
    return Name(lambda i: (1 << a(i // 2)) if i % 2 == 0 else p(i // 2), label="proj_ES_post")


class ColumnSeries(SmoothFamily):
    """g = sum_k sum_i 2 c^(-k) f_c over values i of column k, c = m_{i,k} + i + 3.

    Column k of p is (p(<m, k>))_m and m_{i,k} is the first index with value i.
    The weight is max{|x|, 2}^(-k) frozen at the bump centre (the support of
    f_c lies in [2, oo)), doubled so that c^k g(c) >= 2 > 2^-k.
    """

    def __init__(self, p: Name):
        self.p = p

    def column(self, k: int, horizon: int) -> list[tuple[int, int]]:
        """(value, position) for first occurrences among indices < horizon."""
        seen: dict[int, int] = {}
        for j in range(horizon):
            i = self.p(pair(j, k))
            if i not in seen:
                seen[i] = j + i + 3
        return sorted(seen.items())

    def column_terms(self, k: int, N: int) -> list[tuple[Fraction, Fraction]]:
        return [(Fraction(c), Fraction(2, c ** k)) for _, c in self.column(k, max(N - 2, 0)) if c <= N]

    def terms_near(self, N, m, eps):
        F = bump_sup(m)
        K = 0
        while N * F / 3 ** K > eps:
            K += 1
        terms = [t for k in range(K + 1) for t in self.column_terms(k, N)]
        return terms, N * F / 3 ** K

    def decay_witness(self, n: int, horizon: Callable[[int], int]) -> int:
        """A valid S-decay witness, given for each column an index past all first occurrences.

        Columns k <= n + 3 end before R - 1. For x >= R >= 4 the later columns
        contribute at most 6 (x+1)^(n+1) F (x-1)^-(n+4), decreasing in x, with F
        bounding |f^(m)| for m <= n.
        """
        K = n + 3
        R = 4
        for k in range(K + 1):
            for _, c in self.column(k, horizon(k)):
                R = max(R, c + 2)
        F = max(bump_sup(m) for m in range(n + 1))
        target = Fraction(1, 1 << n)
        while 6 * Fraction(R + 1) ** (n + 1) * F / Fraction(R - 1) ** (n + 4) > target:
            R += 1
        return R


def boundseq_projES_pre(p: Name) -> Name:
    return smooth_name(ColumnSeries(p), label="column_series").name


def boundseq_projES_post(p: Name, q: Name) -> Name:
    return Name(lambda n: q(2 * n), label="decay_entries")


# --------------------------------------------------------------------------
# operations with an oracle slot

def project_E_to_D(f: SmoothName, cn_oracle: Callable[[Name], Name]) -> BumpName:
    """E to D, with closed choice picking a support bound."""
    q = proj_ED_post(f.name, cn_oracle(proj_ED_pre(f.name)))
    return BumpName.parse(q, f.family)


def cn_via_project_S_to_D(p: Name, proj_oracle: Callable[[Name], Name]) -> int:
    """A bound for the values of p, from the support bound of the choice series."""
    pre = bound_projSD_pre(p)
    return bound_projSD_post(p, proj_oracle(pre))(0)


def project_E_to_S(f: SmoothName, cnseq_oracle: Callable[[Name], Name]) -> SchwartzName:
    q = proj_ES_post(f.name, cnseq_oracle(proj_ES_pre(f.name)))
    return SchwartzName.parse(q, f.family)


def bound_seq_via_project_E_to_S(p: Name, proj_oracle: Callable[[Name], Name]) -> Name:
    return boundseq_projES_post(p, proj_oracle(boundseq_projES_pre(p)))


# --------------------------------------------------------------------------
# validity checks against the closed-form family

def _samples(N: int, count: int) -> list[Fraction]:
    if N == 0:
        return [Fraction(0)]
    return [Fraction(N * (2 * j - count + 1), count) for j in range(count)]


def check_slices(f: SmoothName, family: SmoothFamily, depth: int, samples: int = 9) -> list[dict]:
    """Rows for (N, m, n) < depth: |P(x) - g^(m)(x)| < 2^-n at sample points."""
    rows = []
    for N in range(depth):
        for m in range(depth):
            for n in range(depth):
                P = f.approx(N, m, n)
                worst = Fraction(0)
                for x in _samples(N, samples):
                    val = P(x).re
                    worst = max(worst, (family.derivative(m, Interval(x, x)) - val).mag())
                rows.append({"check": "slice", "N": N, "m": m, "n": n,
                             "error_upper": float(worst), "ok": worst < Fraction(1, 1 << n)})
    return rows


def check_schwartz(f: SchwartzName, family: SmoothFamily, depth: int, samples: int = 50) -> list[dict]:
    """Decay predicate for d, m, k <= n < depth at sample points beyond q(2n)."""
    rows = []
    for n in range(depth):
        R = f.decay(n)
        worst = Fraction(0)
        for j in range(samples):
            x = Fraction(R) + Fraction(j * (j + 1), 4)
            for sx in (x, -x):
                X = Interval(sx, sx)
                for m in range(n + 1):
                    v = family.derivative(m, X)
                    for d in range(n + 1):
                        worst = max(worst, v.mag() * abs(sx) ** d)
        rows.append({"check": "decay", "n": n, "witness": R, "sup_sampled": float(worst),
                     "ok": worst <= Fraction(1, 1 << n)})
    return rows


def check_bump(f: BumpName, family: BumpSum) -> list[dict]:
    span = family.support_interval()
    b = f.support_bound
    ok = span is None or (-b <= span[0] and span[1] <= b)
    return [{"check": "support", "bound": b, "support": None if span is None else [str(span[0]), str(span[1])],
             "ok": ok}]
