"""Germs at zero and analytic functions on the closed unit disk D.

An analytic name carries one natural number m (the advice) next to a
C(D)-name: the function extends analytically to the closed disk of radius
r_m = 2^(1/(m+1)) and is bounded there by m. A germ name carries a number n
with |a_k| <= n * 2^(-k/(n+1)) next to a name of the coefficient sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Sequence

from .intervals import IntervalC, pow2_bounds
from .models import FunctionModel, gadget_model, gadget_center, snap
from .names import Name, RationalComplex, RationalPoly2, index_of, poly_index, unpair
from .spaces import (
    CD, COMPLEX, MetricName, SeqName, cont_eval, function_name, point_of, poly_approx,
)

__all__ = [
    "GermName", "AnalyticName", "InvalidGermError",
    "sum_germ", "germ_of", "diff_analytic", "gadget_fn", "eval_analytic",
    "sum_advice", "derivative_germ_advice", "cauchy_advice", "gadget_advice",
    "truncation_index", "ag_bound_hi", "ag_violated",
    "germ_from_coeffs", "germ_from_json", "germ_to_json", "analytic_from_model",
    "shift_scale", "radius_bounds",
]

LN2_LO = Fraction(693, 1000)


class InvalidGermError(ValueError):
    """An interval proves a coefficient exceeds the advertised decay bound."""


@dataclass(frozen=True)
class GermName:
    advice: int
    coeffs: SeqName

    @property
    def name(self) -> Name:
        return Name(lambda n: self.advice if n == 0 else self.coeffs.name(n - 1), label="germ")

    @classmethod
    def parse(cls, q: Name) -> "GermName":
        return cls(q(0), SeqName(COMPLEX, Name(lambda n: q(n + 1))))

    def coefficient(self, k: int, n: int) -> IntervalC:
        """Enclosure of a_k of width 2^(1-n)."""
        return IntervalC.ball(point_of(self.coeffs.element(k), n), Fraction(1, 1 << n))


@dataclass(frozen=True)
class AnalyticName:
    advice: int
    cont: MetricName

    @property
    def name(self) -> Name:
        return Name(lambda n: self.advice if n == 0 else self.cont.name(n - 1), label="analytic")

    @classmethod
    def parse(cls, q: Name) -> "AnalyticName":
        return cls(q(0), MetricName(CD, Name(lambda n: q(n + 1))))


# --------------------------------------------------------------------------
# closed-form advice and truncation formulas

def radius_bounds(m: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic bounds on r_m = 2^(1/(m+1))."""
    return pow2_bounds(Fraction(1, m + 1), bits)


def _inv_one_minus_pow2(t: Fraction) -> Fraction:
    """Upper bound on 1/(1 - 2^-t) for t > 0, from 1 - e^-x >= x/(1+x)."""
    return 1 + 1 / (t * LN2_LO)


def truncation_index(advice: int, n: int) -> int:
    """K such that advice * sum_{k>K} 2^(-k/(advice+1)) <= 2^-(n+2)."""
    if advice == 0:
        return 0
    c = advice * _inv_one_minus_pow2(Fraction(1, advice + 1))
    j = n + 2 + ceil(c).bit_length()
    return (advice + 1) * j - 1


def sum_advice(n: int) -> int:
    """Advice for the sum of a germ with decay advice n.

    The least m >= 2n + 1 with n / (1 - 2^-(1/(n+1) - 1/(m+1))) <= m, the
    quotient bounded from above via ln 2 >= 693/1000. On |z| <= r_m the sum is
    then bounded by sum_k n 2^(-k/(n+1)) r_m^k <= m.
    """
    m = 2 * n + 1
    while n * _inv_one_minus_pow2(Fraction(1, n + 1) - Fraction(1, m + 1)) > m:
        m += 1
    return m


def derivative_germ_advice(m: int) -> int:
    """Decay advice for the coefficients (k+1) a_{k+1} of f' when f has advice m."""
    return max(2 * m + 1, ceil(Fraction(8 * m * (m + 1), 5)))


def cauchy_advice(m: int) -> int:
    """Advice for f' from |f'| <= m / (r_m - r_{m+1}) on the closed disk of radius r_{m+1}."""
    gap = radius_bounds(m)[0] - radius_bounds(m + 1)[1]
    if gap <= 0:
        raise ArithmeticError("radius gap not resolved")
    return max(m + 1, ceil(m / gap))


def gadget_advice(n: int) -> int:
    """Least m with x_n > r_m and (x_n - r_m)^(-2^(n+1)) <= m."""
    N = 1 << (n + 1)
    c = gadget_center(n)
    m = 1
    while True:
        r_hi = radius_bounds(m)[1]
        if c.lo > r_hi and (c.lo - r_hi) ** N * m >= 1:
            return m
        m += 1


def ag_bound_hi(advice: int, k: int) -> Fraction:
    """Upper bound on advice * 2^(-k/(advice+1))."""
    if advice == 0:
        return Fraction(0)
    return advice * pow2_bounds(Fraction(-k, advice + 1), 64)[1]


def ag_violated(enclosure: IntervalC, advice: int, k: int) -> bool:
    """True when the enclosure proves |a_k| > advice * 2^(-k/(advice+1))."""
    low = enclosure.mig()
    if low <= 0:
        return False
    if advice == 0:
        return True
    return (low / advice) ** (advice + 1) * (1 << k) > 1


# --------------------------------------------------------------------------
# realizers

def sum_germ(g: GermName) -> AnalyticName:
    """Summation of a germ: an analytic name of x -> sum a_k x^k."""
    A = g.advice

    def approx_index(n: int) -> int:
        if A == 0:
            return 0
        K = truncation_index(A, n)
        e = n + 2 + (K + 1).bit_length()
        radius = Fraction(1, 1 << e)
        coeffs = []
        for k in range(K + 1):
            d = point_of(g.coeffs.element(k), e)
            if ag_violated(IntervalC.ball(d, radius), A, k):
                raise InvalidGermError(f"coefficient {k} exceeds {A} * 2^(-{k}/{A + 1})")
            coeffs.append(d)
        return poly_index(RationalPoly2.univariate(coeffs))

    return AnalyticName(sum_advice(A), MetricName(CD, Name(approx_index, label="sum")))


def germ_of(f: MetricName) -> SeqName:
    """Taylor coefficients at 0 of a function analytic on D, from its C(D)-name.

    a_k is the k-th Fourier coefficient of f on the unit circle; for a
    polynomial approximant in z and conj(z) it is read off exactly, and the
    error is at most the sup-norm error of the approximant.
    """

    def q(i: int) -> int:
        k, n = unpair(i)
        poly = poly_approx(f, n + 2)
        c = poly.circle_coefficient(k)
        eps = Fraction(1, 1 << (n + 2))
        return index_of(RationalComplex(snap(c.re, eps), snap(c.im, eps)))

    return SeqName(COMPLEX, Name(q, label="germ_of"))


def shift_scale(seq: SeqName) -> SeqName:
    """(a_k) -> ((k+1) a_{k+1}), the coefficients of the derivative."""

    def q(i: int) -> int:
        k, n = unpair(i)
        extra = (k + 1).bit_length()
        d = point_of(seq.element(k + 1), n + 1 + extra) * (k + 1)
        eps = Fraction(1, 1 << (n + 1))
        return index_of(RationalComplex(snap(d.re, eps), snap(d.im, eps)))

    return SeqName(COMPLEX, Name(q, label="shift_scale"))


def diff_analytic(f: AnalyticName) -> AnalyticName:
    """Differentiation on analytic names: Germ, then shift-and-scale, then Sum."""
    m = f.advice
    dgerm = GermName(derivative_germ_advice(m), shift_scale(germ_of(f.cont)))
    return AnalyticName(cauchy_advice(m), sum_germ(dgerm).cont)


def eval_analytic(f: AnalyticName, z: MetricName, n: int) -> IntervalC:
    return cont_eval(f.cont, z, n)


def gadget_fn(n: int) -> AnalyticName:
    """f_n(x) = (x - x_n)^(-2^(n+1)) with x_n = 1 + 2^((n+1)/(2^(n+1)+1))."""
    return AnalyticName(gadget_advice(n), function_name(gadget_model(n), label=f"gadget{n}"))


# --------------------------------------------------------------------------
# builders and literals

def analytic_from_model(model: FunctionModel, advice: int, label: str | None = None) -> AnalyticName:
    return AnalyticName(advice, function_name(model, label=label))


def germ_from_coeffs(coeff: Callable[[int], RationalComplex], advice: int, check: int = 50,
                     label: str | None = None) -> GermName:
    """Germ name of exact rational coefficients, checked against the advice for k < check."""
    for k in range(check):
        c = RationalComplex.of(coeff(k))
        if advice == 0 and c:
            raise InvalidGermError("advice 0 only names the zero germ")
        if ag_violated(IntervalC.point(c), advice, k):
            raise InvalidGermError(f"coefficient {k} violates advice {advice}")

    def q(i: int) -> int:
        k, _ = unpair(i)
        return index_of(coeff(k))

    return GermName(advice, SeqName(COMPLEX, Name(q, label=label)))


def germ_to_json(advice: int, coeffs: Sequence[RationalComplex], tail: str = "zero",
                 ratio: Fraction | None = None) -> str:
    data = {"advice": advice, "coeffs": [RationalComplex.of(c).to_json() for c in coeffs], "tail": tail}
    if tail == "geometric":
        data["ratio"] = [Fraction(ratio).numerator, Fraction(ratio).denominator]
    return json.dumps(data)


def germ_from_json(text: str) -> GermName:
    """Germ literal: {advice, coeffs: [[re_num, re_den, im_num, im_den], ...], tail}.

    ``tail`` is "zero" (finitely supported) or "geometric" with a rational
    ``ratio``: beyond the listed coefficients a_k = a_{k-1} * ratio.
    """
    data = json.loads(text) if isinstance(text, str) else text
    head = [RationalComplex.from_json(c) for c in data["coeffs"]]
    tail = data.get("tail", "zero")
    if tail == "zero":
        coeff = lambda k: head[k] if k < len(head) else RationalComplex()  # noqa: E731
    elif tail == "geometric":
        num, den = data["ratio"]
        ratio = Fraction(num, den)
        last = head[-1]
        coeff = lambda k: head[k] if k < len(head) else last * ratio ** (k - len(head) + 1)  # noqa: E731
    else:
        raise ValueError(f"unknown tail kind {tail!r}")
    return germ_from_coeffs(coeff, int(data["advice"]), label="literal")
