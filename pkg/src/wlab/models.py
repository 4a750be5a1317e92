"""Function models: internal objects that manufacture rational polynomial approximants.

A model knows a function well enough to produce, for every n, a rational
polynomial within sup-distance < 2^-n of it on its compact domain. Names of
continuous functions are built from models; realizers never see the models,
only the names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .intervals import Interval, pow2_bounds, round_down
from .names import RationalComplex, RationalPoly2

__all__ = [
    "FunctionModel", "PolyModel", "SeriesModel", "SumModel", "ScaledModel",
    "ZeroModel", "snap", "geometric_series_model", "gadget_model", "gadget_center",
    "cauchy_tail",
]


def snap(x: Fraction, eps: Fraction) -> Fraction:
    """A dyadic within eps/2 of x, on the coarsest grid 2^-j with 2^-j <= eps."""
    j = max(0, -(Fraction(eps).numerator.bit_length() - Fraction(eps).denominator.bit_length()) + 1)
    scale = 1 << j
    return Fraction(round(x * scale), scale)


def snap_c(z: RationalComplex, eps: Fraction) -> RationalComplex:
    return RationalComplex(snap(z.re, eps), snap(z.im, eps))


class FunctionModel:
    """Base class: subclasses implement ``_approx(n)`` with sup error < 2^-n."""

    def approx(self, n: int) -> RationalPoly2:
        cache = self.__dict__.setdefault("_cache", {})
        if n not in cache:
            cache[n] = self._approx(n)
        return cache[n]

    def _approx(self, n: int) -> RationalPoly2:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(eq=False)
class PolyModel(FunctionModel):
    poly: RationalPoly2

    def _approx(self, n):
        return self.poly


@dataclass(eq=False)
class ZeroModel(FunctionModel):
    def _approx(self, n):
        return RationalPoly2.zero()


@dataclass(eq=False)
class SeriesModel(FunctionModel):
    """Power series sum a_k z^k on the closed unit disk.

    ``coeff(k, eps)`` returns a rational within eps of a_k; ``tail(K)`` bounds
    sum_{k > K} |a_k| from above.
    """

    coeff: Callable[[int, Fraction], RationalComplex]
    tail: Callable[[int], Fraction]
    max_terms: int = 1 << 16

    def truncation(self, n: int) -> int:
        target = Fraction(1, 1 << (n + 2))
        hi = 1
        while self.tail(hi) > target:
            hi *= 2
            if hi > self.max_terms:
                raise RuntimeError(f"series tail does not fall below 2^-{n + 2}")
        lo = 0
        while lo < hi:
            mid = (lo + hi) // 2
            if self.tail(mid) <= target:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def _approx(self, n):
        K = self.truncation(n)
        eps = Fraction(1, (K + 1) << (n + 2))
        return RationalPoly2.univariate(self.coeff(k, eps) for k in range(K + 1))


@dataclass(eq=False)
class SumModel(FunctionModel):
    """Finite sum of models, each weighted by a rational complex number."""

    parts: Sequence[FunctionModel]
    weights: Sequence[RationalComplex] | None = None

    def _approx(self, n):
        ws = [RationalComplex.of(w) for w in (self.weights or [1] * len(self.parts))]
        total = RationalPoly2.zero()
        if not self.parts:
            return total
        for part, w in zip(self.parts, ws):
            bound = max(abs(w.re) + abs(w.im), Fraction(1))
            # each part contributes at most 2^-n / (2 * len) after weighting
            extra = (len(self.parts) * 2 * bound).__ceil__().bit_length()
            total = total + part.approx(n + extra).scale(w)
        return total


@dataclass(eq=False)
class ScaledModel(FunctionModel):
    inner: FunctionModel
    weight: RationalComplex

    def _approx(self, n):
        w = RationalComplex.of(self.weight)
        extra = (abs(w.re) + abs(w.im) + 1).__ceil__().bit_length()
        return self.inner.approx(n + extra).scale(w)


def cauchy_tail(bound: Fraction, radius: Fraction) -> Callable[[int], Fraction]:
    """Tail bound from |a_k| <= bound * radius^-k (radius > 1)."""
    rho = 1 / Fraction(radius)
    if rho >= 1:
        raise ValueError("radius must exceed 1")

    def tail(K: int) -> Fraction:
        return round_up_frac(bound * rho ** (K + 1) / (1 - rho))

    return tail


def round_up_frac(x: Fraction) -> Fraction:
    # keeps the tail bound rationals small
    from .intervals import round_up

    return round_up(x, 64)


def geometric_series_model(ratio: Fraction, scale: Fraction = Fraction(1)) -> SeriesModel:
    """sum scale * ratio^k z^k, i.e. scale / (1 - ratio z), for |ratio| < 1."""
    ratio, scale = Fraction(ratio), Fraction(scale)
    r = abs(ratio)

    def coeff(k, eps):
        return RationalComplex(scale * ratio ** k)

    def tail(K):
        return round_up_frac(abs(scale) * r ** (K + 1) / (1 - r))

    return SeriesModel(coeff, tail)


# --------------------------------------------------------------------------
# the gadget functions f_n(x) = (x - x_n)^(-2^(n+1)), x_n = 1 + 2^((n+1)/(2^(n+1)+1))

@lru_cache(maxsize=None)
def gadget_center(n: int, bits: int = 96) -> Interval:
    N = 1 << (n + 1)
    lo, hi = pow2_bounds(Fraction(n + 1, N + 1), bits)
    return Interval(1 + lo, 1 + hi)


def gadget_model(n: int) -> SeriesModel:
    """Taylor model of f_n at 0: a_k = C(N+k-1, k) * x_n^-(N+k) with N = 2^(n+1)."""
    N = 1 << (n + 1)
    c = gadget_center(n)
    radius = (1 + c.lo) / 2  # 1 < radius < x_n
    sup_on_circle = 1 / (c.lo - radius) ** N

    def coeff(k, eps):
        bits = 96
        while True:
            cc = gadget_center(n, bits)
            lo = comb(N + k - 1, k) / cc.hi ** (N + k)
            hi = comb(N + k - 1, k) / cc.lo ** (N + k)
            if hi - lo <= eps / 2:
                return RationalComplex(snap(round_down((lo + hi) / 2, bits + 8), eps / 2))
            bits *= 2

    return SeriesModel(coeff, cauchy_tail(sup_on_circle, radius))
