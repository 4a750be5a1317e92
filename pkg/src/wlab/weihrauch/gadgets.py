"""Gadget sums for the derivative reductions.

f = sum_{n in supp p} f_n with f_n(x) = (x - x_n)^(-2^(n+1)): each f_n has
f_n'(1) = 1 and |f_n| < 2^-n on D, so f'(1) counts the support of p. The
polynomial variant swaps f_n for a rational polynomial g_n with g_n'(1) = 1
exactly and |g_n| < 2^-n on D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..analytic import radius_bounds
from ..models import FunctionModel, gadget_center, gadget_model
from ..names import Name, RationalComplex, RationalPoly2

__all__ = [
    "GadgetSum", "poly_gadget", "gadget_sum_advice", "gadget_sum_valid", "poly_gadget_advice",
    "poly_gadget_valid", "poly_gadget_coeffs", "gadget_sup_on_disk",
]


@lru_cache(maxsize=None)
def _model(n: int):
    return gadget_model(n)


@lru_cache(maxsize=None)
def poly_gadget(n: int) -> tuple[Fraction, ...]:
    """Coefficients of g_n = T + (1 - T'(1)) z, T a Taylor truncation of f_n.

    T has error at most 2^-(n+5) on D and |T'(1) - 1| <= 2^-(n+5); the margin
    2^-n - sup_D |f_n| is above 2^-(n+2), so |g_n| < 2^-n on D.
    """
    N = 1 << (n + 1)
    c = gadget_center(n)
    R = (1 + c.lo) / 2
    rho = 1 / R
    B = 1 / (c.lo - R) ** N          # |a_k| <= B rho^k by Cauchy on |z| = R
    delta = Fraction(1, 1 << (n + 5))
    K = 1
    while B * rho ** (K + 1) * ((K + 1) / (1 - rho) + rho / (1 - rho) ** 2) > delta / 2:
        K += 1
    eps = delta / (2 * (K + 1) ** 2)
    coeffs = [_model(n).coeff(k, eps).re for k in range(K + 1)]
    slope = sum(k * a for k, a in enumerate(coeffs))
    coeffs[1] += 1 - slope
    return tuple(coeffs)


@dataclass(eq=False)
class GadgetSum(FunctionModel):
    """sum_{n in supp p} of f_n, or of the polynomials g_n when ``poly`` is set.

    Terms with n > k + 1 are left out of the 2^-k approximant: together they
    are below 2^-(k+1) on D.
    """

    p: Name
    poly: bool = False

    def _approx(self, k: int) -> RationalPoly2:
        total = RationalPoly2.zero()
        for n in range(k + 2):
            if self.p(n) > 0:
                if self.poly:
                    total = total + RationalPoly2.univariate(poly_gadget(n))
                else:
                    total = total + _model(n).approx(k + n + 3)
        return total


def gadget_sup_on_disk(n: int, m: int) -> Fraction | None:
    """Upper bound on sup |f_n| over the disk of radius r_m, None if x_n is not outside it."""
    c = gadget_center(n)
    r_hi = radius_bounds(m)[1]
    if c.lo <= r_hi:
        return None
    return 1 / (c.lo - r_hi) ** (1 << (n + 1))


def gadget_sum_advice(support: Iterable[int]) -> int:
    """Least m whose (AC) condition the interval bounds confirm for sum_{n in support} f_n."""
    S = sorted(support)
    if not S:
        return 0
    m = 1
    while not gadget_sum_valid(S, m):
        m += 1
    return m


def gadget_sum_valid(S: Iterable[int], m: int) -> bool:
    S = list(S)
    if not S:
        return True
    if m == 0:
        return False
    total = Fraction(0)
    for n in S:
        b = gadget_sup_on_disk(n, m)
        if b is None:
            return False
        total += b
    return total <= m


def _poly_sup(coeffs, m: int) -> Fraction:
    r = radius_bounds(m)[1]
    return sum((abs(a) * r ** k for k, a in enumerate(coeffs)), Fraction(0))


def poly_gadget_valid(S: Iterable[int], m: int) -> bool:
    S = list(S)
    if not S:
        return True
    if m == 0:
        return False
    return sum(_poly_sup(poly_gadget(n), m) for n in S) <= m


def poly_gadget_advice(support: Iterable[int]) -> int:
    S = sorted(support)
    if not S:
        return 0
    m = 1
    while not poly_gadget_valid(S, m):
        m += 1
    return m


def poly_gadget_coeffs(support: Iterable[int]) -> tuple[RationalComplex, ...]:
    total: list[Fraction] = []
    for n in support:
        g = poly_gadget(n)
        total += [Fraction(0)] * (len(g) - len(total))
        for k, a in enumerate(g):
            total[k] += a
    return tuple(RationalComplex(a) for a in total)


