"""The bump f(x) = exp(x^2 / (x^2 - 1)) on (-1, 1), its derivatives, and sums of shifts.

For |x| < 1 the derivatives are f^(n)(x) = p_n(x) f(x) (1 - x^2)^(-2n) with
integer polynomials p_0 = 1 and
    p_{n+1} = (1 - x^2)^2 p_n' + 2((2n - 1)x - 2n x^3) p_n.
Writing u = 1 - x^2 gives f(x) (1 - x^2)^(-2n) = exp(1 - 1/u) u^(-2n), which
increases in u up to u = 1/(2n) and decreases afterwards; enclosures use this
monotonicity instead of naive interval evaluation near the boundary.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, sqrt
from typing import Sequence

import numpy as np
from numpy.polynomial import chebyshev

from .intervals import Interval, eval_real_poly, exp_bounds, precision, round_down, round_up
from .names import RationalPoly2
from .spaces import EvaluationStall

__all__ = [
    "BumpPolyRec", "bump_poly", "bump_derivative", "bump_derivative_float", "bump_sup",
    "SmoothFamily", "BumpSum", "sup_abs", "seminorm", "fit_slice", "chebyshev_to_monomial",
]


# --------------------------------------------------------------------------
# the derivative recursion

@lru_cache(maxsize=None)
def bump_poly(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of p_n."""
    if n == 0:
        return (1,)
    p = bump_poly(n - 1)
    k = n - 1
    out = [0] * (len(p) + 3)
    for i in range(1, len(p)):
        c = i * p[i]  # coefficient of x^(i-1) in p'
        out[i - 1] += c
        out[i + 1] -= 2 * c
        out[i + 3] += c
    for i, c in enumerate(p):
        out[i + 1] += 2 * (2 * k - 1) * c
        out[i + 3] -= 4 * k * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class BumpPolyRec:
    """The polynomials p_0, ..., p_n of the derivative recursion."""

    polys: tuple[tuple[int, ...], ...]

    @classmethod
    def up_to(cls, n: int) -> "BumpPolyRec":
        return cls(tuple(bump_poly(k) for k in range(n + 1)))

    def __getitem__(self, n: int) -> tuple[int, ...]:
        return self.polys[n]

    def degree(self, n: int) -> int:
        return len(self.polys[n]) - 1


# --------------------------------------------------------------------------
# enclosures

def _psi(m: int, u: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds on exp(1 - 1/u) u^(-2m) for 0 <= u <= 1."""
    if u <= 0:
        return Fraction(0), Fraction(0)
    lo, hi = exp_bounds(1 - 1 / u)
    w = u ** (-2 * m)
    return round_down(lo * w), round_up(hi * w)


def bump_derivative(m: int, X: Interval) -> Interval:
    """Enclosure of f^(m) over the interval X."""
    X = Interval.of(X)
    if X.lo >= 1 or X.hi <= -1:
        return Interval(Fraction(0), Fraction(0))
    lo, hi = max(X.lo, Fraction(-1)), min(X.hi, Fraction(1))
    outside = X.lo <= -1 or X.hi >= 1
    sq_hi = max(lo * lo, hi * hi)
    sq_lo = Fraction(0) if lo <= 0 <= hi else min(lo * lo, hi * hi)
    u_lo, u_hi = 1 - sq_hi, 1 - sq_lo
    a, b = _psi(m, u_lo), _psi(m, u_hi)
    psi_lo, psi_hi = min(a[0], b[0]), max(a[1], b[1])
    if m > 0:
        peak = Fraction(1, 2 * m)
        if u_lo <= peak <= u_hi:
            psi_hi = max(psi_hi, _psi(m, peak)[1])
    val = centered_poly(bump_poly(m), Interval(lo, hi)) * Interval(psi_lo, psi_hi)
    if outside:
        val = val.hull(Interval(Fraction(0), Fraction(0)))
    return val


def centered_poly(coeffs: Sequence[int], X: Interval) -> Interval:
    """Enclosure of a polynomial over X from its exact Taylor expansion at the midpoint."""
    if X.lo == X.hi:
        return eval_real_poly(coeffs, X)
    c = X.mid
    r = X.hi - c
    b = list(coeffs)
    shifted = []
    # synthetic division repeatedly gives the Taylor coefficients at c
    for _ in range(len(b)):
        acc = Fraction(0)
        rest = []
        for a in reversed(b):
            acc = acc * c + a
            rest.append(acc)
        shifted.append(rest[-1])
        b = list(reversed(rest[:-1]))
    spread = sum((abs(v) * r ** j for j, v in enumerate(shifted) if j), Fraction(0))
    return Interval(round_down(shifted[0] - spread), round_up(shifted[0] + spread))


def bump_derivative_float(m: int, x: np.ndarray) -> np.ndarray:
    """Double-precision f^(m) on an array (no error control)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    t = x[inside]
    u = 1 - t * t
    coeffs = np.array(bump_poly(m)[::-1], dtype=float)
    with np.errstate(under="ignore", over="ignore"):
        out[inside] = np.polyval(coeffs, t) * np.exp(1 - 1 / u) * u ** (-2 * m)
    return out


def mean_value(enclose, slope):
    """Mean-value form: g(X) is inside g(c) + g'(X) (X - c), intersected with the plain enclosure."""

    def wrapped(X: Interval) -> Interval:
        plain = enclose(X)
        if X.lo == X.hi:
            return plain
        c = X.mid
        mv = enclose(Interval(c, c)) + slope(X) * (X - c)
        lo, hi = max(plain.lo, mv.lo), min(plain.hi, mv.hi)
        return Interval(lo, hi) if lo <= hi else plain

    return wrapped


def sup_abs(enclose, lo: Fraction, hi: Fraction, tol: Fraction, max_cells: int = 200000,
            slope=None) -> Interval:
    """Enclosure [L, U] of sup |g| over [lo, hi] with U - L <= tol, by branch and bound.

    ``enclose(X)`` returns an enclosure of g over the interval X (and ``slope``
    one of g', when given); lower bounds come from point evaluations at cell
    midpoints. Runs at 64-bit working precision.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if slope is not None:
        enclose = mean_value(enclose, slope)
    with precision(64):
        return _branch_and_bound(enclose, lo, hi, Fraction(tol), max_cells)


def _branch_and_bound(enclose, lo, hi, tol, max_cells) -> Interval:
    best = Fraction(0)

    def upper(X: Interval) -> Fraction:
        return enclose(X).mag()

    def point_lower(x: Fraction) -> Fraction:
        return enclose(Interval(x, x)).mig()

    for x in (lo, hi, (lo + hi) / 2):
        best = max(best, point_lower(x))
    heap = [(-upper(Interval(lo, hi)), lo, hi)]
    cells = 0
    while heap:
        neg_u, a, b = heap[0]
        if -neg_u - best <= tol:
            return Interval(best, -neg_u)
        heapq.heappop(heap)
        mid = (a + b) / 2
        best = max(best, point_lower(mid))
        for c, d in ((a, mid), (mid, b)):
            u = upper(Interval(c, d))
            if u > best:
                heapq.heappush(heap, (-u, c, d))
        cells += 1
        if cells > max_cells:
            raise EvaluationStall("supremum search exceeded its cell budget")
    return Interval(best, best)


@lru_cache(maxsize=None)
def bump_sup(m: int) -> Fraction:
    """Rigorous upper bound on sup |f^(m)| (within about 1/16 relative)."""
    if m == 0:
        return Fraction(1)
    # f^(m) is even or odd, so [0, 1] suffices
    g = lambda X: bump_derivative(m, X)  # noqa: E731
    dg = lambda X: bump_derivative(m + 1, X)  # noqa: E731
    first = sup_abs(g, Fraction(0), Fraction(1), Fraction(1, 4), slope=dg)
    tol = max(first.hi / 16, Fraction(1, 64))
    return sup_abs(g, Fraction(0), Fraction(1), tol, slope=dg).hi


# --------------------------------------------------------------------------
# families: g = sum_j w_j f(x - c_j)

class SmoothFamily:
    """A smooth function with closed-form derivative data (internal ground truth)."""

    def terms_near(self, N: int, m: int, eps: Fraction) -> tuple[list[tuple[Fraction, Fraction]], Fraction]:
        """Finitely many (shift, weight) terms and a bound on sup_{|x| <= N} |rest^(m)| (at most eps)."""
        raise NotImplementedError

    def derivative(self, m: int, X: Interval, eps: Fraction = Fraction(1, 1 << 80)) -> Interval:
        X = Interval.of(X)
        N = ceil(max(abs(X.lo), abs(X.hi))) + 1
        terms, tail = self.terms_near(N, m, eps)
        total = Interval(Fraction(0), Fraction(0))
        for c, w in terms:
            total = total + bump_derivative(m, X - c) * w
        return total.inflate(tail) if tail else total

    def support_interval(self) -> tuple[Fraction, Fraction] | None:
        return None


@dataclass(frozen=True)
class BumpSum(SmoothFamily):
    """A finite sum of weighted shifts of the bump."""

    shifts: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.shifts) != len(self.weights):
            raise ValueError("shifts and weights differ in length")
        object.__setattr__(self, "shifts", tuple(Fraction(c) for c in self.shifts))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @classmethod
    def bump(cls, shift=0) -> "BumpSum":
        return cls((Fraction(shift),), (Fraction(1),))

    @classmethod
    def zero(cls) -> "BumpSum":
        return cls((), ())

    def terms(self) -> list[tuple[Fraction, Fraction]]:
        return [(c, w) for c, w in zip(self.shifts, self.weights) if w]

    def terms_near(self, N, m, eps):
        return [(c, w) for c, w in self.terms() if abs(c) < N + 1], Fraction(0)

    def __sub__(self, other: "BumpSum") -> "BumpSum":
        return BumpSum(self.shifts + other.shifts, self.weights + tuple(-w for w in other.weights))

    def support_interval(self):
        ts = self.terms()
        if not ts:
            return None
        return min(c for c, _ in ts) - 1, max(c for c, _ in ts) + 1

    def support_bound(self) -> int:
        s = self.support_interval()
        if s is None:
            return 0
        return ceil(max(abs(s[0]), abs(s[1])))

    def to_json(self) -> str:
        if len(self.shifts) == 1 and self.weights[0] == 1:
            return json.dumps({"kind": "bump", "shifts": [str(self.shifts[0])]})
        return json.dumps({"kind": "sum", "shifts": [str(c) for c in self.shifts],
                           "weights": [str(w) for w in self.weights]})

    @classmethod
    def from_json(cls, text) -> "BumpSum":
        """Family descriptor {kind: "bump"|"sum", shifts: [...], weights: [...]}."""
        data = json.loads(text) if isinstance(text, str) else text
        kind = data.get("kind")
        shifts = [Fraction(str(c)) for c in data.get("shifts", [data.get("shift", 0)])]
        if kind == "bump":
            if len(shifts) != 1:
                raise ValueError("a bump descriptor has exactly one shift")
            return cls.bump(shifts[0])
        if kind == "sum":
            weights = [Fraction(str(w)) for w in data.get("weights", [1] * len(shifts))]
            return cls(tuple(shifts), tuple(weights))
        raise ValueError(f"unknown family kind {kind!r}")


def seminorm(family: BumpSum, d: int, m: int, tol: Fraction, N: int | None = None) -> Interval:
    """Enclosure of sup |x^d g^(m)(x)| over R (or over [-N, N]) with width <= tol."""
    span = family.support_interval()
    if span is None:
        return Interval(Fraction(0), Fraction(0))
    lo, hi = span
    if N is not None:
        lo, hi = max(lo, Fraction(-N)), min(hi, Fraction(N))
        if lo >= hi:
            return Interval(Fraction(0), Fraction(0))

    def enclose(X: Interval) -> Interval:
        val = family.derivative(m, X)
        return val * (X ** d) if d else val

    def slope(X: Interval) -> Interval:
        val = family.derivative(m + 1, X)
        val = val * (X ** d) if d else val
        if d:
            val = val + family.derivative(m, X) * (X ** (d - 1)) * d
        return val

    return sup_abs(enclose, lo, hi, tol, slope=slope)


# --------------------------------------------------------------------------
# polynomial approximants of derivatives on [-N, N]

def chebyshev_to_monomial(coeffs: Sequence[Fraction], N: int) -> list[Fraction]:
    """Exact ascending coefficients of sum_k c_k T_k(x / N)."""
    D = len(coeffs) - 1
    out = [Fraction(0)] * (D + 1)
    t_prev, t_cur = [1], [0, 1]
    for k, c in enumerate(coeffs):
        if k == 0:
            tk = [1]
        elif k == 1:
            tk = [0, 1]
        else:
            nxt = [0] * (k + 1)
            for i, v in enumerate(t_cur):
                nxt[i + 1] += 2 * v
            for i, v in enumerate(t_prev):
                nxt[i] -= v
            t_prev, t_cur = t_cur, nxt
            tk = nxt
        if c:
            for j, v in enumerate(tk):
                if v:
                    out[j] += c * v
    return [a / Fraction(N) ** j for j, a in enumerate(out)]


def _family_float(terms, m: int, x: np.ndarray) -> np.ndarray:
    total = np.zeros_like(x)
    for c, w in terms:
        total += float(w) * bump_derivative_float(m, x - float(c))
    return total


def _dyadic_snap(x: float, grid_bits: int) -> Fraction:
    return Fraction(round(x * (1 << grid_bits)), 1 << grid_bits)


def fit_slice(family: SmoothFamily, N: int, m: int, n: int, max_degree: int = 2048,
              max_grid: int = 1 << 22) -> RationalPoly2:
    """A rational polynomial P with sup_{|x| <= N} |P - g^(m)| < 2^-n.

    Chebyshev interpolation proposes P; the error is bounded on a uniform grid
    of spacing h by max |e(x_i)| + h^2/8 sup |e''|, where sup |P''| comes from
    V. A. Markov's inequality |T_k''| <= k^2 (k^2 - 1)/3 and sup |g^(m+2)| from
    the bump derivative bounds. Grid values are computed in double precision
    with a fixed rounding allowance.
    """
    eps = Fraction(1, 1 << n)
    terms, tail = family.terms_near(N, m, eps / 4)
    if not terms:
        return RationalPoly2.zero()
    if N == 0:
        total = Interval(Fraction(0), Fraction(0))
        for c, w in terms:
            total = total + bump_derivative(m, Interval(-c, -c)) * w
        return RationalPoly2.univariate([_dyadic_snap(float(total.mid), n + 4)])
    weight = sum(abs(w) for _, w in terms)
    curvature = float(weight * bump_sup(m + 2))
    scale = float(weight * bump_sup(m)) + 1
    grid_bits = n + 8
    target = float(eps) / 4
    D = 16
    while D <= max_degree:
        cheb = chebyshev.chebinterpolate(lambda t: _family_float(terms, m, N * t), D)
        snapped = [_dyadic_snap(c, grid_bits + D.bit_length()) for c in cheb]
        cf = np.array([float(c) for c in snapped])
        coarse = np.linspace(-1, 1, 8 * D + 1)
        if np.max(np.abs(chebyshev.chebval(coarse, cf) - _family_float(terms, m, N * coarse))) > target / 2:
            D *= 2
            continue
        k = np.arange(D + 1, dtype=float)
        markov = float(np.sum(np.abs(cf) * k * k * (k * k - 1) / 3)) / (N * N)
        h = sqrt(float(eps) / (markov + curvature + 1e-300))
        G = int(ceil(2 * N / h)) + 1
        if G > max_grid:
            raise EvaluationStall(f"validation grid too fine for slice N={N}, m={m}, n={n}")
        worst = 0.0
        for start in range(0, G, 1 << 16):
            idx = np.arange(start, min(G, start + (1 << 16)))
            t = -1 + 2 * idx / (G - 1)
            err = np.abs(chebyshev.chebval(t, cf) - _family_float(terms, m, N * t))
            worst = max(worst, float(np.max(err)))
        margin = 1e-9 * (scale + float(np.sum(np.abs(cf))))
        if worst + margin <= target:
            return RationalPoly2.univariate(chebyshev_to_monomial(snapped, N))
        D *= 2
    raise EvaluationStall(f"no polynomial of degree <= {max_degree} for slice N={N}, m={m}, n={n}")
