"""Represented spaces: naturals, open/closed subsets of N, metric spaces, sequences.

Metric names follow the Cauchy convention: p is a name of x when
d(x, x_{p(n)}) < 2^-n for every n, where x_j is the j-th rational point
(complex rationals, or rational polynomials for spaces of continuous
functions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .intervals import IntervalC, eval_poly, precision
from .models import FunctionModel, snap
from .names import (
    Name, RationalComplex, RationalPoly2, constant, enum_rational_complex,
    enum_rational_poly, index_of, interleave, poly_index, project,
)

__all__ = [
    "OpenSetName", "ClosedSetName", "MetricName", "SeqName",
    "REAL", "COMPLEX", "CD", "cinterval_space",
    "open_set_decode_prefix", "closed_set_decode_prefix",
    "real_eval", "cont_eval", "poly_approx", "point_of",
    "nat_name", "nat_value", "rational_point", "point_from_enclosures",
    "function_name", "pi_name", "validity_report", "EvaluationStall",
]

REAL = "R"
COMPLEX = "C"
CD = "C(D)"


def cinterval_space(N: int) -> str:
    return f"C([-{N},{N}])"


class EvaluationStall(RuntimeError):
    """Raised when a realizer cannot reach the requested precision within its budget."""


# --------------------------------------------------------------------------
# naturals, O(N), A(N)

def nat_name(k: int) -> Name:
    """The representation of N reads p(0); we use the constant stream."""
    return constant(k, label=f"nat({k})")


def nat_value(p: Name) -> int:
    return p(0)


@dataclass(frozen=True)
class OpenSetName:
    """Enumeration of O = {p(n) - 1 | p(n) > 0}; every stream is a valid name."""

    name: Name

    def enumerated(self, steps: int) -> set[int]:
        return open_set_decode_prefix(self, steps)


@dataclass(frozen=True)
class ClosedSetName:
    """A closed set, named by an enumeration of its complement."""

    name: Name

    def excluded(self, steps: int) -> set[int]:
        return open_set_decode_prefix(OpenSetName(self.name), steps)


def open_set_decode_prefix(p: OpenSetName | Name, steps: int) -> set[int]:
    name = p.name if isinstance(p, (OpenSetName, ClosedSetName)) else p
    return {name(n) - 1 for n in range(steps) if name(n) > 0}


def closed_set_decode_prefix(p: ClosedSetName, steps: int, universe: int) -> set[int]:
    """Members below ``universe`` not yet excluded after ``steps`` enumeration steps."""
    gone = open_set_decode_prefix(p, steps)
    return {k for k in range(universe) if k not in gone}


# --------------------------------------------------------------------------
# metric spaces

@dataclass(frozen=True)
class MetricName:
    space: str
    name: Name

    def __call__(self, n: int) -> int:
        return self.name(n)


@dataclass(frozen=True)
class SeqName:
    """Name of a sequence: component m at precision n sits at index <m, n>."""

    element_space: str
    name: Name

    def element(self, m: int) -> MetricName:
        return MetricName(self.element_space, project(self.name, m))

    @classmethod
    def of(cls, element_space: str, family) -> "SeqName":
        if callable(family) and not isinstance(family, (list, tuple)):
            return cls(element_space, interleave(lambda m: family(m).name))
        return cls(element_space, interleave([f.name for f in family]))


def point_of(p: MetricName | Name, n: int) -> RationalComplex:
    name = p.name if isinstance(p, MetricName) else p
    return enum_rational_complex(name(n))


def real_eval(x: MetricName | Name, n: int) -> IntervalC:
    """Enclosure of the named point: the 2^-n ball around the n-th approximation."""
    return IntervalC.ball(point_of(x, n), Fraction(1, 1 << n))


def poly_approx(f: MetricName | Name, n: int) -> RationalPoly2:
    name = f.name if isinstance(f, MetricName) else f
    return enum_rational_poly(name(n))


def cont_eval(f: MetricName, z: MetricName, n: int, max_rounds: int = 40) -> IntervalC:
    """Width <= 2^-n enclosure of f(z) for z in the domain of f."""
    m = n + 2
    slack = Fraction(1, 1 << m)
    poly = poly_approx(f, m)
    k = n + 2
    with precision(2 * n + 64):
        for _ in range(max_rounds):
            box = real_eval(z, k)
            val = eval_poly(poly, box).inflate(slack)
            if val.width <= Fraction(1, 1 << n):
                return val
            k += 4
    raise EvaluationStall(f"cont_eval did not reach 2^-{n}")


# --------------------------------------------------------------------------
# builders

def rational_point(q, space: str = COMPLEX) -> MetricName:
    q = RationalComplex.of(q)
    return MetricName(space, constant(index_of(q), label=f"pt({q})"))


def point_from_enclosures(enclose: Callable[[int], IntervalC], space: str = COMPLEX,
                          label: str | None = None) -> MetricName:
    """Name of the unique point inside every ``enclose(k)``.

    ``enclose(k)`` must contain the point and have width -> 0 as k grows.
    """

    def q(n: int) -> int:
        k = n + 2
        while True:
            box = enclose(k)
            if box.width <= Fraction(1, 1 << (n + 1)):
                break
            k += 4
        return index_of(snap_point(box.mid, n))

    return MetricName(space, Name(q, label=label))


def snap_point(z: RationalComplex, n: int) -> RationalComplex:
    eps = Fraction(1, 1 << (n + 2))
    return RationalComplex(snap(z.re, eps), snap(z.im, eps))


def function_name(model: FunctionModel, space: str = CD, label: str | None = None) -> MetricName:
    """Name of the modelled function: entry n is the index of a 2^-n approximant."""
    return MetricName(space, Name(lambda n: poly_index(model.approx(n)), label=label))


def pi_name() -> MetricName:
    """pi from its binary expansion: p(n) encodes floor(pi * 2^(n+1)) / 2^(n+1)."""

    def q(n: int) -> int:
        with mpmath.workprec(n + 64):
            digits = int(mpmath.floor(mpmath.pi * mpmath.mpf(2) ** (n + 1)))
        return index_of(Fraction(digits, 1 << (n + 1)))

    return MetricName(REAL, Name(q, label="pi"))


def validity_report(x: MetricName, truth: Callable[[int], IntervalC], depth: int) -> list[dict]:
    """Check d(x, x_{p(n)}) < 2^-n against a ground-truth enclosure, for n < depth.

    A row passes when the truth enclosure lies strictly inside the claimed ball.
    """
    rows = []
    for n in range(depth):
        claimed = real_eval(x, n)
        t = truth(n + 8)
        center = point_of(x, n)
        radius = Fraction(1, 1 << n)
        dist_hi = (t - IntervalC.point(center)).mag()
        rows.append({
            "index": n,
            "claimed_precision": f"2^-{n}",
            "interval": claimed.to_json(),
            "ok": bool(dist_hi < radius),
        })
    return rows
