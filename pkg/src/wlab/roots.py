"""Certified root isolation for monic polynomials with interval coefficients.

Aberth iteration proposes root approximations; clusters of proposals are
turned into discs and each disc is certified by a Pellet (Rouché) test on the
Taylor-shifted polynomial: if the k-th shifted coefficient dominates the sum of
all others, the disc holds exactly k roots counted with multiplicity, which
is the winding number of P around the disc boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

import mpmath

from .intervals import IntervalC, precision
from .models import snap
from .names import RationalComplex

__all__ = ["CertifiedDisc", "RootCertificate", "aberth", "pellet_count", "certify", "isolate"]


@dataclass(frozen=True)
class CertifiedDisc:
    center: RationalComplex
    radius: Fraction
    multiplicity: int
    dominant: Fraction   # lower bound on |b_k|
    others: Fraction     # upper bound on sum_{j != k} |b_j|

    def box(self) -> IntervalC:
        return IntervalC.ball(self.center, self.radius)

    def to_json(self) -> dict:
        return {
            "box": self.box().to_json(),
            "center": [str(self.center.re), str(self.center.im)],
            "radius": str(self.radius),
            "multiplicity": self.multiplicity,
            "certificate": {
                "method": "pellet-rouche winding count",
                "winding": self.multiplicity,
                "dominant_lower": str(self.dominant),
                "others_upper": str(self.others),
            },
        }


@dataclass
class RootCertificate:
    degree: int
    discs: list[CertifiedDisc] = field(default_factory=list)
    coefficient_precision: int = 0

    def roots(self) -> list[RationalComplex]:
        out = []
        for d in self.discs:
            out.extend([d.center] * d.multiplicity)
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "roots": [d.to_json() for d in self.discs],
            "coefficient_precision": self.coefficient_precision,
        }


def aberth(coeffs: Sequence[complex], prec: int, max_iter: int = 400) -> list:
    """Simultaneous Aberth-Ehrlich iteration for a monic polynomial (ascending coefficients)."""
    d = len(coeffs) - 1
    if d == 0:
        return []
    with mpmath.workprec(prec):
        a = [mpmath.mpc(c) for c in coeffs]
        bound = 1 + max(abs(c) for c in a[:-1])
        zs = [bound * mpmath.expj(2 * mpmath.pi * k / d + mpmath.mpf("0.4")) for k in range(d)]
        tol = mpmath.mpf(2) ** (-(prec // 2))
        for _ in range(max_iter):
            worst = 0
            new = []
            for i, z in enumerate(zs):
                p = a[d]
                dp = 0
                for c in reversed(a[:-1]):
                    dp = dp * z + p
                    p = p * z + c
                if p == 0:
                    new.append(z)
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpf(1)
                s = sum(1 / (z - w) for j, w in enumerate(zs) if j != i and z != w)
                step = ratio / (1 - ratio * s)
                new.append(z - step)
                worst = max(worst, abs(step))
            zs = new
            if worst < tol:
                break
        return zs


def taylor_shift(coeffs: Sequence[IntervalC], c: RationalComplex, r: Fraction) -> list[IntervalC]:
    """Coefficients b_j of P(c + r w) = sum b_j w^j."""
    d = len(coeffs) - 1
    cpow = [IntervalC.point(1)]
    cc = IntervalC.point(c)
    for _ in range(d):
        cpow.append(cpow[-1] * cc)
    out = []
    rj = Fraction(1)
    for j in range(d + 1):
        acc = IntervalC.point(0)
        for i in range(j, d + 1):
            acc = acc + coeffs[i] * cpow[i - j] * comb(i, j)
        out.append(acc * rj)
        rj *= r
    return out


def pellet_count(coeffs: Sequence[IntervalC], c: RationalComplex, r: Fraction, k: int):
    """(ok, dominant_lower, others_upper) for the k-roots test on the disc |z - c| <= r."""
    b = taylor_shift(coeffs, c, r)
    dom = b[k].mig()
    rest = sum((b[j].mag() for j in range(len(b)) if j != k), Fraction(0))
    return dom > rest, dom, rest


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _frac(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if not man:
        return Fraction(0)
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)


def _clusters(points: list, tau: float) -> list[list[int]]:
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) < tau:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def certify(coeffs: Sequence[IntervalC], n: int) -> RootCertificate | None:
    """One attempt: isolate all roots in discs of radius <= 2^-(n+1), or None."""
    d = len(coeffs) - 1
    cert = RootCertificate(d)
    if d == 0:
        return cert
    work = 4 * n + 64
    for c in coeffs:
        work = max(work, 2 * max(c.re.width.denominator.bit_length(), 1) + 32)
    with mpmath.workprec(work):
        mids = [mpmath.mpc(_mpf(c.mid.re), _mpf(c.mid.im)) for c in coeffs]
        approx = aberth(mids, work)
        groups = _clusters(approx, mpmath.mpf(2) ** (-(n + 3)))
        centers = []
        for g in groups:
            z = sum(approx[i] for i in g) / len(g)
            centers.append(z)
    base = Fraction(1, 1 << (n + 1))
    grid = Fraction(1, 1 << (n + 8))
    discs = []
    with precision(work + 32):
        for gi, g in enumerate(groups):
            z = centers[gi]
            center = RationalComplex(snap(_frac(z.real), grid), snap(_frac(z.imag), grid))
            radius = base
            for gj, _ in enumerate(groups):
                if gj != gi:
                    sep = abs(centers[gi] - centers[gj])
                    radius = min(radius, snap_down(_frac(sep) * 2 / 5))
            ok, dom, rest = pellet_count(coeffs, center, radius, len(g))
            if not ok:
                return None
            discs.append(CertifiedDisc(center, radius, len(g), dom, rest))
    if sum(dd.multiplicity for dd in discs) != d:
        return None
    cert.discs = sorted(discs, key=lambda dd: (dd.center.re, dd.center.im))
    return cert


def snap_down(x: Fraction) -> Fraction:
    """Largest power of two not above x (x > 0)."""
    e = x.numerator.bit_length() - x.denominator.bit_length()
    v = Fraction(2) ** e
    while v > x:
        v /= 2
    while v * 2 <= x:
        v *= 2
    return v


def isolate(coefficients: Callable[[int], list[IntervalC]], n: int, max_rounds: int = 12) -> RootCertificate:
    """Certified discs of radius <= 2^-(n+1) holding all roots.

    ``coefficients(m)`` returns enclosures (ascending, leading one exact) of
    width about 2^-m; the coefficient precision grows until certification succeeds.
    """
    m = 2 * n + 16
    for _ in range(max_rounds):
        cert = certify(coefficients(m), n)
        if cert is not None:
            cert.coefficient_precision = m
            return cert
        m *= 2
    raise RuntimeError(f"root isolation failed at precision 2^-{n}")
