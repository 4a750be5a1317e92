"""Complex polynomials: degree bounds, degree, monic normalisation and zeros.

A polynomial name starts with a degree bound b and continues with a name of
the coefficient vector (a_0, ..., a_b) in C^(b+1). Tuples of points use the
same layout: length first, then the vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .analytic import AnalyticName, germ_of
from .intervals import IntervalC, precision
from .names import Name, RationalComplex, RationalPoly2, index_of, poly_index, unpair
from .roots import RootCertificate, isolate
from .spaces import CD, COMPLEX, EvaluationStall, MetricName, SeqName, point_of, snap_point

__all__ = [
    "PolyName", "TupleName", "NotMonicError",
    "poly_name", "poly_from_json", "poly_to_json", "parse_coefficient",
    "dbnd", "deg_monic", "ZerosRealizer", "zeros_monic", "monic_of",
    "deg_min_pre", "deg_min_post", "deg_via_min", "min_deg_pre", "min_deg_post", "min_truth_degree",
    "zeros_general", "monic_from_roots",
    "dbnd_analytic_pre", "deg_analytic_pre", "poly_analytic_name",
]


class NotMonicError(ValueError):
    """No coefficient is provably 1 within the degree bound."""


@dataclass(frozen=True)
class _Vector:
    length: int
    entries: SeqName

    @property
    def name(self) -> Name:
        return Name(lambda n: self.length if n == 0 else self.entries.name(n - 1), label=type(self).__name__)

    @classmethod
    def parse(cls, q: Name):
        return cls(q(0), SeqName(COMPLEX, Name(lambda n: q(n + 1))))

    def approx(self, j: int, n: int) -> RationalComplex:
        return point_of(self.entries.element(j), n)

    def enclosure(self, j: int, n: int) -> IntervalC:
        return IntervalC.ball(self.approx(j, n), Fraction(1, 1 << n))


@dataclass(frozen=True)
class PolyName(_Vector):
    """Degree bound ``length`` and coefficients a_0..a_length (ascending)."""

    @property
    def bound(self) -> int:
        return self.length

    def coefficient(self, j: int, n: int) -> IntervalC:
        return self.enclosure(j, n)


@dataclass(frozen=True)
class TupleName(_Vector):
    """A point of C^length."""


# --------------------------------------------------------------------------
# literals

def parse_coefficient(x) -> RationalComplex:
    """Accepts numbers, "p/q" strings, [re, im] pairs of those, or [rn, rd, in, id]."""
    if isinstance(x, RationalComplex):
        return x
    if isinstance(x, (list, tuple)):
        if len(x) == 4 and all(isinstance(v, int) for v in x):
            return RationalComplex.from_json(list(x))
        if len(x) == 2:
            return RationalComplex(Fraction(str(x[0])), Fraction(str(x[1])))
        raise ValueError(f"bad coefficient literal {x!r}")
    return RationalComplex(Fraction(str(x)))


def poly_name(coeffs: Sequence, bound: int | None = None, label: str | None = None) -> PolyName:
    """Name of the polynomial with exact rational coefficients (ascending)."""
    cs = [parse_coefficient(c) for c in coeffs]
    b = len(cs) - 1 if bound is None else bound
    if b < len(cs) - 1 and any(cs[b + 1:]):
        raise ValueError("degree bound below the degree")
    cs = cs + [RationalComplex()] * (b + 1 - len(cs))

    def q(i: int) -> int:
        j, _ = unpair(i)
        return index_of(cs[j]) if j <= b else 0

    return PolyName(b, SeqName(COMPLEX, Name(q, label=label)))


def poly_from_json(text) -> tuple[PolyName, list[RationalComplex]]:
    """Polynomial literal {"coeffs": [...], "bound": optional}; returns the name and exact coefficients."""
    data = json.loads(text) if isinstance(text, str) else text
    if isinstance(data, list):
        data = {"coeffs": data}
    cs = [parse_coefficient(c) for c in data["coeffs"]]
    return poly_name(cs, data.get("bound")), cs


def poly_to_json(coeffs: Sequence, bound: int | None = None) -> str:
    cs = [parse_coefficient(c) for c in coeffs]
    data = {"coeffs": [[str(c.re), str(c.im)] for c in cs]}
    if bound is not None:
        data["bound"] = bound
    return json.dumps(data)


# --------------------------------------------------------------------------
# computable operations

def dbnd(P: PolyName) -> int:
    return P.bound


def deg_monic(P: PolyName) -> int:
    """Degree of a monic polynomial from coefficient approximations at precision 1.

    |d_j - a_j| < 1/2, so the leading coefficient 1 shows |d| > 1/2 while every
    zero coefficient above it shows |d| < 1/2.
    """
    quarter = Fraction(1, 4)
    for j in range(P.bound, -1, -1):
        if P.approx(j, 1).abs2() > quarter:
            return j
    raise NotMonicError("no coefficient of modulus near 1")


@dataclass
class ZerosRealizer:
    """Zeros of a monic polynomial, as a tuple name with stable labels.

    Each requested precision n is served from the finest certified level
    computed so far (a 2^-m approximation is also a 2^-n one for m >= n); a new
    finer level is matched to the previous one by nearest centres, so entry j
    always tracks the same root.
    """

    P: PolyName
    degree: int = -1
    levels: dict[int, list[RationalComplex]] = field(default_factory=dict)
    certificates: dict[int, RootCertificate] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            self.degree = deg_monic(self.P)

    def _coefficients(self, m: int) -> list[IntervalC]:
        d = self.degree
        return [self.P.coefficient(j, m) for j in range(d)] + [IntervalC.point(1)]

    def certificate(self, n: int) -> RootCertificate:
        if n not in self.certificates:
            self.certificates[n] = isolate(self._coefficients, n)
        return self.certificates[n]

    def level(self, n: int) -> list[RationalComplex]:
        finer = [m for m in self.levels if m >= n]
        if finer:
            return self.levels[min(finer)]
        roots = self.certificate(n).roots()
        if self.levels:
            prev = self.levels[max(self.levels)]
            roots = _match(prev, roots)
        else:
            roots = sorted(roots, key=lambda z: (z.re, z.im))
        self.levels[n] = roots
        return roots

    def entry(self, j: int, n: int) -> RationalComplex:
        return self.level(n)[j]

    @property
    def tuple_name(self) -> TupleName:
        def q(i: int) -> int:
            j, n = unpair(i)
            return index_of(self.entry(j, n)) if j < self.degree else 0

        return TupleName(self.degree, SeqName(COMPLEX, Name(q, label="zeros")))


def _match(prev: list[RationalComplex], new: list[RationalComplex]) -> list[RationalComplex]:
    """Reorder ``new`` so slot j holds the candidate nearest the old slot j (greedy on distance)."""
    pairs = sorted(((prev[i] - new[k]).abs2(), i, k) for i in range(len(prev)) for k in range(len(new)))
    out: list[RationalComplex | None] = [None] * len(prev)
    used = set()
    for _, i, k in pairs:
        if out[i] is None and k not in used:
            out[i] = new[k]
            used.add(k)
    return out  # type: ignore[return-value]


def zeros_monic(P: PolyName) -> TupleName:
    return ZerosRealizer(P).tuple_name


def monic_of(P: PolyName, d: int, max_bits: int = 4096) -> PolyName:
    """Divide through by a_d, given the true degree d."""

    def q(i: int) -> int:
        j, n = unpair(i)
        if j > d:
            return 0
        k = n + 4
        with precision(2 * max_bits):
            while k <= max_bits:
                lead = P.coefficient(d, k)
                if not lead.contains_zero():
                    val = P.coefficient(j, k) / lead
                    if val.width <= Fraction(1, 1 << (n + 1)):
                        return index_of(snap_point(val.mid, n))
                k *= 2
        raise EvaluationStall(f"leading coefficient a_{d} not separated from 0")

    return PolyName(d, SeqName(COMPLEX, Name(q, label="monic")))


def monic_from_roots(T: TupleName) -> PolyName:
    """Coefficients of prod_j (X - y_j) from a name of the roots."""
    d = T.length

    def coeffs_at(k: int) -> list[IntervalC]:
        c = [IntervalC.point(1)]
        for j in range(d):
            y = T.enclosure(j, k)
            nxt = [IntervalC.point(0)] * (len(c) + 1)
            for i, ci in enumerate(c):
                nxt[i + 1] = nxt[i + 1] + ci
                nxt[i] = nxt[i] - ci * y
            c = nxt
        return c

    def q(i: int) -> int:
        j, n = unpair(i)
        if j > d:
            return 0
        k = n + 4 + d
        with precision(4 * n + 128):
            while True:
                val = coeffs_at(k)[j]
                if val.width <= Fraction(1, 1 << (n + 1)):
                    return index_of(snap_point(val.mid, n))
                k += 8

    return PolyName(d, SeqName(COMPLEX, Name(q, label="from_roots")))


# --------------------------------------------------------------------------
# degree vs. minimum

def _provably_nonzero(P: PolyName, j: int, n: int) -> bool:
    """|d_j| >= 2^-n at precision n shows a_j != 0."""
    return P.approx(j, n).abs2() >= Fraction(1, 1 << (2 * n))


def deg_min_pre(p: Name) -> Name:
    """Forward map: entry n >= 1 is b - (largest j provably nonzero at precision n-1)."""
    P = PolyName.parse(p)
    b = P.bound

    def q(n: int) -> int:
        if n == 0:
            return b
        for j in range(b, -1, -1):
            if _provably_nonzero(P, j, n - 1):
                return b - j
        return b + 1

    return Name(q, label="deg_min_pre")


def deg_min_post(p: Name, a: Name) -> Name:
    return Name(lambda n: p(0) - a(0), label="deg_min_post")


def deg_via_min(P: PolyName, min_oracle: Callable[[Name], Name]) -> int:
    """Degree of a nonzero polynomial, with one query to a minimum oracle."""
    p = P.name
    return deg_min_post(p, min_oracle(deg_min_pre(p)))(0)


def min_deg_pre(p: Name) -> Name:
    """Forward map: bound p(0), a_n = 2^-i for the least i with p(0) - p(i) = n, else 0."""
    b = p(0)

    def q(i: int) -> int:
        n, k = unpair(i)
        if n > b:
            return 0
        for t in range(k + 2):
            if p(0) - p(t) == n:
                return index_of(Fraction(1, 1 << t))
        return 0

    return PolyName(b, SeqName(COMPLEX, Name(q, label="min_deg_pre"))).name


def min_deg_post(p: Name, a: Name) -> Name:
    return Name(lambda n: p(0) - a(0), label="min_deg_post")


def min_truth_degree(p_min: int, p0: int) -> int:
    """Degree of the forward image when min p = p_min."""
    return p0 - p_min


def zeros_general(P: PolyName, min_oracle: Callable[[Name], Name]) -> ZerosRealizer:
    """Zeros of an arbitrary nonzero polynomial: degree via min, then normalise."""
    d = deg_via_min(P, min_oracle)
    return ZerosRealizer(monic_of(P, d), degree=d)


# --------------------------------------------------------------------------
# analytic functions that happen to be polynomials

def poly_analytic_name(coeffs: Sequence, advice: int, label: str | None = None) -> AnalyticName:
    """Analytic name of an exact polynomial (the caller vouches for the advice)."""
    poly = RationalPoly2.univariate(parse_coefficient(c) for c in coeffs)
    idx = poly_index(poly)
    return AnalyticName(advice, MetricName(CD, Name(lambda n: idx, label=label)))


def dbnd_analytic_pre(p: Name) -> Name:
    """O(N)-name p to P = sum_n 2^-(n + p(n)) X^p(n), with advice 2.

    On the radius-2^(1/3) disk every term is at most 2^-n, so |P| <= 2.
    When p enumerates a bounded set, deg P = max_n p(n) lies above all of it.
    """

    def approx(m: int) -> int:
        coeffs: dict[int, Fraction] = {}
        for n in range(m + 2):
            e = p(n)
            coeffs[e] = coeffs.get(e, Fraction(0)) + Fraction(1, 1 << (n + e))
        top = max(coeffs)
        return poly_index(RationalPoly2.univariate(coeffs.get(k, 0) for k in range(top + 1)))

    return AnalyticName(2, MetricName(CD, Name(approx, label="dbnd_pre"))).name


def deg_analytic_pre(p: Name) -> Name:
    """Analytic name of a polynomial to an O(N)-name of {m | a_m != 0}.

    Entry <m, n> lists m when the germ approximation d of a_m at precision n
    has |d| > 2^-n.
    """
    f = AnalyticName.parse(p)
    germ = germ_of(f.cont)

    def q(i: int) -> int:
        m, n = unpair(i)
        d = point_of(germ.element(m), n)
        return m + 1 if d.abs2() > Fraction(1, 1 << (2 * n)) else 0

    return Name(q, label="deg_analytic_pre")
