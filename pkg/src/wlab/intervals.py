"""Dyadic interval arithmetic with outward rounding.

Endpoints are exact rationals whose denominators are powers of two. Results of
arithmetic are rounded outward to a relative working precision (significant
bits) held in a context variable, so enclosures stay sound while the size of
the numbers stays bounded.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import gmpy2

from .names import RationalComplex, RationalPoly2

_PREC = contextvars.ContextVar("wlab_prec", default=128)


@contextmanager
def precision(bits: int):
    """Temporarily raise (never lower) the working precision."""
    token = _PREC.set(max(bits, _PREC.get()))
    try:
        yield
    finally:
        _PREC.reset(token)


def working_precision() -> int:
    return _PREC.get()


def _exp2(x: Fraction) -> int:
    """floor(log2 |x|) for x != 0."""
    n, d = abs(x.numerator), x.denominator
    e = n.bit_length() - d.bit_length()
    if (n << max(0, -e)) < (d << max(0, e)):
        e -= 1
    return e


def round_down(x: Fraction, bits: int | None = None) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return x
    bits = bits or _PREC.get()
    shift = bits - _exp2(x)
    if x.denominator == 1 and shift <= 0 and x.numerator % (1 << -shift) == 0:
        return x
    if shift >= 0:
        scaled = x * (1 << shift)
        if scaled.denominator == 1:
            return x
        return Fraction(scaled.numerator // scaled.denominator, 1 << shift)
    q = 1 << -shift
    return Fraction((x.numerator // x.denominator) // q * q)


def round_up(x: Fraction, bits: int | None = None) -> Fraction:
    return -round_down(-Fraction(x), bits)


def dyadic(m: int, e: int) -> Fraction:
    """The number m * 2**e."""
    return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)


def sqrt_bounds(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic lo <= sqrt(x) <= hi with hi - lo <= 2^-bits * (1 + sqrt x)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative number")
    if x == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << (2 * bits)
    r = isqrt(x.numerator * scale // x.denominator)
    lo = Fraction(r, 1 << bits)
    hi = Fraction(r + 1, 1 << bits)
    return lo, hi


def root_bounds(a: Fraction, b: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic bounds on a**(1/b) for rational a > 0 and integer b >= 1."""
    a = Fraction(a)
    if a <= 0 or b < 1:
        raise ValueError("need a > 0 and b >= 1")
    scaled = a.numerator * (1 << (b * bits)) // a.denominator
    r, exact = gmpy2.iroot(gmpy2.mpz(scaled), b)
    r = int(r)
    lo = Fraction(r, 1 << bits)
    hi = lo if exact and scaled * a.denominator == a.numerator * (1 << (b * bits)) else Fraction(r + 1, 1 << bits)
    return lo, hi


def pow2_bounds(r: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic bounds on 2**r for rational r."""
    r = Fraction(r)
    whole = r.numerator // r.denominator
    frac = r - whole
    if frac == 0:
        v = dyadic(1, whole)
        return v, v
    lo, hi = root_bounds(Fraction(1 << frac.numerator), frac.denominator, bits)
    return lo * dyadic(1, whole), hi * dyadic(1, whole)


# --------------------------------------------------------------------------
# real intervals

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def ball(cls, c, r) -> "Interval":
        c, r = Fraction(c), Fraction(r)
        return cls(round_down(c - r), round_up(c + r))

    @classmethod
    def of(cls, x) -> "Interval":
        return x if isinstance(x, Interval) else cls.point(x)

    def _mk(self, lo, hi) -> "Interval":
        return Interval(round_down(lo), round_up(hi))

    def __add__(self, o):
        o = Interval.of(o)
        return self._mk(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-Interval.of(o))

    def __rsub__(self, o):
        return Interval.of(o) - self

    def __mul__(self, o):
        o = Interval.of(o)
        if self.lo == self.hi and o.lo == o.hi:
            v = self.lo * o.lo
            return self._mk(v, v)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._mk(min(ps), max(ps))

    __rmul__ = __mul__

    def recip(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval {self} contains zero")
        return self._mk(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o):
        return self * Interval.of(o).recip()

    def __rtruediv__(self, o):
        return Interval.of(o) * self.recip()

    def __pow__(self, k: int):
        if k < 0:
            return (self ** -k).recip()
        if k == 0:
            return Interval.point(1)
        if k % 2 == 0:
            m, big = self.mig(), self.mag()
            return self._mk(m ** k, big ** k)
        return self._mk(self.lo ** k, self.hi ** k)

    def square(self) -> "Interval":
        return self ** 2

    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def abs(self) -> "Interval":
        return Interval(self.mig(), self.mag())

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Fraction(x) <= self.hi

    __contains__ = contains

    def intersects(self, o: "Interval") -> bool:
        return self.lo <= o.hi and o.lo <= self.hi

    def intersect(self, o: "Interval") -> "Interval":
        return Interval(max(self.lo, o.lo), min(self.hi, o.hi))

    def hull(self, o: "Interval") -> "Interval":
        return Interval(min(self.lo, o.lo), max(self.hi, o.hi))

    def inflate(self, r) -> "Interval":
        return self._mk(self.lo - r, self.hi + r)

    def sqrt(self) -> "Interval":
        bits = _PREC.get()
        lo = sqrt_bounds(max(self.lo, Fraction(0)), bits)[0]
        hi = sqrt_bounds(self.hi, bits)[1]
        return Interval(lo, hi)

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


# --------------------------------------------------------------------------
# exp

def _exp_small(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bounds on e^x for |x| <= 1/2 by Taylor series with remainder."""
    term = Fraction(1)
    total = Fraction(1)
    k = 0
    eps = Fraction(1, 1 << (bits + 4))
    while True:
        k += 1
        term = round_down(term * x / k, bits + 16) if term * x >= 0 else round_up(term * x / k, bits + 16)
        total += term
        if abs(term) < eps:
            break
    # tail after the last term: |x|^(k+1)/(k+1)! * e^(1/2) <= 2|term|, plus accumulated rounding
    slack = 2 * abs(term) + Fraction(k + 1, 1 << (bits + 14))
    return total - slack, total + slack


def exp_bounds(x: Fraction, bits: int | None = None) -> tuple[Fraction, Fraction]:
    """Dyadic lo <= e^x <= hi for rational x, with relative width about 2^-bits."""
    bits = bits or _PREC.get()
    x = Fraction(x)
    if x == 0:
        return Fraction(1), Fraction(1)
    s = max(0, _exp2(x) + 2)
    y = x / (1 << s)
    work = bits + 2 * s + 16
    lo, hi = _exp_small(y, work)
    lo = max(lo, Fraction(0))
    for _ in range(s):
        lo = round_down(lo * lo, work)
        hi = round_up(hi * hi, work)
    return round_down(lo, bits), round_up(hi, bits)


def exp(x: Interval) -> Interval:
    x = Interval.of(x)
    lo = exp_bounds(x.lo)[0]
    hi = exp_bounds(x.hi)[1]
    return Interval(lo, hi)


# --------------------------------------------------------------------------
# complex rectangles

@dataclass(frozen=True)
class IntervalC:
    re: Interval
    im: Interval

    @classmethod
    def point(cls, z) -> "IntervalC":
        z = RationalComplex.of(z)
        return cls(Interval.point(z.re), Interval.point(z.im))

    @classmethod
    def ball(cls, z, r) -> "IntervalC":
        z = RationalComplex.of(z)
        return cls(Interval.ball(z.re, r), Interval.ball(z.im, r))

    @classmethod
    def of(cls, x) -> "IntervalC":
        if isinstance(x, IntervalC):
            return x
        if isinstance(x, Interval):
            return cls(x, Interval.point(0))
        return cls.point(x)

    @classmethod
    def from_bounds(cls, re_lo, re_hi, im_lo=0, im_hi=0) -> "IntervalC":
        return cls(Interval(re_lo, re_hi), Interval(im_lo, im_hi))

    def __add__(self, o):
        o = IntervalC.of(o)
        return IntervalC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return IntervalC(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-IntervalC.of(o))

    def __rsub__(self, o):
        return IntervalC.of(o) - self

    def __mul__(self, o):
        o = IntervalC.of(o)
        if o.im.lo == o.im.hi == 0:
            return IntervalC(self.re * o.re, self.im * o.re)
        return IntervalC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "IntervalC":
        return IntervalC(self.re, -self.im)

    def abs2(self) -> Interval:
        return self.re.square() + self.im.square()

    def recip(self) -> "IntervalC":
        d = self.abs2()
        inv = d.recip()
        return IntervalC(self.re * inv, -self.im * inv)

    def __truediv__(self, o):
        return self * IntervalC.of(o).recip()

    def __rtruediv__(self, o):
        return IntervalC.of(o) * self.recip()

    def __pow__(self, k: int):
        if k < 0:
            return (self ** -k).recip()
        out = IntervalC.point(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mag(self) -> Fraction:
        """Upper bound on |z| over the rectangle."""
        return sqrt_bounds(self.re.mag() ** 2 + self.im.mag() ** 2, _PREC.get())[1]

    def mig(self) -> Fraction:
        """Lower bound on |z| over the rectangle."""
        return sqrt_bounds(self.re.mig() ** 2 + self.im.mig() ** 2, _PREC.get())[0]

    def abs(self) -> Interval:
        return Interval(self.mig(), self.mag())

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def mid(self) -> RationalComplex:
        return RationalComplex(self.re.mid, self.im.mid)

    def contains(self, z) -> bool:
        if isinstance(z, IntervalC):
            return self.re.contains(z.re) and self.im.contains(z.im)
        z = RationalComplex.of(z)
        return z.re in self.re and z.im in self.im

    __contains__ = contains

    def contains_zero(self) -> bool:
        return 0 in self.re and 0 in self.im

    def intersects(self, o: "IntervalC") -> bool:
        return self.re.intersects(o.re) and self.im.intersects(o.im)

    def intersect(self, o: "IntervalC") -> "IntervalC":
        return IntervalC(self.re.intersect(o.re), self.im.intersect(o.im))

    def hull(self, o: "IntervalC") -> "IntervalC":
        return IntervalC(self.re.hull(o.re), self.im.hull(o.im))

    def inflate(self, r) -> "IntervalC":
        return IntervalC(self.re.inflate(r), self.im.inflate(r))

    def __complex__(self):
        return complex(float(self.re.mid), float(self.im.mid))

    def to_json(self) -> dict:
        return {
            "re": [str(self.re.lo), str(self.re.hi)],
            "im": [str(self.im.lo), str(self.im.hi)],
        }

    def __repr__(self):
        if self.im.lo == self.im.hi == 0:
            return f"IntervalC({self.re!r})"
        return f"IntervalC({self.re!r} + i{self.im!r})"


def eval_poly(poly: RationalPoly2, box: IntervalC) -> IntervalC:
    """Enclosure of ``poly`` over every point of the rectangle ``box``."""
    box = IntervalC.of(box)
    if not poly.coeffs:
        return IntervalC.point(0)
    if poly.is_holomorphic():
        deg = max(a for a, _ in poly.coeffs)
        acc = IntervalC.point(0)
        for k in range(deg, -1, -1):
            acc = acc * box + IntervalC.point(poly.coefficient(k, 0))
        return acc
    powers = {0: IntervalC.point(1)}
    cpowers = {0: IntervalC.point(1)}
    zc = box.conj()
    total = IntervalC.point(0)
    for (a, b), c in sorted(poly.coeffs.items()):
        for k in range(1, a + 1):
            if k not in powers:
                powers[k] = powers[k - 1] * box
        for k in range(1, b + 1):
            if k not in cpowers:
                cpowers[k] = cpowers[k - 1] * zc
        total = total + powers[a] * cpowers[b] * IntervalC.point(c)
    return total


def eval_real_poly(coeffs, x: Interval) -> Interval:
    """Horner enclosure of a real polynomial given by ascending coefficients."""
    x = Interval.of(x)
    acc = Interval.point(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc
