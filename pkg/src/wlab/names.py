"""Baire-space names: lazy memoized integer streams and their coding calculus.

A name is a total function from the naturals to the naturals. Everything a
realizer sees is a name; rational objects (complex rationals, polynomials)
are carried as indices into fixed bijective enumerations defined here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence

import gmpy2

__all__ = [
    "Name", "InstrumentedName", "ReplayName", "UnloggedQuery",
    "pair", "unpair", "triple", "untriple",
    "constant", "from_values", "interleave", "project",
    "encode_list", "decode_list",
    "rational_index", "rational_of",
    "RationalComplex", "enum_rational_complex", "index_of",
    "RationalPoly2", "enum_rational_poly", "poly_index",
]


# --------------------------------------------------------------------------
# pairing

def pair(m: int, n: int) -> int:
    """Cantor pairing ``(m+n)(m+n+1)/2 + n``."""
    s = m + n
    return s * (s + 1) // 2 + n


def unpair(k: int) -> tuple[int, int]:
    w = (isqrt(8 * k + 1) - 1) // 2
    n = k - w * (w + 1) // 2
    return w - n, n


def triple(a: int, b: int, c: int) -> int:
    return pair(a, pair(b, c))


def untriple(k: int) -> tuple[int, int, int]:
    a, r = unpair(k)
    b, c = unpair(r)
    return a, b, c


# --------------------------------------------------------------------------
# names

class Name:
    """A lazily evaluated, memoized total stream ``n -> value``.

    ``fn`` is called at most once per index. Names are immutable from the
    outside and may be shared between threads.
    """

    __slots__ = ("_fn", "_memo", "_lock", "label")

    def __init__(self, fn: Callable[[int], int], label: str | None = None):
        self._fn = fn
        self._memo: dict[int, int] = {}
        self._lock = threading.RLock()
        self.label = label

    def __call__(self, n: int) -> int:
        if n < 0:
            raise IndexError(f"negative index {n}")
        try:
            return self._memo[n]
        except KeyError:
            pass
        with self._lock:
            if n not in self._memo:
                v = self._fn(n)
                if not isinstance(v, int) or v < 0:
                    raise ValueError(f"name value at {n} is not a natural number: {v!r}")
                self._memo[n] = v
            return self._memo[n]

    def prefix(self, k: int) -> list[int]:
        return [self(i) for i in range(k)]

    def __repr__(self) -> str:
        shown = ", ".join(str(v) for v in self.prefix(5))
        tag = f" {self.label}" if self.label else ""
        return f"<Name{tag} [{shown}, ...]>"


class InstrumentedName(Name):
    """Wraps a name and records, in order, every index queried through it."""

    __slots__ = ("inner", "log")

    def __init__(self, inner: Name):
        self.inner = inner
        self.log: list[int] = []
        super().__init__(self._query, label=inner.label)

    def _query(self, n: int) -> int:
        return self.inner(n)

    def __call__(self, n: int) -> int:
        self.log.append(n)
        return super().__call__(n)

    def queried(self) -> dict[int, int]:
        return {i: self.inner(i) for i in self.log}


class UnloggedQuery(LookupError):
    pass


class ReplayName(Name):
    """Serves the values of a finite query log and ``fill`` elsewhere.

    With ``fill=None`` any index outside the log raises ``UnloggedQuery``.
    """

    __slots__ = ("known", "fill")

    def __init__(self, known: Mapping[int, int], fill: Callable[[int], int] | None = None):
        self.known = dict(known)
        self.fill = fill
        super().__init__(self._serve, label="replay")

    def _serve(self, n: int) -> int:
        if n in self.known:
            return self.known[n]
        if self.fill is None:
            raise UnloggedQuery(n)
        return self.fill(n)


def constant(c: int, label: str | None = None) -> Name:
    return Name(lambda n: c, label=label or f"const({c})")


def from_values(values: Sequence[int], tail: int | Callable[[int], int] = 0,
                label: str | None = None) -> Name:
    """A name with the given leading values; afterwards ``tail`` (constant or function)."""
    vals = list(values)
    if callable(tail):
        return Name(lambda n: vals[n] if n < len(vals) else tail(n), label=label)
    return Name(lambda n: vals[n] if n < len(vals) else tail, label=label)


def interleave(family: Sequence[Name] | Callable[[int], Name], label: str | None = None) -> Name:
    """``<(p_k)>(<m, n>) = p_m(n)``; indices beyond a finite family read as 0."""
    if callable(family) and not isinstance(family, Sequence):
        get = family
    else:
        fam = list(family)
        zero = constant(0)
        get = lambda m: fam[m] if m < len(fam) else zero  # noqa: E731

    def q(k: int) -> int:
        m, n = unpair(k)
        return get(m)(n)

    return Name(q, label=label)


def project(p: Name, m: int) -> Name:
    return Name(lambda n: p(pair(m, n)), label=f"proj{m}")


# --------------------------------------------------------------------------
# bijective coding of finite lists of naturals
#
# A nonempty list (a_1, ..., a_k) is written as bij2(a_1) 3 bij2(a_2) 3 ... bij2(a_k)
# over the digit alphabet {1, 2, 3}, where bij2 is bijective base 2 with digits
# {1, 2}. Strings over {1, 2, 3} are read in bijective base 3. Code size is linear
# in the bit sizes of the entries.

def _bij2(a: int) -> str:
    length = (a + 1).bit_length() - 1
    if length == 0:
        return ""
    body = format(a - ((1 << length) - 1), "b").zfill(length)
    return body.translate(_BIN_TO_BIJ)


def _unbij2(s: str) -> int:
    if not s:
        return 0
    return int(s.translate(_BIJ_TO_BIN), 2) + (1 << len(s)) - 1


_BIN_TO_BIJ = str.maketrans("01", "12")
_BIJ_TO_BIN = str.maketrans("12", "01")
_TERN_DOWN = str.maketrans("123", "012")
_TERN_UP = str.maketrans("012", "123")


def _str_value(s: str) -> int:
    if not s:
        return 0
    return int(gmpy2.mpz(s.translate(_TERN_DOWN), 3)) + (3 ** len(s) - 1) // 2


def _value_str(v: int) -> str:
    if v == 0:
        return ""
    # length L with (3^L - 1)/2 <= v < (3^(L+1) - 1)/2
    length = max(1, int(v.bit_length() / 1.5849625007211563) - 1)
    while (3 ** (length + 1) - 1) // 2 <= v:
        length += 1
    while (3 ** length - 1) // 2 > v:
        length -= 1
    rest = v - (3 ** length - 1) // 2
    digits = gmpy2.digits(rest, 3).zfill(length) if rest else "0" * length
    return digits.translate(_TERN_UP)


def _encode_nonempty(values: Sequence[int]) -> int:
    return _str_value("3".join(_bij2(a) for a in values))


def _decode_nonempty(v: int) -> list[int]:
    return [_unbij2(part) for part in _value_str(v).split("3")]


def encode_list(values: Sequence[int]) -> int:
    """Bijection from finite lists of naturals onto the naturals."""
    if any(a < 0 for a in values):
        raise ValueError("list entries must be natural numbers")
    if not values:
        return 0
    return 1 + _encode_nonempty(values)


def decode_list(code: int) -> list[int]:
    if code == 0:
        return []
    return _decode_nonempty(code - 1)


# --------------------------------------------------------------------------
# rationals via continued fractions

def _cf(p: int, q: int) -> list[int]:
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def _positive_rational_code(x: Fraction) -> int:
    terms = _cf(x.numerator, x.denominator)
    if len(terms) > 1:
        terms = [terms[0]] + [a - 1 for a in terms[1:-1]] + [terms[-1] - 2]
    else:
        terms = [terms[0] - 1]  # a positive integer
    return _encode_nonempty(terms)


def _positive_rational(code: int) -> Fraction:
    terms = _decode_nonempty(code)
    if len(terms) > 1:
        terms = [terms[0]] + [a + 1 for a in terms[1:-1]] + [terms[-1] + 2]
    else:
        terms = [terms[0] + 1]
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        x = a + 1 / x
    return x


def rational_index(x: Fraction | int) -> int:
    """Bijection Q -> N: 0 -> 0, positive r -> 2c+1, negative r -> 2c+2."""
    x = Fraction(x)
    if x == 0:
        return 0
    c = _positive_rational_code(abs(x))
    return 2 * c + 1 if x > 0 else 2 * c + 2


@lru_cache(maxsize=1 << 16)
def rational_of(k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    c, sign = divmod(k - 1, 2)
    r = _positive_rational(c)
    return r if sign == 0 else -r


# --------------------------------------------------------------------------
# complex rationals

@dataclass(frozen=True)
class RationalComplex:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, z) -> "RationalComplex":
        if isinstance(z, RationalComplex):
            return z
        if isinstance(z, complex):
            return cls(Fraction(z.real), Fraction(z.imag))
        if isinstance(z, tuple):
            return cls(*z)
        return cls(Fraction(z), Fraction(0))

    def __add__(self, o):
        o = RationalComplex.of(o)
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = RationalComplex.of(o)
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return RationalComplex.of(o) - self

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __mul__(self, o):
        o = RationalComplex.of(o)
        return RationalComplex(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RationalComplex.of(o)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("complex division by zero")
        return self * o.conj() * RationalComplex(1 / d)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conj(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"RC({self.re})"
        return f"RC({self.re}, {self.im})"

    def to_json(self) -> list[int]:
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "RationalComplex":
        rn, rd, im_n, im_d = data
        return cls(Fraction(rn, rd), Fraction(im_n, im_d))


RC = RationalComplex


def index_of(q: RationalComplex | Fraction | int) -> int:
    q = RationalComplex.of(q)
    return pair(rational_index(q.re), rational_index(q.im))


@lru_cache(maxsize=1 << 16)
def enum_rational_complex(n: int) -> RationalComplex:
    a, b = unpair(n)
    return RationalComplex(rational_of(a), rational_of(b))


# --------------------------------------------------------------------------
# polynomials in z and conj(z) with complex rational coefficients

class RationalPoly2:
    """Polynomial ``sum c[a, b] z^a conj(z)^b`` with rational complex coefficients.

    On a real interval (``z`` real) this is an ordinary real polynomial in one
    variable. Zero coefficients are dropped so equal polynomials compare equal.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            c = RationalComplex.of(c)
            if c:
                clean[(int(a), int(b))] = c
        self.coeffs: dict[tuple[int, int], RationalComplex] = clean
        self._hash = None

    @classmethod
    def univariate(cls, coeffs: Iterable[object]) -> "RationalPoly2":
        return cls({(k, 0): c for k, c in enumerate(coeffs)})

    @classmethod
    def zero(cls) -> "RationalPoly2":
        return cls({})

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self.coeffs), default=-1)

    def coefficient(self, a: int, b: int = 0) -> RationalComplex:
        return self.coeffs.get((a, b), RationalComplex())

    def is_holomorphic(self) -> bool:
        return all(b == 0 for _, b in self.coeffs)

    def __call__(self, z) -> RationalComplex:
        z = RationalComplex.of(z)
        zc = z.conj()
        total = RationalComplex()
        for (a, b), c in self.coeffs.items():
            term = c
            for _ in range(a):
                term = term * z
            for _ in range(b):
                term = term * zc
            total = total + term
        return total

    def circle_coefficient(self, k: int) -> RationalComplex:
        """k-th Fourier coefficient of ``t -> P(e^{it})``: the sum of c[a, b] with a - b = k."""
        total = RationalComplex()
        for (a, b), c in self.coeffs.items():
            if a - b == k:
                total = total + c
        return total

    def __eq__(self, other):
        return isinstance(other, RationalPoly2) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __add__(self, other: "RationalPoly2") -> "RationalPoly2":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, RationalComplex()) + c
        return RationalPoly2(out)

    def scale(self, c) -> "RationalPoly2":
        c = RationalComplex.of(c)
        return RationalPoly2({k: v * c for k, v in self.coeffs.items()})

    def __repr__(self):
        terms = " + ".join(f"{c!r}*z^{a}*zb^{b}" for (a, b), c in sorted(self.coeffs.items()))
        return f"RationalPoly2({terms or '0'})"


def poly_index(poly: RationalPoly2) -> int:
    """Dense coefficient list over monomials ordered by ``pair(a, b)``.

    The last entry is nonzero, so it is stored shifted down by one; this makes
    the coding a bijection onto canonical polynomials.
    """
    if not poly.coeffs:
        return 0
    slots = {pair(a, b): index_of(c) for (a, b), c in poly.coeffs.items()}
    top = max(slots)
    values = [slots.get(j, 0) for j in range(top + 1)]
    values[-1] -= 1
    return encode_list(values)


@lru_cache(maxsize=4096)
def enum_rational_poly(n: int) -> RationalPoly2:
    values = decode_list(n)
    if not values:
        return RationalPoly2.zero()
    values[-1] += 1
    coeffs = {}
    for j, v in enumerate(values):
        if v:
            coeffs[unpair(j)] = enum_rational_complex(v)
    return RationalPoly2(coeffs)
