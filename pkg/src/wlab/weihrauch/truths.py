"""Finite descriptions of the objects that oracle queries name."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..bumps import SmoothFamily
from ..names import Name, RationalComplex, from_values

__all__ = [
    "Stream", "Complement", "UpSet", "Known", "GermTruth", "FunctionTruth", "PolyTruth", "TestFnTruth",
    "ColumnTruth", "SeqTruth", "LimitTruth", "ag_holds",
]


@dataclass(frozen=True)
class Stream:
    """The Baire point head + (tail, tail, ...)."""

    head: tuple[int, ...]
    tail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(v) for v in self.head))

    def name(self, label: str | None = None) -> Name:
        return from_values(self.head, self.tail, label=label)

    def __call__(self, n: int) -> int:
        return self.head[n] if n < len(self.head) else self.tail

    def values(self) -> set[int]:
        return set(self.head) | {self.tail}

    @property
    def support(self) -> frozenset[int]:
        if self.tail:
            raise ValueError("support is infinite")
        return frozenset(i for i, v in enumerate(self.head) if v > 0)

    def minimum(self) -> int:
        return min(self.values())

    def is_zero(self) -> bool:
        return not any(self.values())

    def open_set(self) -> frozenset[int]:
        """{p(n) - 1 | p(n) > 0}."""
        return frozenset(v - 1 for v in self.values() if v > 0)

    def closed_least(self) -> int:
        """Least element of the complement of the open set."""
        gone = self.open_set()
        k = 0
        while k in gone:
            k += 1
        return k

    def excluded(self, k: int) -> bool:
        return k in self.open_set()

    def settled(self) -> int:
        """Index from which the stream is constant."""
        return len(self.head)

    def first_occurrence(self, v: int) -> int | None:
        for i, w in enumerate(self.head):
            if w == v:
                return i
        return len(self.head) if v == self.tail else None


@dataclass(frozen=True)
class Complement:
    """The enumeration p(n) = n + 1 for n not in ``kept``, else 0; it names the closed set ``kept``."""

    kept: frozenset[int]

    def __post_init__(self):
        if not self.kept:
            raise ValueError("closed choice needs a nonempty set")
        object.__setattr__(self, "kept", frozenset(self.kept))

    def __call__(self, n: int) -> int:
        return 0 if n in self.kept else n + 1

    def name(self, label: str | None = None) -> Name:
        return Name(self, label=label)

    def excluded(self, k: int) -> bool:
        return k not in self.kept

    def closed_least(self) -> int:
        return min(self.kept)

    def settled(self) -> int:
        """From here on the least non-excluded number is fixed."""
        return min(self.kept) + 1


@dataclass(frozen=True)
class UpSet:
    """A closed subset of N with a known member.

    ``member`` decides the set when given; otherwise the set is only known to
    contain every k >= witness.
    """

    witness: int
    member: Callable[[int], bool] | None = None

    def contains(self, k: int) -> bool | None:
        if self.member is not None:
            return self.member(k)
        return True if k >= self.witness else None

    def least(self) -> int:
        if self.member is None:
            return self.witness
        k = 0
        while not self.member(k):
            k += 1
        return k


def ag_holds(a: RationalComplex, m: int, k: int) -> bool:
    """|a| <= m 2^(-k/(m+1)), decided exactly: (|a|^2 / m^2)^(m+1) <= 4^-k."""
    a2 = a.abs2()
    if m == 0:
        return a2 == 0
    return (a2 / (m * m)) ** (m + 1) * (1 << (2 * k)) <= 1


@dataclass(frozen=True)
class GermTruth:
    """Coefficients a_k exactly, with a decision procedure for the advice set."""

    coeff: Callable[[int], RationalComplex]
    advice: int
    valid: Callable[[int], bool]

    @classmethod
    def finite(cls, coeffs: Sequence) -> "GermTruth":
        cs = [RationalComplex.of(c) for c in coeffs]

        def valid(m: int) -> bool:
            return all(ag_holds(c, m, k) for k, c in enumerate(cs))

        m = 0
        while not valid(m):
            m += 1
        return cls(lambda k: cs[k] if k < len(cs) else RationalComplex(), m, valid)

    @classmethod
    def geometric(cls, scale, ratio) -> "GermTruth":
        """a_k = scale * ratio^k with 0 < ratio < 1; the decay test is exact on the ratio."""
        scale, ratio = Fraction(scale), Fraction(ratio)

        def valid(m: int) -> bool:
            if m == 0:
                return scale == 0
            return abs(scale) <= m and ratio ** (m + 1) <= Fraction(1, 2)

        m = 0
        while not valid(m):
            m += 1
        return cls(lambda k: RationalComplex(scale * ratio ** k), m, valid)


@dataclass(frozen=True)
class FunctionTruth:
    """An analytic function on D: a valid (AC) advice, f'(1), and an advice checker."""

    advice: int
    derivative_at_one: RationalComplex | None = None
    valid: Callable[[int], bool] | None = None
    degree: int | None = None
    coeffs: tuple[RationalComplex, ...] | None = None


@dataclass(frozen=True)
class PolyTruth:
    coeffs: tuple[RationalComplex, ...]
    roots: tuple[RationalComplex, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(RationalComplex.of(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        raise ValueError("zero polynomial")

    def monic(self) -> tuple[RationalComplex, ...]:
        d = self.degree
        lead = self.coeffs[d]
        return tuple(c / lead for c in self.coeffs[: d + 1])


@dataclass(frozen=True)
class TestFnTruth:
    """A function from an internal family; ``decay(n)`` is a valid S-decay witness."""

    family: SmoothFamily
    support_bound: int | None = None
    decay: Callable[[int], int] | None = None


@dataclass(frozen=True)
class ColumnTruth:
    """Bound^N instance: column k is (p(<m, k>))_m.

    ``values(k)`` is the finite value set of column k, ``horizon(k)`` an index
    past the first occurrence of each of them.
    """

    values: Callable[[int], frozenset[int]]
    horizon: Callable[[int], int]


@dataclass(frozen=True)
class SeqTruth:
    """One truth per component of a parallel instance."""

    parts: Callable[[int], object]
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Known:
    """A natural-number answer known in closed form."""

    value: int


@dataclass(frozen=True)
class LimitTruth:
    limit: RationalComplex
