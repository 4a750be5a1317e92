"""Exact oracle realizers (truth channel) and prefix-based approximants."""

from __future__ import annotations

from typing import Any

from ..analytic import GermName, sum_germ
from ..names import Name, index_of
from ..polynomials import poly_name, zeros_monic
from ..spaces import COMPLEX, SeqName, nat_name, point_of, rational_point
from ..testfns import BumpName, SchwartzName, SmoothName
from .core import ConfigurationError, OracleRealizer, Tag
from .truths import (
    ColumnTruth, Complement, Known, FunctionTruth, GermTruth, LimitTruth, PolyTruth, SeqTruth, Stream,
    TestFnTruth, UpSet,
)

__all__ = ["oracle", "ORACLES", "oracle_cn", "oracle_min", "oracle_lim", "oracle_lpo", "oracle_count",
           "DomainError"]


class DomainError(ValueError):
    """The query is outside the problem's domain."""


def _expect(truth: Any, *kinds):
    if not isinstance(truth, kinds):
        raise ConfigurationError(f"expected truth of type {'/'.join(k.__name__ for k in kinds)}, "
                                 f"got {type(truth).__name__}")
    return truth


# --------------------------------------------------------------------------
# the C_N family

def _cn_value(truth, policy: str) -> int:
    if isinstance(truth, frozenset):
        if not truth:
            raise DomainError("closed choice on the empty set")
        members = sorted(truth)
        return members[1] if policy == "alt" and len(members) > 1 else members[0]
    if isinstance(truth, (Stream, Complement)):
        k = truth.closed_least()
        if policy == "alt":
            # the next member, if there is one close by
            for j in range(k + 1, k + 1 + (1 << 12)):
                if not truth.excluded(j):
                    return j
        return k
    t = _expect(truth, UpSet)
    k = t.least()
    if policy == "alt":
        for j in range(k + 1, k + 1 + (1 << 12)):
            if t.contains(j):
                return j
    return k


def oracle_cn(q: Name, truth, policy: str = "least") -> Name:
    return nat_name(_cn_value(truth, policy))


def _cn_fuel(q: Name, fuel: int) -> Name:
    gone = {q(j) - 1 for j in range(fuel) if q(j) > 0}
    k = 0
    while k in gone:
        k += 1
    return nat_name(k)


def _max_value(truth) -> int:
    if isinstance(truth, frozenset):
        return max(truth, default=0)
    return max(_expect(truth, Stream).open_set(), default=0)


def _max(q: Name, truth, policy: str) -> Name:
    return nat_name(_max_value(truth))


def _bound(q: Name, truth, policy: str) -> Name:
    b = _max_value(truth)
    return nat_name(b + 3 if policy == "alt" else b)


def _enum_fuel(q: Name, fuel: int) -> Name:
    return nat_name(max((q(j) - 1 for j in range(fuel) if q(j) > 0), default=0))


def oracle_min(q: Name, truth, policy: str = "least") -> Name:
    if isinstance(truth, Known):
        return nat_name(truth.value)
    return nat_name(_expect(truth, Stream).minimum())


def _min_fuel(q: Name, fuel: int) -> Name:
    return nat_name(min(q(j) for j in range(max(fuel, 1))))


def oracle_lpo(q: Name, truth, policy: str = "least") -> Name:
    return nat_name(1 if _expect(truth, Stream).is_zero() else 0)


def _lpo_fuel(q: Name, fuel: int) -> Name:
    return nat_name(1 if all(q(j) == 0 for j in range(fuel)) else 0)


def oracle_count(q: Name, truth, policy: str = "least") -> Name:
    t = _expect(truth, Stream)
    if t.tail:
        raise DomainError("Count needs a finite support")
    return nat_name(len(t.support))


def _count_fuel(q: Name, fuel: int) -> Name:
    return nat_name(sum(1 for j in range(fuel) if q(j) > 0))


def oracle_lim(q: Name, truth, policy: str = "least") -> Name:
    """Limit of a convergent sequence of complex numbers, as a point name."""
    return rational_point(_expect(truth, LimitTruth).limit).name


def _lim_fuel(q: Name, fuel: int) -> Name:
    """The fuel-th term at precision fuel; correct to about 2^-fuel once the sequence has settled."""
    seq = SeqName(COMPLEX, q)
    idx = index_of(point_of(seq.element(fuel), fuel))
    return Name(lambda n: idx, label=f"lim~{fuel}")


# --------------------------------------------------------------------------
# analytic functions

def _sum(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, GermTruth)
    advice = t.advice + 1 if policy == "alt" else t.advice
    return sum_germ(GermName(advice, SeqName(COMPLEX, q))).cont.name


def _adv_g(q: Name, truth, policy: str) -> Name:
    if isinstance(truth, UpSet):
        return oracle_cn(q, truth, policy)
    t = _expect(truth, GermTruth)
    return nat_name(t.advice + 1 if policy == "alt" else t.advice)


def _adv_c(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, FunctionTruth)
    return nat_name(t.advice + 1 if policy == "alt" else t.advice)


def _diff1(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, FunctionTruth)
    if t.derivative_at_one is None:
        raise ConfigurationError("truth lacks f'(1)")
    return rational_point(t.derivative_at_one).name


# --------------------------------------------------------------------------
# polynomials

def _deg(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, PolyTruth, FunctionTruth)
    return nat_name(t.degree)


def _dbnd(q: Name, truth, policy: str) -> Name:
    d = _expect(truth, FunctionTruth).degree
    return nat_name(d + 2 if policy == "alt" else d)


def _monic(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, PolyTruth)
    return poly_name(t.monic()).name


def _zeros(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, PolyTruth)
    return zeros_monic(poly_name(t.monic())).name


# --------------------------------------------------------------------------
# test functions

def _support(t: TestFnTruth, policy: str) -> int:
    if t.support_bound is None:
        raise DomainError("function has no compact support")
    return t.support_bound + 3 if policy == "alt" else t.support_bound


def _proj_sd(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, TestFnTruth)
    smooth = SmoothName(Name(lambda n: q(2 * n + 1)), t.family)
    return BumpName(_support(t, policy), smooth).name


def _proj_ed(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, TestFnTruth)
    return BumpName(_support(t, policy), SmoothName(q, t.family)).name


def _proj_es(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, TestFnTruth)
    if t.decay is None:
        raise DomainError("function not known to be rapidly decreasing")
    shift = 1 if policy == "alt" else 0
    decay = Name(lambda n: t.decay(n) + shift)
    return SchwartzName(decay, SmoothName(q, t.family)).name


def _cn_seq(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, SeqTruth)
    return Name(lambda n: _cn_value(t.parts(n), policy), label="cn_seq")


def _bound_seq(q: Name, truth, policy: str) -> Name:
    t = _expect(truth, ColumnTruth)
    shift = 1 if policy == "alt" else 0
    return Name(lambda k: max(t.values(k), default=0) + shift, label="bound_seq")


_TABLE = {
    Tag.CN: (oracle_cn, _cn_fuel),
    Tag.MAX: (_max, _enum_fuel),
    Tag.BOUND: (_bound, _enum_fuel),
    Tag.MIN: (oracle_min, _min_fuel),
    Tag.LPO: (oracle_lpo, _lpo_fuel),
    Tag.LIM: (oracle_lim, _lim_fuel),
    Tag.COUNT: (oracle_count, _count_fuel),
    Tag.SUM: (_sum, None),
    Tag.ADV_G: (_adv_g, None),
    Tag.ADV_C: (_adv_c, None),
    Tag.DIFF1: (_diff1, None),
    Tag.DEG: (_deg, None),
    Tag.MONIC: (_monic, None),
    Tag.ZEROS: (_zeros, None),
    Tag.DBND_CW: (_dbnd, None),
    Tag.DEG_CW: (_deg, None),
    Tag.PROJ_SD: (_proj_sd, None),
    Tag.PROJ_ED: (_proj_ed, None),
    Tag.PROJ_ES: (_proj_es, None),
    Tag.CN_SEQ: (_cn_seq, None),
    Tag.BOUND_SEQ: (_bound_seq, None),
}

ORACLES = tuple(_TABLE)


def oracle(tag: Tag | str, policy: str = "least", fuel: int | None = None) -> OracleRealizer:
    tag = Tag(tag)
    exact, approx = _TABLE[tag]
    if policy not in ("least", "alt"):
        raise ConfigurationError(f"unknown policy {policy!r}")
    return OracleRealizer(tag, exact, approx, policy, fuel)
