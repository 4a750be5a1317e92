"""Reductions as (H, K) pairs with pluggable oracle realizers.

A realizer of a problem g is anything that maps names of g-instances to
names of valid answers. The non-computable ones here read a ground-truth
channel: every oracle query comes with a finite description of the object
the query names, and the oracle answers from that description.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from ..names import Name

__all__ = [
    "Tag", "Problem", "OracleInstance", "OracleRealizer", "Reduction",
    "ConfigurationError", "apply_reduction", "compose", "identity", "run_verified",
]


class Tag(str, Enum):
    CN = "C_N"
    MAX = "max"
    BOUND = "Bound"
    MIN = "min"
    LPO = "lpo"
    LIM = "lim"
    COUNT = "Count"
    SUM = "Sum"
    ADV_G = "Adv_O"
    ADV_C = "Adv_Cw"
    DIFF1 = "Diff1"
    DEG = "deg"
    MONIC = "Monic"
    ZEROS = "Zeros"
    DBND_CW = "Dbnd_Cw"
    DEG_CW = "deg_Cw"
    PROJ_SD = "pi_S^D"
    PROJ_ED = "pi_E^D"
    PROJ_ES = "pi_E^S"
    CN_SEQ = "C_N^N"
    BOUND_SEQ = "Bound^N"


class ConfigurationError(ValueError):
    """Oracle and reduction do not fit together."""


@dataclass(frozen=True)
class Problem:
    """A problem tag with its ground-truth verifier (answer name, truth) -> bool."""

    tag: Tag
    verify: Callable[[Name, Any], bool]
    description: str = ""


@dataclass(frozen=True)
class OracleInstance:
    input: Name
    truth: Any
    label: str = ""


@dataclass
class OracleRealizer:
    """A realizer of ``tag`` that answers from the truth channel.

    ``policy`` selects among valid answers of multivalued problems ("least" or
    "alt"). With ``fuel`` set, problems that have a prefix-based approximant
    answer from the first ``fuel`` entries of the query instead.
    """

    tag: Tag
    exact: Callable[[Name, Any, str], Name]
    approximant: Callable[[Name, int], Name] | None = None
    policy: str = "least"
    fuel: int | None = None
    calls: int = field(default=0, compare=False)

    def answer(self, query: Name, truth: Any) -> Name:
        self.calls += 1
        if self.fuel is not None:
            if self.approximant is None:
                raise ConfigurationError(f"{self.tag.value} has no fuel mode")
            return self.approximant(query, self.fuel)
        return self.exact(query, truth, self.policy)

    def with_policy(self, policy: str) -> "OracleRealizer":
        return OracleRealizer(self.tag, self.exact, self.approximant, policy, self.fuel)

    def with_fuel(self, fuel: int | None) -> "OracleRealizer":
        return OracleRealizer(self.tag, self.exact, self.approximant, self.policy, fuel)


@dataclass(frozen=True)
class Reduction:
    """source <=_W target via pre-processor H and post-processor K.

    ``transfer(p, truth)`` gives the truth for the target instance H(p); it is
    only used to drive exact oracles, never by H or K.
    """

    id: str
    source: Tag
    target: Tag
    H: Callable[[Name], Name]
    K: Callable[[Name, Name], Name]
    transfer: Callable[[Name, Any], Any]
    anchor: str = ""
    probes_H: tuple[int, ...] = (0, 1, 2, 3)
    probes_K: tuple[int, ...] = (0,)

    def __call__(self, p: Name, oracle: Callable[[Name], Name]) -> Name:
        return self.K(p, oracle(self.H(p)))


def apply_reduction(r: Reduction, g: OracleRealizer, inst: OracleInstance) -> Name:
    """K(p, G(H(p))) with G answering from the transferred truth."""
    if g.tag != r.target:
        raise ConfigurationError(f"{r.id} needs a {r.target.value} oracle, got {g.tag.value}")
    p = inst.input
    h = r.H(p)
    return r.K(p, g.answer(h, r.transfer(p, inst.truth)))


def run_verified(r: Reduction, g: OracleRealizer, inst: OracleInstance, problem: Problem) -> tuple[Name, bool]:
    if problem.tag != r.source:
        raise ConfigurationError(f"verifier for {problem.tag.value}, reduction source {r.source.value}")
    out = apply_reduction(r, g, inst)
    return out, problem.verify(out, inst.truth)


class _Memo:
    """H(p) computed once per input name, so H and K of a composite agree."""

    def __init__(self, fn: Callable[[Name], Name]):
        self.fn = fn
        self.cache: dict[int, tuple[Name, Name]] = {}

    def __call__(self, p: Name) -> Name:
        hit = self.cache.get(id(p))
        if hit is None or hit[0] is not p:
            hit = (p, self.fn(p))
            self.cache[id(p)] = hit
        return hit[1]


def compose(r1: Reduction, r2: Reduction, id: str | None = None) -> Reduction:
    """f <=_W g and g <=_W h give f <=_W h; r2 runs inside r1's oracle slot."""
    if r1.target != r2.source:
        raise ConfigurationError(f"cannot compose {r1.id} ({r1.target.value}) with {r2.id} ({r2.source.value})")
    h1 = _Memo(r1.H)

    def H(p: Name) -> Name:
        return r2.H(h1(p))

    def K(p: Name, a: Name) -> Name:
        return r1.K(p, r2.K(h1(p), a))

    def transfer(p: Name, truth):
        return r2.transfer(h1(p), r1.transfer(p, truth))

    return Reduction(id or f"{r1.id}*{r2.id}", r1.source, r2.target, H, K, transfer,
                     anchor=" ; ".join(a for a in (r1.anchor, r2.anchor) if a),
                     probes_H=r2.probes_H, probes_K=r1.probes_K)


def identity(tag: Tag) -> Reduction:
    return Reduction(f"id[{tag.value}]", tag, tag, lambda p: p, lambda p, q: q, lambda p, t: t,
                     anchor="reflexivity")
