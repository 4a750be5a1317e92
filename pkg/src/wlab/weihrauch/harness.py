"""Continuity harness and verification runs over the catalog.

A realizer passes when, on an instrumented input, producing a few output
entries queries finitely many input indices, and replaying exactly that log
(every other index raises) reproduces the same outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..names import InstrumentedName, Name, ReplayName, UnloggedQuery
from .catalog import CATALOG
from .core import OracleInstance, OracleRealizer, Reduction, apply_reduction
from .instances import instances_for
from .oracles import oracle
from .problems import problem

__all__ = ["ContinuityReport", "check_continuity", "check_H", "check_K", "verify_instance", "verify_catalog"]


@dataclass
class ContinuityReport:
    reduction: str
    instance: str
    part: str
    outputs: dict[int, int] = field(default_factory=dict)
    queries: dict[str, int] = field(default_factory=dict)
    ok: bool = False
    detail: str = ""

    def to_json(self) -> dict:
        return {"reduction": self.reduction, "instance": self.instance, "part": self.part,
                "outputs": {str(k): v for k, v in self.outputs.items()}, "queries": self.queries,
                "ok": self.ok, "detail": self.detail}


def _replay_check(run: Callable[..., Name], inputs: dict[str, Name], probes: Iterable[int],
                  report: ContinuityReport) -> ContinuityReport:
    probes = list(probes)
    wrapped = {k: InstrumentedName(v) for k, v in inputs.items()}
    out = run(**wrapped)
    report.outputs = {i: out(i) for i in probes}
    logs = {k: w.queried() for k, w in wrapped.items()}
    report.queries = {k: len(v) for k, v in logs.items()}
    try:
        replay = run(**{k: ReplayName(v) for k, v in logs.items()})
        again = {i: replay(i) for i in probes}
    except UnloggedQuery as e:
        report.detail = f"replay asked for unlogged index {e.args[0]}"
        return report
    report.ok = again == report.outputs
    if not report.ok:
        report.detail = "replayed outputs differ"
    return report


def check_H(r: Reduction, inst: OracleInstance) -> ContinuityReport:
    rep = ContinuityReport(r.id, inst.label, "H")
    return _replay_check(lambda p: r.H(p), {"p": inst.input}, r.probes_H, rep)


def check_K(r: Reduction, inst: OracleInstance, g: OracleRealizer | None = None) -> ContinuityReport:
    """K on (p, q) with q an exact oracle answer for H(p)."""
    g = g or oracle(r.target)
    q = g.answer(r.H(inst.input), r.transfer(inst.input, inst.truth))
    rep = ContinuityReport(r.id, inst.label, "K")
    return _replay_check(lambda p, q: r.K(p, q), {"p": inst.input, "q": q}, r.probes_K, rep)


def check_continuity(r: Reduction, inst: OracleInstance) -> list[ContinuityReport]:
    return [check_H(r, inst), check_K(r, inst)]


def verify_instance(r: Reduction, inst: OracleInstance, policy: str = "least") -> tuple[Name, bool]:
    out = apply_reduction(r, oracle(r.target, policy), inst)
    return out, problem(r.source).verify(out, inst.truth)


def verify_catalog(ids: Iterable[str] | None = None, policies=("least", "alt")) -> list[dict]:
    rows = []
    for rid in ids or CATALOG:
        r = CATALOG[rid]
        for label, inst in instances_for(rid).items():
            for pol in policies:
                _, ok = verify_instance(r, inst, pol)
                rows.append({"reduction": rid, "instance": label, "policy": pol, "ok": ok})
    return rows
