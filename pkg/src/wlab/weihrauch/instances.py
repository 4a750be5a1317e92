"""Bundled instances with ground truth, and the machine-readable manifest."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

from ..analytic import radius_bounds
from ..bumps import BumpSum
from ..names import Name, RationalComplex, index_of, unpair
from ..polynomials import poly_analytic_name, poly_name
from ..spaces import COMPLEX, SeqName
from ..testfns import bump_name, include_D_to_S
from .catalog import CATALOG, EQUIVALENCES
from .core import OracleInstance
from .truths import ColumnTruth, FunctionTruth, GermTruth, PolyTruth, Stream, Complement, TestFnTruth

__all__ = ["instances", "instance", "instances_for", "manifest", "manifest_json", "poly_advice",
           "stream_instance", "column_instance", "germ_instance", "poly_instance", "analytic_poly_instance",
           "testfn_instance"]


# --------------------------------------------------------------------------
# builders

def stream_instance(head, tail: int = 0, label: str = "") -> OracleInstance:
    t = Stream(tuple(head), tail)
    return OracleInstance(t.name(label=label or None), t, label)


def complement_instance(kept, label: str = "") -> OracleInstance:
    t = Complement(frozenset(kept))
    return OracleInstance(t.name(label=label or None), t, label)


def support_instance(support, label: str = "") -> OracleInstance:
    """A finitely supported stream with p(n) = n + 1 on the support."""
    S = sorted(support)
    head = [0] * (S[-1] + 1 if S else 0)
    for n in S:
        head[n] = n + 1
    return stream_instance(head, 0, label)


def germ_instance(truth: GermTruth, label: str = "") -> OracleInstance:
    name = Name(lambda i: index_of(truth.coeff(unpair(i)[0])), label=label or None)
    return OracleInstance(SeqName(COMPLEX, name).name, truth, label)


def poly_instance(coeffs, roots=None, bound: int | None = None, label: str = "") -> OracleInstance:
    t = PolyTruth(tuple(coeffs), None if roots is None else tuple(RationalComplex.of(r) for r in roots))
    return OracleInstance(poly_name(t.coeffs, bound, label=label or None).name, t, label)


def poly_from_roots(lead, roots) -> list[RationalComplex]:
    cs = [RationalComplex.of(lead)]
    for r in roots:
        r = RationalComplex.of(r)
        nxt = [RationalComplex()] * (len(cs) + 1)
        for i, c in enumerate(cs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        cs = nxt
    return cs


def poly_advice(coeffs) -> int:
    """Least m with sum |a_k| r_m^k <= m, a valid advice for the polynomial."""
    cs = [RationalComplex.of(c) for c in coeffs]
    m = 1
    while True:
        r = radius_bounds(m)[1]
        total = sum((abs(c.re) + abs(c.im)) * r ** k for k, c in enumerate(cs))
        if total <= m:
            return m
        m += 1


def analytic_poly_instance(coeffs, label: str = "") -> OracleInstance:
    cs = tuple(RationalComplex.of(c) for c in coeffs)
    m = poly_advice(cs)
    degree = max((k for k, c in enumerate(cs) if c), default=0)
    name = poly_analytic_name(cs, m, label=label or None).name
    return OracleInstance(name, FunctionTruth(m, degree=degree, coeffs=cs), label)


def testfn_instance(family: BumpSum, kind: str, label: str = "") -> OracleInstance:
    """kind "E", "S" or "D": the name handed over is of that kind."""
    f = bump_name(family, label=label or None)
    b = family.support_bound()
    truth = TestFnTruth(family, support_bound=b, decay=lambda n: b)
    if kind == "E":
        return OracleInstance(f.smooth.name, truth, label)
    if kind == "S":
        return OracleInstance(include_D_to_S(f).name, truth, label)
    return OracleInstance(f.name, truth, label)


def column_instance(columns, label: str = "") -> OracleInstance:
    """Bound^N instance from finitely many column streams; later columns are zero."""
    cols = [Stream(tuple(c[0]), c[1]) if isinstance(c, tuple) else Stream(tuple(c)) for c in columns]
    zero = Stream(())

    def col(k: int) -> Stream:
        return cols[k] if k < len(cols) else zero

    def p(i: int) -> int:
        m, k = unpair(i)
        return col(k)(m)

    truth = ColumnTruth(lambda k: frozenset(col(k).values()), lambda k: col(k).settled() + 1)
    return OracleInstance(Name(p, label=label or None), truth, label)


# --------------------------------------------------------------------------
# the bundle

def _bundle() -> dict[str, dict[str, OracleInstance]]:
    B: dict[str, dict[str, OracleInstance]] = {}

    def add(kind: str, inst: OracleInstance):
        B.setdefault(kind, {})[inst.label] = inst

    # closed choice: enumerations of complements
    add("cn", stream_instance([1, 2, 3, 4, 0, 7], 0, "least4"))
    add("cn", complement_instance({4, 11}, "set4_11"))
    add("cn", stream_instance([], 0, "all"))
    add("cn", stream_instance([2, 0, 1, 5], 3, "least3"))
    add("cn", complement_instance({1, 6}, "set1_6"))
    # finitely supported streams (Count, max, Bound)
    add("fin", stream_instance([0, 0, 3, 0, 0, 1, 0, 9], 0, "supp257"))
    add("fin", support_instance({0, 9}, "supp09"))
    add("fin", stream_instance([], 0, "empty"))
    add("fin", stream_instance([0, 1, 1], 0, "supp12"))
    add("fin", stream_instance([4, 0, 0, 2, 0, 1], 0, "supp035"))
    # small supports for the gadget sums
    add("gad", support_instance({1, 2}, "supp12"))
    add("gad", support_instance({0}, "supp0"))
    add("gad", stream_instance([], 0, "empty"))
    add("cn_small", complement_instance({2, 5}, "set2_5"))
    add("cn_small", stream_instance([1], 0, "least1"))
    # streams for min
    add("min", stream_instance([5, 3, 8, 3], 3, "min3"))
    add("min", stream_instance([4, 0, 7], 2, "min0"))
    add("min", stream_instance([], 2, "const2"))
    add("min", stream_instance([6, 6, 5, 4, 9], 4, "min4"))
    # germs
    add("germ", germ_instance(GermTruth.geometric(1, Fraction(1, 3)), "geom3"))
    add("germ", germ_instance(GermTruth.finite([1, 0, Fraction(-1, 2), 2]), "finite4"))
    add("germ", germ_instance(GermTruth.geometric(Fraction(3, 2), Fraction(1, 2)), "geom2"))
    # polynomials
    add("poly", poly_instance(poly_from_roots(3, [1, Fraction(-1, 2)]), [1, Fraction(-1, 2)], 4, "quad"))
    add("poly", poly_instance(poly_from_roots(Fraction(-5, 7), [2, Fraction(1, 3), -1]),
                              [2, Fraction(1, 3), -1], None, "cubic"))
    add("poly", poly_instance(poly_from_roots(2, [1, 1]), [1, 1], 3, "double"))
    add("poly", poly_instance(poly_from_roots(Fraction(1, 512), [Fraction(1, 2), -2, 3]),
                              [Fraction(1, 2), -2, 3], 5, "stress"))
    add("poly", poly_instance(poly_from_roots(1, [RationalComplex(0, 1), RationalComplex(0, -1)]),
                              [RationalComplex(0, 1), RationalComplex(0, -1)], None, "xx1"))
    # analytic functions that are polynomials
    add("apoly", analytic_poly_instance([1, 0, Fraction(1, 2), Fraction(1, 8)], "cubic"))
    add("apoly", analytic_poly_instance([0, 1], "linear"))
    add("apoly", analytic_poly_instance([Fraction(1, 3), 0, 0, 0, Fraction(-1, 4)], "quartic"))
    # test functions
    families = {
        "bump0": BumpSum.bump(0),
        "bump3/2": BumpSum.bump(Fraction(3, 2)),
        "pair": BumpSum((Fraction(-1), Fraction(2)), (Fraction(1), Fraction(-1, 2))),
    }
    for label, fam in families.items():
        add("E", testfn_instance(fam, "E", label))
        add("S", testfn_instance(fam, "S", label))
    # Bound^N
    add("cols", column_instance([[0, 2, 1], [3, 3, 0, 1], [1]], "cols3"))
    add("cols", column_instance([[1, 0, 1, 0, 5]], "cols1"))
    add("cols", column_instance([], "zero"))
    return B


@lru_cache(maxsize=1)
def instances() -> dict[str, dict[str, OracleInstance]]:
    return _bundle()


KIND_OF: dict[str, str] = {
    "cn_le_count": "cn", "count_le_max": "fin", "max_le_cn": "fin", "count_le_cn": "fin",
    "cn_le_max": "cn", "cn_le_bound": "cn", "bound_le_cn": "fin",
    "count_le_sum": "fin", "cn_le_sum": "cn", "sum_le_advG": "germ", "advG_le_cn": "germ",
    "count_le_diff1": "gad", "cn_le_diff1": "cn", "diff1_le_advC": "gadfn", "advC_le_cn": "gadfn",
    "count_le_diff1_poly": "gad", "advC_poly_variants": "cn_small",
    "min_le_deg": "min", "deg_le_min": "poly", "deg_le_monic": "poly", "monic_le_deg": "poly",
    "monic_le_zeros": "poly", "zeros_le_monic": "poly",
    "bound_le_dbnd_analytic": "fin", "cn_le_dbnd_analytic": "cn", "dbnd_le_deg_analytic": "apoly",
    "deg_analytic_le_max": "apoly", "deg_analytic_le_cn": "apoly",
    "bound_le_proj_SD": "fin", "cn_le_proj_SD": "cn", "projSD_le_projED": "S", "projED_le_cn": "E",
    "projES_le_cnseq": "E", "boundseq_le_projES": "cols",
}


def _gadget_functions() -> dict[str, OracleInstance]:
    """Instances of Diff1 / Adv_Cw: the gadget sums themselves."""
    from .catalog import _gadget_H, _gadget_transfer

    out = {}
    for label, inst in instances()["gad"].items():
        out[label] = OracleInstance(_gadget_H(False)(inst.input), _gadget_transfer(inst.input, inst.truth), label)
    return out


@lru_cache(maxsize=1)
def _extra() -> dict[str, dict[str, OracleInstance]]:
    return {"gadfn": _gadget_functions()}


def instances_for(rid: str) -> dict[str, OracleInstance]:
    kind = KIND_OF[rid]
    return instances()[kind] if kind in instances() else _extra()[kind]


def instance(rid: str, label: str) -> OracleInstance:
    insts = instances_for(rid)
    if label not in insts:
        raise KeyError(f"unknown instance {label!r} for {rid}; have {sorted(insts)}")
    return insts[label]


def manifest() -> list[dict]:
    rows = []
    for rid, r in CATALOG.items():
        rows.append({"id": rid, "source": r.source.value, "target": r.target.value, "anchor": r.anchor,
                     "instances": sorted(instances_for(rid))})
    for eid, parts in EQUIVALENCES.items():
        rows.append({"id": eid, "equivalence": list(parts),
                     "source": CATALOG[parts[0]].source.value, "target": CATALOG[parts[0]].target.value,
                     "anchor": " ; ".join(CATALOG[p].anchor for p in parts),
                     "instances": {p: sorted(instances_for(p)) for p in parts}})
    return rows


def manifest_json() -> str:
    return json.dumps(manifest(), indent=2, sort_keys=True)

