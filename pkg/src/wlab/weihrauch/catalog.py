"""The reductions, each as pre-processor H, post-processor K and a truth transfer."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..analytic import AnalyticName, GermName, ag_violated, diff_analytic, germ_of, sum_advice, sum_germ
from ..intervals import IntervalC
from ..names import Name, RationalComplex, index_of, unpair
from ..polynomials import (
    PolyName, TupleName, deg_analytic_pre, deg_min_post, deg_min_pre, deg_monic, dbnd_analytic_pre,
    min_deg_post, min_deg_pre, monic_from_roots, monic_of, zeros_monic,
)
from ..spaces import (
    CD, COMPLEX, MetricName, SeqName, cont_eval, nat_name, point_from_enclosures, point_of, poly_approx,
    rational_point,
)
from ..testfns import (
    ChoiceSeries, ColumnSeries, bound_projSD_post, bound_projSD_pre, boundseq_projES_post, boundseq_projES_pre,
    include_S_to_E_name, proj_ED_post, proj_ED_pre, proj_ES_post, proj_ES_pre,
)
from ..spaces import function_name
from .core import Reduction, Tag, compose
from .gadgets import (
    GadgetSum, gadget_sum_advice, gadget_sum_valid, poly_gadget_advice, poly_gadget_coeffs, poly_gadget_valid,
)
from .truths import (
    ColumnTruth, FunctionTruth, GermTruth, Known, PolyTruth, SeqTruth, Stream, TestFnTruth, UpSet,
)

__all__ = ["CATALOG", "EQUIVALENCES", "get", "least_unexcluded"]


def least_unexcluded(p: Callable[[int], int], upto: int) -> int:
    """Least m not among p(j) - 1 for j <= upto."""
    gone = {p(j) - 1 for j in range(upto + 1) if p(j) > 0}
    m = 0
    while m in gone:
        m += 1
    return m


def _stream_from(values: Callable[[int], int], settled: int, tail: int) -> Stream:
    return Stream(tuple(values(j) for j in range(settled)), tail)


def _round_nat(q: Name) -> Name:
    """The natural number named (as a complex point) by q, read at precision 2."""
    return nat_name(max(0, round(point_of(q, 2).re)))


# --------------------------------------------------------------------------
# closed choice, max, Bound, Count

def _cn_count_H(p: Name) -> Name:
    """1 at n while the least candidate after n enumeration steps exceeds the ones so far."""
    vals: list[int] = []

    def q(n: int) -> int:
        while len(vals) <= n:
            k = len(vals)
            vals.append(1 if least_unexcluded(p, k) > sum(vals) else 0)
        return vals[n]

    return Name(q, label="cn_count_H")


def _cn_count_transfer(p: Name, t) -> Stream:
    least = t.closed_least()
    H = _cn_count_H(Name(t))
    n = t.settled()
    while sum(H(j) for j in range(n)) < least:
        n += 1
    return Stream(tuple(H(j) for j in range(n)), 0)


cn_le_count = Reduction(
    "cn_le_count", Tag.CN, Tag.COUNT, _cn_count_H, lambda p, q: nat_name(q(0)), _cn_count_transfer,
    anchor="C_N <= Count: flag a stage whenever the least unexcluded number outruns the flags so far",
    probes_H=tuple(range(8)))


def _count_max_H(p: Name) -> Name:
    return Name(lambda n: n + 1 if p(n) > 0 else 0, label="support_enum")


def _count_max_K(p: Name, q: Name) -> Name:
    b = q(0)
    return nat_name(sum(1 for m in range(b + 1) if p(m) > 0))


count_le_max = Reduction(
    "count_le_max", Tag.COUNT, Tag.MAX, _count_max_H, _count_max_K,
    lambda p, t: Stream(tuple(j + 1 if v > 0 else 0 for j, v in enumerate(t.head)), 0),
    anchor="Count <= max: enumerate the support, count it below the maximum", probes_H=tuple(range(8)))


def _max_cn_H(p: Name) -> Name:
    """Complement of {<m, s> | nothing above m is enumerated, and m = 0 or m shows up before s}."""

    def q(i: int) -> int:
        j, x = unpair(i)
        m, s = unpair(x)
        if p(j) > 0 and p(j) - 1 > m:
            return x + 1
        if j == 0 and m > 0 and all(p(t) - 1 != m for t in range(s)):
            return x + 1
        return 0

    return Name(q, label="max_cn_H")


def _max_cn_transfer(p: Name, t) -> UpSet:
    top = max(t if isinstance(t, frozenset) else t.open_set(), default=0)

    def member(x: int) -> bool:
        m, s = unpair(x)
        return m == top and (m == 0 or any(p(j) - 1 == m for j in range(s)))

    return UpSet(0, member)


max_le_cn = Reduction(
    "max_le_cn", Tag.MAX, Tag.CN, _max_cn_H, lambda p, q: nat_name(unpair(q(0))[0]), _max_cn_transfer,
    anchor="max <= C_N: exclude (m, s) once m is beaten or not yet seen at stage s")


def _cn_max_H(p: Name) -> Name:
    return Name(lambda j: 1 + least_unexcluded(p, j), label="cn_max_H")


cn_le_max = Reduction(
    "cn_le_max", Tag.CN, Tag.MAX, _cn_max_H, lambda p, q: nat_name(q(0)),
    lambda p, t: _stream_from(lambda j: 1 + least_unexcluded(t, j), t.settled(), 1 + t.closed_least()),
    anchor="C_N <= max: enumerate the running least unexcluded numbers")


def _change_stages(p: Callable[[int], int]) -> Callable[[int], int]:
    def h(s: int) -> int:
        prev = least_unexcluded(p, s - 1) if s else 0
        return s + 1 if least_unexcluded(p, s) != prev else 0

    return h


cn_le_bound = Reduction(
    "cn_le_bound", Tag.CN, Tag.BOUND,
    lambda p: Name(_change_stages(p), label="change_stages"),
    lambda p, q: nat_name(least_unexcluded(p, q(0))),
    lambda p, t: _stream_from(_change_stages(t), t.settled() + 1, 0),
    anchor="C_N <= Bound: enumerate the stages where the least unexcluded number moves")


def _bound_cn_H(p: Name) -> Name:
    def q(i: int) -> int:
        j, b = unpair(i)
        return b + 1 if p(j) > 0 and p(j) - 1 > b else 0

    return Name(q, label="bound_cn_H")


def _bound_cn_transfer(p: Name, t) -> UpSet:
    top = max(t if isinstance(t, frozenset) else t.open_set(), default=0)
    return UpSet(top, lambda b: b >= top)


bound_le_cn = Reduction(
    "bound_le_cn", Tag.BOUND, Tag.CN, _bound_cn_H, lambda p, q: nat_name(q(0)), _bound_cn_transfer,
    anchor="Bound <= C_N: exclude b when some enumerated value exceeds it")


# --------------------------------------------------------------------------
# germs and analytic functions

def _indicator_seq(p: Name) -> Name:
    return Name(lambda i: index_of(1 if p(unpair(i)[0]) > 0 else 0), label="indicator")


count_le_sum = Reduction(
    "count_le_sum", Tag.COUNT, Tag.SUM, _indicator_seq,
    lambda p, q: nat_name(max(0, round(poly_approx(q, 2)(RationalComplex(Fraction(1))).re))),
    lambda p, t: GermTruth.finite([1 if v > 0 else 0 for v in t.head]),
    anchor="Count <= Sum: indicator germ summed at 1")


sum_le_advG = Reduction(
    "sum_le_advG", Tag.SUM, Tag.ADV_G, lambda p: p,
    lambda p, q: sum_germ(GermName(q(0), SeqName(COMPLEX, p))).cont.name,
    lambda p, t: t, anchor="Sum <= Adv_O: summation with the advice supplied")


def _advg_cn_H(p: Name) -> Name:
    """Lists m once an enclosure of some a_k proves |a_k| > m 2^(-k/(m+1))."""
    seq = SeqName(COMPLEX, p)

    def q(i: int) -> int:
        km, n = unpair(i)
        k, m = unpair(km)
        box = IntervalC.ball(point_of(seq.element(k), n), Fraction(1, 1 << n))
        return m + 1 if ag_violated(box, m, k) else 0

    return Name(q, label="advg_cn_H")


def _advg_transfer(p: Name, t) -> UpSet:
    if isinstance(t, UpSet):
        return t
    return UpSet(t.advice, t.valid)


advG_le_cn = Reduction(
    "advG_le_cn", Tag.ADV_G, Tag.CN, _advg_cn_H, lambda p, q: nat_name(q(0)), _advg_transfer,
    anchor="Adv_O <= C_N: dovetail the coefficient test to exclude bad advice")


def _gadget_H(poly: bool) -> Callable[[Name], Name]:
    def H(p: Name) -> Name:
        return function_name(GadgetSum(p, poly), label="gadget_sum").name

    return H


def _gadget_transfer(p: Name, t: Stream) -> FunctionTruth:
    S = sorted(t.support)
    return FunctionTruth(gadget_sum_advice(S), RationalComplex(Fraction(len(S))),
                         valid=lambda m: gadget_sum_valid(S, m))


def _poly_gadget_transfer(p: Name, t: Stream) -> FunctionTruth:
    S = sorted(t.support)
    coeffs = poly_gadget_coeffs(S)
    degree = max((k for k, c in enumerate(coeffs) if c), default=0)
    return FunctionTruth(poly_gadget_advice(S), RationalComplex(Fraction(len(S))),
                         valid=lambda m: poly_gadget_valid(S, m), degree=degree, coeffs=coeffs)


count_le_diff1 = Reduction(
    "count_le_diff1", Tag.COUNT, Tag.DIFF1, _gadget_H(False), lambda p, q: _round_nat(q), _gadget_transfer,
    anchor="Count <= Diff1: gadget sum whose derivative at 1 counts the support", probes_H=(0, 1, 2))

count_le_diff1_poly = Reduction(
    "count_le_diff1_poly", Tag.COUNT, Tag.DIFF1, _gadget_H(True), lambda p, q: _round_nat(q),
    _poly_gadget_transfer, anchor="Count <= Diff1 with rational polynomial gadgets", probes_H=(0, 1, 2))


def _diff_at_one(p: Name, advice: int) -> Name:
    d = diff_analytic(AnalyticName(advice, MetricName(CD, p)))
    one = rational_point(1)
    return point_from_enclosures(lambda k: cont_eval(d.cont, one, k), label="f'(1)").name


diff1_le_advC = Reduction(
    "diff1_le_advC", Tag.DIFF1, Tag.ADV_C, lambda p: p, lambda p, q: _diff_at_one(p, q(0)),
    lambda p, t: t,
    anchor="Diff1 <= Adv_Cw: differentiate with the advice supplied", probes_H=(0, 1, 2), probes_K=(0, 1, 2, 3))


def _advc_cn_H(p: Name) -> Name:
    return _advg_cn_H(germ_of(MetricName(CD, p)).name)


advC_le_cn = Reduction(
    "advC_le_cn", Tag.ADV_C, Tag.CN, _advc_cn_H, lambda p, q: nat_name(sum_advice(q(0))),
    lambda p, t: UpSet(t.advice),
    anchor="Adv_Cw <= C_N: extract the germ, then dovetail the coefficient test", probes_H=(0, 1, 2))


# --------------------------------------------------------------------------
# polynomials

def _min_deg_transfer(p: Name, t: Stream) -> PolyTruth:
    b = t(0)
    coeffs = []
    for n in range(b + 1):
        i = t.first_occurrence(b - n)
        coeffs.append(Fraction(1, 1 << i) if i is not None else Fraction(0))
    return PolyTruth(tuple(coeffs))


min_le_deg = Reduction(
    "min_le_deg", Tag.MIN, Tag.DEG, min_deg_pre, min_deg_post, _min_deg_transfer,
    anchor="min <= deg: coefficient 2^-i at the first stage reaching each drop")

deg_le_min = Reduction(
    "deg_le_min", Tag.DEG, Tag.MIN, deg_min_pre, deg_min_post,
    lambda p, t: Known(PolyName.parse(p).bound - t.degree),
    anchor="deg <= min: bound minus the provably nonzero top index")

deg_le_monic = Reduction(
    "deg_le_monic", Tag.DEG, Tag.MONIC, lambda p: p, lambda p, q: nat_name(deg_monic(PolyName.parse(q))),
    lambda p, t: t, anchor="deg <= Monic: read the degree off the monic name")

monic_le_deg = Reduction(
    "monic_le_deg", Tag.MONIC, Tag.DEG, lambda p: p, lambda p, q: monic_of(PolyName.parse(p), q(0)).name,
    lambda p, t: t, anchor="Monic <= deg: divide by the leading coefficient", probes_K=(0, 1, 2, 3))

monic_le_zeros = Reduction(
    "monic_le_zeros", Tag.MONIC, Tag.ZEROS, lambda p: p, lambda p, q: monic_from_roots(TupleName.parse(q)).name,
    lambda p, t: t, anchor="Monic <= Zeros: certified root isolation", probes_K=(0, 1, 2, 3))

zeros_le_monic = Reduction(
    "zeros_le_monic", Tag.ZEROS, Tag.MONIC, lambda p: p, lambda p, q: zeros_monic(PolyName.parse(q)).name,
    lambda p, t: t, anchor="Zeros <= Monic: expand the product of linear factors", probes_K=(0, 1, 2))


def _dbnd_transfer(p: Name, t: Stream) -> FunctionTruth:
    return FunctionTruth(2, degree=max(t.values()))


bound_le_dbnd_analytic = Reduction(
    "bound_le_dbnd_analytic", Tag.BOUND, Tag.DBND_CW, dbnd_analytic_pre, lambda p, q: nat_name(q(0)),
    _dbnd_transfer, anchor="Bound <= Dbnd_Cw: sum of 2^-(n+e) X^e over enumerated e")

dbnd_le_deg_analytic = Reduction(
    "dbnd_le_deg_analytic", Tag.DBND_CW, Tag.DEG_CW, lambda p: p, lambda p, q: nat_name(q(0)),
    lambda p, t: t, anchor="Dbnd_Cw <= deg_Cw: a degree is a degree bound")


def _support_of(t: FunctionTruth) -> frozenset[int]:
    return frozenset(k for k, c in enumerate(t.coeffs) if c)


deg_analytic_le_max = Reduction(
    "deg_analytic_le_max", Tag.DEG_CW, Tag.MAX, deg_analytic_pre, lambda p, q: nat_name(q(0)),
    lambda p, t: _support_of(t), anchor="deg_Cw <= max: enumerate the provably nonzero germ coefficients")


# --------------------------------------------------------------------------
# test functions

def _choice_transfer(p: Name, t: Stream) -> TestFnTruth:
    return TestFnTruth(ChoiceSeries(p), support_bound=2 * max(t.values()) + 1)


bound_le_proj_SD = Reduction(
    "bound_le_proj_SD", Tag.BOUND, Tag.PROJ_SD, bound_projSD_pre, bound_projSD_post, _choice_transfer,
    anchor="Bound <= pi_S^D: weighted bumps at twice each enumerated value", probes_H=(0, 2, 4, 1))

projSD_le_projED = Reduction(
    "projSD_le_projED", Tag.PROJ_SD, Tag.PROJ_ED, include_S_to_E_name, lambda p, q: q, lambda p, t: t,
    anchor="pi_S^D <= pi_E^D: forget the decay witnesses", probes_K=(0, 1))

projED_le_cn = Reduction(
    "projED_le_cn", Tag.PROJ_ED, Tag.CN, proj_ED_pre, proj_ED_post,
    lambda p, t: UpSet(t.support_bound, lambda k: k >= t.support_bound),
    anchor="pi_E^D <= C_N: exclude support bounds refuted at a dyadic point", probes_K=(0, 1))


def _cnseq_transfer(p: Name, t: TestFnTruth) -> SeqTruth:
    return SeqTruth(lambda n: UpSet(max(t.decay(n), 1).bit_length()))


projES_le_cnseq = Reduction(
    "projES_le_cnseq", Tag.PROJ_ES, Tag.CN_SEQ, proj_ES_pre, proj_ES_post, _cnseq_transfer,
    anchor="pi_E^S <= C_N^N: one closed-choice instance per decay level", probes_K=(0, 1, 2))


def _column_transfer(p: Name, t: ColumnTruth) -> TestFnTruth:
    g = ColumnSeries(p)
    return TestFnTruth(g, decay=lambda n: g.decay_witness(n, t.horizon))


boundseq_le_projES = Reduction(
    "boundseq_le_projES", Tag.BOUND_SEQ, Tag.PROJ_ES, boundseq_projES_pre, boundseq_projES_post,
    _column_transfer, anchor="Bound^N <= pi_E^S: column bumps read off from decay witnesses", probes_K=(0, 1, 2))


# --------------------------------------------------------------------------
# composites named in the catalog

count_le_cn = compose(count_le_max, max_le_cn, "count_le_cn")
cn_le_sum = compose(cn_le_count, count_le_sum, "cn_le_sum")
cn_le_diff1 = compose(cn_le_count, count_le_diff1, "cn_le_diff1")
advC_poly_variants = compose(cn_le_count, compose(count_le_diff1_poly, diff1_le_advC), "advC_poly_variants")
cn_le_dbnd_analytic = compose(cn_le_bound, bound_le_dbnd_analytic, "cn_le_dbnd_analytic")
deg_analytic_le_cn = compose(deg_analytic_le_max, max_le_cn, "deg_analytic_le_cn")
cn_le_proj_SD = compose(cn_le_bound, bound_le_proj_SD, "cn_le_proj_SD")

CATALOG: dict[str, Reduction] = {r.id: r for r in [
    cn_le_count, count_le_max, max_le_cn, count_le_cn, cn_le_max, cn_le_bound, bound_le_cn,
    count_le_sum, cn_le_sum, sum_le_advG, advG_le_cn,
    count_le_diff1, cn_le_diff1, diff1_le_advC, advC_le_cn, count_le_diff1_poly, advC_poly_variants,
    min_le_deg, deg_le_min, deg_le_monic, monic_le_deg, monic_le_zeros, zeros_le_monic,
    bound_le_dbnd_analytic, cn_le_dbnd_analytic, dbnd_le_deg_analytic, deg_analytic_le_max, deg_analytic_le_cn,
    bound_le_proj_SD, cn_le_proj_SD, projSD_le_projED, projED_le_cn,
    projES_le_cnseq, boundseq_le_projES,
]}

EQUIVALENCES: dict[str, tuple[str, ...]] = {
    "cn_eq_max": ("cn_le_max", "max_le_cn"),
    "cn_eq_bound": ("cn_le_bound", "bound_le_cn"),
    "cn_eq_count": ("cn_le_count", "count_le_cn"),
    "min_eq_deg": ("min_le_deg", "deg_le_min"),
    "deg_eq_monic": ("deg_le_monic", "monic_le_deg"),
    "monic_eq_zeros": ("monic_le_zeros", "zeros_le_monic"),
}


def get(rid: str) -> Reduction:
    try:
        return CATALOG[rid]
    except KeyError:
        raise KeyError(f"unknown reduction {rid!r}") from None
