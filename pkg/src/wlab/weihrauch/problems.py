"""Ground-truth verifiers, one per problem tag."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from ..analytic import truncation_index
from ..intervals import Interval
from ..names import Name, RationalComplex
from ..polynomials import PolyName, TupleName
from ..spaces import point_of, poly_approx
from ..testfns import BumpName, SchwartzName, check_schwartz
from .core import Problem, Tag
from .truths import (
    ColumnTruth, Complement, Known, FunctionTruth, GermTruth, LimitTruth, PolyTruth, SeqTruth, Stream,
    TestFnTruth, UpSet,
)

__all__ = ["PROBLEMS", "problem", "matching_distance"]

CHECK_PREC = 12


def _dist(a: RationalComplex, b: RationalComplex) -> float:
    return abs(complex(a) - complex(b))


def matching_distance(xs, ys) -> float:
    """min over bijections of the max pairwise distance (brute force for small tuples)."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return float("inf")
    if not xs:
        return 0.0
    if len(xs) > 7:
        # greedy is an upper bound; fine for verification of well-separated roots
        rest, worst = list(ys), 0.0
        for x in xs:
            j = min(range(len(rest)), key=lambda i: _dist(x, rest[i]))
            worst = max(worst, _dist(x, rest.pop(j)))
        return worst
    return min(max(_dist(x, y) for x, y in zip(xs, perm)) for perm in permutations(ys))


def _cn(a: Name, t) -> bool:
    k = a(0)
    if isinstance(t, frozenset):
        return k in t
    if isinstance(t, (Stream, Complement)):
        return not t.excluded(k)
    return bool(t.contains(k))


def _set(t) -> frozenset[int]:
    return t if isinstance(t, frozenset) else t.open_set()


def _max(a: Name, t) -> bool:
    return a(0) == max(_set(t), default=0)


def _bound(a: Name, t) -> bool:
    return all(a(0) >= v for v in _set(t))


def _min(a: Name, t) -> bool:
    return a(0) == (t.value if isinstance(t, Known) else t.minimum())


def _lpo(a: Name, t: Stream) -> bool:
    return a(0) == (1 if t.is_zero() else 0)


def _count(a: Name, t: Stream) -> bool:
    return a(0) == len(t.support)


def _lim(a: Name, t: LimitTruth) -> bool:
    return all(_dist(point_of(a, n), t.limit) <= 2.0 ** -n for n in range(CHECK_PREC))


_SUM_POINTS = [RationalComplex(Fraction(1)), RationalComplex(Fraction(-1)), RationalComplex(Fraction(0), Fraction(1)),
               RationalComplex(Fraction(1, 2)), RationalComplex()]


def _sum(a: Name, t: GermTruth) -> bool:
    n = CHECK_PREC
    poly = poly_approx(a, n)
    K = truncation_index(t.advice, n)
    for z in _SUM_POINTS:
        partial = RationalComplex()
        zk = RationalComplex(Fraction(1))
        for k in range(K + 1):
            partial = partial + t.coeff(k) * zk
            zk = zk * z
        if _dist(poly(z), partial) > 2.0 ** -n + 2.0 ** -(n + 2):
            return False
    return True


def _adv_g(a: Name, t) -> bool:
    if isinstance(t, UpSet):
        return bool(t.contains(a(0)))
    return t.valid(a(0))


def _adv_c(a: Name, t: FunctionTruth) -> bool:
    m = a(0)
    return t.valid(m) if t.valid is not None else m >= t.advice


def _diff1(a: Name, t: FunctionTruth) -> bool:
    return all(_dist(point_of(a, n), t.derivative_at_one) <= 2.0 ** -n for n in range(CHECK_PREC))


def _deg(a: Name, t) -> bool:
    return a(0) == t.degree


def _dbnd(a: Name, t: FunctionTruth) -> bool:
    return a(0) >= t.degree


def _monic(a: Name, t: PolyTruth) -> bool:
    P = PolyName.parse(a)
    target = t.monic()
    if P.bound != len(target) - 1:
        return False
    return all(_dist(P.approx(j, CHECK_PREC), c) <= 2.0 ** -CHECK_PREC for j, c in enumerate(target))


def _zeros(a: Name, t: PolyTruth) -> bool:
    T = TupleName.parse(a)
    if T.length != t.degree:
        return False
    if t.roots is None:
        return True
    got = [T.approx(j, CHECK_PREC) for j in range(T.length)]
    return matching_distance(got, t.roots) <= 2.0 ** -CHECK_PREC


def _support_ok(b: int, t: TestFnTruth) -> bool:
    span = t.family.support_interval()
    return span is None or (-b <= span[0] and span[1] <= b)


def _slice_ok(smooth, t: TestFnTruth) -> bool:
    P = smooth.approx(1, 0, 4)
    for x in (Fraction(-1), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(1)):
        if (t.family.derivative(0, Interval(x, x)) - P(x).re).mag() >= Fraction(1, 16):
            return False
    return True


def _proj_d(a: Name, t: TestFnTruth) -> bool:
    f = BumpName.parse(a, t.family)
    return _support_ok(f.support_bound, t) and _slice_ok(f.smooth, t)


def _proj_es(a: Name, t: TestFnTruth) -> bool:
    f = SchwartzName.parse(a, t.family)
    return all(r["ok"] for r in check_schwartz(f, t.family, 3, samples=20)) and _slice_ok(f.smooth, t)


def _cn_seq(a: Name, t: SeqTruth) -> bool:
    return all(_cn(Name(lambda _, n=n: a(n)), t.parts(n)) for n in range(t.meta.get("check", 4)))


def _bound_seq(a: Name, t: ColumnTruth) -> bool:
    return all(all(a(k) >= v for v in t.values(k)) for k in range(4))


PROBLEMS: dict[Tag, Problem] = {p.tag: p for p in [
    Problem(Tag.CN, _cn, "closed choice: a member of the set whose complement is enumerated"),
    Problem(Tag.MAX, _max, "maximum of a bounded enumerated set (0 for the empty set)"),
    Problem(Tag.BOUND, _bound, "an upper bound of a bounded enumerated set"),
    Problem(Tag.MIN, _min, "minimum of a stream"),
    Problem(Tag.LPO, _lpo, "1 iff the stream is all zeros"),
    Problem(Tag.LIM, _lim, "limit of a convergent sequence"),
    Problem(Tag.COUNT, _count, "size of the support of a finitely supported stream"),
    Problem(Tag.SUM, _sum, "sum of a power series with radius of convergence > 1"),
    Problem(Tag.ADV_G, _adv_g, "a decay constant for the coefficients of a germ"),
    Problem(Tag.ADV_C, _adv_c, "an advice constant for an analytic function"),
    Problem(Tag.DIFF1, _diff1, "f'(1) of an analytic function given as continuous"),
    Problem(Tag.DEG, _deg, "degree of a polynomial"),
    Problem(Tag.MONIC, _monic, "the monic normalisation of a nonzero polynomial"),
    Problem(Tag.ZEROS, _zeros, "the zeros of a nonzero polynomial with multiplicity"),
    Problem(Tag.DBND_CW, _dbnd, "a degree bound of an analytic function that is a polynomial"),
    Problem(Tag.DEG_CW, _deg, "the degree of an analytic function that is a polynomial"),
    Problem(Tag.PROJ_SD, _proj_d, "a D-name from an S-name of a compactly supported function"),
    Problem(Tag.PROJ_ED, _proj_d, "a D-name from an E-name of a compactly supported function"),
    Problem(Tag.PROJ_ES, _proj_es, "an S-name from an E-name of a rapidly decreasing function"),
    Problem(Tag.CN_SEQ, _cn_seq, "closed choice on each component"),
    Problem(Tag.BOUND_SEQ, _bound_seq, "a bound for each column"),
]}


def problem(tag: Tag | str) -> Problem:
    return PROBLEMS[Tag(tag)]
