"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line; pytest prints them in the
terminal summary. Run this file directly (``python tests/test_acceptance.py``)
for just those lines.
"""

import functools
import random
import sys
import time
from fractions import Fraction

import mpmath
import sympy

from wlab.analytic import diff_analytic, eval_analytic, gadget_fn, germ_from_coeffs, germ_of, sum_germ
from wlab.bumps import BumpPolyRec, BumpSum, bump_poly
from wlab.names import RationalComplex
from wlab.polynomials import ZerosRealizer, deg_via_min, poly_name, zeros_monic
from wlab.spaces import rational_point, real_eval
from wlab.testfns import bump_name, eval_smooth_derivative, seminorm_S
from wlab.weihrauch import CATALOG, Tag, check_continuity, compose, get, instances_for, oracle, problem, run_verified
from wlab.weihrauch.instances import column_instance, poly_from_roots, support_instance
from wlab.weihrauch.problems import matching_distance
from wlab.weihrauch.truths import Known

RESULTS: dict[int, bool] = {}
LINES: dict[int, str] = {}


def criterion(k: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            t = time.perf_counter()
            try:
                fn(*a, **kw)
            except BaseException:
                RESULTS[k] = False
                LINES[k] = f"FAIL  criterion {k:2d}: {title}"
                print(LINES[k], flush=True)
                raise
            RESULTS[k] = True
            LINES[k] = f"PASS  criterion {k:2d}: {title} ({time.perf_counter() - t:.1f}s)"
            print(LINES[k], flush=True)
        return run
    return wrap


def rc(x) -> RationalComplex:
    return RationalComplex.of(x)


@criterion(1, "summation of the germ 3^-k at x = 1 encloses 3/2")
def test_summation_fidelity():
    g = germ_from_coeffs(lambda k: rc(Fraction(1, 3 ** k)), 1)
    box = eval_analytic(sum_germ(g), rational_point(1), 20)
    assert box.contains(rc(Fraction(3, 2)))
    assert box.width <= Fraction(1, 1 << 19)


@criterion(2, "germ extraction of 1/(2 - z) recovers 2^-(k+1)")
def test_germ_roundtrip():
    f = sum_germ(germ_from_coeffs(lambda k: rc(Fraction(1, 2 ** (k + 1))), 1))
    seq = germ_of(f.cont)
    for k in range(11):
        box = real_eval(seq.element(k), 17)
        assert box.contains(rc(Fraction(1, 2 ** (k + 1)))), k
        assert box.width <= Fraction(1, 1 << 16)


def circle_points(count: int):
    """Exact rational points on the unit circle, ((1-t^2)/(1+t^2), 2t/(1+t^2))."""
    pts = []
    for j in range(count):
        t = Fraction(j - count // 2, count // 8)
        pts.append(RationalComplex((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return pts


@criterion(3, "gadgets: f_n'(1) = 1 and |f_n| < 2^-n on the unit circle")
def test_gadget_identities():
    pts = circle_points(200)
    assert all(p.re ** 2 + p.im ** 2 == 1 for p in pts)
    for n in range(4):
        f = gadget_fn(n)
        box = eval_analytic(diff_analytic(f), rational_point(1), 12)
        assert box.contains(rc(1)) and box.width <= Fraction(1, 1 << 12), n
        worst = max(eval_analytic(f, rational_point(p), n + 8).mag() for p in pts)
        assert worst < Fraction(1, 1 << n), (n, float(worst))


@criterion(4, "Count through Sum and germ advice to C_N returns the support size")
def test_count_pipeline():
    pipeline = compose(compose(get("count_le_sum"), get("sum_le_advG")), get("advG_le_cn"))
    assert pipeline.source == Tag.COUNT and pipeline.target == Tag.CN
    rnd = random.Random(4)
    for _ in range(10):
        S = frozenset(rnd.sample(range(12), rnd.randint(0, 5)))
        inst = support_instance(S)
        out, ok = run_verified(pipeline, oracle(Tag.CN), inst, problem(Tag.COUNT))
        assert ok and out(0) == len(S), sorted(S)


@criterion(5, "zeros of random monic polynomials to 2^-20 with winding counts summing to the degree")
def test_root_finding():
    rnd = random.Random(5)
    for _ in range(20):
        d = rnd.randint(1, 5)
        roots = [RationalComplex(Fraction(rnd.randint(-12, 12), rnd.randint(1, 4)),
                                 Fraction(rnd.choice([0, 0, rnd.randint(-6, 6)]), rnd.randint(1, 3)))
                 for _ in range(d)]
        P = poly_name(poly_from_roots(1, roots))
        T = zeros_monic(P)
        got = [T.approx(j, 20) for j in range(T.length)]
        assert matching_distance(got, roots) <= 2.0 ** -20, roots
        cert = ZerosRealizer(P).certificate(20)
        assert sum(disc.multiplicity for disc in cert.discs) == d


@criterion(6, "degree via one min query, including a 2^-9 leading coefficient")
def test_degree_via_min():
    rnd = random.Random(6)
    cases = [(Fraction(1, 512), [Fraction(1, 2), -2, 3], 5)]
    while len(cases) < 20:
        d = rnd.randint(0, 5)
        lead = Fraction(rnd.choice([-1, 1]) * rnd.randint(1, 9), rnd.choice([1, 2, 8, 64, 512]))
        cases.append((lead, [Fraction(rnd.randint(-6, 6), rnd.randint(1, 3)) for _ in range(d)], d + rnd.randint(0, 3)))
    for lead, roots, bound in cases:
        P = poly_name(poly_from_roots(lead, roots), bound)
        d = len(roots)
        assert deg_via_min(P, lambda q: oracle(Tag.MIN).answer(q, Known(bound - d))) == d


@criterion(7, "bump recursion matches symbolic derivatives; f'(1/2) matches a high precision value")
def test_bump_calculus():
    x = sympy.Symbol("x")
    B = sympy.exp(x ** 2 / (x ** 2 - 1))
    rec = BumpPolyRec.up_to(6)
    for n in range(1, 7):
        p = sum(c * x ** i for i, c in enumerate(bump_poly(n)))
        assert sympy.expand(sympy.cancel(sympy.diff(B, x, n) * (1 - x ** 2) ** (2 * n) / B) - p) == 0, n
        # degree 3n - 2, inside the 3n envelope
        assert rec.degree(n) == 3 * n - 2 <= 3 * n
    box = eval_smooth_derivative(bump_name(BumpSum.bump(0)).smooth, 1, Fraction(1, 2), 12)
    with mpmath.workdps(40):
        closed = -2 * mpmath.mpf(1) / 2 * mpmath.exp(mpmath.mpf(-1) / 3) * (mpmath.mpf(3) / 4) ** -2
        numeric = mpmath.diff(lambda s: mpmath.exp(s ** 2 / (s ** 2 - 1)), mpmath.mpf(1) / 2)
        assert abs(closed - numeric) < mpmath.mpf(10) ** -30
        assert float(box.re.lo) <= float(closed) <= float(box.re.hi)
    assert box.re.width <= Fraction(1, 1 << 12)


@criterion(8, "Schwartz seminorms of shifted bumps stay under (|l|+1)^d (17m)^(4m)")
def test_seminorm_bounds():
    for lam in (0, 1, 2):
        fam = BumpSum.bump(lam)
        for d in range(4):
            for m in range(4):
                bound = (abs(lam) + 1) ** d * (17 * m) ** (4 * m)
                assert seminorm_S(fam, d, m, 4).hi <= bound, (lam, d, m)


EXTRA_COLUMNS = [
    column_instance([[0, 0, 7], [2], [0, 1, 0, 0, 4]], "cols_wide"),
    column_instance([[5, 4, 3, 2, 1], [], [9]], "cols_gap"),
]


@criterion(9, "test-function reductions return verified bounds with exact oracles")
def test_testfn_reductions():
    r = get("cn_le_proj_SD")
    insts = list(instances_for("cn_le_proj_SD").values())
    assert len(insts) == 5
    for inst in insts:
        for pol in ("least", "alt"):
            assert run_verified(r, oracle(r.target, pol), inst, problem(r.source))[1], inst.label
    r = get("boundseq_le_projES")
    insts = list(instances_for("boundseq_le_projES").values()) + EXTRA_COLUMNS
    assert len(insts) == 5
    for inst in insts:
        for pol in ("least", "alt"):
            assert run_verified(r, oracle(r.target, pol), inst, problem(r.source))[1], inst.label


@criterion(10, "every catalog H and K passes finite-log replay on all bundled instances")
def test_continuity_harness():
    failures = []
    for rid, r in CATALOG.items():
        for inst in instances_for(rid).values():
            failures += [rep.to_json() for rep in check_continuity(r, inst) if not rep.ok]
    assert not failures, failures[:3]


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        try:
            t()
        except Exception:
            pass
    sys.exit(0 if len(RESULTS) == 10 and all(RESULTS.values()) else 1)
