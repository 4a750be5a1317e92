from fractions import Fraction

import pytest

from wlab.bumps import BumpSum
from wlab.intervals import Interval
from wlab.names import from_values, pair
from wlab.testfns import (
    BumpName, ChoiceSeries, ColumnSeries, SchwartzName, SmoothName, bump, bump_name, check_bump, check_schwartz,
    dyadic_point, eval_smooth_derivative, frechet_distance, include_D_to_S, include_D_to_S_name,
    include_S_to_E_name, proj_ED_pre, schwartz_name, seminorm_E, seminorm_S,
)

FAM = BumpSum.bump(0)
F0 = bump_name(FAM)


@pytest.mark.parametrize("m,x", [(0, Fraction(0)), (0, Fraction(1, 2)), (1, Fraction(1, 2)), (1, Fraction(-1, 3))])
def test_derivative_evaluation_matches_closed_form(m, x):
    box = eval_smooth_derivative(F0.smooth, m, x, 10)
    truth = FAM.derivative(m, Interval(x, x))
    assert box.re.width <= Fraction(1, 1 << 10)
    assert box.re.intersects(truth) and box.re.contains(truth.mid)


def test_name_layouts_roundtrip():
    S = include_D_to_S(F0)
    assert [S.decay(k) for k in range(3)] == [1, 1, 1]
    q = S.name
    P = SchwartzName.parse(q, FAM)
    assert P.decay(4) == 1 and P.smooth.name(7) == F0.smooth.name(7)
    assert include_S_to_E_name(q)(5) == F0.smooth.name(5)
    D = include_D_to_S_name(F0.name)
    assert D(0) == 1 and D(2 * 3 + 1) == F0.smooth.name(3)
    B = BumpName.parse(F0.name, FAM)
    assert B.support_bound == 1 and isinstance(B.smooth, SmoothName)


def test_shifted_bump_builder():
    b = bump(Fraction(3, 2))
    assert b.support_bound == 3
    assert check_bump(b, BumpSum.bump(Fraction(3, 2)))[0]["ok"]
    assert not check_bump(BumpName(1, b.smooth), BumpSum.bump(Fraction(3, 2)))[0]["ok"]


def test_dyadic_enumeration_hits_small_dyadics():
    pts = {dyadic_point(j) for j in range(4000)}
    assert {Fraction(a, 4) for a in range(-8, 9)} <= pts


def test_seminorms_of_a_shift():
    s0 = seminorm_S(FAM, 0, 0, 10)
    assert s0.contains(1)
    e = seminorm_E(BumpSum.bump(3), 1, 0, 8)
    assert e.hi == 0  # the shifted bump vanishes on [-1, 1]


def test_frechet_distance_is_a_metric_enclosure():
    g = BumpSum.bump(Fraction(1, 2))
    assert frechet_distance(FAM, FAM, 2).lo == 0
    d = frechet_distance(FAM, g, 2)
    assert d.lo > 0
    assert d.width <= Fraction(1, 1 << 1)
    assert frechet_distance(g, FAM, 2).intersects(d)


def test_choice_series_weights_and_decay():
    p = from_values([2, 0, 5])
    g = ChoiceSeries(p)
    assert g.weight(0) == Fraction(1, 2)
    assert g.weight(1) == Fraction(1, 4 * 17 ** 4)
    assert g.decay(0) == 6 and g.decay(2) == 12
    terms, tail = g.terms_near(20, 0, Fraction(1, 1 << 10))
    assert (Fraction(4), Fraction(1, 2)) in terms and tail <= Fraction(1, 1 << 10)


def test_choice_series_is_rapidly_decreasing():
    p = from_values([1, 0, 2])
    g = ChoiceSeries(p)
    f = schwartz_name(g, g.decay)
    assert all(r["ok"] for r in check_schwartz(f, g, 3, samples=10))


def test_column_series_first_occurrences():
    # column 0 of p is (p(<m, 0>))_m
    vals = {pair(0, 0): 2, pair(1, 0): 2, pair(2, 0): 0}
    p = from_values([vals.get(i, 0) for i in range(40)])
    cs = ColumnSeries(p)
    assert cs.column(0, 3) == [(0, 5), (2, 5)]
    assert cs.column_terms(0, 10) == [(Fraction(5), Fraction(2)), (Fraction(5), Fraction(2))]


def test_column_series_decay_witness_is_valid():
    p = from_values([0] * 10)
    cs = ColumnSeries(p)
    R = cs.decay_witness(1, lambda k: 4)
    f = schwartz_name(cs, lambda n: cs.decay_witness(n, lambda k: 4))
    assert R >= 5
    assert all(r["ok"] for r in check_schwartz(f, cs, 2, samples=8))


def test_support_search_never_lists_true_bounds():
    q = proj_ED_pre(F0.smooth.name)
    listed = {q(s) - 1 for s in range(300) if q(s) > 0}
    assert 1 not in listed and all(k < 1 for k in listed)

