from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from wlab.intervals import IntervalC
from wlab.models import geometric_series_model
from wlab.names import RationalComplex, from_values
from wlab.spaces import (
    CD, ClosedSetName, OpenSetName, closed_set_decode_prefix, cont_eval, function_name, nat_name, nat_value,
    pi_name, point_from_enclosures, point_of, rational_point, real_eval, validity_report,
)


def test_naturals_and_sets():
    assert nat_value(nat_name(7)) == 7
    p = from_values([0, 3, 0, 1, 5])
    assert OpenSetName(p).enumerated(5) == {2, 0, 4}
    assert ClosedSetName(p).excluded(5) == {2, 0, 4}
    assert closed_set_decode_prefix(ClosedSetName(p), 5, 6) == {1, 3, 5}


@given(st.fractions(min_value=-10, max_value=10, max_denominator=100), st.integers(0, 30))
def test_rational_points_are_exact(x, n):
    assert point_of(rational_point(x), n) == RationalComplex(x)
    assert real_eval(rational_point(x), n).contains(RationalComplex(x))


def _mp_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def test_pi_name_against_mpmath():
    for n in range(0, 40, 3):
        with mpmath.workprec(n + 80):
            pi = _mp_fraction(mpmath.pi)
        assert abs(point_of(pi_name(), n).re - pi) < Fraction(1, 1 << n)


def test_point_from_enclosures_names_the_point():
    third = Fraction(1, 3)
    p = point_from_enclosures(lambda k: IntervalC.ball(RationalComplex(third), Fraction(1, 1 << k)))
    for n in range(20):
        assert abs(point_of(p, n).re - third) < Fraction(1, 1 << n)


@given(st.fractions(min_value=-1, max_value=1, max_denominator=64), st.integers(0, 24))
def test_cont_eval_of_a_function_name(x, n):
    f = function_name(geometric_series_model(Fraction(1, 2)), CD)  # 1/(1 - z/2)
    box = cont_eval(f, rational_point(x), n)
    assert box.width <= Fraction(1, 1 << n)
    assert box.contains(RationalComplex(1 / (1 - x / 2)))


def test_validity_report_rows():
    truth = lambda k: IntervalC.ball(RationalComplex(Fraction(2, 3)), Fraction(1, 1 << k))  # noqa: E731
    good = point_from_enclosures(truth)
    rows = validity_report(good, truth, 8)
    assert [r["index"] for r in rows] == list(range(8)) and all(r["ok"] for r in rows)
    assert set(rows[0]) >= {"index", "claimed_precision", "interval"}
    bad = rational_point(Fraction(2, 3) + Fraction(1, 100))
    assert not all(r["ok"] for r in validity_report(bad, truth, 8))
