from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from wlab.intervals import (
    Interval, IntervalC, eval_poly, eval_real_poly, exp, exp_bounds, pow2_bounds, precision, root_bounds,
    round_down, round_up, sqrt_bounds, working_precision,
)
from wlab.names import RationalComplex, RationalPoly2

fr = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


@st.composite
def intervals(draw):
    a, b = draw(fr), draw(fr)
    return Interval(min(a, b), max(a, b)), draw(st.floats(0, 1))


def _sample(iv_t):
    iv, t = iv_t
    return iv, iv.lo + (iv.hi - iv.lo) * Fraction(t)


@given(intervals(), intervals(), st.sampled_from(["+", "-", "*"]))
def test_arithmetic_encloses_point_results(a, b, op):
    (A, x), (B, y) = _sample(a), _sample(b)
    f = {"+": lambda u, v: u + v, "-": lambda u, v: u - v, "*": lambda u, v: u * v}[op]
    assert f(A, B).contains(f(x, y))


@given(intervals(), intervals())
def test_division_encloses(a, b):
    (A, x), (B, y) = _sample(a), _sample(b)
    assume(B.lo > 0 or B.hi < 0)
    assert (A / B).contains(x / y)


def test_division_by_interval_containing_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Interval(1, 2) / Interval(-1, 1)


@given(fr)
def test_rounding_is_directed(x):
    assert round_down(x, 10) <= x <= round_up(x, 10)
    assert round_up(x, 10) - round_down(x, 10) <= abs(x) * Fraction(1, 1 << 9) + Fraction(0)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=1000))
def test_sqrt_bounds(x):
    lo, hi = sqrt_bounds(x, 40)
    assert lo * lo <= x <= hi * hi


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100), st.integers(1, 7))
def test_root_bounds(a, b):
    lo, hi = root_bounds(a, b, 40)
    assert lo ** b <= a <= hi ** b
    assert hi - lo <= Fraction(1, 1 << 40)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=50))
def test_pow2_and_exp_against_mpmath(r):
    with mpmath.workprec(200):
        lo, hi = pow2_bounds(r, 60)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= mpmath.power(2, mpmath.mpf(r.numerator) / r.denominator)
        assert mpmath.power(2, mpmath.mpf(r.numerator) / r.denominator) <= mpmath.mpf(hi.numerator) / hi.denominator
        elo, ehi = exp_bounds(r, 60)
        e = mpmath.exp(mpmath.mpf(r.numerator) / r.denominator)
        assert mpmath.mpf(elo.numerator) / elo.denominator <= e <= mpmath.mpf(ehi.numerator) / ehi.denominator
        assert ehi - elo < Fraction(1, 1 << 50)


def test_exp_on_intervals_is_monotone_enclosure():
    E = exp(Interval(Fraction(-1), Fraction(1, 2)))
    assert E.lo <= Fraction(3678795, 10**7) and E.hi >= Fraction(16487212, 10**7)
    assert E.lo > Fraction(3678794, 10**7) and E.hi < Fraction(16487213, 10**7)


def test_precision_context_only_raises():
    base = working_precision()
    with precision(base + 50):
        assert working_precision() == base + 50
        with precision(10):
            assert working_precision() == base + 50
    assert working_precision() == base


@given(st.lists(st.tuples(fr, fr), min_size=1, max_size=5), fr, fr, st.floats(0, 1), st.floats(0, 1))
def test_complex_poly_enclosure(coeffs, a, b, s, t):
    P = RationalPoly2.univariate([RationalComplex(*c) for c in coeffs])
    box = IntervalC.from_bounds(min(a, b), max(a, b), -1, 1)
    z = RationalComplex(box.re.lo + box.re.width * Fraction(s), Fraction(t) * 2 - 1)
    assert eval_poly(P, box).contains(P(z))


def test_conjugate_monomials_and_real_horner():
    P = RationalPoly2({(1, 1): 1})  # |z|^2
    v = eval_poly(P, IntervalC.point(RationalComplex(3, 4)))
    assert v.contains(RationalComplex(25)) and v.width == 0
    assert eval_real_poly([1, 0, -1], Interval(Fraction(1, 2), 1)).contains(Fraction(3, 4))


def test_complex_interval_division():
    q = IntervalC.point(RationalComplex(1, 1)) / IntervalC.point(RationalComplex(0, 2))
    assert q.contains(RationalComplex(Fraction(1, 2), Fraction(-1, 2)))
