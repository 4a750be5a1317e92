from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wlab.bumps import (
    BumpPolyRec, BumpSum, bump_derivative, bump_poly, bump_sup, chebyshev_to_monomial, fit_slice, seminorm,
)
from wlab.intervals import Interval

x = sympy.Symbol("x")
BUMP = sympy.exp(x ** 2 / (x ** 2 - 1))


def mp_bump(m, t):
    t = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else mpmath.mpf(t)
    if abs(t) >= 1:
        return mpmath.mpf(0)
    return mpmath.diff(lambda s: mpmath.exp(s ** 2 / (s ** 2 - 1)), t, m)


def test_recursion_frozen_values():
    assert bump_poly(0) == (1,)
    assert bump_poly(1) == (0, -2)
    assert bump_poly(2) == (-2, 0, 0, 0, 6)


@pytest.mark.parametrize("n", range(1, 5))
def test_recursion_matches_symbolic_derivative(n):
    p = sum(c * x ** i for i, c in enumerate(bump_poly(n)))
    ratio = sympy.diff(BUMP, x, n) * (1 - x ** 2) ** (2 * n) / BUMP
    assert sympy.simplify(ratio - p) == 0


def test_degrees():
    rec = BumpPolyRec.up_to(8)
    assert [rec.degree(n) for n in range(1, 9)] == [3 * n - 2 for n in range(1, 9)]


@settings(max_examples=15)
@given(st.integers(0, 3), st.fractions(min_value=Fraction(-99, 100), max_value=Fraction(99, 100), max_denominator=200))
def test_enclosure_at_points(m, t):
    iv = bump_derivative(m, Interval(t, t))
    with mpmath.workprec(80):
        v = mp_bump(m, t)
    assert float(iv.lo) - 1e-12 <= float(v) <= float(iv.hi) + 1e-12
    assert iv.width < Fraction(1, 10**9)


@given(st.integers(0, 3), st.fractions(min_value=-2, max_value=2, max_denominator=50),
       st.fractions(min_value=0, max_value=Fraction(1, 2), max_denominator=50))
def test_enclosure_over_intervals(m, a, w):
    iv = bump_derivative(m, Interval(a, a + w))
    for k in range(5):
        t = a + w * Fraction(k, 4)
        assert iv.contains(bump_derivative(m, Interval(t, t)).mid) or abs(t) >= 1


def test_sup_bounds():
    for m in range(4):
        S = bump_sup(m)
        grid = [mpmath.mpf(k) / 200 for k in range(200)]
        sampled = max(abs(mp_bump(m, t)) for t in grid)
        assert float(sampled) <= float(S) <= float(sampled) * 17 / 16 + 1 / 64


def test_family_descriptor_roundtrip():
    fam = BumpSum((Fraction(-1), Fraction(2)), (Fraction(1), Fraction(-1, 2)))
    assert BumpSum.from_json(fam.to_json()) == fam
    assert BumpSum.from_json('{"kind": "bump", "shifts": ["3/2"]}') == BumpSum.bump(Fraction(3, 2))
    assert fam.support_interval() == (Fraction(-2), Fraction(3)) and fam.support_bound() == 3
    with pytest.raises(ValueError):
        BumpSum.from_json('{"kind": "wave"}')


def test_seminorm_encloses_sampled_sup():
    fam = BumpSum.bump(1)
    s = seminorm(fam, 2, 1, Fraction(1, 256))
    with mpmath.workprec(80):
        sampled = max(abs((t ** 2) * mp_bump(1, t - 1)) for t in (mpmath.mpf(k) / 100 for k in range(1, 200)))
    assert float(s.lo) - 1 / 256 <= float(sampled) <= float(s.hi)
    assert s.width <= Fraction(1, 256)


def test_chebyshev_conversion():
    # T_2(x/3) = 2x^2/9 - 1
    assert chebyshev_to_monomial([0, 0, 1], 3) == [-1, 0, Fraction(2, 9)]


@pytest.mark.parametrize("N,m,n", [(1, 0, 6), (2, 1, 3), (3, 0, 5)])
def test_fit_slice_error(N, m, n):
    fam = BumpSum.bump(0)
    P = fit_slice(fam, N, m, n)
    for k in range(-20, 21):
        t = Fraction(N * k, 20)
        err = (fam.derivative(m, Interval(t, t)) - P(t).re).mag()
        assert err < Fraction(1, 1 << n)
