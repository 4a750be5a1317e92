from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wlab.names import (
    InstrumentedName, Name, RationalComplex, RationalPoly2, ReplayName, UnloggedQuery, constant, decode_list,
    encode_list, enum_rational_complex, enum_rational_poly, from_values, index_of, interleave, pair, poly_index,
    project, rational_index, rational_of, triple, unpair, untriple,
)

nats = st.integers(min_value=0, max_value=10**6)
rationals = st.fractions(max_denominator=10**4).filter(lambda x: abs(x) < 10**4)


def test_cantor_pairing_frozen_values():
    # diagonal-by-diagonal order
    assert [unpair(k) for k in range(6)] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert pair(3, 4) == 32


@given(nats, nats)
def test_pair_roundtrip(m, n):
    assert unpair(pair(m, n)) == (m, n)


@given(nats)
def test_unpair_roundtrip(k):
    assert pair(*unpair(k)) == k


@given(nats, nats, nats)
def test_triple_roundtrip(a, b, c):
    assert untriple(triple(a, b, c)) == (a, b, c)


@given(st.lists(st.integers(min_value=0, max_value=10**9), max_size=12))
def test_list_coding_roundtrip(xs):
    assert decode_list(encode_list(xs)) == xs


def test_list_coding_is_onto_an_initial_segment():
    seen = {encode_list(decode_list(k)) for k in range(2000)}
    assert seen == set(range(2000))


@given(rationals)
def test_rational_roundtrip(x):
    assert rational_of(rational_index(x)) == x


def test_rational_enumeration_is_injective_on_a_prefix():
    xs = [rational_of(k) for k in range(3000)]
    assert len(set(xs)) == len(xs)
    assert xs[0] == 0 and rational_index(Fraction(1)) % 2 == 1 and rational_index(Fraction(-1)) % 2 == 0


@given(rationals, rationals)
def test_complex_index_roundtrip(a, b):
    z = RationalComplex(a, b)
    assert enum_rational_complex(index_of(z)) == z
    assert RationalComplex.from_json(z.to_json()) == z


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 2)),
                       st.tuples(rationals, rationals), max_size=5))
def test_poly_index_roundtrip(coeffs):
    P = RationalPoly2({k: RationalComplex(*v) for k, v in coeffs.items()})
    assert enum_rational_poly(poly_index(P)) == P


def test_poly_enumeration_is_bijective_on_a_prefix():
    assert all(poly_index(enum_rational_poly(k)) == k for k in range(1500))


def test_poly_evaluation_and_circle_coefficients():
    P = RationalPoly2({(2, 0): 1, (1, 1): 3, (0, 1): RationalComplex(0, 1)})
    z = RationalComplex(Fraction(1, 2), Fraction(1, 3))
    want = z * z + 3 * z * z.conj() + RationalComplex(0, 1) * z.conj()
    assert P(z) == want
    assert P.degree == 2 and not P.is_holomorphic()
    assert P.circle_coefficient(0) == RationalComplex(3)
    assert P.circle_coefficient(-1) == RationalComplex(0, 1)


def test_name_memoizes_and_rejects_non_naturals():
    calls = []
    p = Name(lambda n: calls.append(n) or n * n)
    assert p(3) == 9 and p(3) == 9
    assert calls == [3]
    with pytest.raises(ValueError):
        Name(lambda n: -1)(0)
    with pytest.raises(IndexError):
        p(-1)


def test_builders():
    assert from_values([4, 5], 7).prefix(4) == [4, 5, 7, 7]
    assert from_values([1], lambda n: n).prefix(3) == [1, 1, 2]
    q = interleave([constant(1), from_values([2, 3])])
    assert project(q, 1).prefix(3) == [2, 3, 0]
    assert project(q, 5).prefix(2) == [0, 0]


def test_instrumented_and_replay():
    p = InstrumentedName(from_values([9, 8, 7, 6]))
    assert p(2) + p(0) == 16
    assert p.queried() == {2: 7, 0: 9}
    r = ReplayName(p.queried())
    assert r(2) == 7
    with pytest.raises(UnloggedQuery):
        r(1)
    assert ReplayName({}, fill=lambda n: 5)(3) == 5
