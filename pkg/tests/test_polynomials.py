from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wlab.intervals import IntervalC
from wlab.names import RationalComplex, from_values
from wlab.polynomials import (
    NotMonicError, PolyName, TupleName, ZerosRealizer, deg_min_post, deg_min_pre, deg_monic, deg_via_min,
    min_deg_post, min_deg_pre, monic_from_roots, monic_of, poly_from_json, poly_name, poly_to_json,
    zeros_general, zeros_monic,
)
from wlab.roots import certify
from wlab.weihrauch import Tag, oracle, problem
from wlab.weihrauch.instances import poly_from_roots
from wlab.weihrauch.problems import matching_distance
from wlab.weihrauch.truths import Known, Stream

root = st.builds(lambda a, b: RationalComplex(a, b),
                 st.fractions(min_value=-3, max_value=3, max_denominator=6),
                 st.sampled_from([Fraction(0), Fraction(0), Fraction(1, 2), Fraction(-1)]))




@settings(max_examples=15)
@given(st.lists(root, min_size=1, max_size=4))
def test_zeros_of_monic_polynomials(roots):
    P = poly_name(poly_from_roots(1, roots))
    T = zeros_monic(P)
    assert T.length == len(roots)
    got = [T.approx(j, 16) for j in range(T.length)]
    assert matching_distance(got, roots) <= 2.0 ** -16


def test_zero_labels_are_stable_across_precisions():
    P = poly_name(poly_from_roots(1, [Fraction(1, 3), Fraction(2), RationalComplex(0, 1)]))
    Z = ZerosRealizer(P)
    for j in range(3):
        prev = Z.entry(j, 4)
        for n in (8, 12, 20):
            cur = Z.entry(j, n)
            assert abs(complex(cur) - complex(prev)) <= 2.0 ** -4 + 2.0 ** -n
            prev = cur


def test_certificate_windings_sum_to_degree():
    cs = poly_from_roots(1, [1, 1, Fraction(-1, 2)])
    box = [IntervalC.point(c) for c in cs]
    cert = certify(box, 12)
    assert cert is not None and sum(d.multiplicity for d in cert.discs) == 3
    assert cert.to_json()["degree"] == 3


def test_monic_normalisation():
    cs = poly_from_roots(Fraction(-5, 7), [2, Fraction(1, 3)])
    P = poly_name(cs, bound=4)
    M = monic_of(P, 2)
    for j, c in enumerate(poly_from_roots(1, [2, Fraction(1, 3)])):
        assert abs(complex(M.approx(j, 20)) - complex(c)) <= 2.0 ** -20
    assert deg_monic(M) == 2


def test_deg_monic_rejects_non_monic():
    with pytest.raises(NotMonicError):
        deg_monic(poly_name([0, 0, Fraction(1, 8)]))


def test_monic_from_roots_inverts_zeros():
    roots = [Fraction(1, 2), Fraction(-2), RationalComplex(1, 1)]
    T = zeros_monic(poly_name(poly_from_roots(1, roots)))
    M = monic_from_roots(T)
    for j, c in enumerate(poly_from_roots(1, roots)):
        assert abs(complex(M.approx(j, 12)) - complex(c)) <= 2.0 ** -12


def test_degree_via_min_oracle():
    for lead, bound in ((Fraction(1, 512), 5), (Fraction(3), 3), (Fraction(-1, 7), 6)):
        cs = poly_from_roots(lead, [1, 2])
        P = poly_name(cs, bound)
        pre = deg_min_pre(P.name)
        assert min(pre(n) for n in range(1, 40)) == bound - 2
        assert deg_via_min(P, lambda q: oracle(Tag.MIN).answer(q, Known(bound - 2))) == 2


def test_degree_via_fuel_oracle_converges():
    P = poly_name(poly_from_roots(Fraction(1, 512), [1]), 3)
    answers = [deg_via_min(P, lambda q, F=F: oracle(Tag.MIN, fuel=F).answer(q, None)) for F in (2, 6, 14, 30)]
    assert answers[-1] == 1
    assert answers == sorted(answers)


def test_min_to_degree_forward_map():
    p = from_values([5, 3, 8, 3], 3)
    poly = min_deg_pre(p)
    P = PolyName.parse(poly)
    assert P.bound == 5
    # a_2 = 2^-1 is the top nonzero coefficient: degree 5 - 3 = 2
    assert P.approx(2, 10) == RationalComplex(Fraction(1, 2))
    assert all(P.approx(j, 10) == RationalComplex() for j in (3, 4, 5))
    assert min_deg_post(p, from_values([2]))(0) == 3
    assert deg_min_post(from_values([5]), from_values([3]))(0) == 2


def test_zeros_general_with_exact_min():
    roots = [Fraction(1, 2), Fraction(3)]
    P = poly_name(poly_from_roots(Fraction(2, 3), roots), 4)
    Z = zeros_general(P, lambda q: oracle(Tag.MIN).answer(q, Known(2)))
    got = [Z.entry(j, 14) for j in range(2)]
    assert matching_distance(got, roots) <= 2.0 ** -14


def test_poly_literal_roundtrip():
    cs = [Fraction(1, 3), Fraction(0), RationalComplex(2, -1)]
    P, exact = poly_from_json(poly_to_json(cs, bound=4))
    assert P.bound == 4 and exact[:3] == [RationalComplex.of(c) for c in cs]
    assert PolyName.parse(P.name).approx(2, 8) == RationalComplex(2, -1)
    assert isinstance(TupleName.parse(zeros_monic(poly_name([-1, 1])).name), TupleName)


def test_min_verifier_matches_stream():
    assert problem(Tag.MIN).verify(from_values([3]), Stream((5, 3, 8), 3))
