import json

import pytest
from hypothesis import given, settings, strategies as st

from wlab.names import from_values
from wlab.weihrauch import (
    CATALOG, EQUIVALENCES, ConfigurationError, DomainError, OracleInstance, Tag, apply_reduction, compose, get,
    identity, instance, instances_for, manifest_json, oracle, oracle_cn, oracle_count, oracle_lpo, oracle_min,
    problem, run_verified, verify_instance,
)
from wlab.weihrauch.catalog import least_unexcluded
from wlab.weihrauch.instances import KIND_OF, complement_instance, instances, stream_instance, support_instance
from wlab.weihrauch.truths import Complement, Known, Stream


def run(rid, label, policy="least"):
    r = CATALOG[rid]
    out, ok = verify_instance(r, instance(rid, label), policy)
    assert ok
    return out(0)


# --------------------------------------------------------------------------
# smoke values

def test_catalog_smoke_values():
    assert run("count_le_cn", "supp09") == 2
    assert run("cn_le_sum", "set4_11") == 4
    assert run("cn_le_diff1", "least4") == 4
    assert run("count_le_diff1", "supp12") == 2
    assert run("count_le_sum", "supp257") == 3


def test_composition_of_count_and_max():
    r = compose(get("count_le_max"), get("max_le_cn"))
    out, ok = run_verified(r, oracle(Tag.CN), instance("count_le_cn", "supp257"), problem(Tag.COUNT))
    assert ok and out(0) == 3


def test_oracle_values():
    assert oracle_min(None, Stream((5, 3, 8), 3))(0) == 3
    assert oracle_lpo(None, Stream((), 0))(0) == 1
    assert oracle_lpo(None, Stream((0,) * 7 + (1,), 0))(0) == 0
    assert oracle_cn(None, Stream((), 0))(0) == 0
    assert oracle_count(None, Stream((0, 2, 0, 1), 0))(0) == 2
    assert oracle_min(None, Known(4))(0) == 4


def test_oracle_domain_errors():
    with pytest.raises(DomainError):
        oracle_count(None, Stream((1,), 1))
    with pytest.raises(DomainError):
        oracle(Tag.CN).answer(from_values([]), frozenset())
    with pytest.raises(ValueError):
        Complement(frozenset())


def test_identity_and_composition_laws():
    p = from_values(list(range(60)))
    idr = identity(Tag.CN)
    out = idr(p, lambda q: q)
    assert out.prefix(50) == p.prefix(50)
    r = get("cn_le_max")
    left = compose(identity(Tag.CN), r)
    right = compose(r, identity(Tag.MAX))
    for label in ("least4", "set4_11", "least3"):
        inst = instance("cn_le_max", label)
        want = apply_reduction(r, oracle(Tag.MAX), inst)(0)
        assert apply_reduction(left, oracle(Tag.MAX), inst)(0) == want
        assert apply_reduction(right, oracle(Tag.MAX), inst)(0) == want


def test_associativity():
    r1, r2, r3 = get("cn_le_count"), get("count_le_max"), get("max_le_cn")
    a = compose(compose(r1, r2), r3)
    b = compose(r1, compose(r2, r3))
    for label, inst in instances_for("cn_le_count").items():
        assert apply_reduction(a, oracle(Tag.CN), inst)(0) == apply_reduction(b, oracle(Tag.CN), inst)(0)


def test_configuration_errors():
    with pytest.raises(ConfigurationError):
        apply_reduction(get("cn_le_max"), oracle(Tag.CN), instance("cn_le_max", "least4"))
    with pytest.raises(ConfigurationError):
        compose(get("cn_le_max"), get("cn_le_count"))
    with pytest.raises(ConfigurationError):
        run_verified(get("cn_le_max"), oracle(Tag.MAX), instance("cn_le_max", "least4"), problem(Tag.MAX))
    with pytest.raises(ConfigurationError):
        oracle(Tag.SUM, fuel=3).answer(from_values([]), None)


# --------------------------------------------------------------------------
# soundness, oracle independence, fuel

FAST = [rid for rid in CATALOG if KIND_OF[rid] not in ("gadfn", "E", "S", "cols")]
SLOW = [rid for rid in CATALOG if rid not in FAST]


@pytest.mark.parametrize("rid", FAST)
@pytest.mark.parametrize("policy", ["least", "alt"])
def test_soundness(rid, policy):
    for label, inst in instances_for(rid).items():
        _, ok = verify_instance(CATALOG[rid], inst, policy)
        assert ok, (rid, label, policy)


@pytest.mark.slow
@pytest.mark.parametrize("rid", SLOW)
def test_soundness_slow(rid):
    for policy in ("least", "alt"):
        for label, inst in instances_for(rid).items():
            assert verify_instance(CATALOG[rid], inst, policy)[1], (rid, label, policy)


@pytest.mark.parametrize("rid", [r for r in CATALOG if CATALOG[r].target in (Tag.CN, Tag.BOUND)])
def test_two_oracle_answers_both_work(rid):
    r = CATALOG[rid]
    distinct = False
    for inst in instances_for(rid).values():
        h = r.H(inst.input)
        t = r.transfer(inst.input, inst.truth)
        a = oracle(r.target, "least").answer(h, t)(0)
        b = oracle(r.target, "alt").answer(h, t)(0)
        distinct |= a != b
    assert distinct


@pytest.mark.parametrize("kind,tag", [("cn", Tag.CN), ("min", Tag.MIN), ("fin", Tag.COUNT)])
def test_fuel_approximants_stabilise(kind, tag):
    for label, inst in instances()[kind].items():
        exact = oracle(tag).answer(inst.input, inst.truth)(0)
        answers = [oracle(tag, fuel=F).answer(inst.input, None)(0) for F in range(40)]
        settle = max(i for i, a in enumerate(answers) if a != exact) + 1 if exact in answers and answers[0] != exact else 0
        assert answers[-1] == exact, label
        assert all(a == exact for a in answers[settle:]), label


def test_lim_fuel_is_precision_indexed():
    from wlab.names import RationalComplex, index_of, interleave
    from fractions import Fraction

    # the sequence 1 - 2^-k, each term named exactly
    seq = interleave(lambda k: from_values([], index_of(RationalComplex(1 - Fraction(1, 1 << k)))))
    for F in (4, 10, 20):
        from wlab.spaces import point_of
        assert abs(point_of(oracle(Tag.LIM, fuel=F).answer(seq, None), 0).re - 1) <= Fraction(1, 1 << F)


# --------------------------------------------------------------------------
# verifiers reject wrong answers

def test_verifiers_reject():
    assert not problem(Tag.CN).verify(from_values([4]), Complement(frozenset({2, 5})))
    assert not problem(Tag.MAX).verify(from_values([3]), Stream((0, 8), 0))
    assert not problem(Tag.BOUND).verify(from_values([6]), Stream((0, 8), 0))
    assert problem(Tag.BOUND).verify(from_values([9]), Stream((0, 8), 0))
    assert not problem(Tag.COUNT).verify(from_values([1]), Stream((0, 8, 1), 0))
    assert not problem(Tag.MIN).verify(from_values([0]), Stream((5, 3), 3))
    assert not problem(Tag.LPO).verify(from_values([1]), Stream((0, 1), 0))


def test_wrong_oracle_breaks_verification():
    r = get("count_le_cn")
    inst = instance("count_le_cn", "supp257")
    liar = oracle(Tag.CN)
    liar.exact = lambda q, t, pol: from_values([0], 0)
    assert not run_verified(r, liar, inst, problem(Tag.COUNT))[1]


# --------------------------------------------------------------------------
# properties over random instances

finite_sets = st.frozensets(st.integers(0, 12), max_size=5)


@settings(max_examples=25)
@given(finite_sets)
def test_count_via_cn_is_cardinality(S):
    inst = support_instance(S)
    out, ok = verify_instance(get("count_le_cn"), inst)
    assert ok and out(0) == len(S)


@settings(max_examples=25)
@given(st.frozensets(st.integers(0, 12), min_size=1, max_size=4), st.sampled_from(["cn_le_max", "cn_le_bound",
                                                                                   "cn_le_count"]))
def test_closed_choice_reductions_land_in_the_set(S, rid):
    inst = complement_instance(S)
    for pol in ("least", "alt"):
        out, ok = verify_instance(get(rid), inst, pol)
        assert ok and out(0) in S


@settings(max_examples=25)
@given(st.lists(st.integers(0, 9), max_size=8), st.integers(0, 9))
def test_min_via_deg(head, tail):
    inst = stream_instance(head, tail)
    out, ok = verify_instance(get("min_le_deg"), inst)
    assert ok and out(0) == min(head + [tail])


def test_least_unexcluded():
    p = from_values([1, 3, 2, 0, 5])
    assert [least_unexcluded(p, n) for n in range(5)] == [1, 1, 3, 3, 3]


def test_manifest():
    rows = json.loads(manifest_json())
    ids = {row["id"] for row in rows}
    assert set(CATALOG) <= ids and set(EQUIVALENCES) <= ids
    for row in rows:
        assert {"id", "source", "target", "anchor", "instances"} <= set(row)
        assert row["anchor"].strip()


def test_instance_lookup_errors():
    with pytest.raises(KeyError):
        instance("count_le_cn", "nope")
    with pytest.raises(KeyError):
        get("nope")
    assert isinstance(instance("cn_le_max", "least4"), OracleInstance)
