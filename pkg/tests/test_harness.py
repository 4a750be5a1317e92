import dataclasses
import itertools

import pytest

from wlab.names import Name
from wlab.weihrauch import CATALOG, check_continuity, check_H, check_K, get, instance, instances_for

CASES = [(rid, label) for rid in CATALOG for label in instances_for(rid)]


@pytest.mark.parametrize("rid,label", CASES)
def test_catalog_reductions_are_continuous(rid, label):
    for rep in check_continuity(CATALOG[rid], instance(rid, label)):
        assert rep.ok, rep.to_json()


def test_reports_carry_query_counts():
    h, k = check_continuity(get("count_le_cn"), instance("count_le_cn", "supp257"))
    assert h.queries["p"] > 0
    assert set(k.queries) == {"p", "q"}
    assert h.to_json()["part"] == "H"


def test_peeking_realizer_fails():
    # H looks through any wrapper at the raw input, so its reads escape the log
    def H(p: Name) -> Name:
        raw = getattr(p, "inner", p)
        return Name(lambda n: raw(n + 5))

    bad = dataclasses.replace(get("cn_le_max"), H=H)
    rep = check_H(bad, instance("cn_le_max", "least4"))
    assert not rep.ok
    assert "unlogged" in rep.detail


def test_stateful_realizer_fails():
    # output depends on how often the realizer has run, not only on the input
    calls = itertools.count()

    def K(p: Name, q: Name) -> Name:
        bump = next(calls)
        return Name(lambda n: q(n) + bump)

    bad = dataclasses.replace(get("cn_le_max"), K=K)
    rep = check_K(bad, instance("cn_le_max", "least4"))
    assert not rep.ok
    assert rep.detail == "replayed outputs differ"
