"""Extremal example grids, objective search, and the log-scale verdict battery."""

from fractions import Fraction

import pytest

import oracles
from sumprod.arith import mult_dim
from sumprod.exactset import FinSet, simple_closure
from sumprod.extremal import (
    ExampleSpec,
    es_example,
    f_value,
    g_value,
    search_min,
    verify_section3,
)
from sumprod.limits import CapExceeded

F = Fraction


def fs(*values) -> FinSet:
    return FinSet(F(v) for v in values)


# --- the k = J^J grids -----------------------------------------------------------


def test_example_spec():
    spec = ExampleSpec.for_j(3)
    assert spec.j == 3 and spec.k == 27
    assert spec.primes == (2, 3, 5)


def test_es_example_j1():
    assert es_example(1) == fs(1)


def test_es_example_j2():
    a = es_example(2)
    assert a.size == 4
    assert a == fs(1, 2, 3, 6)
    assert mult_dim(a).dimension == 2


def test_es_example_j3():
    a = es_example(3)
    assert a.size == 27
    assert a.min() == 1 and a.max() == 900
    assert mult_dim(a).dimension == 3
    # closure sizes frozen from direct enumeration
    assert simple_closure(a, "sum").size == 2822
    assert simple_closure(a, "product").size == 7570


def test_es_example_rejects_bad_j():
    with pytest.raises(ValueError):
        es_example(0)


# --- objectives -------------------------------------------------------------------


def test_f_value_examples():
    assert f_value(fs(1, 2, 3)) == 7
    assert f_value(fs(2, 4, 8)) == 8
    assert f_value(fs(1)) == 2
    assert f_value(fs(2)) == 1  # 2+2 = 2*2 collapses the union


def test_f_value_matches_oracle():
    for tup in oracles.subsets(range(1, 9), 3):
        a = FinSet(F(v) for v in tup)
        assert f_value(a) == oracles.o_f(tup)


def test_g_value_examples():
    assert g_value(fs(1, 2, 3, 6)) == 13 + 7
    assert g_value(fs(1)) == 3  # {0,1} sums plus {1} products
    assert g_value(fs(1, 2, 3)) == 11


def test_g_value_matches_oracle():
    for tup in oracles.subsets(range(1, 9), 3):
        a = FinSet(F(v) for v in tup)
        assert g_value(a) == oracles.o_g([F(v) for v in tup])


def test_g_value_on_j3_grid_agrees_with_closures():
    a = es_example(3)
    want = simple_closure(a, "sum").size + simple_closure(a, "product").size
    assert g_value(a) == want == 10392


# --- exhaustive search ----------------------------------------------------------------


def test_search_f_3_of_20():
    res = search_min("f", 3, 20)
    assert res.complete
    assert res.minimum == 7
    assert res.certificates == ((1, 2, 3),)
    want_min, want_certs = oracles.o_search(oracles.o_f, 3, 20)
    assert res.minimum == want_min
    assert list(res.certificates) == want_certs


def test_search_g_3_of_20():
    res = search_min("g", 3, 20)
    want_min, want_certs = oracles.o_search(lambda t: oracles.o_g([F(v) for v in t]), 3, 20)
    assert res.minimum == want_min == 11
    assert list(res.certificates) == want_certs
    assert len(res.certificates) == 18


def test_search_singleton_universe():
    res = search_min("f", 1, 5)
    assert res.minimum == 1
    assert res.certificates == ((2,),)


def test_search_thread_counts_agree():
    results = [search_min("f", 3, 12, threads=t) for t in (1, 2, 8)]
    first = results[0]
    for other in results[1:]:
        assert other.minimum == first.minimum
        assert other.certificates == first.certificates
        assert other.nodes == first.nodes
        assert other.complete


def test_search_invalid_arguments():
    with pytest.raises(ValueError):
        search_min("h", 2, 5)
    with pytest.raises(ValueError):
        search_min("f", 0, 5)
    with pytest.raises(ValueError):
        search_min("f", 6, 5)


def test_search_cap_without_budget(monkeypatch):
    monkeypatch.setenv("SUMPROD_BUDGET", "10")
    with pytest.raises(CapExceeded):
        search_min("f", 3, 20)


def test_search_budget_yields_incomplete():
    res = search_min("f", 3, 20, node_budget=50)
    assert not res.complete
    assert res.nodes >= 50
    # partial minimum is an upper bound for the true minimum
    assert res.minimum is None or res.minimum >= 7


def test_search_checkpoint_resume(tmp_path):
    cp = tmp_path / "state.txt"
    partial = search_min("f", 3, 12, node_budget=60, checkpoint_path=str(cp))
    assert not partial.complete
    assert cp.exists()
    resumed = search_min("f", 3, 12, checkpoint_path=str(cp))
    assert resumed.complete
    fresh = search_min("f", 3, 12)
    assert resumed.minimum == fresh.minimum
    assert resumed.certificates == fresh.certificates


def test_search_checkpoint_mismatch_rejected(tmp_path):
    cp = tmp_path / "state.txt"
    search_min("f", 3, 12, node_budget=60, checkpoint_path=str(cp))
    with pytest.raises(ValueError):
        search_min("g", 3, 12, checkpoint_path=str(cp))
    with pytest.raises(ValueError):
        search_min("f", 2, 12, checkpoint_path=str(cp))


def test_search_checkpoint_garbage_rejected(tmp_path):
    cp = tmp_path / "state.txt"
    cp.write_text("not a checkpoint\n")
    with pytest.raises(ValueError):
        search_min("f", 3, 12, checkpoint_path=str(cp))


# --- log-scale identity battery ----------------------------------------------------------


def test_section3_j2_names_and_gate():
    vs = verify_section3(2, F(1, 10))
    names = [v.name for v in vs]
    assert names == [
        "section3.gate",
        "section3.logk_identity",
        "section3.loglogk_identity",
        "section3.loglogk_bound",
        "section3.j_bound",
        "section3.j_squared_bound",
        "section3.max_element_bound",
        "section3.simple_sum_bound",
        "section3.simple_product_bound",
        "section3.growth_bound",
    ]
    by = {v.name: v for v in vs}
    # ln 4 / ln ln 4 is below 10, so the gate fails at J = 2
    assert by["section3.gate"].holds == "false"
    # identities hold regardless of the gate
    assert by["section3.logk_identity"].holds == "true"
    assert by["section3.loglogk_identity"].holds == "true"


def test_section3_j2_gated_checks_report_raw():
    vs = verify_section3(2, F(1, 10))
    by = {v.name: v for v in vs}
    gated = by["section3.j_bound"]
    assert gated.holds == "hypothesis-not-met"
    assert gated.witness["raw"] in ("true", "false", "inconclusive")
    # the raw inequality values for J = 2 were checked by hand:
    # max element 6 exceeds (ln 4)^4 ~ 3.69, everything else clears
    assert by["section3.max_element_bound"].witness["raw"] == "false"
    assert by["section3.loglogk_bound"].witness["raw"] == "true"
    assert by["section3.simple_sum_bound"].witness["raw"] == "true"
    assert by["section3.simple_product_bound"].witness["raw"] == "true"


def test_section3_j3_all_gated_true():
    vs = verify_section3(3, F(1, 10))
    by = {v.name: v for v in vs}
    assert by["section3.gate"].holds == "true"
    for name, v in by.items():
        if name in ("section3.gate", "section3.logk_identity", "section3.loglogk_identity"):
            continue
        assert v.holds == "true", (name, v)
    assert by["section3.growth_bound"].witness["dim"] == 3


def test_section3_rejects_bad_arguments():
    with pytest.raises(ValueError):
        verify_section3(0)
    with pytest.raises(ValueError):
        verify_section3(2, F(0))


def test_section3_j4_exceeds_default_cap():
    with pytest.raises(CapExceeded):
        verify_section3(4)
