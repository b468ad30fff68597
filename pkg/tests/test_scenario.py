import json

import pytest
from hypothesis import given, settings, strategies as st

from corruption_game.exceptions import CapacityError, ParseError, UsageError
from corruption_game.graph import Graph, generate
from corruption_game.scenario import (
    Claim,
    ReportMatrix,
    Scenario,
    Verdict,
    consistent_configurations,
    guaranteed_good,
    impossible_to_find,
    is_consistent,
    read_scenario,
    scenario_from_dict,
    scenario_to_dict,
    truthful_fill,
    write_scenario,
)

from _brute import brute_guaranteed, graph_strategy


def test_truthful_fill_defaults_bad_claims_to_bad():
    g = generate("path", n=3)
    r = truthful_fill(g, [1])
    assert r.verdict(0, 1) is Verdict.BAD
    assert r.verdict(1, 0) is Verdict.BAD
    assert r.verdict(2, 1) is Verdict.BAD
    r2 = truthful_fill(g, [1], [(1, 0, Verdict.GOOD)])
    assert r2.verdict(1, 0) is Verdict.GOOD
    assert r2.verdict(1, 2) is Verdict.BAD


def test_good_auditors_cannot_lie():
    g = generate("path", n=3)
    with pytest.raises(UsageError):
        truthful_fill(g, [1], [(0, 1, "G")])
    with pytest.raises(UsageError):
        truthful_fill(g, [1], [(1, 1, "G")])


def test_claims_listing_is_sorted():
    g = generate("star", n=3)
    r = truthful_fill(g, [0], {(0, 2): Verdict.GOOD})
    assert r.claims([0]) == [Claim(0, 1, Verdict.BAD), Claim(0, 2, Verdict.GOOD)]


def test_is_consistent_respects_budget():
    g = generate("path", n=3)
    r = truthful_fill(g, [1])
    assert is_consistent(g, r, {1}, 1)
    assert not is_consistent(g, r, {1}, 0)
    assert not is_consistent(g, r, set(), 1)


def test_scenario_invariants():
    g = generate("path", n=4)
    s = Scenario.build(g, [1])
    assert s.budget == 1 and s.true_bad == {1}
    with pytest.raises(UsageError):
        Scenario(g, frozenset({1, 2}), s.reports, 1)
    with pytest.raises(UsageError):
        Scenario(g, frozenset({2}), s.reports, 1)


def test_star_attack_hides_everything():
    g = generate("star", n=5)
    claims = [(0, 1, "G")] + [(0, v, "B") for v in (2, 3, 4)] + [(1, 0, "B")]
    s = Scenario.build(g, [0, 1], claims)
    configs = consistent_configurations(g, s.reports, 2)
    assert set(configs) == {frozenset({0})} | {frozenset({0, v}) for v in range(1, 5)}
    assert guaranteed_good(g, s.reports, 2) == frozenset()
    assert impossible_to_find(g, s.reports, 2)
    # with one corrupt node the center is the only explanation
    assert guaranteed_good(g, s.reports, 1) == {1, 2, 3, 4}


def test_all_good_reports():
    g = generate("cycle", n=5)
    r = truthful_fill(g, [])
    assert guaranteed_good(g, r, 2) == g.nodes


def test_capacity_limit():
    g = generate("path", n=20)
    with pytest.raises(CapacityError):
        guaranteed_good(g, truthful_fill(g, []), 1)


@settings(max_examples=120, deadline=None)
@given(graph_strategy(6), st.data())
def test_guaranteed_good_matches_brute_force(g, data):
    bad = data.draw(st.sets(st.integers(0, g.n - 1), max_size=2))
    src, dst = g.audit_pairs()
    claims = []
    for u, v in zip(src.tolist(), dst.tolist()):
        if u in bad:
            claims.append((u, v, data.draw(st.sampled_from("GB"))))
    r = truthful_fill(g, bad, claims)
    budget = data.draw(st.integers(len(bad), 3))
    assert guaranteed_good(g, r, budget) == brute_guaranteed(g, r.bad_masks(), budget)


def test_scenario_file_roundtrip(tmp_path):
    g = generate("star", n=4)
    s = Scenario.build(g, [0], [(0, 1, "G")], budget=2)
    path = tmp_path / "s.json"
    write_scenario(s, path, note="x")
    back = read_scenario(path)
    assert back.graph == g and back.true_bad == {0} and back.budget == 2
    assert back.reports == s.reports
    assert json.loads(path.read_text())["note"] == "x"


def test_scenario_file_rejects_lying_good_node():
    g = generate("path", n=3)
    data = scenario_to_dict(Scenario.build(g, [1]))
    data["claims"].append([0, 1, "G"])
    with pytest.raises(ParseError):
        scenario_from_dict(data)


def test_scenario_file_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        read_scenario(p)
    with pytest.raises(ParseError):
        scenario_from_dict({"graph": "u 2 1\n0 1\n"})
    with pytest.raises(ParseError):
        scenario_from_dict({"graph": "u 2 1\n0 1\n", "bad": [0, 1], "budget": 1})


def test_report_matrix_shape_check():
    g = Graph(2, [(0, 1)])
    with pytest.raises(UsageError):
        ReportMatrix(g, [True])
