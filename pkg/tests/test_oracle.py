import math

import pytest

from corruption_game.exceptions import CapacityError, UsageError
from corruption_game.graph import DiGraph, Graph, generate
from corruption_game.oracle import (
    CompatibleFamily,
    compatible,
    critical_family,
    exact_m,
    exact_m_directed,
    exact_m_g,
    find_family,
    reports_from_family,
)
from corruption_game.scenario import guaranteed_good, is_consistent
from corruption_game.separators import min_sum, min_sum_directed, min_sum_g

from _brute import all_digraphs, atlas, brute_m, random_digraphs


def test_compatibility_examples():
    k2 = generate("complete", n=2)
    assert compatible(k2, {0}, {1})
    p3 = generate("path", n=3)
    assert not compatible(p3, {0}, {2})
    assert compatible(p3, {0, 1}, {1, 2})
    assert compatible(p3, {1}, {1})


def test_reports_from_family_examples():
    fam = CompatibleFamily((frozenset(),), 0, 0)
    g = generate("cycle", n=4)
    assert not reports_from_family(g, fam).says_bad.any()
    star = generate("star", n=5)
    fam = CompatibleFamily(tuple(frozenset({0, v}) for v in range(1, 5)), 0, 2)
    r = reports_from_family(star, fam)
    for mem in fam.members:
        assert is_consistent(star, r, mem, 2)
    assert guaranteed_good(star, r, 2) == frozenset()
    k2 = generate("complete", n=2)
    r = reports_from_family(k2, CompatibleFamily((frozenset({0}), frozenset({1})), 0, 1))
    assert is_consistent(k2, r, {0}, 1) and is_consistent(k2, r, {1}, 1)


def test_incompatible_family_rejected():
    p3 = generate("path", n=3)
    with pytest.raises(UsageError):
        reports_from_family(p3, CompatibleFamily((frozenset({0}), frozenset({2})), 0, 1))
    with pytest.raises(UsageError):
        CompatibleFamily((frozenset({0, 1}),), 0, 1)


@pytest.mark.parametrize(
    "kind,params,value",
    [
        ("star", {"n": 5}, 2),
        ("complete", {"n": 2}, 1),
        ("complete", {"n": 4}, 2),
        ("complete", {"n": 6}, 3),
        ("complete_bipartite", {"a": 2, "b": 3}, 3),
        ("complete_bipartite", {"a": 1, "b": 4}, 2),
        ("complete_bipartite", {"a": 2, "b": 2}, 2),
        ("path", {"n": 4}, 2),
        ("cycle", {"n": 6}, 3),
    ],
)
def test_known_values(kind, params, value):
    assert exact_m(generate(kind, **params)) == value


def test_matches_definition_for_all_graphs_up_to_five_nodes():
    for g in atlas(5):
        for gg in range(1, min(g.n, 3) + 1):
            assert exact_m_g(g, gg) == brute_m(g, gg), (g.edge_list(), gg)


def test_matches_definition_on_six_node_samples():
    for seed in range(6):
        g = generate("erdos_renyi", seed=seed, n=6, p=0.5)
        assert exact_m(g) == brute_m(g)


def test_directed_matches_definition():
    for d in all_digraphs(3) + random_digraphs(40, (4, 4), (0.2, 0.7), seed=1):
        assert exact_m_directed(d) == brute_m(d), d.edge_list()


def test_directed_examples():
    assert exact_m_directed(DiGraph(3, [])) == 1
    assert exact_m_directed(DiGraph(3, [(0, 1), (1, 2), (2, 0)])) == 2
    assert exact_m_directed(generate("star", n=5).to_directed()) == 2
    with pytest.raises(UsageError):
        exact_m_directed(generate("star", n=5))


def test_symmetrized_digraph_agrees_with_undirected():
    for g in atlas(5)[::3]:
        assert exact_m_directed(g.to_directed()) == exact_m(g)


def test_majority_bound_and_g_one():
    for g in atlas(7, connected=True)[::7]:
        m = exact_m(g)
        assert m <= math.ceil(g.n / 2)
        assert exact_m_g(g, 1) == m


def test_m_g_is_non_increasing_in_g():
    # a family that hides all but g-1 nodes also hides all but g
    for g in atlas(6)[::2]:
        vals = [exact_m_g(g, gg) for gg in range(1, g.n + 1)]
        assert all(a >= b for a, b in zip(vals, vals[1:])), (g.edge_list(), vals)


def test_claim_four_inequality():
    for g in atlas(6)[::2]:
        m = exact_m(g)
        for gg in range(1, min(g.n, 3) + 1):
            assert m <= exact_m_g(g, gg) + gg - 1


def test_g_remainder_sandwich():
    for g in atlas(6)[::3]:
        for gg in range(1, min(g.n, 3) + 1):
            ms = min_sum_g(g, gg).objective
            m = exact_m_g(g, gg)
            assert ms <= 2 * m and m <= ms


def test_directed_sandwich():
    for d in random_digraphs(80, (2, 6), (0.1, 0.6), seed=9):
        ms = min_sum_directed(d).objective
        m = exact_m_directed(d)
        assert ms <= 2 * m and m <= ms


def test_critical_family_is_realizable():
    for g in atlas(6, connected=True)[::9]:
        fam = critical_family(g)
        r = reports_from_family(g, fam)
        assert guaranteed_good(g, r, fam.budget) == frozenset()
        for mem in fam.members:
            assert is_consistent(g, r, mem, fam.budget)
        assert fam.union == g.nodes
        if fam.budget > 1:
            assert find_family(g, fam.budget - 1) is None


def test_oracle_caps():
    with pytest.raises(CapacityError):
        exact_m(generate("path", n=11))
    with pytest.raises(CapacityError):
        exact_m_directed(DiGraph(9, []))
    p11 = generate("path", n=11)
    ms = min_sum(p11).objective
    assert ms <= 2 * exact_m(p11, cap=11) <= 2 * ms
    with pytest.raises(UsageError):
        exact_m_g(generate("path", n=3), 4)
