import math

import pytest
from hypothesis import given, settings

from corruption_game.exceptions import CapacityError, UsageError
from corruption_game.graph import DiGraph, generate
from corruption_game.separators import (
    SeparatorResult,
    approx_min_sum,
    check_separator,
    component_profile,
    exact_g_remainder,
    exact_reach_separator,
    exact_separator,
    heuristic_separator,
    min_sum,
    min_sum_directed,
    min_sum_g,
)

from _brute import (
    atlas,
    brute_min_sum,
    brute_separator_size,
    graph_strategy,
    random_digraphs,
    residual_sizes,
)

SMALL = atlas(6)


def _corpus_20():
    out = []
    for seed in range(6):
        out.append(generate("erdos_renyi", seed=seed, n=16, p=0.25))
        out.append(generate("erdos_renyi", seed=seed, n=20, p=0.15))
        out.append(generate("random_d_regular", seed=seed, n=18, d=3))
    out += [generate("grid", rows=4, cols=5), generate("cycle", n=20), generate("star", n=20)]
    return out


CORPUS_20 = _corpus_20()


def test_star_and_complete_examples():
    star = generate("star", n=5)
    r = exact_separator(star, 1)
    assert r.separator == {0} and r.objective == 2
    k6 = generate("complete", n=6)
    assert len(exact_separator(k6, 3).separator) == 3
    assert exact_separator(k6, 6).separator == frozenset()
    assert min_sum(star).objective == 2 and min_sum(star).k == 1
    assert min_sum(k6).objective == 6
    assert min_sum(generate("complete_bipartite", a=2, b=3)).objective == 3


def test_exact_matches_subset_enumeration():
    for g in SMALL:
        for k in range(1, g.n + 1):
            r = exact_separator(g, k)
            assert check_separator(g, r)
            assert len(r.separator) == brute_separator_size(g, k)


def test_g_remainder_matches_subset_enumeration():
    for g in SMALL:
        for k in range(1, g.n + 1):
            for gg in range(1, min(g.n, 4) + 1):
                r = exact_g_remainder(g, k, gg)
                assert check_separator(g, r)
                assert len(r.separator) == brute_separator_size(g, k, gg)


def test_g_remainder_examples():
    g = generate("path", n=5)
    assert exact_g_remainder(g, 2, 1).separator == exact_separator(g, 2).separator
    assert exact_g_remainder(g, 1, 9).separator == frozenset()
    tri = generate("disjoint_cliques", q=2, size=3)
    bridged = tri.__class__(6, tri.edge_list() + [(2, 3)])
    r = exact_g_remainder(bridged, 3, 4)
    assert len(r.separator) == brute_separator_size(bridged, 3, 4)


def test_separator_sizes_are_monotone():
    for g in SMALL[::5]:
        sizes = [len(exact_separator(g, k).separator) for k in range(1, g.n + 1)]
        assert all(a >= b for a, b in zip(sizes, sizes[1:]))
        assert sizes[-1] == 0
        for k in range(1, g.n + 1):
            row = [len(exact_g_remainder(g, k, gg).separator) for gg in range(1, g.n + 1)]
            assert all(a >= b for a, b in zip(row, row[1:]))


def test_min_sum_matches_enumeration():
    for g in SMALL[::3]:
        r = min_sum(g)
        assert r.objective == brute_min_sum(g)
        assert min_sum_g(g, 2).objective == brute_min_sum(g, 2)


def test_min_sum_ties_prefer_small_k():
    # K_4: every k gives objective 4
    assert min_sum(generate("complete", n=4)).k == 1


def test_reach_separator_examples():
    path = DiGraph(3, [(0, 1), (1, 2)])
    assert exact_reach_separator(path, 1).separator == {1}
    empty = DiGraph(4, [])
    assert exact_reach_separator(empty, 1).separator == frozenset()
    assert min_sum_directed(empty).objective == 1


def test_reach_separator_matches_enumeration():
    for d in random_digraphs(60, (2, 6), (0.1, 0.6), seed=5):
        for k in range(1, d.n + 1):
            r = exact_reach_separator(d, k)
            assert max(residual_sizes(d, r.separator), default=0) <= k
            assert len(r.separator) == brute_separator_size(d, k)


def test_symmetrized_reach_equals_vertex_separator():
    for g in SMALL[::4]:
        d = g.to_directed()
        for k in range(1, g.n + 1):
            assert len(exact_reach_separator(d, k).separator) == len(exact_separator(g, k).separator)


def test_exact_capacity():
    g = generate("path", n=30)
    with pytest.raises(CapacityError):
        exact_separator(g, 3)
    assert exact_separator(g, 3, cap=40).objective == 10
    with pytest.raises(UsageError):
        exact_separator(generate("path", n=3), 0)


def test_heuristic_validity_and_determinism():
    for g in CORPUS_20:
        for k in (1, 2, 3, 5, 8):
            h = heuristic_separator(g, k, seed=7)
            assert check_separator(g, h)
            assert not h.exact
            assert h == heuristic_separator(g, k, seed=7)


def test_heuristic_within_three_times_exact():
    for g in CORPUS_20:
        for k in (1, 2, 3, 5, 8):
            e = exact_separator(g, k)
            h = heuristic_separator(g, k)
            assert len(h.separator) <= 3 * len(e.separator)


def test_heuristic_trivial_cases():
    g = generate("grid", rows=10, cols=10)
    assert heuristic_separator(g, 100).separator == frozenset()
    r = heuristic_separator(g, 10)
    assert max(r.component_profile) <= 10
    k7 = generate("complete", n=7)
    for k in range(1, 8):
        assert len(heuristic_separator(k7, k).separator) >= 7 - k


def test_approx_min_sum_quality():
    for g in CORPUS_20:
        a = approx_min_sum(g)
        assert a.objective == len(a.separator) + a.k
        assert a.k == max(component_profile(g, a.separator), default=0)
        assert a.objective <= math.ceil(math.log2(g.n)) * min_sum(g).objective
    assert approx_min_sum(generate("star", n=30)).objective == 2
    assert approx_min_sum(generate("complete", n=6)).objective == 6


def test_approx_threads_agree():
    g = generate("grid", rows=6, cols=7)
    assert approx_min_sum(g, threads=3) == approx_min_sum(g, threads=1)


@settings(max_examples=60, deadline=None)
@given(graph_strategy(8))
def test_heuristic_never_beats_exact(g):
    for k in (1, 2, 3):
        if k > g.n:
            break
        assert len(heuristic_separator(g, k).separator) >= len(exact_separator(g, k).separator)


def test_check_separator_detects_tampering():
    g = generate("path", n=5)
    r = exact_separator(g, 1)
    fake = SeparatorResult(frozenset(), 1, 1, 1, component_profile(g, ()))
    assert check_separator(g, r) and not check_separator(g, fake)
