"""Independent brute-force references used by the tests.

Nothing here imports the oracle or separator modules: critical numbers are
computed straight from the definition (every bad set, every assignment of
the bad auditors' claims, every consistent configuration) and separators by
enumerating subsets.
"""
from __future__ import annotations

import itertools

import networkx as nx
import numpy as np

from corruption_game.graph import DiGraph, Graph


def atlas(max_n: int, connected: bool = False, min_n: int = 1) -> list[Graph]:
    out = []
    for a in nx.graph_atlas_g():
        n = a.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        if connected and not nx.is_connected(a):
            continue
        out.append(Graph(n, list(a.edges())))
    return out


def random_digraphs(count: int, n_range, p_range, seed: int) -> list[DiGraph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(rng.uniform(*p_range))
        mask = rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        out.append(DiGraph(n, np.argwhere(mask)))
    return out


def all_digraphs(n: int) -> list[DiGraph]:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return [DiGraph(n, [a for a, keep in zip(arcs, bits) if keep]) for bits in itertools.product((0, 1), repeat=len(arcs))]


def _out_masks(graph) -> list[int]:
    masks = [0] * graph.n
    for u, v in graph.edge_list():
        masks[u] |= 1 << v
        if not graph.directed:
            masks[v] |= 1 << u
    return masks


def _subsets(n: int, max_size: int):
    for size in range(max_size + 1):
        for combo in itertools.combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            yield mask


def _hidden_count(n, out, said, budget) -> int:
    """Number of nodes that are bad in some consistent configuration."""
    covered = 0
    for c in _subsets(n, budget):
        if all(c >> u & 1 or said[u] == out[u] & c for u in range(n)):
            covered |= c
    return bin(covered).count("1")


def claim_assignments(graph, bad: int):
    """Every way the bad auditors can fill in their verdicts (as said-masks)."""
    n = graph.n
    out = _out_masks(graph)
    slots = [(u, v) for u in range(n) if bad >> u & 1 for v in range(n) if out[u] >> v & 1]
    base = [out[u] & bad for u in range(n)]
    for bits in itertools.product((0, 1), repeat=len(slots)):
        said = list(base)
        for u in range(n):
            if bad >> u & 1:
                said[u] = 0
        for (u, v), b in zip(slots, bits):
            if b:
                said[u] |= 1 << v
        yield said


def brute_m(graph, g: int = 1) -> int:
    """Smallest budget at which some bad set and claims leave < g certifiable nodes."""
    n = graph.n
    out = _out_masks(graph)
    for budget in range(0, n + 1):
        for bad in _subsets(n, budget):
            for said in claim_assignments(graph, bad):
                if n - _hidden_count(n, out, said, budget) < g:
                    return budget
    raise AssertionError("unreachable")


def brute_guaranteed(graph, says_bad_masks, budget) -> frozenset:
    n = graph.n
    out = _out_masks(graph)
    covered = 0
    for c in _subsets(n, budget):
        if all(c >> u & 1 or says_bad_masks[u] == out[u] & c for u in range(n)):
            covered |= c
    return frozenset(v for v in range(n) if not covered >> v & 1)


def residual_sizes(graph, removed) -> list[int]:
    """Component sizes (undirected) or reach indices (directed) after removal."""
    keep = [v for v in range(graph.n) if v not in set(removed)]
    if graph.directed:
        d = nx.DiGraph()
        d.add_nodes_from(keep)
        d.add_edges_from((u, v) for u, v in graph.edge_list() if u in d and v in d)
        return [len(nx.ancestors(d, v)) + 1 for v in keep]
    h = nx.Graph()
    h.add_nodes_from(keep)
    h.add_edges_from((u, v) for u, v in graph.edge_list() if u in h and v in h)
    return [len(c) for c in nx.connected_components(h)]


def brute_separator_size(graph, k: int, g: int = 1) -> int:
    for size in range(graph.n + 1):
        for s in itertools.combinations(range(graph.n), size):
            sizes = residual_sizes(graph, s)
            if graph.directed:
                if max(sizes, default=0) <= k:
                    return size
            elif sum(x for x in sizes if x > k) < g:
                return size
    raise AssertionError("unreachable")


def brute_min_sum(graph, g: int = 1) -> int:
    return min(brute_separator_size(graph, k, g) + k for k in range(1, graph.n + 1))


def graph_strategy(max_n: int = 8, directed: bool = False):
    """Hypothesis strategy for small simple graphs."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        if directed:
            pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        else:
            pairs = list(itertools.combinations(range(n), 2))
        keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        edges = [p for p, k in zip(pairs, keep) if k]
        return (DiGraph if directed else Graph)(n, edges)

    return build()
