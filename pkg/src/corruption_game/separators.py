"""Vertex separators and the min-sum objectives that bracket m(G).

Exact solvers work on integer bitmasks and are capped (``n <= 24`` by
default).  ``exact_separator`` and ``exact_reach_separator`` branch on a
*witness*: ``k + 1`` nodes that keep a violation alive unless one of them
is removed.  Disjoint witnesses give the lower bound used for pruning.
``exact_g_remainder`` branches include/exclude on single vertices.

``heuristic_separator`` is the scalable stand-in for a bicriteria
approximation: it peels oversized components with balanced minimum vertex
cuts computed by max-flow between BFS balls, falling back to greedy
max-degree peeling, and finally drops redundant separator nodes.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components, maximum_flow, shortest_path

from . import _bits
from .exceptions import CapacityError, UsageError
from .graph import component_labels, induced_remove, reach_sizes

DEFAULT_EXACT_CAP = 24

__all__ = [
    "SeparatorResult",
    "component_profile",
    "check_separator",
    "exact_separator",
    "exact_g_remainder",
    "exact_reach_separator",
    "min_sum",
    "min_sum_g",
    "min_sum_directed",
    "heuristic_separator",
    "approx_min_sum",
]


@dataclass(frozen=True)
class SeparatorResult:
    separator: frozenset
    k: int
    g: int
    objective: int
    component_profile: tuple
    exact: bool = True


def component_profile(graph, separator) -> tuple:
    """Residual component sizes (reach indices for digraphs), largest first."""
    h = induced_remove(graph, separator)
    if graph.directed:
        return tuple(sorted(reach_sizes(h).values(), reverse=True))
    k, labels = component_labels(h)
    return tuple(sorted(np.bincount(labels[labels >= 0], minlength=k).tolist(), reverse=True))


def check_separator(graph, result: SeparatorResult) -> bool:
    """Recompute the residual profile and test the (k, g) constraint."""
    prof = component_profile(graph, result.separator)
    if prof != result.component_profile:
        return False
    if result.objective != len(result.separator) + result.k:
        return False
    return sum(s for s in prof if s > result.k) < result.g


def _result(graph, sep, k, g=1, exact=True) -> SeparatorResult:
    sep = frozenset(int(x) for x in sep)
    return SeparatorResult(sep, int(k), int(g), len(sep) + int(k), component_profile(graph, sep), exact)


def _prepare(graph, cap):
    if graph.n > cap:
        raise CapacityError(f"exact separator search capped at n <= {cap} (got {graph.n})")
    return _bits.to_mask(graph.nodes)


def _validate_k(graph, k):
    if not 1 <= k <= max(graph.number_of_nodes(), 1):
        raise UsageError("need 1 <= k <= number of nodes")


# -- exact hitting-set search ----------------------------------------------

def _component_witness(adj, k):
    """Witness finder for plain separators: BFS prefix of an oversized component."""

    def find(alive: int, kept: int):
        best = None
        for comp in _bits.components(adj, alive):
            if comp.bit_count() <= k:
                continue
            start = (comp & kept) or comp
            start = (start & -start).bit_length() - 1
            w = _bits.reverse_bfs(adj, comp, start, k + 1)
            free = [v for v in w if not kept >> v & 1]
            if best is None or len(free) < len(best[1]):
                best = (w, free)
                if len(free) <= 1:
                    break
        return best

    return find


def _reach_witness(pred, k):
    """Witness finder for reachability separators: reverse BFS prefix."""

    def find(alive: int, kept: int):
        best = None
        for v in _bits.members(alive):
            w = _bits.reverse_bfs(pred, alive, v, k + 1)
            if len(w) <= k:
                continue
            free = [x for x in w if not kept >> x & 1]
            if best is None or len(free) < len(best[1]):
                best = (w, free)
                if len(free) <= 1:
                    break
        return best

    return find


def _hitting_search(nodes_mask: int, find, upper: int):
    """Minimum set hitting every witness; ``upper`` is a feasible mask."""
    best = [upper.bit_count(), upper]

    def lower_bound(alive, kept):
        count, rest = 0, alive
        while True:
            w = find(rest, kept)
            if w is None:
                return count
            if not w[1]:
                return 1 << 30
            count += 1
            for v in w[0]:
                rest &= ~(1 << v)

    def rec(removed: int, kept: int):
        alive = nodes_mask & ~removed
        w = find(alive, kept)
        size = removed.bit_count()
        if w is None:
            if size < best[0]:
                best[0], best[1] = size, removed
            return
        if size + max(1, lower_bound(alive, kept)) >= best[0]:
            return
        forced = kept
        for v in w[1]:
            rec(removed | (1 << v), forced)
            forced |= 1 << v

    rec(0, 0)
    return best[1]


def _greedy_peel_mask(adj, nodes_mask, k):
    removed = 0
    while True:
        big = [c for c in _bits.components(adj, nodes_mask & ~removed) if c.bit_count() > k]
        if not big:
            return removed
        comp = max(big, key=lambda c: (c.bit_count(), -c))
        v = max(_bits.members(comp), key=lambda x: ((adj[x] & comp).bit_count(), -x))
        removed |= 1 << v


def exact_separator(graph, k: int, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Minimum node set whose removal leaves components of size <= k."""
    if graph.directed:
        raise UsageError("exact_separator expects an undirected Graph")
    _validate_k(graph, k)
    nodes_mask = _prepare(graph, cap)
    adj = _bits.out_masks(graph)
    upper = _greedy_peel_mask(adj, nodes_mask, k)
    sep = _hitting_search(nodes_mask, _component_witness(adj, k), upper)
    return _result(graph, _bits.to_set(sep), k)


def exact_reach_separator(digraph, k: int, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Minimum node set after whose removal every reachability index is <= k."""
    _validate_k(digraph, k)
    nodes_mask = _prepare(digraph, cap)
    pred = _bits.in_masks(digraph)
    find = _reach_witness(pred, k)
    upper = 0
    while (w := find(nodes_mask & ~upper, 0)) is not None:
        upper |= 1 << w[0][0]
    sep = _hitting_search(nodes_mask, find, upper)
    res = _result(digraph, _bits.to_set(sep), k)
    return res


def exact_g_remainder(graph, k: int, g: int, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Minimum set after whose removal components larger than k hold < g nodes."""
    if graph.directed:
        raise UsageError("exact_g_remainder expects an undirected Graph")
    _validate_k(graph, k)
    if g < 1:
        raise UsageError("need g >= 1")
    nodes_mask = _prepare(graph, cap)
    adj = _bits.out_masks(graph)

    def big_total(mask):
        return sum(c.bit_count() for c in _bits.components(adj, mask) if c.bit_count() > k)

    # keep g-1 nodes at most: always feasible
    upper = 0
    for v in sorted(_bits.members(nodes_mask), reverse=True):
        if big_total(nodes_mask & ~upper) < g:
            break
        upper |= 1 << v
    best = [upper.bit_count(), upper]

    def rec(removed: int, kept: int):
        alive = nodes_mask & ~removed
        comps = [c for c in _bits.components(adj, alive) if c.bit_count() > k]
        size = removed.bit_count()
        if sum(c.bit_count() for c in comps) < g:
            if size < best[0]:
                best[0], best[1] = size, removed
            return
        if size + 1 >= best[0]:
            return
        if big_total(kept) >= g:
            return
        comps.sort(key=lambda c: (-c.bit_count(), c))
        for comp in comps:
            free = comp & ~kept
            if free:
                break
        else:
            return
        v = max(_bits.members(free), key=lambda x: ((adj[x] & alive).bit_count(), -x))
        bit = 1 << v
        rec(removed | bit, kept)
        rec(removed, kept | bit)

    rec(0, 0)
    return _result(graph, _bits.to_set(best[1]), k, g)


def _min_over_k(graph, solve) -> SeparatorResult:
    best = None
    for k in range(1, max(graph.number_of_nodes(), 1) + 1):
        if best is not None and k >= best.objective:
            break
        res = solve(k)
        if best is None or res.objective < best.objective:
            best = res
    return best


def min_sum(graph, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Exact min over k of |S_G(k)| + k (ties to the smaller k)."""
    return _min_over_k(graph, lambda k: exact_separator(graph, k, cap))


def min_sum_g(graph, g: int, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Exact min over k of |S_G(k, g)| + k."""
    return _min_over_k(graph, lambda k: exact_g_remainder(graph, k, g, cap))


def min_sum_directed(digraph, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Exact min over k of |S_D(k)| + k for reachability separators."""
    return _min_over_k(digraph, lambda k: exact_reach_separator(digraph, k, cap))


# -- heuristic --------------------------------------------------------------

def _adjacency(graph) -> csr_matrix:
    e = graph.edges
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    return csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(graph.n, graph.n))


def _split(sub: csr_matrix, keep: np.ndarray) -> list[np.ndarray]:
    """Components of ``sub`` restricted to local indices ``keep``."""
    if keep.size == 0:
        return []
    count, labels = connected_components(sub[keep][:, keep], directed=False)
    order = np.argsort(labels, kind="stable")
    cuts = np.flatnonzero(np.diff(labels[order])) + 1
    return [keep[part] for part in np.split(order, cuts)]


def _local_lists(sub: csr_matrix) -> list[list[int]]:
    return [sub.indices[sub.indptr[i]:sub.indptr[i + 1]].tolist() for i in range(sub.shape[0])]


def _set_pieces(nbrs: list[list[int]], nodes: set[int]) -> list[set[int]]:
    out, rest = [], set(nodes)
    while rest:
        start = rest.pop()
        piece = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in rest:
                    rest.discard(y)
                    piece.add(y)
                    stack.append(y)
        out.append(piece)
    return out


def _after_removal(nbrs, piece: set[int], touched: list[int]) -> list[set[int]]:
    """Split ``piece`` after a node adjacent to ``touched`` was deleted.

    If one search from the first touched node reaches all the others, the
    piece is still connected and the search stops early.
    """
    want = set(touched[1:])
    seen = {touched[0]}
    stack = [touched[0]]
    while stack and want:
        x = stack.pop()
        for y in nbrs[x]:
            if y in piece and y not in seen:
                seen.add(y)
                want.discard(y)
                stack.append(y)
    if not want:
        return [piece]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y in piece and y not in seen:
                seen.add(y)
                stack.append(y)
    return [seen] + _set_pieces(nbrs, piece - seen)


def _peel(sub: csr_matrix, k: int) -> np.ndarray:
    """Greedy: delete a max-degree node of an oversized piece until none remain."""
    nbrs = _local_lists(sub)
    deg = [len(x) for x in nbrs]
    removed = []
    work = [set(range(sub.shape[0]))]
    while work:
        piece = work.pop()
        if len(piece) <= k:
            continue
        v = max(piece, key=lambda x: (deg[x], -x))
        removed.append(v)
        piece.discard(v)
        live = 0
        for y in nbrs[v]:
            if y in piece:
                deg[y] -= 1
                live += 1
        work.extend(_after_removal(nbrs, piece, [y for y in nbrs[v] if y in piece]) if live > 1 else [piece])
    return np.array(sorted(removed), dtype=np.int64)


def _min_vertex_cut(sub: csr_matrix, sources: np.ndarray, sinks: np.ndarray) -> np.ndarray | None:
    """Minimum vertex set separating two disjoint terminal sets.

    Vertex-split max-flow; terminals are uncuttable.  None when a source
    touches a sink directly.
    """
    size = sub.shape[0]
    is_src = np.zeros(size, dtype=bool)
    is_snk = np.zeros(size, dtype=bool)
    is_src[sources] = True
    is_snk[sinks] = True
    coo = sub.tocoo()
    u, v = coo.row, coo.col
    if np.any(is_src[u] & is_snk[v]):
        return None
    inf = size + 1
    s, t = 2 * size, 2 * size + 1
    ids = np.arange(size)
    inner = np.where(is_src | is_snk, inf, 1)
    rows = np.concatenate([2 * ids, 2 * u + 1, np.full(sources.size, s), 2 * sinks + 1])
    cols = np.concatenate([2 * ids + 1, 2 * v, 2 * sources, np.full(sinks.size, t)])
    caps = np.concatenate([inner, np.full(u.size, inf), np.full(sources.size + sinks.size, inf)])
    nn = 2 * size + 2
    cap = csr_matrix((caps.astype(np.int32), (rows, cols)), shape=(nn, nn))
    flow = maximum_flow(cap, s, t).flow
    # flow is skew-symmetric, so this already includes the reverse arcs
    residual = (cap - flow).tocsr()
    residual.data = (residual.data > 0).astype(np.int8)
    residual.eliminate_zeros()
    reached = np.zeros(nn, dtype=bool)
    reached[breadth_first_order(residual, s, directed=True, return_predecessors=False)] = True
    return np.flatnonzero(reached[2 * ids] & ~reached[2 * ids + 1])


def _largest_piece(sub: csr_matrix, cut: np.ndarray) -> int:
    keep = np.setdiff1d(np.arange(sub.shape[0]), cut)
    if keep.size == 0:
        return 0
    _, labels = connected_components(sub[keep][:, keep], directed=False)
    return int(np.bincount(labels).max())


def _best_cut(sub: csr_matrix, rng, effort: int) -> np.ndarray | None:
    size = sub.shape[0]
    best = None
    for trial in range(max(1, effort)):
        start = 0 if trial == 0 else int(rng.integers(size))
        d0 = shortest_path(sub, unweighted=True, indices=start)
        a = int(np.argmax(d0))
        da = shortest_path(sub, unweighted=True, indices=a)
        b = int(np.argmax(da))
        db = shortest_path(sub, unweighted=True, indices=b)
        by_a = np.lexsort((np.arange(size), da))
        by_b = np.lexsort((np.arange(size), db))
        for frac in (0.0, 0.15, 0.3, 0.45):
            take = max(1, int(frac * size))
            src = by_a[:take]
            snk = np.setdiff1d(by_b[:take], src)
            if snk.size == 0:
                continue
            cut = _min_vertex_cut(sub, src, snk)
            if cut is None or cut.size == 0:
                continue
            gain = size - cut.size - _largest_piece(sub, cut)
            if gain <= 0:
                continue
            score = cut.size / gain
            if best is None or score < best[0]:
                best = (score, cut)
    return None if best is None else best[1]


def _piece_exceeds(adj, present, removed: set[int], v: int, k: int) -> bool:
    """Does v's component avoiding ``removed`` have more than k nodes?"""
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in removed and present[y]:
                seen.add(y)
                if len(seen) > k:
                    return True
                stack.append(y)
    return False


def heuristic_separator(graph, k: int, effort: int = 2, seed=0) -> SeparatorResult:
    """Valid k-vertex separator without optimality guarantee.

    Deterministic for a fixed ``seed``; residual components are always <= k.
    """
    if graph.directed:
        raise UsageError("heuristic_separator expects an undirected Graph")
    _validate_k(graph, k)
    rng = np.random.default_rng(seed)
    full = _adjacency(graph)
    sep: set[int] = set()
    work = [p for p in _split(full, np.flatnonzero(graph.present)) if p.size > k]
    while work:
        comp = work.pop()
        sub = full[comp][:, comp]
        chosen = _peel(sub, k)
        if chosen.size > 1 and comp.size > 2 * k:
            cut = _best_cut(sub, rng, effort)
            if cut is not None and cut.size < chosen.size:
                chosen = cut
        sep.update(comp[chosen].tolist())
        rest = np.delete(np.arange(comp.size), chosen)
        work.extend(comp[p] for p in _split(sub, rest) if p.size > k)
    # return separator nodes whose reinsertion keeps every component small
    adj = graph.adjacency_lists()
    present = graph.present
    for v in sorted(sep, reverse=True):
        trial = sep - {v}
        if not _piece_exceeds(adj, present, trial, v, k):
            sep = trial
    return _result(graph, sep, k, exact=False)


def approx_min_sum(graph, effort: int = 2, seed=0, threads: int = 1) -> SeparatorResult:
    """Best |B_k| + (largest residual component) over k in 1, 2, 4, ..., n.

    The returned result's ``k`` is the achieved largest component size.
    """
    if graph.directed:
        raise UsageError("approx_min_sum expects an undirected Graph")
    count = max(graph.number_of_nodes(), 1)
    ks = []
    k = 1
    while k < count:
        ks.append(k)
        k *= 2
    ks.append(count)

    def run(k):
        return heuristic_separator(graph, k, effort, seed=(seed, k) if seed is not None else None)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, ks))
    else:
        results = [run(k) for k in ks]
    best = None
    for res in results:
        achieved = res.component_profile[0] if res.component_profile else 0
        cand = SeparatorResult(res.separator, achieved, 1, len(res.separator) + achieved, res.component_profile, False)
        if best is None or cand.objective < best.objective:
            best = cand
    return best
