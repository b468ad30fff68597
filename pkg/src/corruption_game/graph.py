"""Graphs, traversal, generators and the plain-text graph format.

Nodes are integers ``0 .. n-1``.  A graph may carry a subset of *present*
nodes (after :func:`induced_remove`) so that ids keep their meaning across
subgraphs.  Graphs are immutable; edge arrays are read-only numpy views.

Text format::

    u 3 2        # header: kind (u|d), node count, edge count
    0 1
    1 2
"""
from __future__ import annotations

from collections import deque
from graphlib import TopologicalSorter
from itertools import combinations
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .exceptions import ParseError, UsageError

__all__ = [
    "Graph",
    "DiGraph",
    "neighbors",
    "connected_components",
    "component_labels",
    "reach_set",
    "reach_sizes",
    "induced_remove",
    "generate",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
]


class _BaseGraph:
    directed = False

    def __init__(self, n: int, edges: Iterable = (), nodes: Iterable[int] | None = None):
        n = int(n)
        if n < 0:
            raise UsageError("node count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise UsageError(f"edge endpoint out of range [0, {n})")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise UsageError("self-loops are not allowed")
        if not self.directed:
            arr = np.sort(arr, axis=1)
        keys = np.unique(arr[:, 0] * max(n, 1) + arr[:, 1])
        self._keys = keys
        self._n = n
        self._edges = np.column_stack([keys // max(n, 1), keys % max(n, 1)]).astype(np.int64)
        if nodes is None:
            present = np.ones(n, dtype=bool)
        else:
            present = np.zeros(n, dtype=bool)
            idx = np.fromiter(nodes, dtype=np.int64)
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise UsageError("node id out of range")
            present[idx] = True
            if self._edges.size and not present[self._edges].all():
                raise UsageError("edge touches a node that is not present")
        for a in (self._keys, self._edges, present):
            a.flags.writeable = False
        self._present = present
        self._csr = None
        self._pred = None

    # -- basic accessors ---------------------------------------------------
    @property
    def n(self) -> int:
        """Size of the node-id space (present or not)."""
        return self._n

    @property
    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges (arcs), sorted lexicographically."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def present(self) -> np.ndarray:
        return self._present

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self._present).tolist())

    @property
    def is_full(self) -> bool:
        return bool(self._present.all())

    def number_of_nodes(self) -> int:
        return int(self._present.sum())

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self._edges.tolist()]

    def _check_node(self, u: int) -> int:
        u = int(u)
        if not 0 <= u < self._n:
            raise UsageError(f"node {u} out of range [0, {self._n})")
        return u

    def _adjacency(self):
        if self._csr is None:
            src, dst = self.audit_pairs()
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.cumsum(np.bincount(src, minlength=self._n), out=indptr[1:])
            self._csr = (indptr, dst)
        return self._csr

    def neighbors(self, u: int) -> frozenset[int]:
        u = self._check_node(u)
        indptr, idx = self._adjacency()
        return frozenset(idx[indptr[u]:indptr[u + 1]].tolist())

    def adjacency_lists(self) -> list[list[int]]:
        indptr, idx = self._adjacency()
        return [idx[indptr[u]:indptr[u + 1]].tolist() for u in range(self._n)]

    def degree(self) -> np.ndarray:
        indptr, _ = self._adjacency()
        return np.diff(indptr)

    def has_edge(self, u: int, v: int) -> bool:
        return self.pair_index(u, v) is not None

    # -- audit pairs -------------------------------------------------------
    def audit_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Ordered ``(auditor, subject)`` arrays, one entry per audit.

        For undirected graphs entry ``e`` is ``(u_e, v_e)`` and entry
        ``m + e`` is ``(v_e, u_e)``.
        """
        u, v = self._edges[:, 0], self._edges[:, 1]
        if self.directed:
            return u, v
        return np.concatenate([u, v]), np.concatenate([v, u])

    def num_audits(self) -> int:
        return self.m if self.directed else 2 * self.m

    def pair_index(self, u: int, v: int) -> int | None:
        """Index of audit ``u -> v`` in :meth:`audit_pairs`, or None."""
        u, v = int(u), int(v)
        n = max(self._n, 1)
        flip = False
        if not self.directed and u > v:
            u, v, flip = v, u, True
        key = u * n + v
        i = int(np.searchsorted(self._keys, key))
        if i < len(self._keys) and self._keys[i] == key:
            return i + self.m if flip else i
        return None

    # -- dunder ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self._n == other._n
            and np.array_equal(self._keys, other._keys)
            and np.array_equal(self._present, other._present)
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._n, self._keys.tobytes(), self._present.tobytes()))

    def __repr__(self) -> str:
        extra = "" if self.is_full else f", present={self.number_of_nodes()}"
        return f"{type(self).__name__}(n={self._n}, m={self.m}{extra})"


class Graph(_BaseGraph):
    """Simple undirected graph."""

    directed = False

    def to_directed(self) -> "DiGraph":
        """Symmetrized digraph with both arcs for every edge."""
        e = self._edges
        return DiGraph(self._n, np.concatenate([e, e[:, ::-1]]), nodes=None if self.is_full else self.nodes)

    def predecessors(self, v: int) -> frozenset[int]:
        return self.neighbors(v)


class DiGraph(_BaseGraph):
    """Simple directed graph; ``neighbors`` are out-neighbors."""

    directed = True

    def predecessors(self, v: int) -> frozenset[int]:
        v = self._check_node(v)
        if self._pred is None:
            e = self._edges
            order = np.lexsort((e[:, 0], e[:, 1]))
            dst, src = e[order, 1], e[order, 0]
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.cumsum(np.bincount(dst, minlength=self._n), out=indptr[1:])
            self._pred = (indptr, src)
        indptr, idx = self._pred
        return frozenset(idx[indptr[v]:indptr[v + 1]].tolist())

    def to_undirected(self) -> Graph:
        return Graph(self._n, self._edges, nodes=None if self.is_full else self.nodes)


def neighbors(g: _BaseGraph, u: int) -> frozenset[int]:
    return g.neighbors(u)


def component_labels(g: Graph) -> tuple[int, np.ndarray]:
    """Label every node by connected component (absent nodes get -1).

    Labels are ordered by the smallest member of each component.
    """
    return labels_from_edges(g.n, g.edges, g.present)


def labels_from_edges(n: int, edges: np.ndarray, present: np.ndarray) -> tuple[int, np.ndarray]:
    if n == 0 or not present.any():
        return 0, np.full(n, -1, dtype=np.int64)
    mat = csr_matrix((np.ones(len(edges), dtype=np.int8), (edges[:, 0], edges[:, 1])), shape=(n, n))
    _, raw = _cc(mat, directed=False)
    labels = np.full(n, -1, dtype=np.int64)
    raw_present = raw[present]
    # relabel by first (smallest) present member
    _, first = np.unique(raw_present, return_index=True)
    uniq = raw_present[np.sort(first)]
    remap = np.full(raw.max() + 1, -1, dtype=np.int64)
    remap[uniq] = np.arange(len(uniq))
    labels[present] = remap[raw_present]
    return len(uniq), labels


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Connected components of the present nodes, ordered by smallest member."""
    if g.directed:
        raise UsageError("connected_components expects an undirected Graph")
    k, labels = component_labels(g)
    nodes = np.flatnonzero(labels >= 0)
    lab = labels[nodes]
    order = np.argsort(lab, kind="stable")
    splits = np.cumsum(np.bincount(lab, minlength=k))[:-1]
    return [frozenset(part.tolist()) for part in np.split(nodes[order], splits)] if k else []


def reach_set(d: DiGraph, v: int) -> frozenset[int]:
    """Nodes with a directed path to ``v`` (``v`` included)."""
    v = d._check_node(v)
    if not d.present[v]:
        raise UsageError(f"node {v} is not present")
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for p in d.predecessors(x):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return frozenset(seen)


def reach_sizes(d: DiGraph) -> dict[int, int]:
    """Reachability index ``|R(v)|`` of every present node.

    Works on the condensation: each strongly connected component inherits
    the reach bitset of its predecessors.
    """
    n = d.n
    e = d.edges
    present = np.flatnonzero(d.present).tolist()
    if not present:
        return {}
    mat = csr_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    _, comp = _cc(mat, directed=True, connection="strong")
    members: dict[int, int] = {}
    for v in present:
        members[comp[v]] = members.get(comp[v], 0) | (1 << v)
    preds: dict[int, set[int]] = {c: set() for c in members}
    for a, b in e.tolist():
        ca, cb = comp[a], comp[b]
        if ca != cb:
            preds[cb].add(ca)
    reach: dict[int, int] = {}
    for c in TopologicalSorter(preds).static_order():
        bits = members[c]
        for p in preds[c]:
            bits |= reach[p]
        reach[c] = bits
    return {v: reach[comp[v]].bit_count() for v in present}


def induced_remove(g: _BaseGraph, removed: Iterable[int]):
    """Delete ``removed`` and incident edges, keeping original node ids."""
    rem = np.zeros(g.n, dtype=bool)
    idx = np.fromiter((int(x) for x in removed), dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= g.n:
            raise UsageError("removed node out of range")
        rem[idx] = True
    present = g.present & ~rem
    e = g.edges
    keep = ~(rem[e[:, 0]] | rem[e[:, 1]]) if len(e) else np.zeros(0, dtype=bool)
    return type(g)(g.n, e[keep], nodes=np.flatnonzero(present).tolist())


# -- generators -------------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _random_regular(n: int, d: int, rng: np.random.Generator, tries: int = 1000) -> list[tuple[int, int]]:
    # pairing model with incremental rejection of loops/multi-edges
    for _ in range(tries):
        edges: set[tuple[int, int]] = set()
        stubs = list(np.repeat(np.arange(n), d))
        ok = True
        while stubs:
            potential: dict[int, int] = {}
            rng.shuffle(stubs)
            it = iter(stubs)
            for a, b in zip(it, it):
                a, b = int(a), int(b)
                if a > b:
                    a, b = b, a
                if a != b and (a, b) not in edges:
                    edges.add((a, b))
                else:
                    potential[a] = potential.get(a, 0) + 1
                    potential[b] = potential.get(b, 0) + 1
            if not potential:
                break
            # remaining stubs must be able to pair up
            keys = list(potential)
            if not any(
                x != y and (min(x, y), max(x, y)) not in edges
                for x, y in combinations(keys, 2)
            ):
                ok = False
                break
            stubs = [x for x, c in potential.items() for _ in range(c)]
        if ok and len(edges) * 2 == n * d:
            return sorted(edges)
    raise UsageError(f"failed to sample a {d}-regular graph on {n} nodes")


def generate(kind: str, seed=None, **params):
    """Build a named graph family.

    Kinds and parameters: ``star(n)``, ``complete(n)``,
    ``complete_bipartite(a, b)``, ``cycle(n)``, ``path(n)``,
    ``grid(rows, cols)``, ``random_d_regular(n, d)``,
    ``disjoint_cliques(q, size)``, ``circulant(n, offsets)``,
    ``erdos_renyi(n, p)`` or ``erdos_renyi(n, m=...)``,
    ``random_digraph(n, p)``.  Randomized kinds are deterministic in ``seed``.
    """
    try:
        return _GENERATORS[kind](_rng(seed) if kind in _RANDOM else None, **params)
    except KeyError:
        raise UsageError(f"unknown graph kind {kind!r}") from None
    except TypeError as exc:
        raise UsageError(f"bad parameters for {kind}: {exc}") from None


def _positive(**kw):
    for k, v in kw.items():
        if int(v) < 1:
            raise UsageError(f"{k} must be >= 1")


def _star(_, n):
    _positive(n=n)
    return Graph(n, [(0, i) for i in range(1, n)])


def _complete(_, n):
    _positive(n=n)
    return Graph(n, list(combinations(range(n), 2)))


def _complete_bipartite(_, a, b):
    _positive(a=a, b=b)
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _cycle(_, n):
    if n < 3:
        raise UsageError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _path(_, n):
    _positive(n=n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _grid(_, rows, cols):
    _positive(rows=rows, cols=cols)
    e = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                e.append((v, v + 1))
            if r + 1 < rows:
                e.append((v, v + cols))
    return Graph(rows * cols, e)


def _regular(rng, n, d):
    _positive(n=n)
    if d < 0 or d >= n or (n * d) % 2:
        raise UsageError(f"no simple {d}-regular graph on {n} nodes")
    return Graph(n, _random_regular(n, d, rng) if d else [])


def _disjoint_cliques(_, q, size):
    _positive(q=q, size=size)
    e = [(c * size + i, c * size + j) for c in range(q) for i, j in combinations(range(size), 2)]
    return Graph(q * size, e)


def _circulant(_, n, offsets):
    _positive(n=n)
    e = set()
    for off in offsets:
        off = int(off) % n
        if off == 0:
            raise UsageError("circulant offsets must be non-zero mod n")
        for i in range(n):
            a, b = i, (i + off) % n
            e.add((min(a, b), max(a, b)))
    return Graph(n, sorted(e))


def _erdos_renyi(rng, n, p=None, m=None):
    _positive(n=n)
    total = n * (n - 1) // 2
    if m is None:
        if p is None or not 0 <= p <= 1:
            raise UsageError("erdos_renyi needs 0 <= p <= 1 or m")
        m = int(rng.binomial(total, p)) if total else 0
    if not 0 <= m <= total:
        raise UsageError("edge count out of range")
    if total and m > total // 2:
        pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64)
        pick = rng.choice(total, size=m, replace=False)
        return Graph(n, pairs[pick])
    keys = np.zeros(0, dtype=np.int64)
    while len(keys) < m:
        need = m - len(keys)
        a = rng.integers(0, n, size=2 * need + 16)
        b = rng.integers(0, n, size=2 * need + 16)
        ok = a != b
        lo, hi = np.minimum(a[ok], b[ok]), np.maximum(a[ok], b[ok])
        fresh = np.unique(lo * n + hi)
        fresh = fresh[~np.isin(fresh, keys)]
        keys = np.concatenate([keys, rng.permutation(fresh)[:need]])
    return Graph(n, np.column_stack([keys // n, keys % n]))


def _random_digraph(rng, n, p):
    _positive(n=n)
    if not 0 <= p <= 1:
        raise UsageError("random_digraph needs 0 <= p <= 1")
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return DiGraph(n, np.argwhere(mask))


_GENERATORS = {
    "star": _star,
    "complete": _complete,
    "complete_bipartite": _complete_bipartite,
    "cycle": _cycle,
    "path": _path,
    "grid": _grid,
    "random_d_regular": _regular,
    "disjoint_cliques": _disjoint_cliques,
    "circulant": _circulant,
    "erdos_renyi": _erdos_renyi,
    "random_digraph": _random_digraph,
}
_RANDOM = {"random_d_regular", "erdos_renyi", "random_digraph"}


# -- text format ------------------------------------------------------------

def parse_graph(text: str):
    """Parse the ``u|d <n> <m>`` edge-list format."""
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] not in ("u", "d"):
                raise ParseError("expected header 'u|d <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("node and edge counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("counts must be non-negative", lineno)
            header = (parts[0], n, m)
            continue
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < header[1] and 0 <= v < header[1]):
            raise ParseError(f"endpoint out of range [0, {header[1]})", lineno)
        if u == v:
            raise ParseError("self-loop", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("missing header", 1)
    kind, n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    cls = DiGraph if kind == "d" else Graph
    g = cls(n, edges)
    if g.m != m:
        raise ParseError("duplicate edges")
    return g


def serialize_graph(g: _BaseGraph) -> str:
    """Canonical text form (sorted edges).  Absent nodes become isolated."""
    lines = [f"{'d' if g.directed else 'u'} {g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges.tolist()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> _BaseGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: _BaseGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(g))
