"""Reduction gadgets and expansion measurements.

* :func:`sse_auxiliary` turns a d-regular graph (d even) into the bipartite
  vertex-copy / edge-vertex graph used by the hardness reduction.
* :func:`yes_case_attack` realizes the cheap strategy available when the
  source splits into equal parts of small expansion.
* :func:`clique_append` and :func:`np_gadget` build the two padding
  constructions; :func:`center_exchange` is the normalization step used on
  separators of the latter.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .adversary import AttackPlan, Construction, plan_from_family
from .exceptions import UsageError
from .graph import Graph, induced_remove, connected_components

__all__ = [
    "expansion",
    "is_regular",
    "AuxGraph",
    "sse_auxiliary",
    "PartitionCertificate",
    "partition_certificate",
    "yes_case_attack",
    "yes_case_budget",
    "clique_size",
    "clique_append",
    "GadgetInfo",
    "np_gadget",
    "center_exchange",
    "clustered_regular",
]


def is_regular(graph) -> int | None:
    """Common degree, or None when degrees differ."""
    deg = graph.degree()
    nodes = sorted(graph.nodes)
    if not nodes:
        return None
    vals = set(int(deg[v]) for v in nodes)
    return vals.pop() if len(vals) == 1 else None


def expansion(graph, s) -> Fraction:
    """Crossing edges of S divided by d|S|, exactly."""
    if graph.directed:
        raise UsageError("expansion expects an undirected Graph")
    d = is_regular(graph)
    if d is None or d == 0:
        raise UsageError("expansion is defined for d-regular graphs with d >= 1")
    s = frozenset(int(x) for x in s)
    if not s or not s < graph.nodes:
        raise UsageError("need a proper non-empty node subset")
    inside = np.zeros(graph.n, dtype=bool)
    inside[list(s)] = True
    e = graph.edges
    crossing = int(np.count_nonzero(inside[e[:, 0]] != inside[e[:, 1]]))
    return Fraction(crossing, d * len(s))


@dataclass(frozen=True)
class AuxGraph:
    graph: Graph
    source: Graph
    r: int
    # node -> ("copy", v, i) or ("edge", (u, v))
    vertex_side: dict

    def copies(self, v: int) -> list[int]:
        return [v * self.r + i for i in range(self.r)]

    def edge_node(self, index: int) -> int:
        return self.source.n * self.r + index

    @property
    def copy_nodes(self) -> range:
        return range(self.source.n * self.r)

    @property
    def edge_nodes(self) -> range:
        return range(self.source.n * self.r, self.graph.n)


def sse_auxiliary(graph) -> AuxGraph:
    """Bipartite graph of r = d/2 copies per vertex and one node per edge."""
    if graph.directed or not graph.is_full:
        raise UsageError("sse_auxiliary expects a full undirected Graph")
    d = is_regular(graph)
    if d is None or d % 2:
        raise UsageError("source must be d-regular with d even")
    r = d // 2
    n = graph.n
    side = {}
    for v in range(n):
        for i in range(r):
            side[v * r + i] = ("copy", v, i)
    edges = []
    for k, (u, v) in enumerate(graph.edge_list()):
        node = n * r + k
        side[node] = ("edge", (u, v))
        for end in (u, v):
            edges.extend((end * r + i, node) for i in range(r))
    return AuxGraph(Graph(n * r + graph.m, edges), graph, r, side)


@dataclass(frozen=True)
class PartitionCertificate:
    parts: tuple
    expansions: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(int(x) for x in p) for p in self.parts))
        object.__setattr__(self, "expansions", tuple(Fraction(x) for x in self.expansions))
        if len(self.parts) != len(self.expansions):
            raise UsageError("one expansion value per part")
        if len({len(p) for p in self.parts}) > 1:
            raise UsageError("parts must be equal-sized")


def partition_certificate(graph, parts) -> PartitionCertificate:
    """Check that ``parts`` split the graph into equal sets; record their expansion."""
    parts = [frozenset(int(x) for x in p) for p in parts]
    if not parts or any(not p for p in parts):
        raise UsageError("parts must be non-empty")
    seen = set()
    for p in parts:
        if seen & p:
            raise UsageError("parts overlap")
        seen |= p
    if seen != set(graph.nodes):
        raise UsageError("parts do not cover the node set")
    if len(parts) == 1:
        return PartitionCertificate(tuple(parts), (Fraction(0),))
    return PartitionCertificate(tuple(parts), tuple(expansion(graph, p) for p in parts))


def _internal_edges(source, part) -> list[int]:
    return [k for k, (u, v) in enumerate(source.edge_list()) if u in part and v in part]


def yes_case_attack(aux: AuxGraph, parts: PartitionCertificate, part: int | None = None) -> AttackPlan:
    """Corrupt cross edge-nodes, all copies of one part and that part's edge-nodes.

    ``part`` defaults to the part with the most internal edges (ties to the
    lowest index); any smaller choice would leave some alternative part
    explanation over budget.
    """
    src = aux.source
    cert = partition_certificate(src, parts.parts)
    owner = {}
    for i, p in enumerate(cert.parts):
        for v in p:
            owner[v] = i
    edges = src.edge_list()
    cross = frozenset(aux.edge_node(k) for k, (u, v) in enumerate(edges) if owner[u] != owner[v])
    members = []
    for p in cert.parts:
        copies = frozenset(c for v in p for c in aux.copies(v))
        inner = frozenset(aux.edge_node(k) for k in _internal_edges(src, p))
        members.append(cross | copies | inner)
    if part is None:
        part = min(range(len(members)), key=lambda i: (-len(members[i]), i))
    if not 0 <= part < len(members):
        raise UsageError("part index out of range")
    chosen = cert.parts[part]
    copies = frozenset(c for v in chosen for c in aux.copies(v))
    touching = frozenset(aux.edge_node(k) for k, (u, v) in enumerate(edges) if u in chosen or v in chosen)
    plan = plan_from_family(
        aux.graph, members, part, 1, Construction.YES_CASE,
        part=part, cross=cross, copies=copies, touching=touching,
    )
    if plan.budget_used != yes_case_budget(plan):
        raise AssertionError("yes-case accounting identity violated")
    return plan


def yes_case_budget(plan: AttackPlan) -> int:
    """|E*| + |S_1*| + |N(S_1*) \\ E*| from a yes-case plan's bookkeeping."""
    d = plan.details
    return len(d["cross"]) + len(d["copies"]) + len(d["touching"] - d["cross"])


def clique_size(count: int, delta) -> int:
    """h = delta / (1 - delta) * |V|, required to be a positive integer."""
    delta = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    if not Fraction(1, 2) <= delta < 1:
        raise UsageError("need 1/2 <= delta < 1")
    h = delta / (1 - delta) * count
    if h.denominator != 1 or h < 1:
        raise UsageError(f"h = {h} is not a positive integer")
    return int(h)


def clique_append(graph, delta) -> Graph:
    """Disjoint union of ``graph`` and an h-clique labelled after it."""
    if graph.directed:
        raise UsageError("clique_append expects an undirected Graph")
    h = clique_size(graph.number_of_nodes(), delta)
    n = graph.n
    extra = [(n + i, n + j) for i, j in combinations(range(h), 2)]
    return Graph(n + h, graph.edge_list() + extra)


@dataclass(frozen=True)
class GadgetInfo:
    graph: Graph
    base_nodes: int
    block_nodes: tuple
    # center of every appended clique node; centers map to themselves
    center: tuple
    n_param: int
    M: int
    c: int

    def metadata(self) -> dict:
        return {
            "base_nodes": self.base_nodes,
            "blocks": len(self.block_nodes),
            "block_size": self.M,
            "n": self.n_param,
            "cliques_per_vertex": self.c,
            "nodes": self.graph.n,
            "edges": self.graph.m,
        }


def np_gadget(graph, M: int, n: int, c: int = 1) -> GadgetInfo:
    """G plus n^2 disjoint M-cliques, then c (n-1)-cliques hung on every vertex.

    Every node of a hung clique is joined to its center.
    """
    if graph.directed or not graph.is_full:
        raise UsageError("np_gadget expects a full undirected Graph")
    N = graph.n
    if not (n > N and 1 <= M < N and c >= 1):
        raise UsageError("need n > N, 1 <= M < N and c >= 1")
    edges = graph.edge_list()
    total = N
    blocks = []
    for _ in range(n * n):
        block = range(total, total + M)
        edges.extend(combinations(block, 2))
        blocks.append(tuple(block))
        total += M
    core = total
    center = list(range(core))
    for v in range(core):
        for _ in range(c):
            clique = range(total, total + n - 1)
            edges.extend(combinations(clique, 2))
            edges.extend((v, x) for x in clique)
            center.extend([v] * (n - 1))
            total += n - 1
    return GadgetInfo(Graph(total, edges), N, tuple(blocks), tuple(center), n, M, c)


def center_exchange(info: GadgetInfo, separator) -> frozenset:
    """Replace every hung-clique node of ``separator`` by that clique's center."""
    core = info.base_nodes + len(info.block_nodes) * info.M
    out = set()
    for v in separator:
        v = int(v)
        out.add(v if v < core else info.center[v])
    return frozenset(out)


def clustered_regular(q: int, size: int, d: int) -> tuple[Graph, list[frozenset]]:
    """q equal clusters, each a (d-2)-regular circulant, chained into a ring by matchings.

    Returns the d-regular graph and its clusters.  Needs q >= 3, d even and
    d - 2 < size.
    """
    if q < 3 or d < 2 or d % 2 or d - 2 >= size:
        raise UsageError("need q >= 3, even d >= 2 and d - 2 < size")
    edges = []
    parts = []
    for p in range(q):
        base = p * size
        parts.append(frozenset(range(base, base + size)))
        for off in range(1, (d - 2) // 2 + 1):
            edges.extend((base + i, base + (i + off) % size) for i in range(size))
        nxt = ((p + 1) % q) * size
        edges.extend((base + i, nxt + i) for i in range(size))
    g = Graph(q * size, edges)
    if is_regular(g) != d:
        raise UsageError("cluster size too small for the requested degree")
    return g, parts


def component_sizes_after(graph, removed) -> list[int]:
    return sorted((len(c) for c in connected_components(induced_remove(graph, removed))), reverse=True)
