"""The central agency's detectors.

All three share one first step: while some audit on a remaining edge is a
Bad verdict, delete both endpoints.  Every deleted pair contains at least one
corrupt node, so after ``i`` rounds at most ``b - i`` corrupt nodes survive,
and inside the remainder ``H`` mutual Good reports force neighbours to share
a type.  Pair selection is lexicographic by edge unless an ``rng`` is given.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import labels_from_edges, reach_sizes
from .exceptions import UsageError
from .scenario import ReportMatrix

__all__ = [
    "DetectionOutcome",
    "detect_one_undirected",
    "detect_one_directed",
    "detect_many",
    "certify",
]


@dataclass(frozen=True)
class DetectionOutcome:
    declared_good: frozenset
    rounds_removed: int
    removed_pairs: tuple
    certified: bool = False
    # component sizes (undirected) or reach index (directed) backing the claim
    strengths: tuple = ()
    requested: int = 1
    mode: str = "one"
    removed: frozenset = field(default=frozenset())


def _strip_bad_pairs(graph, reports: ReportMatrix, rng=None):
    if reports.graph is not graph and reports.graph != graph:
        raise UsageError("reports belong to a different graph")
    m = graph.m
    bad = reports.says_bad
    offending = bad if graph.directed else (bad[:m] | bad[m:])
    idx = np.flatnonzero(offending)
    if rng is not None:
        idx = rng.permutation(idx)
    alive = graph.present.copy()
    e = graph.edges
    pairs = []
    for u, v in e[idx].tolist():
        if alive[u] and alive[v]:
            alive[u] = alive[v] = False
            pairs.append((u, v))
    return alive, pairs


def _remainder(graph, alive):
    keep = alive[graph.edges[:, 0]] & alive[graph.edges[:, 1]]
    return type(graph)(graph.n, graph.edges[keep], nodes=np.flatnonzero(alive))


def _ranked_components(graph, alive):
    """Components of the remainder as (size, label), largest first."""
    e = graph.edges
    k, labels = labels_from_edges(graph.n, e[alive[e[:, 0]] & alive[e[:, 1]]], alive)
    if k == 0:
        return [], labels
    present = labels >= 0
    sizes = np.bincount(labels[present], minlength=k)
    # labels are numbered by smallest member, so a stable sort keeps id ties
    order = np.argsort(-sizes, kind="stable")
    return [(int(sizes[c]), int(c)) for c in order], labels


def detect_one_undirected(graph, reports: ReportMatrix, budget: int | None = None, rng=None) -> DetectionOutcome:
    """Strip bad-report pairs, then declare the largest remaining component good."""
    alive, pairs = _strip_bad_pairs(graph, reports, rng)
    removed = frozenset(v for p in pairs for v in p)
    ranked, labels = _ranked_components(graph, alive)
    if not ranked:
        declared, strengths = frozenset(), ()
    else:
        size, lab = ranked[0]
        declared = frozenset(np.flatnonzero(labels == lab).tolist())
        strengths = (size,)
    out = DetectionOutcome(declared, len(pairs), tuple(pairs), False, strengths, 1, "one", removed)
    if budget is not None:
        out = _with_cert(out, budget)
    return out


def detect_one_directed(digraph, reports: ReportMatrix, budget: int | None = None, rng=None) -> DetectionOutcome:
    """Strip pairs on Bad arcs, then declare a vertex of maximum reachability."""
    if not digraph.directed:
        raise UsageError("detect_one_directed expects a DiGraph")
    alive, pairs = _strip_bad_pairs(digraph, reports, rng)
    removed = frozenset(v for p in pairs for v in p)
    h = _remainder(digraph, alive)
    reach = reach_sizes(h)
    if not reach:
        declared, strengths = frozenset(), ()
    else:
        best = max(reach.values())
        v = min(x for x, r in reach.items() if r == best)
        declared, strengths = frozenset([v]), (best,)
    out = DetectionOutcome(declared, len(pairs), tuple(pairs), False, strengths, 1, "directed", removed)
    if budget is not None:
        out = _with_cert(out, budget)
    return out


def detect_many(graph, reports: ReportMatrix, g: int, budget: int | None = None, rng=None) -> DetectionOutcome:
    """Declare whole components, largest first, until ``g`` nodes are declared."""
    if not 1 <= g <= max(graph.number_of_nodes(), 1):
        raise UsageError("need 1 <= g <= number of nodes")
    alive, pairs = _strip_bad_pairs(graph, reports, rng)
    removed = frozenset(v for p in pairs for v in p)
    ranked, labels = _ranked_components(graph, alive)
    take, total, sizes = [], 0, []
    for size, lab in ranked:
        if total >= g:
            break
        take.append(lab)
        sizes.append(size)
        total += size
    declared = frozenset(np.flatnonzero(np.isin(labels, take)).tolist()) if take else frozenset()
    out = DetectionOutcome(declared, len(pairs), tuple(pairs), False, tuple(sizes), g, "many", removed)
    if budget is not None:
        out = _with_cert(out, budget)
    return out


def certify(outcome: DetectionOutcome, budget: int) -> bool:
    """Is the declared set provably truthful under a corrupt budget?

    After ``i`` rounds at most ``budget - i`` corrupt nodes remain, and a
    corrupt component (or the reach set of a corrupt vertex) lies entirely
    among them.  Every declared component must therefore exceed that count.
    """
    if not outcome.declared_good or len(outcome.declared_good) < outcome.requested:
        return False
    residual = budget - outcome.rounds_removed
    return min(outcome.strengths) > residual


def _with_cert(out: DetectionOutcome, budget: int) -> DetectionOutcome:
    return DetectionOutcome(
        out.declared_good, out.rounds_removed, out.removed_pairs, certify(out, budget),
        out.strengths, out.requested, out.mode, out.removed,
    )
