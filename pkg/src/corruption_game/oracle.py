"""Exact critical numbers at desk scale.

Identification of ``g`` truthful nodes is impossible exactly when some
report matrix admits a family of consistent bad sets whose union leaves
fewer than ``g`` nodes uncovered.  Two bad sets fit one report matrix iff
every auditor outside both of them sees the same thing under either
hypothesis, i.e. every auditor of their symmetric difference lies in their
union.  Pairwise agreement is enough, so the search below looks for a
pairwise-compatible family of sets of size <= b and increases b until one
exists.  Every family found is replayed through the exhaustive checker in
:mod:`corruption_game.scenario`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _bits
from .exceptions import CapacityError, UsageError
from .scenario import ReportMatrix, impossible_to_find

DEFAULT_CAP = 10
DEFAULT_DIRECTED_CAP = 8

__all__ = [
    "CompatibleFamily",
    "compatible",
    "reports_from_family",
    "find_family",
    "critical_family",
    "exact_m",
    "exact_m_g",
    "exact_m_directed",
]


@dataclass(frozen=True)
class CompatibleFamily:
    members: tuple
    anchor: int = 0
    budget: int = 0

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(frozenset(int(x) for x in m) for m in self.members))
        if not self.members:
            raise UsageError("a family needs at least one member")
        if not 0 <= self.anchor < len(self.members):
            raise UsageError("anchor index out of range")
        if any(len(m) > self.budget for m in self.members):
            raise UsageError("family member exceeds the budget")

    @property
    def union(self) -> frozenset:
        return frozenset().union(*self.members)


def compatible(graph, a, b) -> bool:
    """Can bad sets ``a`` and ``b`` both be consistent with one report matrix?"""
    a, b = frozenset(a), frozenset(b)
    both = a | b
    for v in a ^ b:
        if not graph.predecessors(v) <= both:
            return False
    return True


def reports_from_family(graph, fam: CompatibleFamily) -> ReportMatrix:
    """Report matrix under which every member of ``fam`` is consistent.

    Each auditor reports as if some member not containing it were the truth
    (the anchor first); auditors inside every member report all Bad.
    """
    order = [fam.members[fam.anchor]] + [m for i, m in enumerate(fam.members) if i != fam.anchor]
    for x, y in combinations(order, 2):
        if not compatible(graph, x, y):
            raise UsageError("family members are not pairwise compatible")
    src, dst = graph.audit_pairs()
    says_bad = np.ones(len(src), dtype=bool)
    view = {}
    for u in range(graph.n):
        for mem in order:
            if u not in mem:
                view[u] = mem
                break
    for i, (u, v) in enumerate(zip(src.tolist(), dst.tolist())):
        mem = view.get(u)
        if mem is not None:
            says_bad[i] = v in mem
    return ReportMatrix(graph, says_bad)


def _search(n: int, nodes_mask: int, aud: list[int], budget: int, target: int):
    """Find a compatible family of masks (size <= budget) covering >= target nodes."""
    table = _bits.union_table(aud) if n <= 16 else None

    def auditors(d: int) -> int:
        if table is not None:
            return table[d]
        out = 0
        for v in _bits.members(d):
            out |= aud[v]
        return out

    nodes = list(_bits.members(nodes_mask))
    cands = []
    for size in range(min(budget, len(nodes)), 0, -1):
        for combo in combinations(nodes, size):
            cands.append(_bits.to_mask(combo))

    def fits(c: int, d: int) -> bool:
        return auditors(c ^ d) & ~(c | d) == 0

    def rec(family: list[int], covered: int, excluded: int, pool: list[int]):
        if covered.bit_count() >= target:
            return family
        reach = covered
        for c in pool:
            reach |= c
        if reach.bit_count() < target:
            return None
        best_v, best_opts = -1, None
        for v in _bits.members(nodes_mask & ~covered & ~excluded):
            opts = [c for c in pool if c >> v & 1]
            if best_opts is None or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
                if not opts:
                    break
        for c in best_opts:
            grown = covered | c
            nxt = [d for d in pool if d & ~grown and fits(c, d)]
            found = rec(family + [c], grown, excluded, nxt)
            if found is not None:
                return found
        # leave best_v uncovered for good
        if (nodes_mask & ~excluded).bit_count() - 1 >= target:
            bit = 1 << best_v
            return rec(family, covered, excluded | bit, [c for c in pool if not c & bit])
        return None

    return rec([], 0, 0, cands)


def _check_cap(graph, cap: int):
    if graph.n > cap:
        raise CapacityError(f"exact oracle capped at n <= {cap} (got {graph.n})")


def find_family(graph, budget: int, g: int = 1, cap: int | None = None) -> CompatibleFamily | None:
    """A compatible family witnessing that ``budget`` hides all but < g nodes."""
    cap = (DEFAULT_DIRECTED_CAP if graph.directed else DEFAULT_CAP) if cap is None else cap
    _check_cap(graph, cap)
    count = graph.number_of_nodes()
    if not 1 <= g <= max(count, 1):
        raise UsageError("need 1 <= g <= number of nodes")
    aud = _bits.in_masks(graph)
    nodes_mask = _bits.to_mask(graph.nodes)
    found = _search(graph.n, nodes_mask, aud, budget, count - g + 1)
    if found is None:
        return None
    return CompatibleFamily(tuple(_bits.to_set(c) for c in found), 0, budget)


def critical_family(graph, g: int = 1, cap: int | None = None) -> CompatibleFamily:
    """Witness family at the critical budget; validated by the exhaustive checker."""
    count = graph.number_of_nodes()
    for b in range(1, count + 1):
        fam = find_family(graph, b, g, cap)
        if fam is None:
            continue
        reports = reports_from_family(graph, fam)
        check_cap = max(16, graph.n)
        if not impossible_to_find(graph, reports, b, g, cap=check_cap):
            raise AssertionError(f"family search and checker disagree at budget {b}")
        return fam
    raise AssertionError("no family found even with every node corrupt")


def exact_m(graph, cap: int = DEFAULT_CAP) -> int:
    """Critical number m(G): fewest corrupt nodes that hide every truthful node."""
    return critical_family(graph, 1, cap).budget


def exact_m_g(graph, g: int, cap: int = DEFAULT_CAP) -> int:
    """Fewest corrupt nodes that prevent certifying ``g`` truthful nodes."""
    return critical_family(graph, g, cap).budget


def exact_m_directed(digraph, cap: int = DEFAULT_DIRECTED_CAP) -> int:
    """Directed critical number m(D); audits follow arc direction."""
    if not digraph.directed:
        raise UsageError("exact_m_directed expects a DiGraph")
    return critical_family(digraph, 1, cap).budget
