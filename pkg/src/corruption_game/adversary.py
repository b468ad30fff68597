"""Corrupt-party strategies that realize the upper bounds on m(G).

Every strategy is a compatible family of bad sets plus a chosen member.  The
corrupt nodes report so that every member stays consistent with the
resulting reports, which leaves all nodes of the family's union suspect.
Separator-based attacks use the separator rule (S nodes call everyone Bad,
other corrupt nodes call exactly S Bad); the rest report as if some other
member were the truth.  ``AttackPlan.certify`` checks
that with the exhaustive checker; ``structural_certificate`` checks it
directly (each member consistent, within budget, union large enough) and
works at any size.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import UsageError
from .graph import connected_components, induced_remove, reach_set, reach_sizes
from .oracle import CompatibleFamily, reports_from_family
from .scenario import Claim, ReportMatrix, Scenario, Verdict, impossible_to_find, is_consistent
from .separators import (
    DEFAULT_EXACT_CAP,
    SeparatorResult,
    approx_min_sum,
    component_profile,
    min_sum,
)

__all__ = [
    "Construction",
    "AttackPlan",
    "plan_from_family",
    "separator_attack",
    "directed_attack",
    "g_remainder_attack",
    "approx_attack",
    "majority_attack",
    "clique_append_attack",
    "structural_certificate",
]


class Construction(enum.Enum):
    SEPARATOR = "SeparatorAttack"
    DIRECTED_SEPARATOR = "DirectedSeparatorAttack"
    G_REMAINDER = "GRemainderAttack"
    APPROX = "ApproxAttack"
    CLIQUE_APPEND = "CliqueAppendAttack"
    YES_CASE = "YesCaseAttack"
    MAJORITY = "MajorityAttack"


@dataclass(frozen=True)
class AttackPlan:
    graph: object
    bad: frozenset
    claims: tuple
    budget_used: int
    target_g: int
    construction: Construction
    degenerate: bool = False
    family: CompatibleFamily | None = field(default=None, compare=False)
    # construction-specific bookkeeping (chosen part, separator size, ...)
    details: dict = field(default_factory=dict, compare=False)

    def reports(self) -> ReportMatrix:
        return self.scenario().reports

    def scenario(self) -> Scenario:
        return Scenario.build(self.graph, self.bad, self.claims, self.budget_used)

    def certify(self, cap: int = 16) -> bool:
        """Exhaustive check: fewer than ``target_g`` nodes are certifiable."""
        s = self.scenario()
        return impossible_to_find(self.graph, s.reports, self.budget_used, self.target_g, cap=cap)


def structural_certificate(plan: AttackPlan) -> bool:
    """Size-independent proof that the plan blocks identification.

    Every family member must fit the budget and be consistent with the
    realized reports, and the members must leave fewer than ``target_g``
    nodes unsuspected.
    """
    fam = plan.family
    if fam is None or len(plan.bad) != plan.budget_used:
        return False
    if plan.bad not in fam.members:
        return False
    reports = plan.reports()
    for mem in fam.members:
        if len(mem) > plan.budget_used:
            return False
        if not is_consistent(plan.graph, reports, mem, plan.budget_used):
            return False
    unsuspected = plan.graph.number_of_nodes() - len(fam.union)
    return unsuspected < plan.target_g


def plan_from_family(graph, members, chosen: int, target_g: int, construction: Construction, **details) -> AttackPlan:
    """Corrupt ``members[chosen]``; its nodes report as if another member were true."""
    members = [frozenset(m) for m in members]
    bad = members[chosen]
    fam = CompatibleFamily(tuple(members), chosen, len(bad))
    reports = reports_from_family(graph, fam)
    claims = tuple(reports.claims(sorted(bad)))
    count = graph.number_of_nodes()
    degenerate = len(bad) >= math.ceil(count / 2)
    return AttackPlan(graph, bad, claims, len(bad), target_g, construction, degenerate, fam, dict(details))


def _require_valid(graph, sep: SeparatorResult, g: int = 1):
    prof = component_profile(graph, sep.separator)
    if sum(s for s in prof if s > sep.k) >= g:
        raise UsageError("separator does not satisfy its size constraint on this graph")


def _pick_largest(groups: list[frozenset]) -> int:
    # largest first; ties go to the group holding the smallest node
    return min(range(len(groups)), key=lambda i: (-len(groups[i]), min(groups[i])))


def separator_attack(graph, sep: SeparatorResult) -> AttackPlan:
    """Corrupt the separator plus one residual component.

    The largest component is taken (ties by smallest id) so that every
    alternative "separator plus component" explanation fits the budget.
    """
    if graph.directed:
        raise UsageError("separator_attack expects an undirected Graph; use directed_attack")
    _require_valid(graph, sep)
    return _component_attack(graph, sep, 1, Construction.SEPARATOR)


def _component_attack(graph, sep, g, construction):
    s = frozenset(sep.separator)
    comps = [frozenset(c) for c in connected_components(induced_remove(graph, s))]
    small = [c for c in comps if len(c) <= sep.k]
    if not small:
        return plan_from_family(graph, [s] if s else [frozenset()], 0, g, construction, separator=s, k=sep.k)
    chosen = _pick_largest(small)
    members = [s | c for c in small]
    plan = plan_from_family(graph, members, chosen, g, construction, separator=s, k=sep.k)
    return _separator_claims(plan, s)


def g_remainder_attack(graph, sep: SeparatorResult, g: int) -> AttackPlan:
    """Corrupt the separator plus the largest component of size <= k.

    Components larger than k stay identifiable but hold fewer than ``g`` nodes.
    """
    if graph.directed:
        raise UsageError("g_remainder_attack expects an undirected Graph")
    if g < 1:
        raise UsageError("need g >= 1")
    _require_valid(graph, sep, g)
    return _component_attack(graph, sep, g, Construction.G_REMAINDER)


def directed_attack(digraph, sep: SeparatorResult) -> AttackPlan:
    """Corrupt the separator plus the reach set of a maximum-reach vertex."""
    if not digraph.directed:
        raise UsageError("directed_attack expects a DiGraph")
    s = frozenset(sep.separator)
    h = induced_remove(digraph, s)
    reach = reach_sizes(h)
    if reach and max(reach.values()) > sep.k:
        raise UsageError("separator leaves a reachability index above k")
    if not reach:
        return plan_from_family(digraph, [s], 0, 1, Construction.DIRECTED_SEPARATOR, separator=s, k=sep.k)
    top = max(reach.values())
    vstar = min(v for v, r in reach.items() if r == top)
    order = [vstar] + [v for v in sorted(reach) if v != vstar]
    members = []
    seen = set()
    for v in order:
        mem = s | reach_set(h, v)
        if mem not in seen:
            seen.add(mem)
            members.append(mem)
    plan = plan_from_family(digraph, members, 0, 1, Construction.DIRECTED_SEPARATOR, separator=s, k=sep.k, vstar=vstar)
    # reach sets are closed under auditors, so the same rule works here
    return _separator_claims(plan, s)


def _separator_claims(plan: AttackPlan, s: frozenset) -> AttackPlan:
    """Separator nodes call everyone Bad; other bad nodes call exactly S Bad.

    Outside S, no node audits into a residual piece it does not belong to,
    so these claims keep every "S plus one piece" member consistent.
    """
    claims = tuple(
        Claim(c.auditor, c.subject, Verdict.BAD if c.auditor in s or c.subject in s else Verdict.GOOD)
        for c in plan.claims
    )
    return replace(plan, claims=claims)


def majority_attack(graph) -> AttackPlan:
    """Corrupt ceil(n/2) nodes; the complement is an equally good explanation."""
    nodes = sorted(graph.nodes)
    half = math.ceil(len(nodes) / 2)
    a, rest = frozenset(nodes[:half]), frozenset(nodes[half:])
    members = [a, rest] if rest else [a]
    return plan_from_family(graph, members, 0, 1, Construction.MAJORITY)


def approx_attack(graph, effort: int = 2, seed=0, threads: int = 1, exact_cap: int = 0) -> AttackPlan:
    """Cheaper of the separator attack on a near-optimal separator and the majority split.

    ``exact_cap`` > 0 switches to the exact min-sum separator for graphs up to
    that size.
    """
    if graph.number_of_nodes() <= exact_cap:
        sep = min_sum(graph, cap=max(exact_cap, DEFAULT_EXACT_CAP))
    else:
        sep = approx_min_sum(graph, effort=effort, seed=seed, threads=threads)
    plan = _component_attack(graph, sep, 1, Construction.APPROX)
    alt = majority_attack(graph)
    if alt.budget_used < plan.budget_used:
        plan = AttackPlan(
            graph, alt.bad, alt.claims, alt.budget_used, 1, Construction.APPROX,
            alt.degenerate, alt.family, {"fallback": "majority"},
        )
    return plan


def clique_append_attack(graph, delta, sep: SeparatorResult | None = None) -> AttackPlan:
    """Attack G inside G plus an h-clique, blocking h + 1 certified nodes."""
    from .reductions import clique_append, clique_size

    h = clique_size(graph.number_of_nodes(), delta)
    big = clique_append(graph, delta)
    if sep is None:
        sep = min_sum(graph)
    _require_valid(graph, sep)
    base = _component_attack(graph, sep, 1, Construction.CLIQUE_APPEND)
    members = list(base.family.members)
    plan = plan_from_family(
        big, members, base.family.anchor, h + 1, Construction.CLIQUE_APPEND,
        h=h, separator=frozenset(sep.separator), k=sep.k,
    )
    return _separator_claims(plan, frozenset(sep.separator))


def claims_by_rule(plan: AttackPlan) -> dict:
    """Claims as a ``{(auditor, subject): verdict}`` map (handy in tests)."""
    return {(c.auditor, c.subject): c.verdict for c in plan.claims}
