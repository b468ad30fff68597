"""Reports, consistency of hypotheses with reports, and identifiability.

A :class:`ReportMatrix` holds one Good/Bad verdict per audit pair of a graph
(both directions of every undirected edge, every arc of a digraph).  A
*configuration* is a hypothesized bad set; it is consistent with the reports
when every node outside it reported the truth about its neighbours.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import _bits
from .exceptions import CapacityError, ParseError, UsageError
from .graph import parse_graph, serialize_graph

DEFAULT_CHECK_CAP = 16


class Verdict(enum.Enum):
    GOOD = "G"
    BAD = "B"


class Claim(NamedTuple):
    auditor: int
    subject: int
    verdict: Verdict


class ReportMatrix:
    """Complete set of verdicts, aligned with ``graph.audit_pairs()``."""

    def __init__(self, graph, says_bad):
        arr = np.array(says_bad, dtype=bool).reshape(-1)
        if arr.shape[0] != graph.num_audits():
            raise UsageError("report vector does not match the graph's audit pairs")
        arr.flags.writeable = False
        self.graph = graph
        self.says_bad = arr

    def verdict(self, auditor: int, subject: int) -> Verdict:
        i = self.graph.pair_index(auditor, subject)
        if i is None:
            raise UsageError(f"{subject} is not audited by {auditor}")
        return Verdict.BAD if self.says_bad[i] else Verdict.GOOD

    def claims(self, auditors: Iterable[int] | None = None) -> list[Claim]:
        src, dst = self.graph.audit_pairs()
        sel = np.ones(len(src), dtype=bool)
        if auditors is not None:
            want = np.zeros(self.graph.n, dtype=bool)
            want[list(auditors)] = True
            sel = want[src]
        idx = np.flatnonzero(sel)
        order = idx[np.lexsort((dst[idx], src[idx]))]
        return [
            Claim(int(src[i]), int(dst[i]), Verdict.BAD if self.says_bad[i] else Verdict.GOOD)
            for i in order
        ]

    def bad_masks(self) -> list[int]:
        """Per-auditor bitmask of subjects reported Bad (small graphs)."""
        masks = [0] * self.graph.n
        src, dst = self.graph.audit_pairs()
        for u, v in zip(src[self.says_bad].tolist(), dst[self.says_bad].tolist()):
            masks[u] |= 1 << v
        return masks

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ReportMatrix)
            and self.graph == other.graph
            and np.array_equal(self.says_bad, other.says_bad)
        )

    def __repr__(self) -> str:
        return f"ReportMatrix({self.graph!r}, bad_claims={int(self.says_bad.sum())})"


def _bad_vector(graph, bad: Iterable[int]) -> np.ndarray:
    vec = np.zeros(graph.n, dtype=bool)
    idx = np.fromiter((int(x) for x in bad), dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= graph.n:
            raise UsageError("bad node out of range")
        vec[idx] = True
    return vec


def _claim_items(adversary_claims) -> Iterable[tuple[int, int, Verdict]]:
    if isinstance(adversary_claims, Mapping):
        for (u, v), verdict in adversary_claims.items():
            yield int(u), int(v), Verdict(verdict)
    else:
        for c in adversary_claims:
            u, v, verdict = c
            yield int(u), int(v), Verdict(verdict)


def truthful_fill(graph, bad: Iterable[int], adversary_claims=()) -> ReportMatrix:
    """Complete a report matrix: good auditors tell the truth about ``bad``.

    ``adversary_claims`` (claims or a ``{(u, v): Verdict}`` mapping) fix the
    verdicts of bad auditors; anything they leave unspecified defaults to Bad.
    """
    badv = _bad_vector(graph, bad)
    src, dst = graph.audit_pairs()
    says_bad = np.where(badv[src], True, badv[dst])
    for u, v, verdict in _claim_items(adversary_claims):
        if not badv[u]:
            raise UsageError(f"claim {u}->{v} comes from good auditor {u}")
        i = graph.pair_index(u, v)
        if i is None:
            raise UsageError(f"{v} is not audited by {u}")
        says_bad[i] = verdict is Verdict.BAD
    return ReportMatrix(graph, says_bad)


def is_consistent(graph, reports: ReportMatrix, bad: Iterable[int], budget: int) -> bool:
    """Can ``bad`` be the true corrupt set given the reports and budget?"""
    badv = _bad_vector(graph, bad)
    if int(badv.sum()) > budget:
        return False
    src, dst = graph.audit_pairs()
    honest = ~badv[src]
    return bool(np.array_equal(reports.says_bad[honest], badv[dst][honest]))


@dataclass(frozen=True)
class Scenario:
    """One game instance: graph, true corrupt set, reports, public budget."""

    graph: object
    true_bad: frozenset
    reports: ReportMatrix
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "true_bad", frozenset(int(x) for x in self.true_bad))
        if len(self.true_bad) > self.budget:
            raise UsageError("true bad set exceeds the budget")
        if not is_consistent(self.graph, self.reports, self.true_bad, self.budget):
            raise UsageError("a good auditor's claim contradicts the true bad set")

    @classmethod
    def build(cls, graph, bad, adversary_claims=(), budget: int | None = None) -> "Scenario":
        bad = frozenset(int(x) for x in bad)
        reports = truthful_fill(graph, bad, adversary_claims)
        return cls(graph, bad, reports, len(bad) if budget is None else int(budget))


def _consistent_masks(graph, reports: ReportMatrix, budget: int, cap: int):
    if graph.n > cap:
        raise CapacityError(f"configuration enumeration capped at n <= {cap} (got {graph.n})")
    n = graph.n
    nbr = _bits.out_masks(graph)
    said = reports.bad_masks()
    nodes = sorted(graph.nodes)
    checks = [(1 << u, nbr[u], said[u]) for u in nodes if nbr[u]]
    for size in range(0, min(budget, len(nodes)) + 1):
        for combo in combinations(nodes, size):
            c = 0
            for v in combo:
                c |= 1 << v
            for bit, nb, sb in checks:
                if not c & bit and nb & c != sb:
                    break
            else:
                yield c


def consistent_configurations(graph, reports: ReportMatrix, budget: int, cap: int = DEFAULT_CHECK_CAP):
    """All bad sets of size <= budget consistent with the reports."""
    return [_bits.to_set(c) for c in _consistent_masks(graph, reports, budget, cap)]


def guaranteed_good(graph, reports: ReportMatrix, budget: int, cap: int = DEFAULT_CHECK_CAP) -> frozenset[int]:
    """Nodes that are good in every consistent configuration.

    Exhaustive over all configurations of size <= budget; raises
    :class:`CapacityError` when ``graph.n > cap``.
    """
    covered = 0
    for c in _consistent_masks(graph, reports, budget, cap):
        covered |= c
    return frozenset(v for v in graph.nodes if not covered >> v & 1)


def impossible_to_find(graph, reports: ReportMatrix, budget: int, g: int = 1, cap: int = DEFAULT_CHECK_CAP) -> bool:
    """True iff fewer than ``g`` nodes can be certified good."""
    return len(guaranteed_good(graph, reports, budget, cap)) < g


# -- scenario files ---------------------------------------------------------

def scenario_to_dict(s: Scenario, **extra) -> dict:
    claims = s.reports.claims(sorted(s.true_bad))
    data = {
        "graph": serialize_graph(s.graph),
        "bad": sorted(s.true_bad),
        "claims": [[c.auditor, c.subject, c.verdict.value] for c in claims],
        "budget": s.budget,
    }
    data.update(extra)
    return data


def scenario_from_dict(data: dict) -> Scenario:
    try:
        graph = parse_graph(data["graph"])
        bad = [int(x) for x in data["bad"]]
        budget = int(data["budget"])
        claims = [(int(u), int(v), Verdict(str(x))) for u, v, x in data.get("claims", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed scenario: {exc}") from None
    badset = set(bad)
    adversary = [c for c in claims if c[0] in badset]
    for u, v, verdict in claims:
        if u not in badset:
            truth = Verdict.BAD if v in badset else Verdict.GOOD
            if verdict is not truth:
                raise ParseError(f"good auditor {u} makes a false claim about {v}")
    try:
        return Scenario.build(graph, bad, adversary, budget)
    except UsageError as exc:
        raise ParseError(str(exc)) from None


def write_scenario(s: Scenario, path, **extra) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(s, **extra), fh, indent=1)
        fh.write("\n")


def read_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return scenario_from_dict(data)
