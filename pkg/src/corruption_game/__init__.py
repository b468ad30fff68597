"""Corruption detection games on auditing networks.

Nodes audit their neighbours; a budget-limited corrupt party controls some
nodes and their reports.  The package provides the central agency's
detectors, the corrupt party's strategies, exact oracles for the critical
budget m(G) at small sizes, the separator problems that bracket it, and the
gadgets used by the hardness reductions.
"""
from .exceptions import CapacityError, ParseError, UsageError
from .graph import (
    DiGraph,
    Graph,
    connected_components,
    generate,
    induced_remove,
    parse_graph,
    reach_set,
    reach_sizes,
    read_graph,
    serialize_graph,
    write_graph,
)
from .scenario import (
    Claim,
    ReportMatrix,
    Scenario,
    Verdict,
    consistent_configurations,
    guaranteed_good,
    impossible_to_find,
    is_consistent,
    read_scenario,
    truthful_fill,
    write_scenario,
)
from .detection import DetectionOutcome, certify, detect_many, detect_one_directed, detect_one_undirected
from .separators import (
    SeparatorResult,
    approx_min_sum,
    exact_g_remainder,
    exact_reach_separator,
    exact_separator,
    heuristic_separator,
    min_sum,
    min_sum_directed,
    min_sum_g,
)
from .oracle import CompatibleFamily, compatible, exact_m, exact_m_directed, exact_m_g, reports_from_family
from .adversary import (
    AttackPlan,
    Construction,
    approx_attack,
    clique_append_attack,
    directed_attack,
    g_remainder_attack,
    separator_attack,
    structural_certificate,
)

__version__ = "0.1.0"
