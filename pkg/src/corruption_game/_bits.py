"""Integer-bitmask helpers for the small-graph exact routines."""
from __future__ import annotations

from typing import Iterable, Iterator


def to_mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << int(v)
    return m


def members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_set(mask: int) -> frozenset[int]:
    return frozenset(members(mask))


def out_masks(g) -> list[int]:
    """Out-neighbour mask per node (neighbours for undirected graphs)."""
    masks = [0] * g.n
    src, dst = g.audit_pairs()
    for u, v in zip(src.tolist(), dst.tolist()):
        masks[u] |= 1 << v
    return masks


def in_masks(g) -> list[int]:
    """Auditor mask per node: who reports on ``v``."""
    masks = [0] * g.n
    src, dst = g.audit_pairs()
    for u, v in zip(src.tolist(), dst.tolist()):
        masks[v] |= 1 << u
    return masks


def union_table(masks: list[int]) -> list[int]:
    """``table[S]`` = OR of ``masks[v]`` over ``v in S`` for every subset S."""
    n = len(masks)
    table = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        table[s] = table[s ^ low] | masks[low.bit_length() - 1]
    return table


def components(adj: list[int], alive: int) -> list[int]:
    """Connected components (as masks) of the subgraph induced by ``alive``."""
    comps = []
    rest = alive
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nb & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def reverse_bfs(pred: list[int], alive: int, v: int, limit: int | None = None) -> list[int]:
    """Nodes reaching ``v`` inside ``alive`` in BFS order (``v`` first).

    Stops once ``limit`` nodes are collected; every prefix of the result
    still reaches ``v`` through nodes of that prefix.
    """
    order = [v]
    seen = 1 << v
    i = 0
    while i < len(order):
        if limit is not None and len(order) >= limit:
            return order[:limit]
        x = order[i]
        i += 1
        for p in members(pred[x] & alive & ~seen):
            seen |= 1 << p
            order.append(p)
    return order if limit is None else order[:limit]
