"""Exact weighted hypergraph minimum cut via maximum-adjacency orderings.

One ordering phase greedily grows a prefix: each step selects the
unordered vertex with the largest total weight of hyperedges that connect
it to the prefix, where every hyperedge contributes its weight exactly
once, to all its remaining pins, at the moment it first touches the
prefix.  The weighted degree of the phase's final vertex is the cut that
isolates it, and it is a minimum cut separating the last two vertices, so
contracting those two vertices and repeating over n-1 phases yields the
global minimum.

Integer-weighted instances use a bucket priority queue; anything else
falls back to a lazy binary heap.  Ties are broken toward the smallest
vertex id so runs are reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from ._limits import Deadline, SolveTimeout
from .hgraph import (
    ContractionLog,
    CutResult,
    Hypergraph,
    PROVENANCE_ORDERING,
    Weight,
    compact,
    connected_components,
    contract_set,
)

__all__ = ["MaOrdering", "ma_ordering", "mincut_ordering", "phase_cut_values"]


@dataclass(frozen=True)
class MaOrdering:
    """A maximum-adjacency ordering with the selection key of each vertex."""

    order: tuple
    keys: tuple  # indexed by vertex id; connection weight at selection time


def _ma_order_bucket(h: Hypergraph, start: int) -> tuple:
    n = h.vertex_count
    key = [0] * n
    in_order = bytearray(n)
    touched = bytearray(h.edge_count)
    buckets = {0: list(range(n))}
    for b in buckets.values():
        heapq.heapify(b)
    curmax = 0
    order = []

    def absorb(v: int) -> None:
        in_order[v] = 1
        order.append(v)
        nonlocal curmax
        for eid in h.incident(v):
            if touched[eid]:
                continue
            touched[eid] = 1
            w = h.weight(eid)
            for u in h.pins(eid):
                if not in_order[u]:
                    k = key[u] + w
                    key[u] = k
                    heapq.heappush(buckets.setdefault(k, []), u)
                    if k > curmax:
                        curmax = k

    absorb(start)
    while len(order) < n:
        while True:
            heap = buckets.get(curmax)
            if not heap:
                if heap is not None:
                    del buckets[curmax]
                curmax -= 1
                if curmax < 0:
                    raise AssertionError("ordering queue exhausted early")
                continue
            v = heapq.heappop(heap)
            if in_order[v] or key[v] != curmax:
                continue
            break
        absorb(v)
    return order, key


def _ma_order_heap(h: Hypergraph, start: int) -> tuple:
    n = h.vertex_count
    key = [0.0] * n
    in_order = bytearray(n)
    touched = bytearray(h.edge_count)
    heap = [(-0.0, v) for v in range(n)]
    heapq.heapify(heap)
    order = []

    def absorb(v: int) -> None:
        in_order[v] = 1
        order.append(v)
        for eid in h.incident(v):
            if touched[eid]:
                continue
            touched[eid] = 1
            w = h.weight(eid)
            for u in h.pins(eid):
                if not in_order[u]:
                    key[u] += w
                    heapq.heappush(heap, (-key[u], u))

    absorb(start)
    while len(order) < n:
        while True:
            negk, v = heapq.heappop(heap)
            if in_order[v] or key[v] != -negk:
                continue
            break
        absorb(v)
    return order, key


def _ma_order_raw(h: Hypergraph, start: int) -> tuple:
    if all(isinstance(w, int) for w in h.edge_weights()):
        return _ma_order_bucket(h, start)
    return _ma_order_heap(h, start)


def ma_ordering(h: Hypergraph, start: int = 0) -> MaOrdering:
    """Maximum-adjacency ordering of a connected hypergraph from ``start``."""
    n = h.vertex_count
    if n < 2:
        raise ValueError("ordering needs at least two vertices")
    if start < 0 or start >= n:
        raise ValueError(f"start vertex out of range: {start}")
    if max(connected_components(h)) != 0:
        raise ValueError("hypergraph is disconnected; order each component separately")
    order, key = _ma_order_raw(h, start)
    return MaOrdering(order=tuple(order), keys=tuple(key))


def _run_phases(h: Hypergraph, deadline: Optional[Deadline] = None):
    """All n-1 ordering phases; yields nothing, returns (best, block, cands)."""
    work = compact(h)
    log = ContractionLog(h.vertex_count)
    best: Optional[Weight] = None
    best_block: Optional[tuple] = None
    candidates = []
    while work.vertex_count > 1:
        if deadline is not None and deadline.expired():
            raise SolveTimeout(None)
        order, _ = _ma_order_raw(work, 0)
        t = order[-1]
        s = order[-2]
        cand = work.weighted_degree(t)
        candidates.append(cand)
        if best is None or cand < best:
            best = cand
            best_block = log.members_of_current(t)
        work = contract_set(work, (s, t), log)
    return best, best_block, candidates


def mincut_ordering(h: Hypergraph, deadline: Optional[Deadline] = None) -> CutResult:
    """Exact minimum cut; disconnected inputs yield 0 along a component."""
    n = h.vertex_count
    if n < 2:
        raise ValueError("no cut exists: fewer than two vertices")
    labels = connected_components(h)
    if max(labels) != 0:
        block = frozenset(v for v in range(n) if labels[v] == 0)
        return CutResult(value=0, partition=block, provenance=PROVENANCE_ORDERING)
    best, block, _ = _run_phases(h, deadline)
    return CutResult(
        value=best,
        partition=frozenset(block) if block is not None else None,
        provenance=PROVENANCE_ORDERING,
    )


def phase_cut_values(h: Hypergraph) -> list:
    """The candidate cut recorded by each ordering phase (diagnostic)."""
    if h.vertex_count < 2:
        raise ValueError("no cut exists: fewer than two vertices")
    if max(connected_components(h)) != 0:
        raise ValueError("hypergraph is disconnected")
    _, _, candidates = _run_phases(h)
    return candidates
