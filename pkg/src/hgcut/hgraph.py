"""Hypergraph data model, contraction machinery, and hMetis-style file I/O.

A :class:`Hypergraph` is an immutable-after-build incidence structure over
dense vertex ids ``0..n-1``.  Each hyperedge stores a sorted tuple of
distinct pins plus a nonnegative weight; vertices carry their own weights.
The per-vertex incidence index is derived at construction and kept
consistent with the edge list.

Weights may be ints or floats.  Integer weights are kept exact end to end
(Python ints do not overflow), which is what makes equality checks against
brute-force enumeration meaningful.

Contraction is done by relabelling through a grouping and rebuilding the
structure in one pass: merged vertices sum their weights, pins are
deduplicated per edge, edges that fall below two pins (or have zero weight)
are dropped, and edges with identical pin sets are merged by summing their
weights.  A :class:`ContractionLog` records the merge history so any
bipartition of a reduced hypergraph can be expanded back to the input
vertex set with an identical cut value.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

Weight = Union[int, float]

__all__ = [
    "Weight",
    "Hypergraph",
    "ContractionLog",
    "CutResult",
    "PROVENANCE_TRIVIAL",
    "PROVENANCE_REDUCTION",
    "PROVENANCE_ORDERING",
    "PROVENANCE_BIP",
    "PROVENANCE_ORACLE",
    "compact",
    "contract_set",
    "contract_groups",
    "connected_components",
    "cut_value",
    "storage_nbytes",
    "parse_hmetis",
    "format_hmetis",
    "load_hypergraph",
    "save_hypergraph",
]

PROVENANCE_TRIVIAL = "trivial-degree"
PROVENANCE_REDUCTION = "reduction-terminal"
PROVENANCE_ORDERING = "ordering-solver"
PROVENANCE_BIP = "bip-solver"
PROVENANCE_ORACLE = "oracle"


def _check_weight(w: Weight, what: str) -> Weight:
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise ValueError(f"{what} must be a number, got {w!r}")
    if w != w or w < 0:
        raise ValueError(f"{what} must be nonnegative, got {w!r}")
    return w


class Hypergraph:
    """Immutable incidence structure with vertex and hyperedge weights."""

    __slots__ = ("_n", "_pins", "_weights", "_vweights", "_incidence", "_p", "_wdeg")

    def __init__(
        self,
        vertex_count: int,
        pins_lists: Iterable[Iterable[int]] = (),
        edge_weights: Optional[Sequence[Weight]] = None,
        vertex_weights: Optional[Sequence[Weight]] = None,
        *,
        _normalized: bool = False,
    ) -> None:
        if vertex_count < 0:
            raise ValueError("vertex count must be nonnegative")
        n = int(vertex_count)
        self._n = n

        if _normalized:
            # Trusted internal path: pins already sorted, distinct, in range.
            pins = list(pins_lists)  # type: ignore[arg-type]
            weights = list(edge_weights) if edge_weights is not None else [1] * len(pins)
            vweights = list(vertex_weights) if vertex_weights is not None else [1] * n
        else:
            raw = [list(e) for e in pins_lists]
            if edge_weights is None:
                weights = [1] * len(raw)
            else:
                weights = [_check_weight(w, "hyperedge weight") for w in edge_weights]
                if len(weights) != len(raw):
                    raise ValueError(
                        f"{len(raw)} hyperedges but {len(weights)} edge weights"
                    )
            if vertex_weights is None:
                vweights = [1] * n
            else:
                vweights = [_check_weight(c, "vertex weight") for c in vertex_weights]
                if len(vweights) != n:
                    raise ValueError(
                        f"{n} vertices but {len(vweights)} vertex weights"
                    )
            pins = []
            for e in raw:
                for v in e:
                    if not isinstance(v, int) or isinstance(v, bool):
                        raise ValueError(f"pin ids must be integers, got {v!r}")
                    if v < 0 or v >= n:
                        raise ValueError(f"pin out of range: {v} (vertex count {n})")
                pins.append(tuple(sorted(set(e))))

        self._pins: list = pins
        self._weights: list = weights
        self._vweights: list = vweights
        self._p = sum(len(e) for e in pins)
        incidence: list = [[] for _ in range(n)]
        for eid, e in enumerate(pins):
            for v in e:
                incidence[v].append(eid)
        self._incidence = incidence
        self._wdeg: Optional[list] = None

    # -- basic queries ----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._pins)

    @property
    def pin_count(self) -> int:
        return self._p

    # Short aliases, handy in algorithmic code.
    n = vertex_count
    m = edge_count
    p = pin_count

    def pins(self, eid: int) -> tuple:
        return self._pins[eid]

    def weight(self, eid: int) -> Weight:
        return self._weights[eid]

    def edges(self) -> Iterator[tuple]:
        return zip(self._pins, self._weights)

    def edge_weights(self) -> tuple:
        return tuple(self._weights)

    def vertex_weight(self, v: int) -> Weight:
        return self._vweights[v]

    def vertex_weights(self) -> tuple:
        return tuple(self._vweights)

    def incident(self, v: int) -> Sequence[int]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def weighted_degree(self, v: int) -> Weight:
        return self.weighted_degrees()[v]

    def weighted_degrees(self) -> list:
        if self._wdeg is None:
            wd = [0] * self._n
            for e, w in zip(self._pins, self._weights):
                for v in e:
                    wd[v] += w
            self._wdeg = wd
        return self._wdeg

    def min_weighted_degree(self) -> Weight:
        if self._n == 0:
            raise ValueError("empty hypergraph has no vertex degrees")
        return min(self.weighted_degrees())

    def min_degree(self) -> int:
        if self._n == 0:
            raise ValueError("empty hypergraph has no vertex degrees")
        return min(len(lst) for lst in self._incidence)

    def max_degree(self) -> int:
        if self._n == 0:
            raise ValueError("empty hypergraph has no vertex degrees")
        return max(len(lst) for lst in self._incidence)

    def total_edge_weight(self) -> Weight:
        return sum(self._weights) if self._weights else 0

    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self._weights)

    # -- comparison / repr -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._pins == other._pins
            and self._weights == other._weights
            and self._vweights == other._vweights
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Hypergraph(n={self._n}, m={self.edge_count}, p={self._p})"


def storage_nbytes(h: Hypergraph) -> int:
    """Deterministic size estimate of the incidence structure, in bytes.

    Counts pins twice (edge side and incidence side) at word size plus
    fixed per-edge and per-vertex overhead.  Used for portable peak-memory
    reporting instead of OS-level RSS.
    """
    return 16 * h.pin_count + 64 * h.edge_count + 24 * h.vertex_count + 64


# -- contraction ------------------------------------------------------------


class ContractionLog:
    """Union-find merge history over the *input* vertex ids.

    The log tracks, for every vertex of the current reduced hypergraph,
    which input vertices were merged into it, so cuts found on the reduced
    structure can be expanded back to the input vertex set.
    """

    def __init__(self, vertex_count: int) -> None:
        n = int(vertex_count)
        self.parent = list(range(n))
        self.merge_order: list = []
        self._members = {v: [v] for v in range(n)}
        # current reduced id -> a representative input id of its class
        self._current = list(range(n))

    @property
    def input_vertex_count(self) -> int:
        return len(self.parent)

    @property
    def current_vertex_count(self) -> int:
        return len(self._current)

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if len(self._members[ra]) < len(self._members[rb]):
            ra, rb = rb, ra
        self.merge_order.append((ra, rb))
        self.parent[rb] = ra
        self._members[ra].extend(self._members.pop(rb))
        return ra

    def apply_groups(self, groups: Sequence[Sequence[int]], relabel: Sequence[int], new_count: int) -> None:
        """Record merges of groups of *current* ids and the relabelling map."""
        for g in groups:
            it = iter(g)
            acc = self._current[next(it)]
            for v in it:
                acc = self._union(acc, self._current[v])
        new_current = [0] * new_count
        for old, root in enumerate(self._current):
            new_current[relabel[old]] = root
        self._current = new_current

    def members_of_current(self, current_id: int) -> tuple:
        """Input vertex ids merged into the given current vertex."""
        return tuple(self._members[self.find(self._current[current_id])])

    def expand_block(self, current_ids: Iterable[int]) -> frozenset:
        """Map a block of current vertex ids to the input vertex set."""
        out: list = []
        for c in current_ids:
            out.extend(self._members[self.find(self._current[c])])
        return frozenset(out)

    def root_count(self) -> int:
        return len(self._members)


def contract_groups(
    h: Hypergraph,
    groups: Iterable[Iterable[int]],
    log: Optional[ContractionLog] = None,
) -> Hypergraph:
    """Contract each group of vertices into a single vertex and compact.

    Groups must be pairwise disjoint.  Merged vertices sum their weights;
    the edge list is rebuilt with deduplicated pins, edges below two pins
    or with zero weight are dropped, and parallel edges (identical pin
    sets) are merged by summing weights.
    """
    n = h.vertex_count
    norm = []
    for g in groups:
        gs = sorted(set(g))
        if len(gs) < 2:
            continue
        if gs[0] < 0 or gs[-1] >= n:
            raise ValueError(f"vertex id out of range in contraction group: {gs}")
        norm.append(gs)
    if not norm:
        return h

    rep = list(range(n))
    used = bytearray(n)
    for g in norm:
        r = g[0]
        for v in g:
            if used[v]:
                raise ValueError("contraction groups must be disjoint")
            used[v] = 1
            rep[v] = r

    relabel = [-1] * n
    nxt = 0
    for v in range(n):
        r = rep[v]
        if relabel[r] < 0:
            relabel[r] = nxt
            nxt += 1
        relabel[v] = relabel[r]
    new_n = nxt

    new_c = [0] * new_n
    for v in range(n):
        new_c[relabel[v]] += h.vertex_weight(v)

    merged: dict = {}
    for pins, w in h.edges():
        if w == 0:
            continue
        mapped = {relabel[v] for v in pins}
        if len(mapped) < 2:
            continue
        key = tuple(sorted(mapped))
        if key in merged:
            merged[key] += w
        else:
            merged[key] = w

    if log is not None:
        log.apply_groups(norm, relabel, new_n)

    return Hypergraph(
        new_n,
        list(merged.keys()),
        list(merged.values()),
        new_c,
        _normalized=True,
    )


def contract_set(
    h: Hypergraph,
    vertices: Iterable[int],
    log: Optional[ContractionLog] = None,
) -> Hypergraph:
    """Contract one vertex set; below two distinct vertices this is a no-op."""
    vs = sorted(set(vertices))
    if len(vs) < 2:
        warnings.warn("contract_set called with fewer than two vertices; no-op")
        return h
    return contract_groups(h, [vs], log)


def compact(h: Hypergraph) -> Hypergraph:
    """Drop unusable hyperedges and merge parallel ones.

    Removes edges with fewer than two pins or zero weight and merges edges
    with identical pin sets by summing weights.  The vertex set is
    unchanged.  Returns ``h`` itself when nothing needs to change.
    """
    seen: set = set()
    dirty = False
    for pins, w in h.edges():
        if len(pins) < 2 or w == 0 or pins in seen:
            dirty = True
            break
        seen.add(pins)
    if not dirty:
        return h

    merged: dict = {}
    for pins, w in h.edges():
        if len(pins) < 2 or w == 0:
            continue
        if pins in merged:
            merged[pins] += w
        else:
            merged[pins] = w
    return Hypergraph(
        h.vertex_count,
        list(merged.keys()),
        list(merged.values()),
        list(h.vertex_weights()),
        _normalized=True,
    )


# -- traversal and cut evaluation --------------------------------------------


def connected_components(h: Hypergraph) -> list:
    """Component label per vertex; labels are dense, in discovery order."""
    n = h.vertex_count
    labels = [-1] * n
    edge_seen = bytearray(h.edge_count)
    comp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = comp
        stack = [s]
        while stack:
            v = stack.pop()
            for eid in h.incident(v):
                if edge_seen[eid]:
                    continue
                edge_seen[eid] = 1
                for u in h.pins(eid):
                    if labels[u] < 0:
                        labels[u] = comp
                        stack.append(u)
        comp += 1
    return labels


def cut_value(h: Hypergraph, block: Iterable[int]) -> Weight:
    """Total weight of hyperedges with pins on both sides of the bipartition.

    ``block`` is one side; the other side is its complement.  Both sides
    must be non-empty.
    """
    n = h.vertex_count
    inside = bytearray(n)
    count = 0
    for v in block:
        if v < 0 or v >= n:
            raise ValueError(f"vertex id out of range: {v}")
        if not inside[v]:
            inside[v] = 1
            count += 1
    if count == 0 or count == n:
        raise ValueError("both blocks of a cut must be non-empty")
    total: Weight = 0
    for pins, w in h.edges():
        has_in = has_out = False
        for v in pins:
            if inside[v]:
                has_in = True
                if has_out:
                    break
            else:
                has_out = True
                if has_in:
                    break
        if has_in and has_out:
            total += w
    return total


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    """A cut value with optional certifying bipartition on input vertices."""

    value: Weight
    partition: Optional[frozenset] = None
    provenance: str = PROVENANCE_REDUCTION


# -- hMetis-style file format -------------------------------------------------
#
# Line 1: `m n [fmt]` with fmt in {absent, 1, 10, 11}.  The next m
# non-comment lines hold one hyperedge each: a leading weight iff fmt is
# 1 or 11, then 1-based pin ids.  If fmt is 10 or 11, n further lines hold
# one vertex weight each.  Lines starting with `%` are comments.


def _parse_int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValueError(f"line {lineno}: {what} is not an integer: {tok!r}") from None


def _parse_weight(tok: str, lineno: int) -> Weight:
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        w = float(tok)
    except ValueError:
        raise ValueError(f"line {lineno}: weight is not a number: {tok!r}") from None
    if w != w:
        raise ValueError(f"line {lineno}: weight is not a number: {tok!r}")
    return w


def parse_hmetis(text: str) -> Hypergraph:
    """Parse hMetis-format text into a Hypergraph (pins become 0-based)."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("%"):
            continue
        entries.append((lineno, s.split()))
    if not entries:
        raise ValueError("empty hypergraph file")

    lineno, head = entries[0]
    if len(head) not in (2, 3):
        raise ValueError(f"line {lineno}: header must be 'm n [fmt]'")
    m = _parse_int(head[0], lineno, "hyperedge count")
    n = _parse_int(head[1], lineno, "vertex count")
    if m < 0 or n < 0:
        raise ValueError(f"line {lineno}: counts must be nonnegative")
    fmt = head[2] if len(head) == 3 else "0"
    if fmt not in ("0", "1", "10", "11"):
        raise ValueError(f"line {lineno}: unsupported fmt code {fmt!r}")
    has_ew = fmt in ("1", "11")
    has_vw = fmt in ("10", "11")

    need = 1 + m + (n if has_vw else 0)
    if len(entries) != need:
        raise ValueError(
            f"expected {need} data lines ({m} hyperedges"
            + (f" plus {n} vertex weights" if has_vw else "")
            + f"), found {len(entries)}"
        )

    pins_lists = []
    eweights: list = []
    for lineno, toks in entries[1 : 1 + m]:
        if has_ew:
            if len(toks) < 2:
                raise ValueError(f"line {lineno}: weighted hyperedge needs a weight and pins")
            w = _parse_weight(toks[0], lineno)
            if w < 0:
                raise ValueError(f"line {lineno}: negative hyperedge weight")
            pin_toks = toks[1:]
        else:
            w = 1
            pin_toks = toks
        pins = []
        for t in pin_toks:
            v = _parse_int(t, lineno, "pin id")
            if v < 1 or v > n:
                raise ValueError(f"line {lineno}: pin out of range: {v} (vertex count {n})")
            pins.append(v - 1)
        eweights.append(w)
        pins_lists.append(pins)

    vweights: Optional[list] = None
    if has_vw:
        vweights = []
        for lineno, toks in entries[1 + m :]:
            if len(toks) != 1:
                raise ValueError(f"line {lineno}: vertex weight lines hold one number")
            c = _parse_weight(toks[0], lineno)
            if c < 0:
                raise ValueError(f"line {lineno}: negative vertex weight")
            vweights.append(c)

    return Hypergraph(n, pins_lists, eweights, vweights)


def _fmt_weight(w: Weight) -> str:
    if isinstance(w, float):
        if w.is_integer():
            return str(int(w))
        return repr(w)
    return str(w)


def format_hmetis(h: Hypergraph) -> str:
    """Serialize to canonical hMetis text: sorted pins, minimal fmt code."""
    has_ew = not h.is_unweighted()
    has_vw = any(c != 1 for c in h.vertex_weights())
    if has_ew and has_vw:
        fmt = " 11"
    elif has_ew:
        fmt = " 1"
    elif has_vw:
        fmt = " 10"
    else:
        fmt = ""
    lines = [f"{h.edge_count} {h.vertex_count}{fmt}"]
    for pins, w in h.edges():
        body = " ".join(str(v + 1) for v in pins)
        if has_ew:
            lines.append(f"{_fmt_weight(w)} {body}" if body else _fmt_weight(w))
        else:
            lines.append(body)
    if has_vw:
        lines.extend(_fmt_weight(c) for c in h.vertex_weights())
    return "\n".join(lines) + "\n"


def load_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hmetis(fh.read())


def save_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hmetis(h))
