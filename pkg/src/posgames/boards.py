"""Board types: hypergraphs, simple graphs, rooted directed multigraphs.

All three types are immutable after construction and serialize to small
explicit-index JSON documents:

    {"type": "hypergraph", "n": int, "edges": [[int, ...], ...], "labels": [...]?}
    {"type": "graph",      "n": int, "edges": [[int, int], ...]}
    {"type": "digraph",    "n": int, "arcs":  [[int, int], ...], "start": int, "end": int?}

Hyperedges are stored as bit masks (see bitset.py), deduplicated and kept in
a canonical order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .bitset import CAPACITY, indices_of, is_subset, iter_bits, mask_from_indices
from .errors import BoardError, DegenerateTransversalError, FormatError, GuardExceeded

TRANSVERSAL_BOARD_LIMIT = 24
SUBSET_COUNT_LIMIT = 10**6
DEFAULT_FAMILY_CAP = 200_000


def _check_board_size(n: int) -> None:
    if n < 0:
        raise BoardError(f"negative element count {n}")
    if n > CAPACITY:
        raise BoardError(f"board size {n} exceeds capacity {CAPACITY}")


@dataclass(frozen=True)
class Hypergraph:
    """A board of n elements with a family of winning sets (bit masks).

    Edges are non-empty subsets of [0, n), deduplicated, sorted by
    (size, mask value) for a canonical representation.
    """

    n: int
    edges: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def edge_indices(self) -> list[list[int]]:
        return [indices_of(e) for e in self.edges]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops or parallel edges.

    `edges` holds (u, v) pairs with u < v; `adjacency` is the per-vertex
    neighbour mask, derived once at construction.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self):
        if not self.adjacency:
            adj = [0] * self.n
            for u, v in self.edges:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            object.__setattr__(self, "adjacency", tuple(adj))

    def closed_neighborhood(self, v: int) -> int:
        return self.adjacency[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()


@dataclass(frozen=True)
class RootedDigraph:
    """Directed multigraph with a distinguished start and optional end vertex."""

    nv: int
    arcs: tuple[tuple[int, int], ...]
    start: int
    end: Optional[int] = None

    @property
    def n_elements(self) -> int:
        """Vertices and arcs together form the playable element universe."""
        return self.nv + len(self.arcs)

    def reachability(self) -> list[int]:
        """Per-vertex mask of vertices reachable by a directed path (reflexive)."""
        succ = [0] * self.nv
        for u, v in self.arcs:
            succ[u] |= 1 << v
        reach = [(1 << v) | succ[v] for v in range(self.nv)]
        changed = True
        while changed:
            changed = False
            for v in range(self.nv):
                acc = reach[v]
                for bit in iter_bits(acc):
                    acc |= reach[bit.bit_length() - 1]
                if acc != reach[v]:
                    reach[v] = acc
                    changed = True
        return reach

    def shortest_path_lengths(self) -> list[list[Optional[int]]]:
        """All-pairs shortest directed path lengths (None when unreachable)."""
        succ: list[set[int]] = [set() for _ in range(self.nv)]
        for u, v in self.arcs:
            succ[u].add(v)
        dist: list[list[Optional[int]]] = []
        for s in range(self.nv):
            d: list[Optional[int]] = [None] * self.nv
            d[s] = 0
            frontier = [s]
            step = 0
            while frontier:
                step += 1
                nxt = []
                for u in frontier:
                    for v in succ[u]:
                        if d[v] is None:
                            d[v] = step
                            nxt.append(v)
                frontier = nxt
            dist.append(d)
        return dist


def _canonical_edges(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=lambda e: (e.bit_count(), e)))


def hypergraph_new(
    n: int,
    edges: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
) -> Hypergraph:
    """Construct a canonical hypergraph from index lists.

    Duplicate edges collapse; empty edges and out-of-range indices are errors.
    """
    _check_board_size(n)
    masks = []
    for edge in edges:
        if len(edge) == 0:
            raise BoardError("empty edge")
        masks.append(mask_from_indices(edge, n))
    lab = None
    if labels is not None:
        if len(labels) != n:
            raise BoardError(f"expected {n} labels, got {len(labels)}")
        lab = tuple(labels)
    return Hypergraph(n, _canonical_edges(masks), lab)


def hypergraph_from_masks(
    n: int, masks: Iterable[int], labels: Optional[Sequence[str]] = None
) -> Hypergraph:
    """Construct from pre-built masks (internal fast path, same invariants)."""
    _check_board_size(n)
    full = (1 << n) - 1
    out = []
    for m in masks:
        if m == 0:
            raise BoardError("empty edge")
        if m & ~full:
            raise BoardError("edge mask exceeds board size")
        out.append(m)
    return Hypergraph(n, _canonical_edges(out), tuple(labels) if labels else None)


def inclusion_minimal(masks: Sequence[int]) -> list[int]:
    """The inclusion-minimal members of a family of masks."""
    ordered = sorted(set(masks), key=lambda e: (e.bit_count(), e))
    kept: list[int] = []
    for m in ordered:
        if not any(is_subset(k, m) for k in kept):
            kept.append(m)
    return kept


def minimalize(h: Hypergraph) -> Hypergraph:
    """Drop every edge that strictly contains another edge."""
    return Hypergraph(h.n, _canonical_edges(inclusion_minimal(h.edges)), h.labels)


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    """Place h2 after h1 on a fresh index range and merge the edge families."""
    n = h1.n + h2.n
    _check_board_size(n)
    shifted = [e << h1.n for e in h2.edges]
    labels = None
    if h1.labels is not None or h2.labels is not None:
        left = h1.labels or tuple(str(i) for i in range(h1.n))
        right = h2.labels or tuple(str(i) for i in range(h2.n))
        labels = left + right
    return Hypergraph(n, _canonical_edges(list(h1.edges) + shifted), labels)


def minimal_transversals(
    n: int, edge_masks: Sequence[int], family_cap: int = DEFAULT_FAMILY_CAP
) -> list[int]:
    """All inclusion-minimal sets meeting every edge (sequential construction).

    Edges are folded in one at a time, smallest first; the running family is
    re-minimalized after each step.  `family_cap` bounds the intermediate
    family size.
    """
    trs: list[int] = [0]
    for e in sorted(set(edge_masks), key=lambda m: (m.bit_count(), m)):
        hit = []
        miss = []
        for t in trs:
            (hit if t & e else miss).append(t)
        extended = hit + [t | bit for t in miss for bit in iter_bits(e)]
        trs = inclusion_minimal(extended)
        if len(trs) > family_cap:
            raise GuardExceeded(
                f"transversal family exceeded cap {family_cap} while processing edges"
            )
    return [t for t in trs if t] if edge_masks else trs


def transversal_hypergraph(h: Hypergraph, family_cap: int = DEFAULT_FAMILY_CAP) -> Hypergraph:
    """Hypergraph of the inclusion-minimal transversals of h's edge family."""
    if h.n > TRANSVERSAL_BOARD_LIMIT:
        raise GuardExceeded(
            f"transversal enumeration limited to {TRANSVERSAL_BOARD_LIMIT} elements, got {h.n}"
        )
    if not h.edges:
        raise DegenerateTransversalError(
            "empty edge family: the empty set is the unique minimal transversal"
        )
    masks = minimal_transversals(h.n, h.edges, family_cap)
    return Hypergraph(h.n, _canonical_edges(masks), h.labels)


def add_all_k_subsets(h: Hypergraph, k: int) -> Hypergraph:
    """Add every k-subset of the board as an edge (deduplicated)."""
    if not 1 <= k <= h.n:
        raise BoardError(f"subset size {k} outside [1, {h.n}]")
    count = comb(h.n, k)
    if count > SUBSET_COUNT_LIMIT:
        raise GuardExceeded(f"C({h.n},{k}) = {count} exceeds subset cap {SUBSET_COUNT_LIMIT}")
    masks = list(h.edges)
    for combo in combinations(range(h.n), k):
        m = 0
        for i in combo:
            m |= 1 << i
        masks.append(m)
    return Hypergraph(h.n, _canonical_edges(masks), h.labels)


def graph_new(n: int, edges: Sequence[Sequence[int]]) -> SimpleGraph:
    """Construct a simple graph, rejecting loops and collapsing parallel edges."""
    _check_board_size(n)
    pairs = set()
    for e in edges:
        if len(e) != 2:
            raise BoardError(f"graph edge must have two endpoints, got {e!r}")
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise BoardError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise BoardError(f"edge ({u},{v}) out of range [0, {n})")
        pairs.add((min(u, v), max(u, v)))
    return SimpleGraph(n, tuple(sorted(pairs)))


def induced_subgraph(g: SimpleGraph, keep: Sequence[int]) -> SimpleGraph:
    """Subgraph on `keep` (order preserved), vertices relabelled 0..len(keep)-1."""
    index = {v: i for i, v in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return SimpleGraph(len(keep), tuple(sorted((min(a, b), max(a, b)) for a, b in edges)))


def digraph_new(
    nv: int,
    arcs: Sequence[Sequence[int]],
    start: int,
    end: Optional[int] = None,
) -> RootedDigraph:
    """Construct a rooted directed multigraph (parallel arcs allowed)."""
    if nv <= 0:
        raise BoardError("digraph needs at least one vertex")
    if nv + len(arcs) > CAPACITY:
        raise BoardError(f"digraph element count {nv + len(arcs)} exceeds capacity {CAPACITY}")
    out = []
    for a in arcs:
        if len(a) != 2:
            raise BoardError(f"arc must have two endpoints, got {a!r}")
        u, v = int(a[0]), int(a[1])
        if not (0 <= u < nv and 0 <= v < nv):
            raise BoardError(f"arc ({u},{v}) out of range [0, {nv})")
        out.append((u, v))
    for name, v in (("start", start), ("end", end)):
        if v is not None and not 0 <= v < nv:
            raise BoardError(f"{name} vertex {v} out of range")
    return RootedDigraph(nv, tuple(out), start, end)


# ---------------------------------------------------------------------------
# JSON serialization


def elementset_to_json(mask: int) -> list[int]:
    return indices_of(mask)


def elementset_from_json(data: Sequence[int], n: int) -> int:
    return mask_from_indices(data, n)


def to_json(obj) -> dict:
    if isinstance(obj, Hypergraph):
        doc = {"type": "hypergraph", "n": obj.n, "edges": obj.edge_indices()}
        if obj.labels is not None:
            doc["labels"] = list(obj.labels)
        return doc
    if isinstance(obj, SimpleGraph):
        return {"type": "graph", "n": obj.n, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, RootedDigraph):
        doc = {
            "type": "digraph",
            "n": obj.nv,
            "arcs": [list(a) for a in obj.arcs],
            "start": obj.start,
        }
        if obj.end is not None:
            doc["end"] = obj.end
        return doc
    raise FormatError(f"cannot serialize {type(obj).__name__}")


def from_json(doc: dict):
    if not isinstance(doc, dict) or "type" not in doc:
        raise FormatError("expected an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "hypergraph":
            return hypergraph_new(doc["n"], doc["edges"], doc.get("labels"))
        if kind == "graph":
            return graph_new(doc["n"], doc["edges"])
        if kind == "digraph":
            return digraph_new(doc["n"], doc["arcs"], doc["start"], doc.get("end"))
    except KeyError as exc:
        raise FormatError(f"missing field {exc} in {kind} document") from exc
    except BoardError as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown document type {kind!r}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj))


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json(doc)
