"""Graph domination: exact numbers, game reductions, residue, closed forms.

Domination games reduce to claiming/offer games on the hypergraph of
inclusion-minimal dominating sets (a contained dominating set always
contains a minimal one that is no larger, so win, round and size values
survive the reduction).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .boards import (
    Hypergraph,
    SimpleGraph,
    hypergraph_from_masks,
    induced_subgraph,
    minimal_transversals,
)
from .engine import Player
from .errors import BoardError, GuardExceeded
from .solver import SolveResult, SolverSettings, game_values, wc_game_values

GAMMA_BOARD_LIMIT = 24


def is_dominating(g: SimpleGraph, dset: int) -> bool:
    """Does every vertex lie in dset or next to it?"""
    if dset & ~((1 << g.n) - 1):
        raise BoardError("dominating-set candidate uses unknown vertices")
    return all(g.closed_neighborhood(v) & dset for v in range(g.n))


def domination_number(g: SimpleGraph) -> int:
    """Smallest dominating set size, by increasing-size subset search."""
    if g.n > GAMMA_BOARD_LIMIT:
        raise GuardExceeded(
            f"exact domination number limited to {GAMMA_BOARD_LIMIT} vertices, got {g.n}"
        )
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if is_dominating(g, mask):
                return k
    raise AssertionError("the full vertex set always dominates")


def minimal_dominating_sets(g: SimpleGraph, family_cap: int = 200_000) -> Hypergraph:
    """Hypergraph of the inclusion-minimal dominating sets.

    Computed as minimal transversals of the closed neighbourhoods, so large
    boards work as long as the family itself stays small.
    """
    hoods = [g.closed_neighborhood(v) for v in range(g.n)]
    masks = minimal_transversals(g.n, hoods, family_cap)
    return hypergraph_from_masks(g.n, masks)


def dom_game_values(
    g: SimpleGraph,
    m: int,
    b: int,
    first: Player = Player.MAKER,
    settings: Optional[SolverSettings] = None,
) -> SolveResult:
    """Values of the (m:b) claiming domination game; the Dominator claims."""
    return game_values(minimal_dominating_sets(g), m, b, first, settings)


def dom_wc_values(g: SimpleGraph, settings: Optional[SolverSettings] = None) -> SolveResult:
    """Values of the offer domination game; the Dominator offers."""
    return wc_game_values(minimal_dominating_sets(g), settings)


@dataclass(frozen=True)
class ResidueReport:
    """Result of exhaustively peeling (leaf, degree-2 support) pairs."""

    residue: SimpleGraph
    removed_pairs: tuple[tuple[int, int], ...]
    kept: tuple[int, ...]  # original vertex ids surviving, in index order


def residue(g: SimpleGraph) -> ResidueReport:
    """Peel the lexicographically least qualifying (leaf, support) pair until
    none remains.  The result is independent of the order up to isomorphism;
    the fixed order makes runs reproducible."""
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    removed: list[tuple[int, int]] = []
    while True:
        pick = None
        for v in sorted(adj):
            if len(adj[v]) != 1:
                continue
            w = next(iter(adj[v]))
            if len(adj[w]) == 2:
                pick = (v, w)
                break
        if pick is None:
            break
        v, w = pick
        for x in (v, w):
            for y in list(adj[x]):
                if y in adj:
                    adj[y].discard(x)
        del adj[v]
        del adj[w]
        removed.append((v, w))
    kept = tuple(sorted(adj))
    return ResidueReport(induced_subgraph(g, kept), tuple(removed), kept)


def is_tree(g: SimpleGraph) -> bool:
    if g.n == 0:
        return False
    if len(g.edges) != g.n - 1:
        return False
    seen = {0}
    stack = [0]
    adj = g.adjacency
    while stack:
        u = stack.pop()
        mask = adj[u]
        while mask:
            bit = mask & -mask
            mask ^= bit
            v = bit.bit_length() - 1
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def _bipartition(g: SimpleGraph) -> Optional[tuple[list[int], list[int]]]:
    color = [-1] * g.n
    sides: tuple[list[int], list[int]] = ([], [])
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            mask = g.adjacency[u]
            while mask:
                bit = mask & -mask
                mask ^= bit
                v = bit.bit_length() - 1
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    for v in range(g.n):
        sides[color[v]].append(v)
    return sides


def max_matching_bipartite(g: SimpleGraph) -> int:
    """Maximum matching size via augmenting paths (bipartite graphs only)."""
    sides = _bipartition(g)
    if sides is None:
        raise BoardError("graph is not bipartite")
    left, _ = sides
    match: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        mask = g.adjacency[u]
        while mask:
            bit = mask & -mask
            mask ^= bit
            v = bit.bit_length() - 1
            if v in seen:
                continue
            seen.add(v)
            if v not in match or augment(match[v], seen):
                match[v] = u
                return True
        return False

    size = 0
    for u in left:
        if augment(u, set()):
            size += 1
    return size


def has_perfect_matching(g: SimpleGraph) -> bool:
    return g.n % 2 == 0 and max_matching_bipartite(g) * 2 == g.n


def wc_tree_value(t: SimpleGraph) -> Optional[int]:
    """Closed-form offer-domination value on a tree: n/2 with a perfect
    matching, no win otherwise (None)."""
    if not is_tree(t):
        raise BoardError("input graph is not a tree")
    return t.n // 2 if has_perfect_matching(t) else None


def wc_cycle_value(n: int) -> int:
    """Closed-form offer-domination value on a cycle: floor(n/2)."""
    if n < 3:
        raise BoardError("cycles need at least 3 vertices")
    return n // 2
