"""Exact game values by memoized AND/OR search.

The three searches (claiming game, offer game, directed-edge game) share the
same skeleton: recurse over the mover's options, short-circuit, memoize on
(claimed sets, mover, remaining round budget).  Exactness-preserving
reductions keep desk-scale instances fast:

  * elements outside every live winning set are interchangeable, so padded
    claims use the lowest such elements and dominated moves are dropped;
  * a mover never claims fewer useful elements than the bias allows;
  * positions where the cheapest live winning set cannot be finished within
    the remaining budget are lost for the claiming player.

Each of these is a dominance argument, not a heuristic: claimed values are
exact.  A memo-free mode exists for cross-checking, and the memo table is
guarded by a configurable entry cap (exceeding it raises, never truncates).

Only the single-actor mode runs by default.  With jobs > 1 the root moves
are evaluated in worker processes, each with a private memo table, so
concurrent identical inserts are trivially idempotent.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from math import ceil
from typing import Optional, Sequence

from .bitset import iter_bits, low_bits
from .boards import Hypergraph, RootedDigraph
from .engine import Player
from .errors import GuardExceeded, PosgamesError, RestrictionError

DEFAULT_MEMO_CAP = 1 << 27
_MEMO_CAP_ENV = "POSGAMES_MEMO_CAP"

# Move-ordering weight: elements of nearly-complete winning sets first.
_W = 1 << 30


def _default_memo_cap() -> int:
    raw = os.environ.get(_MEMO_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise PosgamesError(f"bad {_MEMO_CAP_ENV} value {raw!r}") from exc
    return DEFAULT_MEMO_CAP


@dataclass(frozen=True)
class SolverSettings:
    memo_cap: int = 0  # 0 means: environment override or the built-in default
    use_memo: bool = True
    jobs: int = 1

    def effective_cap(self) -> int:
        return self.memo_cap if self.memo_cap > 0 else _default_memo_cap()


@dataclass(frozen=True)
class Objective:
    """Round and size budgets; None means unbounded."""

    max_rounds: Optional[int] = None
    max_size: Optional[int] = None

    def __post_init__(self):
        if self.max_rounds is not None and self.max_rounds < 0:
            raise PosgamesError("round budget must be non-negative")
        if self.max_size is not None and self.max_size < 1:
            raise PosgamesError("size budget must be at least 1")


@dataclass(frozen=True)
class MoveRestriction:
    """Reduced Maker menu: claim a whole associated set, or finish a win.

    Sound only for boards satisfying the structural hypotheses checked by
    `validate_restriction`.
    """

    family: tuple[int, ...]


@dataclass(frozen=True)
class SolveResult:
    maker_wins: bool
    min_rounds: Optional[int]
    min_size: Optional[int]
    frontier: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "type": "solve_result",
            "maker_wins": self.maker_wins,
            "min_rounds": self.min_rounds,
            "min_size": self.min_size,
            "frontier": [list(p) for p in self.frontier],
        }


def validate_restriction(h: Hypergraph, m: int, restriction: MoveRestriction) -> None:
    family = restriction.family
    seen = 0
    for v in family:
        if v.bit_count() != m:
            raise RestrictionError(f"associated set {v:#x} does not have size {m}")
        if v & seen:
            raise RestrictionError("associated sets must be pairwise disjoint")
        seen |= v
    for e in h.edges:
        if e.bit_count() <= m:
            raise RestrictionError("every winning set must be larger than the maker bias")
        for v in family:
            inter = v & e
            if inter and inter != v:
                raise RestrictionError(
                    "every associated set must be contained in or disjoint from every edge"
                )
    outside = h.full_mask & ~seen
    for bit in iter_bits(outside):
        if sum(1 for e in h.edges if e & bit) > 1:
            raise RestrictionError(
                "elements outside the family may belong to at most one edge"
            )


class _MemoMixin:
    settings: SolverSettings

    def _init_memo(self):
        self.memo: dict = {}
        self._cap = self.settings.effective_cap()
        self._use_memo = self.settings.use_memo

    def _store(self, key, value: bool) -> bool:
        if self._use_memo:
            if len(self.memo) >= self._cap:
                raise GuardExceeded(
                    f"memo table exceeded {self._cap} entries; raise the cap to continue"
                )
            self.memo[key] = value
        return value


class _MBSearch(_MemoMixin):
    """(m:b) claiming game on a fixed, size-filtered edge family."""

    def __init__(
        self,
        n: int,
        edges: Sequence[int],
        m: int,
        b: int,
        settings: SolverSettings,
        restriction: Optional[tuple[int, ...]] = None,
    ):
        self.full = (1 << n) - 1
        self.edges = tuple(edges)
        self.m = m
        self.b = b
        self.restriction = restriction
        self.settings = settings
        self._init_memo()

    def run(self, maker: int, breaker: int, maker_to_move: bool, budget: int) -> bool:
        edges = self.edges
        m = self.m
        live = []
        lb = None
        for e in edges:
            if e & breaker:
                continue
            need = e & ~maker
            if not need:
                return True
            live.append(need)
            moves_needed = -(-need.bit_count() // m)
            if lb is None or moves_needed < lb:
                lb = moves_needed
        if lb is None or lb > budget:
            return False
        free = self.full & ~(maker | breaker)
        if not free:
            return False

        key = (maker, breaker, maker_to_move, budget)
        if self._use_memo:
            hit = self.memo.get(key)
            if hit is not None:
                return hit

        if maker_to_move:
            value = self._maker_node(maker, breaker, budget, live, free)
        else:
            value = self._breaker_node(maker, breaker, budget, live, free)
        return self._store(key, value)

    def _maker_node(self, maker, breaker, budget, live, free) -> bool:
        m = self.m
        if any(need.bit_count() <= m for need in live):
            return True  # finish a winning set this move
        fc = free.bit_count()
        size = min(m, fc)
        if self.restriction is not None:
            occupied = maker | breaker
            moves = [v for v in self.restriction if not v & occupied]
            moves.sort(key=lambda v: -self._score(v, live))
            for mv in moves:
                if self.run(maker | mv, breaker, False, budget - 1):
                    return True
            return False
        useful = 0
        for need in live:
            useful |= need
        ucount = useful.bit_count()
        if ucount <= size:
            mv = useful | low_bits(free & ~useful, size - ucount)
            return self.run(maker | mv, breaker, False, budget - 1)
        bits = self._ordered_bits(useful, live)
        for combo in combinations(bits, size):
            mv = 0
            for bit in combo:
                mv |= bit
            if self.run(maker | mv, breaker, False, budget - 1):
                return True
        return False

    def _breaker_node(self, maker, breaker, budget, live, free) -> bool:
        fc = free.bit_count()
        size = min(self.b, fc)
        useful = 0
        for need in live:
            useful |= need
        ucount = useful.bit_count()
        if ucount <= size:
            mv = useful | low_bits(free & ~useful, size - ucount)
            return self.run(maker, breaker | mv, True, budget)
        bits = self._ordered_bits(useful, live)
        for combo in combinations(bits, size):
            mv = 0
            for bit in combo:
                mv |= bit
            if not self.run(maker, breaker | mv, True, budget):
                return False
        return True

    @staticmethod
    def _score(mask, live) -> int:
        s = 0
        for need in live:
            if need & mask:
                s += _W >> (3 * need.bit_count())
        return s

    @staticmethod
    def _ordered_bits(useful, live) -> list[int]:
        scores = {}
        for need in live:
            w = _W >> (3 * need.bit_count())
            for bit in iter_bits(need):
                scores[bit] = scores.get(bit, 0) + w
        return sorted(iter_bits(useful), key=lambda bit: -scores.get(bit, 0))


class _WCSearch(_MemoMixin):
    """Unbiased offer game; a round is offer + keep, folded into one node."""

    def __init__(self, n: int, edges: Sequence[int], settings: SolverSettings):
        self.full = (1 << n) - 1
        self.edges = tuple(edges)
        self.settings = settings
        self._init_memo()

    def run(self, waiter: int, client: int, budget: int) -> bool:
        live = []
        lb = None
        for e in self.edges:
            if e & client:
                continue
            need = e & ~waiter
            if not need:
                return True
            live.append(need)
            nc = need.bit_count()
            if lb is None or nc < lb:
                lb = nc
        # the waiter gains exactly one element per round
        if lb is None or lb > budget:
            return False
        free = self.full & ~(waiter | client)
        fc = free.bit_count()
        if fc <= 1:
            return False  # a lone element goes to the client
        useful = 0
        for need in live:
            useful |= need
        if useful.bit_count() == 1:
            # the client keeps the unique useful element whenever offered
            return False

        key = (waiter, client, budget)
        if self._use_memo:
            hit = self.memo.get(key)
            if hit is not None:
                return hit

        bits = _MBSearch._ordered_bits(useful, live)
        value = False
        for x, y in combinations(bits, 2):
            if self.run(waiter | x, client | y, budget - 1) and self.run(
                waiter | y, client | x, budget - 1
            ):
                value = True
                break
        if not value:
            useless = free & ~useful
            uc = useless.bit_count()
            if uc >= 2:
                # burning a round on two interchangeable dead elements; any
                # mixed useful/dead offer is dominated by this
                u1 = useless & -useless
                u2 = (useless ^ u1) & -(useless ^ u1)
                value = self.run(waiter | u1, client | u2, budget - 1)
            elif uc == 1:
                for x in bits:
                    if self.run(waiter | x, client | useless, budget - 1) and self.run(
                        waiter | useless, client | x, budget - 1
                    ):
                        value = True
                        break
        return self._store(key, value)


class _AuxSearch(_MemoMixin):
    """(1:b) vertex-then-arc game on a rooted directed multigraph."""

    def __init__(self, board: RootedDigraph, b: int, settings: SolverSettings):
        self.nv = board.nv
        self.full = (1 << board.n_elements) - 1
        self.b = b
        self.arcs = tuple(
            (1 << (board.nv + j), 1 << u, 1 << v) for j, (u, v) in enumerate(board.arcs)
        )
        self.settings = settings
        self._init_memo()

    def run(self, maker: int, breaker: int, maker_to_move: bool, budget: int) -> bool:
        live = []
        lb = None
        for arc, tail, head in self.arcs:
            if breaker & (arc | tail | head):
                continue
            if maker & arc:
                return True
            missing = (0 if maker & tail else 1) + (0 if maker & head else 1)
            live.append((arc, tail, head, missing))
            if lb is None or missing + 1 < lb:
                lb = missing + 1
        if lb is None or lb > budget:
            return False
        free = self.full & ~(maker | breaker)
        if not free:
            return False

        key = (maker, breaker, maker_to_move, budget)
        if self._use_memo:
            hit = self.memo.get(key)
            if hit is not None:
                return hit

        if maker_to_move:
            if any(missing == 0 for *_rest, missing in live):
                return self._store(key, True)  # claim that arc now
            scores: dict[int, int] = {}
            for arc, tail, head, missing in live:
                w = _W >> (3 * missing)
                for bit in (tail, head):
                    if bit & free:
                        scores[bit] = scores.get(bit, 0) + w
            order = sorted(scores, key=lambda bit: -scores[bit])
            value = any(
                self.run(maker | v, breaker, False, budget - 1) for v in order
            )
        else:
            value = self._breaker_node(maker, breaker, budget, live, free)
        return self._store(key, value)

    def _breaker_node(self, maker, breaker, budget, live, free) -> bool:
        scores: dict[int, int] = {}
        useful = 0
        for arc, tail, head, missing in live:
            w = _W >> (3 * missing)
            for bit in (arc, tail, head):
                if bit & free:
                    useful |= bit
                    scores[bit] = scores.get(bit, 0) + w
        fc = free.bit_count()
        size = min(self.b, fc)
        ucount = useful.bit_count()
        if ucount <= size:
            mv = useful | low_bits(free & ~useful, size - ucount)
            return self.run(maker, breaker | mv, True, budget)
        bits = sorted(iter_bits(useful), key=lambda bit: -scores[bit])
        for combo in combinations(bits, size):
            mv = 0
            for bit in combo:
                mv |= bit
            if not self.run(maker, breaker | mv, True, budget):
                return False
        return True

    def breaker_single_openings(self, maker: int) -> list[int]:
        """Menu for a one-element opening claim (dominated moves dropped)."""
        free = self.full & ~maker
        useful = 0
        for arc, tail, head in self.arcs:
            if maker & arc:
                continue
            useful |= (arc | tail | head) & free
        if useful:
            return list(iter_bits(useful))
        return [free & -free] if free else []


def _mb_budget(h: Hypergraph, m: int, objective: Objective) -> int:
    if objective.max_rounds is not None:
        return objective.max_rounds
    return ceil(h.n / m) if h.n else 0


def _filter_edges(h: Hypergraph, objective: Objective) -> list[int]:
    if objective.max_size is None:
        return list(h.edges)
    s = objective.max_size
    return [e for e in h.edges if e.bit_count() <= s]


def decide_mb(
    h: Hypergraph,
    m: int,
    b: int,
    first: Player = Player.MAKER,
    objective: Objective = Objective(),
    restriction: Optional[MoveRestriction] = None,
    settings: Optional[SolverSettings] = None,
) -> bool:
    """Can the Maker claim a winning set within the objective, playing perfectly?

    A round budget of 0 is allowed and is trivially false.
    """
    if m < 1 or b < 1:
        raise PosgamesError("biases must be at least 1")
    settings = settings or SolverSettings()
    fam = None
    if restriction is not None:
        validate_restriction(h, m, restriction)
        fam = restriction.family
    edges = _filter_edges(h, objective)
    budget = _mb_budget(h, m, objective)
    if settings.jobs > 1:
        return _parallel_mb(h.n, edges, m, b, fam, first, budget, settings)
    search = _MBSearch(h.n, edges, m, b, settings, fam)
    return search.run(0, 0, first is Player.MAKER, budget)


def decide_wc(
    h: Hypergraph,
    objective: Objective = Objective(),
    settings: Optional[SolverSettings] = None,
) -> bool:
    """Can the Waiter claim a winning set within the objective?"""
    settings = settings or SolverSettings()
    edges = _filter_edges(h, objective)
    budget = (
        objective.max_rounds
        if objective.max_rounds is not None
        else (h.n + 1) // 2
    )
    search = _WCSearch(h.n, edges, settings)
    return search.run(0, 0, budget)


def solve_aux_game(
    board: RootedDigraph,
    b: int,
    preclaimed: int,
    objective: Objective = Objective(),
    breaker_premove: bool = False,
    settings: Optional[SolverSettings] = None,
) -> bool:
    """Exact value of the directed-edge game with the given round budget.

    `preclaimed` is a vertex mask the Maker owns from the start.  With
    `breaker_premove`, the Breaker claims exactly one element before the
    Maker's first move.  Size budgets do not bind (winning sets are single
    arcs) and are ignored.
    """
    if b < 1:
        raise PosgamesError("breaker bias must be at least 1")
    vmask = (1 << board.nv) - 1
    if preclaimed & ~vmask:
        raise PosgamesError("preclaimed elements must be vertices")
    settings = settings or SolverSettings()
    budget = (
        objective.max_rounds
        if objective.max_rounds is not None
        else board.n_elements
    )
    search = _AuxSearch(board, b, settings)
    if breaker_premove:
        return all(
            search.run(preclaimed, opening, True, budget)
            for opening in search.breaker_single_openings(preclaimed)
        )
    return search.run(preclaimed, 0, True, budget)


def _values_from_decider(decide, sizes: Sequence[int], round_cap: int) -> SolveResult:
    """Shared scan for (min rounds, min size, frontier) given a decide(t,s)."""
    if not decide(None, None):
        return SolveResult(False, None, None, ())
    min_rounds = next(t for t in range(1, round_cap + 1) if decide(t, None))
    min_size = next(s for s in sizes if decide(None, s))
    frontier: list[tuple[int, int]] = []
    t = min_rounds
    prev = None
    while True:
        s_t = next(s for s in sizes if decide(t, s))
        if prev is None or s_t < prev:
            frontier.append((t, s_t))
            prev = s_t
        if s_t <= min_size or t >= round_cap:
            break
        t += 1
    return SolveResult(True, min_rounds, min_size, tuple(frontier))


def game_values(
    h: Hypergraph,
    m: int,
    b: int,
    first: Player = Player.MAKER,
    settings: Optional[SolverSettings] = None,
) -> SolveResult:
    """Win flag, round value, size value and the (rounds, size) frontier."""
    sizes = sorted({e.bit_count() for e in h.edges})

    def decide(t, s):
        return decide_mb(h, m, b, first, Objective(t, s), settings=settings)

    return _values_from_decider(decide, sizes, _mb_budget(h, m, Objective()))


def wc_game_values(h: Hypergraph, settings: Optional[SolverSettings] = None) -> SolveResult:
    sizes = sorted({e.bit_count() for e in h.edges})

    def decide(t, s):
        return decide_wc(h, Objective(t, s), settings=settings)

    return _values_from_decider(decide, sizes, (h.n + 1) // 2)


# ---------------------------------------------------------------------------
# Root-level parallelism (opt-in; the default path never forks)


def _root_moves_mb(search: _MBSearch, maker_to_move: bool) -> Optional[list[int]]:
    """The root mover's menu, or None when the root is already decided."""
    live = list(search.edges)
    if not live:
        return None
    free = search.full
    if maker_to_move:
        if search.restriction is not None:
            return list(search.restriction)  # at an empty board every set is free
        if any(need.bit_count() <= search.m for need in live):
            return None
        size = min(search.m, free.bit_count())
    else:
        size = min(search.b, free.bit_count())
    useful = 0
    for need in live:
        useful |= need
    ucount = useful.bit_count()
    if ucount <= size:
        return [useful | low_bits(free & ~useful, size - ucount)]
    bits = _MBSearch._ordered_bits(useful, live)
    moves = []
    for combo in combinations(bits, size):
        mv = 0
        for bit in combo:
            mv |= bit
        moves.append(mv)
    return moves


def _mb_child(args) -> bool:
    n, edges, m, b, fam, maker, breaker, maker_to_move, budget, cap = args
    settings = SolverSettings(memo_cap=cap)
    return _MBSearch(n, edges, m, b, settings, fam).run(maker, breaker, maker_to_move, budget)


def _parallel_mb(n, edges, m, b, fam, first, budget, settings: SolverSettings) -> bool:
    import multiprocessing as mp

    search = _MBSearch(n, tuple(edges), m, b, SolverSettings(), fam)
    maker_first = first is Player.MAKER
    if budget <= 0 or not edges:
        return False
    moves = _root_moves_mb(search, maker_first)
    if moves is None:
        # decided at the root without any search
        return search.run(0, 0, maker_first, budget)
    if not moves:
        return False
    cap = settings.effective_cap()
    if maker_first:
        jobs = [
            (n, tuple(edges), m, b, fam, mv, 0, False, budget - 1, cap) for mv in moves
        ]
        target = True
    else:
        jobs = [(n, tuple(edges), m, b, fam, 0, mv, True, budget, cap) for mv in moves]
        target = False
    with mp.get_context("fork").Pool(settings.jobs) as pool:
        for result in pool.imap(_mb_child, jobs):
            if result is target:
                pool.terminate()
                return target
    return not target
