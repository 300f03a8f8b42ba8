"""Rules for the three game kinds, as pure functions over immutable state.

Kinds:
  MAKER_BREAKER  biased (m:b) claiming game on a hypergraph.
  WAITER_CLIENT  unbiased offer/keep game on a hypergraph.  The Waiter plays
                 the Maker role (her claimed set is `maker`); a lone final
                 free element always goes to Client.
  AUX_EDGE       (1:b) game on a rooted directed multigraph whose elements
                 are the vertices followed by the arcs.  The Maker may claim
                 an arc only when she already owns both endpoints, and wins
                 by claiming any arc.

Bias semantics: a move claims exactly min(bias, #free) elements.  Round
counting ("within t rounds") counts completed Maker/Waiter moves, whoever
moved first.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from itertools import combinations
from typing import Optional, Union

from .bitset import iter_bits
from .boards import Hypergraph, RootedDigraph
from .errors import BoardError, IllegalMove


class GameKind(Enum):
    MAKER_BREAKER = "maker_breaker"
    WAITER_CLIENT = "waiter_client"
    AUX_EDGE = "aux_edge"


class Player(Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER


class Outcome(Enum):
    ONGOING = "ongoing"
    MAKER_WIN = "maker_win"
    MAKER_CANNOT_WIN = "maker_cannot_win"


class MoveKind(Enum):
    CLAIM = "claim"
    OFFER = "offer"
    KEEP = "keep"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    elements: int


@dataclass(frozen=True)
class GameSpec:
    kind: GameKind
    board: Union[Hypergraph, RootedDigraph]
    maker_bias: int = 1
    breaker_bias: int = 1
    first: Player = Player.MAKER
    preclaimed_maker: int = 0
    # Aux games only: the Breaker opens the game by claiming exactly one
    # element before the Maker's first move; afterwards he claims with his
    # full bias.
    breaker_premove: bool = False

    def __post_init__(self):
        if self.maker_bias < 1 or self.breaker_bias < 1:
            raise BoardError("biases must be at least 1")
        if self.kind is GameKind.AUX_EDGE:
            if not isinstance(self.board, RootedDigraph):
                raise BoardError("aux game needs a digraph board")
            if self.maker_bias != 1:
                raise BoardError("aux game fixes the maker bias at 1")
            vmask = (1 << self.board.nv) - 1
            if self.preclaimed_maker & ~vmask:
                raise BoardError("preclaimed elements must be vertices of the digraph")
        else:
            if not isinstance(self.board, Hypergraph):
                raise BoardError(f"{self.kind.value} needs a hypergraph board")
            if self.preclaimed_maker:
                raise BoardError("preclaimed sets are only supported in aux games")
            if self.breaker_premove:
                raise BoardError("the one-element pre-move is only supported in aux games")
        if self.kind is GameKind.WAITER_CLIENT:
            if self.maker_bias != 1 or self.breaker_bias != 1:
                raise BoardError("waiter-client games are unbiased")
            if self.first is not Player.MAKER:
                raise BoardError("the waiter always moves first")

    @property
    def n_elements(self) -> int:
        if isinstance(self.board, RootedDigraph):
            return self.board.n_elements
        return self.board.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n_elements) - 1


@dataclass(frozen=True)
class GameState:
    maker: int
    breaker: int
    to_move: Player
    maker_moves_used: int = 0
    pending_offer: int = 0  # waiter-client: the offered pair awaiting Client


@dataclass(frozen=True)
class Status:
    outcome: Outcome
    witness: Optional[int] = None


def initial_state(spec: GameSpec) -> GameState:
    first = spec.first
    if spec.breaker_premove:
        first = Player.BREAKER
    return GameState(maker=spec.preclaimed_maker, breaker=0, to_move=first)


def free_mask(spec: GameSpec, state: GameState) -> int:
    return spec.full_mask & ~(state.maker | state.breaker)


def arc_element_bit(board: RootedDigraph, arc_index: int) -> int:
    return 1 << (board.nv + arc_index)


def _breaker_bias_now(spec: GameSpec, state: GameState) -> int:
    if spec.breaker_premove and state.breaker == 0:
        return 1
    return spec.breaker_bias


def _aux_maker_elements(spec: GameSpec, state: GameState) -> list[int]:
    """Single elements the aux Maker may claim: free vertices, and free arcs
    whose endpoints she already owns."""
    board: RootedDigraph = spec.board  # type: ignore[assignment]
    free = free_mask(spec, state)
    out = []
    for v in range(board.nv):
        if free & (1 << v):
            out.append(1 << v)
    for j, (u, v) in enumerate(board.arcs):
        bit = arc_element_bit(board, j)
        if free & bit and state.maker & (1 << u) and state.maker & (1 << v):
            out.append(bit)
    return out


def _claim_combinations(free: int, size: int) -> list[int]:
    bits = list(iter_bits(free))
    out = []
    for combo in combinations(bits, size):
        m = 0
        for b in combo:
            m |= b
        out.append(m)
    return out


def legal_moves(spec: GameSpec, state: GameState) -> list[Move]:
    """All moves available to the player to move.

    An empty list signals the end of play: the Maker already owns a winning
    set, or no claim is possible.  A state that is merely decided against the
    Maker still has moves; callers prune on `status` if they want to stop.
    """
    if status(spec, state).outcome is Outcome.MAKER_WIN:
        return []
    free = free_mask(spec, state)
    if spec.kind is GameKind.WAITER_CLIENT:
        if state.pending_offer:
            return [Move(MoveKind.KEEP, bit) for bit in iter_bits(state.pending_offer)]
        bits = list(iter_bits(free))
        if not bits:
            return []
        if len(bits) == 1:
            return [Move(MoveKind.OFFER, bits[0])]
        return [Move(MoveKind.OFFER, a | b) for a, b in combinations(bits, 2)]
    if spec.kind is GameKind.AUX_EDGE and state.to_move is Player.MAKER:
        return [Move(MoveKind.CLAIM, m) for m in _aux_maker_elements(spec, state)]
    bias = spec.maker_bias if state.to_move is Player.MAKER else _breaker_bias_now(spec, state)
    size = min(bias, free.bit_count())
    if size == 0:
        return []
    return [Move(MoveKind.CLAIM, m) for m in _claim_combinations(free, size)]


def apply_move(spec: GameSpec, state: GameState, move: Move) -> GameState:
    """Apply a move, validating legality."""
    free = free_mask(spec, state)
    if spec.kind is GameKind.WAITER_CLIENT:
        if state.pending_offer:
            if move.kind is not MoveKind.KEEP:
                raise IllegalMove("expected the client to keep an offered element")
            kept = move.elements
            if kept.bit_count() != 1 or not kept & state.pending_offer:
                raise IllegalMove("client must keep exactly one offered element")
            to_waiter = state.pending_offer & ~kept
            return GameState(
                maker=state.maker | to_waiter,
                breaker=state.breaker | kept,
                to_move=Player.MAKER,
                maker_moves_used=state.maker_moves_used + 1,
                pending_offer=0,
            )
        if move.kind is not MoveKind.OFFER:
            raise IllegalMove("expected a waiter offer")
        offer = move.elements
        count = offer.bit_count()
        if offer & ~free:
            raise IllegalMove("offer must use free elements")
        want = 2 if free.bit_count() >= 2 else 1
        if count != want:
            raise IllegalMove(f"offer must contain exactly {want} element(s)")
        return replace(state, to_move=Player.BREAKER, pending_offer=offer)

    if move.kind is not MoveKind.CLAIM:
        raise IllegalMove("expected a claim move")
    claim = move.elements
    if claim & ~free:
        raise IllegalMove("claim must use free elements")
    if spec.kind is GameKind.AUX_EDGE and state.to_move is Player.MAKER:
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        if claim.bit_count() != 1:
            raise IllegalMove("aux maker claims one element per move")
        idx = claim.bit_length() - 1
        if idx >= board.nv:
            u, v = board.arcs[idx - board.nv]
            if not (state.maker & (1 << u) and state.maker & (1 << v)):
                raise IllegalMove("arc may only be claimed once both endpoints are owned")
    else:
        bias = spec.maker_bias if state.to_move is Player.MAKER else _breaker_bias_now(spec, state)
        if claim.bit_count() != min(bias, free.bit_count()):
            raise IllegalMove("claim must use exactly min(bias, #free) elements")
    if state.to_move is Player.MAKER:
        return GameState(
            maker=state.maker | claim,
            breaker=state.breaker,
            to_move=Player.BREAKER,
            maker_moves_used=state.maker_moves_used + 1,
        )
    return GameState(
        maker=state.maker,
        breaker=state.breaker | claim,
        to_move=Player.MAKER,
        maker_moves_used=state.maker_moves_used,
    )


def status(spec: GameSpec, state: GameState) -> Status:
    """Terminal classification plus the smallest fully-claimed winning set.

    For aux games the "cannot win" answer is conservative: it only fires when
    every arc element itself is Breaker-claimed.  Exact loss detection is the
    solver's job.
    """
    if spec.kind is GameKind.AUX_EDGE:
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        won = None
        dead = True
        for j in range(len(board.arcs)):
            bit = arc_element_bit(board, j)
            if state.maker & bit and won is None:
                won = bit
            if not state.breaker & bit:
                dead = False
        if won is not None:
            return Status(Outcome.MAKER_WIN, won)
        if dead:
            return Status(Outcome.MAKER_CANNOT_WIN)
        return Status(Outcome.ONGOING)

    board_h: Hypergraph = spec.board  # type: ignore[assignment]
    witness = None
    all_hit = True
    for e in board_h.edges:
        if e & ~state.maker == 0:
            if witness is None or (e.bit_count(), e) < (witness.bit_count(), witness):
                witness = e
        if not e & state.breaker:
            all_hit = False
    if witness is not None:
        return Status(Outcome.MAKER_WIN, witness)
    if all_hit or not board_h.edges:
        return Status(Outcome.MAKER_CANNOT_WIN)
    return Status(Outcome.ONGOING)
