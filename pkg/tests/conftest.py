"""Shared test helpers: a pruning-free reference solver and random boards."""

from __future__ import annotations

import random

import pytest

from posgames.boards import Hypergraph, hypergraph_from_masks
from posgames.engine import (
    GameKind,
    GameSpec,
    Outcome,
    Player,
    apply_move,
    initial_state,
    legal_moves,
    status,
)


def naive_decide(spec: GameSpec, max_rounds=None, max_size=None) -> bool:
    """Game value by plain recursion over the engine's full move lists.

    Shares nothing with the production solver except the engine, so it
    serves as an independent oracle on tiny boards.
    """
    if max_size is not None and spec.kind is not GameKind.AUX_EDGE:
        board: Hypergraph = spec.board
        edges = [e for e in board.edges if e.bit_count() <= max_size]
        spec = GameSpec(
            spec.kind, hypergraph_from_masks(board.n, edges),
            maker_bias=spec.maker_bias, breaker_bias=spec.breaker_bias,
            first=spec.first,
        ) if edges else None
        if spec is None:
            return False

    def rec(state):
        st = status(spec, state)
        if st.outcome is Outcome.MAKER_WIN:
            return True
        if (
            state.to_move is Player.MAKER
            and not state.pending_offer
            and max_rounds is not None
            and state.maker_moves_used >= max_rounds
        ):
            return False
        moves = legal_moves(spec, state)
        if not moves:
            return False
        children = (rec(apply_move(spec, state, mv)) for mv in moves)
        if state.to_move is Player.MAKER:
            return any(children)
        return all(children)

    return rec(initial_state(spec))


def random_hypergraph_masks(n: int, max_edges: int, rng: random.Random) -> Hypergraph:
    edges = []
    for _ in range(rng.randint(1, max_edges)):
        size = rng.randint(1, max(1, n - 1))
        pick = rng.sample(range(n), min(size, n))
        mask = 0
        for i in pick:
            mask |= 1 << i
        edges.append(mask)
    return hypergraph_from_masks(n, edges)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
