"""Scripted strategies and an exhaustive adversary verifier.

Each catalog strategy is a deterministic (spec, state, memory) -> (move,
memory') function with a declared guarantee.  Memory objects are immutable;
the verifier fans out over every opponent reply while keeping the strategy
fixed, so a shared memory value is safe across branches.

Where a script says "claim arbitrary elements" the lowest-index free element
is taken, and every claim is padded to the exact bias so the move is always
engine-legal.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Optional

from .bitset import iter_bits, low_bits
from .boards import Hypergraph, RootedDigraph
from .constructions import (
    GtbNode,
    HtbInfo,
    MbstInfo,
    build_gadget,
    build_gtb_indexed,
    build_hmbst_indexed,
    build_htb_indexed,
    build_ht_wc_indexed,
    nonmonotone_blocks,
)
from .domination import minimal_dominating_sets, residue, wc_tree_value
from .engine import (
    GameKind,
    GameSpec,
    GameState,
    Move,
    MoveKind,
    Outcome,
    Player,
    apply_move,
    free_mask,
    initial_state,
    legal_moves,
    status,
)
from .errors import GuardExceeded, IllegalMove, PosgamesError
from .graphgen import cycle_graph, path_graph


class GuaranteeKind(Enum):
    WIN_WITHIN = "win_within"
    NEVER_LOSES = "never_loses"
    OPPONENT_NOT_WITHIN = "opponent_not_within"


@dataclass(frozen=True)
class Guarantee:
    kind: GuaranteeKind
    rounds: Optional[int] = None

    def describe(self) -> str:
        if self.kind is GuaranteeKind.WIN_WITHIN:
            return f"wins within {self.rounds} round(s)"
        if self.kind is GuaranteeKind.NEVER_LOSES:
            return "never lets the claiming player win"
        return f"no opposing win within {self.rounds} round(s)"


def win_within(t: int) -> Guarantee:
    return Guarantee(GuaranteeKind.WIN_WITHIN, t)


def never_loses() -> Guarantee:
    return Guarantee(GuaranteeKind.NEVER_LOSES)


def opponent_not_within(t: int) -> Guarantee:
    return Guarantee(GuaranteeKind.OPPONENT_NOT_WITHIN, t)


@dataclass(frozen=True)
class Strategy:
    name: str
    player: Player
    next_move: Callable[[GameSpec, GameState, Any], tuple[Move, Any]]
    initial_memory: Any = None


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    counterexample: Optional[tuple]
    nodes: int


def verify_strategy(
    spec: GameSpec,
    strategy: Strategy,
    guarantee: Guarantee,
    max_nodes: int = 2_000_000,
) -> VerifyResult:
    """Check the guarantee against every opponent reply sequence.

    Returns ok=True, or the first violating trace as a tuple of
    (player-name, element-index-list) pairs.
    """
    nodes = 0

    def rec(state: GameState, mem, trace: tuple):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise GuardExceeded(f"verifier exceeded {max_nodes} nodes")
        st = status(spec, state)
        won = st.outcome is Outcome.MAKER_WIN
        rounds = state.maker_moves_used
        kind = guarantee.kind
        if kind is GuaranteeKind.WIN_WITHIN:
            if won and rounds <= guarantee.rounds:
                return None
            if won or rounds >= guarantee.rounds:
                return trace
        elif kind is GuaranteeKind.NEVER_LOSES:
            if won:
                return trace
            if st.outcome is Outcome.MAKER_CANNOT_WIN:
                return None
        else:
            if won:
                return trace if rounds <= guarantee.rounds else None
            if st.outcome is Outcome.MAKER_CANNOT_WIN or rounds > guarantee.rounds:
                return None
        moves = legal_moves(spec, state)
        if not moves:
            return trace if kind is GuaranteeKind.WIN_WITHIN else None
        mover = state.to_move
        if mover is strategy.player:
            mv, mem2 = strategy.next_move(spec, state, mem)
            try:
                nxt = apply_move(spec, state, mv)
            except IllegalMove:
                return trace + ((f"illegal:{mover.value}", _indices(mv.elements)),)
            return rec(nxt, mem2, trace + ((mover.value, _indices(mv.elements)),))
        for mv in moves:
            bad = rec(
                apply_move(spec, state, mv),
                mem,
                trace + ((mover.value, _indices(mv.elements)),),
            )
            if bad is not None:
                return bad
        return None

    bad = rec(initial_state(spec), strategy.initial_memory, ())
    return VerifyResult(bad is None, bad, nodes)


def _indices(mask: int) -> list[int]:
    return [b.bit_length() - 1 for b in iter_bits(mask)]


# ---------------------------------------------------------------------------
# Shared move plumbing


def _pad(mask: int, size: int, free: int) -> int:
    missing = size - mask.bit_count()
    if missing > 0:
        mask |= low_bits(free & ~mask, missing)
    return mask


def _claim_exact(spec: GameSpec, state: GameState, want: int) -> Move:
    """Claim `want` (intersected with free), padded or trimmed to exact bias."""
    free = free_mask(spec, state)
    if state.to_move is Player.MAKER:
        bias = spec.maker_bias
    else:
        bias = 1 if (spec.breaker_premove and state.breaker == 0) else spec.breaker_bias
    size = min(bias, free.bit_count())
    claim = want & free
    if claim.bit_count() > size:
        claim = low_bits(claim, size)
    return Move(MoveKind.CLAIM, _pad(claim, size, free))


def _fallback(spec: GameSpec, state: GameState) -> Move:
    moves = legal_moves(spec, state)
    if not moves:
        raise PosgamesError("no legal move available")
    return moves[0]


@functools.lru_cache(maxsize=128)
def _digraph_tables(board: RootedDigraph):
    """(reach masks, free-out arc element mask per vertex builder, dists)."""
    reach = board.reachability()
    out_arcs = [0] * board.nv
    for j, (u, _v) in enumerate(board.arcs):
        out_arcs[u] |= 1 << (board.nv + j)
    dist = board.shortest_path_lengths()
    return reach, tuple(out_arcs), dist


def _maker_vertices(board: RootedDigraph, maker: int) -> list[int]:
    return [v for v in range(board.nv) if maker & (1 << v)]


# ---------------------------------------------------------------------------
# Branched-digraph maker: claim the junction, descend into an untouched copy


@dataclass(frozen=True)
class _DescendMem:
    node: GtbNode


def _gtb_step(nv: int, node: GtbNode, maker: int, breaker: int) -> tuple[int, GtbNode]:
    while node.depth > 1 and maker & (1 << node.mid):
        untouched = [c for c in node.children if not c.element_mask(nv) & breaker]
        if not untouched:
            break
        node = untouched[0]
    if node.depth == 1:
        return 1 << (nv + node.arc), node
    return 1 << node.mid, node


def make_maker_gtb(t: int, b: int) -> Strategy:
    digraph, root = build_gtb_indexed(t, b)
    nv = digraph.nv

    def next_move(spec: GameSpec, state: GameState, mem: _DescendMem):
        bit, node = _gtb_step(nv, mem.node, state.maker, state.breaker)
        if not bit & free_mask(spec, state):
            return _fallback(spec, state), mem
        return Move(MoveKind.CLAIM, bit), _DescendMem(node)

    return Strategy("maker-gtb", Player.MAKER, next_move, _DescendMem(root))


# ---------------------------------------------------------------------------
# Blocking breaker: keep at most one opposing vertex with free outgoing arcs


def _free_out(out_arcs, free: int, v: int) -> int:
    return out_arcs[v] & free


def _block_target(reach, out_arcs, free: int, owned: list[int], new_v: Optional[int]) -> Optional[int]:
    """The vertex whose outgoing arcs to claim, by the two-case order:
    the older vertex when it precedes the new one, the new one otherwise."""
    candidates = [v for v in owned if _free_out(out_arcs, free, v)]
    if new_v is None or new_v not in candidates:
        return candidates[0] if candidates else None
    others = [v for v in candidates if v != new_v]
    if not others:
        return new_v
    w_old = others[0]
    if reach[w_old] & (1 << new_v):
        return w_old
    return new_v


@dataclass(frozen=True)
class _PrevMem:
    prev_maker: int


def make_breaker_gtb_block(b: int) -> Strategy:
    def next_move(spec: GameSpec, state: GameState, mem: _PrevMem):
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        reach, out_arcs, _ = _digraph_tables(board)
        free = free_mask(spec, state)
        new = state.maker & ~mem.prev_maker
        new_v = None
        for bit in iter_bits(new):
            idx = bit.bit_length() - 1
            if idx < board.nv:
                new_v = idx
        owned = _maker_vertices(board, state.maker)
        target = _block_target(reach, out_arcs, free, owned, new_v)
        want = _free_out(out_arcs, free, target) if target is not None else 0
        return _claim_exact(spec, state, want), _PrevMem(state.maker)

    return Strategy("breaker-gtb-block", Player.BREAKER, next_move, _PrevMem(0))


@dataclass(frozen=True)
class _SlowMem:
    prev_maker: int
    move_no: int


def _slow_target(
    reach, dist, out_arcs, free: int, owned: list[int], new_v: Optional[int],
    horizon: int, move_no: int,
) -> Optional[int]:
    """Distance-gated blocking: block the new vertex unless it sits close
    below the old live vertex, in which case block the old one."""
    candidates = [v for v in owned if _free_out(out_arcs, free, v)]
    if new_v is None or new_v not in candidates:
        return candidates[0] if candidates else None
    others = [v for v in candidates if v != new_v]
    if not others:
        return new_v
    x = others[0]
    if not reach[x] & (1 << new_v):
        return new_v
    ell = dist[x][new_v]
    threshold = 2 ** max(horizon - move_no - 1, 0)
    if ell is not None and ell >= threshold:
        return new_v
    return x


def make_breaker_gtb_slow(t: int, b: int) -> Strategy:
    def next_move(spec: GameSpec, state: GameState, mem: _SlowMem):
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        reach, out_arcs, dist = _digraph_tables(board)
        free = free_mask(spec, state)
        new = state.maker & ~mem.prev_maker
        new_v = None
        for bit in iter_bits(new):
            idx = bit.bit_length() - 1
            if idx < board.nv:
                new_v = idx
        owned = _maker_vertices(board, state.maker)
        target = _slow_target(reach, dist, out_arcs, free, owned, new_v, t, mem.move_no)
        want = _free_out(out_arcs, free, target) if target is not None else 0
        return _claim_exact(spec, state, want), _SlowMem(state.maker, mem.move_no + 1)

    return Strategy("breaker-gtb-slow", Player.BREAKER, next_move, _SlowMem(0, 1))


# ---------------------------------------------------------------------------
# Hub digraph strategies


def _group_untouched(info: HtbInfo, nv: int, i: int, maker: int, breaker: int) -> bool:
    hub_bit = 1 << info.hubs[i]
    if (maker | breaker) & hub_bit:
        return False
    return all(not c.element_mask(nv) & breaker for c in info.groups[i - 1])


@dataclass(frozen=True)
class _HtbMakerMem:
    group: Optional[int]
    node: Optional[GtbNode]


def make_maker_htb(t: int, b: int) -> Strategy:
    digraph, info = build_htb_indexed(t, b)
    nv = digraph.nv

    def next_move(spec: GameSpec, state: GameState, mem: _HtbMakerMem):
        free = free_mask(spec, state)
        if not state.maker & 1:  # hub 0 first
            if free & 1:
                return Move(MoveKind.CLAIM, 1), mem
            return _fallback(spec, state), mem
        if mem.group is None:
            for i in range(1, b + 2):
                if _group_untouched(info, nv, i, state.maker, state.breaker):
                    return Move(MoveKind.CLAIM, 1 << info.hubs[i]), _HtbMakerMem(i, None)
            return _fallback(spec, state), mem
        if mem.node is None:
            copies = [
                c
                for c in info.groups[mem.group - 1]
                if not c.element_mask(nv) & state.breaker
            ]
            if not copies:
                return _fallback(spec, state), mem
            mem = _HtbMakerMem(mem.group, copies[0])
        bit, node = _gtb_step(nv, mem.node, state.maker, state.breaker)
        if not bit & free:
            return _fallback(spec, state), mem
        return Move(MoveKind.CLAIM, bit), _HtbMakerMem(mem.group, node)

    return Strategy("maker-htb", Player.MAKER, next_move, _HtbMakerMem(None, None))


def _copy_map(info: HtbInfo, nv: int) -> tuple[dict[int, int], list[GtbNode], list[int]]:
    """vertex -> flat copy id, flat copy list, and the sink hub per copy."""
    vmap: dict[int, int] = {}
    copies: list[GtbNode] = []
    sinks: list[int] = []
    for gi, group in enumerate(info.groups, start=1):
        for c in group:
            cid = len(copies)
            copies.append(c)
            sinks.append(info.hubs[gi])
            for v in c.inner_vertices:
                vmap[v] = cid
    return vmap, copies, sinks


def _copy_owned_vertices(copy: GtbNode, sink: int, maker: int, pretend_hubs: bool, start_owned: bool) -> list[int]:
    owned = [v for v in copy.inner_vertices if maker & (1 << v)]
    if start_owned:
        owned.append(copy.start)
    if pretend_hubs or maker & (1 << sink):
        owned.append(sink)
    return sorted(owned)


def make_breaker_htb_premove(t: int, b: int) -> Strategy:
    digraph, info = build_htb_indexed(t, b)
    nv = digraph.nv
    vmap, copies, sinks = _copy_map(info, nv)

    def next_move(spec: GameSpec, state: GameState, mem: _PrevMem):
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        reach, out_arcs, _ = _digraph_tables(board)
        free = free_mask(spec, state)
        if state.breaker == 0:
            want = 1 if free & 1 else 0  # hub 0 as the single opening element
            return _claim_exact(spec, state, want), _PrevMem(state.maker)
        new = state.maker & ~mem.prev_maker
        new_v = None
        for bit in iter_bits(new):
            idx = bit.bit_length() - 1
            if idx < board.nv:
                new_v = idx
        want = 0
        if new_v is not None and new_v in vmap:
            cid = vmap[new_v]
            copy = copies[cid]
            owned = _copy_owned_vertices(copy, sinks[cid], state.maker, True, False)
            cmask = copy.element_mask(nv)
            target = _block_target(reach, out_arcs, free & cmask, owned, new_v)
            if target is not None:
                want = _free_out(out_arcs, free & cmask, target)
        return _claim_exact(spec, state, want), _PrevMem(state.maker)

    return Strategy("breaker-htb-premove", Player.BREAKER, next_move, _PrevMem(0))


@dataclass(frozen=True)
class _HtbSlowMem:
    prev_maker: int
    mode: str  # start | blockall | wait2 | slowall | mixed
    blocked_copy: int
    counters: tuple[tuple[int, int], ...]  # (copy id, responses so far)

    def count_for(self, cid: int) -> int:
        for c, k in self.counters:
            if c == cid:
                return k
        return 0

    def bump(self, cid: int) -> "_HtbSlowMem":
        found = False
        out = []
        for c, k in self.counters:
            if c == cid:
                out.append((c, k + 1))
                found = True
            else:
                out.append((c, k))
        if not found:
            out.append((cid, 1))
        return replace(self, counters=tuple(out))


def make_breaker_htb_slow(t: int, b: int) -> Strategy:
    digraph, info = build_htb_indexed(t, b)
    nv = digraph.nv
    vmap, copies, sinks = _copy_map(info, nv)
    hub_bits = 0
    for h in info.hubs:
        hub_bits |= 1 << h

    def respond_in_copy(spec, state, mem, new_v, free, mode_block: bool, start_owned: bool):
        board: RootedDigraph = spec.board  # type: ignore[assignment]
        reach, out_arcs, dist = _digraph_tables(board)
        cid = vmap[new_v]
        copy = copies[cid]
        cmask = copy.element_mask(nv)
        owned = _copy_owned_vertices(copy, sinks[cid], state.maker, True, start_owned)
        cfree = free & cmask
        if mode_block:
            target = _block_target(reach, out_arcs, cfree, owned, new_v)
            mem2 = mem
        else:
            mem2 = mem.bump(cid)
            target = _slow_target(
                reach, dist, out_arcs, cfree, owned, new_v, t - 2, mem2.count_for(cid)
            )
        want = _free_out(out_arcs, cfree, target) if target is not None else 0
        return want, mem2

    def next_move(spec: GameSpec, state: GameState, mem: _HtbSlowMem):
        free = free_mask(spec, state)
        new = state.maker & ~mem.prev_maker
        new_v = None
        for bit in iter_bits(new):
            idx = bit.bit_length() - 1
            if idx < nv:
                new_v = idx
        want = 0
        mode = mem.mode
        if mode == "start":
            if not state.maker & 1:
                want = 1  # she skipped hub 0: claim it and block her everywhere
                mode = "blockall"
            else:
                mode = "wait2"  # skip: arbitrary claims, pretend nothing happened
        elif mode == "wait2":
            if new_v is not None and (1 << new_v) & hub_bits:
                mode = "slowall"  # second skip, then distance-gated blocking all over
            elif new_v is not None and new_v in vmap:
                mode = "mixed"
                mem = replace(mem, blocked_copy=vmap[new_v])
                want, mem = respond_in_copy(spec, state, mem, new_v, free, True, True)
        elif mode == "blockall":
            # hub 0 is the breaker's own opening claim here
            if new_v is not None and new_v in vmap:
                want, mem = respond_in_copy(spec, state, mem, new_v, free, True, False)
            else:
                board: RootedDigraph = spec.board  # type: ignore[assignment]
                reach, out_arcs, _ = _digraph_tables(board)
                owned = _maker_vertices(board, state.maker)
                target = _block_target(reach, out_arcs, free, owned, new_v)
                if target is not None:
                    want = _free_out(out_arcs, free, target)
        elif mode == "slowall":
            if new_v is not None and new_v in vmap:
                want, mem = respond_in_copy(spec, state, mem, new_v, free, False, True)
        elif mode == "mixed":
            if new_v is not None and new_v in vmap:
                use_block = vmap[new_v] == mem.blocked_copy
                want, mem = respond_in_copy(spec, state, mem, new_v, free, use_block, True)
        move = _claim_exact(spec, state, want)
        return move, replace(mem, prev_maker=state.maker, mode=mode)

    return Strategy(
        "breaker-htb-slow",
        Player.BREAKER,
        next_move,
        _HtbSlowMem(0, "start", -1, ()),
    )


# ---------------------------------------------------------------------------
# Fair-bias block strategies


def make_maker_nonmonotone(blocked: frozenset[int] | set[int], bias: int) -> Strategy:
    _, blocks = nonmonotone_blocks(blocked)

    def next_move(spec: GameSpec, state: GameState, mem):
        free = free_mask(spec, state)
        size = min(spec.maker_bias, free.bit_count())
        claim = 0
        if state.maker == 0:
            for blk in blocks[: spec.maker_bias]:
                pick = blk & free
                if pick:
                    claim |= pick & -pick
        else:
            for blk in blocks:  # answer every newly threatened uncovered block
                if claim.bit_count() >= size:
                    break
                if blk & state.maker or not blk & state.breaker:
                    continue
                pick = blk & free
                if pick:
                    claim |= pick & -pick
            for blk in blocks:  # then make progress on untouched blocks
                if claim.bit_count() >= size:
                    break
                if blk & (state.maker | claim):
                    continue
                pick = blk & free & ~claim
                if pick:
                    claim |= pick & -pick
        return _claim_exact(spec, state, claim), mem

    return Strategy("maker-nonmonotone", Player.MAKER, next_move)


def make_breaker_nonmonotone(blocked: frozenset[int] | set[int], bias: int) -> Strategy:
    _, blocks = nonmonotone_blocks(blocked)

    def next_move(spec: GameSpec, state: GameState, mem):
        free = free_mask(spec, state)
        want = 0
        for blk in blocks:
            if (
                blk.bit_count() <= spec.breaker_bias
                and not blk & state.maker
                and blk & free == blk
            ):
                want = blk
                break
        return _claim_exact(spec, state, want), mem

    return Strategy("breaker-nonmonotone", Player.BREAKER, next_move)


def make_breaker_pairing(pairs: tuple[int, ...]) -> Strategy:
    def next_move(spec: GameSpec, state: GameState, mem):
        free = free_mask(spec, state)
        want = 0
        for p in pairs:
            if p & state.maker and not p & state.breaker:
                want |= p & free
        return _claim_exact(spec, state, want), mem

    return Strategy("breaker-pairing", Player.BREAKER, next_move)


# ---------------------------------------------------------------------------
# Cycle and tree offer strategies


@dataclass(frozen=True)
class _WaiterCycleMem:
    perm: Optional[tuple[int, ...]]  # canonical position -> vertex
    next_start: int


def make_waiter_cycle(n: int) -> Strategy:
    if n < 3:
        raise PosgamesError("cycles need at least 3 vertices")

    def next_move(spec: GameSpec, state: GameState, mem: _WaiterCycleMem):
        free = free_mask(spec, state)
        if mem.perm is None:
            if state.maker == 0 and state.breaker == 0:
                return Move(MoveKind.OFFER, (1 << (n - 2)) | (1 << (n - 1))), mem
            if state.maker & (1 << (n - 2)):
                perm = tuple(range(n))
            else:
                perm = tuple((2 * n - 3 - j) % n for j in range(n))
            mem = _WaiterCycleMem(perm, 0)
        k = n - 2 if (n - 2) % 2 == 0 else n - 3
        if mem.next_start + 1 < k:
            a = mem.perm[mem.next_start]
            c = mem.perm[mem.next_start + 1]
            offer = (1 << a) | (1 << c)
            if offer & free == offer:
                return Move(MoveKind.OFFER, offer), _WaiterCycleMem(mem.perm, mem.next_start + 2)
        return _fallback(spec, state), mem

    return Strategy("waiter-cycle", Player.MAKER, next_move, _WaiterCycleMem(None, 0))


@dataclass(frozen=True)
class _ClientCycleMem:
    case: Optional[str]
    origin: int
    direction: int

    def canon(self, v: int, n: int) -> int:
        return (self.direction * (v - self.origin)) % n

    def actual(self, c: int, n: int) -> int:
        return (self.origin + self.direction * c) % n


def make_client_cycle(n: int) -> Strategy:
    if n < 6:
        raise PosgamesError("the client script needs at least 6 vertices")
    half = n // 2

    def keep(bit: int, mem) -> tuple[Move, Any]:
        return Move(MoveKind.KEEP, bit), mem

    def next_move(spec: GameSpec, state: GameState, mem: _ClientCycleMem):
        offer = state.pending_offer
        pair = [b.bit_length() - 1 for b in iter_bits(offer)]
        if mem.case is None:
            if len(pair) < 2:
                return keep(offer & -offer, mem)
            a, c = pair
            d = min((a - c) % n, (c - a) % n)
            if d == 1:
                origin = a if (c - a) % n == 1 else c
                mem = _ClientCycleMem("adjacent", origin, 1)
                # keep the second vertex of the adjacent pair
                return keep(1 << mem.actual(1, n), mem)
            origin = a if (c - a) % n <= half else c
            mem = _ClientCycleMem("nonadjacent", origin, 1)
            return keep(1 << origin, mem)
        if len(pair) < 2:
            return keep(offer & -offer, mem)
        canon = sorted(mem.canon(v, n) for v in pair)
        if mem.case == "adjacent":
            c0, c1 = canon
            if c1 == c0 + 1 and c0 % 2 == 0 and c1 <= 2 * (half - 1) - 1:
                return keep(1 << mem.actual(c1, n), mem)
            return keep(1 << mem.actual(c0, n), mem)
        # nonadjacent case: guard the two neighbours of the kept corner,
        # and the far endpoint when it shows up alone
        cset = set(canon)
        if 1 in cset and n - 1 in cset:
            return keep(1 << mem.actual(n - 1, n), mem)
        for c in (1, n - 1, n - 2):
            if c in cset:
                return keep(1 << mem.actual(c, n), mem)
        return keep(1 << mem.actual(canon[0], n), mem)

    return Strategy("client-cycle", Player.BREAKER, next_move, _ClientCycleMem(None, 0, 1))


@dataclass(frozen=True)
class _WaiterTreeMem:
    index: int


def make_waiter_tree(tree) -> Strategy:
    if wc_tree_value(tree) is None:
        raise PosgamesError("the tree offer script needs a perfect matching")
    rep = residue(tree)
    pairs = [p for p in rep.removed_pairs]
    pairs.append((rep.kept[0], rep.kept[1]))

    def next_move(spec: GameSpec, state: GameState, mem: _WaiterTreeMem):
        free = free_mask(spec, state)
        if mem.index < len(pairs):
            v, w = pairs[mem.index]
            offer = (1 << v) | (1 << w)
            if offer & free == offer:
                return Move(MoveKind.OFFER, offer), _WaiterTreeMem(mem.index + 1)
        return _fallback(spec, state), mem

    return Strategy("waiter-tree", Player.MAKER, next_move, _WaiterTreeMem(0))


# ---------------------------------------------------------------------------
# Uniform-hypergraph maker: the hub script lifted through associated sets


@dataclass(frozen=True)
class _HmbstMem:
    copy: Optional[int]
    inner: Any


def _hmbst_move(info: MbstInfo, maker: int, breaker: int, mem: _HmbstMem):
    """Claim mask (un-padded) plus memory, recursing through nested levels."""
    if info.htb is not None:
        digraph = info.digraph
        nv = digraph.nv
        aux_maker = 0
        aux_breaker = 0
        for x in range(nv):
            vs = info.vertex_sets[x]
            if vs & ~maker == 0:
                aux_maker |= 1 << x
            if vs & breaker:
                aux_breaker |= 1 << x
        for j, em in enumerate(info.arc_edges):
            u, v = digraph.arcs[j]
            extras = em & ~(info.vertex_sets[u] | info.vertex_sets[v])
            if extras & breaker:
                aux_breaker |= 1 << (nv + j)
        hmem: _HtbMakerMem = mem.inner or _HtbMakerMem(None, None)
        hinfo = info.htb
        if not aux_maker & 1:
            return info.vertex_sets[0], _HmbstMem(None, hmem)
        if hmem.group is None:
            for i in range(1, info.b + 2):
                if _group_untouched(hinfo, nv, i, aux_maker, aux_breaker):
                    hub = hinfo.hubs[i]
                    return info.vertex_sets[hub], _HmbstMem(None, _HtbMakerMem(i, None))
            return 0, mem
        if hmem.node is None:
            copies = [
                c
                for c in hinfo.groups[hmem.group - 1]
                if not c.element_mask(nv) & aux_breaker
            ]
            if not copies:
                return 0, mem
            hmem = _HtbMakerMem(hmem.group, copies[0])
        bit, node = _gtb_step(nv, hmem.node, aux_maker, aux_breaker)
        idx = bit.bit_length() - 1
        hmem = _HtbMakerMem(hmem.group, node)
        if idx < nv:
            return info.vertex_sets[idx], _HmbstMem(None, hmem)
        edge = info.arc_edges[idx - nv]
        return edge & ~maker, _HmbstMem(None, hmem)

    # nested form
    if info.shared & ~maker:
        return info.shared, mem
    width = info.copies[0].n
    if mem.copy is None:
        chosen = None
        for i, off in enumerate(info.copy_offsets):
            cmask = ((1 << width) - 1) << off
            if not cmask & breaker:
                chosen = i
                break
        if chosen is None:
            return 0, mem
        mem = _HmbstMem(chosen, _HmbstMem(None, None))
    off = info.copy_offsets[mem.copy]
    inner_info = info.copies[mem.copy]
    inner_claim, inner_mem = _hmbst_move(
        inner_info, (maker >> off) & ((1 << width) - 1), (breaker >> off) & ((1 << width) - 1),
        mem.inner,
    )
    return inner_claim << off, _HmbstMem(mem.copy, inner_mem)


def make_maker_hmbst(m: int, b: int, s: int, t: int) -> Strategy:
    _h, _fam, info = build_hmbst_indexed(m, b, s, t)

    def next_move(spec: GameSpec, state: GameState, mem: _HmbstMem):
        claim, mem2 = _hmbst_move(info, state.maker, state.breaker, mem)
        if claim == 0:
            return _fallback(spec, state), mem
        return _claim_exact(spec, state, claim), mem2

    return Strategy("maker-hmbst", Player.MAKER, next_move, _HmbstMem(None, None))


# ---------------------------------------------------------------------------
# Domination lift: play a hypergraph strategy inside the gadget's core clique


@dataclass(frozen=True)
class _LiftMem:
    inner: Any


def make_dominator_lift(inner: Strategy, inner_spec: GameSpec) -> Strategy:
    core: Hypergraph = inner_spec.board  # type: ignore[assignment]
    core_mask = (1 << core.n) - 1

    def next_move(spec: GameSpec, state: GameState, mem: _LiftMem):
        inner_state = GameState(
            maker=state.maker & core_mask,
            breaker=state.breaker & core_mask,
            to_move=state.to_move,
            maker_moves_used=state.maker_moves_used,
        )
        free = free_mask(spec, state)
        if free & core_mask:
            mv, inner_mem = inner.next_move(inner_spec, inner_state, mem.inner)
            want = mv.elements & free
        else:
            want, inner_mem = 0, mem.inner
        # pad outside the core first so the inner view stays undisturbed
        size = min(spec.maker_bias, free.bit_count())
        claim = _pad(want, size, free & ~core_mask)
        claim = _pad(claim, size, free)
        return Move(MoveKind.CLAIM, claim), _LiftMem(inner_mem)

    return Strategy("dominator-lift", Player.MAKER, next_move, _LiftMem(inner.initial_memory))


# ---------------------------------------------------------------------------
# Catalog


@dataclass(frozen=True)
class CatalogEntry:
    factory: Callable[..., Strategy]
    params: tuple[str, ...]
    smallest: Callable[[], tuple[GameSpec, Strategy, Guarantee]]


def _aux_spec(board: RootedDigraph, b: int, preclaimed: int, premove: bool = False) -> GameSpec:
    return GameSpec(
        GameKind.AUX_EDGE,
        board,
        maker_bias=1,
        breaker_bias=b,
        preclaimed_maker=preclaimed,
        breaker_premove=premove,
    )


def _smallest_maker_gtb():
    t, b = 2, 1
    board = build_gtb_indexed(t, b)[0]
    spec = _aux_spec(board, b, (1 << board.start) | (1 << board.end))
    return spec, make_maker_gtb(t, b), win_within(t)


def _smallest_breaker_gtb_block():
    t, b = 2, 1
    board = build_gtb_indexed(t, b)[0]
    spec = _aux_spec(board, b, 1 << board.start)
    return spec, make_breaker_gtb_block(b), never_loses()


def _smallest_breaker_gtb_slow():
    t, b = 2, 1
    board = build_gtb_indexed(t, b)[0]
    spec = _aux_spec(board, b, (1 << board.start) | (1 << board.end))
    return spec, make_breaker_gtb_slow(t, b), opponent_not_within(t - 1)


def _smallest_maker_htb():
    t, b = 3, 1
    board = build_htb_indexed(t, b)[0]
    return _aux_spec(board, b, 0), make_maker_htb(t, b), win_within(t)


def _smallest_breaker_htb_premove():
    t, b = 3, 1
    board = build_htb_indexed(t, b)[0]
    spec = _aux_spec(board, b, 0, premove=True)
    return spec, make_breaker_htb_premove(t, b), never_loses()


def _smallest_breaker_htb_slow():
    t, b = 3, 1
    board = build_htb_indexed(t, b)[0]
    return _aux_spec(board, b, 0), make_breaker_htb_slow(t, b), opponent_not_within(t - 1)


def _smallest_maker_nonmonotone():
    blocked, bias = frozenset({1}), 2
    h = nonmonotone_blocks(blocked)[0]
    spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=bias, breaker_bias=bias)
    return spec, make_maker_nonmonotone(blocked, bias), win_within(1)


def _smallest_breaker_nonmonotone():
    blocked, bias = frozenset({1}), 1
    h = nonmonotone_blocks(blocked)[0]
    spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=bias, breaker_bias=bias)
    return spec, make_breaker_nonmonotone(blocked, bias), never_loses()


def _smallest_breaker_pairing():
    h, pairs = build_ht_wc_indexed(3)
    spec = GameSpec(GameKind.MAKER_BREAKER, h)
    return spec, make_breaker_pairing(pairs), never_loses()


def _smallest_waiter_cycle():
    n = 3
    h = minimal_dominating_sets(cycle_graph(n))
    spec = GameSpec(GameKind.WAITER_CLIENT, h)
    return spec, make_waiter_cycle(n), win_within(n // 2)


def _smallest_client_cycle():
    n = 6
    h = minimal_dominating_sets(cycle_graph(n))
    spec = GameSpec(GameKind.WAITER_CLIENT, h)
    return spec, make_client_cycle(n), opponent_not_within(n // 2 - 1)


def _smallest_waiter_tree():
    tree = path_graph(2)
    h = minimal_dominating_sets(tree)
    spec = GameSpec(GameKind.WAITER_CLIENT, h)
    return spec, make_waiter_tree(tree), win_within(1)


def _smallest_maker_hmbst():
    m, b, s, t = 1, 1, 3, 3
    h, _fam, _info = build_hmbst_indexed(m, b, s, t)
    spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=m, breaker_bias=b)
    return spec, make_maker_hmbst(m, b, s, t), win_within(t)


def _smallest_dominator_lift():
    blocked, bias = frozenset({1}), 2
    core = nonmonotone_blocks(blocked)[0]
    inner_spec = GameSpec(GameKind.MAKER_BREAKER, core, maker_bias=bias, breaker_bias=bias)
    inner = make_maker_nonmonotone(blocked, bias)
    gadget = build_gadget(core, bias)
    h = minimal_dominating_sets(gadget)
    spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=bias, breaker_bias=bias)
    return spec, make_dominator_lift(inner, inner_spec), win_within(1)


CATALOG: dict[str, CatalogEntry] = {
    "maker-gtb": CatalogEntry(make_maker_gtb, ("t", "b"), _smallest_maker_gtb),
    "breaker-gtb-block": CatalogEntry(
        make_breaker_gtb_block, ("b",), _smallest_breaker_gtb_block
    ),
    "breaker-gtb-slow": CatalogEntry(
        make_breaker_gtb_slow, ("t", "b"), _smallest_breaker_gtb_slow
    ),
    "maker-htb": CatalogEntry(make_maker_htb, ("t", "b"), _smallest_maker_htb),
    "breaker-htb-premove": CatalogEntry(
        make_breaker_htb_premove, ("t", "b"), _smallest_breaker_htb_premove
    ),
    "breaker-htb-slow": CatalogEntry(
        make_breaker_htb_slow, ("t", "b"), _smallest_breaker_htb_slow
    ),
    "maker-nonmonotone": CatalogEntry(
        make_maker_nonmonotone, ("blocked", "bias"), _smallest_maker_nonmonotone
    ),
    "breaker-nonmonotone": CatalogEntry(
        make_breaker_nonmonotone, ("blocked", "bias"), _smallest_breaker_nonmonotone
    ),
    "breaker-pairing": CatalogEntry(
        make_breaker_pairing, ("pairs",), _smallest_breaker_pairing
    ),
    "waiter-cycle": CatalogEntry(make_waiter_cycle, ("n",), _smallest_waiter_cycle),
    "client-cycle": CatalogEntry(make_client_cycle, ("n",), _smallest_client_cycle),
    "waiter-tree": CatalogEntry(make_waiter_tree, ("tree",), _smallest_waiter_tree),
    "maker-hmbst": CatalogEntry(
        make_maker_hmbst, ("m", "b", "s", "t"), _smallest_maker_hmbst
    ),
    "dominator-lift": CatalogEntry(
        make_dominator_lift, ("inner", "inner_spec"), _smallest_dominator_lift
    ),
}


def get_strategy(name: str, **params) -> Strategy:
    entry = CATALOG.get(name)
    if entry is None:
        raise PosgamesError(f"unknown strategy {name!r}")
    missing = [p for p in entry.params if p not in params]
    extra = [p for p in params if p not in entry.params]
    if missing or extra:
        raise PosgamesError(
            f"strategy {name!r} takes parameters {entry.params}, "
            f"missing {missing}, unexpected {extra}"
        )
    return entry.factory(**params)


def smallest_instance(name: str) -> tuple[GameSpec, Strategy, Guarantee]:
    entry = CATALOG.get(name)
    if entry is None:
        raise PosgamesError(f"unknown strategy {name!r}")
    return entry.smallest()
