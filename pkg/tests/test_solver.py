from itertools import combinations

import pytest

from conftest import naive_decide, random_hypergraph_masks
from posgames.boards import digraph_new, hypergraph_new, minimalize
from posgames.constructions import build_gtb, build_hmbst, build_ht_wc
from posgames.engine import GameKind, GameSpec, Player
from posgames.errors import GuardExceeded, RestrictionError
from posgames.solver import (
    MoveRestriction,
    Objective,
    SolverSettings,
    decide_mb,
    decide_wc,
    game_values,
    solve_aux_game,
    validate_restriction,
    wc_game_values,
)


class TestDecideMB:
    def test_lone_singleton(self):
        h = hypergraph_new(2, [[0]])
        assert decide_mb(h, 1, 1, Player.MAKER, Objective(1, 1))

    def test_uniform_board_values(self):
        h, _fam = build_hmbst(1, 1, 3, 3)
        assert decide_mb(h, 1, 1, Player.MAKER, Objective(3, 3))
        assert not decide_mb(h, 1, 1, Player.MAKER, Objective(2, 3))
        assert not decide_mb(h, 1, 1, Player.BREAKER, Objective())

    def test_zero_round_budget_is_false(self):
        h = hypergraph_new(2, [[0]])
        assert not decide_mb(h, 1, 1, Player.MAKER, Objective(max_rounds=0))

    def test_empty_family_is_false(self):
        assert not decide_mb(hypergraph_new(3, []), 1, 1)


class TestDecideWC:
    def test_lone_element_goes_to_client(self):
        assert not decide_wc(hypergraph_new(1, [[0]]))

    def test_single_pair_board(self):
        # the one possible offer hands the waiter only one of the two elements
        assert not decide_wc(hypergraph_new(2, [[0, 1]]))

    def test_paired_board_needs_three_rounds(self):
        h = build_ht_wc(3)
        assert decide_wc(h, Objective(max_rounds=3, max_size=2))
        assert not decide_wc(h, Objective(max_rounds=2, max_size=2))


class TestAuxGame:
    def test_base_board(self):
        board = build_gtb(1, 1)
        seeds = (1 << board.start) | (1 << board.end)
        assert solve_aux_game(board, 1, seeds, Objective(max_rounds=1))

    def test_two_level_board(self):
        board = build_gtb(2, 2)
        seeds = (1 << board.start) | (1 << board.end)
        assert solve_aux_game(board, 2, seeds, Objective(max_rounds=2))
        assert not solve_aux_game(board, 2, seeds, Objective(max_rounds=1))

    def test_single_seed_always_loses(self):
        board = build_gtb(2, 2)
        for v in range(board.nv):
            assert not solve_aux_game(board, 2, 1 << v)


class TestGameValues:
    def test_complete_three_uniform(self):
        h = hypergraph_new(6, [list(c) for c in combinations(range(6), 3)])
        values = game_values(h, 1, 1)
        assert (values.min_rounds, values.min_size) == (3, 3)

    def test_nonmonotone_outcomes(self):
        from posgames.constructions import build_nonmonotone

        h = build_nonmonotone({2})
        assert decide_mb(h, 1, 1, Player.MAKER)
        assert not decide_mb(h, 2, 2, Player.MAKER)
        assert decide_mb(h, 3, 3, Player.MAKER)

    def test_loss_has_null_values(self):
        h = hypergraph_new(2, [[0, 1]])
        values = game_values(h, 1, 1)
        assert values == type(values)(False, None, None, ())

    def test_frontier_trades_rounds_for_size(self):
        # a quick big win and a slow small win on separate components
        from posgames.boards import disjoint_union

        fast = hypergraph_new(2, [[0, 1]])  # size 2, one round at bias 2
        slow = hypergraph_new(1, [[0]])
        h = disjoint_union(fast, slow)
        values = game_values(h, 2, 1)
        assert values.min_rounds == 1
        assert values.min_size == 1
        assert values.frontier == ((1, 1),)

    def test_frontier_is_an_antichain(self, rng):
        for _ in range(50):
            h = random_hypergraph_masks(rng.randint(2, 7), 4, rng)
            values = game_values(h, 1, 1)
            front = values.frontier
            for a, b in combinations(front, 2):
                assert not (a[0] <= b[0] and a[1] <= b[1])
                assert not (b[0] <= a[0] and b[1] <= a[1])
            if values.maker_wins:
                assert front[0][0] == values.min_rounds
                assert front[-1][1] == values.min_size

    def test_wc_values_on_pair_family(self):
        values = wc_game_values(build_ht_wc(3))
        assert values.min_rounds == 3
        assert values.min_size == 2

    def test_two_point_frontier_on_composite_board(self):
        # one component yields size 4 within 4 rounds, the other size 3 only
        # within 5: fastest play and smallest claimed set genuinely diverge
        from posgames.constructions import build_thm16

        h = build_thm16(1, 1, 3, 4, 4, 5)
        values = game_values(h, 1, 1, Player.MAKER)
        assert values.min_rounds == 4
        assert values.min_size == 3
        assert values.frontier == ((4, 4), (5, 3))


class TestAgainstNaiveSolver:
    """The pruned searches must agree with plain engine-driven recursion."""

    def test_maker_breaker_bounded_and_unbounded(self, rng):
        for _ in range(120):
            n = rng.randint(1, 5)
            h = random_hypergraph_masks(n, 4, rng)
            m = rng.randint(1, 2)
            b = rng.randint(1, 2)
            first = rng.choice((Player.MAKER, Player.BREAKER))
            t = rng.choice((None, rng.randint(0, 4)))
            s = rng.choice((None, rng.randint(1, n)))
            spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=m, breaker_bias=b, first=first)
            expected = naive_decide(spec, t, s)
            got = decide_mb(h, m, b, first, Objective(t, s))
            assert got == expected, (h.edge_indices(), m, b, first, t, s)

    def test_waiter_client(self, rng):
        for _ in range(80):
            n = rng.randint(1, 5)
            h = random_hypergraph_masks(n, 4, rng)
            t = rng.choice((None, rng.randint(0, 3)))
            s = rng.choice((None, rng.randint(1, n)))
            spec = GameSpec(GameKind.WAITER_CLIENT, h)
            expected = naive_decide(spec, t, s)
            got = decide_wc(h, Objective(t, s))
            assert got == expected, (h.edge_indices(), t, s)

    def test_aux_game(self, rng):
        for _ in range(80):
            nv = rng.randint(2, 4)
            arcs = [
                (rng.randrange(nv), rng.randrange(nv))
                for _ in range(rng.randint(1, 3))
            ]
            arcs = [(u, v) for u, v in arcs if u != v] or [(0, 1)]
            board = digraph_new(nv, arcs, start=0)
            b = rng.randint(1, 2)
            seeds = rng.getrandbits(nv)
            t = rng.choice((None, rng.randint(0, 4)))
            premove = rng.random() < 0.4
            spec = GameSpec(
                GameKind.AUX_EDGE, board, breaker_bias=b,
                preclaimed_maker=seeds, breaker_premove=premove,
            )
            expected = naive_decide(spec, t, None)
            got = solve_aux_game(
                board, b, seeds, Objective(max_rounds=t), breaker_premove=premove
            )
            assert got == expected, (arcs, b, seeds, t, premove)


class TestSolverInvariants:
    def test_bias_monotonicity(self, rng):
        for _ in range(120):
            h = random_hypergraph_masks(rng.randint(2, 8), 4, rng)
            m, b = rng.randint(1, 2), rng.randint(1, 2)
            first = rng.choice((Player.MAKER, Player.BREAKER))
            if decide_mb(h, m, b, first):
                assert decide_mb(h, m + 1, b, first)
            else:
                assert not decide_mb(h, m, b + 1, first)

    def test_objective_monotonicity(self, rng):
        for _ in range(120):
            n = rng.randint(2, 8)
            h = random_hypergraph_masks(n, 4, rng)
            t, s = rng.randint(1, n), rng.randint(1, n)
            first = rng.choice((Player.MAKER, Player.BREAKER))
            if decide_mb(h, 1, 1, first, Objective(t, s)):
                assert decide_mb(h, 1, 1, first, Objective(t + 1, s))
                assert decide_mb(h, 1, 1, first, Objective(t, s + 1))

    def test_first_mover_advantage(self, rng):
        for _ in range(120):
            h = random_hypergraph_masks(rng.randint(2, 8), 4, rng)
            if decide_mb(h, 1, 1, Player.BREAKER):
                assert decide_mb(h, 1, 1, Player.MAKER)

    def test_minimalization_soundness(self, rng):
        for _ in range(100):
            h = random_hypergraph_masks(rng.randint(2, 8), 5, rng)
            assert game_values(h, 1, 1) == game_values(minimalize(h), 1, 1)

    def test_memo_transparency(self, rng):
        plain = SolverSettings(use_memo=False)
        for _ in range(100):
            n = rng.randint(2, 6)
            h = random_hypergraph_masks(n, 3, rng)
            t = rng.randint(1, n)
            first = rng.choice((Player.MAKER, Player.BREAKER))
            assert decide_mb(h, 1, 1, first, Objective(max_rounds=t)) == decide_mb(
                h, 1, 1, first, Objective(max_rounds=t), settings=plain
            )

    def test_memo_cap_guard_is_loud(self):
        h, _fam = build_hmbst(1, 1, 3, 3)
        with pytest.raises(GuardExceeded):
            decide_mb(h, 1, 1, settings=SolverSettings(memo_cap=2))

    def test_memo_cap_env_override(self, monkeypatch):
        h, _fam = build_hmbst(1, 1, 3, 3)
        monkeypatch.setenv("POSGAMES_MEMO_CAP", "2")
        with pytest.raises(GuardExceeded):
            decide_mb(h, 1, 1)
        # an explicit setting wins over the environment
        assert decide_mb(h, 1, 1, settings=SolverSettings(memo_cap=1 << 20))


class TestMoveRestriction:
    def family(self):
        h, fam = build_hmbst(1, 1, 3, 3)
        return h, MoveRestriction(fam.sets)

    def test_restriction_preserves_values(self):
        h, restriction = self.family()
        for t in (2, 3):
            for first in (Player.MAKER, Player.BREAKER):
                free = decide_mb(h, 1, 1, first, Objective(t, 3))
                reduced = decide_mb(h, 1, 1, first, Objective(t, 3), restriction)
                assert free == reduced

    def test_rejects_oversized_sets(self):
        h = hypergraph_new(4, [[0, 1, 2]])
        with pytest.raises(RestrictionError):
            validate_restriction(h, 1, MoveRestriction((0b11,)))

    def test_rejects_overlapping_sets(self):
        h = hypergraph_new(4, [[0, 1, 2]])
        with pytest.raises(RestrictionError):
            validate_restriction(h, 1, MoveRestriction((0b01, 0b01)))

    def test_rejects_straddling_edges(self):
        h = hypergraph_new(4, [[1, 2, 3]])
        # {0,1} meets the edge without being contained in it
        with pytest.raises(RestrictionError):
            validate_restriction(h, 2, MoveRestriction((0b0011,)))

    def test_rejects_shared_outside_elements(self):
        h = hypergraph_new(4, [[0, 1], [1, 2]])
        # element 1 is outside the family and lies in two edges
        with pytest.raises(RestrictionError):
            validate_restriction(h, 1, MoveRestriction((0b1000,)))

    def test_parallel_root_split_matches(self, rng):
        for _ in range(20):
            h = random_hypergraph_masks(rng.randint(2, 6), 4, rng)
            first = rng.choice((Player.MAKER, Player.BREAKER))
            single = decide_mb(h, 1, 1, first)
            forked = decide_mb(h, 1, 1, first, settings=SolverSettings(jobs=2))
            assert single == forked
