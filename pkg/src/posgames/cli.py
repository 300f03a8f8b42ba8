"""Command-line front end.

Exit codes: 0 success / claim holds; 1 claim violated (counterexample JSON on
stdout); 2 usage error; 3 resource-guard abort.  Results are JSON on stdout
(CSV for tabular output with --format csv).  A run manifest (command line,
input digests, version, seed, wall time, result) can be written with
--manifest; identical inputs reproduce identical result payloads in the
default single-actor mode.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from typing import Optional

from . import __version__
from .boards import from_json, to_json
from .constructions import (
    build_complete_uniform,
    build_gadget,
    build_gtb,
    build_hmbst,
    build_htb,
    build_ht_wc,
    build_ht_wc_indexed,
    build_nonmonotone,
    build_thm12,
    build_thm14,
    build_thm15,
    build_thm16,
    build_wc_gap_case1,
)
from .domination import (
    dom_game_values,
    dom_wc_values,
    domination_number,
    minimal_dominating_sets,
    residue,
    wc_cycle_value,
    wc_tree_value,
)
from .engine import GameKind, GameSpec, Player
from .errors import FormatError, GuardExceeded, PosgamesError
from .graphgen import cycle_graph, path_graph
from .solver import (
    MoveRestriction,
    Objective,
    SolverSettings,
    decide_mb,
    decide_wc,
    game_values,
    solve_aux_game,
    wc_game_values,
)
from .strategies import (
    get_strategy,
    make_breaker_pairing,
    make_waiter_tree,
    never_loses,
    opponent_not_within,
    smallest_instance,
    verify_strategy,
    win_within,
)
from . import suites as suites_mod

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


class _Run:
    """Collects inputs and the result payload for the manifest."""

    def __init__(self, argv: list[str]):
        self.argv = argv
        self.inputs: dict[str, str] = {}
        self.seed: Optional[int] = None
        self.t0 = time.time()

    def read_board(self, path: str):
        with open(path, "rb") as fh:
            raw = fh.read()
        self.inputs[path] = hashlib.sha256(raw).hexdigest()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
        return from_json(doc)

    def read_family(self, path: str) -> MoveRestriction:
        with open(path, "rb") as fh:
            raw = fh.read()
        self.inputs[path] = hashlib.sha256(raw).hexdigest()
        doc = json.loads(raw)
        if doc.get("type") != "family":
            raise FormatError(f"{path}: expected a family document")
        masks = []
        for indices in doc["sets"]:
            m = 0
            for i in indices:
                m |= 1 << int(i)
            masks.append(m)
        return MoveRestriction(tuple(masks))

    def manifest(self, result) -> dict:
        return {
            "type": "run_manifest",
            "command": self.argv,
            "inputs": self.inputs,
            "version": __version__,
            "seed": self.seed,
            "wall_time_s": round(time.time() - self.t0, 4),
            "result": result,
        }


def _settings(args) -> SolverSettings:
    return SolverSettings(memo_cap=args.memo_cap, jobs=args.jobs)


def _emit(args, run: _Run, payload, rows=None) -> None:
    if getattr(args, "format", "json") == "csv" and rows:
        buf = io.StringIO()
        keys: list[str] = []
        for row in rows:
            for key in row:
                if key not in keys:
                    keys.append(key)
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in keys})
        out = buf.getvalue()
        sys.stdout.write(out)
    else:
        out_file = getattr(args, "output", None)
        text = json.dumps(payload, indent=2)
        if out_file:
            with open(out_file, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(run.manifest(payload), fh, indent=2)
            fh.write("\n")


def _csv_cell(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return value


def _parse_indices(text: str) -> int:
    mask = 0
    if text:
        for part in text.split(","):
            mask |= 1 << int(part)
    return mask


def _player(name: str) -> Player:
    return Player.MAKER if name == "maker" else Player.BREAKER


def _objective(args) -> Objective:
    return Objective(getattr(args, "max_rounds", None), getattr(args, "max_size", None))


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args, run: _Run) -> int:
    name = args.generator
    if name == "gtb":
        board = build_gtb(args.t, args.b)
    elif name == "htb":
        board = build_htb(args.t, args.b)
    elif name == "hmbst":
        h, family = build_hmbst(args.m, args.b, args.s, args.t)
        if args.emit_family:
            doc = {
                "type": "family",
                "sets": [[b.bit_length() - 1 for b in _bits(m)] for m in family.sets],
            }
            with open(args.emit_family, "w") as fh:
                json.dump(doc, fh)
                fh.write("\n")
        board = h
    elif name == "gadget":
        inner = run.read_board(args.input)
        board = build_gadget(inner, args.a, minimal_covers=args.minimal_covers)
    elif name == "nonmonotone":
        board = build_nonmonotone({int(x) for x in args.blocked.split(",")})
    elif name == "thm12":
        board = build_thm12(args.m, args.b, args.s, args.s2, args.t, args.t2)
    elif name == "thm14":
        board = build_thm14(args.m, args.b, args.r, args.s, args.s2, args.t, args.t2)
    elif name == "thm15":
        board = build_thm15(args.m, args.b, args.s, args.t)
    elif name == "thm16":
        board = build_thm16(args.m, args.b, args.s, args.s2, args.t, args.t2)
    elif name == "ht-wc":
        board = build_ht_wc(args.t)
    elif name == "complete-uniform":
        board = build_complete_uniform(args.n, args.k)
    elif name == "wc-gap-case1":
        board = build_wc_gap_case1(args.s, args.t)
    elif name == "cycle":
        board = cycle_graph(args.n)
    elif name == "path":
        board = path_graph(args.n)
    elif name == "random-graph":
        import random as _random

        from .graphgen import random_graph

        run.seed = args.seed
        board = random_graph(args.n, args.p, _random.Random(args.seed))
    elif name == "random-tree":
        import random as _random

        from .graphgen import random_tree

        run.seed = args.seed
        board = random_tree(args.n, _random.Random(args.seed))
    else:  # pragma: no cover - argparse restricts choices
        raise PosgamesError(f"unknown generator {name}")
    _emit(args, run, to_json(board))
    return EXIT_OK


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


# ---------------------------------------------------------------------------
# solve / frontier


def _cmd_solve(args, run: _Run) -> int:
    settings = _settings(args)
    board = run.read_board(args.board)
    if args.game == "mb":
        restriction = run.read_family(args.family) if args.family else None
        value = decide_mb(
            board, args.m, args.b, _player(args.first), _objective(args),
            restriction, settings,
        )
    elif args.game == "wc":
        value = decide_wc(board, _objective(args), settings)
    else:
        seeds = _parse_indices(args.seeds)
        value = solve_aux_game(
            board, args.b, seeds, _objective(args),
            breaker_premove=args.breaker_premove, settings=settings,
        )
    _emit(args, run, {"type": "decision", "maker_wins": value})
    return EXIT_OK


def _cmd_frontier(args, run: _Run) -> int:
    settings = _settings(args)
    board = run.read_board(args.board)
    if args.game == "mb":
        result = game_values(board, args.m, args.b, _player(args.first), settings)
    else:
        result = wc_game_values(board, settings)
    payload = result.to_json()
    _emit(args, run, payload, rows=[{"t": t, "s": s} for t, s in result.frontier])
    return EXIT_OK


# ---------------------------------------------------------------------------
# dom


def _cmd_dom(args, run: _Run) -> int:
    settings = _settings(args)
    if args.dom_command == "solve":
        graph = run.read_board(args.graph)
        if args.game == "mb":
            result = dom_game_values(graph, args.m, args.b, _player(args.first), settings)
        else:
            result = dom_wc_values(graph, settings)
        payload = result.to_json()
        _emit(args, run, payload, rows=[{"t": t, "s": s} for t, s in result.frontier])
        return EXIT_OK
    if args.dom_command == "gamma":
        graph = run.read_board(args.graph)
        _emit(args, run, {"type": "gamma", "gamma": domination_number(graph)})
        return EXIT_OK
    if args.dom_command == "residue":
        graph = run.read_board(args.graph)
        rep = residue(graph)
        payload = {
            "type": "residue_report",
            "residue": to_json(rep.residue),
            "removed_pairs": [list(p) for p in rep.removed_pairs],
            "kept": list(rep.kept),
        }
        _emit(args, run, payload)
        return EXIT_OK
    # closedform
    if args.shape == "cycle":
        value = wc_cycle_value(args.n)
    else:
        graph = run.read_board(args.graph)
        value = wc_tree_value(graph)
    _emit(args, run, {"type": "closed_form", "value": value})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _strategy_instance(args):
    """(spec, strategy, guarantee) for a named catalog entry, from CLI params
    or the registered smallest instance."""
    from .constructions import build_gtb_indexed, build_htb_indexed

    name = args.target

    def aux_spec(board, b, pre, premove=False):
        return GameSpec(
            GameKind.AUX_EDGE, board, maker_bias=1, breaker_bias=b,
            preclaimed_maker=pre, breaker_premove=premove,
        )

    if name in ("maker-gtb", "breaker-gtb-slow") and args.t:
        board, _ = build_gtb_indexed(args.t, args.b)
        pre = (1 << board.start) | (1 << board.end)
        strat = get_strategy(name, t=args.t, b=args.b)
        guarantee = win_within(args.t) if name == "maker-gtb" else opponent_not_within(args.t - 1)
        return aux_spec(board, args.b, pre), strat, guarantee
    if name == "breaker-gtb-block" and args.t:
        board, _ = build_gtb_indexed(args.t, args.b)
        seed = 1 << (args.seed_vertex if args.seed_vertex is not None else board.start)
        return aux_spec(board, args.b, seed), get_strategy(name, b=args.b), never_loses()
    if name in ("maker-htb", "breaker-htb-premove", "breaker-htb-slow") and args.t:
        board, _ = build_htb_indexed(args.t, args.b)
        strat = get_strategy(name, t=args.t, b=args.b)
        if name == "maker-htb":
            return aux_spec(board, args.b, 0), strat, win_within(args.t)
        if name == "breaker-htb-premove":
            return aux_spec(board, args.b, 0, premove=True), strat, never_loses()
        return aux_spec(board, args.b, 0), strat, opponent_not_within(args.t - 1)
    if name in ("waiter-cycle", "client-cycle") and args.n:
        h = minimal_dominating_sets(cycle_graph(args.n))
        spec = GameSpec(GameKind.WAITER_CLIENT, h)
        if name == "waiter-cycle":
            return spec, get_strategy(name, n=args.n), win_within(args.n // 2)
        return spec, get_strategy(name, n=args.n), opponent_not_within(args.n // 2 - 1)
    if name == "waiter-tree" and args.graph:
        raise _DeferredGraph()
    if name == "maker-hmbst" and args.t:
        h, _fam = build_hmbst(args.m, args.b, args.s, args.t)
        spec = GameSpec(GameKind.MAKER_BREAKER, h, maker_bias=args.m, breaker_bias=args.b)
        return spec, get_strategy(name, m=args.m, b=args.b, s=args.s, t=args.t), win_within(args.t)
    if name == "breaker-pairing" and args.t:
        h, pairs = build_ht_wc_indexed(args.t)
        spec = GameSpec(GameKind.MAKER_BREAKER, h)
        return spec, make_breaker_pairing(pairs), never_loses()
    return smallest_instance(name)


class _DeferredGraph(Exception):
    pass


def _cmd_verify(args, run: _Run) -> int:
    target = args.target
    settings = _settings(args)
    if target == "all":
        reports = []
        ok = True
        for name, fn in suites_mod.SUITES.items():
            rep = _run_suite(name, args, settings)
            reports.append(rep)
            ok = ok and rep["ok"]
        payload = {"type": "verify_report", "ok": ok, "suites": reports}
        _emit(args, run, payload)
        return EXIT_OK if ok else EXIT_VIOLATED
    if target in suites_mod.SUITES:
        run.seed = args.seed
        rep = _run_suite(target, args, settings)
        rows = rep.get("rows")
        _emit(args, run, dict(rep), rows=rows)
        return EXIT_OK if rep["ok"] else EXIT_VIOLATED
    # catalog strategy
    try:
        spec, strat, guarantee = _strategy_instance(args)
    except _DeferredGraph:
        tree = run.read_board(args.graph)
        h = minimal_dominating_sets(tree)
        spec = GameSpec(GameKind.WAITER_CLIENT, h)
        strat = make_waiter_tree(tree)
        guarantee = win_within(tree.n // 2)
    result = verify_strategy(spec, strat, guarantee, max_nodes=args.max_nodes)
    payload = {
        "type": "strategy_verification",
        "strategy": strat.name,
        "guarantee": guarantee.describe(),
        "ok": result.ok,
        "nodes": result.nodes,
        "counterexample": (
            [list(step) for step in result.counterexample] if result.counterexample else None
        ),
    }
    _emit(args, run, payload)
    return EXIT_OK if result.ok else EXIT_VIOLATED


def _run_suite(name: str, args, settings: SolverSettings):
    fn = suites_mod.SUITES[name]
    kwargs = {"settings": settings}
    if name == "thm1.1":
        kwargs["max_bias"] = args.max_bias
    elif name == "thm1.8":
        kwargs["max_n"] = args.max_n if args.max_n else 9
    elif name == "thm1.7":
        kwargs.update(
            max_exhaustive=args.max_exhaustive, random_per_n=args.count_random,
            seed=args.seed,
        )
    elif name in ("residue", "gadget", "properties"):
        default = {"residue": 50, "gadget": 20, "properties": 200}[name]
        kwargs.update(count=args.count if args.count else default, seed=args.seed)
    return fn(**kwargs)


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=1, help="parallel root workers (default 1)")
    p.add_argument("--memo-cap", type=int, default=0,
                   help="memo entry cap (default: POSGAMES_MEMO_CAP or built-in)")
    p.add_argument("--manifest", help="write a run manifest JSON to this path")
    p.add_argument("-o", "--output", help="write the result JSON to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="posgames",
        description="exact positional-game solving, constructions and verification",
    )
    top.add_argument("--version", action="version", version=f"posgames {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a constructed board as JSON")
    gsub = gen.add_subparsers(dest="generator", required=True)
    for name, params in [
        ("gtb", ("t", "b")),
        ("htb", ("t", "b")),
        ("ht-wc", ("t",)),
    ]:
        p = gsub.add_parser(name)
        for par in params:
            p.add_argument(f"--{par}", type=int, required=True)
        _add_common(p)
    p = gsub.add_parser("hmbst")
    for par in ("m", "b", "s", "t"):
        p.add_argument(f"--{par}", type=int, required=True)
    p.add_argument("--emit-family", help="also write the associated-set family JSON")
    _add_common(p)
    p = gsub.add_parser("gadget")
    p.add_argument("-i", "--input", required=True, help="hypergraph JSON file")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--minimal-covers", action="store_true",
                   help="pendant classes only for minimal covers (NOT faithful)")
    _add_common(p)
    p = gsub.add_parser("nonmonotone")
    p.add_argument("--blocked", required=True, help="comma-separated blocked biases")
    _add_common(p)
    for name, params in [
        ("thm12", ("m", "b", "s", "s2", "t", "t2")),
        ("thm14", ("m", "b", "r", "s", "s2", "t", "t2")),
        ("thm15", ("m", "b", "s", "t")),
        ("thm16", ("m", "b", "s", "s2", "t", "t2")),
        ("complete-uniform", ("n", "k")),
        ("wc-gap-case1", ("s", "t")),
        ("cycle", ("n",)),
        ("path", ("n",)),
    ]:
        p = gsub.add_parser(name)
        for par in params:
            p.add_argument(f"--{par}", type=int, required=True)
        _add_common(p)
    p = gsub.add_parser("random-graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p = gsub.add_parser("random-tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    solve = sub.add_parser("solve", help="decide a bounded or unbounded objective")
    ssub = solve.add_subparsers(dest="game", required=True)
    p = ssub.add_parser("mb")
    p.add_argument("--board", required=True)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("--first", choices=("maker", "breaker"), default="maker")
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--family", help="associated-set family JSON enabling the reduced menu")
    _add_common(p)
    p = ssub.add_parser("wc")
    p.add_argument("--board", required=True)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--max-size", type=int)
    _add_common(p)
    p = ssub.add_parser("aux")
    p.add_argument("--board", required=True)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("--seeds", default="", help="comma-separated pre-owned vertices")
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--breaker-premove", action="store_true")
    _add_common(p)

    frontier = sub.add_parser("frontier", help="full values incl. the rounds/size frontier")
    fsub = frontier.add_subparsers(dest="game", required=True)
    p = fsub.add_parser("mb")
    p.add_argument("--board", required=True)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("--first", choices=("maker", "breaker"), default="maker")
    _add_common(p)
    p = fsub.add_parser("wc")
    p.add_argument("--board", required=True)
    _add_common(p)

    dom = sub.add_parser("dom", help="domination-game commands")
    dsub = dom.add_subparsers(dest="dom_command", required=True)
    p = dsub.add_parser("solve")
    p.add_argument("game", choices=("mb", "wc"))
    p.add_argument("--graph", required=True)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("--first", choices=("maker", "breaker"), default="maker")
    _add_common(p)
    p = dsub.add_parser("gamma")
    p.add_argument("--graph", required=True)
    _add_common(p)
    p = dsub.add_parser("residue")
    p.add_argument("--graph", required=True)
    _add_common(p)
    p = dsub.add_parser("closedform")
    p.add_argument("shape", choices=("tree", "cycle"))
    p.add_argument("--graph", help="tree JSON (for shape=tree)")
    p.add_argument("--n", type=int, help="cycle length (for shape=cycle)")
    _add_common(p)

    verify = sub.add_parser("verify", help="run a claim suite or verify a catalog strategy")
    verify.add_argument("target", help="suite name, strategy name, or 'all'")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--count", type=int, default=None)
    verify.add_argument("--count-random", type=int, default=100,
                        help="random trees per size for thm1.7")
    verify.add_argument("--max-exhaustive", type=int, default=8)
    verify.add_argument("--max-n", type=int, default=None)
    verify.add_argument("--max-bias", type=int, default=4)
    verify.add_argument("--max-nodes", type=int, default=2_000_000)
    verify.add_argument("--t", type=int)
    verify.add_argument("--b", type=int, default=1)
    verify.add_argument("--n", type=int)
    verify.add_argument("--m", type=int, default=1)
    verify.add_argument("--s", type=int, default=3)
    verify.add_argument("--seed-vertex", type=int, default=None)
    verify.add_argument("--graph", help="tree JSON for waiter-tree")
    _add_common(verify)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(["posgames"] + argv)
    if hasattr(args, "seed"):
        run.seed = args.seed
    try:
        if args.command == "gen":
            return _cmd_gen(args, run)
        if args.command == "solve":
            return _cmd_solve(args, run)
        if args.command == "frontier":
            return _cmd_frontier(args, run)
        if args.command == "dom":
            return _cmd_dom(args, run)
        if args.command == "verify":
            return _cmd_verify(args, run)
        parser.error(f"unknown command {args.command}")
    except GuardExceeded as exc:
        print(json.dumps({"type": "error", "kind": "guard", "message": str(exc)}))
        return EXIT_GUARD
    except (PosgamesError, OSError) as exc:
        print(json.dumps({"type": "error", "kind": "usage", "message": str(exc)}))
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
