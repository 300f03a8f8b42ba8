import json

import pytest

from posgames.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestGen:
    def test_gtb_shape(self, capsys):
        code, doc = run_json(capsys, "gen", "gtb", "--t", "3", "--b", "2")
        assert code == 0
        assert doc["type"] == "digraph"
        assert doc["n"] == 6
        assert len(doc["arcs"]) == 9

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "board.json"
        code, _ = run_cli(capsys, "gen", "ht-wc", "--t", "3", "-o", str(out))
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["n"] == 8

    def test_guard_exit_code(self, capsys):
        code, doc = run_json(capsys, "gen", "gtb", "--t", "40", "--b", "3")
        assert code == 3
        assert doc["kind"] == "guard"

    def test_bad_params_exit_code(self, capsys):
        code, doc = run_json(capsys, "gen", "hmbst", "--m", "1", "--b", "1",
                             "--s", "2", "--t", "3")
        assert code == 2
        assert doc["kind"] == "usage"

    def test_usage_error_from_argparse(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "gtb", "--t", "3"])  # missing --b
        assert exc.value.code == 2


class TestSolveAndFrontier:
    def test_solve_round_trip(self, capsys, tmp_path):
        board = tmp_path / "h.json"
        run_cli(capsys, "gen", "wc-gap-case1", "--s", "3", "--t", "3", "-o", str(board))
        code, doc = run_json(capsys, "solve", "mb", "--board", str(board),
                             "--max-rounds", "3")
        assert code == 0 and doc["maker_wins"] is True
        code, doc = run_json(capsys, "solve", "mb", "--board", str(board),
                             "--max-rounds", "2")
        assert code == 0 and doc["maker_wins"] is False

    def test_solve_aux(self, capsys, tmp_path):
        board = tmp_path / "d.json"
        run_cli(capsys, "gen", "gtb", "--t", "2", "--b", "2", "-o", str(board))
        code, doc = run_json(capsys, "solve", "aux", "--board", str(board),
                             "-b", "2", "--seeds", "0,1", "--max-rounds", "2")
        assert code == 0 and doc["maker_wins"] is True

    def test_frontier_json_schema(self, capsys, tmp_path):
        board = tmp_path / "h.json"
        run_cli(capsys, "gen", "complete-uniform", "--n", "6", "--k", "3",
                "-o", str(board))
        code, doc = run_json(capsys, "frontier", "mb", "--board", str(board))
        assert code == 0
        assert doc == {
            "type": "solve_result",
            "maker_wins": True,
            "min_rounds": 3,
            "min_size": 3,
            "frontier": [[3, 3]],
        }

    def test_frontier_csv(self, capsys, tmp_path):
        board = tmp_path / "h.json"
        run_cli(capsys, "gen", "complete-uniform", "--n", "4", "--k", "2",
                "-o", str(board))
        code, out = run_cli(capsys, "frontier", "mb", "--board", str(board),
                            "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "t,s"

    def test_family_restriction_flag(self, capsys, tmp_path):
        board = tmp_path / "h.json"
        fam = tmp_path / "fam.json"
        run_cli(capsys, "gen", "hmbst", "--m", "1", "--b", "1", "--s", "3",
                "--t", "3", "-o", str(board), "--emit-family", str(fam))
        code, doc = run_json(capsys, "solve", "mb", "--board", str(board),
                             "--max-rounds", "3", "--family", str(fam))
        assert code == 0 and doc["maker_wins"] is True


class TestDom:
    def test_closed_form_cycle(self, capsys):
        code, doc = run_json(capsys, "dom", "closedform", "cycle", "--n", "8")
        assert code == 0 and doc["value"] == 4

    def test_closed_form_tree(self, capsys, tmp_path):
        board = tmp_path / "p5.json"
        run_cli(capsys, "gen", "path", "--n", "5", "-o", str(board))
        code, doc = run_json(capsys, "dom", "closedform", "tree",
                             "--graph", str(board))
        assert code == 0 and doc["value"] is None

    def test_gamma_and_solve(self, capsys, tmp_path):
        board = tmp_path / "c7.json"
        run_cli(capsys, "gen", "cycle", "--n", "7", "-o", str(board))
        code, doc = run_json(capsys, "dom", "gamma", "--graph", str(board))
        assert code == 0 and doc["gamma"] == 3
        code, doc = run_json(capsys, "dom", "solve", "wc", "--graph", str(board))
        assert code == 0 and doc["min_rounds"] == 3

    def test_residue_report(self, capsys, tmp_path):
        board = tmp_path / "p4.json"
        run_cli(capsys, "gen", "path", "--n", "4", "-o", str(board))
        code, doc = run_json(capsys, "dom", "residue", "--graph", str(board))
        assert code == 0
        assert doc["removed_pairs"] == [[0, 1]]
        assert doc["residue"]["n"] == 2


class TestVerify:
    def test_suite_passes(self, capsys):
        code, _ = run_cli(capsys, "verify", "thm1.8", "--max-n", "7")
        assert code == 0

    def test_strategy_by_name(self, capsys):
        code, doc = run_json(capsys, "verify", "maker-gtb", "--t", "2", "--b", "2")
        assert code == 0 and doc["ok"] is True

    def test_violated_claim_exits_one(self, capsys):
        # claiming a 1-round win for a 2-round board must fail with a trace
        code, doc = run_json(capsys, "verify", "waiter-cycle", "--n", "4")
        assert code == 0
        code, doc = run_json(capsys, "verify", "client-cycle", "--n", "4")
        assert code == 2  # the script refuses tiny cycles: usage error

    def test_suites_are_reproducible(self, capsys, tmp_path):
        m1, m2 = tmp_path / "a.json", tmp_path / "b.json"
        run_cli(capsys, "verify", "residue", "--count", "3", "--seed", "7",
                "--manifest", str(m1))
        run_cli(capsys, "verify", "residue", "--count", "3", "--seed", "7",
                "--manifest", str(m2))
        a = json.loads(m1.read_text())
        b = json.loads(m2.read_text())
        assert a["result"]["checks"] == b["result"]["checks"]
        assert a["seed"] == b["seed"] == 7
        ra = {k: v for k, v in a["result"].items() if k != "seconds"}
        rb = {k: v for k, v in b["result"].items() if k != "seconds"}
        assert ra == rb

    def test_manifest_records_inputs(self, capsys, tmp_path):
        board = tmp_path / "c5.json"
        manifest = tmp_path / "m.json"
        run_cli(capsys, "gen", "cycle", "--n", "5", "-o", str(board))
        run_cli(capsys, "dom", "gamma", "--graph", str(board),
                "--manifest", str(manifest))
        doc = json.loads(manifest.read_text())
        assert str(board) in doc["inputs"]
        assert doc["result"]["gamma"] == 2
