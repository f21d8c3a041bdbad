"""Command-line surface: exit codes, file outputs, determinism."""
import json
import subprocess
import sys

import pytest

from helpers import build_world
from pitchkit.cli import main
from pitchkit.io import read_snapshots, snapshot_to_dict
from pitchkit.passdata import read_csv
from pitchkit.scenarios import ScenarioParams, gen_scenario
from pitchkit.world import Vec2


class TestGenScenarios:
    def test_writes_reproducible_jsonl(self, tmp_path, capsys):
        out = tmp_path / "scenarios.jsonl"
        code = main(["gen-scenarios", "--seed", "3", "--n", "4",
                     "--out", str(out)])
        assert code == 0
        assert "wrote 4 scenarios" in capsys.readouterr().out
        with open(out) as f:
            snaps = [snap for snap, _ in read_snapshots(f)]
        params = ScenarioParams(seed=3, n_scenarios=4)
        assert snaps == [gen_scenario(params, i) for i in range(4)]

    def test_dribble_kind(self, tmp_path):
        out = tmp_path / "d.jsonl"
        assert main(["gen-scenarios", "--kind", "dribble", "--n", "2",
                     "--out", str(out)]) == 0
        with open(out) as f:
            assert len(list(read_snapshots(f))) == 2


class TestMarkBench:
    def test_json_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["mark-bench", "--seed", "5", "--n", "4",
                     "--json", str(out)])
        assert code == 0
        table = capsys.readouterr().out
        assert "omam" in table and "proximity" in table
        report = json.loads(out.read_text())
        assert report["n_scenarios"] == 4
        for metrics in report["algorithms"].values():
            assert metrics["sync_rate"] == 1.0

    def test_single_algorithm(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["mark-bench", "--algo", "hungarian", "--n", "2",
                     "--json", str(out)]) == 0
        assert set(json.loads(out.read_text())["algorithms"]) == {"hungarian"}


class TestDribbleBench:
    def test_blocked_family_json_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["dribble-bench", "--family", "blocked", "--mad",
                "--seed", "9", "--n", "5"]
        assert main(argv + ["--json", str(a)]) == 0
        assert main(argv + ["--json", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        report = json.loads(a.read_text())
        assert report["basic_none_rate"] == 1.0
        assert report["mad_rescue_rate"] == 1.0

    def test_open_family(self, tmp_path, capsys):
        assert main(["dribble-bench", "--n", "3", "--mad"]) == 0
        assert "mad_gain" in capsys.readouterr().out


class TestExtractPass:
    @staticmethod
    def write_log(path, n_good=3, junk=0):
        world = build_world({9: Vec2(0.0, 0.0), 7: Vec2(8.0, 3.0)},
                            {2: Vec2(4.0, -1.0)}, Vec2(0.3, 0.0))
        lines = []
        for _ in range(n_good):
            d = snapshot_to_dict(world)
            d["pass"] = {"kicker": 9, "receiver": 7}
            lines.append(json.dumps(d))
        lines += ["{bad json"] * junk
        path.write_text("\n".join(lines) + "\n")

    def test_log_to_csv(self, tmp_path, capsys):
        log = tmp_path / "game.jsonl"
        out = tmp_path / "rows.csv"
        self.write_log(log, n_good=3)
        assert main(["extract-pass", "--log", str(log), "--out", str(out)]) == 0
        assert "wrote 3 rows" in capsys.readouterr().out
        with open(out) as f:
            rows = read_csv(f)
        assert len(rows) == 3 and rows[0].label_unum == 7

    def test_warnings_on_stderr(self, tmp_path, capsys):
        log = tmp_path / "game.jsonl"
        out = tmp_path / "rows.csv"
        self.write_log(log, n_good=3, junk=1)
        assert main(["extract-pass", "--log", str(log), "--out", str(out)]) == 0
        captured = capsys.readouterr()
        assert "warning" in captured.err
        assert "(1 warnings)" in captured.out

    def test_mostly_junk_log_fails(self, tmp_path, capsys):
        log = tmp_path / "game.jsonl"
        self.write_log(log, n_good=1, junk=4)
        assert main(["extract-pass", "--log", str(log),
                     "--out", str(tmp_path / "rows.csv")]) == 2
        assert "error" in capsys.readouterr().err


class TestPredict:
    def test_forward_from_flag(self, fixtures_dir, capsys):
        weights = str(fixtures_dir / "minimal_weights.txt")
        assert main(["predict", "--weights", weights, "--input", "3"]) == 0
        assert capsys.readouterr().out.strip() == "7"

    def test_golden_check_passes(self, fixtures_dir, capsys):
        code = main(["predict",
                     "--weights", str(fixtures_dir / "golden_weights.txt"),
                     "--golden", str(fixtures_dir / "golden.json")])
        assert code == 0
        assert "ok" in capsys.readouterr().out

    def test_golden_check_fails_on_tampering(self, fixtures_dir, tmp_path, capsys):
        golden = json.loads((fixtures_dir / "golden.json").read_text())
        golden["outputs"] = [[v + 1.0 for v in row] for row in golden["outputs"]]
        tampered = tmp_path / "golden.json"
        tampered.write_text(json.dumps(golden))
        code = main(["predict",
                     "--weights", str(fixtures_dir / "golden_weights.txt"),
                     "--golden", str(tampered)])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_missing_weights_exit_2(self, capsys):
        assert main(["predict", "--weights", "/no/such/file",
                     "--input", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_console_entry_point(self, fixtures_dir):
        weights = str(fixtures_dir / "minimal_weights.txt")
        proc = subprocess.run(
            [sys.executable, "-m", "pitchkit.cli", "predict",
             "--weights", weights, "--input", "-2"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "0"


class TestDribbleGen:
    def test_dumps_candidates_and_best(self, tmp_path, capsys):
        state = tmp_path / "state.jsonl"
        assert main(["gen-scenarios", "--kind", "dribble", "--n", "1",
                     "--out", str(state)]) == 0
        capsys.readouterr()
        assert main(["dribble-gen", "--state", str(state), "--mad"]) == 0
        lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
        kinds = {l["kind"] for l in lines}
        assert "basic" in kinds and "best" in kinds
        assert kinds & {"two_step_kick", "move_before_kick", "turn_before_kick"}
        assert lines[-1]["kind"] == "best"

    def test_bad_actor_exit_2(self, tmp_path, capsys):
        state = tmp_path / "state.jsonl"
        main(["gen-scenarios", "--kind", "dribble", "--n", "1", "--out", str(state)])
        assert main(["dribble-gen", "--state", str(state),
                     "--actor", "blue-9"]) == 2


class TestSolve:
    @staticmethod
    def run_solver(tmp_path, text, solver):
        problem = tmp_path / "problem.txt"
        problem.write_text(text)
        out = tmp_path / "solution.json"
        code = main(["solve", "--problem", str(problem),
                     "--solver", solver, "--json", str(out)])
        return code, json.loads(out.read_text()) if out.exists() else None

    def test_hungarian_example(self, tmp_path):
        code, sol = self.run_solver(tmp_path, "2 2 2\n1 1\n1 2\n2 4\n", "hungarian")
        assert code == 0
        assert sol == {"pairs": [[0, 1], [1, 0]], "total_cost": 4.0, "coverage": "11"}

    def test_restricted_example(self, tmp_path):
        code, sol = self.run_solver(tmp_path, "2 2 2\n0.9 0.5\n5 1\n6 1\n", "omam")
        assert code == 0
        assert sol == {"pairs": [[0, 0], [1, 1]], "total_cost": 6.0, "coverage": "11"}

    def test_brute_agrees(self, tmp_path):
        text = "3 3 2\n1 1 1\n4 1 3\n2 0 5\n3 2 2\n"
        _, a = self.run_solver(tmp_path, text, "omam")
        _, b = self.run_solver(tmp_path, text, "brute")
        assert a == b

    def test_malformed_problem_exit_2(self, tmp_path, capsys):
        problem = tmp_path / "problem.txt"
        problem.write_text("2 2\n1 1\n")
        assert main(["solve", "--problem", str(problem)]) == 2
        assert "error" in capsys.readouterr().err


class TestParser:
    def test_unknown_command_exits(self):
        with pytest.raises(SystemExit):
            main(["no-such-command"])
