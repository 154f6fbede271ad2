"""CLI behavior: subcommands, exit codes, determinism, file output."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from slkkm.cli import main
from slkkm.constructions import orthant_coloring
from slkkm.serialization import serialize_coloring

GOLDEN = Path(__file__).parent / "golden"


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_matches_golden_files(self, capsys):
        cases = [
            (["bounds", "--d", "2", "--eps", "1/8"], "bounds_d2_eps1_8.json"),
            (["bounds", "--d", "3", "--eps", "1/2"], "bounds_d3_eps1_2.json"),
            (["bounds", "--d", "1", "--eps", "1/4"], "bounds_d1_eps1_4.json"),
            (["bounds", "--d", "4", "--eps", "1/8"], "bounds_d4_eps1_8.json"),
            (["bounds", "--d", "10", "--eps", "1/2"], "bounds_d10_eps1_2.json"),
        ]
        for args, golden_name in cases:
            code, out, _ = run_cli(args, capsys)
            assert code == 0
            assert out == (GOLDEN / golden_name).read_text()

    def test_table_format(self, capsys):
        code, out, _ = run_cli(["bounds", "--d", "2", "--eps", "1/4", "--format", "table"], capsys)
        assert code == 0
        assert "lower_classic" in out and "upper_halfball" in out

    def test_rho_row(self, capsys):
        code, out, _ = run_cli(["bounds", "--d", "2", "--eps", "1/2", "--rho", "1/4"], capsys)
        assert code == 0
        assert json.loads(out)["results"]["sperner_lower"] == 2


class TestValidateAndConstruct:
    def test_construct_then_validate_ok(self, tmp_path, capsys):
        doc = tmp_path / "orthant.json"
        code, out, _ = run_cli(["construct", "--construct", "orthant", "--d", "2",
                                "--out", str(doc)], capsys)
        assert code == 0
        code, out, _ = run_cli(["validate", "--in", str(doc)], capsys)
        assert code == 0
        assert json.loads(out)["results"]["passed"] is True

    def test_validate_bad_points_exits_one(self, tmp_path, capsys):
        bad = {
            "format_version": 1, "dimension": 1, "flavor": "points",
            "payload": {"points": [[0], [1]], "colors": ["a", "a"]},
        }
        doc = tmp_path / "bad.json"
        doc.write_text(json.dumps(bad))
        code, out, _ = run_cli(["validate", "--in", str(doc)], capsys)
        assert code == 1
        report = json.loads(out)["results"]
        assert report["passed"] is False
        assert report["violations"]

    def test_partition_violation_exits_one(self, tmp_path, capsys):
        doc = json.loads(serialize_coloring(orthant_coloring(1)))
        doc["payload"]["classes"]["o0"][0][0] = [0, 1, "lo_closed", "hi_closed"]
        path = tmp_path / "overlap.json"
        path.write_text(json.dumps(doc))
        code, _, err = run_cli(["validate", "--in", str(path)], capsys)
        assert code == 1
        assert "PARTITION_VIOLATION" in err


class TestSearchVerifyPipeline:
    def test_search_reports_witness(self, capsys):
        code, out, _ = run_cli(["search", "--construct", "orthant", "--d", "2",
                                "--eps", "1/10"], capsys)
        assert code == 0
        results = json.loads(out)["results"]
        assert results["max_colors"] == 4
        assert results["witness_center"] == ["1/2", "1/2"]

    def test_verify_exit_zero(self, capsys):
        code, out, _ = run_cli(["verify", "--construct", "orthant", "--d", "2",
                                "--eps", "1/4"], capsys)
        assert code == 0
        results = json.loads(out)["results"]
        assert results["ok"] is True and results["achieved"] >= results["bound"]

    def test_pipeline(self, capsys):
        code, out, _ = run_cli(["pipeline", "--construct", "hamming", "--d", "2",
                                "--eps", "1/4"], capsys)
        assert code == 0
        results = json.loads(out)["results"]
        assert results["max_colors"] >= results["bound"]
        assert results["method"] == "pipeline"

    def test_closed_flag(self, capsys):
        code, out, _ = run_cli(["search", "--construct", "hamming", "--d", "2",
                                "--eps", "1/2", "--closed"], capsys)
        assert json.loads(out)["results"]["max_colors"] == 4

    def test_oracle_subcommand(self, capsys):
        code, out, _ = run_cli(["oracle", "--construct", "brick", "--eps", "1/4",
                                "--closed", "--grid-step", "1/40"], capsys)
        assert code == 0
        assert json.loads(out)["results"]["max_colors"] == 3


class TestSperner:
    def test_grid_construct_flow(self, tmp_path, capsys):
        code, out, _ = run_cli(["construct", "--construct", "grid", "--d", "2",
                                "--rho", "1/2"], capsys)
        assert code == 0
        doc = tmp_path / "grid.json"
        doc.write_text(out)
        code, out, _ = run_cli(["sperner", "--in", str(doc), "--rho", "1/2",
                                "--eps", "1/2"], capsys)
        assert code == 0
        results = json.loads(out)["results"]
        assert results["gamma_valid"] is True
        assert results["ok"] is True

    def test_rho_required(self, capsys):
        code, out, err = run_cli(["sperner", "--construct", "grid", "--d", "2",
                                  "--eps", "1/2"], capsys)
        assert code == 64


class TestCurveAndExtremal:
    def test_curve_csv(self, capsys):
        code, out, _ = run_cli(["curve", "--construct", "brick", "--eps",
                                "1/8,1/4,1/2"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "eps,open_max,closed_max"
        assert len(lines) == 4
        assert lines[1].split(",")[1:] <= lines[3].split(",")[1:]

    def test_extremal_deterministic(self, capsys):
        args = ["extremal", "--d", "1", "--eps", "1/2", "--budget", "30", "--seed", "3"]
        code, out1, _ = run_cli(args, capsys)
        assert code == 0
        code, out2, _ = run_cli(args, capsys)
        assert out1 == out2
        assert json.loads(out1)["results"]["max_colors"] == 2


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, capsys):
        code, _, err = run_cli(["bounds", "--d", "2", "--eps", "1/4", "--bogus"], capsys)
        assert code == 64
        assert "usage" in err.lower()

    def test_unknown_command_is_usage_error(self, capsys):
        code, _, _ = run_cli(["frobnicate"], capsys)
        assert code == 64

    def test_missing_input_is_usage_error(self, capsys):
        code, _, _ = run_cli(["search", "--eps", "1/4"], capsys)
        assert code == 64

    def test_reports_deterministic_across_processes(self, tmp_path):
        outs = []
        for _ in range(2):
            proc = subprocess.run(
                [sys.executable, "-m", "slkkm.cli", "verify", "--construct", "orthant",
                 "--d", "2", "--eps", "1/4"],
                capture_output=True, text=True)
            assert proc.returncode == 0
            outs.append(proc.stdout)
        assert outs[0] == outs[1]
