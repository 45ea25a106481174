import json

import pytest

from pebbling.cli import run


def run_json(capsys, argv):
    code = run(["--json"] + argv)
    out = capsys.readouterr().out
    return json.loads(out), code


def strip_timing(report):
    report = dict(report)
    report.pop("timing", None)
    return report


class TestNumber:
    def test_cycle6(self, capsys):
        report, code = run_json(capsys, ["number", "cycle:6"])
        assert code == 0
        assert report["results"]["value"] == 8
        assert report["results"]["exhaustive"] is True

    def test_j23(self, capsys):
        report, code = run_json(capsys, ["number", "jahangir:2,3"])
        assert code == 0
        assert report["results"]["value"] == 8

    def test_c4_threefold(self, capsys):
        report, code = run_json(capsys, ["number", "cycle:4", "--t", "3"])
        assert code == 0
        assert report["results"]["value"] == 12

    def test_budget_exceeded_flagged(self, capsys):
        report, code = run_json(capsys, ["--budget", "40", "number", "cycle:6"])
        assert code == 2
        assert report["results"]["exhaustive"] is False
        assert report["results"]["provenance"] == "partial-search"


class TestFormula:
    def test_jahangir(self, capsys):
        report, code = run_json(capsys, ["formula", "jahangir", "2", "8"])
        assert code == 0
        assert report["results"]["value"] == 26

    def test_alpha_breakdown(self, capsys):
        report, code = run_json(capsys, ["formula", "alpha", "4", "8"])
        assert code == 0
        assert report["results"]["value"] == 33
        assert report["results"]["breakdown"] == {"S": 3, "M": 4, "L": 7}

    def test_odd_n_usage_error(self, capsys):
        code = run(["formula", "jahangir", "3", "8"])
        err = capsys.readouterr().err
        assert code == 3
        assert "even" in err

    def test_cycle_convention_provenance(self, capsys):
        report, _ = run_json(capsys, ["formula", "cycle", "2"])
        assert report["results"]["provenance"] == "convention"
        report, _ = run_json(capsys, ["formula", "cycle", "6"])
        assert report["results"]["provenance"] == "paper-theorem"

    def test_tree(self, capsys):
        report, code = run_json(capsys, ["formula", "tree", "tree:0,0,0", "v1"])
        assert code == 0
        assert report["results"]["value"] == 5
        assert report["results"]["partition"] == [2, 1]


class TestSolve:
    def test_greedy_unsolvable(self, capsys):
        report, code = run_json(capsys, [
            "solve", "jahangir:2,3", "v2=3,v6=3,v1=1,u=1",
            "--root", "v4", "--policy", "greedy"])
        assert code == 0
        assert report["results"]["status"] == "unsolvable"

    def test_unrestricted_witness(self, capsys):
        report, code = run_json(capsys, [
            "solve", "jahangir:2,3", "v2=3,v6=3,v1=1,u=1", "--root", "v4"])
        assert code == 0
        assert report["results"]["status"] == "solvable"
        assert len(report["results"]["witness"]) == 5

    def test_c4(self, capsys):
        report, code = run_json(capsys, ["solve", "cycle:4", "v2=4", "--root", "v0"])
        assert code == 0
        assert report["results"]["status"] == "solvable"

    def test_distribution_file(self, capsys, tmp_path):
        f = tmp_path / "dist.txt"
        f.write_text("v2=4")
        report, code = run_json(capsys, ["solve", "cycle:4", str(f), "--root", "v0"])
        assert code == 0
        assert report["results"]["status"] == "solvable"

    def test_unknown_exit_code(self, capsys):
        report, code = run_json(capsys, [
            "--budget", "50", "solve", "jahangir:2,8",
            "v4=1,v6=3,v8=1,v10=15,v12=1,v14=3,v16=1", "--root", "v2"])
        assert code == 2
        assert report["results"]["status"] == "unknown"

    def test_mismatched_vertex_usage_error(self, capsys):
        code = run(["solve", "cycle:4", "v9=1", "--root", "v0"])
        assert code == 3


class TestVerify:
    def test_thm23(self, capsys):
        report, code = run_json(capsys, ["verify", "thm23"])
        assert code == 0
        assert report["results"]["failed"] == 0

    def test_lemma28(self, capsys):
        report, code = run_json(capsys, ["verify", "lemma28", "--max-n", "12"])
        assert code == 0
        assert report["results"]["passed"] == 10

    def test_lemma27(self, capsys):
        report, code = run_json(capsys, ["verify", "lemma27"])
        assert code == 0
        assert report["results"]["passed"] == 6

    def test_unknown_suite_usage_error(self, capsys):
        assert run(["verify", "nope"]) == 3


class TestReports:
    def test_byte_stable_modulo_timing(self, capsys):
        a, _ = run_json(capsys, ["--seed", "7", "verify", "lemma28"])
        b, _ = run_json(capsys, ["--seed", "7", "verify", "lemma28"])
        assert strip_timing(a) == strip_timing(b)

    def test_round_trip_from_echoed_command(self, capsys):
        report, _ = run_json(capsys, ["number", "cycle:5"])
        echoed = report["command"]
        args = [a for a in echoed if a != "--json"]
        replay, _ = run_json(capsys, args)
        assert report["results"] == replay["results"]

    def test_human_output_has_pass_lines(self, capsys):
        code = run(["verify", "lemma28", "--max-n", "5"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("[PASS]") == 3

    def test_version_and_backend_recorded(self, capsys):
        report, _ = run_json(capsys, ["formula", "j2m", "8"])
        assert report["version"]
        assert report["backend"] in ("python", "c")
