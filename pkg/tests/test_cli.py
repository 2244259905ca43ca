import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import FIXTURES

PKG = Path(__file__).resolve().parent.parent


def run_cli(*args: str):
    return subprocess.run([sys.executable, "-m", "robsen.cli", *args],
                          capture_output=True, text=True, cwd=PKG)


FIG5 = str(FIXTURES / "fig5.sdg")


class TestBasicCommands:
    def test_place(self):
        r = run_cli("place", FIG5)
        assert r.returncode == 0
        assert r.stdout.strip() == "F = {8, 10}"

    def test_check_feasible_and_not(self):
        assert "feasible" == run_cli("check", FIG5, "--sensors", "8,10").stdout.strip()
        assert "infeasible" == run_cli("check", FIG5, "--sensors", "9").stdout.strip()

    def test_decompose(self):
        r = run_cli("decompose", FIG5, "--compact")
        out = json.loads(r.stdout)
        assert out["tips"] == [8, 10]
        assert len(out["paths"]) == 2 and len(out["cycles"]) == 1

    def test_robust_sensor_report_schema(self):
        r = run_cli("robust-sensor", FIG5, "--exact", "--compact")
        assert r.returncode == 0
        rep = json.loads(r.stdout)
        assert rep["schema_version"] == 1
        assert rep["command"] == "robust-sensor"
        assert rep["certificate"]["solution"] == [1, 8, 10]
        assert set(rep["counters"]) == {"matchings_run", "decompositions_run",
                                        "links_tested", "candidates_tested"}
        assert rep["counters"]["matchings_run"] > 0

    def test_robust_link_report(self):
        r = run_cli("robust-link", FIG5, "--exact", "--compact")
        rep = json.loads(r.stdout)
        assert rep["certificate"]["solution"] == [1, 3, 4, 5, 6, 8, 10]
        for entry in rep["certificate"]["sensitive_links"]:
            assert len(entry) == 3 and entry[2] in ("tip", "sink")

    def test_seed_tips_override(self, tmp_path):
        fig1 = str(FIXTURES / "fig1.sdg")
        r = run_cli("robust-sensor", fig1, "--exact", "--compact", "--seed-tips", "2,6,9")
        rep = json.loads(r.stdout)
        assert len(rep["certificate"]["solution"]) == 5

    def test_reports_reproducible(self):
        a = json.loads(run_cli("robust-link", FIG5, "--greedy", "--compact").stdout)
        b = json.loads(run_cli("robust-link", FIG5, "--greedy", "--compact").stdout)
        a.pop("wall_time_ms")
        b.pop("wall_time_ms")
        assert a == b


class TestExitCodes:
    def test_usage_error_is_2(self):
        assert run_cli("place", "/nonexistent.sdg").returncode == 2

    def test_parse_error_is_2(self, tmp_path):
        bad = tmp_path / "bad.sdg"
        bad.write_text("n 2\ne 1 5\n")
        r = run_cli("place", str(bad))
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_uncoverable_is_1_with_json(self, tmp_path):
        lone = tmp_path / "lone.sdg"
        lone.write_text("n 1\n")
        r = run_cli("--json", "robust-sensor", str(lone))
        assert r.returncode == 1
        err = json.loads(r.stderr)
        assert err["error"] == "uncoverable"

    def test_ok_is_0(self):
        assert run_cli("check", FIG5, "--sensors", "8,10").returncode == 0


class TestGenAndGadget:
    def test_gen_writes_sdg_and_sidecar(self, tmp_path):
        out = tmp_path / "net.sdg"
        r = run_cli("gen", "--model", "scale-free", "--n", "20", "--d", "2",
                    "--seed", "3", "--out", str(out))
        assert r.returncode == 0
        assert out.exists()
        sidecar = json.loads(out.with_suffix(".json").read_text())
        assert sidecar["model"] == "scale-free" and sidecar["seed"] == 3
        assert sidecar["ring_degree"] == 4  # defaults are reported

    def test_gen_deterministic(self, tmp_path):
        a = run_cli("gen", "--model", "er", "--n", "12", "--p", "0.3", "--seed", "5")
        b = run_cli("gen", "--model", "er", "--n", "12", "--p", "0.3", "--seed", "5")
        assert a.stdout == b.stdout

    def test_gadget_matches_fixture(self, tmp_path):
        cov = tmp_path / "cover.json"
        cov.write_text(json.dumps({"p": 2, "sets": [[1], [1, 2]]}))
        r = run_cli("gadget", "sensor", "--cover", str(cov))
        assert r.stdout == (FIXTURES / "fig8_p2k2.sdg").read_text()
        r = run_cli("gadget", "link", "--cover", str(cov))
        assert r.stdout == (FIXTURES / "fig9_p2k2.sdg").read_text()

    def test_gadget_bad_cover_is_2(self, tmp_path):
        cov = tmp_path / "cover.json"
        cov.write_text(json.dumps({"p": 2, "sets": [[1]]}))
        assert run_cli("gadget", "sensor", "--cover", str(cov)).returncode == 2


class TestBench:
    def test_smoke_row_and_median(self):
        r = run_cli("bench", "--model", "scale-free", "--n-list", "30",
                    "--d", "2", "--trials", "2", "--seed", "1")
        assert r.returncode == 0
        lines = r.stdout.strip().splitlines()
        header = lines[0].split(",")
        assert header[:6] == ["n", "trial", "seed", "f_size", "fs_size", "fl_size"]
        assert len(lines) >= 3
        rows = [dict(zip(header, l.split(","))) for l in lines[1:]]
        ok_rows = [row for row in rows if row["status"] == "ok" and row["trial"] != "median"]
        for row in ok_rows:
            assert int(row["d_s"]) > 0
            assert int(row["f_size"]) <= int(row["fs_size"])
            assert int(row["f_size"]) <= int(row["fl_size"])
        assert any(row["trial"] == "median" for row in rows) == bool(ok_rows)
