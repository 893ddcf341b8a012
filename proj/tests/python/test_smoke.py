import json
import math
import os
import subprocess
from pathlib import Path

import pytest

import uamlink

CLI = os.environ.get("UAMLINK_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="UAMLINK_CLI not set")


def cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_bundled_baseline_runs():
    s = uamlink.load_scenario("paper_baseline")
    assert s.bs_count == 184
    assert s.satellite_count == 40
    r = uamlink.run(s)
    assert len(r) == len(r.records) > 2000
    assert 0.0 < r.final_apdl < 100.0
    assert math.isclose(r.final_apdl / 100.0 * r.total_bits, r.cdl_bits, rel_tol=1e-9)
    for rec in r.records:
        assert rec.delivered_bits + rec.lost_bits == rec.size_bits


def test_selection_matches_oracle():
    c = [
        uamlink.LinkCandidate(uamlink.LinkKind.cellular, 1, 40e6),
        uamlink.LinkCandidate(uamlink.LinkKind.satellite, 1, 3e6),
    ]
    d = uamlink.select_link(c, 5e6)
    assert d.kind == "cellular"
    assert d.delay_s == pytest.approx(5e6 / 40e6)
    assert d.assignment == [1, 0]
    assert uamlink.bilp_oracle(c, 5e6).selected_index == d.selected_index
    assert uamlink.select_link([], 5e6).outage


def test_errors_map_to_python_types(tmp_path):
    with pytest.raises(ValueError, match="cellular.los_probability"):
        uamlink.parse_scenario("cellular:\n  los_probability: 1.5\n")
    with pytest.raises(uamlink.ConfigError, match="unknown key"):
        uamlink.parse_scenario("cellular:\n  bogus: 1\n")
    with pytest.raises(NotImplementedError):
        uamlink.parse_scenario("message:\n  expiry_slots: 3\n")
    with pytest.raises(OSError):
        uamlink.load_scenario(tmp_path / "missing.yaml")


def test_sweep_and_plot_data(tmp_path):
    s = uamlink.parse_scenario("constellation:\n  satellites: 10\n  planes: 5\n")
    points = uamlink.sweep(s, "satellites", [10, 5], tmp_path / "sw")
    assert [p.value for p in points] == [5, 10]
    assert all(p.ok for p in points)
    assert points[0].stats.mean_apdl_pct >= points[1].stats.mean_apdl_pct
    written = uamlink.write_plot_data(tmp_path / "sw", tmp_path / "plots")
    assert {Path(p).name for p in written} >= {"apdl_satellites.csv", "sweep_curve_satellites.csv"}


@needs_cli
def test_cli_run_matches_library(tmp_path):
    out = tmp_path / "run"
    proc = cli("run", "--scenario", "paper_baseline", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    s = uamlink.load_scenario("paper_baseline")
    r = uamlink.run(s)
    assert (out / "slots.csv").read_text() == r.slots_csv()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["cdl_bits"] == r.cdl_bits
    assert summary["final_apdl_pct"] == r.final_apdl


@needs_cli
def test_cli_sweep_and_plotdata(tmp_path):
    out = tmp_path / "sweep"
    proc = cli("sweep", "--scenario", "paper_baseline", "--axis", "satellites", "--values", "10,40", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert (out / "satellites-10" / "slots.csv").is_file()
    assert (out / "sweep_curve.csv").is_file()
    proc = cli("plotdata", "--results", str(out))
    assert proc.returncode == 0, proc.stderr
    assert (out / "plots" / "apdl_satellites.csv").is_file()


@needs_cli
def test_cli_exit_codes(tmp_path):
    missing = tmp_path / "nope.yaml"
    proc = cli("run", "--scenario", str(missing), "--out", str(tmp_path / "o"))
    assert proc.returncode == 1
    assert str(missing) in proc.stderr
    assert cli("run").returncode == 2
    assert cli("sweep", "--scenario", "paper_baseline", "--axis", "planes", "--values", "1", "--out",
               str(tmp_path / "s")).returncode == 2
    assert cli("--help").returncode == 0
