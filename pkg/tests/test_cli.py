"""End-to-end command line behavior via subprocess."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from mhdes.cli import (CURVE_HEADER, NEUTRAL_HEADER, PROFILE_HEADER,
                       RunConfig, _fmt)


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "mhdes", *args],
                          capture_output=True, text=True, env=env)


def parse_csv(text):
    lines = text.strip().split("\n")
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


def test_profile_wall_driven_example(tmp_path):
    out = tmp_path / "profile.csv"
    args = ("profile", "--flow", "couette", "--ha", "1", "--n", "50",
            "--out", str(out))
    assert run_cli(*args).returncode == 0
    header, rows = parse_csv(out.read_text())
    assert header == list(PROFILE_HEADER)
    assert len(rows) == 51
    assert rows[0][0] == _fmt(1.0)
    assert rows[0][1] == _fmt(1.0)          # U(1) = 1
    assert rows[0][4] == _fmt(0.0)          # Bbar(1) = 0
    first = out.read_bytes()
    out2 = tmp_path / "again.csv"
    run_cli(*args[:-1], str(out2))
    assert out2.read_bytes() == first


def test_profile_pressure_driven_centerline():
    proc = run_cli("profile", "--flow", "hartmann", "--ha", "2", "--n", "50")
    header, rows = parse_csv(proc.stdout)
    mid = min(rows, key=lambda r: abs(float(r[0])))
    assert abs(float(mid[0])) == 0.0
    assert abs(float(mid[1]) - 1.0) <= 1e-3


def test_profile_uses_first_hartmann_number():
    one = run_cli("profile", "--ha", "2", "--n", "8").stdout
    two = run_cli("profile", "--ha", "2", "5", "--n", "8").stdout
    assert one == two


def test_curve_blocks_and_grid():
    proc = run_cli("curve", "--flow", "couette", "--ha", "0.1", "1", "10",
                   "50", "--a-points", "6", "--n", "50")
    assert proc.returncode == 0
    header, rows = parse_csv(proc.stdout)
    assert header == list(CURVE_HEADER)
    assert len(rows) == 24
    ha_seq = [float(r[1]) for r in rows]
    assert ha_seq == sorted(ha_seq)
    grid = np.geomspace(0.2, 4.0, 6)
    for block in range(4):
        for i, row in enumerate(rows[6 * block:6 * block + 6]):
            assert abs(float(row[3]) - grid[i]) <= 1e-15 * grid[i]
            re_a = float(row[4])
            assert math.isfinite(re_a) and re_a > 0


def test_curve_degenerate_grid():
    proc = run_cli("curve", "--ha", "0.5", "--a-points", "1", "--n", "20")
    _, rows = parse_csv(proc.stdout)
    assert len(rows) == 1
    assert float(rows[0][3]) == 0.2


def test_json_format_mirrors_csv():
    args = ("curve", "--ha", "1", "--a-points", "3", "--n", "20")
    csv_rows = parse_csv(run_cli(*args).stdout)[1]
    payload = json.loads(run_cli(*args, "--format", "json").stdout)
    assert payload["columns"] == list(CURVE_HEADER)
    assert len(payload["rows"]) == len(csv_rows)
    for jrow, crow in zip(payload["rows"], csv_rows):
        assert jrow[0] == crow[0]
        for jv, cv in zip(jrow[1:], crow[1:]):
            assert float(jv) == float(cv)


def test_neutral_vanishing_coupling_classical_point():
    proc = run_cli("neutral", "--flow", "couette", "--ha", "1e-6",
                   "--n", "50")
    header, rows = parse_csv(proc.stdout)
    assert header == list(NEUTRAL_HEADER)
    assert len(rows) == 1
    row = rows[0]
    assert row[6] == "true"
    assert int(row[5]) == 50
    a_crit, re_e = float(row[3]), float(row[4])
    assert abs(re_e - 44.3) <= 0.01 * 44.3
    # gap/pi wavenumber units for comparison with the classical tables
    assert abs(a_crit * 2.0 / np.pi - 1.21) <= 0.01 * 1.21


def test_neutral_sweep_all_converged():
    proc = run_cli("neutral", "--ha", "0.1", "1", "10", "50",
                   "--a-max", "30", "--n", "50")
    _, rows = parse_csv(proc.stdout)
    assert [float(r[1]) for r in rows] == [0.1, 1.0, 10.0, 50.0]
    assert all(r[6] == "true" for r in rows)
    assert float(rows[3][4]) > float(rows[0][4])


def test_neutral_empty_hartmann_list_is_usage_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"Ha_list": []}')
    proc = run_cli("neutral", "--config", str(cfg))
    assert proc.returncode == 2
    assert "Ha_list" in proc.stderr


def test_verify_default_configuration_passes(tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli("verify", "--out", str(out))
    assert proc.returncode == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["seed"] == 42
    assert len(report["points"]) == 4
    for point in report["points"]:
        assert point["passed"]
        assert set(point["checks"]) == {"ratio_identity", "random_trial_bound",
                                        "decay_below_threshold", "poincare",
                                        "fd_oracle"}


def test_verify_perturbed_claim_fails(tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli("verify", "--ha", "1", "--n", "50",
                   "--perturb-m-rel=-1e-3", "--out", str(out))
    assert proc.returncode == 4
    report = json.loads(out.read_text())
    assert report["passed"] is False
    bound = report["points"][0]["checks"]["random_trial_bound"]
    assert bound["passed"] is False
    falsification = bound["report"]
    assert falsification["trial_index"] == -1
    assert falsification["ratio"] > falsification["m_claimed"]
    assert "field_coefficients" in falsification


def test_verify_reports_are_deterministic():
    one = run_cli("verify", "--ha", "1", "--n", "50").stdout
    two = run_cli("verify", "--ha", "1", "--n", "50").stdout
    assert one == two


def test_config_file_with_flag_overrides(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(RunConfig(flow="hartmann", Ha_list=(2.0,), N=20,
                             a_points=3).to_json())
    base = run_cli("curve", "--config", str(cfg))
    _, rows = parse_csv(base.stdout)
    assert len(rows) == 3 and rows[0][0] == "hartmann"
    over = run_cli("curve", "--config", str(cfg), "--a-points", "2")
    _, rows = parse_csv(over.stdout)
    assert len(rows) == 2


def test_config_round_trip_is_lossless():
    cfg = RunConfig(flow="hartmann", Ha_list=(0.5, 3.0), Pm=0.2, a_min=0.3,
                    a_max=2.5, a_points=7, N=24, seed=9,
                    output_path="out.csv", format="json")
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_bad_config_files_are_usage_errors(tmp_path):
    bad_key = tmp_path / "bad.json"
    bad_key.write_text('{"nope": 1}')
    assert run_cli("profile", "--config", str(bad_key)).returncode == 2
    not_json = tmp_path / "broken.json"
    not_json.write_text("{")
    assert run_cli("profile", "--config", str(not_json)).returncode == 2
    assert run_cli("profile", "--config",
                   str(tmp_path / "missing.json")).returncode == 2


@pytest.mark.parametrize("args", [
    (),
    ("profile", "--flow", "taylor"),
    ("curve", "--a-min", "5", "--a-max", "1", "--n", "20"),
    ("profile", "--n", "4"),
    ("curve", "--ha", "-1", "--n", "20"),
])
def test_usage_errors_exit_two(args):
    assert run_cli(*args).returncode == 2


def test_worker_cap_does_not_change_output():
    args = ("curve", "--ha", "0.5", "2", "--a-points", "3", "--n", "20")
    serial = run_cli(*args, env_extra={"MHDES_THREADS": "1"})
    wide = run_cli(*args, env_extra={"MHDES_THREADS": "4"})
    assert serial.stdout == wide.stdout
    bad = run_cli(*args, env_extra={"MHDES_THREADS": "soon"})
    assert bad.returncode == 2


def test_float_formatting():
    assert _fmt(float("nan")) == "NaN"
    assert _fmt(1.0) == "1.0000000000000000e+00"
    assert _fmt(0.1) == "1.0000000000000001e-01"
