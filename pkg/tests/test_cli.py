"""Command-line behavior: exit codes, report contents, and CSV schemas."""

import dataclasses
import json

import pytest

from aoi_csma_game import cli
from aoi_csma_game.reference import REFERENCE_ROWS


def write(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data, indent=2))
    return str(path)


def scenario_dict(**overrides):
    base = {
        "n": 3,
        "sigma_idle": 0.01,
        "sigma_success": 1.01,
        "sigma_collision": 2.02,
        "initial_ages": [
            {"value": 2, "unit": "sigma_s"},
            {"value": 3, "unit": "sigma_s"},
            {"value": 3, "unit": "sigma_s"},
        ],
        "seed": 42,
        "num_slots": 5000,
    }
    base.update(overrides)
    return base


ROW_III = scenario_dict(
    initial_ages=[
        {"value": 1, "unit": "sigma_s"},
        {"value": 2, "unit": "sigma_s"},
        {"value": 3, "unit": "sigma_s"},
    ]
)


# ---------------------------------------------------------------------------
# analyze


def test_analyze_reports_equilibria_and_feasibility(tmp_path, capsys):
    code = cli.main(["analyze", "--scenario", write(tmp_path, ROW_III)])
    out = capsys.readouterr().out
    assert code == 0
    assert "regime: long_collision" in out
    assert "0.6008, 0.3355, -0.9804" in out
    assert "interior condition per node: yes, yes, no" in out
    assert "feasible: no" in out
    assert "pure Nash equilibria (4): IIT, ITI, TII, TTT" in out


def test_analyze_short_collision_scenario_reports_dominance(tmp_path, capsys):
    data = scenario_dict(sigma_collision=0.101)
    code = cli.main(["analyze", "--scenario", write(tmp_path, data)])
    out = capsys.readouterr().out
    assert code == 0
    assert "regime: short_collision" in out
    assert "transmit: weakly dominant=yes" in out


def test_analyze_malformed_json_exits_1_with_location(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3,,}\n')
    code = cli.main(["analyze", "--scenario", str(path)])
    err = capsys.readouterr().err
    assert code == 1
    assert "bad.json:1:" in err
    assert "invalid JSON" in err


def test_analyze_invariant_violation_exits_1_naming_invariant(tmp_path, capsys):
    data = scenario_dict(initial_ages=[0.5, 3.03, 3.03])
    code = cli.main(["analyze", "--scenario", write(tmp_path, data)])
    err = capsys.readouterr().err
    assert code == 1
    assert "sigma_success" in err


# ---------------------------------------------------------------------------
# reference table


def test_table1_prints_all_rows(capsys):
    code = cli.main(["table1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "2.4877, -1.2782, 0.3549" in out
    assert "-0.0055, -0.0055, -0.0055" in out
    assert "0.6008, 0.3355, -0.9804" in out
    assert "0.6008, 0.3355, 0.3355" in out
    assert "0.6672, 0.5012, 0.0049" in out


def test_table1_self_check_passes(capsys):
    code = cli.main(["table1", "--check"])
    out = capsys.readouterr().out
    assert code == 0
    assert "self-check: all reference rows match" in out


def test_check_reference_rows_is_clean():
    assert cli.check_reference_rows() == []


def test_table1_self_check_detects_mismatch(monkeypatch, capsys):
    corrupted = (dataclasses.replace(REFERENCE_ROWS[0], golden_taus=(0.1, 0.2, 0.3)),) + (
        REFERENCE_ROWS[1:]
    )
    monkeypatch.setattr(cli, "REFERENCE_ROWS", corrupted)
    code = cli.main(["table1", "--check"])
    err = capsys.readouterr().err
    assert code == 2
    assert "row I" in err


# ---------------------------------------------------------------------------
# sweep


def sweep_scenario(steps=11):
    return scenario_dict(
        sweep={
            "node": 3,
            "from": {"value": 3, "unit": "sigma_s"},
            "to": {"value": 4, "unit": "sigma_s"},
            "steps": steps,
        }
    )


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_sweep_csv_schema_and_endpoints(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code = cli.main(
        ["sweep", "--scenario", write(tmp_path, sweep_scenario()), "--out", str(out_path)]
    )
    assert code == 0
    header, rows = read_csv(out_path)
    assert header == [
        "swept_age", "tau_1", "tau_2", "tau_3", "feasible",
        "psucc_1", "psucc_2", "psucc_3",
    ]
    assert len(rows) == 11
    first, last = rows[0], rows[-1]
    assert float(first[0]) == pytest.approx(3 * 1.01, abs=1e-12)
    assert float(last[0]) == pytest.approx(4 * 1.01, abs=1e-12)
    # Endpoints agree with the bundled golden rows IV and V.
    for value, want in zip(first[1:4], (0.6008, 0.3355, 0.3355)):
        assert abs(float(value) - want) <= 5e-5
    for value, want in zip(last[1:4], (0.6672, 0.5012, 0.0049)):
        assert abs(float(value) - want) <= 5e-5
    assert all(row[4] == "true" for row in rows)
    # Full precision: at least 10 significant digits survive the format.
    assert len(first[1].replace("-", "").replace(".", "").lstrip("0")) >= 10


def test_sweep_success_probabilities_cross_monotonically(tmp_path):
    out_path = tmp_path / "sweep.csv"
    assert (
        cli.main(
            ["sweep", "--scenario", write(tmp_path, sweep_scenario()), "--out", str(out_path)]
        )
        == 0
    )
    _, rows = read_csv(out_path)
    psucc_1 = [float(r[5]) for r in rows]
    psucc_2 = [float(r[6]) for r in rows]
    psucc_3 = [float(r[7]) for r in rows]
    assert all(b > a for a, b in zip(psucc_1, psucc_1[1:]))
    assert all(b > a for a, b in zip(psucc_2, psucc_2[1:]))
    assert all(b < a for a, b in zip(psucc_3, psucc_3[1:]))


def test_sweep_to_stdout(tmp_path, capsys):
    code = cli.main(["sweep", "--scenario", write(tmp_path, sweep_scenario(steps=3))])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("swept_age,tau_1")
    assert len(out.strip().splitlines()) == 4


def test_sweep_requires_sweep_block(tmp_path, capsys):
    code = cli.main(["sweep", "--scenario", write(tmp_path, scenario_dict())])
    err = capsys.readouterr().err
    assert code == 1
    assert "no sweep block" in err


# ---------------------------------------------------------------------------
# simulate


def test_simulate_explicit_taus_certain_winner(tmp_path, capsys):
    data = scenario_dict(taus=[1.0, 0.0, 0.0], num_slots=500)
    code = cli.main(["simulate", "--scenario", write(tmp_path, data)])
    out = capsys.readouterr().out
    assert code == 0
    assert "profile source: explicit taus" in out
    assert "success=(500, 0, 0)" in out
    assert "idle=0" in out
    assert "all quantities within 3 standard errors: yes" in out


def test_simulate_all_idle_counts(tmp_path, capsys):
    data = scenario_dict(taus=[0.0, 0.0, 0.0], num_slots=250)
    code = cli.main(["simulate", "--scenario", write(tmp_path, data)])
    out = capsys.readouterr().out
    assert code == 0
    assert "idle=250" in out


def test_simulate_uses_feasible_equilibrium_by_default(tmp_path, capsys):
    code = cli.main(
        ["simulate", "--scenario", write(tmp_path, scenario_dict()), "--slots", "2000"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "profile source: closed-form mixed equilibrium" in out
    assert "slots: 2000" in out


def test_simulate_infeasible_without_taus_exits_1(tmp_path, capsys):
    code = cli.main(["simulate", "--scenario", write(tmp_path, ROW_III)])
    err = capsys.readouterr().err
    assert code == 1
    assert "taus" in err


def test_simulate_seed_override_changes_output(tmp_path, capsys):
    path = write(tmp_path, scenario_dict(taus=[0.4, 0.3, 0.2], num_slots=2000))
    cli.main(["simulate", "--scenario", path, "--seed", "1"])
    first = capsys.readouterr().out
    cli.main(["simulate", "--scenario", path, "--seed", "1"])
    replay = capsys.readouterr().out
    cli.main(["simulate", "--scenario", path, "--seed", "2"])
    other = capsys.readouterr().out
    assert first == replay
    assert "seed: 1" in first
    assert first != other


def test_simulate_trajectory_csv_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, scenario_dict(taus=[0.4, 0.3, 0.2], num_slots=2000))
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert cli.main(["simulate", "--scenario", path, "--out", str(out_a)]) == 0
    assert cli.main(["simulate", "--scenario", path, "--out", str(out_b)]) == 0
    capsys.readouterr()
    assert out_a.read_bytes() == out_b.read_bytes()
    header, rows = read_csv(out_a)
    assert header == ["time", "age_1", "age_2", "age_3"]
    assert len(rows) == 2001
    assert rows[0][0] == "0"


def test_module_entry_point_runs(tmp_path):
    import subprocess
    import sys

    result = subprocess.run(
        [sys.executable, "-m", "aoi_csma_game", "table1", "--check"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "self-check" in result.stdout
