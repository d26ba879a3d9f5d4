import json
import subprocess
import sys

import numpy as np
import pytest

import entmix.cli as cli


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def test_state_derived_values(capsys):
    rc, out = run_cli(capsys, "state", "--a", "0.6", "--s", "0.5")
    assert rc == 0
    doc = json.loads(out)
    assert doc["version"]
    assert doc["config"] == {"command": "state", "a": 0.6, "s": 0.5}
    assert abs(doc["concurrence"] - 0.2496) < 1e-9
    assert abs(doc["fidelity"] - 0.6544) < 1e-9
    assert abs(doc["xstate"]["t"] - 0.24) < 1e-9
    assert doc["matrix"]["real"][0][3] == doc["xstate"]["t"]


def test_state_perfect_bell(capsys):
    rc, out = run_cli(capsys, "state", "--a", "0.707107", "--s", "1")
    doc = json.loads(out)
    assert rc == 0
    assert abs(doc["concurrence"] - 1.0) < 1e-5
    assert doc["fidelity"] == 1.0


def test_state_separable_endpoint(capsys):
    rc, out = run_cli(capsys, "state", "--a", "0", "--s", "0.2")
    doc = json.loads(out)
    assert rc == 0
    assert doc["concurrence"] == 0.0
    assert doc["lhvt"]["feasible"] is False


def test_state_is_deterministic(capsys):
    _, out1 = run_cli(capsys, "state", "--a", "0.3", "--s", "0.7")
    _, out2 = run_cli(capsys, "state", "--a", "0.3", "--s", "0.7")
    assert out1 == out2


def test_state_rejects_bad_parameters(capsys):
    rc, _ = run_cli(capsys, "state", "--a", "1.5", "--s", "0.5")
    assert rc == 2


def test_bounds_values(capsys):
    rc, out = run_cli(capsys, "bounds", "--survival", "--chsh", "--a", "0.707106781186547")
    doc = json.loads(out)
    assert rc == 0
    assert abs(doc["survival"]["threshold"] - 1 / 3) < 1e-9
    assert abs(doc["chsh"]["threshold"] - 1 / np.sqrt(2)) < 1e-9
    assert doc["survival"]["bisection_delta"] < 1e-8
    assert doc["chsh"]["bisection_delta"] < 1e-8
    # numeric fields are serialized with 12 significant digits
    assert '"threshold": 0.333333333333,' in out


def test_bounds_eisert(capsys):
    rc, out = run_cli(capsys, "bounds", "--eisert", "--n", "2")
    doc = json.loads(out)
    assert rc == 0
    assert abs(doc["eisert"]["s"] - 0.5) < 1e-12
    assert abs(doc["eisert"]["lower_bound"] - 2 * doc["eisert"]["ef_max"]) < 1e-9


def test_bounds_requires_a_query(capsys):
    rc, _ = run_cli(capsys, "bounds", "--a", "0.5")
    assert rc == 2
    rc, _ = run_cli(capsys, "bounds", "--survival")
    assert rc == 2


def test_fig2_small_grid(capsys):
    rc, out = run_cli(capsys, "fig2", "--s-step", "0.25")
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "S,EF_max_numeric,EF_asymptotic,EF_bell,EF_a0.1"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["0.25", "0.5", "0.75", "1"]
    last = rows[-1]
    assert float(last[1]) == 1.0  # perfect delivery distributes a full Bell pair
    assert float(last[3]) == 1.0
    s_vals = [float(r[0]) for r in rows]
    bell_vals = [float(r[3]) for r in rows]
    assert all(v == 0.0 for s, v in zip(s_vals, bell_vals) if s <= 1 / 3)


def test_fig2_curve_subset(capsys):
    rc, out = run_cli(capsys, "fig2", "--s-step", "0.5", "--curves", "bell,max")
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "S,EF_max_numeric,EF_bell"


def test_fig2_rejects_bad_step(capsys):
    rc, _ = run_cli(capsys, "fig2", "--s-step", "0.3")
    assert rc == 2
    rc, _ = run_cli(capsys, "fig2", "--s-step", "0")
    assert rc == 2


def test_fig3_small_grid(capsys, tmp_path):
    out_file = tmp_path / "fig3.csv"
    rc, _ = run_cli(capsys, "fig3", "--a-points", "12", "--s-points", "12",
                    "--out", str(out_file))
    assert rc == 0
    lines = out_file.read_text().strip().split("\n")
    assert lines[0] == "a,S,EF,entangled,chsh,lhvt"
    assert len(lines) == 1 + 12 * 12
    rows = [line.split(",") for line in lines[1:]]
    for row in rows:
        ef, ent, chsh, lhvt = float(row[2]), int(row[3]), int(row[4]), int(row[5])
        assert (ef > 0) == bool(ent)
        if chsh:
            assert ent
        assert not (chsh and lhvt)


def test_fig3_stdout_matches_file(capsys, tmp_path):
    rc, out = run_cli(capsys, "fig3", "--a-points", "5", "--s-points", "5")
    out_file = tmp_path / "f.csv"
    rc2, _ = run_cli(capsys, "fig3", "--a-points", "5", "--s-points", "5",
                     "--out", str(out_file))
    assert rc == rc2 == 0
    assert out == out_file.read_text()


def test_fig3_thread_count_does_not_change_output(capsys, monkeypatch):
    _, base = run_cli(capsys, "fig3", "--a-points", "8", "--s-points", "8")
    monkeypatch.setenv("ENTMIX_THREADS", "4")
    _, threaded = run_cli(capsys, "fig3", "--a-points", "8", "--s-points", "8")
    assert base == threaded


def test_simulate_json_report(capsys):
    rc, out = run_cli(
        capsys, "simulate", "--model", "bernoulli", "--s", "1", "--a", "0.707107",
        "--trials", "20000", "--seed", "7", "--self-test",
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["report"]["max_sigma"] <= 4.0
    assert doc["report"]["trials"] == 20000
    assert doc["config"]["seed"] == 7


def test_simulate_permutation_uses_fixed_point_probability(capsys):
    rc, out = run_cli(
        capsys, "simulate", "--model", "permutation", "--n", "4", "--a", "0.6",
        "--trials", "10000", "--seed", "7",
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["report"]["effective_s"] == 0.25


def test_simulate_is_deterministic(capsys):
    args = ("simulate", "--model", "permutation", "--n", "3", "--a", "0.4",
            "--trials", "5000", "--seed", "42")
    _, out1 = run_cli(capsys, *args)
    _, out2 = run_cli(capsys, *args)
    assert out1 == out2


def test_simulate_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["simulate", "--model", "bernoulli", "--s", "0.5", "--a", "0.5",
                  "--trials", "100"])
    assert exc.value.code == 2


def test_simulate_requires_model_parameter(capsys):
    rc, _ = run_cli(capsys, "simulate", "--model", "bernoulli", "--a", "0.5",
                    "--trials", "100", "--seed", "1")
    assert rc == 2


def test_simulate_self_test_failure_exits_4(capsys, monkeypatch):
    real = cli.simulate_pair_state

    def rigged(model, a, trials, seed):
        report = real(model, a=a, trials=trials, seed=seed)
        object.__setattr__(report, "max_sigma", 9.9)
        return report

    monkeypatch.setattr(cli, "simulate_pair_state", rigged)
    rc, _ = run_cli(capsys, "simulate", "--model", "bernoulli", "--s", "0.5",
                    "--a", "0.5", "--trials", "100", "--seed", "1", "--self-test")
    assert rc == 4


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "entmix.cli", "bounds", "--survival", "--a", "0.6"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert abs(doc["survival"]["threshold"] - 0.48 / 1.48) < 1e-9
