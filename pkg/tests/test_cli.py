import json
import math

import pytest

from planebalance import Norm, generate_instance
from planebalance.cli import main

EUCLID_SPEC = '{"type":"euclidean"}'
L1_SPEC = '{"type":"lp","p":1.0}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_balance_csv_input(tmp_path, capsys):
    path = tmp_path / "vecs.csv"
    path.write_text("1,0\n0,1\n0.6,0.8\n")
    code, out, _ = run(capsys, "balance", "--norm", EUCLID_SPEC, "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert set(payload["signs"]) <= {-1, 1} and len(payload["signs"]) == 3
    assert payload["norm"] <= 1.0 + 1e-9


def test_balance_json_array_input(tmp_path, capsys):
    path = tmp_path / "vecs.json"
    path.write_text("[[1,0],[0,1],[0.6,0.8]]")
    code, out, _ = run(capsys, "balance", "--norm", EUCLID_SPEC, "--input", str(path))
    assert code == 0


def test_balance_scenario_input(tmp_path, capsys):
    scenario = generate_instance("unit-vectors", Norm.lp(3.0), 5, seed=1)
    path = tmp_path / "scenario.json"
    path.write_text(scenario.dumps())
    code, out, _ = run(capsys, "balance", "--input", str(path))
    assert code == 0
    assert json.loads(out)["norm"] <= 1.0 + 1e-9


def test_stream_lines_and_exit(tmp_path, capsys):
    path = tmp_path / "stream.csv"
    path.write_text("1,0\n0,1\n1,0\n0,1\n")
    code, out, _ = run(capsys, "stream", "--norm", L1_SPEC, "--input", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    sign, pnorm = lines[1].split(",")
    assert int(sign) in (-1, 1)
    assert float(pnorm) <= 2.0 + 1e-9


def test_stream_tight_euclidean(tmp_path, capsys):
    path = tmp_path / "stream.csv"
    path.write_text("1,0\n0,1\n" * 10)
    code, out, _ = run(capsys, "stream", "--norm", EUCLID_SPEC, "--input", str(path),
                       "--tight-euclidean")
    assert code == 0
    evens = [float(line.split(",")[1]) for line in out.strip().splitlines()[1::2]]
    assert max(evens) <= math.sqrt(2) + 1e-9


def test_game_summary_and_trajectory(tmp_path, capsys):
    traj = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "game", "--k", "2", "--rounds", "20", "--seed", "3",
                       "--p1", "random", "--p2", "pairwise",
                       "--trajectory", str(traj))
    assert code == 0
    summary = json.loads(out)
    assert summary["max_norm"] <= 2.0 + 1e-9
    lines = traj.read_text().strip().splitlines()
    assert lines[0] == "round,vector_index,x,y,sign,px,py,pnorm"
    assert len(lines) == 1 + 20 * 2


def test_game_csv_format(capsys):
    code, out, _ = run(capsys, "game", "--k", "2", "--rounds", "5", "--seed", "3",
                       "--p2", "pairwise", "--format", "csv")
    assert code == 0
    assert out.startswith("k,2")


def test_ft_yes_verdict(tmp_path, capsys):
    path = tmp_path / "ft.json"
    path.write_text(json.dumps({
        "p0": [0, 0],
        "sites": [[1, 0], [-0.5, 0.8660254037844387], [-0.5, -0.8660254037844387]],
    }))
    code, out, _ = run(capsys, "ft", "--norm", EUCLID_SPEC, "--input", str(path))
    assert code == 0
    assert "hypothesis: holds" in out
    assert "p0 is a Fermat-Toricelli point: yes" in out


def test_ft_no_verdict(tmp_path, capsys):
    path = tmp_path / "ft.json"
    path.write_text(json.dumps({
        "p0": [0, 0],
        "sites": [[1, 0], [0.9848, 0.1736], [0.9397, 0.342]],
    }))
    code, out, err = run(capsys, "ft", "--norm", EUCLID_SPEC, "--input", str(path))
    assert code == 1
    assert "hypothesis: fails" in out
    assert "p0 is a Fermat-Toricelli point: no" in out


def test_ft_json_format(tmp_path, capsys):
    scenario = generate_instance("ft-config", Norm.lp(1.5), 5, seed=11)
    path = tmp_path / "scenario.json"
    path.write_text(scenario.dumps())
    code, out, _ = run(capsys, "ft", "--input", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["hypothesis"] is True
    assert payload["certificate_valid"] is True
    assert payload["certificate"]["residual_dual_norm"] <= 1.0 + 1e-9
    assert payload["is_fermat_toricelli"] is True


def test_usage_errors(tmp_path, capsys):
    path = tmp_path / "vecs.csv"
    path.write_text("1,0\n")
    code, _, err = run(capsys, "balance", "--norm", "nonsense", "--input", str(path))
    assert code == 2 and "invalid norm" in err
    code, _, err = run(capsys, "balance", "--input", str(path))
    assert code == 2
    code, _, err = run(capsys, "balance", "--norm", EUCLID_SPEC,
                       "--input", str(tmp_path / "missing.csv"))
    assert code == 2


def test_domain_error_exit(tmp_path, capsys):
    path = tmp_path / "vecs.csv"
    path.write_text("1,0\n0,1\n")  # even count
    code, _, err = run(capsys, "balance", "--norm", EUCLID_SPEC, "--input", str(path))
    assert code == 2
    assert "odd" in err


def test_eps_flag_accepted(tmp_path, capsys):
    path = tmp_path / "vecs.csv"
    path.write_text("1,0\n0,1\n0.6,0.8\n")
    code, _, _ = run(capsys, "balance", "--norm", EUCLID_SPEC, "--input", str(path),
                     "--eps", "1e-6")
    assert code == 0


def test_repeated_runs_identical(tmp_path, capsys):
    scenario = generate_instance("ft-config", Norm.euclidean(), 3, seed=21)
    path = tmp_path / "scenario.json"
    path.write_text(scenario.dumps())
    _, out1, _ = run(capsys, "ft", "--input", str(path))
    _, out2, _ = run(capsys, "ft", "--input", str(path))
    assert out1 == out2
