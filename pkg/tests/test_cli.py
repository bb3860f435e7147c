"""Drive the command line through main(argv) and check its artifacts."""

import csv
import hashlib
import json

import pytest

from diophlab.cli import main, parse_matrix_spec
from diophlab.errors import DiophlabError
from diophlab.game.manifolds import generate_irrational_matrix


def run(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    return 0 if e.value.code is None else e.value.code


def load(path):
    with open(path) as fh:
        return json.load(fh)


def test_bounds_pair_two_four(tmp_path):
    p = tmp_path / "b.json"
    assert run(["bounds", "--n", "2", "--d", "4", "--json", str(p)]) == 0
    out = load(p)["outputs"]
    assert out["ordinary"] == "1"
    assert abs(out["subspace"]["value"] - 0.6180339887498949) < 1e-9
    assert abs(out["uniform"]["value"] - 0.5436890126920763) < 1e-6
    assert out["subspace_poly"] == ["1", "-2", "0", "1"]
    assert out["uniform_poly"] == ["1", "-2", "0", "0", "1"]
    assert not out["degenerate"]


def test_bestapprox_golden_denominators_are_fibonacci(tmp_path):
    c = tmp_path / "r.csv"
    code = run(
        ["bestapprox", "--target", "~1.6180339887", "--tmax", "100", "--csv", str(c)]
    )
    assert code == 0
    with open(c) as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["M"]) for r in rows] == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_matrix_spec_round_trips():
    text = "1/2, 3-1/2*sqrt(7); ~2.50, -4"
    spec = parse_matrix_spec(text)
    again = parse_matrix_spec(spec.serialize())
    assert again == spec
    assert spec.serialize() == again.serialize()


def test_reports_agree_up_to_timing(tmp_path):
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["exponents", "--target", "~1.6180339887", "--tmax", "150"]
    assert run(argv + ["--json", str(pa)]) == 0
    assert run(argv + ["--json", str(pb)]) == 0
    a, b = load(pa), load(pb)
    ta, tb = a.pop("timing"), b.pop("timing")
    assert a == b
    assert set(ta) == {"started_utc", "wall_s"}
    blob = json.dumps(
        {"command": a["command"], "inputs": a["inputs"]},
        sort_keys=True,
        separators=(",", ":"),
    )
    assert a["inputs_digest"] == hashlib.sha256(blob.encode()).hexdigest()


def test_json_dash_writes_report_to_stdout(capsys):
    assert run(["bounds", "--n", "1", "--d", "3", "--json", "-"]) == 0
    out = capsys.readouterr().out
    report, _ = json.JSONDecoder().raw_decode(out)
    assert report["command"] == "bounds"
    assert report["outputs"]["degenerate"] is True
    assert report["outputs"]["double_root"] == "1/2"


def test_mixed_spec_needs_the_flag(tmp_path, capsys):
    argv = ["bestapprox", "--target", "~0.7, 1/3", "--tmax", "50"]
    assert run(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert "error" in err and "message" in err

    # With the flag the coarse decimal is accepted but honestly refused once
    # certifying the comparisons would need more bits than the input carries.
    assert run(argv + ["--allow-mixed"]) == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "PrecisionError"

    # A rational column makes exact psi ties no fixed-precision evaluator can
    # certify, so even a fine decimal refuses alongside 1/3.
    fine_tied = ["bestapprox", "--target", "~0.70710678118, 1/3",
                 "--tmax", "20", "--allow-mixed"]
    assert run(fine_tied) == 3
    capsys.readouterr()

    fine = ["bestapprox", "--target", "~0.70710678118, 1-1/2*sqrt(7)",
            "--tmax", "20", "--allow-mixed"]
    assert run(fine) == 0


def test_grammar_errors_carry_position(capsys):
    assert run(["bestapprox", "--target", "1/2, ; 3"]) == 2
    err = json.loads(capsys.readouterr().err)
    assert "line 1" in err["message"] and "column" in err["message"]


def test_csv_rejected_off_sequence_commands(tmp_path, capsys):
    p = tmp_path / "x.csv"
    assert run(["bounds", "--n", "2", "--d", "4", "--csv", str(p)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert "CSV" in err["message"]
    assert not p.exists()


def test_unknown_opponent_is_a_usage_error(capsys):
    code = run(
        ["game", "escape", "--poly", "z1^2 - 2", "--opponent", "grandmaster"]
    )
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert "grandmaster" in err["message"]


def test_env_precision_must_be_sane(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("DIOPHLAB_PRECISION_BITS", "banana")
    assert run(["bestapprox", "--target", "1/3, 1/7", "--tmax", "30"]) == 2
    err = json.loads(capsys.readouterr().err)
    assert "DIOPHLAB_PRECISION_BITS" in err["message"]

    monkeypatch.setenv("DIOPHLAB_PRECISION_BITS", "64")
    c = tmp_path / "r.csv"
    code = run(
        ["bestapprox", "--target", "~1.6180339887", "--tmax", "100", "--csv", str(c)]
    )
    assert code == 0
    with open(c) as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["M"]) for r in rows] == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_workers_do_not_change_the_report(tmp_path):
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    base = ["bestapprox", "--target", "~0.70710678118654752440", "--tmax", "200"]
    assert run(base + ["--workers", "1", "--json", str(pa)]) == 0
    assert run(base + ["--workers", "3", "--json", str(pb)]) == 0
    a, b = load(pa), load(pb)
    assert a["outputs"]["records"] == b["outputs"]["records"]
    assert a["outputs"]["scanned"] == b["outputs"]["scanned"]


def test_gcheck_reports_root_and_feasibility(tmp_path):
    p = tmp_path / "g.json"
    code = run(
        ["gcheck", "--r", "3", "--omega-hat", "9/16", "--n", "2", "--d", "4",
         "--json", str(p)]
    )
    assert code == 0
    out = load(p)["outputs"]
    # c = omega_hat / (1 - omega_hat) at r=3
    assert out["g_root"]["lo"] == "9/7"
    assert out["g_root"]["hi"] == "9/7"
    assert out["feasible"] is True


def test_generate_cli_matches_library(tmp_path):
    p = tmp_path / "gen.json"
    code = run(
        ["game", "generate", "--n", "1", "--m", "1", "--height", "3",
         "--seed", "7", "--json", str(p)]
    )
    assert code == 0
    out = load(p)["outputs"]
    gen = generate_irrational_matrix(1, 1, 3, seed=7)
    theta = gen.outcome.ball.center[0]
    assert out["theta"] == [[f"{theta.numerator}/{theta.denominator}"]]
    assert len(out["certificates"]) == len(gen.certificates)
    assert out["epsilon_min"] == (
        f"{gen.epsilon_min.numerator}/{gen.epsilon_min.denominator}"
    )
    assert out["post_check"] is True


def test_escape_cli_reports_certified_margin(tmp_path):
    p = tmp_path / "e.json"
    code = run(
        ["game", "escape", "--kind", "haw", "--poly", "z1*z2 - 1",
         "--seed", "5", "--json", str(p)]
    )
    assert code == 0
    out = load(p)["outputs"]
    assert out["epsilon_value"] > 0
    assert out["vars"] == 2
    for mv in out["transcript"]:
        assert mv["ok"] in (True, None)
        assert mv["violations"] == []
