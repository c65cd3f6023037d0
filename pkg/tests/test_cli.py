import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dwbc.cli import main
from dwbc.config import (
    SEPARATION_FLOOR,
    ParseError,
    ValidationError,
    parse_config,
    parse_lambda_flag,
    random_params,
)

EXAMPLE = '{"lambda":[0.8,0],"x":[[0.1,0],[0.2,0]],"y":[[0.55,0],[0.85,0]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# -- configuration ----------------------------------------------------------


def test_example_document_round_trips():
    cfg = parse_config(text=EXAMPLE)
    assert cfg.n == 2
    assert cfg.lam == 0.8 and cfg.x == (0.1, 0.2) and cfg.y == (0.55, 0.85)
    again = parse_config(text=json.dumps(cfg.to_json()))
    assert again == cfg


def test_random_generation_is_deterministic():
    a = parse_config(n=4, seed=7)
    b = parse_config(n=4, seed=7)
    assert a == b and a.digest() == b.digest()
    assert parse_config(n=4, seed=8) != a


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_random_law(seed, n):
    p = random_params(np.random.default_rng(seed), n)
    pool = np.array([v.real for v in p.x + p.y])
    assert np.all((pool >= 0.05) & (pool <= 0.95))
    assert np.min(np.diff(np.sort(pool)), initial=1.0) >= SEPARATION_FLOOR
    assert 0.3 <= p.lam.real <= 1.5 and p.lam.imag == 0


def test_pinned_lambda_keeps_rapidities():
    a = random_params(np.random.default_rng(3), 3)
    b = random_params(np.random.default_rng(3), 3, lam=0.5 + 0.1j)
    assert a.x == b.x and a.y == b.y and b.lam == 0.5 + 0.1j


def test_flags_win_over_document():
    cfg = parse_config(text=EXAMPLE, lam=1.1, tolerance=1e-6, enumeration_cap=20)
    assert cfg.lam == 1.1 and cfg.tolerance == 1e-6 and cfg.enumeration_cap == 20
    assert cfg.x == (0.1, 0.2)


def test_parse_errors_name_line_and_field():
    with pytest.raises(ParseError, match="line 2"):
        parse_config(text='{"lambda": [0.8, 0],\n "x": [[0.1, 0]')
    with pytest.raises(ParseError, match=r"x\[1\]"):
        parse_config(text='{"x": [[0.1, 0], [0.2]], "y": [[0.5, 0], [0.6, 0]]}')
    with pytest.raises(ParseError, match="unknown"):
        parse_config(text='{"lamda": [0.8, 0]}')
    with pytest.raises(ParseError, match="seed"):
        parse_config(text='{"seed": -1}', n=2)
    with pytest.raises(ParseError):
        parse_lambda_flag("0.8;0")
    assert parse_lambda_flag("0.8,0.1") == 0.8 + 0.1j
    assert parse_lambda_flag("0.8") == 0.8


def test_validation_errors():
    with pytest.raises(ValidationError):
        parse_config(text='{"x": [[0.1, 0]], "y": [[0.5, 0], [0.6, 0]]}', require_square=True)
    with pytest.raises(ValidationError):
        parse_config(text='{"x": [[0.1, 0]]}')
    with pytest.raises(ValidationError):
        parse_config(n=2, tolerance=0)
    with pytest.raises(ValidationError):
        parse_config()
    with pytest.raises(ValidationError):
        parse_config(text=EXAMPLE, n=3)


def test_config_file(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(EXAMPLE, encoding="utf-8")
    code, doc = run_json(capsys, "partition", "--config", str(path), "--oracle")
    assert code == 0
    (rec,) = doc["records"]
    assert rec["deviation"] <= 1e-12
    assert doc["config"]["x"] == [[0.1, 0.0], [0.2, 0.0]]
    code, _, err = run(capsys, "partition", "--config", str(tmp_path / "missing.json"))
    assert code == 2 and "ParseError" in err


# -- commands ---------------------------------------------------------------


def test_partition_with_oracle(capsys):
    code, doc = run_json(capsys, "partition", "--n", "3", "--seed", "1", "--oracle")
    assert code == 0
    (rec,) = doc["records"]
    assert rec["status"] == "PASS" and rec["deviation"] <= 1e-9
    assert len(rec["value"]) == 2 and len(rec["oracle"]) == 2
    assert "wall_time" not in rec


def test_deviation_only_with_oracle(capsys):
    _, doc = run_json(capsys, "partition", "--n", "3")
    assert "deviation" not in doc["records"][0]


def test_onepoint_all_sums_to_one(capsys):
    code, doc = run_json(capsys, "onepoint", "--all", "--n", "4", "--seed", "2")
    assert code == 0 and len(doc["records"]) == 4
    total = sum(complex(*r["value"]) for r in doc["records"])
    assert abs(total - 1) <= 1e-10


def test_count(capsys):
    code, doc = run_json(capsys, "count", "--n", "5")
    assert code == 0 and doc["records"][0]["value"] == 429


@pytest.mark.parametrize(
    "flags",
    [
        ("--case", "1", "--r", "1", "--r2", "3"),
        ("--case", "2", "--r", "2", "--col", "3"),
        ("--case", "3", "--r", "3", "--r2", "1"),
        ("--case", "4", "--r", "2"),
    ],
)
def test_twopoint_cases(capsys, flags):
    code, doc = run_json(capsys, "twopoint", "--n", "4", "--seed", "5", "--oracle", *flags)
    assert code == 0
    assert doc["records"][0]["deviation"] <= 1e-8


def test_ybe_check(capsys):
    code, doc = run_json(capsys, "ybe-check", "--trials", "50", "--seed", "4")
    assert code == 0
    assert {r["label"] for r in doc["records"]} == {"matrix residual", "scalar residual"}
    assert all(r["value"] <= 1e-12 for r in doc["records"])


def test_oracle_above_cap_is_skipped_not_substituted(capsys):
    code, doc = run_json(capsys, "partition", "--n", "8", "--oracle")
    assert code == 1
    rec = doc["records"][0]
    assert rec["status"] == "SKIPPED" and rec["oracle"] is None and rec["deviation"] is None
    code, doc = run_json(capsys, "partition", "--n", "3", "--oracle", "--cap", "4")
    assert code == 1 and doc["records"][0]["status"] == "SKIPPED"


def test_human_table(capsys):
    code, out, _ = run(capsys, "count", "--n", "3")
    assert code == 0 and out.split() == ["dwbc(3)", "7"]


def test_exit_codes(capsys):
    assert run(capsys, "partition", "--bogus")[0] == 2
    assert run(capsys, "twopoint", "--n", "4")[0] == 2  # no --case
    assert run(capsys, "twopoint", "--n", "4", "--case", "1", "--r", "3", "--r2", "2")[0] == 2
    assert run(capsys, "onepoint", "--n", "3", "--r", "7")[0] == 2
    assert run(capsys, "partition", "--n", "2", "--lambda", "0,0")[0] == 3
    code, doc = run_json(capsys, "partition", "--config", "/dev/null")
    assert code == 2 and doc["error"]["type"] == "ParseError"


def test_degenerate_rapidities_exit_three(tmp_path, capsys):
    path = tmp_path / "deg.json"
    path.write_text('{"lambda":[0.8,0],"x":[[0.1,0],[0.1,0]],"y":[[0.5,0],[0.6,0]]}')
    code, doc = run_json(capsys, "partition", "--config", str(path))
    assert code == 3 and doc["error"]["type"] == "DegenerateRapidities"


def test_outputs_are_reproducible(capsys):
    first = run(capsys, "onepoint", "--all", "--n", "3", "--seed", "9", "--oracle", "--json")[1]
    second = run(capsys, "onepoint", "--all", "--n", "3", "--seed", "9", "--oracle", "--json")[1]
    assert first == second


def test_timings_are_opt_in(capsys):
    _, doc = run_json(capsys, "partition", "--n", "2", "--timings")
    assert doc["records"][0]["wall_time"] >= 0


# -- verify -----------------------------------------------------------------


def test_verify_subset_passes(capsys):
    code, out, err = run(capsys, "verify", "--only", "2", "--only", "3")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS"
    assert [c["number"] for c in doc["criteria"]] == [2, 3]
    assert "PASS" in err and len(err.strip().splitlines()) == 2


def test_verify_detects_impossible_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "--tol", "1e-15")
    doc = json.loads(out)
    assert code == 1 and doc["criteria"][0]["status"] == "FAIL"


def test_verify_low_cap_is_skipped(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "--cap", "10")
    doc = json.loads(out)
    assert code == 1 and doc["criteria"][0]["status"] == "SKIPPED"
