"""Config resolution and the five subcommands, end to end in-process."""

import json
import math

import numpy as np
import pytest

from xvapde import ConfigError, cli

# small scenario so every command variant stays fast
FAST_GRID = {"n_space": 60, "n_time": 30}


def run(tmp_path, command, cfg=None, name="run", argv_extra=()):
    """Invoke the CLI main() with a config dict written to disk."""
    out = tmp_path / name
    argv = [command, "--out", str(out)]
    if cfg is not None:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(cfg))
        argv += ["--config", str(path)]
    argv += list(argv_extra)
    return cli.main(argv), out


# --- Config resolution ---

def test_defaults_fill_the_desk_scenario():
    resolved = cli.resolve_config({})
    assert resolved["variant"] == "BKTC"
    assert resolved["params"]["sigma"] == 0.1
    assert resolved["instrument"] == {"kind": "call", "strike": 8.0,
                                      "custom_payoff": None}
    assert resolved["grid"]["x_star"] == pytest.approx(math.log(8.0))
    assert resolved["grid"]["alpha"] == pytest.approx(
        (math.log(32.0) - math.log(2.0)) / 10.0)


def test_resolution_is_idempotent():
    once = cli.resolve_config({"params": {"sigma": 0.2},
                               "instrument": {"strike": 10.0}})
    assert cli.resolve_config(once) == once
    assert once["grid"]["x_star"] == pytest.approx(math.log(10.0))


def test_unknown_keys_are_rejected_with_their_path():
    with pytest.raises(ConfigError, match="unknown key volatility"):
        cli.resolve_config({"volatility": 0.2})
    with pytest.raises(ConfigError, match=r"unknown key params\.vol"):
        cli.resolve_config({"params": {"vol": 0.2}})
    with pytest.raises(ConfigError, match=r"unknown key grid\.n"):
        cli.resolve_config({"grid": {"n": 10}})


def test_bad_enums_are_rejected():
    with pytest.raises(ConfigError, match="variant"):
        cli.resolve_config({"variant": "BK_TC"})
    with pytest.raises(ConfigError, match="boundary_mode"):
        cli.resolve_config({"boundary_mode": "linear"})
    with pytest.raises(ConfigError, match="drift"):
        cli.resolve_config({"drift_discretization": "central"})


def test_sweep_section_is_validated():
    with pytest.raises(ConfigError, match=r"sweep\.parameter"):
        cli.resolve_config({"sweep": {"values": [1.0]}})
    with pytest.raises(ConfigError, match=r"sweep\.values"):
        cli.resolve_config({"sweep": {"parameter": "lambda_C", "values": []}})
    with pytest.raises(ConfigError, match="unknown key sweep.step"):
        cli.resolve_config({"sweep": {"parameter": "lambda_C", "values": [1.0],
                                      "step": 2}})


def test_non_object_config_is_rejected():
    with pytest.raises(ConfigError, match="JSON object"):
        cli.resolve_config([1, 2, 3])


def test_build_problem_round_trips_the_scenario():
    resolved = cli.resolve_config({"variant": "BK", "grid": FAST_GRID})
    prob = cli.build_problem(resolved)
    assert prob.variant.value == "BK"
    assert prob.grid.n_space == 60
    assert prob.params.lambda_B == 0.05


# --- Exit codes and error reporting ---

def test_unknown_config_key_exits_2(tmp_path, capsys):
    code, _ = run(tmp_path, "price", {"params": {"vol": 1}})
    assert code == 2
    assert "error: unknown key params.vol" in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path, capsys):
    code = cli.main(["price", "--config", str(tmp_path / "absent.json"),
                     "--out", str(tmp_path / "o")])
    assert code == 2
    assert "cannot read config" in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = cli.main(["price", "--config", str(bad), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_ill_posed_scenario_exits_1_with_the_guard_name(tmp_path, capsys):
    cfg = {"params": {"sigma": 0.02}, "grid": FAST_GRID}
    code, _ = run(tmp_path, "price", cfg)
    assert code == 1
    assert "WellPosednessViolation" in capsys.readouterr().err


def test_sweep_command_requires_a_sweep_section(tmp_path, capsys):
    code, _ = run(tmp_path, "sweep", {"grid": FAST_GRID})
    assert code == 2
    assert "sweep" in capsys.readouterr().err


# --- Commands ---

def test_price_writes_surface_and_resolved_config(tmp_path, capsys):
    code, out = run(tmp_path, "price", {"grid": FAST_GRID})
    assert code == 0
    assert "price at S = " in capsys.readouterr().out
    data = json.loads((out / "resolved_config.json").read_text())
    assert cli.resolve_config(data) == data
    header = (out / "surface.csv").read_text().splitlines()[0]
    assert header.startswith("x,")


def test_price_accepts_a_custom_payoff(tmp_path, capsys):
    # straddle samples on the 13 nodes of a 12-interval grid
    import xvapde
    grid = cli.build_problem(cli.resolve_config(
        {"grid": {"n_space": 12, "n_time": 10}})).grid
    spots = xvapde.build_space_grid(grid).spots
    cfg = {"grid": {"n_space": 12, "n_time": 10},
           "instrument": {"kind": "custom", "strike": 8.0,
                          "custom_payoff": list(np.abs(spots - 8.0))}}
    code, out = run(tmp_path, "price", cfg)
    assert code == 0
    assert (out / "surface.csv").exists()


def test_validate_passes_the_desk_scenario(tmp_path, capsys):
    code, _ = run(tmp_path, "validate", {"grid": FAST_GRID})
    assert code == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3


def test_validate_fails_below_the_cost_floor(tmp_path, capsys):
    code, _ = run(tmp_path, "validate",
                  {"params": {"sigma": 0.02}, "grid": FAST_GRID})
    assert code == 1
    assert "condition1: FAIL" in capsys.readouterr().out


def test_greeks_writes_the_report(tmp_path, capsys):
    code, out = run(tmp_path, "greeks", {"grid": FAST_GRID})
    assert code == 0
    assert "delta = " in capsys.readouterr().out
    lines = (out / "greeks.csv").read_text().splitlines()
    assert lines[0] == "S,delta,gamma,vega,rho"
    assert len(lines) == 1 + 61


def test_cva_writes_the_profile(tmp_path, capsys):
    code, out = run(tmp_path, "cva", {"grid": FAST_GRID})
    assert code == 0
    assert "cva at S = " in capsys.readouterr().out
    lines = (out / "cva.csv").read_text().splitlines()
    assert lines[0] == "S,price,risk_free_price,cva"
    assert len(lines) == 1 + 61
    # the adjustment column is a cost at every node
    assert all(float(line.split(",")[3]) <= 1e-15 for line in lines[1:])


SWEEP_CFG = {"grid": FAST_GRID,
             "sweep": {"parameter": "lambda_C", "values": [0.005, 0.01, 0.02]}}


def test_sweep_writes_csv_and_reports_members(tmp_path, capsys):
    code, out = run(tmp_path, "sweep", SWEEP_CFG)
    assert code == 0
    assert capsys.readouterr().out.count(": ok") == 3
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "parameter,value,S,price,cva"
    assert len(lines) == 1 + 3 * 61


def test_sweep_member_failures_exit_1(tmp_path, capsys):
    cfg = {"grid": FAST_GRID,
           "sweep": {"parameter": "C_S", "values": [0.002, 0.01]}}
    code, out = run(tmp_path, "sweep", cfg)
    assert code == 1
    assert "FAILED" in capsys.readouterr().out
    # the surviving member still lands in the file
    assert len((out / "sweep.csv").read_text().splitlines()) == 1 + 61


def test_sweep_reruns_are_byte_identical(tmp_path):
    _, out1 = run(tmp_path, "sweep", SWEEP_CFG, name="first")
    _, out2 = run(tmp_path, "sweep", SWEEP_CFG, name="second")
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()
    assert (out1 / "resolved_config.json").read_bytes() == \
        (out2 / "resolved_config.json").read_bytes()


def test_worker_env_does_not_change_the_bytes(tmp_path, monkeypatch):
    _, serial = run(tmp_path, "sweep", SWEEP_CFG, name="serial")
    monkeypatch.setenv("XVAPDE_MAX_WORKERS", "3")
    _, threaded = run(tmp_path, "sweep", SWEEP_CFG, name="threaded")
    assert (serial / "sweep.csv").read_bytes() == (threaded / "sweep.csv").read_bytes()


@pytest.mark.parametrize("value", ["zero", "0", "-2"])
def test_bad_worker_env_exits_2(tmp_path, monkeypatch, capsys, value):
    monkeypatch.setenv("XVAPDE_MAX_WORKERS", value)
    code, _ = run(tmp_path, "sweep", SWEEP_CFG)
    assert code == 2
    assert "XVAPDE_MAX_WORKERS" in capsys.readouterr().err
