import json
import math
import os
import subprocess

import pytest

import stefan_front as sf


def test_c0_closed_forms():
    assert abs(sf.c0(sf.cubic_bistable(0.25)) - 0.5 / math.sqrt(2)) < 1e-4
    assert 2 - 1e-3 <= sf.c0(sf.logistic()) <= 2


def test_nonlinearity_validation():
    with pytest.raises(sf.Error):
        sf.cubic_bistable(1.5)
    nl = sf.logistic()
    assert nl.kind == sf.Kind.Monostable
    assert nl(0.5) == pytest.approx(0.25)


def test_c_star_below_c0():
    nl = sf.logistic()
    res = sf.c_star(nl, 2.0)
    assert 0 < res.c_star < res.c0
    assert res.omega_star == pytest.approx(res.c_star / 2.0)


def test_run_and_classify():
    cfg = sf.SolverConfig()
    cfg.nl = sf.cubic_bistable(0.25)
    cfg.u0.sigma = 0.2
    cfg.N = 101
    cfg.t_max = 1.0
    run = sf.run(cfg)
    assert run.snapshots[-1].max_u() < 0.25
    v = sf.classify_run(run, cfg.nl, cfg.mu)
    assert v.outcome == sf.Outcome.Vanishing
    assert v.certificate == sf.Certificate.ThetaCap


def test_speed_estimate():
    cfg = sf.SolverConfig()
    cfg.nl = sf.logistic()
    cfg.mu = 2.0
    cfg.h0 = 2.0
    cfg.N = 201
    cfg.t_max = 30.0
    run = sf.run(cfg)
    v = sf.classify_run(run, cfg.nl, cfg.mu)
    assert v.outcome == sf.Outcome.Spreading
    est = sf.speed_estimate(run, v)
    assert abs(est.c_hat - sf.c_star(cfg.nl, 2.0).c_star) < 0.05 * est.c_hat


def test_threshold_budget():
    cfg = sf.SolverConfig()
    cfg.nl = sf.cubic_bistable(0.25)
    cfg.N = 101
    cfg.t_max = 10.0
    th = sf.ThresholdOptions()
    th.budget = 10
    res = sf.sigma_star(cfg, th)
    assert len(res.evals) <= 10


@pytest.mark.skipif("STEFAN_FRONT_CLI" not in os.environ, reason="CLI path not given")
def test_cli_semiwave_and_bad_config(tmp_path):
    cli = os.environ["STEFAN_FRONT_CLI"]
    cfg = tmp_path / "sw.json"
    cfg.write_text(json.dumps({"solver": {"mu": 2}}))
    out = tmp_path / "out"
    done = subprocess.run([cli, "semiwave", "--config", str(cfg), "--out", str(out)], capture_output=True)
    assert done.returncode == 0
    summary = json.loads((out / "summary.json").read_text())
    assert abs(summary["c_star"] - 0.547685) < 1e-4

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonlinearity": {"name": "cubic_bistable", "theta": 1.5}}))
    done = subprocess.run([cli, "simulate", "--config", str(bad), "--out", str(out)], capture_output=True, text=True)
    assert done.returncode == 1
    assert "nonlinearity.theta" in done.stderr
