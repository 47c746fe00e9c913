import math

import numpy as np
import pytest

import degwave


def test_version_and_default_config():
    assert degwave.__version__
    cfg = degwave.default_config()
    assert 0.0 < cfg["epsilon0"] < 1.0
    assert degwave.config_hash() == degwave.config_hash("")


def test_solve_conserves_energy():
    out = degwave.solve(alpha=0.5, cells=64, T=1.0, data="wdc-poly")
    assert out["regime"] == "WDC"
    assert out["u"].shape == (len(out["times"]), 65)
    e = out["energy"]
    assert np.max(np.abs(e - e[0])) <= 1e-12 * max(e[0], 1.0)
    # u(t, 1) is free for every alpha; the first node is pinned in the weak regime.
    assert np.all(out["u"][:, 0] == 0.0)


def test_strong_regime_leaves_origin_free():
    out = degwave.solve(alpha=1.5, cells=64, data="sdc-linear")
    assert out["regime"] == "SDC"
    assert np.any(out["u"][:, 0] != 0.0)


def test_boundary_functionals_theta_below_g():
    r = degwave.boundary_functionals(alpha=0.5, cells=160, data="suite:0", epsilons=[0.4, 0.2, 0.1])
    assert len(r["theta"]) == 3
    for th, g in zip(r["theta"], r["g"]):
        assert th <= g * (1 + 1e-9)
    assert r["n0"] > 0.0


def test_convergence_is_second_order():
    rows = degwave.convergence_study("wdc-poly", 1.0, [32, 64, 128])
    assert rows[-1]["order_l2"] == pytest.approx(2.0, abs=0.1)


def test_multiplier_profile():
    p = degwave.MultiplierProfile(0.1, 0.05)
    assert p.kappa == pytest.approx(0.15)
    assert p.value(0.5) == 0.0
    assert p.value(0.9) == pytest.approx(0.25)
    assert p.value(1.0) == pytest.approx(1.25)
    assert p.junction_mismatch() < 1e-12
    with pytest.raises(degwave.DomainError):
        degwave.MultiplierProfile(0.6, 0.5)


def test_multiplier_residual_is_small():
    assert abs(degwave.multiplier_residual(1.0, 128)) < 0.05


def test_embedding_constants():
    a1, a2 = degwave.embedding_constants(1.0, 0.25)
    assert a1 == pytest.approx(2.0)
    assert a2 == pytest.approx(math.sqrt(3.0))


def test_duality_residuals_are_small():
    res = degwave.duality_residuals(1.0, "smooth-dual", 128)
    assert len(res) >= 2
    assert max(res) < 1e-2


def test_liminf_w_field_is_exact():
    r = degwave.liminf_experiment("w-field", epsilons=[0.2, 0.1, 0.05], cells=160)
    assert r["hypothesis_holds"]
    assert abs(r["slack"]) < 1e-10


def test_run_campaign_small_config():
    summary, violations = degwave.run_campaign(
        "verify-embedding", {"embedding": {"samples": 4, "cells": 64}}
    )
    assert violations == []
    assert summary


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        degwave.solve(alpha=2.5, cells=16)
    with pytest.raises(degwave.ConfigError):
        degwave.run_campaign("verify-energy", {"epsilon0": 2.0})
    with pytest.raises(degwave.ArgumentError):
        degwave.run_campaign("no-such-campaign")
