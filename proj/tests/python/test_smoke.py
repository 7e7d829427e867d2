"""Smoke tests for the _fade python module (built by CMake/scikit-build-core)."""

import math

import pytest

fade = pytest.importorskip("_fade")


def test_exponents():
    e = fade.exponents(0.5, 3)
    assert e["m_c"] == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert e["m_star"] == pytest.approx(-1.0, abs=1e-15)
    assert e["regime"] == "supercritical"
    e2 = fade.exponents(0.2, 5)
    assert e2["m_star"] == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert e2["regime"] == "subcritical"
    with pytest.raises(Exception):
        fade.exponents(1.5, 3)


def test_barenblatt_profile():
    assert fade.barenblatt_profile(0.5, 3, 2.0, 0.0) == pytest.approx(0.25, abs=1e-15)
    assert fade.barenblatt_profile(0.5, 5, 1.0, 2.0) == pytest.approx(1.0 / 9.0, rel=1e-14)
    # decreasing in r
    vals = [fade.barenblatt_profile(0.3, 4, 1.0, r) for r in (0.0, 1.0, 10.0, 100.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_scale_radius_branches():
    assert fade.scale_radius(0.5, 3, 1.0, 2.0, 0.0) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(Exception):
        fade.scale_radius(0.2, 5, 1.0, 1.0, 2.0)  # past extinction


def test_spectral_constants():
    assert fade.exact_gap_subcritical(0.2, 5) == pytest.approx(8.0, rel=1e-13)
    assert fade.hardy_constant(0.0, 3) == pytest.approx(4.0, rel=1e-15)
    s = fade.predicted_lambda(0.5, 3)
    assert s["lambda_est"] > 0
    assert s["lower_bound"] <= s["C_est"] + s["C_err"]
    assert s["C_est"] - s["C_err"] <= s["upper_bound"]
    assert s["D_spread"] < 0.01
    # subcritical dispatch uses the closed form
    sub = fade.predicted_lambda(0.2, 5)
    assert sub["method"] == "closed-form"
    assert sub["lambda_est"] == pytest.approx(0.025, rel=1e-13)


def test_muckenhoupt_median():
    # at m = (d-2)/(d-1) the weight is r -> 1/r symmetric: median exactly 1
    assert fade.median_eta(0.5, 3) == pytest.approx(1.0, abs=1e-8)
    K = fade.muckenhoupt_K(1.0, 0.5, 3)
    assert K == pytest.approx(0.277244830444, rel=1e-6)


def test_simulate_decays():
    out = fade.simulate(m=0.5, d=3, D0=2.0, D1=0.5, r_max=200.0, n=256, dt=4e-3,
                        t_end=0.8, diag_every=20)
    F = out["F"]
    assert out["Dstar"] == pytest.approx(8.0 / 9.0, rel=1e-4)
    assert all(a >= b for a, b in zip(F, F[1:]))  # entropy decreases
    assert F[-1] < F[0]
    drift = max(abs(m - out["rel_mass"][0]) for m in out["rel_mass"])
    assert drift < 1e-6
    assert min(out["w_min"]) >= out["W0"] - 1e-9
    assert max(out["w_max"]) <= out["W1"] + 1e-9


def test_verify_suites_pass():
    results = fade.verify(seed=3, samples=20)
    assert len(results) >= 10
    failed = [r["name"] for r in results if not r["pass"]]
    assert failed == []
