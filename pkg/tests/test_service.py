import math

import pytest
from starlette.testclient import TestClient

from gup_heat import einstein
from gup_heat.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


EINSTEIN_REQ = {
    "params": {"theta_e": 240.0, "kb_gamma2": 1e-3},
    "grid": {"t_min": 10.0, "t_max": 700.0, "n_points": 20},
}

DEBYE_REQ = {
    "params": {"theta_d": 343.0, "kb_gamma2": 10**-4.5, "amp_factor": 1e-45},
    "grid": {"t_min": 10.0, "t_max": 700.0, "n_points": 10},
}


class TestHealth:
    def test_ok(self, client):
        r = client.get("/v1/health")
        assert r.status_code == 200 and r.json() == {"status": "ok"}


class TestEinsteinCurve:
    def test_basic_curve(self, client):
        r = client.post("/v1/einstein/curve", json=EINSTEIN_REQ)
        assert r.status_code == 200
        body = r.json()
        assert body["model"] == "einstein"
        assert body["normalization"] == "3NkB"
        # limit row synthesized first, then the 20 grid points
        assert len(body["rows"]) == 21
        assert body["rows"][0]["status"] == "limit"
        assert body["rows"][0]["temperature_K"] == 0.0
        assert body["rows"][0]["relative_delta"] is None

    def test_values_match_library(self, client):
        r = client.post("/v1/einstein/curve", json=EINSTEIN_REQ)
        row = r.json()["rows"][1]
        delta = 240.0 / row["temperature_K"]
        # JSON float round-trip preserves the exact double
        assert row["cv_standard"] == einstein.cv_standard(delta)
        assert row["cv_correction"] == einstein.cv_correction(
            delta, 1e-3 * 240.0)

    def test_limit_row_opt_out(self, client):
        req = dict(EINSTEIN_REQ, include_limit_row=False)
        r = client.post("/v1/einstein/curve", json=req)
        assert len(r.json()["rows"]) == 20
        assert r.json()["rows"][0]["status"] == "ok"

    def test_perturbative_warning_surface(self, client):
        req = {"params": {"theta_e": 240.0, "kb_gamma2": 0.01},
               "grid": {"t_min": 100.0, "t_max": 200.0, "n_points": 2}}
        r = client.post("/v1/einstein/curve", json=req)
        assert r.status_code == 200 and r.json()["warnings"]

    def test_validation_error(self, client):
        req = {"params": {"theta_e": -1.0},
               "grid": {"t_min": 1.0, "t_max": 2.0, "n_points": 2}}
        r = client.post("/v1/einstein/curve", json=req)
        assert r.status_code == 422
        assert r.json()["code"] == "invalid_request"

    def test_unknown_key_rejected(self, client):
        req = {"params": {"theta_e": 240.0, "bogus": 1},
               "grid": {"t_min": 1.0, "t_max": 2.0, "n_points": 2}}
        r = client.post("/v1/einstein/curve", json=req)
        assert r.status_code == 422

    def test_bad_grid_domain_error(self, client):
        req = {"params": {"theta_e": 240.0},
               "grid": {"t_min": 5.0, "t_max": 2.0, "n_points": 2}}
        r = client.post("/v1/einstein/curve", json=req)
        assert r.status_code == 400
        assert r.json()["code"] == "domain_error"


class TestDebyeCurve:
    def test_basic_curve(self, client):
        r = client.post("/v1/debye/curve", json=DEBYE_REQ)
        assert r.status_code == 200
        body = r.json()
        assert body["model"] == "debye" and body["normalization"] == "9NkB"
        for row in body["rows"][1:]:
            assert row["status"] == "ok"
            assert row["cv_correction"] <= 0.0

    def test_renormalization(self, client):
        r9 = client.post("/v1/debye/curve", json=DEBYE_REQ).json()
        r3 = client.post("/v1/debye/curve",
                         json=dict(DEBYE_REQ, normalization="3NkB")).json()
        a = r9["rows"][1]["cv_standard"]
        b = r3["rows"][1]["cv_standard"]
        assert b == pytest.approx(3.0 * a, rel=1e-15)

    def test_quadrature_failure_flags_rows(self, client):
        req = dict(DEBYE_REQ,
                   quadrature={"rel_tol": 1e-30, "abs_tol": 1e-300,
                               "max_subdivisions": 1})
        r = client.post("/v1/debye/curve", json=req)
        assert r.status_code == 200
        rows = r.json()["rows"][1:]
        assert all(row["status"] == "error" for row in rows)
        assert all(row["cv_total"] is None for row in rows)


class TestOracleCheck:
    def test_default_passes(self, client):
        r = client.post("/v1/oracle/check", json={"delta": 1.0})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"]
        assert 1.8 <= body["fitted_order"] <= 2.2
        assert len(body["pairs"]) == 3
        for p in body["pairs"]:
            assert p["discrepancy"] < 20.0 * p["b"] ** 2

    def test_needs_two_points(self, client):
        r = client.post("/v1/oracle/check",
                        json={"delta": 1.0, "b_values": [1e-3]})
        assert r.status_code == 400

    def test_rejects_nonpositive_b(self, client):
        r = client.post("/v1/oracle/check",
                        json={"delta": 1.0, "b_values": [1e-3, 0.0]})
        assert r.status_code == 400


class TestChainScan:
    def test_quadratic_scan(self, client):
        req = {"n_atoms": 32, "mode_index": 4, "gamma2": 1.0,
               "steps_per_period": 100, "n_periods": 8,
               "amplitudes": [0.01, 0.02, 0.04, 0.08]}
        r = client.post("/v1/chain/scan", json=req)
        assert r.status_code == 200
        body = r.json()
        assert not body["no_signal"]
        assert abs(body["exponent"] - 2.0) < 0.1
        assert body["drift_gate_passed"]
        assert all(res["status"] == "ok" for res in body["results"])

    def test_no_signal(self, client):
        req = {"n_atoms": 32, "mode_index": 4, "gamma2": 0.0,
               "steps_per_period": 100, "n_periods": 8,
               "amplitudes": [1e-4, 4e-4, 1e-3]}
        body = client.post("/v1/chain/scan", json=req).json()
        assert body["no_signal"] and body["exponent"] is None

    def test_invalid_scan(self, client):
        req = {"amplitudes": [0.01, 0.02]}
        r = client.post("/v1/chain/scan", json=req)
        assert r.status_code == 400


class TestFigures:
    def test_specs_listing(self, client):
        r = client.get("/v1/figure-specs")
        assert r.status_code == 200
        specs = r.json()
        assert set(specs) == {"fig1", "fig2", "fig3", "fig4"}
        for spec in specs.values():
            assert spec["inset_windows"]

    @pytest.mark.parametrize("fid,model", [("fig1", "einstein"),
                                           ("fig3", "debye")])
    def test_single_curve_figures(self, client, fid, model):
        r = client.get(f"/v1/figures/{fid}")
        assert r.status_code == 200
        body = r.json()
        assert body["spec"]["model"] == model
        assert body["header"][0] == "temperature_K"
        # limit row first with a null relative delta
        assert body["rows"][0][0] == 0.0
        assert body["rows"][0][-2] is None
        assert len(body["rows"]) == 701

    def test_sweep_figure_columns(self, client):
        body = client.get("/v1/figures/fig2").json()
        sweep_cols = [h for h in body["header"]
                      if h.startswith("relative_delta_kbg_")]
        assert len(sweep_cols) == 5

    def test_unknown_figure(self, client):
        r = client.get("/v1/figures/fig9")
        assert r.status_code == 400


class TestWireNanHandling:
    def test_relative_delta_nan_becomes_null(self, client):
        # kb_gamma2 = 0 keeps relative_delta finite; the limit row is the
        # canonical nan carrier
        r = client.post("/v1/einstein/curve", json=EINSTEIN_REQ)
        row0 = r.json()["rows"][0]
        assert row0["relative_delta"] is None
        assert math.isfinite(row0["cv_total"])
