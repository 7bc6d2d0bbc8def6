import json
from concurrent.futures import ThreadPoolExecutor

import pytest
import yaml
from fastapi.testclient import TestClient

from uwcam.presets import bundled_data_dir, load_default_catalog
from uwcam.service import SCHEMA_HEADER, create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(load_default_catalog()))


@pytest.fixture(scope="module")
def scenario_doc():
    path = bundled_data_dir() / "scenarios" / "example-survey.yaml"
    return yaml.safe_load(path.read_text())


class TestPresetsEndpoint:
    def test_lists_water_profiles(self, client):
        response = client.get("/api/presets")
        assert response.status_code == 200
        assert response.headers[SCHEMA_HEADER] == "1"
        waters = [p for p in response.json()["presets"] if p["kind"] == "water"]
        assert len(waters) >= 8

    def test_schema_endpoint(self, client):
        response = client.get("/api/schema")
        assert response.status_code == 200
        doc = response.json()
        group_names = [g["name"] for g in doc["groups"]]
        assert group_names == ["light", "water", "surface", "geometry", "viewport",
                               "lens", "sensor", "exposure", "mission"]
        assert "response" in doc["metrics"]


class TestEvaluateEndpoint:
    def test_matches_cli_output(self, client, scenario_doc, capsys):
        from uwcam.cli import main
        response = client.post("/api/evaluate", json=scenario_doc)
        assert response.status_code == 200
        path = bundled_data_dir() / "scenarios" / "example-survey.yaml"
        assert main(["evaluate", "--scenario", str(path), "--stage-spectra"]) == 0
        cli_doc = json.loads(capsys.readouterr().out)
        assert response.json() == cli_doc

    def test_invalid_scenario_422_with_diagnostics(self, client, scenario_doc):
        bad = json.loads(json.dumps(scenario_doc))
        bad["mission"]["overlap_fraction"] = 1.2
        response = client.post("/api/evaluate", json=bad)
        assert response.status_code == 422
        diags = response.json()["diagnostics"]
        assert any(d["source"] == "mission.overlap_fraction" for d in diags)

    def test_infeasible_but_valid_is_200(self, client, scenario_doc):
        slow = json.loads(json.dumps(scenario_doc))
        slow["mission"]["vehicle_speed_mps"] = 40.0
        response = client.post("/api/evaluate", json=slow)
        assert response.status_code == 200
        assert response.json()["constraints"]["feasible"] is False

    def test_malformed_body_400(self, client):
        response = client.post("/api/evaluate", content=b"{not json",
                               headers={"content-type": "application/json"})
        assert response.status_code == 400

    def test_unknown_route_404(self, client):
        assert client.get("/api/nope").status_code == 404

    def test_concurrent_identical_requests_identical_bodies(self, client, scenario_doc):
        def call(_):
            return client.post("/api/evaluate", json=scenario_doc).text

        with ThreadPoolExecutor(max_workers=32) as pool:
            bodies = list(pool.map(call, range(32)))
        assert len(set(bodies)) == 1


class TestSweepEndpoint:
    def sweep_body(self, scenario_doc, n1, n2=None):
        params = [{"path": "lens.aperture_number", "start": 2.0,
                   "stop": 2.0 + 0.1 * (n1 - 1), "step": 0.1}]
        if n2:
            params.append({"path": "mission.focus_distance_m", "start": 1.0,
                           "stop": 1.0 + 0.01 * (n2 - 1), "step": 0.01})
        return {"scenario": scenario_doc, "sweep": {"params": params,
                                                    "metrics": ["dof", "response"]}}

    def test_small_sweep(self, client, scenario_doc):
        response = client.post("/api/sweep", json=self.sweep_body(scenario_doc, 5))
        assert response.status_code == 200
        doc = response.json()
        assert len(doc["rows"]) == 5
        assert doc["columns"] == ["lens.aperture_number", "dof", "response"]

    def test_cell_cap_413(self, client, scenario_doc):
        response = client.post("/api/sweep", json=self.sweep_body(scenario_doc, 200, 600))
        assert response.status_code == 413

    def test_deterministic_rows(self, client, scenario_doc):
        a = client.post("/api/sweep", json=self.sweep_body(scenario_doc, 8)).text
        b = client.post("/api/sweep", json=self.sweep_body(scenario_doc, 8)).text
        assert a == b

    def test_bad_path_422(self, client, scenario_doc):
        body = {"scenario": scenario_doc,
                "sweep": {"params": [{"path": "lens.zoom", "start": 1, "stop": 2,
                                      "step": 1}], "metrics": ["dof"]}}
        response = client.post("/api/sweep", json=body)
        assert response.status_code == 422


class TestValidateEndpoint:
    def test_scenario_ok(self, client, scenario_doc):
        response = client.post("/api/validate",
                               json={"kind": "scenario", "document": scenario_doc})
        assert response.status_code == 200
        assert response.json()["diagnostics"] == []

    def test_profile_diagnostics(self, client):
        response = client.post("/api/validate", json={
            "kind": "water", "filename": "water.custom.csv",
            "content": "wavelength_nm,b_per_m\n500,0.1\n400,0.2\n"})
        assert response.status_code == 200
        codes = [d["code"] for d in response.json()["diagnostics"]]
        assert "non-monotonic-grid" in codes

    def test_missing_kind_400(self, client):
        assert client.post("/api/validate", json={}).status_code == 400
