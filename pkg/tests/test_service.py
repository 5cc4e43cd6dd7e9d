import numpy as np
import pytest
from fastapi.testclient import TestClient

from umbilic.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def sphere(center, radius):
    return {"type": "sphere", "center": center, "radius": radius}


def hyperplane(normal, offset):
    return {"type": "hyperplane", "normal": normal, "offset": offset}


def test_encode_endpoint(client):
    resp = client.post(
        "/encode",
        json={"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 0], 1.0)]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert np.allclose(body["basis"], [[0, 0, 0, 0, 0, 1]])
    assert body["gram_residual"] < 1e-12


def test_encode_input_error_maps_to_400(client):
    resp = client.post(
        "/encode",
        json={"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 0], -1.0)]},
    )
    assert resp.status_code == 400
    body = resp.json()
    assert "radius" in body["error"]
    assert body["kind"] == "InputError"


def test_validation_error_maps_to_422(client):
    resp = client.post("/encode", json={"context": {"n": 3, "k": 2}, "objects": []})
    assert resp.status_code == 422


def test_congruent_endpoint(client):
    resp = client.post(
        "/congruent",
        json={
            "context": {"n": 3, "k": 2},
            "a": [sphere([0, 1, 0, 0], 1.0)],
            "b": [sphere([7, 2, 0, 0], 2.0)],
            "witness": True,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["congruent"] is True
    assert body["witness"]["subspace_distance"] < 1e-8


def test_congruent_precondition_maps_to_409(client):
    resp = client.post(
        "/congruent",
        json={
            "context": {"n": 3, "k": 2},
            "a": [sphere([0, 0, 0, 0], 1.0)],
            "b": [sphere([0, 0, 0, 0], 2.0)],
        },
    )
    assert resp.status_code == 409
    assert resp.json()["kind"] == "NotSubstantial"


def test_classify_endpoint(client):
    resp = client.post(
        "/classify",
        json={"context": {"n": 3, "k": 2}, "objects": [sphere([0, 1, 0, 0], 1.0)]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["substantial"] is True
    assert body["topology"]["label"] == "R^3"
    assert body["canonical"][0]["type"] == "sphere"


def test_profile_endpoint(client):
    resp = client.post(
        "/profile",
        json={
            "context": {"n": 2, "k": 2},
            "objects": [sphere([0, 0, 1], 2.0)],
            "samples": 8,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["case"] == "HYPERBOLIC"
    assert len(body["rows"]) == 8
    assert all(r["membership_residual"] < 1e-9 for r in body["rows"])


def test_profile_wrong_context_maps_to_400(client):
    resp = client.post(
        "/profile",
        json={"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 1], 1.0)]},
    )
    assert resp.status_code == 400


def test_selftest_endpoint(client):
    resp = client.post("/selftest", json={"seed": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    resp2 = client.post("/selftest", json={"seed": 0})
    assert resp2.json() == body
