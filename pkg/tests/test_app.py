from fastapi.testclient import TestClient

from app import app

client = TestClient(app)

SOLVE = {
    "problem": {"example": "1", "tau": 1e-1, "level": 2},
    "method": {"solver": "mg", "smoother": "cgs"},
    "run": {"seeds": [0]},
}


def test_root_and_health():
    assert client.get("/").status_code == 200
    body = client.get("/health").json()
    assert body["status"] == "healthy"
    assert body["dense_cap"] == 4000


def test_solve():
    response = client.post("/solve", json=SOLVE)
    assert response.status_code == 200
    body = response.json()
    assert len(body["rows"]) == 1
    assert body["rows"][0]["converged"] is True
    assert body["manifest"]["rows"] == 1


def test_solve_invalid_config():
    response = client.post("/solve", json={"problem": {"tau": 0.0}})
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert "problem.tau" in detail["fields"]


def test_spectrum():
    response = client.post("/spectrum", json={"problem": {"example": "unit", "level": 2, "tau": 1e-1,
                                                          "coarse_level": 0}, "operators": ["B"]})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert len(body["rows"]) == 66
    assert set(body["rows"][0]) == {"re", "im", "h", "tau", "precond"}


def test_verify():
    body = client.get("/verify/smw").json()
    assert body["suite"] == "smw" and body["passed"] is True
    assert client.get("/verify/nothing").status_code == 404


def test_mesh():
    body = client.get("/mesh/1").json()
    assert body["level"] == 1 and body["h"] == 0.5
    assert len(body["vertices"]) == 21 and len(body["triangles"]) == 24
    assert client.get("/mesh/9").status_code == 422
