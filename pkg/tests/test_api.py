# tests/test_api.py
"""
Pytest suite for the verification API (src.service.backend).
Uses FastAPI TestClient; internal failures are simulated with patch.
"""

from unittest.mock import patch

from fastapi.testclient import TestClient

from src.service.backend.app import allowed_origins, app, create_app

client = TestClient(app)


# ---------------------------------------------------------------------------
# GET /api/verify
# ---------------------------------------------------------------------------

def test_verify_returns_200_and_report():
    """GET /api/verify returns the JSON report with the embedding search off."""
    response = client.get("/api/verify", params={"p": 3, "n": 1, "checks": "homology,enumeration"})
    assert response.status_code == 200
    data = response.json()
    assert data["h"] == {"S": 89, "E": 5, "L": 84, "U": 79}
    assert data["survivors"] == [[0, 1, 6], [1, 2, 0]]
    assert data["status"] == "pass"


def test_verify_skips_embedding_by_default():
    response = client.get("/api/verify", params={"p": 2, "n": 1, "checks": "obstruction"})
    assert response.status_code == 200
    checks = {c["anchor"]: c for c in response.json()["checks"]}
    assert checks["donaldson:no-embedding"]["status"] == "skipped"
    assert checks["donaldson:no-embedding"]["reason"] == "embedding search disabled"


def test_verify_400_on_bad_parameters():
    """Out-of-domain p and unknown check groups are client errors."""
    assert client.get("/api/verify", params={"p": 1, "n": 1}).status_code == 400
    response = client.get("/api/verify", params={"p": 3, "n": 1, "checks": "colour"})
    assert response.status_code == 400
    assert "colour" in response.json()["detail"]


def test_verify_422_on_non_integer_parameters():
    assert client.get("/api/verify", params={"p": "x", "n": 1}).status_code == 422


# ---------------------------------------------------------------------------
# GET /api/enumerate
# ---------------------------------------------------------------------------

def test_enumerate_returns_survivors_histogram_and_bound():
    response = client.get("/api/enumerate", params={"p": 3, "n": 2})
    assert response.status_code == 200
    data = response.json()
    assert data["survivors"] == [[0, 1, 9], [1, 2, 0]]
    assert data["bound"] == 4
    assert data["histogram"]["survivor"] == 2


def test_enumerate_400_on_bad_parameters():
    assert client.get("/api/enumerate", params={"p": 3, "n": 0}).status_code == 400


def test_enumerate_500_on_internal_error():
    """Unexpected failures surface as 500 with the message as detail."""
    with patch("src.service.backend.api_endpoints.enumerate_candidates", side_effect=RuntimeError("boom")):
        response = client.get("/api/enumerate", params={"p": 3, "n": 1})
    assert response.status_code == 500
    assert response.json()["detail"] == "boom"


# ---------------------------------------------------------------------------
# GET /api/dinv and /api/families
# ---------------------------------------------------------------------------

def test_dinv_values_and_orientation():
    response = client.get("/api/dinv", params={"p": 3, "q": 1, "reverse": True})
    assert response.status_code == 200
    data = response.json()
    assert data["orientation"] == -1
    assert data["d"] == {"0": "1/2", "1": "-1/6", "2": "-1/6"}
    assert data["spin"] == [0]


def test_dinv_400_on_invalid_lens_space():
    assert client.get("/api/dinv", params={"p": 4, "q": 2}).status_code == 400


def test_families_returns_one_record_per_family():
    response = client.get("/api/families", params={"p": 3, "n": 1})
    assert response.status_code == 200
    records = {r["family"]: r for r in response.json()}
    assert set(records) == {"E", "S", "L", "U"}
    assert records["S"]["h"] == 89
    assert records["E"]["h"] == 5


def test_families_400_on_bad_parameters():
    assert client.get("/api/families", params={"p": 2, "n": 0}).status_code == 400


# ---------------------------------------------------------------------------
# CORS
# ---------------------------------------------------------------------------

def test_cors_allows_read_only_requests():
    """Preflight for GET succeeds; any other method is refused."""
    headers = {"Origin": "https://ci.example.org", "Access-Control-Request-Method": "GET"}
    response = client.options("/api/families", headers=headers)
    assert response.status_code == 200
    assert response.headers["access-control-allow-origin"] == "*"
    refused = client.options("/api/families", headers={**headers, "Access-Control-Request-Method": "POST"})
    assert refused.status_code == 400


def test_allowed_origins_from_environment(monkeypatch):
    monkeypatch.setenv("ALLOWED_ORIGINS", "https://a.example, https://b.example,")
    assert allowed_origins() == ["https://a.example", "https://b.example"]
    restricted = TestClient(create_app())
    headers = {"Origin": "https://c.example", "Access-Control-Request-Method": "GET"}
    assert restricted.options("/api/families", headers=headers).status_code == 400
