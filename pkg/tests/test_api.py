"""HTTP service surface: health, workspace parsing with structured 422
errors, command execution, and byte-determinism of the machine report.
"""

import pytest

from fastapi.testclient import TestClient

from fincat import __version__
from fincat.api import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def c2_text(data_dir):
    return (data_dir / "c2.fincat").read_text()


class TestHealth:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "version": __version__}


class TestParse:
    def test_valid_workspace(self, client, c2_text):
        r = client.post("/workspace/parse", json={"workspace": c2_text})
        assert r.status_code == 200
        body = r.json()
        assert body["categories"] == {"c2": 3}
        assert body["structures"] == ["disc"]
        assert body["ideals"] == ["below"]
        assert body["warnings"] == []

    def test_error_shape(self, client):
        bad = "category c\nobjects a\narrow u : a -> zz"
        r = client.post("/workspace/parse", json={"workspace": bad})
        assert r.status_code == 422
        detail = r.json()["detail"]
        assert isinstance(detail, list)
        assert set(detail[0]) == {"line", "message", "hint"}
        assert detail[0]["line"] == 3


class TestRun:
    def test_validate(self, client, c2_text):
        r = client.post(
            "/run", json={"workspace": c2_text, "command": ["validate"]}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == 0
        assert body["report"]["schema"] == "fincat-report/1"
        names = [c["name"] for c in body["report"]["checks"]]
        assert "category:c2" in names and "structure:disc" in names

    def test_failed_check_reported_not_raised(self, client, data_dir):
        text = (data_dir / "m2.fincat").read_text()
        r = client.post(
            "/run",
            json={"workspace": text, "command": ["check-fs", "m2", "all_all"]},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == 1
        first = body["report"]["checks"][0]
        assert first["verdict"] == "fail"
        assert any("level=none" in w for w in first["witnesses"])

    def test_unknown_command_is_input_error(self, client, c2_text):
        r = client.post(
            "/run", json={"workspace": c2_text, "command": ["frobnicate"]}
        )
        assert r.status_code == 200
        assert r.json()["status"] == 2

    def test_unknown_format_rejected(self, client, c2_text):
        r = client.post(
            "/run",
            json={"workspace": c2_text, "command": ["validate"], "format": "xml"},
        )
        assert r.status_code == 422

    def test_json_determinism(self, client, c2_text):
        payload = {
            "workspace": c2_text,
            "command": ["enumerate", "fs", "c2"],
            "format": "json",
        }
        first = client.post("/run", json=payload)
        second = client.post("/run", json=payload)
        assert first.json()["rendered"] == second.json()["rendered"]
        assert first.json()["report"] == second.json()["report"]

    def test_no_timing_in_machine_report(self, client, c2_text):
        r = client.post(
            "/run",
            json={"workspace": c2_text, "command": ["validate"], "format": "json"},
        )
        assert "timing" not in r.json()["report"]
