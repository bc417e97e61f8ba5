import asyncio
import json

import httpx
import pytest

from ksa2d.cli import main
from ksa2d.service import create_app


class AsgiClient:
    """Synchronous adapter over the app's ASGI interface, no socket needed."""

    def __init__(self, app):
        self.app = app

    def _run(self, method: str, endpoint: str, body=None):
        async def go():
            transport = httpx.ASGITransport(app=self.app)
            async with httpx.AsyncClient(transport=transport, base_url="http://svc") as c:
                if method == "GET":
                    return await c.get(endpoint)
                return await c.post(endpoint, json=body)

        return asyncio.run(go())

    def get(self, endpoint: str):
        return self._run("GET", endpoint)

    def post(self, endpoint: str, json):
        return self._run("POST", endpoint, json)


@pytest.fixture(scope="module")
def client():
    return AsgiClient(create_app())


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_tables_endpoint(client):
    response = client.post("/tables", json={})
    assert response.status_code == 200
    body = response.json()
    assert len(body["table3"]) == 5
    assert "| εᵀσ₁ε′ |" in body["markdown"]


def test_verify_endpoint_algebraic(client):
    response = client.post("/verify", json={"geometry": "none"})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] and body["exit_code"] == 0
    assert all(c["passed"] for c in body["checks"])


def test_verify_endpoint_rejects_bad_config(client):
    response = client.post("/verify", json={"signature": "2,0"})
    assert response.status_code == 400


def test_deform_endpoint(client):
    response = client.post("/deform", json={"signature": "1,1", "bilinear": "-", "b": "1"})
    assert response.status_code == 200
    doc = response.json()["document"]
    assert doc["geometry_label"] == "ads2"


def test_deform_endpoint_chiral_rejected(client):
    response = client.post("/deform", json={"module": "chiral+", "b": "2"})
    assert response.status_code == 400
    assert "cohomology" in response.json()["detail"]


def test_cohomology_endpoint(client):
    response = client.post("/cohomology", json={"signature": "0,2", "bilinear": "-"})
    assert response.status_code == 200
    assert response.json()["dimension"] == 1


def test_geometry_endpoint(client):
    response = client.post(
        "/geometry", json={"geometry": "flat", "signature": "0,2", "bilinear": "-", "b": "0"}
    )
    assert response.status_code == 200
    assert response.json()["report"]["killing_spinor_dimension"] == 2


def test_cli_tables_markdown(capsys):
    assert main(["tables"]) == 0
    out = capsys.readouterr().out
    assert "### Summary" in out
    assert out.count("|") > 20


def test_cli_tables_byte_stable(capsys):
    main(["tables"])
    first = capsys.readouterr().out
    main(["tables"])
    second = capsys.readouterr().out
    assert first == second


def test_cli_tables_json(capsys):
    assert main(["tables", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["table3"]) == 5


def test_cli_tables_csv(capsys):
    assert main(["tables", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert "table1" in out and "table3" in out


def test_cli_verify_algebraic(capsys):
    code = main(["verify", "--geometry", "none"])
    out = capsys.readouterr().out
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_cli_verify_corrupted_exit_one(capsys):
    code = main(["verify", "--geometry", "none", "--fixture", "corrupted_bracket"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_cli_chiral_deformation_config_error(capsys):
    code = main(["verify", "--module", "chiral+", "-b", "1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "cohomology" in err


def test_cli_unknown_tolerance_config_error(capsys):
    code = main(["verify", "--geometry", "none", "--tolerance", "bogus=1"])
    assert code == 2


def test_cli_deform_json(capsys):
    code = main(["deform", "--signature", "1,1", "--bilinear", "-", "-b", "1"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["geometry_label"] == "ads2"


def test_cli_cohomology(capsys):
    code = main(["cohomology", "--signature", "1,1", "--bilinear", "+"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["dimension"] == 1


def test_cli_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("signature = 0,2\nbilinear = +\nb = 1/2\ngeometry = none\n")
    code = main(["deform", "--config", str(config), "-b", "1"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    # flag overrides the file's b = 1/2
    assert doc["deformation_parameter"] == "1"
    assert doc["signature"] == "0,2"


def test_cli_missing_config_file(capsys):
    assert main(["verify", "--config", "/nonexistent/path.cfg"]) == 2


def test_cli_unknown_config_key_rejected(tmp_path, capsys):
    config = tmp_path / "typo.cfg"
    config.write_text("signatur = 1,1\n")
    assert main(["verify", "--config", str(config), "--geometry", "none"]) == 2


def test_cli_geometry_flat_requires_zero_b(capsys):
    assert main(["geometry", "--geometry", "flat", "--bilinear", "-", "-b", "1"]) == 2


def test_cli_tolerance_override_changes_outcome(capsys):
    # an absurdly tight Jacobi tolerance makes a geometric check fail
    code = main(
        ["verify", "--geometry", "ads2", "--tolerance", "jacobi=1e-30"]
    )
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL  superalgebra_jacobi[ads2" in out
