import json

import pytest
from fastapi.testclient import TestClient

from chartloom.corpus.generate import ChartSpec, generate_synthetic_chart
from chartloom.reuse import DataTable
from chartloom.service.api import create_app
from chartloom.service.store import SessionStore


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def chart():
    return generate_synthetic_chart(ChartSpec("grouped_bar", 1, "A"))


@pytest.fixture(scope="module")
def csv_text(chart):
    return DataTable.from_rows(chart.build.rows).to_csv()


CHOICES = [
    {"field": "group"}, {"field": "series"},
    {"channel": "height", "field": "value"},
    {"channel": "fill", "field": "series"},
]


def drive(client, chart, csv_text, upto=None):
    sid = client.post("/sessions", content=chart.svg).json()["id"]
    client.post(f"/sessions/{sid}/deconstruct")
    client.post(f"/sessions/{sid}/dataset", content=csv_text)
    for i, choice in enumerate(CHOICES[:upto]):
        r = client.post(f"/sessions/{sid}/steps/{i}", json=choice)
        assert r.status_code == 200, r.text
    return sid


def test_unknown_session_404(client):
    assert client.get("/sessions/nope/plan").status_code == 404


def test_full_flow_and_export(client, chart, csv_text):
    sid = drive(client, chart, csv_text)
    exported = client.get(f"/sessions/{sid}/export").json()
    assert exported["svg"].startswith("<svg")
    assert exported["config"]["aggregation"] == "sum"
    assert exported["template"]["levelFields"]["1"] == "group"


def test_step_ahead_of_cursor_409(client, chart, csv_text):
    sid = drive(client, chart, csv_text, upto=1)
    r = client.post(f"/sessions/{sid}/steps/3", json=CHOICES[3])
    assert r.status_code == 409


def test_out_of_order_transitions_409(client, chart, csv_text):
    sid = client.post("/sessions", content=chart.svg).json()["id"]
    assert client.get(f"/sessions/{sid}/sample-data").status_code == 409
    assert client.post(f"/sessions/{sid}/dataset", content=csv_text).status_code == 409
    client.post(f"/sessions/{sid}/deconstruct")
    assert client.post(f"/sessions/{sid}/deconstruct").status_code == 409
    assert client.get(f"/sessions/{sid}/export").status_code == 409


def test_corrections_patch_roundtrip(client, chart):
    sid = client.post("/sessions", content=chart.svg).json()["id"]
    before = client.get(f"/sessions/{sid}/decorations").json()
    tier0 = before["decorations"]["xAxis"]["tiers"][0]
    drop_id = tier0[0]["elementId"]
    patched = client.patch(f"/sessions/{sid}/decorations", json=[
        {"kind": "AddTier", "target": "XAxis", "payload": {}},
        {"kind": "RemoveLabel", "target": "XAxis", "payload": {"elementIds": [drop_id]}},
    ]).json()
    assert len(patched["decorations"]["xAxis"]["tiers"]) == 2
    assert len(patched["decorations"]["xAxis"]["tiers"][0]) == len(tier0) - 1
    # corrections freeze after deconstruction
    client.post(f"/sessions/{sid}/deconstruct")
    r = client.patch(f"/sessions/{sid}/decorations", json=[
        {"kind": "RemoveDecoration", "target": "Legend", "payload": {}}])
    assert r.status_code == 409


def test_invalid_choice_422(client, chart, csv_text):
    sid = drive(client, chart, csv_text, upto=0)
    r = client.post(f"/sessions/{sid}/steps/0", json={"field": "no_such_column"})
    assert r.status_code == 422


def test_sample_data_csv(client, chart):
    sid = client.post("/sessions", content=chart.svg).json()["id"]
    client.post(f"/sessions/{sid}/deconstruct")
    r = client.get(f"/sessions/{sid}/sample-data")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/csv")
    assert r.text.count("\r\n") >= 2


def test_back_endpoint(client, chart, csv_text):
    sid = drive(client, chart, csv_text, upto=2)
    r = client.post(f"/sessions/{sid}/back").json()
    assert r["cursor"] == 1
    r = client.post(f"/sessions/{sid}/steps/1", json=CHOICES[1])
    assert r.status_code == 200


def test_session_isolation(client, chart, csv_text):
    a = drive(client, chart, csv_text, upto=1)
    b = drive(client, chart, csv_text, upto=0)
    plan_a = client.get(f"/sessions/{a}/plan").json()
    plan_b = client.get(f"/sessions/{b}/plan").json()
    assert plan_a["cursor"] == 1
    assert plan_b["cursor"] == 0
    assert plan_a["choices"] != plan_b["choices"]


def test_persistence_rehydrates_mid_session(tmp_path, chart, csv_text):
    store = SessionStore(directory=str(tmp_path))
    client1 = TestClient(create_app(store))
    sid = client1.post("/sessions", content=chart.svg).json()["id"]
    client1.post(f"/sessions/{sid}/deconstruct")
    client1.post(f"/sessions/{sid}/dataset", content=csv_text)
    client1.post(f"/sessions/{sid}/steps/0", json=CHOICES[0])
    view1 = client1.get(f"/sessions/{sid}/plan").json()

    fresh = TestClient(create_app(SessionStore(directory=str(tmp_path))))
    view2 = fresh.get(f"/sessions/{sid}/plan").json()
    assert view2["cursor"] == view1["cursor"]
    assert view2["choices"] == view1["choices"]
    assert view2["partialSvg"] == view1["partialSvg"]


def test_oversized_upload_rejected(client):
    r = client.post("/sessions", content="x" * (21 * 1024 * 1024))
    assert r.status_code == 413
