"""The /v1 HTTP facade: catalogue, barcode computation, vectorization, fitted
models, error codes, and byte-level determinism."""
import json
import math

import pytest
from fastapi.testclient import TestClient

from topovec.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


UNIT_SQUARE = {"points": [[0, 0], [0, 1], [1, 0], [1, 1]], "max_scale": 2, "max_dim": 2}
TWO_BARS = {"1": [[0, 2], [1, 3]]}


def test_methods_catalogue(client):
    payload = client.get("/v1/methods").json()
    assert len(payload["methods"]) == 13
    by_id = {m["id"]: m for m in payload["methods"]}
    silhouette = by_id["persistence_silhouette"]
    alpha = [p for p in silhouette["params"] if p["name"] == "alpha"][0]
    assert alpha["grid"] == [0, 1, 2, 5, 10, 20]
    assert by_id["betti_curve"]["render_hint"] == "curve"
    assert by_id["atol"]["requires_fit"] is True
    assert by_id["persistence_statistics"]["render_hint"] == "table"


def test_unknown_path_is_404(client):
    assert client.get("/v1/does-not-exist").status_code == 404


def test_barcode_from_point_cloud(client):
    response = client.post("/v1/barcode", json=UNIT_SQUARE)
    assert response.status_code == 200
    payload = response.json()
    assert payload["dims"] == [0, 1]
    h1 = payload["barcodes"]["1"]
    assert [h1[0][0], h1[0][1]] == [1.0, math.sqrt(2)]


def test_barcode_csv_passthrough_is_normalized_echo(client):
    csv = "dim,birth,death\n0,0,1\n0,0,1\n0,2,2\n1,0,inf\n"
    response = client.post(
        "/v1/barcode?kind=barcode&policy=drop",
        content=csv,
        headers={"content-type": "text/csv"},
    )
    assert response.status_code == 200
    barcodes = response.json()["barcodes"]
    assert barcodes["0"] == [[0.0, 1.0, 2]]  # merged, zero-length dropped
    assert barcodes["1"] == []  # essential dropped


def test_barcode_keep_policy_serializes_inf(client):
    response = client.post(
        "/v1/barcode?kind=barcode&policy=keep",
        content="0,0,inf\n",
        headers={"content-type": "text/csv"},
    )
    assert response.json()["barcodes"]["0"] == [[0.0, "inf", 1]]


def test_barcode_pgm_upload(client):
    response = client.post(
        "/v1/barcode?dims=0",
        content=b"P2\n2 1\n255\n10 30\n",
        headers={"content-type": "image/x-portable-graymap"},
    )
    assert response.status_code == 200
    assert response.json()["barcodes"]["0"]


def test_barcode_point_csv_upload(client):
    response = client.post(
        "/v1/barcode?kind=points&max_scale=2&max_dim=2",
        content="0,0\n0,1\n1,0\n1,1\n",
        headers={"content-type": "text/csv"},
    )
    h1 = response.json()["barcodes"]["1"]
    assert h1[0][:2] == [1.0, math.sqrt(2)]


def test_barcode_malformed_payloads(client):
    assert client.post("/v1/barcode", json={"nothing": 1}).status_code == 400
    bad_csv = client.post(
        "/v1/barcode?kind=barcode", content="1,2,1\n", headers={"content-type": "text/csv"}
    )
    assert bad_csv.status_code == 400
    assert "line 1" in bad_csv.json()["error"]
    assert (
        client.post("/v1/barcode", content=b"{", headers={"content-type": "application/json"})
        .status_code
        == 400
    )


def test_oversized_point_cloud_is_413(client):
    big = {"points": [[i, 0] for i in range(600)], "max_scale": 1, "max_dim": 1}
    assert client.post("/v1/barcode", json=big).status_code == 413


def test_oversized_body_is_413(client):
    huge = b"0" * (11 * 1024 * 1024)
    response = client.post(
        "/v1/barcode?kind=barcode", content=huge, headers={"content-type": "text/csv"}
    )
    assert response.status_code == 413


def test_vectorize_statistics_entropy(client):
    response = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "persistence_statistics", "dims": [1]},
    )
    payload = response.json()
    values = dict(zip(payload["labels"], payload["values"]))
    assert values["d1_entropy"] == pytest.approx(math.log(2), abs=1e-12)
    assert payload["render_hint"] == "table"


def test_vectorize_render_hints(client):
    response = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "betti_curve", "dims": [1]},
    )
    assert response.json()["render_hint"] == "curve"


def test_vectorize_from_raw_data(client):
    response = client.post(
        "/v1/vectorize",
        json={"data": UNIT_SQUARE, "method": "algebraic_functions", "dims": [1]},
    )
    values = response.json()["values"]
    # H1 = {[1, sqrt2]}: f1 = 1*(sqrt2-1)
    assert values[0] == pytest.approx(math.sqrt(2) - 1, abs=1e-12)


def test_vectorize_bad_params_is_400(client):
    response = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "betti_curve", "params": {"resolution": "x"}},
    )
    assert response.status_code == 400
    assert (
        client.post("/v1/vectorize", json={"barcode": TWO_BARS, "method": "mystery"})
        .status_code
        == 400
    )


def test_vectorize_empty_barcode_400_unless_zero_fill(client):
    request = {"barcode": {"0": [[0, 1]]}, "method": "persistence_statistics", "dims": [0, 1]}
    assert client.post("/v1/vectorize", json=request).status_code == 400
    ok = client.post("/v1/vectorize", json={**request, "on_empty": "zeros"})
    assert ok.status_code == 200
    assert ok.json()["values"][38:] == [0.0] * 38


def test_ensemble_requires_fit_409(client):
    response = client.post(
        "/v1/vectorize", json={"barcode": TWO_BARS, "method": "atol", "dims": [1]}
    )
    assert response.status_code == 409
    response2 = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "atol", "dims": [1], "model_id": "nope"},
    )
    assert response2.status_code == 409


def test_fit_then_vectorize_and_model_round_trip(client):
    training = [
        {"1": [[0.0, 1.0], [1.0, 2.0]]},
        {"1": [[0.5, 1.5], [2.0, 4.0]]},
        {"1": [[0.25, 1.25]]},
    ]
    fit = client.post(
        "/v1/fit",
        json={"method": "atol", "params": {"b": 2}, "training": training, "seed": 5},
    )
    assert fit.status_code == 200
    model_id = fit.json()["model_id"]

    vect = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "atol", "params": {"b": 2},
              "dims": [1], "model_id": model_id},
    )
    assert vect.status_code == 200
    assert len(vect.json()["values"]) == 2

    exported = client.get(f"/v1/models/{model_id}")
    assert exported.status_code == 200
    imported = client.post("/v1/models", content=json.dumps(exported.json()))
    assert imported.json()["model_id"] == model_id  # content-addressed

    # wrong method for the model id
    mismatch = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "adaptive_template",
              "dims": [1], "model_id": model_id},
    )
    assert mismatch.status_code == 409


def test_vectorize_with_inline_training(client):
    training = [{"1": [[0.0, 1.0], [1.0, 2.0]]}, {"1": [[0.5, 1.5], [2.0, 4.0]]}]
    response = client.post(
        "/v1/vectorize",
        json={"barcode": TWO_BARS, "method": "atol", "params": {"b": 2},
              "dims": [1], "training": training, "seed": 5},
    )
    assert response.status_code == 200


def test_unknown_model_404(client):
    assert client.get("/v1/models/missing").status_code == 404


def test_atol_closed_form_example_via_api(client):
    # import a hand-built model (centres (0,0) and (0,2), unit scales) and
    # reproduce the closed-form feature vector (e^-2, 1) through the API
    model = {
        "kind": "atol",
        "centers": [[0.0, 0.0], [0.0, 2.0]],
        "scales": [1.0, 1.0],
        "scale_mode": "max",
        "method": "atol",
        "params": {"b": 2, "scale_mode": "max"},
        "seed": 0,
    }
    imported = client.post("/v1/models", content=json.dumps(model))
    assert imported.status_code == 200
    response = client.post(
        "/v1/vectorize",
        json={"barcode": {"0": [[0, 2]]}, "method": "atol", "params": {"b": 2},
              "dims": [0], "model_id": imported.json()["model_id"]},
    )
    values = response.json()["values"]
    assert values[0] == pytest.approx(math.exp(-2), abs=1e-12)
    assert values[1] == pytest.approx(1.0, abs=1e-12)


def test_landscape_example_values_via_api(client):
    # {[0,2],[1,3]} sampled on [0,3]: level 1 at t=1.5 is 0.5, level 2 too
    response = client.post(
        "/v1/vectorize",
        json={"barcode": {"1": [[0, 2], [1, 3]]}, "method": "persistence_landscape",
              "params": {"num_landscapes": 2, "resolution": 7}, "dims": [1]},
    )
    payload = response.json()
    values = dict(zip(payload["labels"], payload["values"]))
    grid = payload["meta"]["d1"]["grid"]
    i = grid.index(1.5)
    assert values[f"d1_L1_t{i}"] == pytest.approx(0.5)
    assert values[f"d1_L2_t{i}"] == pytest.approx(0.5)
    j = grid.index(1.0)
    assert values[f"d1_L1_t{j}"] == pytest.approx(1.0)
    assert values[f"d1_L2_t{j}"] == pytest.approx(0.0)


def test_silhouette_example_values_via_api(client):
    response = client.post(
        "/v1/vectorize",
        json={"barcode": {"1": [[0, 2], [1, 3]]}, "method": "persistence_silhouette",
              "params": {"alpha": 0, "resolution": 7}, "dims": [1]},
    )
    payload = response.json()
    grid = payload["meta"]["d1"]["grid"]
    assert payload["values"][grid.index(1.5)] == pytest.approx(0.5)
    assert payload["values"][grid.index(1.0)] == pytest.approx(0.5)


def test_responses_byte_identical(client):
    request = {"barcode": TWO_BARS, "method": "persistence_landscape",
               "params": {"num_landscapes": 3, "resolution": 20}, "dims": [1]}
    first = client.post("/v1/vectorize", json=request)
    second = client.post("/v1/vectorize", json=request)
    assert first.content == second.content


def test_every_method_works_through_api(client):
    methods_payload = client.get("/v1/methods").json()["methods"]
    training = [
        {"0": [[0.0, 1.0], [0.2, 0.8]], "1": [[0.5, 1.5], [1.0, 3.0]]},
        {"0": [[0.1, 1.2]], "1": [[0.25, 2.25], [2.0, 4.0]]},
        {"0": [[0.0, 0.9], [0.3, 1.8]], "1": [[0.75, 1.75]]},
    ]
    barcode = {"0": [[0.0, 1.0], [0.5, 2.0]], "1": [[0.0, 2.0], [1.0, 3.0]]}
    for info in methods_payload:
        request = {"barcode": barcode, "method": info["id"], "dims": [0, 1]}
        if info["id"] == "adaptive_template":
            request["params"] = {"k": 2}
        elif info["id"] == "atol":
            request["params"] = {"b": 2}
        if info["requires_fit"]:
            request["training"] = training
            request["seed"] = 1
        response = client.post("/v1/vectorize", json=request)
        assert response.status_code == 200, (info["id"], response.text)
        payload = response.json()
        assert payload["render_hint"] == info["render_hint"]
        assert len(payload["values"]) == len(payload["labels"]) > 0
