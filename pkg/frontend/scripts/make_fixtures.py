"""Record service fixtures for the UI tests and generate the preloaded
samples module, so the TypeScript side and the recorded responses can never
drift apart.

Run from the repository root (the topovec package must be importable):

    python3 frontend/scripts/make_fixtures.py
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from topovec.service import create_app

FRONTEND = Path(__file__).resolve().parent.parent

ENSEMBLE_PARAMS = {"adaptive_template": {"k": 2}, "atol": {"b": 2}}


def preloaded_samples() -> dict:
    rng = np.random.default_rng(2024)
    angles = rng.uniform(0, 2 * np.pi, size=24)
    radii = 1.0 + rng.normal(0, 0.05, size=24)
    points = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])

    side = 8
    ys, xs = np.mgrid[0:side, 0:side]
    blob = np.exp(-((xs - 2.5) ** 2 + (ys - 2.5) ** 2) / 4.0)
    blob += np.exp(-((xs - 5.5) ** 2 + (ys - 5.0) ** 2) / 2.0)
    image = np.where(blob > blob.mean(), blob, 0.0)

    barcode_csv = "\n".join(
        [
            "dim,birth,death",
            "0,0.0,1.5",
            "0,0.0,0.75",
            "0,0.2,inf",
            "1,0.5,2.0",
            "1,0.5,2.0",
            "1,1.25,1.75",
        ]
    ) + "\n"

    return {
        "points": {
            "kind": "points",
            "name": "sample point cloud (noisy circle)",
            "payload": {
                "points": [[round(float(x), 6), round(float(y), 6)] for x, y in points],
                "max_scale": 2.0,
                "max_dim": 2,
            },
        },
        "image": {
            "kind": "image",
            "name": "sample image (two blobs)",
            "payload": {
                "image": {
                    "width": side,
                    "height": side,
                    "intensities": [round(float(v), 6) for v in image.ravel()],
                },
                "direction": "upper_star",
            },
        },
        "barcode": {
            "kind": "barcode",
            "name": "sample barcode file",
            "payload": barcode_csv,
        },
    }


def main() -> None:
    client = TestClient(create_app())
    samples = preloaded_samples()

    barcodes = {}
    for key, sample in samples.items():
        if sample["kind"] == "barcode":
            response = client.post(
                "/v1/barcode?kind=barcode",
                content=sample["payload"],
                headers={"content-type": "text/csv"},
            )
        else:
            response = client.post("/v1/barcode", json=sample["payload"])
        response.raise_for_status()
        barcodes[key] = response.json()

    methods = client.get("/v1/methods").json()["methods"]
    assert len(methods) == 13

    training = [barcodes[key]["barcodes"] for key in ("points", "image", "barcode")]
    fits = {}
    for method_id, params in ENSEMBLE_PARAMS.items():
        fit = client.post(
            "/v1/fit",
            json={"method": method_id, "params": params, "training": training,
                  "seed": 1, "fit_dim": 1},
        )
        fit.raise_for_status()
        fits[method_id] = fit.json()

    vectors = {}
    for info in methods:
        request = {
            "barcode": barcodes["points"]["barcodes"],
            "method": info["id"],
            "dims": [0, 1],
            "on_empty": "zeros",
        }
        if info["id"] in ENSEMBLE_PARAMS:
            request["params"] = ENSEMBLE_PARAMS[info["id"]]
        if info["requires_fit"]:
            request["model_id"] = fits[info["id"]]["model_id"]
        response = client.post("/v1/vectorize", json=request)
        response.raise_for_status()
        vectors[info["id"]] = {"request": request, "response": response.json()}

    no_model = client.post(
        "/v1/vectorize",
        json={"barcode": barcodes["points"]["barcodes"], "method": "atol", "dims": [1]},
    )
    assert no_model.status_code == 409

    fixtures = {
        "methods": methods,
        "samples": samples,
        "barcodes": barcodes,
        "fits": fits,
        "vectors": vectors,
        "fit_prompt": {"status": no_model.status_code, "body": no_model.json()},
    }
    out = FRONTEND / "fixtures" / "vectorize_fixtures.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(fixtures, indent=1, sort_keys=True))
    print(f"wrote {out}")

    samples_ts = FRONTEND / "src" / "samples.ts"
    samples_ts.write_text(
        "// GENERATED by scripts/make_fixtures.py -- do not edit by hand.\n"
        "// Preloaded datasets: one point cloud, one image, one barcode file.\n"
        "import type { Dataset } from \"./types.js\";\n\n"
        "export const SAMPLES: Record<string, Dataset> = "
        + json.dumps(samples, indent=2)
        + ";\n"
    )
    print(f"wrote {samples_ts}")


if __name__ == "__main__":
    main()
