"""HTTP/JSON facade over the pipeline, versioned under /v1.

Stateless except for an in-memory store of fitted ensemble models keyed by a
content hash of their JSON serialization, so interactive fit-then-explore
sessions need no database.  Responses are deterministic functions of the
request (seeds are request parameters), hence byte-identical on repetition.
"""
from __future__ import annotations

import json
import math
from typing import Any

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import io, methods
from .barcode import Barcode, BarcodeError, EmptyBarcodeError, EssentialPolicy, Interval, normalize
from .ensemble import FitError, model_content_hash, model_from_json, model_to_json
from .filtration import (
    GrayscaleImage,
    PointCloud,
    ResourceBudgetError,
    cubical_complex,
    rips_complex,
)
from .reduction import compute_persistence

MAX_REQUEST_BYTES = 10 * 1024 * 1024
DEFAULT_DIMS = (0, 1)


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


def _barcode_to_json(b: Barcode) -> list[list]:
    bars = []
    for interval, mult in b:
        death: Any = "inf" if interval.is_essential else interval.death
        bars.append([interval.birth, death, mult])
    return bars


def _barcodes_to_json(barcodes: dict[int, Barcode]) -> dict[str, list]:
    return {str(dim): _barcode_to_json(b) for dim, b in sorted(barcodes.items())}


def _barcode_from_json(dim: int, bars: list) -> Barcode:
    entries = []
    for bar in bars:
        if not isinstance(bar, (list, tuple)) or len(bar) not in (2, 3):
            raise ApiError(400, f"bad bar entry {bar!r}; expected [birth, death(, mult)]")
        birth, death = bar[0], bar[1]
        mult = bar[2] if len(bar) == 3 else 1
        if death in ("inf", "Infinity", None):
            death = math.inf
        try:
            entries.append((Interval(float(birth), float(death)), int(mult)))
        except (TypeError, ValueError, BarcodeError) as exc:
            raise ApiError(400, f"bad bar entry {bar!r}: {exc}") from None
    try:
        return Barcode(dim, entries)
    except BarcodeError as exc:
        raise ApiError(400, str(exc)) from None


def _barcodes_from_json(payload) -> dict[int, Barcode]:
    if not isinstance(payload, dict):
        raise ApiError(400, "barcode payload must map dimension -> list of bars")
    out = {}
    for key, bars in payload.items():
        try:
            dim = int(key)
        except (TypeError, ValueError):
            raise ApiError(400, f"bad dimension key {key!r}") from None
        out[dim] = _barcode_from_json(dim, bars)
    return out


def _policy_from_query(policy: str, clamp_value: float | None) -> EssentialPolicy | None:
    if policy == "keep":
        return None
    if policy == "drop":
        return EssentialPolicy("drop")
    if policy == "clamp":
        return EssentialPolicy("clamp", clamp_value)
    raise ApiError(400, f"unknown essential policy {policy!r}")


def _parse_dims(text: str | None) -> tuple[int, ...]:
    if not text:
        return DEFAULT_DIMS
    try:
        dims = tuple(int(d) for d in text.split(",") if d != "")
    except ValueError:
        raise ApiError(400, f"bad dims {text!r}") from None
    return dims or DEFAULT_DIMS


def _compute_from_data(data: dict) -> dict[int, Barcode]:
    try:
        if "points" in data:
            pc = PointCloud(data["points"])
            max_scale = float(data.get("max_scale", 2.0))
            max_dim = int(data.get("max_dim", 2))
            fc = rips_complex(pc, max_scale=max_scale, max_dim=max_dim)
        elif "image" in data:
            img_spec = data["image"]
            img = GrayscaleImage(
                int(img_spec["width"]), int(img_spec["height"]), img_spec["intensities"]
            )
            fc = cubical_complex(img, direction=data.get("direction", "upper_star"))
        else:
            raise ApiError(400, "data payload needs 'points' or 'image'")
    except ResourceBudgetError as exc:
        raise ApiError(413, str(exc)) from None
    except (TypeError, ValueError, KeyError) as exc:
        if isinstance(exc, ApiError):
            raise
        raise ApiError(400, f"malformed data payload: {exc}") from None
    return compute_persistence(fc)


def _method_catalogue() -> list[dict]:
    entries = []
    for info in methods.list_methods():
        entries.append(
            {
                "id": info.id,
                "label": info.label,
                "category": info.category,
                "render_hint": info.render_hint,
                "requires_fit": info.requires_fit,
                "description": info.doc,
                "params": [
                    {
                        "name": p.name,
                        "kind": p.kind,
                        "default": p.default,
                        "grid": list(p.grid),
                        "choices": list(p.choices),
                        "doc": p.doc,
                    }
                    for p in info.params
                ],
            }
        )
    return entries


def create_app(
    point_budget_bytes: int = MAX_REQUEST_BYTES, static_dir: str | None = None
) -> FastAPI:
    app = FastAPI(title="topovec service", version="1")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    models: dict[str, tuple[object, dict]] = {}

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    @app.middleware("http")
    async def _limit_size(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > point_budget_bytes:
            return JSONResponse(
                status_code=413,
                content={"error": f"request exceeds {point_budget_bytes} bytes"},
            )
        return await call_next(request)

    @app.get("/v1/methods")
    async def get_methods():
        return {"methods": _method_catalogue()}

    @app.post("/v1/barcode")
    async def post_barcode(request: Request):
        content_type = (request.headers.get("content-type") or "").split(";")[0].strip()
        kind = request.query_params.get("kind")
        dims = _parse_dims(request.query_params.get("dims"))
        policy = _policy_from_query(
            request.query_params.get("policy", "clamp"),
            _float_or_none(request.query_params.get("clamp_value")),
        )
        body = await request.body()

        try:
            if content_type == "application/json":
                data = json.loads(body)
                if "barcode" in data:
                    barcodes = _barcodes_from_json(data["barcode"])
                else:
                    barcodes = await run_in_threadpool(_compute_from_data, data)
            elif content_type == "text/csv":
                if kind == "barcode":
                    barcodes = io.parse_barcodes(body.decode("utf-8"))
                elif kind == "points":
                    pc = io.parse_point_cloud(body.decode("utf-8"))
                    barcodes = await run_in_threadpool(
                        _compute_from_data,
                        {
                            "points": pc.points.tolist(),
                            "max_scale": _float_or_default(
                                request.query_params.get("max_scale"), 2.0
                            ),
                            "max_dim": int(request.query_params.get("max_dim", 2)),
                        },
                    )
                elif kind == "image":
                    img = io.parse_image_csv(body.decode("utf-8"))
                    barcodes = await run_in_threadpool(_cubical, request, img)
                else:
                    raise ApiError(400, "text/csv uploads need ?kind=barcode|points|image")
            elif content_type == "image/x-portable-graymap":
                barcodes = await run_in_threadpool(_cubical, request, io.parse_pgm(body))
            else:
                raise ApiError(400, f"unsupported content type {content_type!r}")
        except (io.BarcodeFileError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ApiError(400, f"malformed payload: {exc}") from None
        except ResourceBudgetError as exc:
            raise ApiError(413, str(exc)) from None
        except (ValueError,) as exc:
            if isinstance(exc, ApiError):
                raise
            raise ApiError(400, str(exc)) from None

        if policy is not None:
            barcodes = {d: normalize(b, policy) for d, b in barcodes.items()}
        selected = {d: barcodes.get(d, Barcode(d)) for d in dims}
        return {"dims": list(dims), "barcodes": _barcodes_to_json(selected)}

    def _cubical(request: Request, img: GrayscaleImage) -> dict[int, Barcode]:
        direction = request.query_params.get("direction", "upper_star")
        try:
            fc = cubical_complex(img, direction=direction)
        except ResourceBudgetError as exc:
            raise ApiError(413, str(exc)) from None
        return compute_persistence(fc)

    @app.post("/v1/vectorize")
    async def post_vectorize(request: Request):
        try:
            data = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"malformed JSON: {exc}") from None
        method_id = data.get("method")
        try:
            info = methods.get_method(method_id).info
        except methods.UnknownMethodError as exc:
            raise ApiError(400, str(exc)) from None
        try:
            params = methods.resolve_params(method_id, data.get("params"))
        except methods.ParameterError as exc:
            raise ApiError(400, str(exc)) from None

        if "barcode" in data:
            policy = _policy_from_query(data.get("policy", "clamp"), data.get("clamp_value"))
            barcodes = _barcodes_from_json(data["barcode"])
            if policy is not None:
                barcodes = {d: normalize(b, policy) for d, b in barcodes.items()}
        elif "data" in data:
            barcodes = await run_in_threadpool(_compute_from_data, data["data"])
            barcodes = {d: normalize(b) for d, b in barcodes.items()}
        else:
            raise ApiError(400, "vectorize request needs 'barcode' or 'data'")

        dims = tuple(int(d) for d in data.get("dims", DEFAULT_DIMS))
        states = None
        if info.requires_fit:
            model_id = data.get("model_id")
            training = data.get("training")
            if model_id:
                if model_id not in models:
                    raise ApiError(409, f"unknown model id {model_id!r}; fit first")
                model, meta = models[model_id]
                if meta.get("method") != method_id:
                    raise ApiError(409, f"model {model_id} was fitted for {meta.get('method')!r}")
                states = {d: model for d in dims}
            elif training is not None:
                states = await run_in_threadpool(
                    _fit_states_inline, method_id, params, training, dims,
                    int(data.get("seed", 0)),
                )
            else:
                raise ApiError(
                    409, f"method {method_id!r} requires a fitted model: "
                    "supply model_id (see POST /v1/fit) or an inline training set"
                )
        try:
            fv = await run_in_threadpool(
                methods.transform_dims,
                method_id, barcodes, dims, params=params, states=states,
                on_empty=data.get("on_empty", "raise"),
            )
        except EmptyBarcodeError as exc:
            raise ApiError(400, f"{exc}; pass on_empty='zeros' to zero-fill") from None
        except (methods.NeedsFitError,) as exc:
            raise ApiError(409, str(exc)) from None
        except (BarcodeError, ValueError) as exc:
            raise ApiError(400, str(exc)) from None

        return {
            "method": method_id,
            "params": fv.params,
            "dims": list(fv.dims),
            # + 0.0 turns -0.0 into 0.0, whose JSON form round-trips through
            # JavaScript unchanged
            "values": [float(v) + 0.0 for v in fv.values],
            "labels": list(fv.labels),
            "render_hint": info.render_hint,
            "meta": fv.meta,
        }

    def _fit_states_inline(method_id, params, training, dims, seed):
        states = {}
        for d in dims:
            barcodes = []
            for sample in training:
                sample_barcodes = _barcodes_from_json(sample)
                barcodes.append(normalize(sample_barcodes.get(d, Barcode(d))))
            try:
                states[d] = methods.fit_state(method_id, barcodes, params, seed=seed)
            except FitError as exc:
                raise ApiError(400, f"cannot fit {method_id}: {exc}") from None
        return states

    @app.post("/v1/fit")
    async def post_fit(request: Request):
        try:
            data = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"malformed JSON: {exc}") from None
        method_id = data.get("method")
        try:
            info = methods.get_method(method_id).info
        except methods.UnknownMethodError as exc:
            raise ApiError(400, str(exc)) from None
        if not info.requires_fit:
            raise ApiError(400, f"method {method_id!r} does not persist a fitted model")
        try:
            params = methods.resolve_params(method_id, data.get("params"))
        except methods.ParameterError as exc:
            raise ApiError(400, str(exc)) from None
        training = data.get("training")
        if not training:
            raise ApiError(400, "fit request needs a nonempty 'training' list")
        seed = int(data.get("seed", 0))
        fit_dim = int(data.get("fit_dim", 1))
        barcodes = []
        for sample in training:
            sample_barcodes = _barcodes_from_json(sample)
            barcodes.append(normalize(sample_barcodes.get(fit_dim, Barcode(fit_dim))))
        try:
            state = await run_in_threadpool(
                methods.fit_state, method_id, barcodes, params, seed=seed
            )
        except FitError as exc:
            raise ApiError(400, f"cannot fit {method_id}: {exc}") from None
        text = model_to_json(state, method=method_id, params=params, seed=seed)
        model_id = model_content_hash(text)
        models[model_id] = (state, {"method": method_id, "params": params, "seed": seed})
        return {"model_id": model_id, "model": json.loads(text)}

    @app.get("/v1/models/{model_id}")
    async def get_model(model_id: str):
        if model_id not in models:
            raise ApiError(404, f"unknown model id {model_id!r}")
        state, meta = models[model_id]
        text = model_to_json(state, method=meta["method"], params=meta["params"],
                             seed=meta["seed"])
        return json.loads(text)

    @app.post("/v1/models")
    async def import_model(request: Request):
        body = await request.body()
        try:
            state, meta = model_from_json(body.decode("utf-8"))
        except (ValueError, KeyError, UnicodeDecodeError) as exc:
            raise ApiError(400, f"malformed model JSON: {exc}") from None
        text = model_to_json(state, method=meta.get("method"),
                             params=meta.get("params") or {}, seed=meta.get("seed") or 0)
        model_id = model_content_hash(text)
        models[model_id] = (state, meta)
        return {"model_id": model_id}

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _float_or_none(text: str | None) -> float | None:
    return None if text is None else float(text)


def _float_or_default(text: str | None, default: float) -> float:
    return default if text is None else float(text)
