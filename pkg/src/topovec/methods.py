"""Catalogue of the thirteen vectorization methods behind one fit/transform
interface.

Every method is described by a MethodInfo (parameters with defaults and the
documented sweep grids, a render hint for UIs, whether it needs a training
fit) and implemented as a pair of functions: ``fit`` turns training barcodes
into an immutable state (sampling ranges, grids, codebooks), ``transform``
maps one barcode to a fixed-length vector under that state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import algebraic, curves, ensemble, functional, statistics
from .barcode import Barcode

CATEGORIES = ("statistical", "algebraic", "curve", "functional", "ensemble")
RENDER_HINTS = ("table", "bars", "curve", "heatmap")


class UnknownMethodError(KeyError):
    pass


class ParameterError(ValueError):
    pass


class NeedsFitError(RuntimeError):
    """An ensemble method was invoked without a fitted model."""


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # "int" | "float" | "choice"
    default: object
    grid: tuple = ()
    doc: str = ""
    choices: tuple = ()

    def coerce(self, value):
        try:
            if self.kind == "int":
                if float(value) != int(float(value)):
                    raise ValueError
                return int(float(value))
            if self.kind == "float":
                return float(value)
            if self.kind == "choice":
                if value not in self.choices:
                    raise ValueError
                return value
        except (TypeError, ValueError):
            raise ParameterError(
                f"parameter {self.name!r}: cannot interpret {value!r} as {self.kind}"
                + (f" from {self.choices}" if self.choices else "")
            ) from None
        raise ParameterError(f"parameter {self.name!r} has unknown kind {self.kind!r}")


@dataclass(frozen=True)
class MethodInfo:
    id: str
    label: str
    category: str
    render_hint: str
    params: tuple[ParamSpec, ...] = ()
    requires_fit: bool = False
    doc: str = ""


@dataclass(frozen=True)
class Method:
    info: MethodInfo
    fit: Callable  # (training: Sequence[Barcode], params, seed) -> state
    transform: Callable  # (barcode, params, state) -> (values, meta)


@dataclass(frozen=True)
class FeatureVector:
    """Feature values plus the provenance needed to reproduce them."""

    values: np.ndarray
    method: str
    params: dict
    dims: tuple[int, ...]
    labels: tuple[str, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if len(self.labels) != values.size:
            raise ValueError("one label per feature value required")
        object.__setattr__(self, "values", values)


_RESOLUTION = ParamSpec(
    "resolution", "int", 100, grid=(50, 100, 200), doc="number of grid samples"
)


def _grid_labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


def _curve_meta(curve) -> dict:
    return {"grid": [float(t) for t in curve.grid]}


# ---------------------------------------------------------------- statistical

def _fit_range(training, params, seed):
    nonempty = [b for b in training if not b.is_empty]
    if not nonempty:
        return None
    lo = min(b.min_birth for b in nonempty)
    hi = max(b.max_death for b in nonempty)
    if hi <= lo:
        hi = lo + max(1e-9, 1e-9 * abs(lo))
    return (lo, hi)


def _stats_transform(b, params, state):
    return statistics.persistence_statistics(b).to_array(), {}


def _entropy_summary_transform(b, params, state):
    curve = statistics.entropy_summary(b, params["resolution"], t_range=state)
    return curve.values, _curve_meta(curve)


# ------------------------------------------------------------------ algebraic

def _algebraic_transform(b, params, state):
    return algebraic.algebraic_functions(b), {}


def _tropical_transform(b, params, state):
    return algebraic.tropical_coordinates(b, params["r"]), {}


def _complex_poly_transform(b, params, state):
    coeffs = algebraic.complex_polynomial(b, params["transform"], params["n_coeffs"])
    return coeffs.to_features(), {}


# ---------------------------------------------------------------------- curve

def _betti_transform(b, params, state):
    curve = curves.betti_curve(b, params["resolution"], t_range=state)
    return curve.values, _curve_meta(curve)


def _lifespan_transform(b, params, state):
    curve = curves.lifespan_curve(b, params["resolution"], t_range=state)
    return curve.values, _curve_meta(curve)


def _landscape_transform(b, params, state):
    stack = curves.landscapes(
        b, params["num_landscapes"], params["resolution"], t_range=state
    )
    meta = {"grid": [float(t) for t in stack.grid], "levels": stack.k}
    return stack.flatten(), meta


def _silhouette_transform(b, params, state):
    curve = curves.silhouette(b, params["alpha"], params["resolution"], t_range=state)
    return curve.values, _curve_meta(curve)


# ----------------------------------------------------------------- functional

def _fit_image_grid(training, params, seed):
    nonempty = [b for b in training if not b.is_empty]
    if not nonempty:
        return None
    return functional.fit_image_grid(
        nonempty, params["resolution"], params["resolution"], params["bandwidth"]
    )


def _image_transform(b, params, state):
    if state is None:
        state = functional.ImageGrid((0.0, 1.0), (0.0, 1.0), params["resolution"],
                                     params["resolution"], params["bandwidth"])
    values = functional.persistence_image(b, state)
    meta = {
        "nx": state.nx,
        "ny": state.ny,
        "x_range": list(state.x_range),
        "y_range": list(state.y_range),
        "sigma": state.sigma,
    }
    return values, meta


def _fit_tent_grid(training, params, seed):
    nonempty = [b for b in training if not b.is_empty]
    if not nonempty:
        return None
    return functional.fit_tent_grid(nonempty, params["d"], params["padding"])


def _tent_transform(b, params, state):
    if state is None:
        raise NeedsFitError("template_function needs at least one nonempty barcode to place tents")
    values = functional.tent_template_features(b, state)
    meta = {"box": list(state.box), "d": state.d, "delta": state.delta}
    return values, meta


# ------------------------------------------------------------------- ensemble

def _fit_adaptive(training, params, seed):
    return ensemble.fit_adaptive_templates(
        training, params["k"], coverage_scale=params["coverage_scale"], seed=seed
    )


def _adaptive_transform(b, params, state):
    if state is None:
        raise NeedsFitError("adaptive_template requires a fitted model")
    values = ensemble.adaptive_template_features(b, state)
    meta = {"centers": [list(t.center) for t in state]}
    return values, meta


def _fit_atol(training, params, seed):
    return ensemble.fit_atol(training, params["b"], seed=seed, scale_mode=params["scale_mode"])


def _atol_transform(b, params, state):
    if state is None:
        raise NeedsFitError("atol requires a fitted model")
    values = ensemble.atol_features(b, model=state)
    meta = {"centers": [list(c) for c in state.centers], "scales": list(state.scales)}
    return values, meta


def _no_fit(training, params, seed):
    return None


_METHODS: dict[str, Method] = {}


def _register(info: MethodInfo, fit, transform) -> None:
    _METHODS[info.id] = Method(info, fit, transform)


_register(
    MethodInfo(
        "persistence_statistics",
        "Persistence Statistics",
        "statistical",
        "table",
        doc="38 summary statistics of births, deaths, midpoints and lifespans.",
    ),
    _no_fit,
    _stats_transform,
)
_register(
    MethodInfo(
        "entropy_summary",
        "Entropy Summary",
        "statistical",
        "curve",
        params=(_RESOLUTION,),
        doc="Entropy of the alive bars, sampled along the filtration axis.",
    ),
    _fit_range,
    _entropy_summary_transform,
)
_register(
    MethodInfo(
        "algebraic_functions",
        "Algebraic Functions",
        "algebraic",
        "bars",
        doc="Five polynomial coordinates of the bar endpoints.",
    ),
    _no_fit,
    _algebraic_transform,
)
_register(
    MethodInfo(
        "tropical_coordinates",
        "Tropical Coordinates",
        "algebraic",
        "bars",
        params=(
            ParamSpec("r", "int", 10, grid=(10, 50, 250, 500, 800),
                      doc="clamping factor between lifespans and births"),
        ),
        doc="Seven max-plus coordinates, stable alternatives to the polynomial ones.",
    ),
    _no_fit,
    _tropical_transform,
)
_register(
    MethodInfo(
        "complex_polynomial",
        "Complex Polynomial",
        "algebraic",
        "bars",
        params=(
            ParamSpec("transform", "choice", "R", choices=algebraic.COMPLEX_TRANSFORMS,
                      grid=algebraic.COMPLEX_TRANSFORMS,
                      doc="map from bars to complex roots"),
            ParamSpec("n_coeffs", "int", 10, grid=(5, 10, 20),
                      doc="number of leading coefficients kept"),
        ),
        doc="Leading coefficients of a polynomial whose roots encode the bars.",
    ),
    _no_fit,
    _complex_poly_transform,
)
_register(
    MethodInfo(
        "betti_curve",
        "Betti Curve",
        "curve",
        "curve",
        params=(_RESOLUTION,),
        doc="Number of alive bars per grid point.",
    ),
    _fit_range,
    _betti_transform,
)
_register(
    MethodInfo(
        "lifespan_curve",
        "Lifespan Curve",
        "curve",
        "curve",
        params=(_RESOLUTION,),
        doc="Total lifespan of alive bars per grid point.",
    ),
    _fit_range,
    _lifespan_transform,
)
_register(
    MethodInfo(
        "persistence_landscape",
        "Persistence Landscape",
        "curve",
        "curve",
        params=(
            ParamSpec("num_landscapes", "int", 5, grid=(2, 5, 10, 20),
                      doc="number of landscape levels"),
            _RESOLUTION,
        ),
        doc="Level curves of the k-th largest tent value, level-major flattened.",
    ),
    _fit_range,
    _landscape_transform,
)
_register(
    MethodInfo(
        "persistence_silhouette",
        "Persistence Silhouette",
        "curve",
        "curve",
        params=(
            ParamSpec("alpha", "float", 0.0, grid=(0, 1, 2, 5, 10, 20),
                      doc="lifespan-power weighting exponent"),
            _RESOLUTION,
        ),
        doc="Lifespan-weighted average of the tent functions.",
    ),
    _fit_range,
    _silhouette_transform,
)
_register(
    MethodInfo(
        "persistence_image",
        "Persistence Image",
        "functional",
        "heatmap",
        params=(
            ParamSpec("resolution", "int", 25, grid=(25, 75, 150),
                      doc="pixels per image side"),
            ParamSpec("bandwidth", "float", 0.05, grid=(0.05, 1.0),
                      doc="Gaussian bandwidth in filtration units"),
        ),
        doc="Exact pixel integrals of a lifespan-weighted Gaussian surface.",
    ),
    _fit_image_grid,
    _image_transform,
)
_register(
    MethodInfo(
        "template_function",
        "Template Function",
        "functional",
        "bars",
        params=(
            ParamSpec("d", "int", 10, grid=(35, 50, 65),
                      doc="tents per axis of the covering grid"),
            ParamSpec("padding", "float", 1.0, grid=(20, 25, 30),
                      doc="margin added around the data box"),
        ),
        doc="Evaluations against a square grid of tent bumps.",
    ),
    _fit_tent_grid,
    _tent_transform,
)
_register(
    MethodInfo(
        "adaptive_template",
        "Adaptive Template System",
        "ensemble",
        "bars",
        params=(
            ParamSpec("k", "int", 10, grid=(10, 20, 30, 40, 50),
                      doc="number of ellipse templates"),
            ParamSpec("coverage_scale", "float", 2.0,
                      doc="sigma multiple covered by each ellipse"),
        ),
        requires_fit=True,
        doc="Ellipse bumps fitted to the training bars by a Gaussian mixture.",
    ),
    _fit_adaptive,
    _adaptive_transform,
)
_register(
    MethodInfo(
        "atol",
        "ATOL",
        "ensemble",
        "bars",
        params=(
            ParamSpec("b", "int", 8, grid=(2, 4, 8, 16, 32, 64),
                      doc="codebook size"),
            ParamSpec("scale_mode", "choice", "max", choices=("max", "min"),
                      doc="half the farthest or nearest other centre"),
        ),
        requires_fit=True,
        doc="Exponential contrast against a k-means codebook of the training bars.",
    ),
    _fit_atol,
    _atol_transform,
)

METHOD_IDS = tuple(_METHODS)
assert len(METHOD_IDS) == 13


def get_method(method_id: str) -> Method:
    try:
        return _METHODS[method_id]
    except KeyError:
        raise UnknownMethodError(
            f"unknown method {method_id!r}; expected one of {', '.join(METHOD_IDS)}"
        ) from None


def list_methods() -> list[MethodInfo]:
    return [m.info for m in _METHODS.values()]


def resolve_params(method_id: str, params: dict | None) -> dict:
    """Merge user parameters over defaults, rejecting unknown names."""
    method = get_method(method_id)
    known = {p.name: p for p in method.info.params}
    resolved = {name: spec.default for name, spec in known.items()}
    for name, value in (params or {}).items():
        if name not in known:
            raise ParameterError(
                f"method {method_id!r} has no parameter {name!r}"
                + (f"; expected {sorted(known)}" if known else " (it takes none)")
            )
        resolved[name] = known[name].coerce(value)
    return resolved


def feature_width(method_id: str, params: dict | None = None) -> int:
    """Output vector length, derivable from the parameters alone."""
    p = resolve_params(method_id, params)
    widths = {
        "persistence_statistics": lambda: len(statistics.FIELD_ORDER),
        "entropy_summary": lambda: p["resolution"],
        "algebraic_functions": lambda: 5,
        "tropical_coordinates": lambda: 7,
        "complex_polynomial": lambda: 2 * p["n_coeffs"],
        "betti_curve": lambda: p["resolution"],
        "lifespan_curve": lambda: p["resolution"],
        "persistence_landscape": lambda: p["num_landscapes"] * p["resolution"],
        "persistence_silhouette": lambda: p["resolution"],
        "persistence_image": lambda: p["resolution"] ** 2,
        "template_function": lambda: p["d"] ** 2,
        "adaptive_template": lambda: p["k"],
        "atol": lambda: p["b"],
    }
    return widths[method_id]()


def feature_labels(method_id: str, params: dict | None = None) -> tuple[str, ...]:
    """Per-feature labels, derivable from the parameters alone (barcode-free),
    so batch headers stay consistent across samples."""
    p = resolve_params(method_id, params)
    if method_id == "persistence_statistics":
        return statistics.FIELD_ORDER
    if method_id in ("entropy_summary", "betti_curve", "lifespan_curve", "persistence_silhouette"):
        return _grid_labels("t", p["resolution"])
    if method_id == "algebraic_functions":
        return (
            "birth_lifespan_sum",
            "death_gap_lifespan_sum",
            "birth_sq_lifespan4_sum",
            "death_gap_sq_lifespan4_sum",
            "max_lifespan",
        )
    if method_id == "tropical_coordinates":
        return (
            "top1_lifespan",
            "top2_lifespan_sum",
            "top3_lifespan_sum",
            "top4_lifespan_sum",
            "total_lifespan",
            "clamped_birth_sum",
            "max_shift_gap_sum",
        )
    if method_id == "complex_polynomial":
        labels: list[str] = []
        for i in range(p["n_coeffs"]):
            labels += [f"c{i + 1}_re", f"c{i + 1}_im"]
        return tuple(labels)
    if method_id == "persistence_landscape":
        return tuple(
            f"L{level + 1}_t{i}"
            for level in range(p["num_landscapes"])
            for i in range(p["resolution"])
        )
    if method_id == "persistence_image":
        n = p["resolution"]
        return tuple(f"px_y{iy}_x{ix}" for iy in range(n) for ix in range(n))
    if method_id == "template_function":
        return tuple(f"tent{i}" for i in range(p["d"] ** 2))
    if method_id == "adaptive_template":
        return tuple(f"ellipse{i}" for i in range(p["k"]))
    if method_id == "atol":
        return tuple(f"center{i}" for i in range(p["b"]))
    raise UnknownMethodError(method_id)


def fit_state(
    method_id: str, training: Sequence[Barcode], params: dict | None = None, seed: int = 0
):
    """Fit whatever per-dimension state the method needs (may be None)."""
    method = get_method(method_id)
    return method.fit(training, resolve_params(method_id, params), seed)


def transform(
    method_id: str, b: Barcode, params: dict | None = None, state=None
) -> FeatureVector:
    """Vectorize one barcode; for stateless methods state may be omitted."""
    method = get_method(method_id)
    resolved = resolve_params(method_id, params)
    if state is None and not method.info.requires_fit:
        state = method.fit([b], resolved, 0)
    values, meta = method.transform(b, resolved, state)
    return FeatureVector(
        values=values,
        method=method_id,
        params=resolved,
        dims=(b.dimension,),
        labels=feature_labels(method_id, resolved),
        meta=meta,
    )


def transform_dims(
    method_id: str,
    barcodes: dict[int, Barcode],
    dims: Sequence[int],
    params: dict | None = None,
    states: dict | None = None,
    on_empty: str = "raise",
) -> FeatureVector:
    """Vectorize several homology dimensions and concatenate the results.

    on_empty="zeros" substitutes an all-zero block (of the method's width)
    for dimensions whose barcode is empty, keeping batch rows aligned.
    """
    if not dims:
        raise ParameterError("at least one homology dimension is required")
    resolved = resolve_params(method_id, params)
    values_parts: list[np.ndarray] = []
    labels: list[str] = []
    meta: dict = {}
    filled_dims: list[int] = []
    for dim in dims:
        b = barcodes.get(dim, Barcode(dim))
        if b.is_empty and on_empty == "zeros":
            values_parts.append(np.zeros(feature_width(method_id, resolved)))
            labels.extend(f"d{dim}_{lab}" for lab in feature_labels(method_id, resolved))
            filled_dims.append(int(dim))
            continue
        part = transform(method_id, b, params=resolved, state=(states or {}).get(dim))
        values_parts.append(part.values)
        labels.extend(f"d{dim}_{lab}" for lab in part.labels)
        if part.meta:
            meta[f"d{dim}"] = part.meta
    if filled_dims:
        meta["zero_filled_dims"] = filled_dims
    return FeatureVector(
        values=np.concatenate(values_parts),
        method=method_id,
        params=resolved,
        dims=tuple(int(d) for d in dims),
        labels=tuple(labels),
        meta=meta,
    )
