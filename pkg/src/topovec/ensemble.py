"""Ensemble vectorizations fitted on a training collection: adaptive ellipse
templates (Gaussian-mixture fit in the birth-lifespan plane) and ATOL
(k-means codebook in the birth-death plane).

Both fits are seeded and fully deterministic: same training multiset, same
parameters, same seed -> identical model.  The clustering is implemented here
rather than delegated so that per-iteration behaviour (inertia monotonicity)
stays observable.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .barcode import Barcode

_KMEANS_MAX_ITER = 300
_GMM_MAX_ITER = 200
_GMM_TOL = 1e-10


class FitError(ValueError):
    """Fitting is impossible for the given training data / parameters."""


def _unique_weighted(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Collapse to unique rows with counts, in lexicographic order.

    Fitting on (point, count) pairs makes every fit independent of input
    order and invariant under duplicating the whole training collection.
    """
    unique, counts = np.unique(points, axis=0, return_counts=True)
    return unique, counts.astype(np.float64)


def _kmeans(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    weights: np.ndarray | None = None,
    on_iteration: Callable[[float], None] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Seeded k-means++ followed by Lloyd iterations on weighted points;
    returns (centers, labels).

    Total inertia is non-increasing across iterations; on_iteration receives
    each iteration's inertia so callers can assert that.  Sampling
    probabilities are weight-proportional, so uniformly scaling all weights
    changes nothing.
    """
    n = points.shape[0]
    if weights is None:
        weights = np.ones(n)
    distinct = np.unique(points, axis=0)
    if k > distinct.shape[0]:
        raise FitError(f"k={k} exceeds the {distinct.shape[0]} distinct training points")

    def weighted_choice(mass: np.ndarray) -> int:
        total = mass.sum()
        target = rng.random() * total
        return min(int(np.searchsorted(np.cumsum(mass), target, side="right")), n - 1)

    # k-means++ seeding
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[weighted_choice(weights)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        mass = weights * closest
        if mass.sum() <= 0:
            used = {tuple(c) for c in centers[:i]}
            centers[i] = next(p for p in distinct if tuple(p) not in used)
        else:
            centers[i] = points[weighted_choice(mass)]
        closest = np.minimum(closest, ((points - centers[i]) ** 2).sum(axis=1))

    labels = np.zeros(n, dtype=int)
    for _ in range(_KMEANS_MAX_ITER):
        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        nearest_d2 = d2[np.arange(n), labels]
        if on_iteration is not None:
            on_iteration(float((weights * nearest_d2).sum()))
        new_centers = centers.copy()
        for j in range(k):
            mask = labels == j
            cluster_mass = weights[mask].sum()
            if cluster_mass > 0:
                new_centers[j] = (weights[mask, None] * points[mask]).sum(axis=0) / cluster_mass
            else:
                # deterministic rescue: move to the point farthest from its center
                new_centers[j] = points[int(nearest_d2.argmax())]
        if np.array_equal(new_centers, centers):
            break
        centers = new_centers
    order = np.lexsort((centers[:, 1], centers[:, 0]))
    return centers[order], order.argsort()[labels]


def _log_gaussian(points: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    diff = points - mean
    det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
    inv = np.array([[cov[1, 1], -cov[0, 1]], [-cov[1, 0], cov[0, 0]]]) / det
    maha = (diff @ inv * diff).sum(axis=1)
    return -0.5 * (maha + math.log(det) + 2.0 * math.log(2.0 * math.pi))


def _regularize(cov: np.ndarray) -> np.ndarray:
    cov = 0.5 * (cov + cov.T)
    trace = cov[0, 0] + cov[1, 1]
    floor = max(1e-9 * trace / 2.0, 1e-12)
    eigvals = np.linalg.eigvalsh(cov)
    if eigvals[0] <= floor:
        cov = cov + floor * np.eye(2)
    return cov


def _gmm_em(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    weights_in: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """EM fit of a k-component Gaussian mixture on weighted points;
    returns (means, covs, mixture weights)."""
    n = points.shape[0]
    w = np.ones(n) if weights_in is None else weights_in
    total = w.sum()
    centers, labels = _kmeans(points, k, rng, weights=w)
    means = centers.copy()
    covs = np.empty((k, 2, 2))
    mix = np.empty(k)
    for j in range(k):
        mask = labels == j
        cluster_mass = w[mask].sum()
        mix[j] = max(cluster_mass, 1e-12) / total
        if cluster_mass > 0:
            diff = points[mask] - means[j]
            covs[j] = _regularize((w[mask, None] * diff).T @ diff / cluster_mass)
        else:
            covs[j] = _regularize(np.zeros((2, 2)))
    mix = mix / mix.sum()

    last = -np.inf
    for _ in range(_GMM_MAX_ITER):
        log_prob = np.column_stack(
            [np.log(mix[j]) + _log_gaussian(points, means[j], covs[j]) for j in range(k)]
        )
        top = log_prob.max(axis=1, keepdims=True)
        log_norm = top[:, 0] + np.log(np.exp(log_prob - top).sum(axis=1))
        loglik = float((w * log_norm).sum())
        resp = np.exp(log_prob - log_norm[:, None]) * w[:, None]
        mass = resp.sum(axis=0)
        mix = mass / total
        for j in range(k):
            if mass[j] <= 0:
                continue
            means[j] = (resp[:, j][:, None] * points).sum(axis=0) / mass[j]
            diff = points - means[j]
            covs[j] = _regularize((resp[:, j][:, None] * diff).T @ diff / mass[j])
        if abs(loglik - last) < _GMM_TOL * (1.0 + abs(loglik)):
            break
        last = loglik
    return means, covs, mix


@dataclass(frozen=True)
class EllipseTemplate:
    """Quadratic bump supported inside the ellipse (z-c)^T A (z-c) < 1."""

    center: tuple[float, float]
    matrix: tuple[tuple[float, float], tuple[float, float]]  # symmetric positive-definite

    def __post_init__(self) -> None:
        a = np.asarray(self.matrix, dtype=np.float64)
        if not np.allclose(a, a.T, rtol=0, atol=1e-12 * (1 + abs(a).max())):
            raise ValueError("ellipse matrix must be symmetric")
        if np.linalg.eigvalsh(a)[0] <= 0:
            raise ValueError("ellipse matrix must be positive definite")

    def quadratic(self, points: np.ndarray) -> np.ndarray:
        a = np.asarray(self.matrix)
        diff = np.atleast_2d(points) - np.asarray(self.center)
        return (diff @ a * diff).sum(axis=1)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """1 - h(z) inside the ellipse (h < 1), 0 outside."""
        h = self.quadratic(points)
        return np.where(h < 1.0, 1.0 - h, 0.0)


def _pooled_points(
    training: Sequence[Barcode], plane: str
) -> np.ndarray:
    chunks = []
    for b in training:
        b.require_finite()
        arr = b.to_array()
        arr = arr[arr[:, 1] > arr[:, 0]]  # positive lifespan only
        if arr.shape[0] == 0:
            continue
        if plane == "birth_lifespan":
            chunks.append(np.column_stack([arr[:, 0], arr[:, 1] - arr[:, 0]]))
        else:
            chunks.append(arr)
    if not chunks:
        return np.empty((0, 2))
    return np.vstack(chunks)


def fit_adaptive_templates(
    training: Sequence[Barcode],
    k: int,
    coverage_scale: float = 2.0,
    seed: int = 0,
) -> list[EllipseTemplate]:
    """Fit k ellipse templates to the pooled (birth, lifespan) training points.

    A seeded Gaussian-mixture fit provides centres and covariances; each
    component's ellipse is its coverage_scale-sigma contour, i.e.
    A = (coverage_scale^2 * cov)^-1.
    """
    if k < 1:
        raise FitError("k must be positive")
    if coverage_scale <= 0:
        raise FitError("coverage_scale must be positive")
    points = _pooled_points(training, "birth_lifespan")
    if points.shape[0] == 0:
        raise FitError("no finite bars in the training barcodes")
    unique, counts = _unique_weighted(points)
    rng = np.random.default_rng(seed)
    means, covs, _ = _gmm_em(unique, k, rng, weights_in=counts)
    templates = []
    for j in range(k):
        a = np.linalg.inv(coverage_scale**2 * covs[j])
        a = 0.5 * (a + a.T)
        templates.append(
            EllipseTemplate(
                (float(means[j, 0]), float(means[j, 1])),
                ((float(a[0, 0]), float(a[0, 1])), (float(a[1, 0]), float(a[1, 1]))),
            )
        )
    return templates


def adaptive_template_features(b: Barcode, templates: Sequence[EllipseTemplate]) -> np.ndarray:
    """Multiplicity-weighted sum of each ellipse bump over the bars'
    (birth, lifespan) points."""
    b.require_finite()
    out = np.zeros(len(templates))
    arr = b.to_array()
    if arr.shape[0] == 0:
        return out
    points = np.column_stack([arr[:, 0], arr[:, 1] - arr[:, 0]])
    for j, template in enumerate(templates):
        out[j] = template.evaluate(points).sum()
    return out


@dataclass(frozen=True)
class AtolModel:
    """Codebook centres and scales in the birth-death plane."""

    centers: tuple[tuple[float, float], ...]
    scales: tuple[float, ...]
    scale_mode: str = "max"

    def __post_init__(self) -> None:
        if len(self.centers) < 2:
            raise ValueError("ATOL requires b >= 2")
        if len(self.scales) != len(self.centers):
            raise ValueError("one scale per centre required")
        if any(s <= 0 for s in self.scales):
            raise ValueError("ATOL scales must be positive")

    @property
    def b(self) -> int:
        return len(self.centers)


def _atol_scales(centers: np.ndarray, mode: str) -> np.ndarray:
    dists = np.sqrt(((centers[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2))
    np.fill_diagonal(dists, np.nan)
    if mode == "max":
        return 0.5 * np.nanmax(dists, axis=1)
    if mode == "min":
        return 0.5 * np.nanmin(dists, axis=1)
    raise ValueError(f"unknown ATOL scale mode {mode!r}")


def fit_atol_points(points: np.ndarray, b: int, seed: int = 0, scale_mode: str = "max") -> AtolModel:
    """ATOL codebook from raw (birth, death) points: seeded k-means centres,
    scales from half the farthest (or nearest, mode='min') other centre."""
    if b < 2:
        raise FitError("ATOL requires b >= 2")
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2:
        raise FitError("expected (n, 2) points")
    if points.shape[0] < b:
        raise FitError(f"need at least b={b} pooled points, got {points.shape[0]}")
    unique, counts = _unique_weighted(points)
    rng = np.random.default_rng(seed)
    centers, _ = _kmeans(unique, b, rng, weights=counts)
    scales = _atol_scales(centers, scale_mode)
    if np.any(scales <= 0):
        raise FitError("degenerate ATOL fit: coincident centres")
    return AtolModel(
        tuple((float(x), float(y)) for x, y in centers),
        tuple(float(s) for s in scales),
        scale_mode,
    )


def fit_atol(
    training: Sequence[Barcode], b: int, seed: int = 0, scale_mode: str = "max"
) -> AtolModel:
    """Fit ATOL on the pooled (birth, death) points of the training barcodes."""
    points = _pooled_points(training, "birth_death")
    if points.shape[0] == 0:
        raise FitError("no finite bars in the training barcodes")
    return fit_atol_points(points, b, seed=seed, scale_mode=scale_mode)


def atol_features(b: Barcode, model: AtolModel) -> np.ndarray:
    """Per-centre contrast sums: sum over bars of exp(-dist/scale_i)."""
    b.require_finite()
    out = np.zeros(model.b)
    arr = b.to_array()
    if arr.shape[0] == 0:
        return out
    centers = np.asarray(model.centers)
    scales = np.asarray(model.scales)
    dists = np.sqrt(((arr[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2))
    return np.exp(-dists / scales[None, :]).sum(axis=0)


def model_to_json(model, *, method: str, params: dict, seed: int) -> str:
    """Serialize a fitted ensemble model with its provenance."""
    if isinstance(model, AtolModel):
        payload = {
            "kind": "atol",
            "centers": [list(c) for c in model.centers],
            "scales": list(model.scales),
            "scale_mode": model.scale_mode,
        }
    elif isinstance(model, (list, tuple)) and all(isinstance(t, EllipseTemplate) for t in model):
        payload = {
            "kind": "adaptive",
            "templates": [
                {"center": list(t.center), "matrix": [list(r) for r in t.matrix]}
                for t in model
            ],
        }
    else:
        raise TypeError(f"cannot serialize model of type {type(model)!r}")
    payload["method"] = method
    payload["params"] = params
    payload["seed"] = seed
    return json.dumps(payload, sort_keys=True)


def model_from_json(text: str):
    """Inverse of model_to_json; returns (model, metadata)."""
    data = json.loads(text)
    meta = {k: data.get(k) for k in ("method", "params", "seed")}
    if data["kind"] == "atol":
        model = AtolModel(
            tuple(tuple(c) for c in data["centers"]),
            tuple(data["scales"]),
            data.get("scale_mode", "max"),
        )
    elif data["kind"] == "adaptive":
        model = [
            EllipseTemplate(tuple(t["center"]), tuple(tuple(r) for r in t["matrix"]))
            for t in data["templates"]
        ]
    else:
        raise ValueError(f"unknown model kind {data['kind']!r}")
    return model, meta


def model_content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
