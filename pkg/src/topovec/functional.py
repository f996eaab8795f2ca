"""Functional vectorizations on the birth-lifespan plane: persistence images
and tent-template features.

Persistence-image pixels are exact integrals of the weighted Gaussian surface
over each pixel rectangle (separable CDF differences), not centre samples, so
mass is conserved at any resolution.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .barcode import Barcode

_SQRT2 = math.sqrt(2.0)


def _norm_cdf(z: np.ndarray) -> np.ndarray:
    flat = np.asarray(z, dtype=np.float64).ravel()
    out = np.array([0.5 * (1.0 + math.erf(v / _SQRT2)) for v in flat])
    return out.reshape(np.shape(z))


def lifespan_ramp(t: np.ndarray, lifespan_max: float) -> np.ndarray:
    """Piecewise-linear weight: 0 at or below 0, t / lifespan_max up to 1."""
    t = np.asarray(t, dtype=np.float64)
    if lifespan_max <= 0:
        return np.zeros_like(t)
    return np.clip(t / lifespan_max, 0.0, 1.0)


@dataclass(frozen=True)
class ImageGrid:
    """Pixel grid and Gaussian bandwidth for persistence images."""

    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int
    ny: int
    sigma: float

    def __post_init__(self) -> None:
        if not (self.x_range[1] > self.x_range[0] and self.y_range[1] > self.y_range[0]):
            raise ValueError("image ranges must be nondegenerate")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("pixel counts must be positive")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def x_edges(self) -> np.ndarray:
        return np.linspace(self.x_range[0], self.x_range[1], self.nx + 1)

    def y_edges(self) -> np.ndarray:
        return np.linspace(self.y_range[0], self.y_range[1], self.ny + 1)


def fit_image_grid(
    training: Sequence[Barcode], nx: int, ny: int, sigma: float, pad_sigmas: float = 3.0
) -> ImageGrid:
    """Grid covering the (birth, lifespan) points of a collection, padded."""
    points = _pooled_birth_lifespan(training)
    if points.shape[0] == 0:
        raise ValueError("cannot fit an image grid to empty training barcodes")
    pad = pad_sigmas * sigma
    x0, x1 = points[:, 0].min() - pad, points[:, 0].max() + pad
    y0, y1 = points[:, 1].min() - pad, points[:, 1].max() + pad
    return ImageGrid((float(x0), float(x1)), (float(y0), float(y1)), nx, ny, sigma)


def persistence_image_matrix(b: Barcode, grid: ImageGrid) -> np.ndarray:
    """(ny, nx) array of pixel masses; row iy spans y_edges[iy..iy+1]."""
    b.require_finite()
    image = np.zeros((grid.ny, grid.nx))
    if b.is_empty:
        return image
    arr = b.to_array()
    births = arr[:, 0]
    lifespans = arr[:, 1] - arr[:, 0]
    weights = lifespan_ramp(lifespans, float(lifespans.max()))
    x_edges, y_edges = grid.x_edges(), grid.y_edges()
    for birth, lifespan, weight in zip(births, lifespans, weights):
        if weight == 0.0:
            continue
        cx = np.diff(_norm_cdf((x_edges - birth) / grid.sigma))
        cy = np.diff(_norm_cdf((y_edges - lifespan) / grid.sigma))
        image += weight * np.outer(cy, cx)
    return image


def persistence_image(b: Barcode, grid: ImageGrid) -> np.ndarray:
    """Flat nx*ny feature vector, row-major from low y to high y."""
    return persistence_image_matrix(b, grid).ravel()


def _pooled_birth_lifespan(barcodes: Sequence[Barcode]) -> np.ndarray:
    chunks = []
    for b in barcodes:
        b.require_finite()
        arr = b.to_array()
        if arr.shape[0]:
            chunks.append(np.column_stack([arr[:, 0], arr[:, 1] - arr[:, 0]]))
    if not chunks:
        return np.empty((0, 2))
    return np.vstack(chunks)


def _inflate_degenerate(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        return lo, hi
    centre = 0.5 * (lo + hi)
    eps = max(1e-9, 1e-9 * abs(centre))
    return centre - eps, centre + eps


@dataclass(frozen=True)
class TentGrid:
    """d x d tent centres over a padded box in the birth-lifespan plane."""

    box: tuple[float, float, float, float]  # x0, x1, y0, y1
    d: int
    delta: float
    padding: float

    def __post_init__(self) -> None:
        x0, x1, y0, y1 = self.box
        if not (x1 > x0 and y1 > y0):
            raise ValueError("tent box must be nondegenerate")
        if self.d < 1:
            raise ValueError("grid resolution d must be positive")
        if self.delta <= 0:
            raise ValueError("tent half-width delta must be positive")
        if self.padding < 0:
            raise ValueError("padding must be nonnegative")

    def centers(self) -> np.ndarray:
        """(d*d, 2) tent centres, row-major from low y to high y."""
        x0, x1, y0, y1 = self.box
        xs = np.linspace(x0, x1, self.d) if self.d > 1 else np.array([0.5 * (x0 + x1)])
        ys = np.linspace(y0, y1, self.d) if self.d > 1 else np.array([0.5 * (y0 + y1)])
        gx, gy = np.meshgrid(xs, ys)
        return np.column_stack([gx.ravel(), gy.ravel()])

    def to_json(self) -> str:
        return json.dumps(
            {"box": list(self.box), "d": self.d, "delta": self.delta, "padding": self.padding}
        )

    @classmethod
    def from_json(cls, text: str) -> "TentGrid":
        data = json.loads(text)
        return cls(tuple(data["box"]), data["d"], data["delta"], data["padding"])


def fit_tent_grid(
    training: Sequence[Barcode],
    d: int,
    padding: float,
    delta: float | None = None,
) -> TentGrid:
    """Tent grid covering the training (birth, lifespan) points.

    Centres are evenly spaced over the padded bounding box, corners included;
    by default delta equals the grid spacing so adjacent tents overlap at half
    height.  Degenerate boxes are inflated by a machine-scale epsilon.
    """
    if d < 1:
        raise ValueError("grid resolution d must be positive")
    if padding < 0:
        raise ValueError("padding must be nonnegative")
    points = _pooled_birth_lifespan(training)
    if points.shape[0] == 0:
        raise ValueError("cannot fit a tent grid to empty training barcodes")
    x0, x1 = _inflate_degenerate(points[:, 0].min() - padding, points[:, 0].max() + padding)
    y0, y1 = _inflate_degenerate(points[:, 1].min() - padding, points[:, 1].max() + padding)
    if delta is None:
        if d > 1:
            delta = max((x1 - x0) / (d - 1), (y1 - y0) / (d - 1))
        else:
            delta = 0.5 * max(x1 - x0, y1 - y0)
    return TentGrid((float(x0), float(x1), float(y0), float(y1)), d, float(delta), float(padding))


def tent_template_features(b: Barcode, tents: TentGrid) -> np.ndarray:
    """One feature per tent: the multiplicity-weighted sum of tent evaluations
    at the bars' (birth, lifespan) points."""
    b.require_finite()
    centers = tents.centers()
    out = np.zeros(centers.shape[0])
    if b.is_empty:
        return out
    arr = b.to_array()
    points = np.column_stack([arr[:, 0], arr[:, 1] - arr[:, 0]])
    # max(1 - max(|x-u|, |y-v|) / delta, 0), summed over bars
    dx = np.abs(points[:, 0][:, None] - centers[:, 0][None, :])
    dy = np.abs(points[:, 1][:, None] - centers[:, 1][None, :])
    values = np.maximum(1.0 - np.maximum(dx, dy) / tents.delta, 0.0)
    return values.sum(axis=0)
