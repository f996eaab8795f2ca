"""Curve vectorizations: Betti curve, lifespan curve, landscapes, silhouettes.

Counting curves use the half-open convention (a bar [p, q) is alive when
p <= t < q); landscapes and silhouettes are built from the closed tent bump
over [p, q].  The conventions intentionally differ between the two families.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .barcode import Barcode
from .statistics import SampledCurve, resolve_range, sample_grid


def tent_value(birth, death, t):
    """Triangular bump over [birth, death]: max(min(t - birth, death - t), 0).

    Vanishes outside the bar and peaks at (death - birth) / 2 at the midpoint.
    Broadcasts over array arguments.
    """
    return np.maximum(np.minimum(t - birth, death - t), 0.0)


def _alive_matrix(arr: np.ndarray, grid: np.ndarray) -> np.ndarray:
    return (arr[:, 0][:, None] <= grid[None, :]) & (grid[None, :] < arr[:, 1][:, None])


def betti_curve(
    b: Barcode, resolution: int, t_range: Sequence[float] | None = None
) -> SampledCurve:
    """Number of bars alive at each grid point (with multiplicity)."""
    b.require_finite()
    if b.is_empty and t_range is None:
        raise ValueError("empty barcode needs an explicit sampling range")
    lo, hi = resolve_range(b, t_range)
    grid = sample_grid(lo, hi, resolution)
    if b.is_empty:
        return SampledCurve(grid, np.zeros_like(grid))
    arr = b.to_array()
    values = _alive_matrix(arr, grid).sum(axis=0).astype(np.float64)
    return SampledCurve(grid, values)


def lifespan_curve(
    b: Barcode, resolution: int, t_range: Sequence[float] | None = None
) -> SampledCurve:
    """Like the Betti curve, but each alive bar counts its lifespan."""
    b.require_finite()
    if b.is_empty and t_range is None:
        raise ValueError("empty barcode needs an explicit sampling range")
    lo, hi = resolve_range(b, t_range)
    grid = sample_grid(lo, hi, resolution)
    if b.is_empty:
        return SampledCurve(grid, np.zeros_like(grid))
    arr = b.to_array()
    lifespans = arr[:, 1] - arr[:, 0]
    values = (_alive_matrix(arr, grid) * lifespans[:, None]).sum(axis=0)
    return SampledCurve(grid, values)


@dataclass(frozen=True)
class LandscapeStack:
    """k landscape levels sampled on a common grid, level-major."""

    grid: np.ndarray
    values: np.ndarray  # shape (k, resolution)

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != grid.size:
            raise ValueError("values must have shape (k, len(grid))")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        return self.values.shape[0]

    def level(self, i: int) -> SampledCurve:
        """1-based landscape level."""
        return SampledCurve(self.grid, self.values[i - 1])

    def flatten(self) -> np.ndarray:
        """k * resolution features, level-major."""
        return self.values.ravel()


def landscapes(
    b: Barcode, k: int, resolution: int, t_range: Sequence[float] | None = None
) -> LandscapeStack:
    """Persistence landscape: level i is the i-th largest tent value at each t.

    Levels beyond the number of alive tents are zero (the supremum over the
    empty set is zero), so the stack is pointwise non-increasing in i.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    b.require_finite()
    if b.is_empty and t_range is None:
        raise ValueError("empty barcode needs an explicit sampling range")
    lo, hi = resolve_range(b, t_range)
    grid = sample_grid(lo, hi, resolution)
    if b.is_empty:
        return LandscapeStack(grid, np.zeros((k, grid.size)))
    arr = b.to_array()
    tents = tent_value(arr[:, 0][:, None], arr[:, 1][:, None], grid[None, :])
    tents = -np.sort(-tents, axis=0)  # descending per column
    values = np.zeros((k, grid.size))
    levels = min(k, tents.shape[0])
    values[:levels] = tents[:levels]
    return LandscapeStack(grid, values)


def silhouette(
    b: Barcode,
    alpha: float,
    resolution: int,
    t_range: Sequence[float] | None = None,
) -> SampledCurve:
    """Weighted average of tents with weights (death - birth) ** alpha."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    b.require_nonempty()
    b.require_finite()
    lo, hi = resolve_range(b, t_range)
    grid = sample_grid(lo, hi, resolution)
    arr = b.to_array()
    weights = (arr[:, 1] - arr[:, 0]) ** alpha
    tents = tent_value(arr[:, 0][:, None], arr[:, 1][:, None], grid[None, :])
    values = (weights[:, None] * tents).sum(axis=0) / weights.sum()
    return SampledCurve(grid, values)
