"""Statistical vectorizations: the summary-statistics vector and the entropy
summary curve.

Conventions (neither is fixed by the method's definition, so they are pinned
here as part of the public contract): standard deviation is the population
form (divide by N), percentiles interpolate linearly between closest ranks,
and all entropies are natural-log (nats).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .barcode import Barcode, BarcodeError

QUANTITIES = ("births", "deaths", "midpoints", "lifespans")
STATS = ("mean", "std", "median", "iqr", "range", "p10", "p25", "p75", "p90")
FIELD_ORDER = tuple(f"{q}_{s}" for q in QUANTITIES for s in STATS) + ("count", "entropy")


@dataclass(frozen=True)
class SampledCurve:
    """A real curve sampled on a strictly increasing grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if grid.ndim != 1 or values.ndim != 1 or grid.size != values.size:
            raise ValueError("grid and values must be 1-D and equally long")
        if grid.size >= 2 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.grid.size


def sample_grid(lo: float, hi: float, resolution: int) -> np.ndarray:
    """Inclusive, evenly spaced grid of `resolution` points over [lo, hi]."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if not (hi > lo):
        raise ValueError(f"degenerate sampling range [{lo}, {hi}]")
    return np.linspace(lo, hi, resolution)


def resolve_range(b: Barcode, t_range: Sequence[float] | None) -> tuple[float, float]:
    """Explicit range, or the barcode's [min birth, max death] by default."""
    if t_range is not None:
        lo, hi = float(t_range[0]), float(t_range[1])
        return lo, hi
    b.require_nonempty()
    return b.min_birth, b.max_death


def _stats_block(values: np.ndarray) -> list[float]:
    p10, p25, p50, p75, p90 = np.percentile(values, [10, 25, 50, 75, 90])
    return [
        float(values.mean()),
        float(values.std()),  # population form
        float(p50),
        float(p75 - p25),
        float(values.max() - values.min()),
        float(p10),
        float(p25),
        float(p75),
        float(p90),
    ]


@dataclass(frozen=True)
class StatsVector:
    """38 named summary values: 9 statistics for each of births, deaths,
    midpoints and lifespans, plus the bar count and the entropy.  Field order
    here is the documented CSV/JSON emission order."""

    births_mean: float
    births_std: float
    births_median: float
    births_iqr: float
    births_range: float
    births_p10: float
    births_p25: float
    births_p75: float
    births_p90: float
    deaths_mean: float
    deaths_std: float
    deaths_median: float
    deaths_iqr: float
    deaths_range: float
    deaths_p10: float
    deaths_p25: float
    deaths_p75: float
    deaths_p90: float
    midpoints_mean: float
    midpoints_std: float
    midpoints_median: float
    midpoints_iqr: float
    midpoints_range: float
    midpoints_p10: float
    midpoints_p25: float
    midpoints_p75: float
    midpoints_p90: float
    lifespans_mean: float
    lifespans_std: float
    lifespans_median: float
    lifespans_iqr: float
    lifespans_range: float
    lifespans_p10: float
    lifespans_p25: float
    lifespans_p75: float
    lifespans_p90: float
    count: float
    entropy: float

    def to_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FIELD_ORDER], dtype=np.float64)

    def to_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FIELD_ORDER}


def barcode_entropy(b: Barcode) -> float:
    """Entropy of the lifespan distribution, in nats.

    With total lifespan L, each bar contributes -(q-p)/L * ln((q-p)/L), with
    multiplicity.
    """
    b.require_nonempty()
    b.require_finite()
    arr = b.to_array()
    lifespans = arr[:, 1] - arr[:, 0]
    total = lifespans.sum()
    if total <= 0:
        raise BarcodeError("entropy needs at least one bar of positive length")
    ratios = lifespans / total
    return float(-(ratios * np.log(ratios)).sum()) + 0.0  # avoid -0.0


def persistence_statistics(b: Barcode) -> StatsVector:
    """Summary-statistics vector of a normalized, nonempty barcode."""
    b.require_nonempty()
    b.require_finite()
    arr = b.to_array()
    births, deaths = arr[:, 0], arr[:, 1]
    blocks = {
        "births": births,
        "deaths": deaths,
        "midpoints": 0.5 * (births + deaths),
        "lifespans": deaths - births,
    }
    values: list[float] = []
    for quantity in QUANTITIES:
        values.extend(_stats_block(blocks[quantity]))
    values.append(float(arr.shape[0]))
    values.append(barcode_entropy(b))
    return StatsVector(*values)


def entropy_summary(
    b: Barcode, resolution: int, t_range: Sequence[float] | None = None
) -> SampledCurve:
    """Entropy summary curve: at each t, the entropy terms of bars alive at t.

    A bar [p, q) counts as alive when p <= t < q (half-open, matching the
    indicator in the definition).
    """
    b.require_nonempty()
    b.require_finite()
    lo, hi = resolve_range(b, t_range)
    grid = sample_grid(lo, hi, resolution)
    arr = b.to_array()
    lifespans = arr[:, 1] - arr[:, 0]
    total = lifespans.sum()
    if total <= 0:
        raise BarcodeError("entropy summary needs a bar of positive length")
    ratios = lifespans / total
    terms = -ratios * np.log(ratios)  # per-bar contribution
    alive = (arr[:, 0][:, None] <= grid[None, :]) & (grid[None, :] < arr[:, 1][:, None])
    values = (alive * terms[:, None]).sum(axis=0) + 0.0  # avoid -0.0
    return SampledCurve(grid, values)
