"""Shared helpers: seeded random barcode generators.

The dyadic generator draws endpoints from a coarse power-of-two lattice so
that sums, minima and maxima of the generated values are exact in binary
floating point; oracle comparisons can then require bitwise equality even
when the oracle accumulates in a different order.
"""
from __future__ import annotations

import numpy as np
import pytest

from topovec.barcode import Barcode


def random_barcode(
    rng: np.random.Generator,
    max_bars: int = 12,
    dimension: int = 1,
    allow_empty: bool = True,
    span: float = 4.0,
) -> Barcode:
    n = int(rng.integers(0 if allow_empty else 1, max_bars + 1))
    bars = []
    for _ in range(n):
        birth = float(rng.uniform(0.0, span))
        length = float(rng.uniform(1e-3, span))
        mult = int(rng.integers(1, 4))
        bars.append((birth, birth + length, mult))
    return Barcode(dimension, bars)


def dyadic_barcode(
    rng: np.random.Generator,
    max_bars: int = 8,
    dimension: int = 1,
    allow_empty: bool = True,
    denominator: int = 64,
    max_units: int = 256,
) -> Barcode:
    """Bars with endpoints on the lattice Z / denominator (exact arithmetic)."""
    n = int(rng.integers(0 if allow_empty else 1, max_bars + 1))
    bars = []
    for _ in range(n):
        birth_units = int(rng.integers(0, max_units))
        length_units = int(rng.integers(1, max_units))
        mult = int(rng.integers(1, 3))
        bars.append(
            (birth_units / denominator, (birth_units + length_units) / denominator, mult)
        )
    return Barcode(dimension, bars)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
