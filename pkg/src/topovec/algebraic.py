"""Algebraic vectorizations: polynomial coordinates, tropical coordinates, and
complex-polynomial coefficients.

All three are symmetric in the bar order, so bars are expanded by multiplicity
and sorted by (birth, death) purely for determinism.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .barcode import Barcode

COMPLEX_TRANSFORMS = ("R", "S", "T")


def ordered_bars(b: Barcode) -> np.ndarray:
    """(n, 2) array of bars expanded by multiplicity, sorted by (birth, death)."""
    b.require_finite()
    return b.to_array()  # Barcode iteration is already (birth, death)-sorted


def algebraic_functions(b: Barcode) -> np.ndarray:
    """Five polynomial coordinates of the bar endpoints.

    With births p, deaths q, lifespans l = q - p, and q_max the largest death:
    sum(p*l), sum((q_max - q)*l), sum(p^2 * l^4), sum((q_max - q)^2 * l^4),
    and max(l).  An empty barcode maps to the zero vector.
    """
    arr = ordered_bars(b)
    if arr.shape[0] == 0:
        return np.zeros(5)
    births, deaths = arr[:, 0], arr[:, 1]
    lifespans = deaths - births
    q_max = deaths.max()
    return np.array(
        [
            float((births * lifespans).sum()),
            float(((q_max - deaths) * lifespans).sum()),
            float((births**2 * lifespans**4).sum()),
            float(((q_max - deaths) ** 2 * lifespans**4).sum()),
            float(lifespans.max()),
        ]
    )


def tropical_coordinates(b: Barcode, r: int) -> np.ndarray:
    """Seven max-plus coordinates of the bars, with clamping parameter r.

    Writing l for lifespans and m_i = min(r * l_i, p_i):
    the first four are the largest single lifespan and the largest sums of two,
    three and four distinct lifespans (zero when there are not enough bars);
    then sum(l), sum(m), and sum_j(max_i(m_i + l_i) - (m_j + l_j)).
    """
    if r < 1 or r != int(r):
        raise ValueError("r must be a positive integer")
    arr = ordered_bars(b)
    out = np.zeros(7)
    if arr.shape[0] == 0:
        return out
    births = arr[:, 0]
    lifespans = arr[:, 1] - arr[:, 0]
    clamped = np.minimum(r * lifespans, births)

    # top-k sums realise the max over k distinct indices
    desc = np.sort(lifespans)[::-1]
    for slot, size in enumerate((1, 2, 3, 4)):
        if desc.size >= size:
            out[slot] = desc[:size].sum()
    out[4] = lifespans.sum()
    out[5] = clamped.sum()
    shifted = clamped + lifespans
    out[6] = (shifted.max() - shifted).sum()
    return out


def _transform_point(kind: str, x: float, y: float) -> complex:
    if kind == "R":
        return complex(x, y)
    norm = math.hypot(x, y)
    if kind == "S":
        if x == 0.0 and y == 0.0:
            return 0j
        return (y - x) / (norm * math.sqrt(2.0)) * complex(x, y)
    if kind == "T":
        return (y - x) / 2.0 * complex(
            math.cos(norm) - math.sin(norm), math.cos(norm) + math.sin(norm)
        )
    raise ValueError(f"unknown transform {kind!r}; expected one of {COMPLEX_TRANSFORMS}")


@dataclass(frozen=True)
class ComplexCoefficients:
    """Fixed number of highest-degree coefficients below the monic lead.

    Barcodes with fewer bars than requested coefficients are zero-padded,
    which matches shifting the polynomial by a power of the variable.
    """

    coefficients: tuple[complex, ...]

    def to_features(self) -> np.ndarray:
        """Interleaved (real, imag) feature vector of length 2 * n_coeffs."""
        out = np.empty(2 * len(self.coefficients))
        for i, c in enumerate(self.coefficients):
            out[2 * i] = c.real
            out[2 * i + 1] = c.imag
        return out


def complex_roots(b: Barcode, transform: str) -> list[complex]:
    arr = ordered_bars(b)
    return [_transform_point(transform, p, q) for p, q in arr]


def complex_polynomial(b: Barcode, transform: str, n_coeffs: int) -> ComplexCoefficients:
    """Coefficients of prod(z - X(p, q)) over the bars, X one of R, S, T.

    Returns the n_coeffs coefficients directly below the monic leading term,
    highest degree first.
    """
    if n_coeffs < 1:
        raise ValueError("n_coeffs must be positive")
    roots = complex_roots(b, transform)
    coeffs = [1 + 0j]  # descending powers, monic
    for root in roots:
        coeffs.append(0j)
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] = coeffs[i] - root * coeffs[i - 1]
    below_lead = coeffs[1:]
    if len(below_lead) >= n_coeffs:
        kept = below_lead[:n_coeffs]
    else:
        kept = below_lead + [0j] * (n_coeffs - len(below_lead))
    return ComplexCoefficients(tuple(kept))
