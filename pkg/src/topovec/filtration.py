"""Filtered cell complexes from raw data: Vietoris-Rips and cubical filtrations.

Desk-scale by design: simplices up to dimension 3 and images up to the pixel
budget.  Cells are emitted pre-sorted by (filtration value, dimension,
vertex order), which fixes the barcode tie-breaking deterministically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

DEFAULT_POINT_BUDGET = 512
DEFAULT_PIXEL_BUDGET = 512 * 512
MAX_SIMPLEX_DIM = 3


class ResourceBudgetError(RuntimeError):
    """Input exceeds the configured desk-scale resource budget."""


class ComplexStructureError(ValueError):
    """A filtered complex violates its boundary/filtration invariants."""


class Cell(NamedTuple):
    dim: int
    filtration: float
    boundary: tuple[int, ...]  # indices of (dim-1)-cells, sorted ascending


@dataclass(frozen=True)
class PointCloud:
    """Finite set of points in Euclidean space, one row per point."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("point cloud must be a nonempty (n, d) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class GrayscaleImage:
    """Row-major grayscale intensities on a width x height pixel grid."""

    width: int
    height: int
    intensities: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        values = np.asarray(self.intensities, dtype=np.float64).ravel()
        if values.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} intensities, got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("intensities must be finite")
        object.__setattr__(self, "intensities", values)

    def pixel(self, x: int, y: int) -> float:
        return float(self.intensities[y * self.width + x])

    def to_matrix(self) -> np.ndarray:
        return self.intensities.reshape(self.height, self.width)


@dataclass(frozen=True)
class FilteredComplex:
    """Cells with dimension, filtration value and boundary index lists."""

    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def validate(self) -> None:
        """Check boundary dimensions, sortedness and filtration monotonicity."""
        n = len(self.cells)
        for idx, cell in enumerate(self.cells):
            if cell.dim < 0:
                raise ComplexStructureError(f"cell {idx}: negative dimension")
            if cell.dim == 0 and cell.boundary:
                raise ComplexStructureError(f"cell {idx}: vertex with boundary")
            if list(cell.boundary) != sorted(set(cell.boundary)):
                raise ComplexStructureError(f"cell {idx}: boundary not sorted/unique")
            for b in cell.boundary:
                if not (0 <= b < n):
                    raise ComplexStructureError(f"cell {idx}: boundary index {b} out of range")
                face = self.cells[b]
                if face.dim != cell.dim - 1:
                    raise ComplexStructureError(
                        f"cell {idx}: boundary cell {b} has dim {face.dim}, expected {cell.dim - 1}"
                    )
                if face.filtration > cell.filtration:
                    raise ComplexStructureError(
                        f"cell {idx}: face {b} enters later than the cell itself"
                    )


def rips_complex(
    pc: PointCloud,
    max_scale: float,
    max_dim: int,
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> FilteredComplex:
    """Vietoris-Rips filtration of a point cloud.

    A simplex on points {x_0..x_k} is present iff every pairwise Euclidean
    distance is <= max_scale; its filtration value is the largest pairwise
    distance (0 for vertices).
    """
    if max_scale <= 0:
        raise ValueError("max_scale must be positive")
    if not (0 <= max_dim <= MAX_SIMPLEX_DIM):
        raise ResourceBudgetError(
            f"max_dim {max_dim} outside the supported range 0..{MAX_SIMPLEX_DIM}"
        )
    n = len(pc)
    if n > point_budget:
        raise ResourceBudgetError(
            f"{n} points exceed the budget of {point_budget}; raise the budget explicitly"
        )

    pts = pc.points
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    within = dist <= max_scale

    # simplices as (filtration, dim, vertex tuple)
    simplices: list[tuple[float, int, tuple[int, ...]]] = [
        (0.0, 0, (i,)) for i in range(n)
    ]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if within[i, j]]
    for i, j in edges:
        simplices.append((float(dist[i, j]), 1, (i, j)))

    triangles: list[tuple[int, int, int]] = []
    if max_dim >= 2:
        indices = np.arange(n)
        for i, j in edges:
            ks = indices[(indices > j) & within[i] & within[j]]
            for k in ks:
                k = int(k)
                filt = max(dist[i, j], dist[i, k], dist[j, k])
                simplices.append((float(filt), 2, (i, j, k)))
                triangles.append((i, j, k))
    if max_dim >= 3:
        indices = np.arange(n)
        for i, j, k in triangles:
            ls = indices[(indices > k) & within[i] & within[j] & within[k]]
            for l in ls:
                l = int(l)
                filt = max(
                    dist[i, j], dist[i, k], dist[i, l],
                    dist[j, k], dist[j, l], dist[k, l],
                )
                simplices.append((float(filt), 3, (i, j, k, l)))

    simplices.sort(key=lambda s: (s[0], s[1], s[2]))
    index_of = {verts: idx for idx, (_, _, verts) in enumerate(simplices)}
    cells = []
    for filt, dim, verts in simplices:
        if dim == 0:
            boundary: tuple[int, ...] = ()
        else:
            faces = [verts[:m] + verts[m + 1 :] for m in range(len(verts))]
            boundary = tuple(sorted(index_of[f] for f in faces))
        cells.append(Cell(dim, filt, boundary))
    return FilteredComplex(tuple(cells))


def cubical_complex(
    img: GrayscaleImage,
    direction: str = "upper_star",
    pixel_budget: int = DEFAULT_PIXEL_BUDGET,
) -> FilteredComplex:
    """Cubical filtration of a grayscale image.

    Pixels are the top-dimensional squares.  With "upper_star" each square
    carries its intensity and every lower-dimensional cube appears at the
    smallest intensity among the squares it touches, giving an ascending
    sublevel filtration.  "lower_star" is the descending dual (each cube waits
    for the largest intensity among its squares); it is realized on the
    negated intensity axis so that filtration values still increase and the
    boundary invariants hold -- a cube with filtration value -v appears when
    the descending intensity threshold reaches v.
    """
    if direction not in ("upper_star", "lower_star"):
        raise ValueError(f"unknown filtration direction {direction!r}")
    w, h = img.width, img.height
    if w * h > pixel_budget:
        raise ResourceBudgetError(
            f"{w}x{h} image exceeds the pixel budget of {pixel_budget}"
        )
    top = img.to_matrix()  # (h, w), top[y, x]
    if direction == "lower_star":
        top = -top

    def squares_touching(xs: range, ys: range) -> float:
        values = [top[y, x] for y in ys for x in xs if 0 <= x < w and 0 <= y < h]
        return float(min(values))

    # kind 0: vertex (x, y); kind 1: horizontal edge from (x, y); kind 2:
    # vertical edge from (x, y); kind 3: square with corner (x, y).
    entries: list[tuple[float, int, tuple[int, int, int]]] = []
    for y in range(h + 1):
        for x in range(w + 1):
            entries.append((squares_touching(range(x - 1, x + 1), range(y - 1, y + 1)), 0, (0, x, y)))
    for y in range(h + 1):
        for x in range(w):
            entries.append((squares_touching(range(x, x + 1), range(y - 1, y + 1)), 1, (1, x, y)))
    for y in range(h):
        for x in range(w + 1):
            entries.append((squares_touching(range(x - 1, x + 1), range(y, y + 1)), 1, (2, x, y)))
    for y in range(h):
        for x in range(w):
            entries.append((float(top[y, x]), 2, (3, x, y)))

    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    index_of = {key: idx for idx, (_, _, key) in enumerate(entries)}
    cells = []
    for filt, dim, (kind, x, y) in entries:
        if kind == 0:
            boundary: tuple[int, ...] = ()
        elif kind == 1:  # horizontal edge: (x,y)-(x+1,y)
            boundary = tuple(sorted((index_of[(0, x, y)], index_of[(0, x + 1, y)])))
        elif kind == 2:  # vertical edge: (x,y)-(x,y+1)
            boundary = tuple(sorted((index_of[(0, x, y)], index_of[(0, x, y + 1)])))
        else:  # square: 4 surrounding edges
            boundary = tuple(
                sorted(
                    (
                        index_of[(1, x, y)],
                        index_of[(1, x, y + 1)],
                        index_of[(2, x, y)],
                        index_of[(2, x + 1, y)],
                    )
                )
            )
        cells.append(Cell(dim, filt, boundary))
    return FilteredComplex(tuple(cells))
