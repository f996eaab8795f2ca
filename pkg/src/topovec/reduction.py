"""Persistence barcodes from filtered complexes via boundary-matrix reduction.

Standard left-to-right column reduction over Z/2.  Columns are kept as Python
integers used as bitmasks, so adding two columns is a single XOR; the pivot of
a column is its highest set bit.  Clearing/twist optimizations are a possible
extension point, not needed at desk scale.
"""
from __future__ import annotations

import math

from .barcode import Barcode, Interval
from .filtration import FilteredComplex


def compute_persistence(fc: FilteredComplex) -> dict[int, Barcode]:
    """Barcodes (Z/2 coefficients) of a filtered complex, one per dimension.

    Paired cells (i, j) yield the interval [filtration(i), filtration(j)] in
    the dimension of cell i; unpaired cells yield essential intervals
    [filtration, inf).  Zero-length intervals are retained; normalize()
    removes them downstream.
    """
    fc.validate()
    cells = fc.cells
    m = len(cells)

    order = sorted(range(m), key=lambda i: (cells[i].filtration, cells[i].dim, i))
    position = [0] * m
    for pos, idx in enumerate(order):
        position[idx] = pos

    # column bitmask per sorted position; pivot (highest set bit) -> position
    reduced: list[int] = [0] * m
    pivot_of: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []  # (birth position, death position)

    for pos in range(m):
        cell = cells[order[pos]]
        column = 0
        for b in cell.boundary:
            column |= 1 << position[b]
        while column:
            low = column.bit_length() - 1
            other = pivot_of.get(low)
            if other is None:
                pivot_of[low] = pos
                pairs.append((low, pos))
                break
            column ^= reduced[other]
        reduced[pos] = column

    paired = set()
    for birth_pos, death_pos in pairs:
        paired.add(birth_pos)
        paired.add(death_pos)

    max_dim = fc.max_dim()
    intervals: dict[int, list[Interval]] = {d: [] for d in range(max_dim + 1)}
    for birth_pos, death_pos in pairs:
        birth_cell = cells[order[birth_pos]]
        death_cell = cells[order[death_pos]]
        intervals[birth_cell.dim].append(
            Interval(birth_cell.filtration, death_cell.filtration)
        )
    for pos in range(m):
        if pos not in paired:
            cell = cells[order[pos]]
            intervals[cell.dim].append(Interval(cell.filtration, math.inf))

    return {dim: Barcode(dim, ivs) for dim, ivs in intervals.items()}
