"""Exact bottleneck distance between finite barcodes.

Matched bars pay the L-infinity distance between their endpoint pairs;
unmatched bars pay the cost of projecting to the diagonal, (death - birth)/2.
The distance is the minimum over partial matchings of the maximum cost.
The optimum is always attained at one of the finitely many pairwise or
diagonal costs, so we binary-search that candidate set with a bipartite
matching feasibility test instead of approximating.
"""
from __future__ import annotations

import numpy as np

from .barcode import Barcode


def _max_bipartite_matching(adjacency: list[list[int]], n_right: int) -> int:
    """Size of a maximum matching; adjacency[i] lists right-neighbours of left i."""
    match_right = [-1] * n_right
    match_left = [-1] * len(adjacency)

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adjacency[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    size = 0
    for u in range(len(adjacency)):
        if augment(u, [False] * n_right):
            size += 1
    return size


def _can_cover(must: np.ndarray, costs: np.ndarray, threshold: float) -> bool:
    """Can every row flagged in `must` be matched to a distinct column under threshold?"""
    rows = np.flatnonzero(must)
    if rows.size == 0:
        return True
    if costs.shape[1] == 0:
        return False
    adjacency = [np.flatnonzero(costs[r] <= threshold).tolist() for r in rows]
    return _max_bipartite_matching(adjacency, costs.shape[1]) == rows.size


def bottleneck_distance(a: Barcode, b: Barcode) -> float:
    """Exact bottleneck distance between two finite barcodes."""
    a.require_finite()
    b.require_finite()
    pa = a.to_array()
    pb = b.to_array()
    diag_a = 0.5 * (pa[:, 1] - pa[:, 0]) if pa.size else np.empty(0)
    diag_b = 0.5 * (pb[:, 1] - pb[:, 0]) if pb.size else np.empty(0)

    if pa.size == 0 and pb.size == 0:
        return 0.0
    if pa.size == 0:
        return float(diag_b.max())
    if pb.size == 0:
        return float(diag_a.max())

    # L-infinity cost of each cross pairing.
    costs = np.maximum(
        np.abs(pa[:, None, 0] - pb[None, :, 0]),
        np.abs(pa[:, None, 1] - pb[None, :, 1]),
    )

    candidates = np.unique(np.concatenate([[0.0], diag_a, diag_b, costs.ravel()]))

    def feasible(threshold: float) -> bool:
        # A matching covering every non-droppable bar on one side, plus one
        # covering the other side, always combine into a single matching
        # covering both (Mendelsohn-Dulmage), so two one-sided checks suffice.
        must_a = diag_a > threshold
        must_b = diag_b > threshold
        return _can_cover(must_a, costs, threshold) and _can_cover(
            must_b, costs.T, threshold
        )

    lo, hi = 0, len(candidates) - 1
    best = candidates[hi]
    while lo <= hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            best = candidates[mid]
            hi = mid - 1
        else:
            lo = mid + 1
    return float(best)
