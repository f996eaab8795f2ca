"""Bottleneck distance against an independent brute-force oracle.

The oracle enumerates every partial matching directly (all subsets of one
side, all injections into the other, remainder projected to the diagonal),
so it shares no code with the threshold-search implementation.
"""
import itertools
import math

import pytest

from topovec.barcode import Barcode, BarcodeError
from topovec.bottleneck import bottleneck_distance

from conftest import random_barcode


def brute_force_bottleneck(a: Barcode, b: Barcode) -> float:
    bars_a = a.to_array()
    bars_b = b.to_array()
    n, m = len(bars_a), len(bars_b)
    diag_a = [(q - p) / 2.0 for p, q in bars_a]
    diag_b = [(q - p) / 2.0 for p, q in bars_b]

    best = math.inf
    for size in range(0, min(n, m) + 1):
        for rows in itertools.combinations(range(n), size):
            for cols in itertools.permutations(range(m), size):
                cost = 0.0
                for i, j in zip(rows, cols):
                    cost = max(
                        cost,
                        abs(bars_a[i][0] - bars_b[j][0]),
                        abs(bars_a[i][1] - bars_b[j][1]),
                    )
                unmatched_a = set(range(n)) - set(rows)
                unmatched_b = set(range(m)) - set(cols)
                for i in unmatched_a:
                    cost = max(cost, diag_a[i])
                for j in unmatched_b:
                    cost = max(cost, diag_b[j])
                best = min(best, cost)
    return 0.0 if best is math.inf else best


def test_single_bar_to_diagonal():
    assert bottleneck_distance(Barcode(0, [(0, 2)]), Barcode(0)) == pytest.approx(1.0)


def test_identity_is_zero(rng):
    for _ in range(20):
        b = random_barcode(rng)
        assert bottleneck_distance(b, b) == 0.0


def test_shifted_bar():
    d = bottleneck_distance(Barcode(0, [(0, 2)]), Barcode(0, [(0.5, 2)]))
    # oracle confirms the pairing beats sending both bars to the diagonal
    assert brute_force_bottleneck(Barcode(0, [(0, 2)]), Barcode(0, [(0.5, 2)])) == 0.5
    assert d == pytest.approx(0.5)


def test_rejects_essential_bars():
    with pytest.raises(BarcodeError):
        bottleneck_distance(Barcode(0, [(0, math.inf)]), Barcode(0))


def test_brute_force_agreement(rng):
    for _ in range(250):
        a = random_barcode(rng, max_bars=3)
        b = random_barcode(rng, max_bars=3)
        # expand multiplicities and cap at 5 expanded bars for the oracle
        if a.n_bars > 5 or b.n_bars > 5:
            continue
        expected = brute_force_bottleneck(a, b)
        assert abs(bottleneck_distance(a, b) - expected) <= 1e-12


def test_symmetry_and_triangle_inequality(rng):
    for _ in range(60):
        a = random_barcode(rng, max_bars=6)
        b = random_barcode(rng, max_bars=6)
        c = random_barcode(rng, max_bars=6)
        dab = bottleneck_distance(a, b)
        dba = bottleneck_distance(b, a)
        assert abs(dab - dba) <= 1e-9
        dac = bottleneck_distance(a, c)
        dcb = bottleneck_distance(c, b)
        assert dab <= dac + dcb + 1e-9


def test_small_bar_changes_distance_by_at_most_half_epsilon(rng):
    for _ in range(60):
        a = random_barcode(rng, max_bars=6)
        b = random_barcode(rng, max_bars=6)
        eps = float(rng.uniform(0.0, 0.5))
        start = float(rng.uniform(0, 4))
        extended = Barcode(b.dimension, list(b.bars) + [(start, start + eps)])
        before = bottleneck_distance(a, b)
        after = bottleneck_distance(a, extended)
        assert abs(after - before) <= eps / 2 + 1e-12


def test_multiplicity_expansion_matters():
    a = Barcode(0, [(0, 2, 2)])
    b = Barcode(0, [(0, 2)])
    # the extra copy must be matched to the diagonal at cost 1
    assert bottleneck_distance(a, b) == pytest.approx(1.0)
