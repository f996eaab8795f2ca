"""Experiment driver: split hygiene, leakage instrumentation, chance levels,
and report determinism.  Small sample counts keep these fast; the full-size
frozen experiment lives in the acceptance suite."""
import json
import math

import numpy as np
import pytest

from topovec.barcode import Barcode
from topovec.datasets import SyntheticSpec
from topovec.experiment import (
    compute_barcodes,
    knn_predict,
    run_experiment,
    standardize,
    stratified_split,
    vectorize_collection,
)
from topovec import methods

SMALL_SPEC = SyntheticSpec(
    ("circle", "two_circles", "clusters"),
    samples_per_class=8,
    points_per_sample=30,
    noise=0.05,
    seed=11,
)


@pytest.fixture(scope="module")
def small_report():
    return run_experiment(SMALL_SPEC, ["persistence_statistics", "atol"], seed=11)


def test_stratified_split_properties(rng):
    labels = np.array([0] * 10 + [1] * 7 + [2] * 3)
    train, test = stratified_split(labels, 0.7, rng)
    assert set(train) | set(test) == set(range(20))
    assert not set(train) & set(test)
    for cls, expected_train in ((0, 7), (1, 5), (2, 2)):
        assert np.sum(labels[train] == cls) == expected_train
        assert np.sum(labels[test] == cls) >= 1


def test_standardize_uses_train_statistics():
    train = np.array([[0.0, 1.0], [2.0, 1.0]])
    test = np.array([[1.0, 5.0]])
    train_z, test_z = standardize(train, test)
    assert np.allclose(train_z.mean(axis=0), 0)
    assert test_z[0, 0] == 0.0  # centre of the train column
    assert test_z[0, 1] == 4.0  # zero-variance column passes through shifted


def test_knn_predict_ties_and_votes():
    train_x = np.array([[0.0], [1.0], [2.0], [3.0]])
    train_y = np.array([0, 0, 1, 1])
    out = knn_predict(train_x, train_y, np.array([[0.1], [2.9]]), k=3)
    assert out.tolist() == [0, 1]
    # k=2 around x=1.5 ties 0 and 1; the smaller label wins deterministically
    tie = knn_predict(train_x, train_y, np.array([[1.5]]), k=2)
    assert tie.tolist() == [0]


def test_train_evaluated_on_itself_is_perfect():
    spec = SyntheticSpec(("circle", "clusters"), 6, 25, noise=0.05, seed=2)
    from topovec.datasets import generate_dataset

    samples, labels = generate_dataset(spec)
    barcode_sets = compute_barcodes(samples)
    matrix, _, _ = vectorize_collection(barcode_sets, "persistence_statistics", None, (0, 1))
    z, _ = standardize(matrix, matrix)
    predictions = knn_predict(z, np.asarray(labels), z, k=1)
    assert np.array_equal(predictions, labels)  # the nearest neighbour is the sample itself


def test_null_experiment_is_at_chance_level():
    report = run_experiment(
        SMALL_SPEC, ["persistence_statistics"], seed=19, shuffle_labels=True
    )
    accuracy = report.results[0].accuracy
    p = 1.0 / 3.0
    sigma = math.sqrt(p * (1 - p) / report.n_test)
    assert abs(accuracy - p) <= 3 * sigma


def test_fit_hook_sees_training_barcodes_only(small_report):
    seen = []

    def hook(method, dim, barcodes):
        seen.append((method, dim, tuple(barcodes)))

    report = run_experiment(SMALL_SPEC, ["atol"], seed=11, fit_hook=hook)
    assert {entry[0] for entry in seen} == {"atol"}
    assert {entry[1] for entry in seen} == {0, 1}
    # the hooked barcodes must be exactly the training portion: per class,
    # round(0.7 * 8) = 6 of 8 samples
    for _, _, barcodes in seen:
        assert len(barcodes) == report.n_train == 18


def test_report_deterministic(small_report):
    again = run_experiment(SMALL_SPEC, ["persistence_statistics", "atol"], seed=11)
    assert again.to_json() == small_report.to_json()
    payload = json.loads(small_report.to_json())
    assert "wall_clock_seconds" not in json.dumps(payload)
    timed = json.loads(small_report.to_json(include_timings=True))
    assert "wall_clock_seconds" in json.dumps(timed)


def test_accuracies_are_probabilities(small_report):
    for result in small_report.results:
        assert 0.0 <= result.accuracy <= 1.0
        assert result.feature_width > 0


def test_parallel_workers_match_serial():
    from topovec.datasets import generate_dataset

    samples, _ = generate_dataset(SyntheticSpec(("circle",), 4, 20, seed=9))
    serial = compute_barcodes(samples, workers=1)
    parallel = compute_barcodes(samples, workers=2)
    assert serial == parallel


def test_requires_two_classes():
    with pytest.raises(ValueError, match="2 classes"):
        run_experiment(SyntheticSpec(("circle",), 4, 10), ["persistence_statistics"])


def test_zero_fill_warning_for_empty_barcodes():
    # clusters samples often have no dim-1 bars after normalization; force the
    # situation with a barcode set built by hand
    sets = [
        {0: Barcode(0, [(0, 1)]), 1: Barcode(1)},
        {0: Barcode(0, [(0, 2)]), 1: Barcode(1, [(0.2, 0.9)])},
    ]
    matrix, labels, warnings = vectorize_collection(
        sets, "betti_curve", {"resolution": 10}, (0, 1),
        states={0: (0.0, 2.0), 1: (0.0, 2.0)},
    )
    assert matrix.shape == (2, 20)
    assert np.array_equal(matrix[0, 10:], np.zeros(10))
    assert any("zero-filled" in w for w in warnings)


def test_unknown_method_and_params_error():
    with pytest.raises(methods.UnknownMethodError):
        run_experiment(SMALL_SPEC, ["mystery_method"], seed=1)
    with pytest.raises(methods.ParameterError, match="no parameter"):
        run_experiment(SMALL_SPEC, [("betti_curve", {"bogus": 1})], seed=1)
