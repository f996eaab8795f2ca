"""End-to-end classification experiments on synthetic data.

Pipeline: generate samples, compute barcodes (dims 0 and 1), stratified
70/30 split, fit every method-specific state on the training barcodes only,
vectorize, per-coordinate z-score standardization (again fitted on train),
then a plain Euclidean k-NN vote.  Everything downstream of the dataset
parameters and the seed is deterministic, so reports can be compared byte for
byte.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import methods
from .barcode import Barcode, DEFAULT_POLICY, EssentialPolicy, normalize
from .datasets import SyntheticSpec, generate_dataset
from .filtration import GrayscaleImage, PointCloud, cubical_complex, rips_complex
from .reduction import compute_persistence

DEFAULT_DIMS = (0, 1)
DEFAULT_MAX_SCALE = 2.0
DEFAULT_MAX_DIM = 2


def sample_barcodes(
    sample,
    max_scale: float = DEFAULT_MAX_SCALE,
    max_dim: int = DEFAULT_MAX_DIM,
    direction: str = "upper_star",
    policy: EssentialPolicy = DEFAULT_POLICY,
) -> dict[int, Barcode]:
    """Normalized barcodes of one point cloud or image."""
    if isinstance(sample, PointCloud):
        fc = rips_complex(sample, max_scale=max_scale, max_dim=max_dim)
    elif isinstance(sample, GrayscaleImage):
        fc = cubical_complex(sample, direction=direction)
    else:
        raise TypeError(f"cannot compute persistence for {type(sample)!r}")
    return {dim: normalize(b, policy) for dim, b in compute_persistence(fc).items()}


def _barcode_worker(args):
    sample, kwargs = args
    return sample_barcodes(sample, **kwargs)


def compute_barcodes(
    samples: Sequence, workers: int = 1, **kwargs
) -> list[dict[int, Barcode]]:
    """Barcodes for many samples; order follows the input either way."""
    if workers <= 1 or len(samples) < 4:
        return [sample_barcodes(s, **kwargs) for s in samples]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_barcode_worker, [(s, kwargs) for s in samples], chunksize=4))


def stratified_split(
    labels: Sequence[int], split_ratio: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Per-class shuffled index split; every class keeps at least one test item."""
    labels = np.asarray(labels)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for cls in np.unique(labels):
        members = np.flatnonzero(labels == cls)
        members = members[rng.permutation(members.size)]
        n_train = min(max(int(round(split_ratio * members.size)), 1), members.size - 1)
        train_idx.extend(members[:n_train])
        test_idx.extend(members[n_train:])
    return np.array(sorted(train_idx)), np.array(sorted(test_idx))


def standardize(train: np.ndarray, test: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Z-score both sets with statistics fitted on the training rows."""
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return (train - mean) / std, (test - mean) / std


def knn_predict(
    train_x: np.ndarray, train_y: np.ndarray, test_x: np.ndarray, k: int
) -> np.ndarray:
    """Euclidean k-NN majority vote; ties resolve to the smallest label."""
    d2 = ((test_x[:, None, :] - train_x[None, :, :]) ** 2).sum(axis=2)
    k = min(k, train_x.shape[0])
    nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
    votes = train_y[nearest]
    n_classes = int(train_y.max()) + 1
    out = np.empty(test_x.shape[0], dtype=int)
    for i in range(test_x.shape[0]):
        out[i] = np.bincount(votes[i], minlength=n_classes).argmax()
    return out


@dataclass(frozen=True)
class MethodResult:
    method: str
    params: dict
    accuracy: float
    feature_width: int
    wall_clock_seconds: float


@dataclass(frozen=True)
class ExperimentReport:
    spec: dict
    seed: int
    dims: tuple[int, ...]
    split_ratio: float
    k_nn: int
    n_train: int
    n_test: int
    results: tuple[MethodResult, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self, include_timings: bool = False) -> dict:
        results = []
        for r in self.results:
            entry = {
                "method": r.method,
                "params": r.params,
                "accuracy": r.accuracy,
                "feature_width": r.feature_width,
            }
            if include_timings:
                entry["wall_clock_seconds"] = r.wall_clock_seconds
            results.append(entry)
        return {
            "spec": self.spec,
            "seed": self.seed,
            "dims": list(self.dims),
            "split_ratio": self.split_ratio,
            "k_nn": self.k_nn,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "results": results,
            "warnings": list(self.warnings),
        }

    def to_json(self, include_timings: bool = False) -> str:
        # Timings are volatile, so the canonical report leaves them out and
        # stays byte-identical across reruns with the same spec and seed.
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=True) + "\n"


def vectorize_collection(
    barcode_sets: Sequence[dict[int, Barcode]],
    method_id: str,
    params: dict | None,
    dims: Sequence[int],
    states: dict | None = None,
) -> tuple[np.ndarray, tuple[str, ...], list[str]]:
    """Fixed-width feature matrix for a batch; empty barcodes become zero rows.

    Returns (matrix, column labels, warnings).
    """
    resolved = methods.resolve_params(method_id, params)
    rows = []
    warnings: list[str] = []
    for i, barcodes in enumerate(barcode_sets):
        empty_dims = [d for d in dims if barcodes.get(d, Barcode(d)).is_empty]
        if empty_dims:
            warnings.append(
                f"sample {i}: empty barcode in dims {empty_dims}; zero-filled"
            )
        fv = methods.transform_dims(
            method_id, barcodes, dims, params=resolved, states=states, on_empty="zeros"
        )
        rows.append(fv.values)
    labels = tuple(
        f"d{dim}_{lab}"
        for dim in dims
        for lab in methods.feature_labels(method_id, resolved)
    )
    matrix = np.vstack(rows) if rows else np.empty((0, len(labels)))
    if matrix.size and matrix.shape[1] != len(labels):
        raise methods.ParameterError(
            f"method {method_id}: feature width {matrix.shape[1]} does not match "
            f"the declared width {len(labels)}"
        )
    return matrix, labels, warnings


def fit_states(
    method_id: str,
    training: Sequence[dict[int, Barcode]],
    params: dict | None,
    dims: Sequence[int],
    seed: int,
    fit_hook: Callable | None = None,
) -> dict:
    """Per-dimension method state fitted on the training barcodes only."""
    states = {}
    for dim in dims:
        train_barcodes = [bs.get(dim, Barcode(dim)) for bs in training]
        if fit_hook is not None:
            fit_hook(method_id, dim, train_barcodes)
        states[dim] = methods.fit_state(method_id, train_barcodes, params, seed=seed)
    return states


def run_experiment(
    spec: SyntheticSpec,
    method_list: Sequence[str | tuple[str, dict]],
    split_ratio: float = 0.7,
    k_nn: int = 5,
    seed: int = 0,
    dims: Sequence[int] = DEFAULT_DIMS,
    max_scale: float = DEFAULT_MAX_SCALE,
    max_dim: int = DEFAULT_MAX_DIM,
    workers: int = 1,
    fit_hook: Callable | None = None,
    shuffle_labels: bool = False,
) -> ExperimentReport:
    """Run the full pipeline and score every requested method.

    fit_hook(method, dim, barcodes) is invoked with exactly the barcodes a
    fit sees, which makes train/test leakage checkable from tests.
    """
    if len(spec.families) < 2:
        raise ValueError("an experiment needs at least 2 classes")
    samples, labels = generate_dataset(spec)
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    if shuffle_labels:
        labels = labels[rng.permutation(labels.size)]
    barcode_sets = compute_barcodes(
        samples, workers=workers, max_scale=max_scale, max_dim=max_dim
    )
    train_idx, test_idx = stratified_split(labels, split_ratio, rng)
    train_sets = [barcode_sets[i] for i in train_idx]
    test_sets = [barcode_sets[i] for i in test_idx]
    train_y, test_y = labels[train_idx], labels[test_idx]

    results = []
    all_warnings: list[str] = []
    for entry in method_list:
        method_id, params = entry if isinstance(entry, tuple) else (entry, None)
        resolved = methods.resolve_params(method_id, params)
        started = time.perf_counter()
        states = fit_states(method_id, train_sets, resolved, dims, seed, fit_hook)
        train_m, labels_a, warn_a = vectorize_collection(
            train_sets, method_id, resolved, dims, states
        )
        test_m, labels_b, warn_b = vectorize_collection(
            test_sets, method_id, resolved, dims, states
        )
        if labels_a != labels_b or train_m.shape[1] != test_m.shape[1]:
            raise methods.ParameterError(
                f"method {method_id} with params {resolved}: "
                "train/test feature layouts disagree"
            )
        train_z, test_z = standardize(train_m, test_m)
        predictions = knn_predict(train_z, train_y, test_z, k_nn)
        accuracy = float((predictions == test_y).mean())
        elapsed = time.perf_counter() - started
        results.append(
            MethodResult(method_id, resolved, accuracy, train_m.shape[1], elapsed)
        )
        all_warnings.extend(f"{method_id}: {w}" for w in warn_a + warn_b)

    return ExperimentReport(
        spec={
            "families": list(spec.families),
            "samples_per_class": spec.samples_per_class,
            "points_per_sample": spec.points_per_sample,
            "noise": spec.noise,
            "seed": spec.seed,
            "image_size": spec.image_size,
        },
        seed=seed,
        dims=tuple(int(d) for d in dims),
        split_ratio=split_ratio,
        k_nn=k_nn,
        n_train=int(train_idx.size),
        n_test=int(test_idx.size),
        results=tuple(results),
        warnings=tuple(sorted(set(all_warnings))),
    )
