"""Seeded synthetic datasets for end-to-end experiments.

Point-cloud families: a noisy circle, a well-separated pair of circles, and
three Gaussian blobs.  The image family draws random smooth blobs on a pixel
grid and thresholds them.  Generation is sequential from one seeded generator,
so the same spec and seed always reproduce the same samples.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .filtration import GrayscaleImage, PointCloud

POINT_FAMILIES = ("circle", "two_circles", "clusters")
IMAGE_FAMILIES = ("noisy_grid_image",)
FAMILIES = POINT_FAMILIES + IMAGE_FAMILIES


@dataclass(frozen=True)
class SyntheticSpec:
    """One family per class; generation is deterministic given the seed."""

    families: tuple[str, ...]
    samples_per_class: int
    points_per_sample: int
    noise: float = 0.05
    seed: int = 0
    image_size: int = 24

    def __post_init__(self) -> None:
        if not self.families:
            raise ValueError("at least one family is required")
        unknown = [f for f in self.families if f not in FAMILIES]
        if unknown:
            raise ValueError(f"unknown families {unknown}; expected subset of {FAMILIES}")
        kinds = {f in IMAGE_FAMILIES for f in self.families}
        if len(kinds) > 1:
            raise ValueError("cannot mix point-cloud and image families in one dataset")
        if self.samples_per_class < 1:
            raise ValueError("samples_per_class must be positive")
        if self.points_per_sample < 1:
            raise ValueError("points_per_sample must be positive")
        if self.noise < 0:
            raise ValueError("noise must be nonnegative")
        object.__setattr__(self, "families", tuple(self.families))

    @property
    def is_image(self) -> bool:
        return self.families[0] in IMAGE_FAMILIES


def _circle(rng, n, noise, center=(0.0, 0.0), radius=1.0):
    angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
    radii = radius + rng.normal(0.0, noise, size=n) if noise > 0 else np.full(n, radius)
    return np.column_stack(
        [center[0] + radii * np.cos(angles), center[1] + radii * np.sin(angles)]
    )


def _two_circles(rng, n, noise):
    n_left = n // 2
    left = _circle(rng, n_left, noise, center=(-2.0, 0.0))
    right = _circle(rng, n - n_left, noise, center=(2.0, 0.0))
    return np.vstack([left, right])


def _clusters(rng, n, noise):
    centers = np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 1.8]])
    sizes = [n // 3, n // 3, n - 2 * (n // 3)]
    spread = 0.1 + noise
    chunks = [
        centers[i] + rng.normal(0.0, spread, size=(sizes[i], 2)) for i in range(3)
    ]
    return np.vstack(chunks)


def _blob_image(rng, side, noise):
    n_blobs = int(rng.integers(2, 6))
    ys, xs = np.mgrid[0:side, 0:side]
    fielded = np.zeros((side, side))
    for _ in range(n_blobs):
        cx, cy = rng.uniform(0, side, size=2)
        width = rng.uniform(side / 10.0, side / 4.0)
        fielded += np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2.0 * width**2))
    if noise > 0:
        fielded += rng.normal(0.0, noise, size=fielded.shape)
    threshold = fielded.mean()
    fielded = np.where(fielded > threshold, fielded, 0.0)
    return fielded


def generate_dataset(spec: SyntheticSpec) -> tuple[list, list[int]]:
    """Labeled samples: (list of PointCloud or GrayscaleImage, class indices)."""
    rng = np.random.default_rng(spec.seed)
    samples: list = []
    labels: list[int] = []
    makers = {
        "circle": lambda: _circle(rng, spec.points_per_sample, spec.noise),
        "two_circles": lambda: _two_circles(rng, spec.points_per_sample, spec.noise),
        "clusters": lambda: _clusters(rng, spec.points_per_sample, spec.noise),
    }
    for label, family in enumerate(spec.families):
        for _ in range(spec.samples_per_class):
            if family in POINT_FAMILIES:
                samples.append(PointCloud(makers[family]()))
            else:
                img = _blob_image(rng, spec.image_size, spec.noise)
                samples.append(
                    GrayscaleImage(spec.image_size, spec.image_size, img.ravel())
                )
            labels.append(label)
    return samples, labels
