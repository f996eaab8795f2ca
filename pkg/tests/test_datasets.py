import numpy as np
import pytest

from topovec.datasets import SyntheticSpec, generate_dataset
from topovec.experiment import sample_barcodes
from topovec.filtration import GrayscaleImage


def test_circle_noise_zero_is_unit_circle():
    spec = SyntheticSpec(("circle",), samples_per_class=2, points_per_sample=40, noise=0.0, seed=1)
    samples, labels = generate_dataset(spec)
    assert labels == [0, 0]
    for sample in samples:
        radii = np.linalg.norm(sample.points, axis=1)
        assert np.allclose(radii, 1.0)


def test_generation_deterministic():
    spec = SyntheticSpec(("circle", "clusters"), 3, 30, noise=0.1, seed=42)
    a_samples, a_labels = generate_dataset(spec)
    b_samples, b_labels = generate_dataset(spec)
    assert a_labels == b_labels
    for a, b in zip(a_samples, b_samples):
        assert np.array_equal(a.points, b.points)


def test_different_seeds_differ():
    base = SyntheticSpec(("circle",), 1, 30, seed=1)
    other = SyntheticSpec(("circle",), 1, 30, seed=2)
    a, _ = generate_dataset(base)
    b, _ = generate_dataset(other)
    assert not np.array_equal(a[0].points, b[0].points)


def test_two_circles_h1_has_two_long_bars():
    # frozen after running the pipeline: every sample of this seeded spec has
    # exactly 2 dim-1 bars with lifespan > 0.5 under Rips at max_scale 2
    spec = SyntheticSpec(("two_circles",), samples_per_class=6, points_per_sample=50,
                         noise=0.05, seed=3)
    samples, _ = generate_dataset(spec)
    for sample in samples:
        h1 = sample_barcodes(sample, max_scale=2.0, max_dim=2)[1]
        long_bars = sum(m for iv, m in h1 if iv.lifespan > 0.5)
        assert long_bars == 2


def test_image_family():
    spec = SyntheticSpec(("noisy_grid_image",), 3, 1, noise=0.05, seed=5, image_size=16)
    samples, labels = generate_dataset(spec)
    assert all(isinstance(s, GrayscaleImage) for s in samples)
    assert all(s.width == 16 and s.height == 16 for s in samples)
    # thresholding zeroes part of the field
    assert any((s.intensities == 0).any() for s in samples)


def test_cannot_mix_images_and_points():
    with pytest.raises(ValueError):
        SyntheticSpec(("circle", "noisy_grid_image"), 2, 10)


def test_spec_validation():
    with pytest.raises(ValueError):
        SyntheticSpec((), 2, 10)
    with pytest.raises(ValueError):
        SyntheticSpec(("circle",), 0, 10)
    with pytest.raises(ValueError):
        SyntheticSpec(("mystery",), 2, 10)
    with pytest.raises(ValueError):
        SyntheticSpec(("circle",), 2, 10, noise=-0.1)
