"""Illumination transform unit tests."""

from __future__ import annotations

import numpy as np

from pose_extractor import DEFAULT_GAIN_HIGH, DEFAULT_GAIN_LOW, Illumination, relight


def test_normal_is_identity_bit_exact():
    rng = np.random.default_rng(7)
    image = rng.integers(0, 256, size=(24, 32, 3), dtype=np.uint8)
    out = relight(image, Illumination.NORMAL)
    # same object, not a copy: nothing may touch the normal variant
    assert out is image


def test_low_halves_flat_gray():
    image = np.full((8, 8, 3), 128, dtype=np.uint8)
    out = relight(image, Illumination.LOW)
    assert out.dtype == np.uint8
    assert np.all(out == 64)


def test_high_clamps_to_pixel_range():
    image = np.full((8, 8, 3), 200, dtype=np.uint8)
    out = relight(image, Illumination.HIGH)
    assert out.dtype == np.uint8
    assert np.all(out == 255)


def test_high_scales_below_clamp():
    image = np.full((4, 4), 100, dtype=np.uint8)
    assert np.all(relight(image, Illumination.HIGH) == 150)


def test_gains_are_configurable():
    image = np.full((4, 4), 100, dtype=np.uint8)
    assert np.all(relight(image, Illumination.LOW, gain_low=0.25) == 25)
    assert np.all(relight(image, Illumination.HIGH, gain_high=2.0) == 200)


def test_scaling_rounds_to_nearest():
    image = np.full((4, 4), 5, dtype=np.uint8)
    # 5 * 0.5 = 2.5, banker's rounding lands on 2
    assert np.all(relight(image, Illumination.LOW) == 2)


def test_low_keeps_black_black():
    image = np.zeros((4, 4), dtype=np.uint8)
    assert np.all(relight(image, Illumination.LOW) == 0)


def test_default_gains():
    assert DEFAULT_GAIN_LOW == 0.5
    assert DEFAULT_GAIN_HIGH == 1.5


def test_low_preserves_shape_and_gradient_order():
    image = np.arange(256, dtype=np.uint8).reshape(16, 16)
    out = relight(image, Illumination.LOW)
    assert out.shape == image.shape
    flat = out.astype(np.int32).ravel()
    assert np.all(np.diff(flat) >= 0)
