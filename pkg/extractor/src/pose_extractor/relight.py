"""Illumination variants applied to frames before pose inference.

NORMAL passes the frame through untouched, bit for bit. LOW and HIGH scale
every pixel intensity by a configurable gain and clamp back into the valid
8-bit range.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

DEFAULT_GAIN_LOW = 0.5
DEFAULT_GAIN_HIGH = 1.5


class Illumination(Enum):
    NORMAL = "normal"
    LOW = "low"
    HIGH = "high"


def relight(
    image: np.ndarray,
    mode: Illumination,
    gain_low: float = DEFAULT_GAIN_LOW,
    gain_high: float = DEFAULT_GAIN_HIGH,
) -> np.ndarray:
    """Apply one illumination variant to an 8-bit image."""
    if mode is Illumination.NORMAL:
        return image
    gain = gain_low if mode is Illumination.LOW else gain_high
    scaled = np.rint(image.astype(np.float32) * gain)
    return np.clip(scaled, 0, 255).astype(np.uint8)
