"""Test doubles and tiny video builders shared across the suite."""

from __future__ import annotations

import cv2
import numpy as np

LANDMARK_COUNT = 33


class StubBackend:
    """Deterministic pose-model stand-in.

    Emits one fixed normalized pose per frame, or no pose for the frame
    ordinals listed in ``missing``. Records the mean intensity of every
    image it is shown so tests can verify what the illumination transform
    fed the model, and whether ``close`` was called.
    """

    def __init__(
        self,
        missing: tuple[int, ...] = (),
        landmark_count: int = LANDMARK_COUNT,
        coords: tuple[float, float] = (0.25, 0.5),
        visibility: float = 1.0,
    ) -> None:
        self.name = "stub"
        self.missing = frozenset(missing)
        self.landmark_count = landmark_count
        self.coords = coords
        self.visibility = visibility
        self.seen_means: list[float] = []
        self.closed = False

    def landmarks(self, image_rgb: np.ndarray):
        index = len(self.seen_means)
        self.seen_means.append(float(image_rgb.mean()))
        if index in self.missing:
            return None
        x, y = self.coords
        return [(x, y, self.visibility)] * self.landmark_count

    def close(self) -> None:
        self.closed = True


def write_video(path, frames, fps: float = 30.0):
    """Write BGR uint8 frames as an MJPG AVI.

    An empty frame list still produces a valid container (header only),
    which decodes as a zero-frame video.
    """
    height, width = frames[0].shape[:2] if frames else (24, 32)
    writer = cv2.VideoWriter(
        str(path), cv2.VideoWriter_fourcc(*"MJPG"), fps, (width, height)
    )
    assert writer.isOpened(), f"could not open writer for {path}"
    for frame in frames:
        writer.write(frame)
    writer.release()
    return path


def gray_frames(count: int, value: int, width: int = 32, height: int = 24):
    """Flat gray BGR frames; flat input keeps lossy encoding drift tiny."""
    frame = np.full((height, width, 3), value, dtype=np.uint8)
    return [frame.copy() for _ in range(count)]
