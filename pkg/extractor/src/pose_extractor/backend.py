"""Pose inference backends.

The extractor only needs one call per frame: RGB image in, 33 normalized
(x, y, visibility) landmarks out, or None when no person was found. That
seam keeps the pipeline testable with a deterministic stub and keeps the
heavyweight model dependency optional at import time.
"""

from __future__ import annotations

from typing import Protocol, Sequence

import numpy as np

from .errors import ModelLoadFailed

LANDMARK_COUNT = 33

Landmark = tuple[float, float, float]  # normalized x, normalized y, visibility


class PoseBackend(Protocol):
    name: str

    def landmarks(self, rgb: np.ndarray) -> Sequence[Landmark] | None:
        """Landmarks for one RGB frame, or None when no pose was detected."""
        ...

    def close(self) -> None:
        ...


class MediaPipeBackend:
    """Wrapper around the pretrained 33-keypoint full-body model.

    Import and model construction happen here, not at module import, so
    environments without the model package can still use the rest of the
    extractor (with their own backend) and get a clean ModelLoadFailed
    otherwise.
    """

    name = "mediapipe-pose"

    def __init__(self, model_complexity: int = 1):
        try:
            import mediapipe as mp
        except ImportError as exc:
            raise ModelLoadFailed(
                "mediapipe is not installed; install the 'mediapipe' extra or "
                "supply another backend"
            ) from exc
        try:
            self._pose = mp.solutions.pose.Pose(
                static_image_mode=False, model_complexity=model_complexity
            )
        except Exception as exc:
            raise ModelLoadFailed(f"pose model failed to initialize: {exc}") from exc

    def landmarks(self, rgb: np.ndarray) -> list[Landmark] | None:
        result = self._pose.process(rgb)
        if result.pose_landmarks is None:
            return None
        return [
            (lm.x, lm.y, lm.visibility) for lm in result.pose_landmarks.landmark
        ]

    def close(self) -> None:
        self._pose.close()
