"""Scalar features computed from single pose frames.

All distances are in pixels of the source image. Points are plain (x, y)
tuples; landmark lookup applies a visibility floor so half-occluded joints
never feed the geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneratePoints, ZeroBaseline
from .stream import KeypointId, PoseFrame

Point = tuple[float, float]

DEFAULT_VISIBILITY_MIN = 0.5


def euclidean(a: Point, b: Point) -> float:
    """Straight-line distance between two pixel points."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def landmark_point(
    frame: PoseFrame, key: KeypointId, visibility_min: float = DEFAULT_VISIBILITY_MIN
) -> Point | None:
    """The (x, y) of one landmark, or None when the frame has no pose or
    the landmark's visibility is below the floor."""
    if frame.landmarks is None:
        return None
    point = frame.landmarks[key]
    if point.visibility < visibility_min:
        return None
    return (point.x, point.y)


def neck_point(frame: PoseFrame, visibility_min: float = DEFAULT_VISIBILITY_MIN) -> Point | None:
    """Midpoint of the two shoulders. Needs both shoulders usable."""
    left = landmark_point(frame, KeypointId.LEFT_SHOULDER, visibility_min)
    right = landmark_point(frame, KeypointId.RIGHT_SHOULDER, visibility_min)
    if left is None or right is None:
        return None
    return ((left[0] + right[0]) / 2.0, (left[1] + right[1]) / 2.0)


def head_angle(nose: Point, neck: Point) -> float:
    """Unsigned angle of the neck-to-nose vector against the horizontal.

    Returned in degrees, always in [0, 180]. An upright head reads near 90
    (nose almost straight above the neck in image coordinates); a head
    pitched toward horizontal reads near 0 or 180. Coincident points leave
    the angle undefined and raise DegeneratePoints.
    """
    dx = nose[0] - neck[0]
    dy = nose[1] - neck[1]
    if dx == 0.0 and dy == 0.0:
        raise DegeneratePoints("nose and neck coincide, head angle undefined")
    return abs(math.degrees(math.atan2(dy, dx)))


def nose_ankle_distance(
    frame: PoseFrame, visibility_min: float = DEFAULT_VISIBILITY_MIN
) -> float | None:
    """Pixel distance from the nose to the left ankle, or None when either
    landmark is unusable."""
    nose = landmark_point(frame, KeypointId.NOSE, visibility_min)
    ankle = landmark_point(frame, KeypointId.LEFT_ANKLE, visibility_min)
    if nose is None or ankle is None:
        return None
    return euclidean(nose, ankle)


def percentage_change(d_now: float, d_initial: float) -> float:
    """Relative change of a distance against its calibration baseline,
    in percent. Negative when the distance shrank."""
    if d_initial <= 0.0:
        raise ZeroBaseline(f"baseline distance must be positive, got {d_initial}")
    return 100.0 * (d_now - d_initial) / d_initial


def head_displacement(current: Point, initial: Point) -> float:
    """Distance the nose has moved from its calibration position."""
    return euclidean(current, initial)


@dataclass(frozen=True, slots=True)
class FeatureValues:
    """Per-frame feature triple. Any member is None when its inputs were
    missing for that frame (no pose, occluded joints, or no baseline yet)."""

    head_angle_deg: float | None
    dist_ankle_px: float | None
    pct_change: float | None
