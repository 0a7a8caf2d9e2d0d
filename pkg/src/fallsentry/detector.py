"""Streaming fall detector.

The rule is deliberately small: remember where the head (nose) was on the
first frame that has one, then flag any later frame whose nose has moved
strictly more than a pixel threshold from that anchor. Everything else in
this module is bookkeeping around that rule: per-frame feature values for
downstream plotting, a one-shot calibration that also pins the baseline
nose-to-ankle distance, and a strict no-mutation policy for frames where
the pose is missing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    DegeneratePoints,
    InvalidConfig,
    InvariantViolation,
    MalformedRecord,
    OutOfOrderFrame,
)
from .geometry import (
    DEFAULT_VISIBILITY_MIN,
    FeatureValues,
    Point,
    head_angle,
    head_displacement,
    landmark_point,
    neck_point,
    nose_ankle_distance,
    percentage_change,
)
from .stream import KeypointId, PoseFrame, StreamHeader

DEFAULT_THRESHOLD_PX = 95.0


class Annotation(Enum):
    """Per-frame verdict label. Names mirror the red/green overlay colors a
    renderer would draw; the engine itself never touches pixels."""

    RED_FALL = "RED_FALL"
    GREEN_NO_FALL = "GREEN_NO_FALL"


@dataclass(frozen=True, slots=True)
class DetectorConfig:
    threshold_px: float = DEFAULT_THRESHOLD_PX
    visibility_min: float = DEFAULT_VISIBILITY_MIN

    def validate(self) -> None:
        if not isinstance(self.threshold_px, (int, float)) or isinstance(self.threshold_px, bool):
            raise InvalidConfig(f"threshold_px must be a number, got {self.threshold_px!r}")
        if not math.isfinite(self.threshold_px) or self.threshold_px <= 0:
            raise InvalidConfig(f"threshold_px must be > 0, got {self.threshold_px}")
        vis = self.visibility_min
        if not isinstance(vis, (int, float)) or isinstance(vis, bool):
            raise InvalidConfig(f"visibility_min must be a number, got {vis!r}")
        if not 0.0 <= vis <= 1.0:
            raise InvalidConfig(f"visibility_min must be in [0, 1], got {vis}")


@dataclass(frozen=True, slots=True)
class DetectorState:
    """Detector memory between frames.

    initial_head, d_initial and calibration_frame are the calibration
    anchors; once set they never change for the life of the stream.
    last_index only enforces the in-order stepping precondition.
    """

    initial_head: Point | None = None
    d_initial: float | None = None
    calibration_frame: int | None = None
    last_index: int | None = None

    @property
    def calibrated(self) -> bool:
        return self.initial_head is not None


@dataclass(frozen=True, slots=True)
class FrameResult:
    index: int
    fall: bool
    displacement_px: float | None
    features: FeatureValues
    annotation: Annotation

    def __post_init__(self) -> None:
        if self.fall != (self.annotation is Annotation.RED_FALL):
            raise InvariantViolation(
                f"frame {self.index}: fall={self.fall} conflicts with {self.annotation}"
            )


def detector_new(config: DetectorConfig) -> DetectorState:
    """Fresh all-absent state for one stream. Validates the config."""
    config.validate()
    return DetectorState()


def _head_angle_or_none(nose: Point, frame: PoseFrame, visibility_min: float) -> float | None:
    neck = neck_point(frame, visibility_min)
    if neck is None:
        return None
    try:
        return head_angle(nose, neck)
    except DegeneratePoints:
        # Nose sitting exactly on the shoulder midpoint has no defined angle.
        return None


def _no_pose_result(index: int) -> FrameResult:
    return FrameResult(
        index=index,
        fall=False,
        displacement_px=None,
        features=FeatureValues(None, None, None),
        annotation=Annotation.GREEN_NO_FALL,
    )


def step(
    state: DetectorState, frame: PoseFrame, config: DetectorConfig
) -> tuple[DetectorState, FrameResult]:
    """Advance the detector by one frame.

    Frames must arrive with strictly increasing indices (OutOfOrderFrame
    otherwise). A frame without a usable nose yields an all-absent
    non-fall result and leaves calibration untouched. The first frame with
    a usable nose calibrates: its nose becomes the displacement anchor and
    its nose-to-ankle distance becomes the percentage-change baseline when
    the ankle is usable too, else the baseline is taken at the first later
    frame where it is. Calibrated frames compare nose displacement against
    the threshold, strictly: displacement equal to the threshold is not a
    fall.
    """
    if state.last_index is not None and frame.index <= state.last_index:
        raise OutOfOrderFrame(
            f"frame index {frame.index} not greater than last stepped index {state.last_index}"
        )
    nose = landmark_point(frame, KeypointId.NOSE, config.visibility_min)
    if nose is None:
        return replace(state, last_index=frame.index), _no_pose_result(frame.index)

    d_ankle = nose_ankle_distance(frame, config.visibility_min)
    angle = _head_angle_or_none(nose, frame, config.visibility_min)

    if not state.calibrated:
        d_initial = d_ankle if d_ankle is not None and d_ankle > 0 else None
        next_state = replace(
            state,
            initial_head=nose,
            d_initial=d_initial,
            calibration_frame=frame.index,
            last_index=frame.index,
        )
        # The calibration frame defines the baseline, so there is no change
        # to report against it yet.
        result = FrameResult(
            index=frame.index,
            fall=False,
            displacement_px=0.0,
            features=FeatureValues(angle, d_ankle, None),
            annotation=Annotation.GREEN_NO_FALL,
        )
        return next_state, result

    displacement = head_displacement(nose, state.initial_head)
    fall = displacement > config.threshold_px

    d_initial = state.d_initial
    pct: float | None = None
    if d_initial is None and d_ankle is not None and d_ankle > 0:
        # Deferred baseline capture; this frame defines it, same rule as
        # the calibration frame: no change reported against itself.
        d_initial = d_ankle
    elif d_initial is not None and d_ankle is not None:
        pct = percentage_change(d_ankle, d_initial)

    next_state = replace(state, d_initial=d_initial, last_index=frame.index)
    result = FrameResult(
        index=frame.index,
        fall=fall,
        displacement_px=displacement,
        features=FeatureValues(angle, d_ankle, pct),
        annotation=Annotation.RED_FALL if fall else Annotation.GREEN_NO_FALL,
    )
    return next_state, result


def run_stream(
    header: StreamHeader, frames: list[PoseFrame], config: DetectorConfig
) -> list[FrameResult]:
    """Fold step over a whole stream. One result per input frame, in order."""
    del header  # stream metadata does not influence detection
    state = detector_new(config)
    results: list[FrameResult] = []
    for frame in frames:
        state, result = step(state, frame, config)
        results.append(result)
    return results


def _number_or_none(value: object, what: str, line_no: int) -> float | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedRecord(line_no, f"{what} must be a number or null, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise MalformedRecord(line_no, f"{what} must be finite, got {value!r}")
    return out


_RESULT_KEYS = {
    "index",
    "fall",
    "displacement_px",
    "head_angle_deg",
    "dist_ankle_px",
    "pct_change",
    "annotation",
}


def write_results(results: list[FrameResult]) -> bytes:
    """Serialize frame results to JSONL bytes, absent values as null."""
    lines = []
    for r in results:
        lines.append(
            json.dumps(
                {
                    "index": r.index,
                    "fall": r.fall,
                    "displacement_px": r.displacement_px,
                    "head_angle_deg": r.features.head_angle_deg,
                    "dist_ankle_px": r.features.dist_ankle_px,
                    "pct_change": r.features.pct_change,
                    "annotation": r.annotation.value,
                },
                separators=(",", ":"),
            )
        )
    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def parse_results(data: bytes | str) -> list[FrameResult]:
    """Parse a results JSONL file back into FrameResult values."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    results: list[FrameResult] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except ValueError as exc:
            raise MalformedRecord(line_no, f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != _RESULT_KEYS:
            raise MalformedRecord(line_no, f"result keys must be {sorted(_RESULT_KEYS)}")
        index = obj["index"]
        if isinstance(index, bool) or not isinstance(index, int) or index < 0:
            raise MalformedRecord(line_no, f"index must be an int >= 0, got {index!r}")
        fall = obj["fall"]
        if not isinstance(fall, bool):
            raise MalformedRecord(line_no, f"fall must be a boolean, got {fall!r}")
        try:
            annotation = Annotation(obj["annotation"])
        except ValueError:
            raise MalformedRecord(line_no, f"unknown annotation {obj['annotation']!r}") from None
        features = FeatureValues(
            head_angle_deg=_number_or_none(obj["head_angle_deg"], "head_angle_deg", line_no),
            dist_ankle_px=_number_or_none(obj["dist_ankle_px"], "dist_ankle_px", line_no),
            pct_change=_number_or_none(obj["pct_change"], "pct_change", line_no),
        )
        displacement = _number_or_none(obj["displacement_px"], "displacement_px", line_no)
        try:
            results.append(
                FrameResult(
                    index=index,
                    fall=fall,
                    displacement_px=displacement,
                    features=features,
                    annotation=annotation,
                )
            )
        except InvariantViolation as exc:
            raise MalformedRecord(line_no, str(exc)) from None
    return results
