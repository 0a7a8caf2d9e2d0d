"""Landmark stream format: typed records and strict JSONL (de)serialization.

A stream is one header line followed by zero or more frame lines. Each line
is a standalone JSON object. Frames carry either a full set of 33 landmarks
in pixel coordinates or null when no pose was found. Frame indices start
anywhere at or above zero and must advance by exactly one per line; gaps
mean the producer lost data, and we refuse to guess around that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path
from typing import NamedTuple

from .errors import InvariantViolation, MalformedRecord, MissingHeader

LANDMARK_COUNT = 33


class KeypointId(IntEnum):
    """Indices into a frame's landmark list, matching the usual 33-point
    full-body topology."""

    NOSE = 0
    LEFT_EYE_INNER = 1
    LEFT_EYE = 2
    LEFT_EYE_OUTER = 3
    RIGHT_EYE_INNER = 4
    RIGHT_EYE = 5
    RIGHT_EYE_OUTER = 6
    LEFT_EAR = 7
    RIGHT_EAR = 8
    MOUTH_LEFT = 9
    MOUTH_RIGHT = 10
    LEFT_SHOULDER = 11
    RIGHT_SHOULDER = 12
    LEFT_ELBOW = 13
    RIGHT_ELBOW = 14
    LEFT_WRIST = 15
    RIGHT_WRIST = 16
    LEFT_PINKY = 17
    RIGHT_PINKY = 18
    LEFT_INDEX = 19
    RIGHT_INDEX = 20
    LEFT_THUMB = 21
    RIGHT_THUMB = 22
    LEFT_HIP = 23
    RIGHT_HIP = 24
    LEFT_KNEE = 25
    RIGHT_KNEE = 26
    LEFT_ANKLE = 27
    RIGHT_ANKLE = 28
    LEFT_HEEL = 29
    RIGHT_HEEL = 30
    LEFT_FOOT_INDEX = 31
    RIGHT_FOOT_INDEX = 32


class LandmarkPoint(NamedTuple):
    """One keypoint: pixel position plus a visibility score in [0, 1]."""

    x: float
    y: float
    visibility: float


@dataclass(frozen=True, slots=True)
class StreamHeader:
    """Stream-level metadata emitted once, before any frame."""

    width: int
    height: int
    fps: float
    source: str


@dataclass(frozen=True, slots=True)
class PoseFrame:
    """One frame: a non-negative index and 33 landmarks, or None when the
    upstream pose model produced nothing for this frame."""

    index: int
    landmarks: tuple[LandmarkPoint, ...] | None


def _reject_nan(token: str) -> None:
    # json.loads would happily produce NaN/Infinity; we treat them as malformed.
    raise ValueError(f"non-finite literal {token!r}")


def _as_finite_float(value: object, what: str, line_no: int) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedRecord(line_no, f"{what} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise MalformedRecord(line_no, f"{what} must be finite, got {value!r}")
    return out


def _as_positive_int(value: object, what: str, line_no: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedRecord(line_no, f"{what} must be an integer, got {value!r}")
    if value <= 0:
        raise MalformedRecord(line_no, f"{what} must be positive, got {value}")
    return value


def _parse_object(line: str, line_no: int) -> dict:
    try:
        obj = json.loads(line, parse_constant=_reject_nan)
    except ValueError as exc:
        raise MalformedRecord(line_no, f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise MalformedRecord(line_no, "record must be a JSON object")
    return obj


_HEADER_KEYS = {"type", "width", "height", "fps", "source"}
_FRAME_KEYS = {"type", "index", "landmarks"}


def _parse_header(obj: dict, line_no: int) -> StreamHeader:
    if set(obj) != _HEADER_KEYS:
        raise MalformedRecord(line_no, f"header keys must be {sorted(_HEADER_KEYS)}")
    width = _as_positive_int(obj["width"], "width", line_no)
    height = _as_positive_int(obj["height"], "height", line_no)
    fps = _as_finite_float(obj["fps"], "fps", line_no)
    if fps <= 0:
        raise MalformedRecord(line_no, f"fps must be positive, got {fps}")
    if not isinstance(obj["source"], str):
        raise MalformedRecord(line_no, "source must be a string")
    return StreamHeader(width=width, height=height, fps=fps, source=obj["source"])


def _parse_landmarks(raw: object, line_no: int) -> tuple[LandmarkPoint, ...] | None:
    if raw is None:
        return None
    if not isinstance(raw, list) or len(raw) != LANDMARK_COUNT:
        raise MalformedRecord(line_no, f"landmarks must be null or a list of {LANDMARK_COUNT}")
    points = []
    for i, triple in enumerate(raw):
        if not isinstance(triple, list) or len(triple) != 3:
            raise MalformedRecord(line_no, f"landmark {i} must be [x, y, visibility]")
        x = _as_finite_float(triple[0], f"landmark {i} x", line_no)
        y = _as_finite_float(triple[1], f"landmark {i} y", line_no)
        vis = _as_finite_float(triple[2], f"landmark {i} visibility", line_no)
        if not 0.0 <= vis <= 1.0:
            raise MalformedRecord(line_no, f"landmark {i} visibility out of [0, 1]: {vis}")
        points.append(LandmarkPoint(x, y, vis))
    return tuple(points)


def _parse_frame(obj: dict, line_no: int) -> PoseFrame:
    if set(obj) != _FRAME_KEYS:
        raise MalformedRecord(line_no, f"frame keys must be {sorted(_FRAME_KEYS)}")
    index = obj["index"]
    if isinstance(index, bool) or not isinstance(index, int):
        raise MalformedRecord(line_no, f"index must be an integer, got {index!r}")
    if index < 0:
        raise MalformedRecord(line_no, f"index must be >= 0, got {index}")
    return PoseFrame(index=index, landmarks=_parse_landmarks(obj["landmarks"], line_no))


def parse_stream(data: bytes | str) -> tuple[StreamHeader, list[PoseFrame]]:
    """Parse a full JSONL stream.

    The first non-empty line must be the header (MissingHeader otherwise,
    including for empty input). Frame indices must advance by exactly one;
    anything else raises MalformedRecord with the offending line number.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    header: StreamHeader | None = None
    frames: list[PoseFrame] = []
    prev_index: int | None = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        obj = _parse_object(line, line_no)
        kind = obj.get("type")
        if header is None:
            if kind != "header":
                raise MissingHeader(f"first record must be a header, got type {kind!r}")
            header = _parse_header(obj, line_no)
            continue
        if kind == "header":
            raise MalformedRecord(line_no, "duplicate header")
        if kind != "frame":
            raise MalformedRecord(line_no, f"unknown record type {kind!r}")
        frame = _parse_frame(obj, line_no)
        if prev_index is not None and frame.index != prev_index + 1:
            raise MalformedRecord(
                line_no,
                f"frame index {frame.index} does not follow {prev_index}",
            )
        prev_index = frame.index
        frames.append(frame)
    if header is None:
        raise MissingHeader("stream has no header record")
    return header, frames


def _check_header(header: StreamHeader) -> None:
    if isinstance(header.width, bool) or not isinstance(header.width, int) or header.width <= 0:
        raise InvariantViolation(f"header width must be a positive int, got {header.width!r}")
    if isinstance(header.height, bool) or not isinstance(header.height, int) or header.height <= 0:
        raise InvariantViolation(f"header height must be a positive int, got {header.height!r}")
    fps = header.fps
    if isinstance(fps, bool) or not isinstance(fps, (int, float)) or not math.isfinite(fps) or fps <= 0:
        raise InvariantViolation(f"header fps must be a positive finite number, got {fps!r}")
    if not isinstance(header.source, str):
        raise InvariantViolation("header source must be a string")


def _check_frame(frame: PoseFrame, prev_index: int | None) -> None:
    if isinstance(frame.index, bool) or not isinstance(frame.index, int) or frame.index < 0:
        raise InvariantViolation(f"frame index must be an int >= 0, got {frame.index!r}")
    if prev_index is not None and frame.index != prev_index + 1:
        raise InvariantViolation(
            f"frame index {frame.index} does not follow {prev_index}"
        )
    if frame.landmarks is None:
        return
    if len(frame.landmarks) != LANDMARK_COUNT:
        raise InvariantViolation(
            f"frame {frame.index} has {len(frame.landmarks)} landmarks, want {LANDMARK_COUNT}"
        )
    for i, point in enumerate(frame.landmarks):
        for label, value in (("x", point.x), ("y", point.y)):
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvariantViolation(
                    f"frame {frame.index} landmark {i} {label} must be finite, got {value!r}"
                )
        vis = point.visibility
        if isinstance(vis, bool) or not isinstance(vis, (int, float)) or not 0.0 <= vis <= 1.0:
            raise InvariantViolation(
                f"frame {frame.index} landmark {i} visibility out of [0, 1]: {vis!r}"
            )


def write_stream(header: StreamHeader, frames: list[PoseFrame]) -> bytes:
    """Serialize to JSONL bytes, validating every value first.

    Floats are emitted at full precision (repr round-trip), so a
    parse(write(...)) round-trip reproduces coordinates exactly.
    """
    _check_header(header)
    lines = [
        json.dumps(
            {
                "type": "header",
                "width": header.width,
                "height": header.height,
                "fps": float(header.fps),
                "source": header.source,
            },
            separators=(",", ":"),
        )
    ]
    prev_index: int | None = None
    for frame in frames:
        _check_frame(frame, prev_index)
        prev_index = frame.index
        landmarks = None
        if frame.landmarks is not None:
            landmarks = [[float(p.x), float(p.y), float(p.visibility)] for p in frame.landmarks]
        lines.append(
            json.dumps(
                {"type": "frame", "index": frame.index, "landmarks": landmarks},
                separators=(",", ":"),
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_stream(path: str | Path) -> tuple[StreamHeader, list[PoseFrame]]:
    return parse_stream(Path(path).read_bytes())


def save_stream(path: str | Path, header: StreamHeader, frames: list[PoseFrame]) -> None:
    Path(path).write_bytes(write_stream(header, frames))
