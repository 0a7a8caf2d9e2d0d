"""Scoring predictions against ground truth.

Two granularities: FRAME compares every frame's flag to a per-frame label,
VIDEO collapses a stream to a single predicted-fall bit (any frame flagged)
and compares it to one label. Either way the output is a confusion matrix,
and accuracy / sensitivity / specificity are derived from that.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .detector import FrameResult
from .errors import (
    EmptyMatrix,
    EmptyResults,
    InvariantViolation,
    MalformedTruth,
    MissingLabel,
)


class Level(Enum):
    FRAME = "frame"
    VIDEO = "video"


@dataclass(frozen=True, slots=True)
class GroundTruthLabels:
    """Ground truth for one stream: a frame-indexed label map at FRAME
    level, a single boolean at VIDEO level."""

    stream_id: str
    level: Level
    labels: Mapping[int, bool] | bool

    def __post_init__(self) -> None:
        if self.level is Level.VIDEO:
            if not isinstance(self.labels, bool):
                raise InvariantViolation("VIDEO-level labels must be a single boolean")
            return
        if isinstance(self.labels, bool) or not isinstance(self.labels, Mapping):
            raise InvariantViolation("FRAME-level labels must map frame index to boolean")
        for index, value in self.labels.items():
            if isinstance(index, bool) or not isinstance(index, int) or index < 0:
                raise InvariantViolation(f"labeled frame index must be an int >= 0, got {index!r}")
            if not isinstance(value, bool):
                raise InvariantViolation(f"label for frame {index} must be a boolean")


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "tn", "fn"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvariantViolation(f"{name} must be an int >= 0, got {value!r}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confuse(results: list[FrameResult], truth: GroundTruthLabels) -> ConfusionMatrix:
    """Tally predictions against labels.

    FRAME level counts one unit per result and requires a label for every
    result index (MissingLabel otherwise). VIDEO level counts exactly one
    unit: predicted fall iff any frame flagged; EmptyResults when there is
    nothing to collapse.
    """
    if truth.level is Level.VIDEO:
        if not results:
            raise EmptyResults("video-level comparison needs at least one frame result")
        predicted = any(r.fall for r in results)
        actual = bool(truth.labels)
        if predicted and actual:
            return ConfusionMatrix(tp=1)
        if predicted and not actual:
            return ConfusionMatrix(fp=1)
        if actual:
            return ConfusionMatrix(fn=1)
        return ConfusionMatrix(tn=1)

    tp = fp = tn = fn = 0
    for r in results:
        label = truth.labels.get(r.index)
        if label is None:
            raise MissingLabel(f"no ground-truth label for frame {r.index}")
        if r.fall and label:
            tp += 1
        elif r.fall:
            fp += 1
        elif label:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)


@dataclass(frozen=True, slots=True)
class Metrics:
    """Summary ratios. sensitivity is None when there are no positive
    units, specificity when there are no negative ones."""

    accuracy: float
    sensitivity: float | None
    specificity: float | None


def metrics(cm: ConfusionMatrix) -> Metrics:
    if cm.total == 0:
        raise EmptyMatrix("metrics are undefined on an empty confusion matrix")
    accuracy = (cm.tp + cm.tn) / cm.total
    sensitivity = cm.tp / (cm.tp + cm.fn) if cm.tp + cm.fn > 0 else None
    specificity = cm.tn / (cm.tn + cm.fp) if cm.tn + cm.fp > 0 else None
    return Metrics(accuracy=accuracy, sensitivity=sensitivity, specificity=specificity)


_TRUTH_HEADER = ["stream_id", "level", "frame", "label"]
_LABEL_VALUES = {"0": False, "1": True, "false": False, "true": True}


def load_truth_csv(data: bytes | str) -> dict[str, GroundTruthLabels]:
    """Parse a ground-truth CSV into per-stream label sets.

    Expected header: stream_id,level,frame,label. FRAME rows carry a frame
    index; VIDEO rows leave it empty and there must be exactly one per
    stream. A stream cannot mix levels.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedTruth("truth CSV is empty") from None
    if header != _TRUTH_HEADER:
        raise MalformedTruth(f"truth CSV header must be {','.join(_TRUTH_HEADER)}")

    levels: dict[str, Level] = {}
    frame_labels: dict[str, dict[int, bool]] = {}
    video_labels: dict[str, bool] = {}
    for row_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise MalformedTruth(f"row {row_no}: expected 4 columns, got {len(row)}")
        stream_id, level_text, frame_text, label_text = (cell.strip() for cell in row)
        if not stream_id:
            raise MalformedTruth(f"row {row_no}: empty stream_id")
        try:
            level = Level(level_text.lower())
        except ValueError:
            raise MalformedTruth(f"row {row_no}: unknown level {level_text!r}") from None
        label = _LABEL_VALUES.get(label_text.lower())
        if label is None:
            raise MalformedTruth(f"row {row_no}: label must be 0/1/true/false, got {label_text!r}")
        seen = levels.setdefault(stream_id, level)
        if seen is not level:
            raise MalformedTruth(f"row {row_no}: stream {stream_id!r} mixes frame and video levels")
        if level is Level.VIDEO:
            if frame_text:
                raise MalformedTruth(f"row {row_no}: video-level row must leave frame empty")
            if stream_id in video_labels:
                raise MalformedTruth(f"row {row_no}: duplicate video label for {stream_id!r}")
            video_labels[stream_id] = label
        else:
            try:
                frame = int(frame_text)
            except ValueError:
                raise MalformedTruth(f"row {row_no}: frame must be an integer, got {frame_text!r}") from None
            if frame < 0:
                raise MalformedTruth(f"row {row_no}: frame must be >= 0, got {frame}")
            per_stream = frame_labels.setdefault(stream_id, {})
            if frame in per_stream:
                raise MalformedTruth(f"row {row_no}: duplicate label for {stream_id!r} frame {frame}")
            per_stream[frame] = label

    out: dict[str, GroundTruthLabels] = {}
    for stream_id, level in levels.items():
        labels: Mapping[int, bool] | bool
        labels = video_labels[stream_id] if level is Level.VIDEO else frame_labels[stream_id]
        out[stream_id] = GroundTruthLabels(stream_id=stream_id, level=level, labels=labels)
    return out


def metrics_record(stream_id: str, cm: ConfusionMatrix, m: Metrics) -> str:
    """One-line JSON report for a scored stream."""
    return json.dumps(
        {
            "stream_id": stream_id,
            "tp": cm.tp,
            "fp": cm.fp,
            "tn": cm.tn,
            "fn": cm.fn,
            "accuracy": m.accuracy,
            "sensitivity": m.sensitivity,
            "specificity": m.specificity,
        },
        separators=(",", ":"),
    )
