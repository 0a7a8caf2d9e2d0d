"""Orchestration: parse a stream, run the detector, summarize, emit curves.

The curve table is plot-ready CSV of the per-frame feature series plus the
displacement and the fall flag, one row per frame in stream order. Absent
values become empty cells.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .detector import DetectorConfig, FrameResult, run_stream
from .errors import InvariantViolation
from .stream import parse_stream

CURVE_COLUMNS = ("frame", "head_angle_deg", "dist_ankle_px", "pct_change", "displacement_px", "fall")


@dataclass(frozen=True, slots=True)
class RunReport:
    """Per-stream tally of how detection went and what got written."""

    stream_id: str
    frames_total: int
    frames_fall: int
    first_fall_index: int | None
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.frames_fall > self.frames_total:
            raise InvariantViolation(
                f"frames_fall {self.frames_fall} exceeds frames_total {self.frames_total}"
            )
        if (self.first_fall_index is not None) != (self.frames_fall > 0):
            raise InvariantViolation(
                "first_fall_index must be present exactly when frames_fall > 0"
            )


def build_report(
    stream_id: str, results: list[FrameResult], outputs: tuple[str, ...] = ()
) -> RunReport:
    fall_indices = [r.index for r in results if r.fall]
    return RunReport(
        stream_id=stream_id,
        frames_total=len(results),
        frames_fall=len(fall_indices),
        first_fall_index=fall_indices[0] if fall_indices else None,
        outputs=outputs,
    )


def process_stream(
    data: bytes | str, config: DetectorConfig, stream_id: str | None = None
) -> tuple[list[FrameResult], RunReport]:
    """Parse and detect in one go. stream_id defaults to the header source."""
    header, frames = parse_stream(data)
    results = run_stream(header, frames, config)
    return results, build_report(stream_id if stream_id is not None else header.source, results)


def _cell(value: float | None) -> str:
    return "" if value is None else str(value)


def emit_curves(results: list[FrameResult]) -> str:
    """CSV text of the feature curves, header row always present."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for r in results:
        writer.writerow(
            [
                r.index,
                _cell(r.features.head_angle_deg),
                _cell(r.features.dist_ankle_px),
                _cell(r.features.pct_change),
                _cell(r.displacement_px),
                int(r.fall),
            ]
        )
    return buf.getvalue()


def report_record(report: RunReport) -> str:
    """One-line JSON form of a RunReport."""
    return json.dumps(
        {
            "stream_id": report.stream_id,
            "frames_total": report.frames_total,
            "frames_fall": report.frames_fall,
            "first_fall_index": report.first_fall_index,
            "outputs": list(report.outputs),
        },
        separators=(",", ":"),
    )
