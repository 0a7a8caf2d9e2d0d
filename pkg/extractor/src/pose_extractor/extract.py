"""Video to landmark-stream extraction.

Decodes a video frame by frame, applies the requested illumination variant,
runs the pose backend on the RGB frame, scales normalized landmarks to
pixel coordinates, and writes the landmark stream JSONL format consumed by
the detection tooling: one header record, then one frame record per decoded
frame (null landmarks when the model found nobody).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, IO, Iterator, Sequence

import cv2
import numpy as np

from .backend import LANDMARK_COUNT, Landmark, MediaPipeBackend, PoseBackend
from .errors import ModelLoadFailed, VideoOpenFailed
from .relight import DEFAULT_GAIN_HIGH, DEFAULT_GAIN_LOW, Illumination, relight

VIDEO_SUFFIXES = {".avi", ".mp4", ".mov", ".mkv"}


@dataclass(frozen=True)
class ExtractionJob:
    video_path: str
    illumination: Illumination
    output_path: str
    model_complexity: int = 1
    gain_low: float = DEFAULT_GAIN_LOW
    gain_high: float = DEFAULT_GAIN_HIGH


@dataclass(frozen=True)
class ExtractReport:
    output_path: str
    frames_total: int
    frames_with_pose: int


def _open_video(path: str) -> tuple[cv2.VideoCapture, int, int, float]:
    capture = cv2.VideoCapture(path)
    if not capture.isOpened():
        capture.release()
        raise VideoOpenFailed(f"could not open video {path!r}")
    width = int(capture.get(cv2.CAP_PROP_FRAME_WIDTH))
    height = int(capture.get(cv2.CAP_PROP_FRAME_HEIGHT))
    fps = float(capture.get(cv2.CAP_PROP_FPS))
    if fps <= 0.0:
        fps = 30.0  # containers without timing metadata
    if width <= 0 or height <= 0:
        capture.release()
        raise VideoOpenFailed(f"video {path!r} reports no frame dimensions")
    return capture, width, height, fps


def _iter_frames(capture: cv2.VideoCapture) -> Iterator[np.ndarray]:
    while True:
        ok, frame = capture.read()
        if not ok:
            return
        yield frame


def _header_line(width: int, height: int, fps: float, source: str) -> str:
    return json.dumps(
        {"type": "header", "width": width, "height": height, "fps": fps, "source": source},
        separators=(",", ":"),
    )


def _frame_line(index: int, landmarks: list[list[float]] | None) -> str:
    return json.dumps(
        {"type": "frame", "index": index, "landmarks": landmarks},
        separators=(",", ":"),
    )


def _to_pixels(
    landmarks: Sequence[Landmark], width: int, height: int
) -> list[list[float]]:
    if len(landmarks) != LANDMARK_COUNT:
        raise ModelLoadFailed(
            f"model reported {len(landmarks)} landmarks, expected {LANDMARK_COUNT}"
        )
    out = []
    for x, y, visibility in landmarks:
        # visibility is passed through, pinned to the format's [0, 1] range
        vis = min(max(float(visibility), 0.0), 1.0)
        out.append([float(x) * width, float(y) * height, vis])
    return out


def _extract_into(
    job: ExtractionJob, backend: PoseBackend, sink: IO[str]
) -> ExtractReport:
    capture, width, height, fps = _open_video(job.video_path)
    source = (
        f"extract video={Path(job.video_path).name}"
        f" illumination={job.illumination.value}"
        f" gain_low={job.gain_low} gain_high={job.gain_high}"
        f" model={backend.name}"
    )
    try:
        sink.write(_header_line(width, height, fps, source) + "\n")
        total = 0
        with_pose = 0
        for index, frame_bgr in enumerate(_iter_frames(capture)):
            lit = relight(frame_bgr, job.illumination, job.gain_low, job.gain_high)
            rgb = cv2.cvtColor(lit, cv2.COLOR_BGR2RGB)
            landmarks = backend.landmarks(rgb)
            if landmarks is None:
                sink.write(_frame_line(index, None) + "\n")
            else:
                sink.write(_frame_line(index, _to_pixels(landmarks, width, height)) + "\n")
                with_pose += 1
            total += 1
        return ExtractReport(
            output_path=job.output_path, frames_total=total, frames_with_pose=with_pose
        )
    finally:
        capture.release()


def extract(job: ExtractionJob, backend: PoseBackend | None = None) -> ExtractReport:
    """Run one extraction job, writing the stream to job.output_path.

    When no backend is supplied, the pretrained model backend is created
    for the job and closed afterwards (ModelLoadFailed when unavailable).
    """
    owns_backend = backend is None
    if backend is None:
        backend = MediaPipeBackend(job.model_complexity)
    try:
        with open(job.output_path, "w", encoding="utf-8", newline="\n") as sink:
            return _extract_into(job, backend, sink)
    finally:
        if owns_backend:
            backend.close()


def batch(
    video_dir: str,
    output_dir: str,
    model_complexity: int = 1,
    gain_low: float = DEFAULT_GAIN_LOW,
    gain_high: float = DEFAULT_GAIN_HIGH,
    backend_factory: Callable[[ExtractionJob], PoseBackend] | None = None,
) -> list[ExtractReport]:
    """Extract every video under video_dir in all three illumination modes.

    Output files are named <stem>_<illumination>.jsonl under output_dir
    (30 videos become 90 stream files). A fresh backend is created per job
    so per-video tracking state never leaks across files.
    """
    root = Path(video_dir)
    if not root.is_dir():
        raise VideoOpenFailed(f"batch directory {video_dir!r} does not exist")
    videos = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in VIDEO_SUFFIXES
    )
    if not videos:
        raise VideoOpenFailed(f"no video files under {video_dir!r}")
    out_root = Path(output_dir)
    out_root.mkdir(parents=True, exist_ok=True)

    reports = []
    for video in videos:
        for mode in Illumination:
            job = ExtractionJob(
                video_path=str(video),
                illumination=mode,
                output_path=str(out_root / f"{video.stem}_{mode.value}.jsonl"),
                model_complexity=model_complexity,
                gain_low=gain_low,
                gain_high=gain_high,
            )
            if backend_factory is None:
                reports.append(extract(job))
            else:
                backend = backend_factory(job)
                try:
                    reports.append(extract(job, backend))
                finally:
                    backend.close()
    return reports
