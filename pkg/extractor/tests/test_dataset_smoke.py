"""End-to-end smoke on a locally downloaded fall-detection dataset.

Opt-in: point URFALL_DIR at a directory containing the dataset videos
(fall sequences named fall*, daily-activity sequences named adl*). Needs
the pretrained model package and the fallsentry CLI installed. Verifies
that extracted streams validate cleanly in every illumination variant,
that a fall sequence produces at least one flagged frame at the default
threshold, and that a daily-activity sequence produces none.
"""

from __future__ import annotations

import importlib.util
import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

from pose_extractor.cli import main
from pose_extractor.extract import VIDEO_SUFFIXES
from pose_extractor.relight import Illumination

URFALL_DIR = os.environ.get("URFALL_DIR")
HAVE_MODEL = importlib.util.find_spec("mediapipe") is not None
FALLSENTRY = shutil.which("fallsentry")

pytestmark = [
    pytest.mark.skipif(URFALL_DIR is None, reason="URFALL_DIR not set"),
    pytest.mark.skipif(not HAVE_MODEL, reason="pretrained model not installed"),
    pytest.mark.skipif(FALLSENTRY is None, reason="fallsentry CLI not installed"),
]


def find_video(prefix: str) -> Path:
    root = Path(URFALL_DIR)
    for path in sorted(root.rglob("*")):
        if (
            path.is_file()
            and path.suffix.lower() in VIDEO_SUFFIXES
            and path.name.lower().startswith(prefix)
        ):
            return path
    pytest.skip(f"no {prefix}* video under {root}")


def run_cli(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [FALLSENTRY, *argv], capture_output=True, text=True, check=False
    )


def detect_report(stream_path: Path) -> dict:
    proc = run_cli("detect", "--input", str(stream_path))
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout.splitlines()[-1])


def test_fall_sequence_flags_falls_in_every_illumination(tmp_path):
    video = find_video("fall")
    for mode in Illumination:
        out = tmp_path / f"{video.stem}_{mode.value}.jsonl"
        code = main(
            ["--video", str(video), "--illumination", mode.value, "-o", str(out)]
        )
        assert code == 0

        check = run_cli("validate", "--input", str(out))
        assert check.returncode == 0, check.stderr

        report = detect_report(out)
        assert report["frames_fall"] >= 1
        assert report["first_fall_index"] is not None


def test_daily_activity_sequence_stays_non_fall(tmp_path):
    video = find_video("adl")
    out = tmp_path / f"{video.stem}_normal.jsonl"
    code = main(["--video", str(video), "-o", str(out)])
    assert code == 0

    check = run_cli("validate", "--input", str(out))
    assert check.returncode == 0, check.stderr

    # video-level prediction is "any frame flagged"; none may be
    assert detect_report(out)["frames_fall"] == 0
