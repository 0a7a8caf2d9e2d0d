"""Command-line behavior: argument handling, exit codes, report lines."""

from __future__ import annotations

import importlib.util
import shutil
import subprocess
import sys

import pytest

from _helpers import StubBackend, gray_frames, write_video
from pose_extractor.cli import main

HAVE_MODEL = importlib.util.find_spec("mediapipe") is not None
POSE_EXTRACT = shutil.which("pose-extract")


def stub_factory(job):
    return StubBackend()


def test_single_video_reports_and_writes(tmp_path, capsys):
    video = write_video(tmp_path / "clip.avi", gray_frames(3, 128))
    out = tmp_path / "clip.jsonl"
    code = main(["--video", str(video), "-o", str(out)], backend_factory=stub_factory)

    assert code == 0
    assert out.is_file()
    assert capsys.readouterr().out == f"wrote {out}: 3 frames (3 with pose)\n"


def test_illumination_option_reaches_the_transform(tmp_path):
    video = write_video(tmp_path / "clip.avi", gray_frames(2, 128))
    seen: list[StubBackend] = []

    def factory(job):
        backend = StubBackend()
        seen.append(backend)
        return backend

    code = main(
        ["--video", str(video), "--illumination", "low", "-o", str(tmp_path / "o.jsonl")],
        backend_factory=factory,
    )

    assert code == 0
    assert len(seen) == 1
    assert seen[0].closed
    for mean in seen[0].seen_means:
        assert mean == pytest.approx(64.0, abs=3.0)


def test_gain_options_override_defaults(tmp_path):
    video = write_video(tmp_path / "clip.avi", gray_frames(2, 128))
    seen: list[StubBackend] = []

    def factory(job):
        assert job.gain_low == 0.25
        backend = StubBackend()
        seen.append(backend)
        return backend

    code = main(
        [
            "--video",
            str(video),
            "--illumination",
            "low",
            "--gain-low",
            "0.25",
            "-o",
            str(tmp_path / "o.jsonl"),
        ],
        backend_factory=factory,
    )

    assert code == 0
    for mean in seen[0].seen_means:
        assert mean == pytest.approx(32.0, abs=3.0)


def test_batch_reports_one_line_per_output(tmp_path, capsys):
    video_dir = tmp_path / "videos"
    video_dir.mkdir()
    write_video(video_dir / "a.avi", gray_frames(2, 128))
    write_video(video_dir / "b.avi", gray_frames(2, 128))
    out_dir = tmp_path / "streams"

    code = main(
        ["--batch", str(video_dir), "-o", str(out_dir)], backend_factory=stub_factory
    )

    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert lines[0] == f"wrote {out_dir / 'a_normal.jsonl'}: 2 frames (2 with pose)"
    assert lines[3] == f"wrote {out_dir / 'b_normal.jsonl'}: 2 frames (2 with pose)"


def test_missing_video_is_an_input_error(tmp_path, capsys):
    code = main(
        ["--video", str(tmp_path / "nope.avi"), "-o", str(tmp_path / "o.jsonl")],
        backend_factory=stub_factory,
    )
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_unwritable_output_is_an_input_error(tmp_path, capsys):
    video = write_video(tmp_path / "clip.avi", gray_frames(1, 128))
    code = main(
        ["--video", str(video), "-o", str(tmp_path / "no" / "such" / "dir" / "o.jsonl")],
        backend_factory=stub_factory,
    )
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["--video", "a.avi", "--batch", "dir", "-o", "out"],
        ["--video", "a.avi"],
        ["--video", "a.avi", "--illumination", "dim", "-o", "out.jsonl"],
    ],
)
def test_bad_usage_exits_two(argv, capsys):
    assert main(argv, backend_factory=stub_factory) == 2
    capsys.readouterr()


@pytest.mark.skipif(HAVE_MODEL, reason="pretrained model is installed")
def test_without_model_package_default_backend_fails_cleanly(tmp_path, capsys):
    video = write_video(tmp_path / "clip.avi", gray_frames(1, 128))
    code = main(["--video", str(video), "-o", str(tmp_path / "o.jsonl")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_module_invocation_wiring():
    proc = subprocess.run(
        [sys.executable, "-m", "pose_extractor.cli"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 2
    assert "usage:" in proc.stderr


@pytest.mark.skipif(POSE_EXTRACT is None, reason="console script not installed")
def test_console_script_wiring():
    proc = subprocess.run([POSE_EXTRACT], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
    assert "usage:" in proc.stderr
