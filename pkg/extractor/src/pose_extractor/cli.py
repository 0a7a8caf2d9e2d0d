"""Command-line surface for video to landmark-stream extraction.

Single-video mode extracts one file in one illumination variant; batch mode
walks a directory tree and emits all three variants per video. Exit codes
match the detection CLI: 0 success, 1 input error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from typing import Callable

from .backend import PoseBackend
from .errors import ExtractorError
from .extract import ExtractionJob, ExtractReport, batch, extract
from .relight import DEFAULT_GAIN_HIGH, DEFAULT_GAIN_LOW, Illumination

BackendFactory = Callable[[ExtractionJob], PoseBackend]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pose-extract",
        description="Extract 33-keypoint landmark streams from videos.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--video", help="one video file")
    source.add_argument("--batch", help="directory tree of videos; all illumination modes emitted")
    parser.add_argument(
        "--illumination",
        choices=[m.value for m in Illumination],
        default=Illumination.NORMAL.value,
        help="variant for --video mode (batch always emits all three)",
    )
    parser.add_argument("--gain-low", type=float, default=DEFAULT_GAIN_LOW)
    parser.add_argument("--gain-high", type=float, default=DEFAULT_GAIN_HIGH)
    parser.add_argument("--model-complexity", type=int, default=1)
    parser.add_argument("-o", "--output", required=True,
                        help="stream file for --video, directory for --batch")
    return parser


def _report_line(report: ExtractReport) -> str:
    return (
        f"wrote {report.output_path}: {report.frames_total} frames"
        f" ({report.frames_with_pose} with pose)"
    )


def main(argv: list[str] | None = None, backend_factory: BackendFactory | None = None) -> int:
    # backend_factory overrides the pretrained-model backend; the installed
    # script never passes one, tests inject deterministic stubs through it.
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.video is not None:
            job = ExtractionJob(
                video_path=args.video,
                illumination=Illumination(args.illumination),
                output_path=args.output,
                model_complexity=args.model_complexity,
                gain_low=args.gain_low,
                gain_high=args.gain_high,
            )
            if backend_factory is None:
                print(_report_line(extract(job)))
            else:
                backend = backend_factory(job)
                try:
                    print(_report_line(extract(job, backend)))
                finally:
                    backend.close()
        else:
            for report in batch(
                args.batch,
                args.output,
                model_complexity=args.model_complexity,
                gain_low=args.gain_low,
                gain_high=args.gain_high,
                backend_factory=backend_factory,
            ):
                print(_report_line(report))
        return 0
    except ExtractorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
