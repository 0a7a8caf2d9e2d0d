"""Command-line surface.

Subcommands map one-to-one onto the library modules: detect (run the
detector over one or more streams), eval (score predictions against a
truth CSV), synth (generate a synthetic stream), perturb (degrade a
stream), validate (lint a stream file).

Exit codes: 0 success, 1 input or validation error, 2 usage error. Data
goes to files or stdout; diagnostics go to stderr. Given identical inputs
and flags, every data output is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .detector import (
    DEFAULT_THRESHOLD_PX,
    DetectorConfig,
    parse_results,
    write_results,
)
from .errors import FallsentryError, MalformedTruth
from .evaluation import Level, confuse, load_truth_csv, metrics, metrics_record
from .geometry import DEFAULT_VISIBILITY_MIN
from .pipeline import RunReport, emit_curves, process_stream, report_record
from .stream import StreamHeader, load_stream, save_stream
from .synth import (
    DEFAULT_DROP_PX,
    DEFAULT_RAMP_FRAMES,
    Pattern,
    PerturbSpec,
    SynthSpec,
    describe,
    describe_perturb,
    perturb,
    synthesize,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fallsentry",
        description="Fall detection over pose landmark streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="run the detector over landmark streams")
    p_detect.add_argument("--input", nargs="+", required=True, help="stream file(s) (.jsonl)")
    p_detect.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD_PX,
                          help="fall displacement threshold in pixels")
    p_detect.add_argument("--visibility-min", type=float, default=DEFAULT_VISIBILITY_MIN,
                          help="landmark visibility floor")
    p_detect.add_argument("--output", help="results file (.jsonl); directory when multiple inputs")
    p_detect.add_argument("--curves", help="curve CSV file; directory when multiple inputs")
    p_detect.add_argument("--jobs", type=int, default=1, help="parallel stream workers")

    p_eval = sub.add_parser("eval", help="score a results file against ground truth")
    p_eval.add_argument("--pred", required=True, help="results file from detect")
    p_eval.add_argument("--truth", required=True, help="ground-truth CSV")
    p_eval.add_argument("--level", required=True, choices=[lv.value for lv in Level])

    p_synth = sub.add_parser("synth", help="generate a synthetic landmark stream")
    p_synth.add_argument("--pattern", required=True, choices=[p.value for p in Pattern])
    p_synth.add_argument("--frames", type=int, required=True)
    p_synth.add_argument("--fall-start", type=int, default=0)
    p_synth.add_argument("--drop-px", type=float, default=DEFAULT_DROP_PX)
    p_synth.add_argument("--ramp-frames", type=int, default=DEFAULT_RAMP_FRAMES)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--width", type=int, default=640)
    p_synth.add_argument("--height", type=int, default=480)
    p_synth.add_argument("--fps", type=float, default=30.0)
    p_synth.add_argument("-o", "--output", required=True)

    p_perturb = sub.add_parser("perturb", help="add noise and dropout to a stream")
    p_perturb.add_argument("--input", required=True)
    p_perturb.add_argument("--noise-sigma", type=float, default=0.0)
    p_perturb.add_argument("--dropout", type=float, default=0.0)
    p_perturb.add_argument("--seed", type=int, default=0)
    p_perturb.add_argument("-o", "--output", required=True)

    p_validate = sub.add_parser("validate", help="check that a stream file parses cleanly")
    p_validate.add_argument("--input", required=True)

    return parser


def _detect_worker(task: tuple[str, float, float]) -> tuple[bytes, str, int, int, int | None]:
    """Process one stream file. Top-level so process pools can pickle it."""
    path, threshold, visibility_min = task
    config = DetectorConfig(threshold_px=threshold, visibility_min=visibility_min)
    results, report = process_stream(
        Path(path).read_bytes(), config, stream_id=Path(path).stem
    )
    return (
        write_results(results),
        emit_curves(results),
        report.frames_total,
        report.frames_fall,
        report.first_fall_index,
    )


def _cmd_detect(args: argparse.Namespace) -> int:
    inputs = [Path(p) for p in args.input]
    multi = len(inputs) > 1
    config = DetectorConfig(threshold_px=args.threshold, visibility_min=args.visibility_min)
    config.validate()

    tasks = [(str(p), args.threshold, args.visibility_min) for p in inputs]
    jobs = max(1, args.jobs)
    if jobs > 1 and multi:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_detect_worker, tasks))
    else:
        outcomes = [_detect_worker(task) for task in tasks]

    for out_dir in (args.output, args.curves) if multi else ():
        if out_dir is not None:
            Path(out_dir).mkdir(parents=True, exist_ok=True)

    for path, (results_bytes, curves_text, total, falls, first_fall) in zip(inputs, outcomes):
        written: list[str] = []
        if args.output is not None:
            out_path = Path(args.output) / f"{path.stem}.results.jsonl" if multi else Path(args.output)
            out_path.write_bytes(results_bytes)
            written.append(str(out_path))
        if args.curves is not None:
            curves_path = Path(args.curves) / f"{path.stem}.curves.csv" if multi else Path(args.curves)
            curves_path.write_text(curves_text, encoding="utf-8")
            written.append(str(curves_path))
        report = RunReport(
            stream_id=path.stem,
            frames_total=total,
            frames_fall=falls,
            first_fall_index=first_fall,
            outputs=tuple(written),
        )
        print(report_record(report))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    results = parse_results(Path(args.pred).read_bytes())
    truths = load_truth_csv(Path(args.truth).read_bytes())
    if len(truths) != 1:
        raise MalformedTruth(
            f"eval needs a truth CSV with exactly one stream id, found {len(truths)}"
        )
    truth = next(iter(truths.values()))
    level = Level(args.level)
    if truth.level is not level:
        raise MalformedTruth(
            f"truth for {truth.stream_id!r} is {truth.level.value}-level, --level {level.value} given"
        )
    cm = confuse(results, truth)
    print(metrics_record(truth.stream_id, cm, metrics(cm)))
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        pattern=Pattern(args.pattern),
        frames=args.frames,
        fall_start=args.fall_start,
        drop_px=args.drop_px,
        seed=args.seed,
        ramp_frames=args.ramp_frames,
    )
    header = StreamHeader(
        width=args.width, height=args.height, fps=args.fps, source=describe(spec)
    )
    frames = synthesize(spec, header)
    save_stream(args.output, header, frames)
    return 0


def _cmd_perturb(args: argparse.Namespace) -> int:
    header, frames = load_stream(args.input)
    spec = PerturbSpec(
        noise_sigma_px=args.noise_sigma, dropout_prob=args.dropout, seed=args.seed
    )
    out_header = replace(header, source=f"{header.source} | {describe_perturb(spec)}")
    save_stream(args.output, out_header, perturb(frames, spec))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    header, frames = load_stream(args.input)
    with_pose = sum(1 for f in frames if f.landmarks is not None)
    print(
        f"OK {args.input}: {len(frames)} frames ({with_pose} with pose), "
        f"{header.width}x{header.height} @ {header.fps} fps"
    )
    return 0


_COMMANDS = {
    "detect": _cmd_detect,
    "eval": _cmd_eval,
    "synth": _cmd_synth,
    "perturb": _cmd_perturb,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except FallsentryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
