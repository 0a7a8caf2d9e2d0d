#!/usr/bin/env python3
"""Regenerate the committed stream fixtures under tests/fixtures/.

The fixtures are committed rather than built on the fly so the byte-level
format stays pinned even if generator internals move; a test compares the
committed bytes against fresh generator output and fails loudly when the
two drift apart. Run this, review the diff, and recommit when a change is
intentional.
"""

from __future__ import annotations

from pathlib import Path

from fallsentry import Pattern, StreamHeader, SynthSpec, describe, synthesize, write_stream

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# 199 frames at 640x480 with the fall ramp placed so the detector flags
# from frame 139 onward, comfortably red by frame 141.
SAMPLE01 = SynthSpec(
    pattern=Pattern.FORWARD_FALL, frames=199, fall_start=120, drop_px=150.0, seed=1
)


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    header = StreamHeader(width=640, height=480, fps=30.0, source=describe(SAMPLE01))
    data = write_stream(header, synthesize(SAMPLE01, header))
    out = FIXTURES / "sample01_mimic.jsonl"
    out.write_bytes(data)
    print(f"wrote {out} ({len(data)} bytes)")


if __name__ == "__main__":
    main()
