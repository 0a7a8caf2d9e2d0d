"""Synthetic landmark streams and landmark-level degradation.

The generator emits a stick-figure skeleton of all 33 keypoints. Fall
patterns move the nose along an exact linear ramp (drop_px total over
ramp_frames, starting at fall_start) while the rest of the body tilts and
collapses around the ankles for visual plausibility; the nose trajectory
itself is noise-free so closed-form expectations about displacement hold
exactly. Non-fall patterns keep the nose strictly inside a displacement
guard. Coordinates are quantized to 1e-4 px so streams serialize compactly
and reparse to the identical values.

perturb() degrades an existing stream at the landmark level: zero-mean
Gaussian noise on every coordinate and whole-frame dropout, both driven by
one seeded generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidSpec
from .stream import LANDMARK_COUNT, KeypointId, LandmarkPoint, PoseFrame, StreamHeader

RNG_ALGORITHM = "numpy-pcg64"
COORD_QUANTUM = 1e-4
DEFAULT_RAMP_FRAMES = 30
DEFAULT_DROP_PX = 150.0

# Non-fall trajectories must keep the nose strictly inside this radius of
# its frame-0 position, leaving clear air under the default 95 px threshold.
NO_FALL_DISPLACEMENT_GUARD_PX = 50.0

WALK_SWAY_PX = 12.0
WALK_SWAY_PERIOD = 60.0
WALK_BOB_PX = 3.0
WALK_BOB_PERIOD = 30.0
WALK_JITTER_PX = 2.0
SIT_DROP_PX = 40.0

MAX_TILT_DEG = 85.0
COLLAPSE_FACTOR = 0.75


class Pattern(Enum):
    FORWARD_FALL = "forward-fall"
    BACKWARD_FALL = "backward-fall"
    LEFT_FALL = "left-fall"
    RIGHT_FALL = "right-fall"
    NO_FALL_WALK = "no-fall-walk"
    NO_FALL_SIT = "no-fall-sit"


FALL_PATTERNS = frozenset(
    {Pattern.FORWARD_FALL, Pattern.BACKWARD_FALL, Pattern.LEFT_FALL, Pattern.RIGHT_FALL}
)

# Unit direction of the nose ramp per fall pattern, image coordinates
# (y grows downward). Components are exact Pythagorean decimals (3-4-5 and
# 7-24-25 triples), so drop_px multiples stay clean under quantization.
_FALL_DIRECTION = {
    Pattern.FORWARD_FALL: (0.0, 1.0),
    Pattern.BACKWARD_FALL: (-0.28, 0.96),
    Pattern.LEFT_FALL: (-0.8, 0.6),
    Pattern.RIGHT_FALL: (0.8, 0.6),
}

_TILT_SIGN = {
    Pattern.FORWARD_FALL: 1.0,
    Pattern.BACKWARD_FALL: -1.0,
    Pattern.LEFT_FALL: -1.0,
    Pattern.RIGHT_FALL: 1.0,
}

# Standing skeleton, nose-relative, in body units (y down). The figure is
# roughly one body unit tall nose to heel.
_STANDING_OFFSETS: tuple[tuple[float, float], ...] = (
    (0.0, 0.0),  # nose
    (0.02, -0.02), (0.035, -0.025), (0.05, -0.025),  # left eye inner/center/outer
    (-0.02, -0.02), (-0.035, -0.025), (-0.05, -0.025),  # right eye inner/center/outer
    (0.07, -0.01), (-0.07, -0.01),  # ears
    (0.02, 0.03), (-0.02, 0.03),  # mouth corners
    (0.11, 0.12), (-0.11, 0.12),  # shoulders
    (0.14, 0.3), (-0.14, 0.3),  # elbows
    (0.16, 0.46), (-0.16, 0.46),  # wrists
    (0.17, 0.5), (-0.17, 0.5),  # pinkies
    (0.165, 0.51), (-0.165, 0.51),  # index fingers
    (0.155, 0.49), (-0.155, 0.49),  # thumbs
    (0.07, 0.47), (-0.07, 0.47),  # hips
    (0.08, 0.7), (-0.08, 0.7),  # knees
    (0.09, 0.93), (-0.09, 0.93),  # ankles
    (0.1, 0.97), (-0.1, 0.97),  # heels
    (0.13, 0.99), (-0.13, 0.99),  # foot tips
)
assert len(_STANDING_OFFSETS) == LANDMARK_COUNT


@dataclass(frozen=True, slots=True)
class SynthSpec:
    pattern: Pattern
    frames: int
    fall_start: int = 0
    drop_px: float = DEFAULT_DROP_PX
    seed: int = 0
    ramp_frames: int = DEFAULT_RAMP_FRAMES

    def validate(self) -> None:
        if not isinstance(self.pattern, Pattern):
            raise InvalidSpec(f"pattern must be a Pattern, got {self.pattern!r}")
        if isinstance(self.frames, bool) or not isinstance(self.frames, int) or self.frames <= 0:
            raise InvalidSpec(f"frames must be an int > 0, got {self.frames!r}")
        if isinstance(self.fall_start, bool) or not isinstance(self.fall_start, int) or self.fall_start < 0:
            raise InvalidSpec(f"fall_start must be an int >= 0, got {self.fall_start!r}")
        if self.pattern in FALL_PATTERNS and self.fall_start >= self.frames:
            raise InvalidSpec(
                f"fall_start {self.fall_start} must be < frames {self.frames} for fall patterns"
            )
        if (
            isinstance(self.drop_px, bool)
            or not isinstance(self.drop_px, (int, float))
            or not math.isfinite(self.drop_px)
            or self.drop_px < 0
        ):
            raise InvalidSpec(f"drop_px must be a finite number >= 0, got {self.drop_px!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidSpec(f"seed must be an unsigned integer, got {self.seed!r}")
        if (
            isinstance(self.ramp_frames, bool)
            or not isinstance(self.ramp_frames, int)
            or self.ramp_frames <= 0
        ):
            raise InvalidSpec(f"ramp_frames must be an int > 0, got {self.ramp_frames!r}")


@dataclass(frozen=True, slots=True)
class PerturbSpec:
    noise_sigma_px: float = 0.0
    dropout_prob: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        sigma = self.noise_sigma_px
        if (
            isinstance(sigma, bool)
            or not isinstance(sigma, (int, float))
            or not math.isfinite(sigma)
            or sigma < 0
        ):
            raise InvalidSpec(f"noise_sigma_px must be a finite number >= 0, got {sigma!r}")
        prob = self.dropout_prob
        if isinstance(prob, bool) or not isinstance(prob, (int, float)) or not 0.0 <= prob <= 1.0:
            raise InvalidSpec(f"dropout_prob must be in [0, 1], got {prob!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidSpec(f"seed must be an unsigned integer, got {self.seed!r}")


def describe(spec: SynthSpec) -> str:
    """Canonical one-line spec echo for the stream header's source field."""
    return (
        f"synth pattern={spec.pattern.value} frames={spec.frames}"
        f" fall_start={spec.fall_start} drop_px={spec.drop_px} ramp={spec.ramp_frames}"
        f" seed={spec.seed} rng={RNG_ALGORITHM} quantum={COORD_QUANTUM}"
    )


def describe_perturb(spec: PerturbSpec) -> str:
    return (
        f"perturb noise_sigma={spec.noise_sigma_px} dropout={spec.dropout_prob}"
        f" seed={spec.seed} rng={RNG_ALGORITHM}"
    )


def _quantize(value: float) -> float:
    return round(value, 4)


def _base_skeleton(header: StreamHeader) -> tuple[list[tuple[float, float]], tuple[float, float]]:
    """Standing pose in pixels plus the nose anchor, sized to the frame."""
    body_px = 0.3 * header.height
    nose = (0.5 * header.width, 0.3 * header.height)
    points = [(nose[0] + ox * body_px, nose[1] + oy * body_px) for ox, oy in _STANDING_OFFSETS]
    return points, nose


def _progress(t: int, start: int, ramp: int) -> float:
    if t < start:
        return 0.0
    return min(1.0, (t - start + 1) / ramp)


def _fall_frame(
    t: int,
    spec: SynthSpec,
    base: list[tuple[float, float]],
    nose0: tuple[float, float],
) -> list[tuple[float, float]]:
    p = _progress(t, spec.fall_start, spec.ramp_frames)
    direction = _FALL_DIRECTION[spec.pattern]
    target_nose = (nose0[0] + spec.drop_px * p * direction[0], nose0[1] + spec.drop_px * p * direction[1])
    if p == 0.0:
        return list(base)

    # Tilt and collapse the body about the ankle midpoint, then re-anchor
    # the whole figure so the nose sits exactly on the ramp target.
    la = base[KeypointId.LEFT_ANKLE]
    ra = base[KeypointId.RIGHT_ANKLE]
    pivot = ((la[0] + ra[0]) / 2.0, (la[1] + ra[1]) / 2.0)
    angle = math.radians(_TILT_SIGN[spec.pattern] * MAX_TILT_DEG * p)
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    scale = 1.0 - p * (1.0 - COLLAPSE_FACTOR)

    morphed = []
    for x, y in base:
        rx, ry = (x - pivot[0]) * scale, (y - pivot[1]) * scale
        morphed.append((pivot[0] + rx * cos_a - ry * sin_a, pivot[1] + rx * sin_a + ry * cos_a))
    shift = (target_nose[0] - morphed[KeypointId.NOSE][0], target_nose[1] - morphed[KeypointId.NOSE][1])
    return [(x + shift[0], y + shift[1]) for x, y in morphed]


def _walk_frame(
    t: int,
    base: list[tuple[float, float]],
    phase: float,
    rng: np.random.Generator,
) -> list[tuple[float, float]]:
    sway = WALK_SWAY_PX * math.sin(2.0 * math.pi * t / WALK_SWAY_PERIOD + phase)
    bob = WALK_BOB_PX * math.sin(2.0 * math.pi * t / WALK_BOB_PERIOD + 2.0 * phase)
    jitter = rng.uniform(-WALK_JITTER_PX, WALK_JITTER_PX, size=(LANDMARK_COUNT, 2))
    jitter[KeypointId.NOSE] = 0.0  # the nose trajectory stays exactly sinusoidal
    return [
        (x + sway + float(jitter[i, 0]), y + bob + float(jitter[i, 1]))
        for i, (x, y) in enumerate(base)
    ]


def _sit_frame(t: int, spec: SynthSpec, base: list[tuple[float, float]]) -> list[tuple[float, float]]:
    sit_start = spec.fall_start if spec.fall_start > 0 else spec.frames // 3
    p = _progress(t, sit_start, spec.ramp_frames)
    if p == 0.0:
        return list(base)
    nose_y = base[KeypointId.NOSE][1]
    ankle_y = base[KeypointId.LEFT_ANKLE][1]
    span = ankle_y - nose_y
    out = []
    for x, y in base:
        # Upper body sinks, feet stay planted: shift fades with depth.
        depth = min(max((y - nose_y) / span, 0.0), 1.0)
        out.append((x, y + p * SIT_DROP_PX * (1.0 - depth)))
    return out


def synthesize(spec: SynthSpec, header: StreamHeader) -> list[PoseFrame]:
    """Generate frames 0..spec.frames-1 for the given pattern.

    Deterministic in (spec, header). All landmarks carry visibility 1.0;
    coordinates are quantized to COORD_QUANTUM.
    """
    spec.validate()
    base, nose0 = _base_skeleton(header)
    rng = np.random.default_rng(spec.seed)
    phase = float(rng.uniform(0.0, 2.0 * math.pi))

    frames: list[PoseFrame] = []
    for t in range(spec.frames):
        if spec.pattern in FALL_PATTERNS:
            points = _fall_frame(t, spec, base, nose0)
        elif spec.pattern is Pattern.NO_FALL_WALK:
            points = _walk_frame(t, base, phase, rng)
        else:
            points = _sit_frame(t, spec, base)
        landmarks = tuple(
            LandmarkPoint(_quantize(x), _quantize(y), 1.0) for x, y in points
        )
        frames.append(PoseFrame(index=t, landmarks=landmarks))
    return frames


def perturb(frames: list[PoseFrame], spec: PerturbSpec) -> list[PoseFrame]:
    """Degrade a stream: Gaussian coordinate noise plus whole-frame dropout.

    Frame count and indices are preserved; dropped frames keep their index
    with null landmarks. Deterministic in (frames, spec). Visibilities are
    left untouched.
    """
    rng = np.random.default_rng(spec.seed)
    drops = rng.random(len(frames)) < spec.dropout_prob
    out: list[PoseFrame] = []
    for i, frame in enumerate(frames):
        if bool(drops[i]):
            out.append(PoseFrame(index=frame.index, landmarks=None))
            continue
        if frame.landmarks is None or spec.noise_sigma_px == 0.0:
            out.append(frame)
            continue
        noise = rng.normal(0.0, spec.noise_sigma_px, size=(LANDMARK_COUNT, 2))
        landmarks = tuple(
            LandmarkPoint(p.x + float(noise[j, 0]), p.y + float(noise[j, 1]), p.visibility)
            for j, p in enumerate(frame.landmarks)
        )
        out.append(PoseFrame(index=frame.index, landmarks=landmarks))
    return out
