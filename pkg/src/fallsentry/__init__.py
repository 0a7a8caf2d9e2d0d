"""Fall detection over 33-keypoint pose landmark streams.

Core rule: calibrate on the first frame with a usable nose, then flag any
frame whose nose has moved strictly more than a pixel threshold from that
anchor. The package also ships the stream format, per-frame geometry
features, evaluation metrics, synthetic stream generation, and a CLI.
"""

from .detector import (
    DEFAULT_THRESHOLD_PX,
    Annotation,
    DetectorConfig,
    DetectorState,
    FrameResult,
    detector_new,
    parse_results,
    run_stream,
    step,
    write_results,
)
from .errors import (
    DegeneratePoints,
    EmptyMatrix,
    EmptyResults,
    FallsentryError,
    InvalidConfig,
    InvalidSpec,
    InvariantViolation,
    MalformedRecord,
    MalformedTruth,
    MissingHeader,
    MissingLabel,
    OutOfOrderFrame,
    ZeroBaseline,
)
from .evaluation import (
    ConfusionMatrix,
    GroundTruthLabels,
    Level,
    Metrics,
    confuse,
    load_truth_csv,
    metrics,
    metrics_record,
)
from .geometry import (
    DEFAULT_VISIBILITY_MIN,
    FeatureValues,
    euclidean,
    head_angle,
    head_displacement,
    neck_point,
    nose_ankle_distance,
    percentage_change,
)
from .pipeline import RunReport, build_report, emit_curves, process_stream, report_record
from .stream import (
    LANDMARK_COUNT,
    KeypointId,
    LandmarkPoint,
    PoseFrame,
    StreamHeader,
    load_stream,
    parse_stream,
    save_stream,
    write_stream,
)
from .synth import (
    COORD_QUANTUM,
    RNG_ALGORITHM,
    Pattern,
    PerturbSpec,
    SynthSpec,
    describe,
    describe_perturb,
    perturb,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "ConfusionMatrix",
    "COORD_QUANTUM",
    "DEFAULT_THRESHOLD_PX",
    "DEFAULT_VISIBILITY_MIN",
    "DegeneratePoints",
    "DetectorConfig",
    "DetectorState",
    "EmptyMatrix",
    "EmptyResults",
    "FallsentryError",
    "FeatureValues",
    "FrameResult",
    "GroundTruthLabels",
    "InvalidConfig",
    "InvalidSpec",
    "InvariantViolation",
    "KeypointId",
    "LANDMARK_COUNT",
    "LandmarkPoint",
    "Level",
    "MalformedRecord",
    "MalformedTruth",
    "Metrics",
    "MissingHeader",
    "MissingLabel",
    "OutOfOrderFrame",
    "Pattern",
    "PerturbSpec",
    "PoseFrame",
    "RNG_ALGORITHM",
    "RunReport",
    "StreamHeader",
    "SynthSpec",
    "ZeroBaseline",
    "build_report",
    "confuse",
    "describe",
    "describe_perturb",
    "detector_new",
    "emit_curves",
    "euclidean",
    "head_angle",
    "head_displacement",
    "load_stream",
    "load_truth_csv",
    "metrics",
    "metrics_record",
    "neck_point",
    "nose_ankle_distance",
    "parse_results",
    "parse_stream",
    "percentage_change",
    "perturb",
    "process_stream",
    "report_record",
    "run_stream",
    "save_stream",
    "step",
    "synthesize",
    "write_results",
    "write_stream",
]
