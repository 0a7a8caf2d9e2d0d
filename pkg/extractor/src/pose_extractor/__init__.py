"""Video to 33-keypoint landmark stream extraction with illumination variants."""

from .backend import LANDMARK_COUNT, MediaPipeBackend, PoseBackend
from .errors import ExtractorError, ModelLoadFailed, VideoOpenFailed
from .extract import ExtractionJob, ExtractReport, batch, extract
from .relight import DEFAULT_GAIN_HIGH, DEFAULT_GAIN_LOW, Illumination, relight

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GAIN_HIGH",
    "DEFAULT_GAIN_LOW",
    "ExtractionJob",
    "ExtractReport",
    "ExtractorError",
    "Illumination",
    "LANDMARK_COUNT",
    "MediaPipeBackend",
    "ModelLoadFailed",
    "PoseBackend",
    "VideoOpenFailed",
    "batch",
    "extract",
    "relight",
]
