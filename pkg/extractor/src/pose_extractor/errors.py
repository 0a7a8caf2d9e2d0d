"""Extractor error types."""

from __future__ import annotations


class ExtractorError(Exception):
    """Base class for errors raised by this package."""


class VideoOpenFailed(ExtractorError):
    """The video file could not be opened or decoded."""


class ModelLoadFailed(ExtractorError):
    """The pose model is unavailable, failed to initialize, or reported an
    unexpected landmark topology."""
