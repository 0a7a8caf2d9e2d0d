"""Exception types shared across the package.

Every error raised on bad input or bad state derives from FallsentryError,
so callers can catch one type at the boundary and map it to an exit code.
"""

from __future__ import annotations


class FallsentryError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRecord(FallsentryError):
    """A stream line failed to parse or violated the record schema."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")

    def __reduce__(self):
        # Two-argument __init__ needs explicit pickle support so the error
        # survives a trip back from a worker process.
        return (MalformedRecord, (self.line_no, self.reason))


class MissingHeader(FallsentryError):
    """The stream did not begin with a header record."""


class InvariantViolation(FallsentryError):
    """An in-memory value violated its declared constraints on write."""


class DegeneratePoints(FallsentryError):
    """A geometric quantity is undefined for coincident input points."""


class ZeroBaseline(FallsentryError):
    """Percentage change is undefined for a non-positive baseline."""


class InvalidConfig(FallsentryError):
    """Detector configuration failed validation."""


class OutOfOrderFrame(FallsentryError):
    """A frame arrived with an index not greater than its predecessors."""


class MissingLabel(FallsentryError):
    """Frame-level ground truth lacked a label for a predicted frame."""


class EmptyResults(FallsentryError):
    """An operation that needs at least one frame result received none."""


class EmptyMatrix(FallsentryError):
    """Metrics are undefined on an all-zero confusion matrix."""


class MalformedTruth(FallsentryError):
    """A ground-truth CSV failed to parse or was internally inconsistent."""


class InvalidSpec(FallsentryError):
    """A synthesis or perturbation spec failed validation."""
