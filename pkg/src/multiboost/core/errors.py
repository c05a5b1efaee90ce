"""
Exception hierarchy for multiboost.

Every error raised deliberately by the package derives from MultiboostError so
callers (the CLI in particular) can map failures to exit codes.
"""

from typing import Any, Optional


class MultiboostError(Exception):
    """Base exception for multiboost errors."""

    pass


class KindMismatchError(MultiboostError):
    """Hypothesis kind or dataset kind does not fit the operation (e.g. multiclass data in a binary booster)."""

    pass


class DimensionMismatchError(MultiboostError, ValueError):
    """Vector or matrix shapes disagree."""

    pass


class SimplexError(MultiboostError, ValueError):
    """A weight vector is not on the probability simplex."""

    pass


class EmptyEnsembleError(MultiboostError):
    """Prediction was requested from an ensemble with no terms."""

    pass


class NumericalError(MultiboostError):
    """A numerical routine could not produce a trustworthy result."""

    pass


class InfeasibleProjectionError(NumericalError):
    """Cyclic projections did not reach the constraint intersection."""

    def __init__(self, message: str, report: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.report = report or {}


class ConfigError(MultiboostError):
    """Invalid run or learner configuration."""

    pass


class DatasetParseError(MultiboostError):
    """Dataset file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TraceFormatError(MultiboostError):
    """Trace JSON is malformed or missing required fields."""

    pass
