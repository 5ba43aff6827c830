"""Exception hierarchy shared by all ganseval modules."""

from __future__ import annotations


class GansevalError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(GansevalError):
    """Arguments violate a precondition (shape mismatch, empty set, ...)."""


class DegenerateData(GansevalError):
    """Data has no usable structure (zero variance, zero value range)."""


class FormatError(GansevalError):
    """Malformed on-disk data; carries the location of the offending token."""

    def __init__(self, message: str, line: int, column: int | None = None):
        loc = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({loc})")
        self.line = line
        self.column = column


class MissingFile(GansevalError):
    """A referenced file does not exist."""


class InvalidManifest(GansevalError):
    """Run manifest violates its schema or ordering rules."""


class ShapeMismatch(GansevalError):
    """Series length disagrees with the workspace's real dataset."""


class StorageError(GansevalError):
    """Cache directory cannot be written."""
