"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto process exit statuses without a lookup table.
"""

from __future__ import annotations

__all__ = [
    "RocError",
    "InputError",
    "DegenerateDataError",
    "LengthMismatch",
    "TooFewInstances",
    "NonFiniteValue",
    "DegenerateOutcomes",
    "SingleClassOutcome",
    "TiesPresent",
    "TiesInOutcomes",
    "InvalidThinningParams",
    "GridTooCoarse",
    "MovieWeightMismatch",
    "OutOfRange",
    "NotPositiveDefinite",
    "SizeCapExceeded",
    "MissingColumn",
    "ParseError",
    "EmptyFile",
    "SinkError",
]


class RocError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class InputError(RocError, ValueError):
    """Malformed or inconsistent input."""

    exit_code = 2


class DegenerateDataError(RocError, ValueError):
    """Input is well formed but the requested quantity is undefined for it."""

    exit_code = 3


class LengthMismatch(InputError):
    pass


class TooFewInstances(InputError):
    pass


class NonFiniteValue(InputError):
    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"non-finite value at position {index}")


class DegenerateOutcomes(DegenerateDataError):
    pass


class SingleClassOutcome(DegenerateDataError):
    pass


class TiesPresent(DegenerateDataError):
    pass


class TiesInOutcomes(DegenerateDataError):
    pass


class InvalidThinningParams(InputError):
    pass


class GridTooCoarse(InputError):
    pass


class MovieWeightMismatch(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotPositiveDefinite(InputError):
    pass


class SizeCapExceeded(InputError):
    pass


class MissingColumn(InputError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"column {name!r} not found in header")


class ParseError(InputError):
    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}, column {column!r}: cannot parse {value!r} as a number")


class EmptyFile(InputError):
    pass


class SinkError(RocError, OSError):
    exit_code = 4
