"""Exception hierarchy shared by the whole library.

The CLI maps these onto exit codes: ValidationError -> 2,
SizeGuardError -> 3, InvariantError -> 4.
"""


class LieMeasuresError(Exception):
    """Base class for all library errors."""


class ValidationError(LieMeasuresError):
    """Bad input: malformed signature, tag mismatch, precondition violation."""


class SizeGuardError(LieMeasuresError):
    """A desk-scale bound was exceeded (exact mode refuses to run)."""


class InvariantError(LieMeasuresError):
    """An internal exact identity failed; indicates a bug, never bad input."""
