"""Exception hierarchy.  Every domain error derives from SemigroupError."""


class SemigroupError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    code = "SemigroupError"


class InvalidSemigroup(SemigroupError):
    code = "InvalidSemigroup"


class AmbientMismatch(SemigroupError):
    code = "AmbientMismatch"


class NotNumerical(SemigroupError):
    code = "NotNumerical"


class NotInSemigroup(SemigroupError):
    code = "NotInSemigroup"


class DimensionMismatch(SemigroupError):
    code = "DimensionMismatch"


class EmptySubset(SemigroupError):
    code = "EmptySubset"


class EmptyRange(SemigroupError):
    code = "EmptyRange"


class InsufficientSamples(SemigroupError):
    code = "InsufficientSamples"


class NoFitWithinBounds(SemigroupError):
    code = "NoFitWithinBounds"


class ScanFormatError(SemigroupError):
    code = "ScanFormatError"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
