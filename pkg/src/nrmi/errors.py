"""Exception hierarchy shared across the toolkit."""


class NrmiError(Exception):
    """Base class for all toolkit errors."""


class DecodeError(NrmiError):
    """Malformed or truncated image file."""


class UnsupportedFormatError(DecodeError):
    """Valid container but a bit depth / colour mode we do not handle."""


class DimensionError(NrmiError):
    """Incompatible shapes (reshape element count, partition mismatch, odd d)."""


class TooSmallError(NrmiError):
    """Image smaller than one block after cropping."""


class EmptyInputError(NrmiError):
    """An operation received an empty collection."""


class ShapeError(NrmiError):
    """Matrix fails a structural requirement (e.g. symmetry tolerance)."""


class DegenerateVarianceError(NrmiError):
    """Correlation requested on a constant vector."""


class FormatError(NrmiError):
    """Manifest / report parse failure; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(NrmiError):
    """Invalid distortion or metric configuration."""


class WriteError(NrmiError):
    """Report or image output could not be written."""
