"""Exception hierarchy shared across the toolkit.

Every error raised by the library derives from MinglishError so callers
(and the CLI) can distinguish data problems from programming bugs.
"""

from __future__ import annotations


class MinglishError(Exception):
    """Base class for all toolkit errors."""


class EncodingError(MinglishError):
    """Raised for malformed Unicode input.

    byte_offset points at the first offending byte of the UTF-8 encoding
    of the input.
    """

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class AlignerError(MinglishError):
    """Raised for invalid training corpora or model files."""


class PharaohParseError(MinglishError):
    """Raised for malformed alignment lines.

    column is the 1-based character column of the first offending
    character.
    """

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class PosFileError(MinglishError):
    """Raised for malformed part-of-speech annotation files."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class TranslitError(MinglishError):
    """Raised for transliteration input that violates the direction's
    source script, and for malformed rule or lexicon files."""


class MixerError(MinglishError):
    """Raised when a substitution plan cannot be applied to a pair."""


class MetricsError(MinglishError):
    """Raised for undefined metric values (for example a zero word count)."""


class DcmError(MetricsError):
    """Raised for invalid human-rating CSV content."""


class CorpusError(MinglishError):
    """Raised for unreadable corpus files and strict-mode load failures."""
