"""Exception hierarchy shared by the useg modules.

Everything user-facing derives from :class:`UsegError` so the CLI can map
validation failures to exit code 1 while genuine I/O trouble (plain
``OSError``) maps to exit code 2.
"""


class UsegError(Exception):
    """Base class for input-validation and data-format failures."""


class TransliterationError(UsegError):
    """Raised when reverse transliteration meets an unmapped symbol."""

    def __init__(self, symbol: str, position: int):
        self.symbol = symbol
        self.position = position
        super().__init__(
            f"no reverse mapping for {symbol!r} at position {position}"
        )


class CorpusFormatError(UsegError):
    """Raised on malformed corpus files; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModelFormatError(UsegError):
    """Raised on malformed model files."""


class ModelMismatchError(UsegError):
    """Raised when a feature vector does not fit a model's alphabet."""


class EvaluationError(UsegError):
    """Raised when gold and predicted corpora cannot be aligned."""
