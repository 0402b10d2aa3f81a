"""Exception types shared across the package."""


class SplitmarkError(Exception):
    """Base class for all package-specific errors."""


class MarkingError(SplitmarkError):
    """A marking attempt was refused; session state is unchanged."""


class OverlapError(MarkingError):
    """New line would overlap an earlier parallel line on the same axis."""


class DegenerateSpanError(MarkingError):
    """Extension collapsed to zero length (seed sits on a blocking line)."""


class EmptyUndoError(SplitmarkError):
    """Undo requested but there is nothing left to undo."""


class EmptyInputError(SplitmarkError):
    """An operation that needs at least one value received none."""


class DegenerateSampleError(SplitmarkError):
    """Sample carries no usable information for the requested test."""


class ParseError(SplitmarkError):
    """A record or config document is malformed.

    Carries enough context to point at the offending line/field.
    """

    def __init__(self, message: str, source: str = "", line: int | None = None):
        self.source = source
        self.line = line
        prefix = source or "<input>"
        if line is not None:
            prefix += f":{line}"
        super().__init__(f"{prefix}: {message}")


class InfeasibleError(SplitmarkError):
    """Generation parameters cannot produce a composition."""
