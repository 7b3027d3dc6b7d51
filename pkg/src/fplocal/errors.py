"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Operands belong to different rings."""


class ParseError(ValueError):
    """Polynomial text does not match the grammar."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} (position {pos} in {text!r})")
        self.text = text
        self.pos = pos


class ResourceLimitError(RuntimeError):
    """A configured engine ceiling was hit.

    Raised instead of silently truncating; the caller decides whether to
    retry with larger limits.
    """

    def __init__(self, kind: str, limit: int):
        super().__init__(f"resource ceiling reached: {kind} (limit {limit})")
        self.kind = kind
        self.limit = limit


class CancelledError(RuntimeError):
    """The cooperative cancellation token fired."""


class HypothesisViolatedError(ValueError):
    """The degree hypothesis required by the operation does not hold."""


class NonHomogeneousError(ValueError):
    """A graded-only routine was called with non-homogeneous input."""
