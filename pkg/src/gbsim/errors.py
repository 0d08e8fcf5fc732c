"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """Raised when a computation would exceed a configured size guard."""


class HeraldTimeoutError(RuntimeError):
    """No accepted herald pattern within the attempt budget."""

    def __init__(self, attempts: int):
        super().__init__(f"no accepted herald after {attempts} attempts")
        self.attempts = attempts


class DegenerateProjectionError(ValueError):
    """Projection onto a herald pattern left (numerically) nothing."""
