"""Exception types. The CLI maps each to its own exit code."""


class InvalidInput(ValueError):
    """Malformed or out-of-domain arguments (exit code 2)."""


class OutOfWindow(ValueError):
    """Query outside the range where the closed forms are proven (exit code 3).

    ``window`` is a human readable statement of the admissible range.
    """

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class InternalContradiction(RuntimeError):
    """Two independent derivation routes disagreed. Always a bug (exit code 4)."""
