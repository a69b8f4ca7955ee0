"""Exception types shared across the package."""

from __future__ import annotations


class FieldMismatchError(ValueError):
    """Operands live over different finite fields."""


class AmbientMismatchError(ValueError):
    """Subspaces or codes with incompatible ambient dimensions."""


class OrientationError(ValueError):
    """Operation needs n <= m but the code has more rows than columns."""


class GuardExceeded(RuntimeError):
    """An exhaustive scan would exceed its configured size guard.

    ``count`` holds the exact size that tripped the guard.
    """

    def __init__(self, what: str, count: int, guard: int):
        self.what = what
        self.count = count
        self.guard = guard
        super().__init__(f"{what}: {count} exceeds guard {guard} (use --force or raise the guard)")


class InputError(ValueError):
    """A code or table document is malformed."""
