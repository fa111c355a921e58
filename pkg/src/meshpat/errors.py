from __future__ import annotations


class InvalidInputError(ValueError):
    """Malformed permutation, position, pattern spec or class descriptor."""


class ResourceLimitError(RuntimeError):
    """Requested size exceeds the configured enumeration cap."""

    def __init__(self, n: int, cap: int, what: str = "n"):
        super().__init__(f"{what}={n} exceeds cap {cap}")
        self.n = n
        self.cap = cap
