"""Exception types shared across the package.

The CLI maps these onto exit codes, so library code should stick to
this hierarchy instead of raising bare ValueError/RuntimeError.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Malformed run configuration (bad JSON shape, unknown example id).

    Carries ``path``, a JSON-pointer-ish locator like ``$.model.ideal[0]``,
    so callers can report where in the input the problem sits.
    """

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ValidationError(ValueError):
    """Mathematically inadmissible input (bad stability data, bad window)."""


class DomainError(ValueError):
    """An operation was applied to an object outside its domain."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
