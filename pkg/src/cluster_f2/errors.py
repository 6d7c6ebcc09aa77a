"""Exception types shared across the package."""

from __future__ import annotations


class ResourceLimitError(RuntimeError):
    """Raised when a requested computation exceeds a built-in size guard.

    Guarded entry points accept ``force=True`` (or the CLI flag ``--force``)
    to override the guard deliberately.
    """
