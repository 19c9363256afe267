"""Exceptions shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Malformed graph, link, or demand input."""


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its configured cap and was aborted."""


class BoundUnavailableError(RuntimeError):
    """No certificate route applies, so the requested bound cannot be produced."""
