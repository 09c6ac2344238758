"""Exceptions raised by rebalance_lab."""
from __future__ import annotations


class RebalanceLabError(Exception):
    """Base class for all rebalance_lab errors."""


class DuplicateKeyError(RebalanceLabError):
    """Key is already stored in the tree."""

    def __init__(self, key: int | float) -> None:
        super().__init__(f"key {key} is already present")
        self.key = key


class RootRotationError(RebalanceLabError):
    """The root has no parent to rotate above."""


class TreeInvariantError(RebalanceLabError):
    """A structural invariant of the search tree does not hold."""


class ShapeParseError(RebalanceLabError):
    """Canonical shape text is malformed."""


class SequenceError(RebalanceLabError):
    """Insertion sequence request or input is invalid."""


class EmptyTreeError(RebalanceLabError):
    """Statistics requested for a tree without nodes."""


class BranchLimitError(RebalanceLabError):
    """Exact enumeration would visit too many coin branches."""

    def __init__(self, estimate: int, limit: int) -> None:
        super().__init__(f"estimated {estimate} branches exceeds limit {limit}")
        self.estimate = estimate
        self.limit = limit


class ProcessParamsError(RebalanceLabError):
    """Random process parameters are outside their valid range."""


class ConfigError(RebalanceLabError):
    """Experiment configuration failed validation."""
