"""Randomized bottom-up rebalancing of binary search trees."""
from __future__ import annotations

from .exceptions import RebalanceLabError
from .rebalance import CoinSource, Scheme, insert_rebalanced
from .sequences import SequenceKind, generate
from .tree import NodeStore

__all__ = [
    "CoinSource",
    "NodeStore",
    "RebalanceLabError",
    "Scheme",
    "SequenceKind",
    "generate",
    "insert_rebalanced",
]
