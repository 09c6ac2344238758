"""Shared fixtures."""
from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
import logging

import pytest

from rebalance_lab.rebalance import Scheme, insert_rebalanced
from rebalance_lab.tree import NodeStore


@pytest.fixture
def unbalanced() -> Callable[[Sequence[int]], NodeStore]:
    """Return a factory for trees built by plain leaf insertion."""

    def build(keys: Sequence[int]) -> NodeStore:
        store = NodeStore()
        for key in keys:
            insert_rebalanced(store, key, Scheme.NONE)
        return store

    return build


@pytest.fixture
def restore_logging() -> Iterator[None]:
    """Undo handler and level changes made by configure_logging."""
    root = logging.getLogger()
    handlers = root.handlers[:]
    level = root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    for name in ("rebalance_lab", "rebalance_lab.oracle"):
        logging.getLogger(name).setLevel(logging.NOTSET)
