"""Depth statistics of search trees."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import EmptyTreeError
from .tree import NodeId, NodeStore


@dataclass(slots=True)
class DepthStats:
    """Summary of the node depths of one tree."""

    depth_sum: int
    size: int
    right_height: int
    left_height: int
    height: int
    histogram: Counter[int] = field(default_factory=Counter)
    insertion_point_depth: int | None = None
    rotations_total: int = 0
    flips_total: int = 0

    @property
    def avg_depth(self) -> float:
        """Return the mean depth over all nodes."""
        return self.depth_sum / self.size

    @property
    def avg_depth_exact(self) -> Fraction:
        """Return the mean depth as an exact fraction."""
        return Fraction(self.depth_sum, self.size)


def _spine_length(store: NodeStore, links: list[NodeId | None]) -> int:
    length = -1
    u = store.root
    while u is not None:
        length += 1
        u = links[u]
    return length


def right_height(store: NodeStore) -> int:
    """Return the depth of the maximum key, -1 for an empty tree."""
    return _spine_length(store, store.right)


def left_height(store: NodeStore) -> int:
    """Return the depth of the minimum key, -1 for an empty tree."""
    return _spine_length(store, store.left)


def compute_stats(
    store: NodeStore,
    *,
    rotations_total: int = 0,
    flips_total: int = 0,
    insertion_point_depth: int | None = None,
) -> DepthStats:
    """Compute the depth statistics of a non-empty tree."""
    if store.root is None:
        raise EmptyTreeError("cannot compute statistics of an empty tree")

    depths = store.depths()
    histogram = Counter(depths)
    return DepthStats(
        depth_sum=sum(depths),
        size=len(depths),
        right_height=right_height(store),
        left_height=left_height(store),
        height=max(histogram),
        histogram=histogram,
        insertion_point_depth=insertion_point_depth,
        rotations_total=rotations_total,
        flips_total=flips_total,
    )


def external_leaf_path_depth_sum(d: int) -> int:
    """Return the summed depth of the d internal nodes above an external leaf at depth d."""
    if d < 0:
        raise ValueError(f"depth must be non-negative, got {d}")
    return d * (d - 1) // 2


def insertion_point_depth(store: NodeStore, gap: float) -> int:
    """Return the depth of the node that a key falling in ``gap`` would be attached to."""
    attach = store.search_parent(gap)
    if attach is None:
        raise EmptyTreeError("an empty tree has no insertion point below a node")
    return store.depth(attach)


def depth_profile_accumulate(acc: Counter[int], store: NodeStore) -> Counter[int]:
    """Add the depth histogram of ``store`` into ``acc`` and return it."""
    acc.update(store.depths())
    return acc


def histogram_rows(histogram: Counter[int]) -> list[tuple[int, int]]:
    """Return ``(depth, count)`` pairs in increasing depth order."""
    return sorted(histogram.items())
