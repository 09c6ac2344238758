"""Insertion sequence families."""
from __future__ import annotations

from bisect import bisect_left, insort
from collections.abc import Sequence
from enum import StrEnum

import numpy as np

from .exceptions import SequenceError
from .rebalance import SeedLike


class SequenceKind(StrEnum):
    """Insertion orders of the keys 1..n."""

    PERMUTATION = "permutation"
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONVERGING = "converging"
    PAIRS = "pairs"
    BITONIC = "bitonic"
    RUNS = "runs"

    @property
    def requires_even(self) -> bool:
        """Return True if the family is only defined for even n."""
        return self in EVEN_ONLY_KINDS

    @property
    def is_finger(self) -> bool:
        """Return True if every member of the family is a finger sequence."""
        return self in FINGER_KINDS


EVEN_ONLY_KINDS = frozenset(
    {SequenceKind.CONVERGING, SequenceKind.PAIRS, SequenceKind.BITONIC, SequenceKind.RUNS}
)
FINGER_KINDS = frozenset(
    {SequenceKind.INCREASING, SequenceKind.DECREASING, SequenceKind.CONVERGING}
)


def generate(kind: SequenceKind | str, n: int, seed: SeedLike = 0) -> list[int]:
    """Return the ``kind`` insertion order of the keys 1..n.

    ``seed`` is only used by ``PERMUTATION``, which draws a uniformly random permutation.
    """
    kind = SequenceKind(kind)
    if n < 1:
        raise SequenceError(f"sequence length must be positive, got {n}")
    if kind.requires_even and n % 2:
        raise SequenceError(f"{kind} sequences need an even length, got {n}")

    match kind:
        case SequenceKind.PERMUTATION:
            return (np.random.default_rng(seed).permutation(n) + 1).tolist()
        case SequenceKind.INCREASING:
            return list(range(1, n + 1))
        case SequenceKind.DECREASING:
            return list(range(n, 0, -1))
        case SequenceKind.CONVERGING:
            return [k for i in range(1, n // 2 + 1) for k in (i, n + 1 - i)]
        case SequenceKind.PAIRS:
            return [k for i in range(2, n + 1, 2) for k in (i, i - 1)]
        case SequenceKind.BITONIC:
            return list(range(2, n + 1, 2)) + list(range(n - 1, 0, -2))
        case SequenceKind.RUNS:
            return list(range(2, n + 1, 2)) + list(range(1, n, 2))


def is_finger_sequence(seq: Sequence[int]) -> bool:
    """Return True if each key is a neighbour, among the keys so far, of the previous key."""
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise SequenceError("input is not a permutation of 1..n")

    inserted: list[int] = []
    previous: int | None = None
    for key in seq:
        insort(inserted, key)
        if previous is not None:
            i = bisect_left(inserted, key)
            if previous not in inserted[i - 1 : i] + inserted[i + 1 : i + 2]:
                return False
        previous = key
    return True
