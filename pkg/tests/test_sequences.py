"""Test the insertion sequence families."""
import pytest

from rebalance_lab.exceptions import SequenceError
from rebalance_lab.sequences import (
    EVEN_ONLY_KINDS,
    SequenceKind,
    generate,
    is_finger_sequence,
)

from .const import PAIRS_6_SHAPE


@pytest.mark.parametrize(
    "kind, expected",
    [
        (SequenceKind.INCREASING, [1, 2, 3, 4, 5, 6]),
        (SequenceKind.DECREASING, [6, 5, 4, 3, 2, 1]),
        (SequenceKind.CONVERGING, [1, 6, 2, 5, 3, 4]),
        (SequenceKind.PAIRS, [2, 1, 4, 3, 6, 5]),
        (SequenceKind.BITONIC, [2, 4, 6, 5, 3, 1]),
        (SequenceKind.RUNS, [2, 4, 6, 1, 3, 5]),
    ],
)
def test_generate(kind, expected):
    assert generate(kind, 6) == expected
    assert generate(str(kind), 6) == expected


@pytest.mark.parametrize("n", range(2, 101, 2))
def test_interleaved_kinds_share_unbalanced_tree(unbalanced, n):
    shapes = {
        unbalanced(generate(kind, n)).canonical_shape()
        for kind in (SequenceKind.PAIRS, SequenceKind.BITONIC, SequenceKind.RUNS)
    }
    assert len(shapes) == 1
    if n == 6:
        assert shapes == {PAIRS_6_SHAPE}


def test_permutation_is_seeded():
    first = generate(SequenceKind.PERMUTATION, 50, seed=4)
    assert sorted(first) == list(range(1, 51))
    assert generate("permutation", 50, seed=4) == first
    assert generate(SequenceKind.PERMUTATION, 50, seed=5) != first


@pytest.mark.parametrize("kind", sorted(EVEN_ONLY_KINDS))
def test_even_only_kinds_reject_odd_length(kind):
    assert kind.requires_even
    with pytest.raises(SequenceError, match="even"):
        generate(kind, 7)


@pytest.mark.parametrize("n", [0, -3])
def test_rejects_empty(n):
    with pytest.raises(SequenceError):
        generate(SequenceKind.INCREASING, n)


def test_unknown_kind():
    with pytest.raises(ValueError):
        generate("shuffled", 4)


@pytest.mark.parametrize("kind", [k for k in SequenceKind if k is not SequenceKind.PERMUTATION])
def test_finger_property_matches_kind(kind):
    assert is_finger_sequence(generate(kind, 10)) == kind.is_finger


@pytest.mark.parametrize(
    "seq, expected",
    [
        ([1], True),
        ([3, 1, 2], True),
        ([1, 3, 2], True),
        ([4, 1, 3, 2], True),
        ([2, 4, 3, 1], False),
        ([2, 1, 3], False),
        ([1, 3, 4, 2], False),
    ],
)
def test_is_finger_sequence(seq, expected):
    assert is_finger_sequence(seq) == expected


def test_finger_check_needs_permutation():
    with pytest.raises(SequenceError):
        is_finger_sequence([1, 1, 2])
