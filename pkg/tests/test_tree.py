"""Test the node arena and its rotations."""
from __future__ import annotations

from hypothesis import given, strategies as st
import pytest

from rebalance_lab.exceptions import (
    DuplicateKeyError,
    RootRotationError,
    ShapeParseError,
    TreeInvariantError,
)
from rebalance_lab.tree import Node, NodeStore

from .const import BALANCED_3, INCREASING_3, MIXED_6_KEYS, MIXED_6_SHAPE

distinct_keys = st.lists(st.integers(-50, 50), unique=True, max_size=40)


def test_empty_tree():
    store = NodeStore()
    assert len(store) == 0
    assert store.root is None
    assert store.canonical_shape() == "·"
    assert list(store.in_order()) == []
    assert store.depths() == []
    assert store.search_parent(7) is None
    store.validate()


def test_insert_leaf(unbalanced):
    store = unbalanced([2, 1, 3])
    assert store.canonical_shape() == BALANCED_3
    assert store.size == 3
    assert store.node(store.find(2)) == Node(2, store.find(1), store.find(3), None)
    assert store.node(store.find(3)).parent == store.find(2)
    assert store.depths() == [0, 1, 1]
    assert store.find(4) is None


def test_duplicate_key(unbalanced):
    store = unbalanced([2, 1, 3])
    with pytest.raises(DuplicateKeyError) as err:
        store.insert_leaf(3)
    assert err.value.key == 3
    assert store.size == 3


def test_search_parent_between_keys(unbalanced):
    store = unbalanced([1, 2, 3, 4])
    assert store.search_parent(4.5) == store.find(4)
    assert store.search_parent(0.5) == store.find(1)


def test_rotate_left_child_to_root(unbalanced):
    store = unbalanced([2, 1, 3])
    store.rotate_up(store.find(1))
    assert store.canonical_shape() == "(1 · (2 · (3 · ·)))"
    assert store.root == store.find(1)
    store.validate()


def test_rotate_right_child(unbalanced):
    store = unbalanced([1, 2, 3])
    store.rotate_up(store.find(3))
    assert store.canonical_shape() == "(1 · (3 (2 · ·) ·))"
    assert store.parent[store.find(2)] == store.find(3)
    store.validate()


def test_rotate_root_raises(unbalanced):
    store = unbalanced([2, 1])
    with pytest.raises(RootRotationError):
        store.rotate_up(store.root)


def test_rotation_moves_inner_subtree(unbalanced):
    store = unbalanced([4, 2, 1, 3, 5])
    store.rotate_up(store.find(2))
    assert store.canonical_shape() == "(2 (1 · ·) (4 (3 · ·) (5 · ·)))"
    assert store.parent[store.find(3)] == store.find(4)
    store.validate()


def test_mixed_insertion_order(unbalanced):
    store = unbalanced(MIXED_6_KEYS)
    assert store.canonical_shape() == MIXED_6_SHAPE
    assert store.keys[store.root] == 3
    assert store.depth(store.find(4)) == 2
    assert store.depth(store.find(1)) == 2


def test_depth_and_path(unbalanced):
    store = unbalanced([1, 2, 3, 4])
    assert store.is_path()
    assert store.depth(store.find(4)) == 3
    assert not unbalanced([2, 1, 3]).is_path()


def test_copy_is_independent(unbalanced):
    store = unbalanced([2, 1, 3])
    other = store.copy()
    other.insert_leaf(4)
    other.rotate_up(other.find(1))
    assert store.canonical_shape() == BALANCED_3
    assert other.size == 4


def test_validate_detects_second_root(unbalanced):
    store = unbalanced([2, 1, 3])
    store.parent[store.find(1)] = None
    with pytest.raises(TreeInvariantError):
        store.validate()


def test_validate_detects_order_violation(unbalanced):
    store = unbalanced([2, 1, 3])
    store.keys[store.find(1)] = 5
    with pytest.raises(TreeInvariantError, match="order"):
        store.validate()


def test_validate_detects_one_sided_link(unbalanced):
    store = unbalanced([2, 1, 3])
    store.left[store.find(2)] = None
    with pytest.raises(TreeInvariantError):
        store.validate()


def test_in_order_stops_on_child_cycle(unbalanced):
    store = unbalanced([2, 1])
    store.left[store.find(1)] = store.find(2)
    with pytest.raises(TreeInvariantError, match="cycle"):
        list(store.in_order())
    with pytest.raises(TreeInvariantError):
        store.validate()


@pytest.mark.parametrize(
    "shape", ["·", "(5 · ·)", BALANCED_3, INCREASING_3, "(-1 · (0 · ·))"]
)
def test_shape_round_trip(shape):
    assert NodeStore.from_shape(shape).canonical_shape() == shape


@pytest.mark.parametrize(
    "text",
    [
        "",
        "(1 ·)",
        "(1 · · ",
        "(1 · ·))",
        "(2 (3 · ·) ·)",
        "(1 (1 · ·) ·)",
        "(x · ·)",
        "· ·",
    ],
)
def test_from_shape_rejects(text):
    with pytest.raises(ShapeParseError):
        NodeStore.from_shape(text)


@given(distinct_keys)
def test_in_order_is_sorted(keys):
    store = NodeStore()
    for key in keys:
        store.insert_leaf(key)
    assert list(store.in_order()) == sorted(keys)
    store.validate()


@given(distinct_keys, st.lists(st.integers(min_value=0), max_size=60))
def test_rotations_keep_search_order(keys, picks):
    store = NodeStore()
    for key in keys:
        store.insert_leaf(key)
    for pick in picks:
        if not keys:
            break
        v = pick % store.size
        if store.parent[v] is not None:
            store.rotate_up(v)
    store.validate()
    assert list(store.in_order()) == sorted(keys)
    assert sorted(store.depths()) == sorted(store.depth(v) for v in range(store.size))
    assert NodeStore.from_shape(store.canonical_shape()).canonical_shape() == (
        store.canonical_shape()
    )


def _subtree(store, v):
    nodes = set()
    stack = [v]
    while stack:
        u = stack.pop()
        if u is not None:
            nodes.add(u)
            stack.extend((store.left[u], store.right[u]))
    return nodes


@given(
    st.lists(st.integers(-50, 50), unique=True, min_size=2, max_size=40),
    st.integers(min_value=0),
)
def test_rotation_depth_changes(keys, pick):
    store = NodeStore()
    for key in keys:
        store.insert_leaf(key)
    v = pick % store.size
    if store.parent[v] is None:
        v = store.left[v] if store.left[v] is not None else store.right[v]
    u = store.parent[v]
    if store.left[u] == v:
        outer, inner, retained = store.left[v], store.right[v], store.right[u]
    else:
        outer, inner, retained = store.right[v], store.left[v], store.left[u]
    raised = {v} | _subtree(store, outer)
    lowered = {u} | _subtree(store, retained)
    before = store.depths()

    store.rotate_up(v)

    after = store.depths()
    for w in range(store.size):
        if w in raised:
            expected = -1
        elif w in lowered:
            expected = 1
        else:
            expected = 0
        assert after[w] - before[w] == expected, w
    assert _subtree(store, v) == raised | lowered | _subtree(store, inner)
