"""Parent-linked binary search tree kept in an index-addressed node arena."""
from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
import re
from typing import TypeAlias

from .const import ABSENT_CHILD
from .exceptions import DuplicateKeyError, RootRotationError, ShapeParseError, TreeInvariantError

NodeId: TypeAlias = int

_SHAPE_TOKEN = re.compile(rf"\(|\)|{ABSENT_CHILD}|-?\d+")


@dataclass(frozen=True, slots=True)
class Node:
    """Snapshot of a single node's key and links."""

    key: int
    left: NodeId | None
    right: NodeId | None
    parent: NodeId | None


class NodeStore:
    """Arena of keyed nodes linked as a binary search tree.

    Nodes live in parallel lists addressed by a dense ``NodeId``. Rotations only relink,
    so ids stay valid for the lifetime of the tree.
    """

    __slots__ = ("keys", "left", "right", "parent", "root", "_ids")

    def __init__(self) -> None:
        """Initialize an empty tree."""
        self.keys: list[int] = []
        self.left: list[NodeId | None] = []
        self.right: list[NodeId | None] = []
        self.parent: list[NodeId | None] = []
        self.root: NodeId | None = None
        self._ids: dict[int, NodeId] = {}

    def __len__(self) -> int:
        return len(self.keys)

    def __repr__(self) -> str:
        return f"NodeStore({self.canonical_shape()})"

    @property
    def size(self) -> int:
        """Return the number of nodes."""
        return len(self.keys)

    def node(self, v: NodeId) -> Node:
        """Return a snapshot of node ``v``."""
        return Node(self.keys[v], self.left[v], self.right[v], self.parent[v])

    def find(self, key: int) -> NodeId | None:
        """Return the id of the node holding ``key``, if any."""
        return self._ids.get(key)

    def search_parent(self, key: float) -> NodeId | None:
        """Return the node that a new ``key`` would be attached below.

        ``key`` may be any number comparable with the stored keys, which allows probing
        the gap between two adjacent integer keys. Returns None for an empty tree.
        """
        keys = self.keys
        left = self.left
        right = self.right
        u = self.root
        attach: NodeId | None = None
        while u is not None:
            k = keys[u]
            if key == k:
                raise DuplicateKeyError(key)
            attach = u
            u = left[u] if key < k else right[u]
        return attach

    def insert_leaf(self, key: int) -> NodeId:
        """Insert ``key`` at its external leaf position without rebalancing."""
        attach = self.search_parent(key)
        v = len(self.keys)
        self.keys.append(key)
        self.left.append(None)
        self.right.append(None)
        self.parent.append(attach)
        self._ids[key] = v
        if attach is None:
            self.root = v
        elif key < self.keys[attach]:
            self.left[attach] = v
        else:
            self.right[attach] = v
        return v

    def rotate_up(self, v: NodeId) -> None:
        """Rotate ``v`` above its parent, preserving the in-order key sequence."""
        parent = self.parent
        left = self.left
        right = self.right
        u = parent[v]
        if u is None:
            raise RootRotationError(f"node {v} (key {self.keys[v]}) is the root")
        g = parent[u]
        if left[u] == v:
            b = right[v]
            left[u] = b
            right[v] = u
        else:
            b = left[v]
            right[u] = b
            left[v] = u
        if b is not None:
            parent[b] = u
        parent[u] = v
        parent[v] = g
        if g is None:
            self.root = v
        elif left[g] == u:
            left[g] = v
        else:
            right[g] = v

    def depth(self, v: NodeId) -> int:
        """Return the number of parent links from ``v`` to the root."""
        parent = self.parent
        d = 0
        u = parent[v]
        while u is not None:
            d += 1
            u = parent[u]
        return d

    def depths(self) -> list[int]:
        """Return the depth of every node, indexed by node id."""
        result = [0] * len(self.keys)
        if self.root is None:
            return result
        left = self.left
        right = self.right
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            d = result[u] + 1
            if (c := left[u]) is not None:
                result[c] = d
                queue.append(c)
            if (c := right[u]) is not None:
                result[c] = d
                queue.append(c)
        return result

    def in_order(self) -> Iterator[int]:
        """Yield the keys in symmetric order.

        Raises TreeInvariantError when child links revisit a node, which only happens in a
        corrupted store.
        """
        n = len(self.keys)
        pushed = 0
        stack: list[NodeId] = []
        u = self.root
        while stack or u is not None:
            while u is not None:
                pushed += 1
                if pushed > n:
                    raise TreeInvariantError("cycle in child links")
                stack.append(u)
                u = self.left[u]
            u = stack.pop()
            yield self.keys[u]
            u = self.right[u]

    def is_path(self) -> bool:
        """Return True if no node has two children."""
        return all(a is None or b is None for a, b in zip(self.left, self.right))

    def copy(self) -> NodeStore:
        """Return an independent copy of the tree."""
        other = NodeStore()
        other.keys = self.keys.copy()
        other.left = self.left.copy()
        other.right = self.right.copy()
        other.parent = self.parent.copy()
        other.root = self.root
        other._ids = self._ids.copy()
        return other

    def validate(self) -> None:
        """Check order, link symmetry, single root and size; raise on the first violation."""
        n = len(self.keys)
        if not len(self.left) == len(self.right) == len(self.parent) == n:
            raise TreeInvariantError("link arrays and key array differ in length")
        if len(self._ids) != n:
            raise TreeInvariantError("keys are not distinct")
        if n == 0:
            if self.root is not None:
                raise TreeInvariantError("empty tree has a root")
            return
        if self.root is None:
            raise TreeInvariantError("non-empty tree has no root")

        roots = [v for v in range(n) if self.parent[v] is None]
        if roots != [self.root]:
            raise TreeInvariantError(f"expected single root {self.root}, found {roots}")

        for v in range(n):
            for c in (self.left[v], self.right[v]):
                if c is not None and self.parent[c] != v:
                    raise TreeInvariantError(f"child {c} of node {v} links to {self.parent[c]}")
            if (u := self.parent[v]) is not None and v not in (self.left[u], self.right[u]):
                raise TreeInvariantError(f"node {v} is not a child of its parent {u}")

        reached = 0
        previous: int | None = None
        for key in self.in_order():
            reached += 1
            if previous is not None and key <= previous:
                raise TreeInvariantError(f"order violated: {key} follows {previous}")
            previous = key
        if reached != n:
            raise TreeInvariantError(f"{n - reached} nodes unreachable from root")

    def canonical_shape(self) -> str:
        """Encode the keyed shape in preorder as ``(key left right)``."""
        if self.root is None:
            return ABSENT_CHILD
        parts: list[str] = []
        stack: list[NodeId | str | None] = [self.root]
        while stack:
            item = stack.pop()
            if item is None:
                parts.append(ABSENT_CHILD)
            elif isinstance(item, str):
                parts.append(item)
            else:
                stack.extend((")", self.right[item], " ", self.left[item]))
                parts.append(f"({self.keys[item]} ")
        return "".join(parts)

    @classmethod
    def from_shape(cls, text: str) -> NodeStore:
        """Rebuild a tree from its canonical shape encoding."""
        tokens = deque(_SHAPE_TOKEN.findall(text))
        if "".join(tokens) != re.sub(r"\s+", "", text):
            raise ShapeParseError(f"unexpected characters in {text!r}")

        store = cls()
        if not tokens:
            raise ShapeParseError("empty shape text")
        if tokens[0] == ABSENT_CHILD:
            if len(tokens) > 1:
                raise ShapeParseError(f"trailing tokens after empty tree in {text!r}")
            return store

        def open_node(attach: NodeId | None, side: int) -> NodeId:
            if not tokens or tokens.popleft() != "(":
                raise ShapeParseError(f"expected '(' in {text!r}")
            try:
                key = int(tokens.popleft())
            except (IndexError, ValueError) as err:
                raise ShapeParseError(f"expected key in {text!r}") from err
            if key in store._ids:
                raise ShapeParseError(f"duplicate key {key} in {text!r}")
            v = len(store.keys)
            store.keys.append(key)
            store.left.append(None)
            store.right.append(None)
            store.parent.append(attach)
            store._ids[key] = v
            if attach is None:
                store.root = v
            elif side == 0:
                store.left[attach] = v
            else:
                store.right[attach] = v
            return v

        # frame: [node, children consumed]
        stack = [[open_node(None, 0), 0]]
        while stack:
            if not tokens:
                raise ShapeParseError(f"unbalanced parentheses in {text!r}")
            frame = stack[-1]
            if frame[1] == 2:
                if tokens.popleft() != ")":
                    raise ShapeParseError(f"expected ')' in {text!r}")
                stack.pop()
                continue
            side = frame[1]
            frame[1] += 1
            if tokens[0] == ABSENT_CHILD:
                tokens.popleft()
                continue
            stack.append([open_node(frame[0], side), 0])
        if tokens:
            raise ShapeParseError(f"trailing tokens in {text!r}")

        try:
            store.validate()
        except TreeInvariantError as err:
            raise ShapeParseError(f"{text!r} is not a search tree: {err}") from err
        return store
