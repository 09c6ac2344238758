"""Randomized bottom-up rebalancing schemes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Any

import numpy as np

from .const import COIN_BLOCK_SIZE
from .tree import NodeId, NodeStore

SeedLike = int | np.random.SeedSequence | np.random.Generator


class Scheme(StrEnum):
    """Rebalancing scheme applied after a leaf insertion."""

    NONE = "none"
    ZIG = "zig"
    ZIGZAG = "zigzag"
    ZIGZIG = "zigzig"


REBALANCING_SCHEMES = (Scheme.ZIG, Scheme.ZIGZAG, Scheme.ZIGZIG)


class CoinSource:
    """Seeded stream of coin flips that come up tail with probability ``p_tail``.

    A flip draws ``u`` uniformly from [0, 1) and is tail iff ``u < p_tail``, so p=0 is always
    head and p=1 always tail. Uniforms are drawn from the generator in blocks.
    """

    def __init__(
        self,
        p_tail: float | Fraction,
        seed: SeedLike = 0,
        block_size: int = COIN_BLOCK_SIZE,
    ) -> None:
        """Initialize."""
        if not 0 <= p_tail <= 1:
            raise ValueError(f"tail probability {p_tail} is outside [0, 1]")
        self.p_tail = float(p_tail)
        self.flips_drawn = 0
        self._rng = np.random.default_rng(seed)
        self._block_size = block_size
        self._block: list[float] = []
        self._pos = 0

    @property
    def rng_state(self) -> dict[str, Any]:
        """Return the state of the underlying bit generator."""
        return self._rng.bit_generator.state

    def flip(self) -> bool:
        """Draw one flip; True means tail."""
        if self._pos == len(self._block):
            self._block = self._rng.random(self._block_size).tolist()
            self._pos = 0
        u = self._block[self._pos]
        self._pos += 1
        self.flips_drawn += 1
        return u < self.p_tail


@dataclass(slots=True)
class RebalanceOutcome:
    """What a single rebalancing step did."""

    rotations_performed: int
    stop_depth: int
    flips: int
    reached_root: bool
    leaf_depth: int

    @property
    def distance(self) -> int:
        """Return the number of levels walked from the inserted leaf to the stop node."""
        return self.leaf_depth - self.stop_depth


def apply_rule(store: NodeStore, scheme: Scheme, stop: NodeId) -> int:
    """Apply ``scheme``'s rotation rule at the node where the walk stopped.

    Returns the number of rotations performed.
    """
    if scheme is Scheme.NONE:
        return 0
    parent = store.parent
    u = parent[stop]
    if u is None:
        return 0
    if scheme is Scheme.ZIG:
        store.rotate_up(stop)
        return 1

    g = parent[u]
    if g is None:
        return 0
    if (store.left[u] == stop) == (store.left[g] == u):
        # zig-zig / zag-zag
        store.rotate_up(u)
        if scheme is Scheme.ZIGZIG:
            store.rotate_up(stop)
            return 2
        return 1
    store.rotate_up(stop)
    store.rotate_up(stop)
    return 2


def rebalance(store: NodeStore, v: NodeId, coin: CoinSource, scheme: Scheme) -> RebalanceOutcome:
    """Walk up from ``v`` while the coin shows tail, then apply ``scheme`` at the stop node."""
    parent = store.parent
    leaf_depth = store.depth(v)
    flips = 0
    while (u := parent[v]) is not None:
        flips += 1
        if not coin.flip():
            break
        v = u
    reached_root = parent[v] is None
    # every flip but a final head moved the walk up one level
    tails = flips if reached_root else flips - 1
    return RebalanceOutcome(
        rotations_performed=apply_rule(store, scheme, v),
        stop_depth=leaf_depth - tails,
        flips=flips,
        reached_root=reached_root,
        leaf_depth=leaf_depth,
    )


def rebalance_zig(store: NodeStore, v: NodeId, coin: CoinSource) -> RebalanceOutcome:
    """Rotate up the node where the tail walk from ``v`` stopped, unless it is the root."""
    return rebalance(store, v, coin, Scheme.ZIG)


def rebalance_zigzag(store: NodeStore, v: NodeId, coin: CoinSource) -> RebalanceOutcome:
    """Splay-like double step at the stop node; a single rotation in the zig-zig case."""
    return rebalance(store, v, coin, Scheme.ZIGZAG)


def rebalance_zigzig(store: NodeStore, v: NodeId, coin: CoinSource) -> RebalanceOutcome:
    """As :func:`rebalance_zigzag`, but the zig-zig case rotates the parent then the node."""
    return rebalance(store, v, coin, Scheme.ZIGZIG)


def insert_rebalanced(
    store: NodeStore,
    key: int,
    scheme: Scheme | str,
    coin: CoinSource | None = None,
    *,
    check: bool = False,
) -> RebalanceOutcome:
    """Insert ``key`` at a leaf and rebalance with ``scheme``.

    ``Scheme.NONE`` is the unbalanced baseline and draws no coins. With ``check`` the tree
    invariants are validated after the step.
    """
    scheme = Scheme(scheme)
    v = store.insert_leaf(key)
    if scheme is Scheme.NONE:
        depth = store.depth(v)
        outcome = RebalanceOutcome(0, depth, 0, depth == 0, depth)
    else:
        if coin is None:
            raise ValueError(f"scheme {scheme} needs a coin source")
        outcome = rebalance(store, v, coin, scheme)
    if check:
        store.validate()
    return outcome
