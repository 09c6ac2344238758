"""Exact outcome distributions obtained by enumerating every coin branch."""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import permutations
import math

from .const import _LOGGER, MAX_BRANCHES
from .exceptions import BranchLimitError
from .metrics import compute_stats
from .rebalance import Scheme, apply_rule
from .tree import NodeStore

Probability = Fraction | float


class Stat(StrEnum):
    """Tree statistics with an exact expectation."""

    AVG_DEPTH = "avg_depth"
    RIGHT_HEIGHT = "right_height"
    LEFT_HEIGHT = "left_height"
    HEIGHT = "height"


@dataclass(slots=True)
class OutcomeDistribution:
    """Probability of every resulting keyed tree shape."""

    entries: dict[str, Probability]
    p: Probability
    scheme: Scheme
    sequence: tuple[int, ...]
    branches: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_exact(self) -> bool:
        """Return True if probabilities are exact fractions."""
        return isinstance(self.p, Fraction)

    def total(self) -> Probability:
        """Return the summed probability, 1 up to rounding."""
        if self.is_exact:
            return sum(self.entries.values(), Fraction(0))
        return math.fsum(self.entries.values())

    def header(self) -> list[str]:
        """Return the CSV header matching :meth:`rows`."""
        if self.is_exact:
            return ["shape", "probability_numerator", "probability_denominator"]
        return ["shape", "probability"]

    def rows(self) -> list[tuple[str, int, int] | tuple[str, float]]:
        """Return one CSV row per shape, sorted by shape."""
        rows: list[tuple[str, int, int] | tuple[str, float]] = []
        for shape, prob in self.entries.items():
            if isinstance(prob, Fraction):
                rows.append((shape, prob.numerator, prob.denominator))
            else:
                rows.append((shape, prob))
        return rows


def parse_probability(value: str | int | float | Fraction) -> Probability:
    """Parse a probability; ``a/b`` text and fractions stay exact, decimals become floats."""
    prob: Probability
    if isinstance(value, Fraction):
        prob = value
    elif isinstance(value, bool):
        raise ValueError(f"not a probability: {value!r}")
    elif isinstance(value, int):
        prob = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        prob = Fraction(text) if "/" in text else float(text)
    else:
        prob = float(value)
    if not 0 <= prob <= 1:
        raise ValueError(f"probability {value!r} is outside [0, 1]")
    return prob


def _stop_branches(d: int, p: Probability) -> list[tuple[int, Probability]]:
    """Return ``(tails, probability)`` for the walk from a leaf at depth ``d``.

    ``k < d`` tails followed by a head has probability (1-p) p^k; d tails reach the root
    with probability p^d. Zero-probability branches are dropped.
    """
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    branches = []
    pk = one
    for k in range(d):
        if w := (one - p) * pk:
            branches.append((k, w))
        pk *= p
    if pk:
        branches.append((d, pk))
    return branches


def estimate_branches(n: int, scheme: Scheme, p: Probability) -> int:
    """Return an upper bound on the number of enumerated branches."""
    if scheme is Scheme.NONE or p in (0, 1):
        return 1
    # a leaf inserted into a tree of i nodes has at most i + 1 walk outcomes
    return math.factorial(n)


def enumerate_distribution(
    seq: Sequence[int],
    scheme: Scheme | str,
    p: Probability | str,
    *,
    limit: int = MAX_BRANCHES,
) -> OutcomeDistribution:
    """Enumerate every coin outcome of inserting ``seq`` under ``scheme``.

    Probabilities are exact fractions when ``p`` is a fraction (or ``a/b`` text) and floats
    summed with ``math.fsum`` otherwise.
    """
    scheme = Scheme(scheme)
    p = parse_probability(p)
    keys = tuple(seq)
    if (estimate := estimate_branches(len(keys), scheme, p)) > limit:
        raise BranchLimitError(estimate, limit)

    weights: defaultdict[str, list[Probability]] = defaultdict(list)
    branches = 0

    def visit(store: NodeStore, i: int, weight: Probability) -> None:
        nonlocal branches
        if i == len(keys):
            branches += 1
            weights[store.canonical_shape()].append(weight)
            return
        v = store.insert_leaf(keys[i])
        if scheme is Scheme.NONE:
            visit(store, i + 1, weight)
            return
        for tails, w in _stop_branches(store.depth(v), p):
            branch = store.copy()
            stop = v
            for _ in range(tails):
                stop = branch.parent[stop]  # type: ignore[assignment]
            apply_rule(branch, scheme, stop)
            visit(branch, i + 1, weight * w)

    one: Probability = Fraction(1) if isinstance(p, Fraction) else 1.0
    visit(NodeStore(), 0, one)
    _LOGGER.debug(
        "enumerated %s branches into %s shapes for scheme=%s p=%s",
        branches,
        len(weights),
        scheme,
        p,
    )

    entries: dict[str, Probability] = {}
    for shape in sorted(weights):
        parts = weights[shape]
        entries[shape] = sum(parts, Fraction(0)) if isinstance(p, Fraction) else math.fsum(parts)
    return OutcomeDistribution(entries, p, scheme, keys, branches)


def stat_value(shape: str, stat: Stat | str, *, exact: bool = False) -> Probability:
    """Return ``stat`` of the tree encoded by ``shape``."""
    stats = compute_stats(NodeStore.from_shape(shape))
    match Stat(stat):
        case Stat.AVG_DEPTH:
            return stats.avg_depth_exact if exact else stats.avg_depth
        case Stat.RIGHT_HEIGHT:
            return stats.right_height
        case Stat.LEFT_HEIGHT:
            return stats.left_height
        case Stat.HEIGHT:
            return stats.height


def expected_stat(dist: OutcomeDistribution, stat: Stat | str) -> Probability:
    """Return the expectation of ``stat`` under ``dist``; a fraction in exact mode."""
    if dist.is_exact:
        return sum(
            (prob * stat_value(shape, stat, exact=True) for shape, prob in dist.entries.items()),
            Fraction(0),
        )
    return math.fsum(prob * stat_value(shape, stat) for shape, prob in dist.entries.items())


def pair_height_cases(p: Probability, d: int) -> tuple[tuple[Probability, int], ...]:
    """Return the ten ``(probability, right height change)`` cases of inserting a pair.

    The pair is inserted by Zig below a rightmost node of depth ``d``; the cases partition
    the outcomes, so the probabilities sum to 1.
    """
    q = 1 - p
    pd = p**d
    pd1 = p ** (d + 1)
    pd2 = p ** (d + 2)
    return (
        (pd1 * pd2, 1),
        (pd1 * q, 2),
        (pd1 * p * (1 - pd1), 0),
        (q * pd2, 0),
        (q * q, 0),
        (q * p * q, 1),
        (q * p * p * (1 - pd), -1),
        (p * (1 - pd) * pd1, 0),
        (p * (1 - pd) * q, 1),
        (p * (1 - pd) * p * (1 - pd), -1),
    )


def expected_pair_height_change(p: Probability, d: int) -> tuple[Probability, Probability]:
    """Return the expected right height change of a pair as ``(case sum, closed form)``."""
    if d < 0:
        raise ValueError(f"depth must be non-negative, got {d}")
    cases = pair_height_cases(p, d)
    if isinstance(p, Fraction):
        raw: Probability = sum((prob * delta for prob, delta in cases), Fraction(0))
    else:
        raw = math.fsum(prob * delta for prob, delta in cases)
    pd1 = p ** (d + 1)
    reduced = 2 * p**3 - 5 * p**2 + 2 * p + pd1 * (1 + 2 * p - p**2 + (p - 1) * pd1)
    return raw, reduced


def random_tree_distribution(n: int, *, limit: int = MAX_BRANCHES) -> OutcomeDistribution:
    """Return the exact shape distribution of unbalanced trees built from random orders of 1..n.

    Every order is equally likely, so each of the n! orders is one branch.
    """
    if (estimate := math.factorial(n)) > limit:
        raise BranchLimitError(estimate, limit)
    counts: defaultdict[str, int] = defaultdict(int)
    for order in permutations(range(1, n + 1)):
        store = NodeStore()
        for key in order:
            store.insert_leaf(key)
        counts[store.canonical_shape()] += 1
    entries: dict[str, Probability] = {
        shape: Fraction(counts[shape], estimate) for shape in sorted(counts)
    }
    return OutcomeDistribution(
        entries, Fraction(1), Scheme.NONE, tuple(range(1, n + 1)), branches=estimate
    )
