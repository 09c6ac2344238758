"""Seeded experiment sweeps over schemes, sequences, sizes and coin probabilities."""
from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product
import math
from typing import Any

import numpy as np

from .const import (
    _LOGGER,
    CONF_N,
    CONF_OUT,
    CONF_P,
    CONF_SCHEME,
    CONF_SEED,
    CONF_SEQUENCE,
    CONF_TRIALS,
    CONF_WORKERS,
    DEFAULT_OUT,
    DEFAULT_PAIRS_STUDY_P,
    DEFAULT_PROFILE_N,
    DEFAULT_PROFILE_P,
    DEFAULT_PROFILE_TREES,
    DEFAULT_SEED,
    DEFAULT_TRAJECTORY_SAMPLES,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    MAX_PERMUTATION_N,
)
from .exceptions import ConfigError
from .helpers import mean_and_stderr, trial_map
from .metrics import (
    DepthStats,
    compute_stats,
    depth_profile_accumulate,
    insertion_point_depth,
    right_height,
)
from .oracle import Probability, expected_pair_height_change
from .process import ProcessParams, ProcessSummary, run_trials, simulate
from .rebalance import CoinSource, RebalanceOutcome, Scheme, insert_rebalanced
from .sequences import SequenceKind, generate
from .tree import NodeStore


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """A grid of sweep cells and how many seeded trials to run per cell."""

    schemes: tuple[Scheme, ...]
    sequences: tuple[SequenceKind, ...]
    n_values: tuple[int, ...]
    p_values: tuple[Probability, ...]
    trials: int = DEFAULT_TRIALS
    seed_base: int = DEFAULT_SEED
    out: str = DEFAULT_OUT
    workers: int = DEFAULT_WORKERS

    def __post_init__(self) -> None:
        problems = []
        if not (self.schemes and self.sequences and self.n_values and self.p_values):
            problems.append("schemes, sequences, n and p must each be non-empty")
        if self.trials < 1:
            problems.append(f"trials must be at least 1, got {self.trials}")
        if self.workers < 1:
            problems.append(f"workers must be at least 1, got {self.workers}")
        if bad := [p for p in self.p_values if not 0 <= p <= 1]:
            problems.append(f"probabilities outside [0, 1]: {bad}")
        if bad_n := [n for n in self.n_values if n < 1]:
            problems.append(f"sizes must be positive: {bad_n}")
        odd = [n for n in self.n_values if n % 2]
        for kind in self.sequences:
            if kind.requires_even and odd:
                problems.append(f"{kind} needs even sizes, got {odd}")
        largest = max(self.n_values, default=0)
        if SequenceKind.PERMUTATION in self.sequences and largest > MAX_PERMUTATION_N:
            problems.append(f"permutations are limited to n <= {MAX_PERMUTATION_N}")
        if problems:
            raise ConfigError("; ".join(problems))

    @classmethod
    def from_mapping(cls, config: Mapping[str, Any]) -> ExperimentConfig:
        """Build from a validated sweep configuration mapping."""
        return cls(
            schemes=tuple(Scheme(s) for s in config[CONF_SCHEME]),
            sequences=tuple(SequenceKind(s) for s in config[CONF_SEQUENCE]),
            n_values=tuple(config[CONF_N]),
            p_values=tuple(config[CONF_P]),
            trials=config.get(CONF_TRIALS, DEFAULT_TRIALS),
            seed_base=config.get(CONF_SEED, DEFAULT_SEED),
            out=config.get(CONF_OUT, DEFAULT_OUT),
            workers=config.get(CONF_WORKERS, DEFAULT_WORKERS),
        )

    def cells(self) -> Iterator[tuple[Scheme, SequenceKind, int, Probability]]:
        """Yield (scheme, sequence, n, p) in output order."""
        return product(self.schemes, self.sequences, self.n_values, self.p_values)


@dataclass(frozen=True, slots=True)
class TrialSpec:
    """Everything a single seeded tree build depends on."""

    scheme: Scheme
    sequence: SequenceKind
    n: int
    p: Probability
    seed: int


@dataclass(slots=True)
class BuildResult:
    """A finished tree and its rebalancing counters."""

    store: NodeStore
    rotations_total: int = 0
    flips_total: int = 0
    outcomes: list[RebalanceOutcome] = field(default_factory=list)


@dataclass(frozen=True, slots=True)
class ResultRow:
    """Aggregate of one sweep cell; fields are in CSV column order."""

    scheme: str
    sequence: str
    n: int
    p: Probability
    trials: int
    seed_base: int
    avg_depth_mean: float
    avg_depth_stderr: float
    right_height_mean: float
    left_height_mean: float
    rotations_mean: float
    flips_mean: float
    insertion_point_depth_mean: float | None


@dataclass(frozen=True, slots=True)
class PairsStudyRow:
    """Zig on pairs at one (p, n)."""

    p: Probability
    n: int
    trials: int
    seed_base: int
    avg_depth_mean: float
    avg_depth_stderr: float
    left_height_mean: float
    right_height_mean: float
    depth_exponent: float


@dataclass(frozen=True, slots=True)
class PairChangeRow:
    """Observed right height change per inserted pair, grouped by the height before it."""

    p: Probability
    right_height: int
    events: int
    mean_change: float
    std_err: float
    predicted_change: float


@dataclass(frozen=True, slots=True)
class TrajectoryRow:
    """One thinned sample of a simulated walk."""

    p_plus: float
    step: int
    y: int


def trial_generators(seed: int) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    """Split a trial seed into independent sequence and coin seeds."""
    seq_seed, coin_seed = np.random.SeedSequence(seed).spawn(2)
    return seq_seed, coin_seed


def build_tree(
    keys: Sequence[int],
    scheme: Scheme,
    coin: CoinSource | None,
    *,
    record: bool = False,
    check: bool = False,
) -> BuildResult:
    """Insert ``keys`` in order, rebalancing each insertion with ``scheme``."""
    result = BuildResult(NodeStore())
    for key in keys:
        outcome = insert_rebalanced(result.store, key, scheme, coin, check=check)
        result.rotations_total += outcome.rotations_performed
        result.flips_total += outcome.flips
        if record:
            result.outcomes.append(outcome)
    return result


def finger_gap(kind: SequenceKind, keys: Sequence[int]) -> float | None:
    """Return a key inside the gap where the next finger insertion would land.

    Increasing and decreasing sequences continue past the last key; converging sequences
    end between their last two keys. Other kinds have no finger.
    """
    match kind:
        case SequenceKind.INCREASING:
            return keys[-1] + 0.5
        case SequenceKind.DECREASING:
            return keys[-1] - 0.5
        case SequenceKind.CONVERGING:
            return (keys[-1] + keys[-2]) / 2
    return None


def run_trial(spec: TrialSpec) -> DepthStats:
    """Build one seeded tree and return its statistics."""
    seq_seed, coin_seed = trial_generators(spec.seed)
    keys = generate(spec.sequence, spec.n, seq_seed)
    coin = CoinSource(spec.p, coin_seed) if spec.scheme is not Scheme.NONE else None
    built = build_tree(keys, spec.scheme, coin)
    gap = finger_gap(spec.sequence, keys)
    return compute_stats(
        built.store,
        rotations_total=built.rotations_total,
        flips_total=built.flips_total,
        insertion_point_depth=None if gap is None else insertion_point_depth(built.store, gap),
    )


def summarize(
    scheme: Scheme,
    kind: SequenceKind,
    n: int,
    p: Probability,
    seed_base: int,
    stats: Sequence[DepthStats],
) -> ResultRow:
    """Aggregate per-trial statistics into a result row."""
    avg_mean, avg_stderr = mean_and_stderr([s.avg_depth for s in stats])
    finger = [s.insertion_point_depth for s in stats if s.insertion_point_depth is not None]
    return ResultRow(
        scheme=str(scheme),
        sequence=str(kind),
        n=n,
        p=p,
        trials=len(stats),
        seed_base=seed_base,
        avg_depth_mean=avg_mean,
        avg_depth_stderr=avg_stderr,
        right_height_mean=float(np.mean([s.right_height for s in stats])),
        left_height_mean=float(np.mean([s.left_height for s in stats])),
        rotations_mean=float(np.mean([s.rotations_total for s in stats])),
        flips_mean=float(np.mean([s.flips_total for s in stats])),
        insertion_point_depth_mean=float(np.mean(finger)) if finger else None,
    )


def run_sweep(config: ExperimentConfig) -> list[ResultRow]:
    """Run ``config.trials`` seeded builds for every cell and aggregate them."""
    cells = list(config.cells())
    specs = [
        TrialSpec(scheme, kind, n, p, config.seed_base + i)
        for scheme, kind, n, p in cells
        for i in range(config.trials)
    ]
    _LOGGER.info("run_sweep: %s cells x %s trials", len(cells), config.trials)
    stats = trial_map(run_trial, specs, config.workers)

    rows = []
    for index, (scheme, kind, n, p) in enumerate(cells):
        chunk = stats[index * config.trials : (index + 1) * config.trials]
        rows.append(summarize(scheme, kind, n, p, config.seed_base, chunk))
        _LOGGER.debug(
            "run_sweep cell %s/%s %s %s n=%s p=%s avg_depth=%.3f",
            index + 1,
            len(cells),
            scheme,
            kind,
            n,
            p,
            rows[-1].avg_depth_mean,
        )
    return rows


def _profile_trial(spec: TrialSpec) -> Counter[int]:
    seq_seed, coin_seed = trial_generators(spec.seed)
    keys = generate(spec.sequence, spec.n, seq_seed)
    coin = CoinSource(spec.p, coin_seed) if spec.scheme is not Scheme.NONE else None
    return depth_profile_accumulate(Counter(), build_tree(keys, spec.scheme, coin).store)


def run_profile(
    scheme: Scheme,
    sequence: SequenceKind,
    n: int = DEFAULT_PROFILE_N,
    p: Probability = DEFAULT_PROFILE_P,
    trees: int = DEFAULT_PROFILE_TREES,
    seed: int = DEFAULT_SEED,
    workers: int = DEFAULT_WORKERS,
) -> Counter[int]:
    """Return the number of nodes at each depth summed over ``trees`` seeded builds."""
    # rejects invalid arguments before any build
    ExperimentConfig((scheme,), (sequence,), (n,), (p,), trees, seed, DEFAULT_OUT, workers)
    specs = [TrialSpec(scheme, sequence, n, p, seed + i) for i in range(trees)]
    profile: Counter[int] = Counter()
    for histogram in trial_map(_profile_trial, specs, workers):
        profile.update(histogram)
    return profile


def run_process_figure(
    p_plus_values: Sequence[float],
    n: int,
    counters: int,
    seed: int = DEFAULT_SEED,
    workers: int = DEFAULT_WORKERS,
) -> list[ProcessSummary]:
    """Estimate the growth exponent of the walk for each p_plus, with p_minus = 1 - p_plus."""
    summaries = []
    for p_plus in p_plus_values:
        summary = run_trials(ProcessParams.from_p_plus(p_plus), n, counters, seed, workers)
        _LOGGER.info(
            "process p_plus=%s n=%s mean=%.3f exponent=%.4f",
            p_plus,
            n,
            summary.mean_final_y,
            summary.exponent,
        )
        summaries.append(summary)
    return summaries


def run_process_trajectories(
    p_plus_values: Sequence[float],
    n: int,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_TRAJECTORY_SAMPLES,
) -> list[TrajectoryRow]:
    """Return thinned trajectories of one walk per p_plus."""
    rows = []
    for p_plus in p_plus_values:
        run = simulate(ProcessParams.from_p_plus(p_plus), n, seed, samples)
        rows.extend(TrajectoryRow(p_plus, step, y) for step, y in run.trajectory_sample)
    return rows


def depth_exponent(avg_depth: float, n: int) -> float:
    """Return lg(avg_depth) / lg(n)."""
    if avg_depth <= 0 or n < 2:
        return -math.inf
    return math.log2(avg_depth) / math.log2(n)


def run_zig_pairs_study(
    n_values: Sequence[int],
    seed: int = DEFAULT_SEED,
    p_values: Sequence[Probability] = DEFAULT_PAIRS_STUDY_P,
    trials: int = DEFAULT_TRIALS,
    workers: int = DEFAULT_WORKERS,
) -> list[PairsStudyRow]:
    """Average depth and both side heights of Zig on pairs sequences."""
    rows = []
    for p in p_values:
        config = ExperimentConfig(
            schemes=(Scheme.ZIG,),
            sequences=(SequenceKind.PAIRS,),
            n_values=tuple(n_values),
            p_values=(p,),
            trials=trials,
            seed_base=seed,
            workers=workers,
        )
        for row in run_sweep(config):
            rows.append(
                PairsStudyRow(
                    p=p,
                    n=row.n,
                    trials=row.trials,
                    seed_base=row.seed_base,
                    avg_depth_mean=row.avg_depth_mean,
                    avg_depth_stderr=row.avg_depth_stderr,
                    left_height_mean=row.left_height_mean,
                    right_height_mean=row.right_height_mean,
                    depth_exponent=depth_exponent(row.avg_depth_mean, row.n),
                )
            )
    return rows


def run_pair_height_changes(
    p: Probability,
    n: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> list[PairChangeRow]:
    """Measure how Zig changes the right height per inserted pair of a pairs sequence.

    Each row compares the observed mean change at a given right height with the value
    predicted by :func:`expected_pair_height_change`.
    """
    changes: defaultdict[int, list[int]] = defaultdict(list)
    for i in range(trials):
        seq_seed, coin_seed = trial_generators(seed + i)
        keys = generate(SequenceKind.PAIRS, n, seq_seed)
        coin = CoinSource(p, coin_seed)
        store = NodeStore()
        for j in range(0, n, 2):
            before = right_height(store)
            insert_rebalanced(store, keys[j], Scheme.ZIG, coin)
            insert_rebalanced(store, keys[j + 1], Scheme.ZIG, coin)
            if before >= 0:
                changes[before].append(right_height(store) - before)

    rows = []
    for d in sorted(changes):
        mean, std_err = mean_and_stderr(changes[d])
        rows.append(
            PairChangeRow(
                p=p,
                right_height=d,
                events=len(changes[d]),
                mean_change=mean,
                std_err=std_err,
                predicted_change=float(expected_pair_height_change(p, d)[1]),
            )
        )
    return rows
