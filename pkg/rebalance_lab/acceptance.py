"""Acceptance criteria: exact checks plus seeded statistical checks of the growth claims."""
from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
import math
import time
from typing import Any

from .const import (
    _LOGGER,
    ABSENT_CHILD,
    ACCEPTANCE_CRITERIA,
    CONF_COUNTERS,
    CONF_EQUIVALENCE_TRIALS,
    CONF_HEIGHT_EVENTS,
    CONF_LINEAR_TRIALS,
    CONF_PROCESS_STEPS,
    CONF_SEED,
    CONF_SIZE_SHIFT,
    CONF_TRIALS,
    CONF_WALK_EVENTS,
    CONF_WORKERS,
    DEFAULT_EQUIVALENCE_TRIALS,
    DEFAULT_HEIGHT_EVENTS,
    DEFAULT_LINEAR_TRIALS,
    DEFAULT_PROCESS_COUNTERS,
    DEFAULT_PROCESS_N,
    DEFAULT_SEED,
    DEFAULT_SIZE_SHIFT,
    DEFAULT_TRIALS,
    DEFAULT_WALK_EVENTS,
    DEFAULT_WORKERS,
    MAX_SIZE_SHIFT,
)
from .exceptions import ConfigError
from .experiments import (
    ExperimentConfig,
    TrialSpec,
    build_tree,
    depth_exponent,
    run_sweep,
    run_trial,
)
from .helpers import mean_and_stderr
from .metrics import right_height
from .oracle import enumerate_distribution, expected_pair_height_change, pair_height_cases
from .process import ProcessParams, run_trials, stationary_mean_bound
from .rebalance import REBALANCING_SCHEMES, CoinSource, Scheme, insert_rebalanced
from .sequences import SequenceKind, generate
from .tree import NodeStore

# expected count below which shapes are pooled before the per-shape comparison
MIN_EXPECTED_COUNT = 20
# standard errors allowed per bucket
SHAPE_SIGMAS = 4
# degenerate-coin sizes; odd sizes are added for sequences that allow them
DEGENERATE_SIZES = (2, 4, 6, 8, 10, 16, 32, 64, 128, 254, 256)
DEGENERATE_ODD_SIZES = (3, 5, 7, 255)


@dataclass(frozen=True, slots=True)
class AcceptanceOptions:
    """Trial counts, event counts, sizes and seeds used by the statistical criteria.

    The defaults are the full-scale settings. ``size_shift`` halves every tree size of the
    statistical criteria that many times, for quick runs.
    """

    trials: int = DEFAULT_TRIALS
    equivalence_trials: int = DEFAULT_EQUIVALENCE_TRIALS
    linear_trials: int = DEFAULT_LINEAR_TRIALS
    walk_events: int = DEFAULT_WALK_EVENTS
    height_events: int = DEFAULT_HEIGHT_EVENTS
    process_steps: int = DEFAULT_PROCESS_N
    process_counters: int = DEFAULT_PROCESS_COUNTERS
    size_shift: int = DEFAULT_SIZE_SHIFT
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS

    def __post_init__(self) -> None:
        if not 0 <= self.size_shift <= MAX_SIZE_SHIFT:
            raise ConfigError(
                f"size_shift must be in [0, {MAX_SIZE_SHIFT}], got {self.size_shift}"
            )

    @classmethod
    def from_mapping(cls, config: Mapping[str, Any]) -> AcceptanceOptions:
        """Build from a validated accept configuration mapping."""
        return cls(
            trials=config.get(CONF_TRIALS, DEFAULT_TRIALS),
            equivalence_trials=config.get(CONF_EQUIVALENCE_TRIALS, DEFAULT_EQUIVALENCE_TRIALS),
            linear_trials=config.get(CONF_LINEAR_TRIALS, DEFAULT_LINEAR_TRIALS),
            walk_events=config.get(CONF_WALK_EVENTS, DEFAULT_WALK_EVENTS),
            height_events=config.get(CONF_HEIGHT_EVENTS, DEFAULT_HEIGHT_EVENTS),
            process_steps=config.get(CONF_PROCESS_STEPS, DEFAULT_PROCESS_N),
            process_counters=config.get(CONF_COUNTERS, DEFAULT_PROCESS_COUNTERS),
            size_shift=config.get(CONF_SIZE_SHIFT, DEFAULT_SIZE_SHIFT),
            seed=config.get(CONF_SEED, DEFAULT_SEED),
            workers=config.get(CONF_WORKERS, DEFAULT_WORKERS),
        )

    def size(self, n: int) -> int:
        """Return the tree size that stands in for the full-scale size ``n``."""
        return n >> self.size_shift


@dataclass(slots=True)
class CriterionResult:
    """Outcome of one criterion; ``passed`` is None for informational criteria."""

    number: int
    title: str
    passed: bool | None
    measured: str
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        """Return PASS, FAIL or INFO."""
        if self.passed is None:
            return "INFO"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        """Return a one-line report."""
        return (
            f"[{self.status}] {self.number:2d}. {self.title} "
            f"({self.elapsed:.1f}s): {self.measured}"
        )


@dataclass(slots=True)
class AcceptanceReport:
    """Results of an acceptance run."""

    results: list[CriterionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True unless a gating criterion failed."""
        return all(r.passed is not False for r in self.results)

    def lines(self) -> list[str]:
        """Return the report, one line per criterion plus a summary."""
        failed = [r.number for r in self.results if r.passed is False]
        summary = "all criteria passed" if not failed else f"failed criteria: {failed}"
        return [r.line() for r in self.results] + [summary]


Check = Callable[[AcceptanceOptions], tuple[bool | None, str]]
CRITERIA: dict[int, tuple[str, Check]] = {}


def criterion(number: int, title: str) -> Callable[[Check], Check]:
    """Register a criterion check."""

    def register(check: Check) -> Check:
        CRITERIA[number] = (title, check)
        return check

    return register


def left_chain(keys: Iterable[int]) -> str:
    """Return the shape of a chain where each key is the left child of the one before."""
    shape = ABSENT_CHILD
    for key in reversed(list(keys)):
        shape = f"({key} {shape} {ABSENT_CHILD})"
    return shape


def pairs_zig_shape(n: int) -> str:
    """Return the Zig tree of pairs(n) at p=0: root 1, right child n, then n-1..2 leftwards."""
    return f"(1 {ABSENT_CHILD} ({n} {left_chain(range(n - 1, 1, -1))} {ABSENT_CHILD}))"


def pairs_zigzag_shape(n: int) -> str:
    """Return the ZigZag tree of pairs(n) at p=0 for even n >= 4: root n-1, right child n."""
    return f"({n - 1} {left_chain(range(n - 2, 0, -1))} ({n} {ABSENT_CHILD} {ABSENT_CHILD}))"


def _sweep_rows(
    options: AcceptanceOptions,
    scheme: Scheme,
    kind: SequenceKind,
    n_values: tuple[int, ...],
    p: float,
    trials: int,
) -> dict[int, Any]:
    config = ExperimentConfig(
        schemes=(scheme,),
        sequences=(kind,),
        n_values=n_values,
        p_values=(p,),
        trials=trials,
        seed_base=options.seed,
        workers=options.workers,
    )
    return {row.n: row for row in run_sweep(config)}


@criterion(1, "exact four-way split of 1,3,2 under Zig at p=1/2")
def check_exact_split(options: AcceptanceOptions) -> tuple[bool, str]:
    dist = enumerate_distribution([1, 3, 2], Scheme.ZIG, Fraction(1, 2))
    probs = sorted({str(p) for p in dist.entries.values()})
    passed = len(dist) == 4 and all(p == Fraction(1, 4) for p in dist.entries.values())
    return passed, f"{len(dist)} shapes with probabilities {probs}"


@criterion(2, "degenerate coins: Zig p=0 gives a path, p=1 matches the unbalanced tree")
def check_degenerate(options: AcceptanceOptions) -> tuple[bool, str]:
    failures = []
    builds = 0
    for kind in SequenceKind:
        sizes = DEGENERATE_SIZES if kind.requires_even else DEGENERATE_SIZES + DEGENERATE_ODD_SIZES
        for n in sizes:
            keys = generate(kind, n, options.seed)
            if not build_tree(keys, Scheme.ZIG, CoinSource(0, options.seed)).store.is_path():
                failures.append(f"zig p=0 {kind} n={n}")
            baseline = build_tree(keys, Scheme.NONE, None).store.canonical_shape()
            for scheme in REBALANCING_SCHEMES:
                shape = build_tree(keys, scheme, CoinSource(1, options.seed)).store
                if shape.canonical_shape() != baseline:
                    failures.append(f"{scheme} p=1 {kind} n={n}")
            builds += 2 + len(REBALANCING_SCHEMES)
    return not failures, f"{builds} builds, {len(failures)} mismatches {failures[:5]}"


@criterion(3, "pairs sequences at p=0 give the fixed Zig and ZigZag shapes")
def check_pairs_shapes(options: AcceptanceOptions) -> tuple[bool, str]:
    failures = []
    for n in range(2, 257, 2):
        keys = generate(SequenceKind.PAIRS, n)
        zig = build_tree(keys, Scheme.ZIG, CoinSource(0, options.seed)).store.canonical_shape()
        if zig != pairs_zig_shape(n):
            failures.append(f"zig n={n}")
        if n >= 4:
            zigzag = build_tree(keys, Scheme.ZIGZAG, CoinSource(0, options.seed)).store
            if zigzag.canonical_shape() != pairs_zigzag_shape(n):
                failures.append(f"zigzag n={n}")
    return not failures, f"even n up to 256, mismatches {failures[:5]}"


@criterion(4, "pair height change: case sum equals closed form, cases sum to 1")
def check_pair_height_change(options: AcceptanceOptions) -> tuple[bool, str]:
    worst_identity = 0.0
    worst_total = 0.0
    for i in range(1, 20):
        p = round(0.05 * i, 2)
        for d in range(21):
            raw, reduced = expected_pair_height_change(p, d)
            worst_identity = max(worst_identity, abs(raw - reduced))
            total = math.fsum(prob for prob, _ in pair_height_cases(p, d))
            worst_total = max(worst_total, abs(total - 1))
    passed = worst_identity < 1e-12 and worst_total < 1e-12
    return passed, (
        f"max |sum - closed form| {worst_identity:.2e}, max |total - 1| {worst_total:.2e}"
    )


@criterion(5, "Zig walk distance and flips stay below p/(1-p) and 1/(1-p)")
def check_walk_length(options: AcceptanceOptions) -> tuple[bool, str]:
    events = options.walk_events
    n = options.size(1024)
    passed = True
    parts = []
    for p in (0.25, 0.5, 0.75):
        outcomes = []
        trial = 0
        while len(outcomes) < events:
            coin = CoinSource(p, options.seed + trial)
            keys = generate(SequenceKind.INCREASING, n)
            outcomes.extend(build_tree(keys, Scheme.ZIG, coin, record=True).outcomes)
            trial += 1
        outcomes = outcomes[:events]
        dist_mean, dist_se = mean_and_stderr([o.distance for o in outcomes])
        flip_mean, flip_se = mean_and_stderr([o.flips for o in outcomes])
        ok = dist_mean <= p / (1 - p) + 3 * dist_se and flip_mean <= 1 / (1 - p) + 3 * flip_se
        passed &= ok
        parts.append(f"p={p}: distance {dist_mean:.3f} flips {flip_mean:.3f}")
    return passed, "; ".join(parts)


@criterion(6, "Zig on increasing keys raises right height d with probability p^(d+1)")
def check_height_rate(options: AcceptanceOptions) -> tuple[bool, str]:
    p = 0.5
    heights = range(2, 7)
    seen: Counter[int] = Counter()
    raised: Counter[int] = Counter()
    trial = 0
    while sum(seen.values()) < options.height_events:
        coin = CoinSource(p, options.seed + trial)
        trial += 1
        store = NodeStore()
        key = 0
        height = -1
        while height <= max(heights):
            key += 1
            insert_rebalanced(store, key, Scheme.ZIG, coin)
            new_height = right_height(store)
            if height in heights:
                seen[height] += 1
                raised[height] += new_height > height
            height = new_height

    passed = True
    parts = []
    for d in heights:
        expected = p ** (d + 1)
        rate = raised[d] / seen[d]
        sigma = math.sqrt(expected * (1 - expected) / seen[d])
        passed &= abs(rate - expected) <= 4 * sigma
        parts.append(f"d={d}: {rate:.4f} vs {expected:.4f} ({seen[d]} events)")
    return passed, "; ".join(parts)


@criterion(7, "Zig on converging keys keeps the insertion point deep")
def check_converging_depth(options: AcceptanceOptions) -> tuple[bool, str]:
    p = 0.5
    n = options.size(1024)
    specs = [
        TrialSpec(Scheme.ZIG, SequenceKind.CONVERGING, n, p, options.seed + i)
        for i in range(options.trials)
    ]
    # the insertion point is the external leaf one level below its parent
    depths = [run_trial(spec).insertion_point_depth + 1 for spec in specs]  # type: ignore[operator]
    mean, se = mean_and_stderr(depths)
    bound = p * (1 - p) / 2 * n
    return mean >= bound - 3 * se, f"mean depth {mean:.1f} (se {se:.1f}) vs bound {bound:.0f}"


@criterion(8, "Zig and ZigZag on increasing keys grow by a constant per doubling")
def check_logarithmic_growth(options: AcceptanceOptions) -> tuple[bool, str]:
    n_values = tuple(options.size(2**k) for k in range(9, 14))
    passed = True
    parts = []
    for scheme in (Scheme.ZIG, Scheme.ZIGZAG):
        rows = _sweep_rows(options, scheme, SequenceKind.INCREASING, n_values, 0.5, options.trials)
        steps = [rows[2 * n].avg_depth_mean - rows[n].avg_depth_mean for n in n_values[:-1]]
        passed &= max(steps) <= 4
        parts.append(f"{scheme}: " + ", ".join(f"{s:.2f}" for s in steps))
    return passed, "; ".join(parts)


@criterion(9, "ZigZag on pairs has average depth linear in n")
def check_zigzag_linear(options: AcceptanceOptions) -> tuple[bool, str]:
    small, large = options.size(2**11), options.size(2**13)
    passed = True
    parts = []
    for p in (0.25, 0.5, 0.75):
        rows = _sweep_rows(
            options, Scheme.ZIGZAG, SequenceKind.PAIRS, (small, large), p, options.linear_trials
        )
        ratio = (rows[large].avg_depth_mean / large) / (rows[small].avg_depth_mean / small)
        passed &= 0.7 <= ratio <= 1.3
        parts.append(f"p={p}: depth/n ratio {ratio:.3f}")
    return passed, "; ".join(parts)


@criterion(10, "Zig on pairs grows the right side at p=1/4 and the left side at p=3/4")
def check_zig_pairs_sides(options: AcceptanceOptions) -> tuple[bool, str]:
    n = options.size(2**12)
    trials = options.linear_trials
    low = _sweep_rows(options, Scheme.ZIG, SequenceKind.PAIRS, (n,), 0.25, trials)[n]
    high = _sweep_rows(options, Scheme.ZIG, SequenceKind.PAIRS, (n,), 0.75, trials)[n]
    passed = (
        low.right_height_mean / n >= 0.05
        and high.left_height_mean / n >= 0.05
        and high.right_height_mean <= 30
    )
    return passed, (
        f"p=1/4 right/n {low.right_height_mean / n:.3f}; "
        f"p=3/4 left/n {high.left_height_mean / n:.3f} right {high.right_height_mean:.1f}"
    )


@criterion(11, "reflected walk: sqrt growth, linear growth and bounded mean")
def check_process(options: AcceptanceOptions) -> tuple[bool, str]:
    n = options.process_steps
    counters = options.process_counters
    seed = options.seed
    balanced = run_trials(ProcessParams.from_p_plus(0.5), n, counters, seed, options.workers)
    upward_counters = max(1, counters // 10)
    upward = run_trials(ProcessParams.from_p_plus(0.7), n, upward_counters, seed, options.workers)
    downward_params = ProcessParams(p_minus=0.75, p_zero=0.0, p_plus=0.25)
    downward = run_trials(downward_params, n, counters, seed, options.workers)
    bound = stationary_mean_bound(downward_params)

    ok_balanced = 0.45 <= balanced.exponent <= 0.55
    ok_upward = abs(upward.mean_final_y / n - 0.4) <= 3 * upward.std_err / n
    ok_downward = downward.mean_final_y <= bound + 3 * downward.std_err
    return ok_balanced and ok_upward and ok_downward, (
        f"exponent {balanced.exponent:.4f}; mean/n {upward.mean_final_y / n:.4f}; "
        f"mean {downward.mean_final_y:.3f} vs bound {bound:.3f}"
    )


def _shape_frequencies_match(
    expected: Mapping[str, float], counts: Counter[str], trials: int
) -> bool:
    """Compare observed shape counts with exact probabilities within SHAPE_SIGMAS errors.

    Shapes expected fewer than MIN_EXPECTED_COUNT times are pooled into one bucket.
    """
    if set(counts) - set(expected):
        return False
    buckets: list[tuple[float, int]] = []
    rare_prob = 0.0
    rare_count = 0
    for shape, prob in expected.items():
        if prob * trials < MIN_EXPECTED_COUNT:
            rare_prob += prob
            rare_count += counts[shape]
        else:
            buckets.append((prob, counts[shape]))
    buckets.append((rare_prob, rare_count))
    for prob, count in buckets:
        sigma = math.sqrt(prob * (1 - prob) / trials)
        if abs(count / trials - prob) > SHAPE_SIGMAS * sigma + 1e-12:
            return False
    return True


@criterion(12, "simulated shape frequencies match exact enumeration")
def check_oracle_equivalence(options: AcceptanceOptions) -> tuple[bool, str]:
    trials = options.equivalence_trials
    mismatches = []
    combos = 0
    for scheme in REBALANCING_SCHEMES:
        for kind in SequenceKind:
            keys = generate(kind, 6 if kind.requires_even else 5, options.seed)
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                dist = enumerate_distribution(keys, scheme, p)
                coin = CoinSource(p, options.seed + combos)
                counts = Counter(
                    build_tree(keys, scheme, coin).store.canonical_shape() for _ in range(trials)
                )
                expected = {shape: float(prob) for shape, prob in dist.entries.items()}
                if not _shape_frequencies_match(expected, counts, trials):
                    mismatches.append(f"{scheme}/{kind}/p={p}")
                combos += 1
    return not mismatches, f"{combos} combinations x {trials} trials, mismatches {mismatches}"


@criterion(13, "Zig on pairs at p=1/2: depth exponent next to the walk exponent")
def report_pairs_exponent(options: AcceptanceOptions) -> tuple[None, str]:
    parts = []
    walks = max(1, options.process_counters // 10)
    for n in (options.size(2**k) for k in (10, 12, 14, 16)):
        row = _sweep_rows(options, Scheme.ZIG, SequenceKind.PAIRS, (n,), 0.5, 3)[n]
        walk = run_trials(ProcessParams.from_p_plus(0.5), n, walks, options.seed, options.workers)
        parts.append(
            f"n=2^{n.bit_length() - 1}: tree {depth_exponent(row.avg_depth_mean, n):.3f} "
            f"walk {walk.exponent:.3f}"
        )
    return None, "; ".join(parts)


def run_acceptance(
    criteria: Iterable[int] = ACCEPTANCE_CRITERIA,
    options: AcceptanceOptions | None = None,
) -> AcceptanceReport:
    """Run the selected criteria in order and collect their results."""
    options = options or AcceptanceOptions()
    report = AcceptanceReport()
    for number in sorted(set(criteria)):
        title, check = CRITERIA[number]
        _LOGGER.info("criterion %s: %s", number, title)
        start = time.perf_counter()
        passed, measured = check(options)
        result = CriterionResult(number, title, passed, measured, time.perf_counter() - start)
        if result.passed is False:
            _LOGGER.warning("criterion %s failed: %s", number, measured)
        report.results.append(result)
    return report
