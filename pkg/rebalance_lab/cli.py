"""Command line interface."""
from __future__ import annotations

import argparse
from collections.abc import Callable, Sequence
from typing import Any

from .acceptance import AcceptanceOptions, run_acceptance
from .const import (
    _LOGGER,
    CONF_COUNTERS,
    CONF_CRITERIA,
    CONF_EQUIVALENCE_TRIALS,
    CONF_HEIGHT_CHANGES,
    CONF_HEIGHT_EVENTS,
    CONF_KEYS,
    CONF_LINEAR_TRIALS,
    CONF_LOGGER,
    CONF_N,
    CONF_OUT,
    CONF_P,
    CONF_P_PLUS,
    CONF_PROCESS_STEPS,
    CONF_RANDOM_ORDER,
    CONF_SCHEME,
    CONF_SEED,
    CONF_SEQUENCE,
    CONF_SIZE_SHIFT,
    CONF_TRAJECTORY,
    CONF_TREES,
    CONF_TRIALS,
    CONF_WALK_EVENTS,
    CONF_WORKERS,
    DEFAULT_TRAJECTORY_SAMPLES,
    SECTION_ACCEPT,
    SECTION_DISTRIBUTION,
    SECTION_PAIRS_STUDY,
    SECTION_PROCESS,
    SECTION_PROFILE,
    SECTION_SWEEP,
)
from .exceptions import ConfigError, RebalanceLabError
from .experiments import (
    ExperimentConfig,
    PairChangeRow,
    PairsStudyRow,
    ResultRow,
    TrajectoryRow,
    run_pair_height_changes,
    run_process_figure,
    run_process_trajectories,
    run_profile,
    run_sweep,
    run_zig_pairs_study,
)
from .helpers import (
    configure_logging,
    load_config_file,
    write_csv,
    write_dataclass_csv,
)
from .metrics import histogram_rows
from .oracle import Stat, enumerate_distribution, expected_stat, random_tree_distribution
from .plots import PlotKind, write_plot_script
from .process import ProcessSummary
from .rebalance import Scheme
from .schemas import build_section, validate_config
from .sequences import generate

Handler = Callable[[dict[str, Any]], int]

# flag name, config key, help
_FLAGS: dict[str, tuple[str, str]] = {
    CONF_SCHEME: ("--scheme", "rebalancing scheme(s): none, zig, zigzag, zigzig"),
    CONF_SEQUENCE: ("--sequence", "insertion sequence kind(s)"),
    CONF_N: ("--n", "tree size(s) or step count, comma separated"),
    CONF_P: ("--p", "tail probability(ies), decimals or a/b, comma separated"),
    CONF_P_PLUS: ("--p-plus", "probability(ies) of an upward step, comma separated"),
    CONF_TRIALS: ("--trials", "independent seeded trials per cell"),
    CONF_TREES: ("--trees", "number of trees summed into the profile"),
    CONF_COUNTERS: ("--counters", "number of independent walks"),
    CONF_KEYS: ("--keys", "explicit insertion order, comma separated"),
    CONF_SEED: ("--seed", "base seed; trial i uses seed + i"),
    CONF_OUT: ("--out", "output CSV path, - for standard output"),
    CONF_WORKERS: ("--workers", "worker processes for independent trials"),
    CONF_TRAJECTORY: ("--trajectory", "also write thinned walk trajectories to this CSV"),
    CONF_HEIGHT_CHANGES: ("--height-changes", "also write per-pair height changes to this CSV"),
    CONF_CRITERIA: ("--criteria", "criterion numbers to run, comma separated"),
    CONF_EQUIVALENCE_TRIALS: ("--equivalence-trials", "trials per oracle comparison"),
    CONF_LINEAR_TRIALS: ("--linear-trials", "trials for the linear-depth criteria"),
    CONF_WALK_EVENTS: ("--walk-events", "rebalancing walks measured by the walk-length criterion"),
    CONF_HEIGHT_EVENTS: ("--height-events", "insertions measured by the height-rate criterion"),
    CONF_PROCESS_STEPS: ("--process-steps", "steps of each reflected walk in the acceptance run"),
    CONF_SIZE_SHIFT: ("--size-shift", "halve the acceptance tree sizes this many times"),
    CONF_RANDOM_ORDER: ("--random-order", "average over every order of 1..n (scheme none)"),
}

# flags that take no value
_SWITCHES = frozenset({CONF_RANDOM_ORDER})


def _write_rows(out: str, rows: Sequence[Any], row_type: type, kind: PlotKind) -> None:
    write_dataclass_csv(out, rows, row_type)
    if out != "-":
        write_plot_script(out, kind)


def _sweep(section: dict[str, Any]) -> int:
    config = ExperimentConfig.from_mapping(section)
    _write_rows(config.out, run_sweep(config), ResultRow, PlotKind.SWEEP)
    return 0


def _profile(section: dict[str, Any]) -> int:
    profile = run_profile(
        section[CONF_SCHEME],
        section[CONF_SEQUENCE],
        section[CONF_N],
        section[CONF_P],
        section[CONF_TREES],
        section[CONF_SEED],
        section[CONF_WORKERS],
    )
    write_csv(section[CONF_OUT], ["depth", "count"], histogram_rows(profile))
    if section[CONF_OUT] != "-":
        write_plot_script(section[CONF_OUT], PlotKind.PROFILE)
    return 0


def _process(section: dict[str, Any]) -> int:
    summaries = run_process_figure(
        section[CONF_P_PLUS],
        section[CONF_N],
        section[CONF_COUNTERS],
        section[CONF_SEED],
        section[CONF_WORKERS],
    )
    _write_rows(section[CONF_OUT], summaries, ProcessSummary, PlotKind.PROCESS)
    if trajectory := section.get(CONF_TRAJECTORY):
        rows = run_process_trajectories(
            section[CONF_P_PLUS], section[CONF_N], section[CONF_SEED], DEFAULT_TRAJECTORY_SAMPLES
        )
        _write_rows(trajectory, rows, TrajectoryRow, PlotKind.TRAJECTORY)
    return 0


def _pairs_study(section: dict[str, Any]) -> int:
    rows = run_zig_pairs_study(
        section[CONF_N],
        section[CONF_SEED],
        section[CONF_P],
        section[CONF_TRIALS],
        section[CONF_WORKERS],
    )
    _write_rows(section[CONF_OUT], rows, PairsStudyRow, PlotKind.PAIRS_STUDY)
    if height_changes := section.get(CONF_HEIGHT_CHANGES):
        n = max(section[CONF_N])
        changes: list[PairChangeRow] = []
        for p in section[CONF_P]:
            changes.extend(
                run_pair_height_changes(p, n, section[CONF_TRIALS], section[CONF_SEED])
            )
        _write_rows(height_changes, changes, PairChangeRow, PlotKind.HEIGHT_CHANGES)
    return 0


def _distribution(section: dict[str, Any]) -> int:
    if section[CONF_RANDOM_ORDER]:
        if section[CONF_SCHEME] is not Scheme.NONE or CONF_N not in section:
            raise ConfigError("random order needs scheme none and n")
        if CONF_KEYS in section or CONF_SEQUENCE in section:
            raise ConfigError("random order takes n only, not keys or a sequence")
        dist = random_tree_distribution(section[CONF_N])
    elif CONF_KEYS in section:
        dist = enumerate_distribution(section[CONF_KEYS], section[CONF_SCHEME], section[CONF_P])
    elif CONF_SEQUENCE in section and CONF_N in section:
        keys = generate(section[CONF_SEQUENCE], section[CONF_N], section[CONF_SEED])
        dist = enumerate_distribution(keys, section[CONF_SCHEME], section[CONF_P])
    else:
        raise ConfigError("distribution needs either keys or both sequence and n")

    _LOGGER.info(
        "%s shapes from %s branches, expected average depth %s",
        len(dist),
        dist.branches,
        expected_stat(dist, Stat.AVG_DEPTH),
    )
    write_csv(section[CONF_OUT], dist.header(), dist.rows())
    if section[CONF_OUT] != "-":
        write_plot_script(section[CONF_OUT], PlotKind.DISTRIBUTION)
    return 0


def _accept(section: dict[str, Any]) -> int:
    report = run_acceptance(section[CONF_CRITERIA], AcceptanceOptions.from_mapping(section))
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


_COMMANDS: dict[str, tuple[str, Handler, str, tuple[str, ...]]] = {
    "sweep": (
        SECTION_SWEEP,
        _sweep,
        "average depth statistics over a grid of schemes, sequences, sizes and p",
        (
            CONF_SCHEME,
            CONF_SEQUENCE,
            CONF_N,
            CONF_P,
            CONF_TRIALS,
            CONF_SEED,
            CONF_OUT,
            CONF_WORKERS,
        ),
    ),
    "profile": (
        SECTION_PROFILE,
        _profile,
        "number of nodes per depth summed over many trees",
        (CONF_SCHEME, CONF_SEQUENCE, CONF_N, CONF_P, CONF_TREES, CONF_SEED, CONF_OUT, CONF_WORKERS),
    ),
    "process": (
        SECTION_PROCESS,
        _process,
        "growth exponent of the reflected random walk",
        (CONF_P_PLUS, CONF_N, CONF_COUNTERS, CONF_SEED, CONF_OUT, CONF_WORKERS, CONF_TRAJECTORY),
    ),
    "pairs-study": (
        SECTION_PAIRS_STUDY,
        _pairs_study,
        "Zig on pairs sequences: average depth and side heights",
        (CONF_N, CONF_P, CONF_TRIALS, CONF_SEED, CONF_OUT, CONF_WORKERS, CONF_HEIGHT_CHANGES),
    ),
    "distribution": (
        SECTION_DISTRIBUTION,
        _distribution,
        "exact distribution of tree shapes for a small insertion order",
        (
            CONF_SCHEME,
            CONF_SEQUENCE,
            CONF_N,
            CONF_KEYS,
            CONF_RANDOM_ORDER,
            CONF_P,
            CONF_SEED,
            CONF_OUT,
        ),
    ),
    "accept": (
        SECTION_ACCEPT,
        _accept,
        "run the acceptance criteria",
        (
            CONF_CRITERIA,
            CONF_TRIALS,
            CONF_EQUIVALENCE_TRIALS,
            CONF_LINEAR_TRIALS,
            CONF_WALK_EVENTS,
            CONF_HEIGHT_EVENTS,
            CONF_PROCESS_STEPS,
            CONF_COUNTERS,
            CONF_SIZE_SHIFT,
            CONF_SEED,
            CONF_WORKERS,
        ),
    ),
}


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per experiment."""
    parser = argparse.ArgumentParser(
        prog="rebalance-lab",
        description="Randomized bottom-up rebalancing of binary search trees.",
    )
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, description, keys) in _COMMANDS.items():
        command = commands.add_parser(name, help=description, description=description)
        for key in keys:
            flag, help_text = _FLAGS[key]
            if key in _SWITCHES:
                command.add_argument(
                    flag, dest=key, action="store_const", const=True, default=None, help=help_text
                )
            else:
                command.add_argument(flag, dest=key, default=None, help=help_text)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface and return the exit status."""
    args = build_parser().parse_args(argv)
    section_name, handler, _, keys = _COMMANDS[args.command]
    try:
        file_config = validate_config(load_config_file(args.config) if args.config else {})
        configure_logging(file_config[CONF_LOGGER], args.verbose)
        flags = {key: getattr(args, key) for key in keys}
        section = build_section(section_name, file_config, flags)
        return handler(section)
    except (RebalanceLabError, OSError) as err:
        _LOGGER.error("%s", err)
        return 2
