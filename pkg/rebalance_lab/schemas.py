"""Configuration schemas."""
from __future__ import annotations

from collections.abc import Callable, Mapping
from typing import Any

import voluptuous as vol

from .const import (
    ACCEPTANCE_CRITERIA,
    CONF_COUNTERS,
    CONF_CRITERIA,
    CONF_EQUIVALENCE_TRIALS,
    CONF_HEIGHT_CHANGES,
    CONF_HEIGHT_EVENTS,
    CONF_KEYS,
    CONF_LINEAR_TRIALS,
    CONF_LOGGER,
    CONF_LOGGER_DEFAULT,
    CONF_LOGGER_LOGS,
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
    DEFAULT_DISTRIBUTION_P,
    DEFAULT_EQUIVALENCE_TRIALS,
    DEFAULT_HEIGHT_EVENTS,
    DEFAULT_LINEAR_TRIALS,
    DEFAULT_OUT,
    DEFAULT_PAIRS_STUDY_N,
    DEFAULT_PAIRS_STUDY_P,
    DEFAULT_PROCESS_COUNTERS,
    DEFAULT_PROCESS_N,
    DEFAULT_PROCESS_P_PLUS,
    DEFAULT_PROFILE_N,
    DEFAULT_PROFILE_P,
    DEFAULT_PROFILE_TREES,
    DEFAULT_SEED,
    DEFAULT_SIZE_SHIFT,
    DEFAULT_SWEEP_N,
    DEFAULT_SWEEP_P,
    DEFAULT_TRIALS,
    DEFAULT_WALK_EVENTS,
    DEFAULT_WORKERS,
    MAX_SIZE_SHIFT,
    SECTION_ACCEPT,
    SECTION_DISTRIBUTION,
    SECTION_PAIRS_STUDY,
    SECTION_PROCESS,
    SECTION_PROFILE,
    SECTION_SWEEP,
)
from .exceptions import ConfigError
from .oracle import parse_probability
from .rebalance import REBALANCING_SCHEMES, Scheme
from .sequences import SequenceKind

LOG_LEVELS = ["critical", "fatal", "error", "warning", "warn", "info", "debug", "notset"]

POSITIVE_INT = vol.All(vol.Coerce(int), vol.Range(min=1))
NON_NEGATIVE_INT = vol.All(vol.Coerce(int), vol.Range(min=0))
OUTPUT = vol.All(str, vol.Length(min=1))


def comma_list(value: Any) -> list[Any]:
    """Accept a comma separated string, a scalar or a list."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def probability(value: Any) -> Any:
    """Validate a probability given as a number, decimal text or ``a/b`` text."""
    try:
        return parse_probability(value)
    except (ValueError, ZeroDivisionError, TypeError) as err:
        raise vol.Invalid(f"invalid probability {value!r}: {err}") from err


def list_of(item: Callable[[Any], Any]) -> vol.All:
    """Validate a non-empty comma list whose items all pass ``item``."""
    return vol.All(comma_list, vol.Length(min=1), [item])


SCHEME = vol.Coerce(Scheme)
SEQUENCE = vol.Coerce(SequenceKind)
LOG_LEVEL = vol.All(vol.Lower, vol.In(LOG_LEVELS))

LOGGER_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_LOGGER_DEFAULT, default="info"): LOG_LEVEL,
        vol.Optional(CONF_LOGGER_LOGS, default={}): {str: LOG_LEVEL},
    }
)

SWEEP_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SCHEME, default=[str(s) for s in REBALANCING_SCHEMES]): list_of(SCHEME),
        vol.Required(CONF_SEQUENCE, default=[str(s) for s in SequenceKind]): list_of(SEQUENCE),
        vol.Required(CONF_N, default=list(DEFAULT_SWEEP_N)): list_of(POSITIVE_INT),
        vol.Required(CONF_P, default=list(DEFAULT_SWEEP_P)): list_of(probability),
        vol.Required(CONF_TRIALS, default=DEFAULT_TRIALS): POSITIVE_INT,
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_OUT, default=DEFAULT_OUT): OUTPUT,
        vol.Required(CONF_WORKERS, default=DEFAULT_WORKERS): POSITIVE_INT,
    }
)

PROFILE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SCHEME, default=str(Scheme.ZIG)): SCHEME,
        vol.Required(CONF_SEQUENCE, default=str(SequenceKind.PERMUTATION)): SEQUENCE,
        vol.Required(CONF_N, default=DEFAULT_PROFILE_N): POSITIVE_INT,
        vol.Required(CONF_P, default=DEFAULT_PROFILE_P): probability,
        vol.Required(CONF_TREES, default=DEFAULT_PROFILE_TREES): POSITIVE_INT,
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_OUT, default=DEFAULT_OUT): OUTPUT,
        vol.Required(CONF_WORKERS, default=DEFAULT_WORKERS): POSITIVE_INT,
    }
)

PROCESS_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_P_PLUS, default=list(DEFAULT_PROCESS_P_PLUS)): list_of(
            vol.All(vol.Coerce(float), vol.Range(min=0, max=1))
        ),
        vol.Required(CONF_N, default=DEFAULT_PROCESS_N): vol.All(vol.Coerce(int), vol.Range(min=2)),
        vol.Required(CONF_COUNTERS, default=DEFAULT_PROCESS_COUNTERS): POSITIVE_INT,
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_OUT, default=DEFAULT_OUT): OUTPUT,
        vol.Required(CONF_WORKERS, default=DEFAULT_WORKERS): POSITIVE_INT,
        vol.Optional(CONF_TRAJECTORY): OUTPUT,
    }
)

PAIRS_STUDY_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_N, default=list(DEFAULT_PAIRS_STUDY_N)): list_of(
            vol.All(POSITIVE_INT, vol.Range(min=2))
        ),
        vol.Required(CONF_P, default=[str(p) for p in DEFAULT_PAIRS_STUDY_P]): list_of(probability),
        vol.Required(CONF_TRIALS, default=DEFAULT_TRIALS): POSITIVE_INT,
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_OUT, default=DEFAULT_OUT): OUTPUT,
        vol.Required(CONF_WORKERS, default=DEFAULT_WORKERS): POSITIVE_INT,
        vol.Optional(CONF_HEIGHT_CHANGES): OUTPUT,
    }
)

DISTRIBUTION_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SCHEME, default=str(Scheme.ZIG)): SCHEME,
        vol.Required(CONF_P, default=str(DEFAULT_DISTRIBUTION_P)): probability,
        vol.Exclusive(CONF_KEYS, "input"): list_of(vol.Coerce(int)),
        vol.Exclusive(CONF_SEQUENCE, "input"): SEQUENCE,
        vol.Optional(CONF_N): POSITIVE_INT,
        vol.Required(CONF_RANDOM_ORDER, default=False): vol.Boolean(),
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_OUT, default=DEFAULT_OUT): OUTPUT,
    }
)

ACCEPT_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_CRITERIA, default=list(ACCEPTANCE_CRITERIA)): list_of(
            vol.All(vol.Coerce(int), vol.In(ACCEPTANCE_CRITERIA))
        ),
        vol.Required(CONF_TRIALS, default=DEFAULT_TRIALS): POSITIVE_INT,
        vol.Required(CONF_EQUIVALENCE_TRIALS, default=DEFAULT_EQUIVALENCE_TRIALS): POSITIVE_INT,
        vol.Required(CONF_LINEAR_TRIALS, default=DEFAULT_LINEAR_TRIALS): POSITIVE_INT,
        vol.Required(CONF_WALK_EVENTS, default=DEFAULT_WALK_EVENTS): POSITIVE_INT,
        vol.Required(CONF_HEIGHT_EVENTS, default=DEFAULT_HEIGHT_EVENTS): POSITIVE_INT,
        vol.Required(CONF_PROCESS_STEPS, default=DEFAULT_PROCESS_N): vol.All(
            vol.Coerce(int), vol.Range(min=2)
        ),
        vol.Required(CONF_COUNTERS, default=DEFAULT_PROCESS_COUNTERS): POSITIVE_INT,
        vol.Required(CONF_SIZE_SHIFT, default=DEFAULT_SIZE_SHIFT): vol.All(
            vol.Coerce(int), vol.Range(min=0, max=MAX_SIZE_SHIFT)
        ),
        vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE_INT,
        vol.Required(CONF_WORKERS, default=DEFAULT_WORKERS): POSITIVE_INT,
    }
)

SECTION_SCHEMAS: dict[str, vol.Schema] = {
    SECTION_SWEEP: SWEEP_SCHEMA,
    SECTION_PROFILE: PROFILE_SCHEMA,
    SECTION_PROCESS: PROCESS_SCHEMA,
    SECTION_PAIRS_STUDY: PAIRS_STUDY_SCHEMA,
    SECTION_DISTRIBUTION: DISTRIBUTION_SCHEMA,
    SECTION_ACCEPT: ACCEPT_SCHEMA,
}

CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_LOGGER, default={}): LOGGER_SCHEMA,
        **{vol.Optional(section, default={}): vol.Any(None, dict) for section in SECTION_SCHEMAS},
    }
)


def validate_config(config: Mapping[str, Any]) -> dict[str, Any]:
    """Validate the top level of a configuration file."""
    try:
        return CONFIG_SCHEMA(dict(config))  # type: ignore[no-any-return]
    except vol.Invalid as err:
        raise ConfigError(f"invalid configuration: {err}") from err


def build_section(
    section: str, file_config: Mapping[str, Any], flags: Mapping[str, Any]
) -> dict[str, Any]:
    """Merge a configuration file section with command line flags and validate it.

    Flags that were given override the file; flags left unset (None) do not.
    """
    merged = dict(file_config.get(section) or {})
    merged.update({key: value for key, value in flags.items() if value is not None})
    try:
        return SECTION_SCHEMAS[section](merged)  # type: ignore[no-any-return]
    except vol.Invalid as err:
        raise ConfigError(f"invalid {section} configuration: {err}") from err
