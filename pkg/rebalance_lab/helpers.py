"""Helper functions."""
from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
import csv
from dataclasses import fields, is_dataclass
import logging
from pathlib import Path
import sys
from typing import IO, Any, TypeVar

import colorlog
import numpy as np
import yaml

from .const import _LOGGER, CONF_LOGGER_DEFAULT, CONF_LOGGER_LOGS, DOMAIN
from .exceptions import ConfigError

T = TypeVar("T")
R = TypeVar("R")

LOG_FORMAT = "%(log_color)s%(asctime)s %(levelname)-8s%(reset)s %(name)s: %(message)s"


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Load a YAML configuration file into a mapping."""
    try:
        with open(path, encoding="utf-8") as stream:
            config = yaml.safe_load(stream)
    except OSError as err:
        raise ConfigError(f"cannot read configuration {path}: {err}") from err
    except yaml.YAMLError as err:
        raise ConfigError(f"invalid YAML in {path}: {err}") from err

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError(f"configuration {path} must be a mapping")
    return config


def configure_logging(logger_config: Mapping[str, Any], verbose: bool = False) -> None:
    """Install a coloured console handler and apply configured log levels."""
    handler = colorlog.StreamHandler()
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT, datefmt="%H:%M:%S"))

    root = logging.getLogger()
    for previous in root.handlers[:]:
        if isinstance(previous.formatter, colorlog.ColoredFormatter):
            root.removeHandler(previous)
    root.addHandler(handler)
    root.setLevel(logger_config.get(CONF_LOGGER_DEFAULT, "info").upper())

    for name, level in logger_config.get(CONF_LOGGER_LOGS, {}).items():
        logging.getLogger(name).setLevel(level.upper())
    if verbose:
        logging.getLogger(DOMAIN).setLevel(logging.DEBUG)


def mean_and_stderr(values: Sequence[float]) -> tuple[float, float]:
    """Return the sample mean and its standard error."""
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("no values to summarize")
    if data.size == 1:
        return float(data[0]), 0.0
    return float(data.mean()), float(data.std(ddof=1) / np.sqrt(data.size))


def trial_map(func: Callable[[T], R], args: Iterable[T], workers: int = 1) -> list[R]:
    """Apply ``func`` to every argument, in a process pool when ``workers`` > 1.

    Results are in argument order regardless of completion order; ``func`` must be a
    module-level function so that it can be pickled.
    """
    if workers <= 1:
        return [func(arg) for arg in args]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, args))


@contextmanager
def open_output(out: str | Path) -> Iterator[IO[str]]:
    """Open ``out`` for CSV writing; ``-`` is standard output."""
    if str(out) == "-":
        yield sys.stdout
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as stream:
        yield stream
    _LOGGER.info("wrote %s", out)


def write_csv(out: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a header and rows as UTF-8 CSV with LF line endings."""
    with open_output(out) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_dataclass_csv(out: str | Path, items: Sequence[Any], item_type: type) -> None:
    """Write dataclass instances as CSV, one column per shown field in declaration order."""
    if not is_dataclass(item_type):
        raise TypeError(f"{item_type!r} is not a dataclass")
    columns = [f.name for f in fields(item_type) if f.repr]
    write_csv(out, columns, ([_cell(getattr(item, c)) for c in columns] for item in items))


def _cell(value: Any) -> Any:
    return "" if value is None else value
