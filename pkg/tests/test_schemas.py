"""Test configuration validation."""
from __future__ import annotations

from fractions import Fraction

import pytest
import voluptuous as vol

from rebalance_lab.const import (
    ACCEPTANCE_CRITERIA,
    DEFAULT_SWEEP_P,
    SECTION_ACCEPT,
    SECTION_DISTRIBUTION,
    SECTION_PAIRS_STUDY,
    SECTION_PROCESS,
    SECTION_PROFILE,
    SECTION_SWEEP,
)
from rebalance_lab.exceptions import ConfigError
from rebalance_lab.rebalance import REBALANCING_SCHEMES, Scheme
from rebalance_lab.schemas import build_section, comma_list, probability, validate_config
from rebalance_lab.sequences import SequenceKind


def test_empty_config():
    config = validate_config({})
    assert config["logger"] == {"default": "info", "logs": {}}
    assert config[SECTION_SWEEP] == {}


def test_logger_levels():
    config = validate_config({"logger": {"default": "WARNING", "logs": {"rebalance_lab": "Debug"}}})
    assert config["logger"] == {"default": "warning", "logs": {"rebalance_lab": "debug"}}


@pytest.mark.parametrize(
    "config",
    [
        {"logger": {"default": "loud"}},
        {"unknown": {}},
        {SECTION_SWEEP: [1, 2]},
    ],
)
def test_invalid_config(config):
    with pytest.raises(ConfigError):
        validate_config(config)


def test_sweep_defaults():
    section = build_section(SECTION_SWEEP, validate_config({SECTION_SWEEP: None}), {})
    assert section["scheme"] == list(REBALANCING_SCHEMES)
    assert section["sequence"] == list(SequenceKind)
    assert section["p"] == list(DEFAULT_SWEEP_P)
    assert section["trials"] == 25
    assert section["out"] == "-"


def test_flags_override_file():
    file_config = validate_config({SECTION_SWEEP: {"n": [32], "trials": 4, "seed": 9}})
    flags = {"n": "8, 16", "p": "1/4,0.5", "trials": None, "scheme": "zigzag"}
    section = build_section(SECTION_SWEEP, file_config, flags)
    assert section["n"] == [8, 16]
    assert section["p"] == [Fraction(1, 4), 0.5]
    assert section["trials"] == 4
    assert section["seed"] == 9
    assert section["scheme"] == [Scheme.ZIGZAG]


@pytest.mark.parametrize(
    "section, flags",
    [
        (SECTION_SWEEP, {"scheme": "splay"}),
        (SECTION_SWEEP, {"p": "1.5"}),
        (SECTION_SWEEP, {"trials": "0"}),
        (SECTION_SWEEP, {"n": ""}),
        (SECTION_PROFILE, {"sequence": "sorted"}),
        (SECTION_PROCESS, {"n": "1"}),
        (SECTION_PROCESS, {"p_plus": "1/2"}),
        (SECTION_PAIRS_STUDY, {"n": "1"}),
        (SECTION_DISTRIBUTION, {"keys": "1,3,2", "sequence": "pairs"}),
        (SECTION_ACCEPT, {"criteria": "14"}),
    ],
)
def test_invalid_sections(section, flags):
    with pytest.raises(ConfigError, match=section):
        build_section(section, validate_config({}), flags)


def test_profile_section():
    section = build_section(SECTION_PROFILE, validate_config({}), {"p": "3/4", "n": "64"})
    assert section["scheme"] is Scheme.ZIG
    assert section["sequence"] is SequenceKind.PERMUTATION
    assert section["p"] == Fraction(3, 4)
    assert section["n"] == 64


def test_process_section():
    section = build_section(SECTION_PROCESS, validate_config({}), {"p_plus": "0.4,0.6"})
    assert section["p_plus"] == [0.4, 0.6]
    assert "trajectory" not in section


def test_pairs_study_defaults():
    section = build_section(SECTION_PAIRS_STUDY, validate_config({}), {})
    assert section["p"] == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert section["n"][0] == 16


def test_distribution_section():
    section = build_section(SECTION_DISTRIBUTION, validate_config({}), {"keys": "1,3,2"})
    assert section["keys"] == [1, 3, 2]
    assert section["p"] == Fraction(1, 2)
    assert "sequence" not in section
    assert section["random_order"] is False


def test_accept_section():
    section = build_section(SECTION_ACCEPT, validate_config({}), {"criteria": "4, 1"})
    assert section["criteria"] == [4, 1]
    assert build_section(SECTION_ACCEPT, validate_config({}), {})["criteria"] == list(
        ACCEPTANCE_CRITERIA
    )
    quick = build_section(SECTION_ACCEPT, validate_config({}), {"size_shift": "5"})
    assert (quick["size_shift"], quick["walk_events"], quick["counters"]) == (5, 10_000, 1000)
    with pytest.raises(ConfigError):
        build_section(SECTION_ACCEPT, validate_config({}), {"size_shift": "6"})


@pytest.mark.parametrize(
    "value, expected",
    [("a, b,,c", ["a", "b", "c"]), (["x"], ["x"]), ((1, 2), [1, 2]), (5, [5])],
)
def test_comma_list(value, expected):
    assert comma_list(value) == expected


def test_probability_validator():
    assert probability("2/4") == Fraction(1, 2)
    with pytest.raises(vol.Invalid):
        probability("1/0")
    with pytest.raises(vol.Invalid):
        probability(None)
