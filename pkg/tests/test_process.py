"""Test the reflected random walk."""
from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from rebalance_lab import process
from rebalance_lab.exceptions import ProcessParamsError
from rebalance_lab.process import (
    ProcessParams,
    estimate_exponent,
    exact_expectation,
    exponent_of,
    run_trials,
    simulate,
    stationary_mean_bound,
)

BALANCED = ProcessParams.from_p_plus(0.5)
DOWNWARD = ProcessParams(p_minus=0.75, p_zero=0.0, p_plus=0.25)
LAZY = ProcessParams(p_minus=0.5, p_zero=0.25, p_plus=0.25)


@pytest.mark.parametrize(
    "p_minus, p_zero, p_plus",
    [(0.5, 0.5, 0.5), (-0.1, 0.6, 0.5), (0.2, 0.2, 0.2)],
)
def test_invalid_params(p_minus, p_zero, p_plus):
    with pytest.raises(ProcessParamsError):
        ProcessParams(p_minus, p_zero, p_plus)


def test_from_p_plus():
    params = ProcessParams.from_p_plus(0.7)
    assert params.p_minus == pytest.approx(0.3)
    assert params.p_zero == 0
    assert ProcessParams.from_p_plus(0.25, p_zero=0.25) == LAZY


def test_alpha():
    assert DOWNWARD.alpha == 0.25
    assert LAZY.alpha == pytest.approx(1 / 3)
    with pytest.raises(ProcessParamsError):
        ProcessParams(0, 1, 0).alpha  # pylint: disable=expression-not-assigned


@pytest.mark.parametrize(
    "params, final_y, walk_sum",
    [
        (ProcessParams(1, 0, 0), 0, -500),
        (ProcessParams(0, 0, 1), 500, 500),
        (ProcessParams(0, 1, 0), 0, 0),
    ],
)
def test_degenerate_walks(params, final_y, walk_sum):
    run = simulate(params, 500, seed=1)
    assert (run.final_y, run.walk_sum) == (final_y, walk_sum)


def test_reflection_matches_step_by_step():
    n = 2000
    run = simulate(LAZY, n, seed=9)

    u = np.random.default_rng(9).random(n)
    y = 0
    for value in u:
        if value < LAZY.p_minus:
            y = max(0, y - 1)
        elif value >= LAZY.p_minus + LAZY.p_zero:
            y += 1
    assert run.final_y == y
    assert run.final_y >= run.walk_sum
    assert run.final_y >= 0


def test_chunked_walk_is_identical(monkeypatch):
    whole = simulate(BALANCED, 1000, seed=3, samples=20)
    monkeypatch.setattr(process, "PROCESS_CHUNK_STEPS", 7)
    chunked = simulate(BALANCED, 1000, seed=3, samples=20)
    assert chunked == whole


def test_trajectory_sample():
    run = simulate(BALANCED, 1000, seed=2, samples=10)
    assert [step for step, _ in run.trajectory_sample] == list(range(100, 1001, 100))
    assert run.trajectory_sample[-1][1] == run.final_y
    assert all(y >= 0 for _, y in run.trajectory_sample)
    assert simulate(BALANCED, 1000, seed=2).trajectory_sample == ()


def test_zero_steps():
    assert simulate(BALANCED, 0).final_y == 0
    with pytest.raises(ProcessParamsError):
        simulate(BALANCED, -1)


def test_run_trials_is_seeded():
    first = run_trials(BALANCED, 200, 5, seed=4)
    second = run_trials(BALANCED, 200, 5, seed=4)
    assert first == second
    assert len(first.final_values) == 5
    assert first.final_values[0] == simulate(BALANCED, 200, 4).final_y
    assert first.trials == 5
    assert first.p_plus == 0.5


def test_run_trials_upward():
    summary = run_trials(ProcessParams.from_p_plus(1.0), 1000, 3)
    assert summary.mean_final_y == 1000
    assert summary.std_err == 0
    assert summary.exponent == 1
    assert estimate_exponent(ProcessParams.from_p_plus(1.0), 64, 2) == 1


def test_zero_mean_exponent(caplog):
    with caplog.at_level(logging.WARNING):
        summary = run_trials(ProcessParams(1, 0, 0), 100, 2)
    assert summary.exponent == -math.inf
    assert "exponent is -inf" in caplog.text
    assert exponent_of(8, 64) == 0.5


@pytest.mark.parametrize("n, trials", [(1, 5), (100, 0)])
def test_run_trials_rejects(n, trials):
    with pytest.raises(ProcessParamsError):
        run_trials(BALANCED, n, trials)


def test_stationary_mean_bound():
    assert stationary_mean_bound(DOWNWARD) == pytest.approx(0.75)
    assert stationary_mean_bound(LAZY) == pytest.approx(2)
    with pytest.raises(ProcessParamsError):
        stationary_mean_bound(BALANCED)


@pytest.mark.parametrize(
    "params, n, expected",
    [
        (BALANCED, 0, 0),
        (BALANCED, 1, 0.5),
        (BALANCED, 2, 0.75),
        (ProcessParams(0, 0, 1), 40, 40),
        (ProcessParams(1, 0, 0), 40, 0),
    ],
)
def test_exact_expectation(params, n, expected):
    assert exact_expectation(params, n) == pytest.approx(expected)


@pytest.mark.parametrize("params", [DOWNWARD, LAZY])
def test_exact_expectation_below_bound(params):
    assert exact_expectation(params, 2000) <= stationary_mean_bound(params)


def test_exact_expectation_matches_simulation():
    summary = run_trials(BALANCED, 50, 2000, seed=8)
    assert abs(summary.mean_final_y - exact_expectation(BALANCED, 50)) <= 4 * summary.std_err


def test_exact_expectation_limit():
    with pytest.raises(ProcessParamsError):
        exact_expectation(BALANCED, process.MAX_EXACT_STEPS + 1)
