"""Reflected random walk Y_i = max(0, Y_{i-1} + X_i) with steps in {-1, 0, +1}."""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .const import _LOGGER, DEFAULT_WORKERS, PROBABILITY_TOLERANCE, PROCESS_CHUNK_STEPS
from .exceptions import ProcessParamsError
from .helpers import mean_and_stderr, trial_map

MAX_EXACT_STEPS = 10_000


@dataclass(frozen=True, slots=True)
class ProcessParams:
    """Step probabilities of the walk."""

    p_minus: float
    p_zero: float
    p_plus: float

    def __post_init__(self) -> None:
        if min(self.p_minus, self.p_zero, self.p_plus) < 0:
            raise ProcessParamsError(f"negative step probability in {self}")
        if abs(self.p_minus + self.p_zero + self.p_plus - 1) > PROBABILITY_TOLERANCE:
            raise ProcessParamsError(f"step probabilities of {self} do not sum to 1")

    @classmethod
    def from_p_plus(cls, p_plus: float, p_zero: float = 0.0) -> ProcessParams:
        """Build parameters where every step that is neither +1 nor 0 is -1."""
        return cls(p_minus=max(1.0 - p_plus - p_zero, 0.0), p_zero=p_zero, p_plus=p_plus)

    @property
    def alpha(self) -> float:
        """Return p_plus / (p_plus + p_minus)."""
        if self.p_plus + self.p_minus == 0:
            raise ProcessParamsError("alpha is undefined when the walk never moves")
        return self.p_plus / (self.p_plus + self.p_minus)


@dataclass(frozen=True, slots=True)
class ProcessRun:
    """Result of one simulated walk."""

    n: int
    final_y: int
    walk_sum: int
    trajectory_sample: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True, slots=True)
class ProcessSummary:
    """Mean final value over independent walks; fields are in CSV column order."""

    p_plus: float
    p_minus: float
    p_zero: float
    n: int
    trials: int
    mean_final_y: float
    std_err: float
    exponent: float
    final_values: tuple[int, ...] = field(default=(), repr=False)


def simulate(
    params: ProcessParams,
    n: int,
    seed: int | np.random.SeedSequence = 0,
    samples: int = 0,
) -> ProcessRun:
    """Simulate ``n`` steps starting from Y_0 = 0.

    The reflected value equals the unreflected partial sum minus its running minimum (taken
    with 0), which lets the walk be generated in vectorized chunks. ``samples`` > 0 keeps
    every ``n // samples``-th value of Y for plotting.
    """
    if n < 0:
        raise ProcessParamsError(f"step count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    stay_below = params.p_minus + params.p_zero
    every = max(n // samples, 1) if samples > 0 else 0

    offset = 0
    low = 0
    done = 0
    trajectory: list[tuple[int, int]] = []
    while done < n:
        m = min(PROCESS_CHUNK_STEPS, n - done)
        u = rng.random(m)
        steps = np.ones(m, dtype=np.int64)
        steps[u < stay_below] = 0
        steps[u < params.p_minus] = -1
        z = offset + np.cumsum(steps)
        if every:
            y = z - np.minimum(np.minimum.accumulate(z), low)
            first = (-done - 1) % every
            for j in range(first, m, every):
                trajectory.append((done + j + 1, int(y[j])))
        offset = int(z[-1])
        low = min(low, int(z.min()))
        done += m

    return ProcessRun(
        n=n, final_y=offset - low, walk_sum=offset, trajectory_sample=tuple(trajectory)
    )


def _final_y(args: tuple[ProcessParams, int, int]) -> int:
    params, n, seed = args
    return simulate(params, n, seed).final_y


def exponent_of(mean: float, n: int) -> float:
    """Return lg(mean) / lg(n), or negative infinity when the mean is zero."""
    if mean <= 0:
        _LOGGER.warning("mean of Y_n is zero for n=%s; exponent is -inf", n)
        return -math.inf
    return math.log2(mean) / math.log2(n)


def run_trials(
    params: ProcessParams,
    n: int,
    trials: int,
    seed: int = 0,
    workers: int = DEFAULT_WORKERS,
) -> ProcessSummary:
    """Simulate ``trials`` independent walks seeded ``seed + i`` and summarize Y_n."""
    if n < 2:
        raise ProcessParamsError(f"exponent needs at least 2 steps, got {n}")
    if trials < 1:
        raise ProcessParamsError(f"need at least one trial, got {trials}")
    _LOGGER.debug("simulating %s walks of %s steps with %s", trials, n, params)
    finals = trial_map(_final_y, [(params, n, seed + i) for i in range(trials)], workers)
    mean, std_err = mean_and_stderr(finals)
    return ProcessSummary(
        p_plus=params.p_plus,
        p_minus=params.p_minus,
        p_zero=params.p_zero,
        n=n,
        trials=trials,
        mean_final_y=mean,
        std_err=std_err,
        exponent=exponent_of(mean, n),
        final_values=tuple(finals),
    )


def estimate_exponent(params: ProcessParams, n: int, trials: int, seed: int = 0) -> float:
    """Return lg(mean Y_n) / lg(n) over ``trials`` walks; the mean is taken first."""
    return run_trials(params, n, trials, seed).exponent


def stationary_mean_bound(params: ProcessParams) -> float:
    """Return the bound alpha(1 - alpha) / (1 - 2 alpha)^2 on E[Y_n] for a downward drift."""
    if params.p_minus <= params.p_plus:
        raise ProcessParamsError(
            f"bound needs p_minus > p_plus, got p_minus={params.p_minus} p_plus={params.p_plus}"
        )
    alpha = params.alpha
    return alpha * (1 - alpha) / (1 - 2 * alpha) ** 2


def exact_expectation(params: ProcessParams, n: int) -> float:
    """Return E[Y_n] by propagating the exact distribution of Y over ``n`` steps."""
    if not 0 <= n <= MAX_EXACT_STEPS:
        raise ProcessParamsError(f"exact expectation supports 0..{MAX_EXACT_STEPS} steps")
    dist = np.zeros(n + 2)
    dist[0] = 1.0
    for i in range(n):
        top = i + 1
        step = np.zeros_like(dist)
        step[1 : top + 1] += params.p_plus * dist[:top]
        step[:top] += params.p_zero * dist[:top]
        step[: top - 1] += params.p_minus * dist[1:top]
        step[0] += params.p_minus * dist[0]
        dist = step
    return float(np.dot(np.arange(n + 2), dist))
