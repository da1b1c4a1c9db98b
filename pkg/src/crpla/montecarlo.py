"""Seeded Monte Carlo validation of the analytic security quantities.

Three measurements are provided: symbol-level pilot estimation (checks
the estimator's mean and variance), legitimate-traffic false alarms
(checks the acceptance threshold against the exact chi-square law), and
geometric attack success (checks the volume-ratio success probability).

Reproducibility scheme
----------------------
Trials are partitioned into fixed blocks of ``BLOCK_TRIALS`` = 2**14.
Block ``b`` of run ``seed`` draws from ``Philox(key=seed).jumped(b)``
(the Philox 4x64-10 counter-based generator, counter advanced by
b * 2**128), and the draw order inside a block is fixed.  Every trial's
outcome is therefore a pure function of (seed, trials); per-block partial
results are reduced in block order, so counts, means, and variances are
bit-identical no matter how many workers participate.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.random import Generator, Philox

from . import channel
from .errors import InsufficientResolutionWarning
from .params import SystemParams

__all__ = [
    "BLOCK_TRIALS",
    "TrialBatch",
    "EstimatorMoments",
    "ChallengeDraw",
    "draw_challenge",
    "simulate_pilot_estimation",
    "measure_false_alarm",
    "measure_attack_success",
    "wilson_interval",
]

BLOCK_TRIALS = 1 << 14
_SEED_MASK = (1 << 64) - 1


def _block_rng(seed: int, block: int) -> Generator:
    return Generator(Philox(key=seed & _SEED_MASK).jumped(block))


def _blocks(trials: int) -> list[tuple[int, int]]:
    """(block index, trials in block) covering ``trials`` draws."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    full, rest = divmod(trials, BLOCK_TRIALS)
    out = [(b, BLOCK_TRIALS) for b in range(full)]
    if rest:
        out.append((full, rest))
    return out


def _map_blocks(fn: Callable, tasks: Sequence[tuple], jobs: int) -> Iterable:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def wilson_interval(successes: int, trials: int, z: float = 3.0) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion at z standard errors."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    p_hat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)) / denom
    # The exact endpoints are 0 and 1 at the degenerate counts; rounding in
    # the expressions above must not exclude the point estimate.
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


@dataclass(frozen=True)
class TrialBatch:
    """Outcome counts of one seeded measurement with 3-sigma Wilson bounds."""

    trials: int
    successes: int
    estimate: float
    wilson_3sigma_low: float
    wilson_3sigma_high: float
    seed: int

    @classmethod
    def from_counts(cls, trials: int, successes: int, seed: int) -> "TrialBatch":
        low, high = wilson_interval(successes, trials)
        return cls(
            trials=trials,
            successes=successes,
            estimate=successes / trials,
            wilson_3sigma_low=low,
            wilson_3sigma_high=high,
            seed=seed,
        )

    def contains(self, value: float) -> bool:
        return self.wilson_3sigma_low <= value <= self.wilson_3sigma_high


@dataclass(frozen=True)
class EstimatorMoments:
    """Sample mean and variance of the pilot-based amplitude estimator."""

    mean: float
    variance: float
    trials: int
    seed: int


@dataclass(frozen=True)
class ChallengeDraw:
    """One verifier challenge and one attack guess over F frames.

    Both vectors carry signed amplitudes: magnitude uniform on
    [h_min, h_max] and an independent uniform sign per frame (the sign
    realizes the phase ambiguity that doubles the admissible set in each
    dimension).
    """

    h: np.ndarray
    a: np.ndarray


def _signed_amplitudes(rng: Generator, rows: int, F: int, h_min: float, h_max: float):
    magnitude = rng.uniform(h_min, h_max, (rows, F))
    sign = rng.integers(0, 2, (rows, F)) * 2 - 1
    return magnitude * sign


def draw_challenge(params: SystemParams, rng: Generator) -> ChallengeDraw:
    """Single challenge/attack pair; same law as the vectorized measurements."""
    h = _signed_amplitudes(rng, 1, params.F, params.h_min, params.h_max)[0]
    a = _signed_amplitudes(rng, 1, params.F, params.h_min, params.h_max)[0]
    return ChallengeDraw(h=h, a=a)


# --- pilot estimation -------------------------------------------------------


def _pilot_block(task: tuple) -> tuple[float, float]:
    seed, block, rows, h, sigma_b, pilots = task
    rng = _block_rng(seed, block)
    phase = rng.uniform(0.0, 2.0 * math.pi, (rows, pilots))
    x = np.exp(1j * phase)
    w = sigma_b * (rng.standard_normal((rows, pilots)) + 1j * rng.standard_normal((rows, pilots)))
    estimates = np.mean(((h * x + w) / x).real, axis=1)
    # Accumulate around the known center h: the raw sum of squares would
    # cancel catastrophically once the noise is much smaller than h.
    delta = estimates - h
    return float(np.sum(delta)), float(np.sum(delta * delta))


def simulate_pilot_estimation(
    h: float,
    lambda_b: float,
    pilot_count: int,
    trials: int,
    seed: int,
    jobs: int = 1,
) -> EstimatorMoments:
    """Symbol-level simulation of the per-frame amplitude estimator.

    Each trial transmits ``pilot_count`` unit-modulus random-phase pilots
    through amplitude ``h`` plus complex Gaussian noise and averages the
    real part of y/x.  The noise is drawn with per-quadrature variance
    1/lambda_B, which makes the estimate exactly N(h, 1/(lambda_B *
    pilot_count)); the sample moments returned let callers verify that
    law.  Unit-modulus pilots (rather than Gaussian ones) avoid the
    heavy-tailed division by near-zero symbols while leaving the
    estimator's distribution unchanged.
    """
    if pilot_count < 1:
        raise ValueError("pilot_count must be >= 1")
    sigma_b = 1.0 / math.sqrt(lambda_b)
    tasks = [
        (seed, block, rows, float(h), sigma_b, pilot_count) for block, rows in _blocks(trials)
    ]
    partial = _map_blocks(_pilot_block, tasks, jobs)
    total = 0.0
    total_sq = 0.0
    for s, s2 in partial:  # fixed block order keeps the reduction bit-stable
        total += s
        total_sq += s2
    delta_mean = total / trials
    variance = (
        (total_sq - trials * delta_mean * delta_mean) / (trials - 1) if trials > 1 else 0.0
    )
    return EstimatorMoments(mean=h + delta_mean, variance=variance, trials=trials, seed=seed)


# --- false alarms on legitimate traffic -------------------------------------


def _false_alarm_block(task: tuple) -> int:
    seed, block, rows, F, h_min, h_max, sigma, tau = task
    rng = _block_rng(seed, block)
    h = _signed_amplitudes(rng, rows, F, h_min, h_max)
    h_hat = h + sigma * rng.standard_normal((rows, F))
    residual = (h_hat - h) / sigma
    stat = (np.einsum("ij,ij->i", residual, residual) - F) / math.sqrt(2.0 * F)
    return int(np.count_nonzero(stat > tau))


def measure_false_alarm(
    params: SystemParams, tau: float, trials: int, seed: int, jobs: int = 1
) -> TrialBatch:
    """Rejection rate of legitimate traffic at threshold ``tau``.

    Per trial: draw the true challenge, perturb it with the estimator
    noise, and count statistics exceeding the threshold.  The estimate
    converges to the exact chi-square tail, not to the asymptotic normal
    one.
    """
    sigma = math.sqrt(channel.sigma_h_sq(params))
    tasks = [
        (seed, block, rows, params.F, params.h_min, params.h_max, sigma, tau)
        for block, rows in _blocks(trials)
    ]
    rejections = sum(_map_blocks(_false_alarm_block, tasks, jobs))
    return TrialBatch.from_counts(trials, rejections, seed)


# --- geometric attack success ------------------------------------------------


def _attack_block(task: tuple) -> int:
    seed, block, rows, F, h_min, h_max, radius_sq = task
    rng = _block_rng(seed, block)
    h = _signed_amplitudes(rng, rows, F, h_min, h_max)
    a = _signed_amplitudes(rng, rows, F, h_min, h_max)
    d = a - h
    return int(np.count_nonzero(np.einsum("ij,ij->i", d, d) <= radius_sq))


def measure_attack_success(
    params: SystemParams, tau: float, trials: int, seed: int, jobs: int = 1
) -> TrialBatch:
    """Empirical success rate of the guessing attack at threshold ``tau``.

    The attack injects its guess noiselessly, so success is the exact
    inequality sum((a_k - h_k)^2) <= radius^2 with no re-noising.  Warns
    when zero successes are observed and the analytic prediction says the
    trial budget cannot resolve the probability.
    """
    var = channel.sigma_h_sq(params)
    chi = math.sqrt(2.0 * params.F) * tau + params.F
    radius_sq = max(chi, 0.0) * var
    tasks = [
        (seed, block, rows, params.F, params.h_min, params.h_max, radius_sq)
        for block, rows in _blocks(trials)
    ]
    successes = sum(_map_blocks(_attack_block, tasks, jobs))
    if successes == 0:
        expected = 2.0 ** channel.log2_p_succ(params, tau) * trials
        if expected < 10.0:
            warnings.warn(
                f"no successes in {trials} trials while the analytic expectation is "
                f"{expected:.3g}; increase trials to resolve this setting",
                InsufficientResolutionWarning,
                stacklevel=2,
            )
    return TrialBatch.from_counts(trials, successes, seed)
