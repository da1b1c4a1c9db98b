"""Hybrid mechanism: combine the channel check and the coding check, and
optimize the pilot/data split and the amplitude range.

The hybrid runs both checks on every message and halves the false-alarm
budget between them.  Its secret bits are the sum b_ch + b_key.  The two
single-mechanism baselines each run one check and therefore spend the
full false-alarm budget:

* channel-only: every symbol a pilot, amplitude free over [0, h_max];
* coding-only: no pilots, amplitude pinned at h_max.

``optimize`` scans pilot counts 1..n-1 against an h_min grid.  The
channel-only configuration is the natural alpha = 1 endpoint of that
search (the coding check degenerates, so it keeps the full budget); it is
included as a candidate by default so the optimum saturates exactly to
the channel-only value when coding stops paying.  Disable it when h_min
is externally pinned, since the endpoint lives at h_min = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import channel, coding
from .errors import InvalidPilotCount, InvalidRange
from .params import SecurityReport, SystemParams

__all__ = [
    "OptimizationGrid",
    "hybrid_bits",
    "baseline_ch",
    "baseline_cd",
    "optimize",
]


@dataclass(frozen=True)
class OptimizationGrid:
    """Search space for :func:`optimize`.

    ``pilot_counts`` defaults to every interior count 1..n-1 and
    ``h_min_values`` to 101 uniform points on [0, h_max].  ``split`` is
    the fraction of the false-alarm budget given to the channel check
    (fixed at even halves by default; it is a sensitivity hook, not a
    search dimension).
    """

    pilot_counts: tuple[int, ...] | None = None
    h_min_values: tuple[float, ...] | None = None
    split: float = 0.5
    include_channel_only: bool = True

    def resolve(self, params: SystemParams) -> tuple[tuple[int, ...], tuple[float, ...]]:
        pilots = self.pilot_counts
        if pilots is None:
            pilots = tuple(range(1, params.n))
        if not pilots:
            raise InvalidPilotCount("empty pilot-count grid")
        if any(not 1 <= p <= params.n - 1 for p in pilots):
            raise InvalidPilotCount(f"pilot counts must lie in 1..{params.n - 1}: {pilots}")
        h_values = self.h_min_values
        if h_values is None:
            h_values = tuple(i * params.h_max / 100.0 for i in range(101))
        if not h_values:
            raise InvalidRange("empty h_min grid")
        if any(not 0.0 <= h <= params.h_max for h in h_values):
            raise InvalidRange(f"h_min grid must stay within [0, {params.h_max}]")
        return tuple(pilots), tuple(h_values)


def hybrid_bits(
    params: SystemParams, split: float = 0.5, exact_threshold: bool = False
) -> SecurityReport:
    """Secret bits of the hybrid mechanism at the configured operating point.

    Requires an interior pilot split (1 <= pilots <= n-1): both checks
    must actually run.  The channel check gets split * p_FA of the budget
    and the coding check the rest.
    """
    if not 1 <= params.pilot_count <= params.n - 1:
        raise InvalidPilotCount(
            f"hybrid needs 1 <= pilot_count <= n-1, got {params.pilot_count} of n={params.n}"
        )
    if not 0.0 < split < 1.0:
        raise InvalidRange(f"split must lie in (0, 1), got {split!r}")
    geometry = channel.equivalent_key_bits(params, split * params.p_FA, exact_threshold)
    rates = coding.b_key_hybrid(params, (1.0 - split) * params.p_FA)
    return SecurityReport(
        mechanism="HYBRID",
        b_ch=geometry.b_ch,
        b_key=rates.b_key,
        alpha_used=params.alpha,
        h_min_used=params.h_min,
    )


def baseline_ch(params: SystemParams, exact_threshold: bool = False) -> SecurityReport:
    """Channel-only mechanism: all pilots, h_min = 0, full budget on the test."""
    forced = params.replace(pilot_count=params.n, h_min=0.0)
    geometry = channel.equivalent_key_bits(forced, params.p_FA, exact_threshold)
    return SecurityReport(
        mechanism="CH",
        b_ch=geometry.b_ch,
        b_key=0.0,
        alpha_used=1.0,
        h_min_used=0.0,
    )


def baseline_cd(params: SystemParams) -> SecurityReport:
    """Coding-only mechanism: no pilots, amplitude pinned at h_max, full budget."""
    forced = params.replace(pilot_count=0, h_min=params.h_max)
    rates = coding.b_key_cd(forced, params.p_FA)
    return SecurityReport(
        mechanism="CD",
        b_ch=0.0,
        b_key=rates.b_key,
        alpha_used=0.0,
        h_min_used=params.h_max,
    )


def _better(candidate: SecurityReport, incumbent: SecurityReport | None) -> bool:
    # Ties prefer fewer pilots, then a larger h_min.
    if incumbent is None:
        return True
    if candidate.b_tot != incumbent.b_tot:
        return candidate.b_tot > incumbent.b_tot
    if candidate.alpha_used != incumbent.alpha_used:
        return candidate.alpha_used < incumbent.alpha_used
    return candidate.h_min_used > incumbent.h_min_used


def optimize(
    params: SystemParams,
    grid: OptimizationGrid = OptimizationGrid(),
    exact_threshold: bool = False,
) -> SecurityReport:
    """Exhaustive grid search for the (pilot count, h_min) maximizing b_tot.

    Deterministic regardless of grid ordering: the winner is the strict
    lexicographic maximum of (b_tot, -alpha, h_min).
    """
    best: SecurityReport | None = None
    for report in evaluate_grid(params, grid, exact_threshold):
        if _better(report, best):
            best = report
    assert best is not None  # grids resolve to at least one cell
    return best


def evaluate_grid(
    params: SystemParams,
    grid: OptimizationGrid = OptimizationGrid(),
    exact_threshold: bool = False,
):
    """Yield the hybrid report of every grid cell, then the boundary candidate."""
    pilots, h_values = grid.resolve(params)
    for pilot_count in pilots:
        for h_min in h_values:
            point = params.replace(pilot_count=pilot_count, h_min=h_min)
            yield hybrid_bits(point, grid.split, exact_threshold)
    if grid.include_channel_only:
        yield baseline_ch(params, exact_threshold)


def grid_rows(
    params: SystemParams,
    grid: OptimizationGrid = OptimizationGrid(),
    exact_threshold: bool = False,
) -> list[SecurityReport]:
    """Materialized :func:`evaluate_grid`, for CSV dumps of the whole search."""
    return list(evaluate_grid(params, grid, exact_threshold))
