"""Parameter sweeps: evaluate mechanisms along one swept variable and
emit deterministic CSV.

A sweep spec is a JSON object::

    {
      "sweep": {"variable": "h_min", "values": [0.0, 0.01, ...]},
      "mechanisms": ["CH", "CD", "HYBRID", "HYBRID_OPT"],
      "params": { ... same schema as a point config ... }
    }

``variable`` is one of h_min, lambda_ratio, lambda_B_dB, F, alpha.
Sweeping lambda_B_dB preserves the configured attacker/legitimate SNR
ratio.  HYBRID rows evaluate the configured pilot split and h_min;
HYBRID_OPT rows run the optimizer per point, with the swept dimension
pinned when it is itself a search dimension (h_min or alpha).

CSV rows appear in (value, mechanism) input order with columns
swept_var, value, mechanism, alpha_used, h_min_used, b_ch, b_key, b_tot;
floats carry 12 significant digits and lines end with a bare newline, so
output is byte-stable across runs and worker counts.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import hybrid
from .errors import ConfigParseError
from .params import SecurityReport, SystemParams, params_from_config

__all__ = ["SweepSpec", "load_sweep_spec", "run_sweep", "write_csv", "CSV_COLUMNS"]

SWEEP_VARIABLES = ("h_min", "lambda_ratio", "lambda_B_dB", "F", "alpha")
SWEEP_MECHANISMS = ("CH", "CD", "HYBRID", "HYBRID_OPT")
CSV_COLUMNS = ("swept_var", "value", "mechanism", "alpha_used", "h_min_used", "b_ch", "b_key", "b_tot")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple[float, ...]
    mechanisms: tuple[str, ...]
    params: SystemParams

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigParseError(
                f"swept variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}"
            )
        if not self.values:
            raise ConfigParseError("sweep value list must not be empty")
        if not self.mechanisms:
            raise ConfigParseError("mechanism list must not be empty")
        unknown = set(self.mechanisms) - set(SWEEP_MECHANISMS)
        if unknown:
            raise ConfigParseError(f"unknown mechanisms: {sorted(unknown)}")


def load_sweep_spec(path: str) -> SweepSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, Mapping):
        raise ConfigParseError(f"{path}: top-level JSON value must be an object")
    unknown = set(raw) - {"sweep", "mechanisms", "params"}
    if unknown:
        raise ConfigParseError(f"unknown top-level keys in sweep spec: {sorted(unknown)}")
    for key in ("sweep", "mechanisms", "params"):
        if key not in raw:
            raise ConfigParseError(f"sweep spec missing key {key!r}")
    sweep_block = raw["sweep"]
    if not isinstance(sweep_block, Mapping) or set(sweep_block) != {"variable", "values"}:
        raise ConfigParseError("'sweep' must be an object with keys 'variable' and 'values'")
    values = sweep_block["values"]
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise ConfigParseError("'sweep.values' must be a list of numbers")
    mechanisms = raw["mechanisms"]
    if not isinstance(mechanisms, list):
        raise ConfigParseError("'mechanisms' must be a list")
    return SweepSpec(
        variable=sweep_block["variable"],
        values=tuple(float(v) for v in values),
        mechanisms=tuple(mechanisms),
        params=params_from_config(raw["params"]),
    )


def apply_swept_value(params: SystemParams, variable: str, value: float) -> SystemParams:
    """Base parameters with one swept variable replaced."""
    if variable == "h_min":
        return params.replace(h_min=value)
    if variable == "lambda_ratio":
        return params.replace(lambda_T=value * params.lambda_B)
    if variable == "lambda_B_dB":
        lambda_b = 10.0 ** (value / 10.0)
        ratio = params.lambda_T / params.lambda_B
        return params.replace(lambda_B=lambda_b, lambda_T=ratio * lambda_b)
    if variable == "F":
        if value != int(value):
            raise ConfigParseError(f"F sweep values must be integers, got {value!r}")
        return params.replace(F=int(value))
    if variable == "alpha":
        return params.with_alpha(value)
    raise ConfigParseError(f"unknown swept variable {variable!r}")


def _opt_grid(params: SystemParams, variable: str) -> hybrid.OptimizationGrid:
    # A swept search dimension stays pinned at the swept value; the
    # channel-only endpoint only belongs to the fully free search.
    if variable == "h_min":
        return hybrid.OptimizationGrid(h_min_values=(params.h_min,), include_channel_only=False)
    if variable == "alpha":
        return hybrid.OptimizationGrid(pilot_counts=(params.pilot_count,), include_channel_only=False)
    return hybrid.OptimizationGrid()


def evaluate_point(task: tuple) -> list[SecurityReport]:
    """All requested mechanism reports at one swept value (pool worker)."""
    params, variable, value, mechanisms, exact_threshold = task
    point = apply_swept_value(params, variable, value)
    reports: list[SecurityReport] = []
    for mechanism in mechanisms:
        if mechanism == "CH":
            reports.append(hybrid.baseline_ch(point, exact_threshold))
        elif mechanism == "CD":
            reports.append(hybrid.baseline_cd(point))
        elif mechanism == "HYBRID":
            reports.append(hybrid.hybrid_bits(point, exact_threshold=exact_threshold))
        else:
            # The optimizer may saturate to a baseline report; the row is
            # still labeled with the requested mechanism.
            reports.append(
                hybrid.optimize(point, _opt_grid(point, variable), exact_threshold)
            )
    return reports


def run_sweep(
    spec: SweepSpec, jobs: int = 1, exact_threshold: bool = False
) -> list[tuple[float, str, SecurityReport]]:
    """Evaluate the whole sweep; rows come back in input order."""
    tasks = [
        (spec.params, spec.variable, value, spec.mechanisms, exact_threshold)
        for value in spec.values
    ]
    if jobs <= 1 or len(tasks) <= 1:
        per_point = [evaluate_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_point = list(pool.map(evaluate_point, tasks))
    rows: list[tuple[float, str, SecurityReport]] = []
    for value, reports in zip(spec.values, per_point):
        for label, report in zip(spec.mechanisms, reports):
            rows.append((value, label, report))
    return rows


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def report_row(variable: str, value: float, label: str, report: SecurityReport) -> str:
    return ",".join(
        (
            variable,
            _fmt(value),
            label,
            _fmt(report.alpha_used),
            _fmt(report.h_min_used),
            _fmt(report.b_ch),
            _fmt(report.b_key),
            _fmt(report.b_tot),
        )
    )


def write_csv(
    rows: Sequence[tuple[float, str, SecurityReport]], variable: str, path: str
) -> None:
    """Write rows atomically: the target file appears complete or not at all."""
    payload = ",".join(CSV_COLUMNS) + "\n"
    for value, label, report in rows:
        payload += report_row(variable, value, label, report) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".sweep-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise

