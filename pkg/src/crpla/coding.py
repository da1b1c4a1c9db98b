"""Coding-check security: achievable key bits under finite-length wiretap
coding.

Two channel regimes are covered.  With the configuration pinned at h_max
(pure coding mechanism) the rate uses the fixed-SNR normal approximation
with dispersion S(S+2)/(S+1)^2 * log2(e)^2 over all n*F symbols.  With a
per-frame random amplitude (hybrid mechanism) the average rate uses the
block-fading normal approximation whose dispersion term is
n' * Var[I] + 1 - E[1/(1+h^2*lambda_B)]^2 over the n'*F data symbols.
The two dispersion formulas come from different normal-approximation
results and do NOT coincide in the degenerate (h_min = h_max) limit: the
block-fading one lacks the log2(e)^2 factor.  Both are implemented
verbatim; reconciling them is out of scope.

The key budget is the smaller of what the legitimate rate leaves after
the message and what the eavesdropper's rate concedes, clamped at zero.
Negative intermediate budgets are preserved in the report for
diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NumericError
from .params import SystemParams
from .specfun import DEFAULT_QUADRATURE, QuadratureSpec, q_inverse, uniform_expectation

__all__ = [
    "RateReport",
    "mutual_info_fixed",
    "eavesdropper_info",
    "rate_cd",
    "b_key_cd",
    "dispersion_block_fading",
    "avg_rate_hybrid",
    "b_key_hybrid",
]

_LOG2E = 1.0 / math.log(2.0)


@dataclass(frozen=True)
class RateReport:
    """Rates and key-bit budgets for one coding configuration.

    ``b_key_1`` (rate budget minus message) and ``b_key_2`` (secrecy
    budget against the eavesdropper) may be negative; ``b_key`` is their
    clamped minimum.
    """

    i_xy: float
    i_xz: float
    dispersion: float
    rate: float
    b_key_1: float
    b_key_2: float

    @property
    def b_key(self) -> float:
        return max(0.0, min(self.b_key_1, self.b_key_2))


def mutual_info_fixed(h: float, lambda_b: float) -> float:
    """Gaussian-input mutual information log2(1 + h^2 * lambda_B), bits/symbol."""
    if h < 0.0 or lambda_b <= 0.0:
        raise NumericError(f"need h >= 0 and lambda_b > 0, got h={h!r}, lambda_b={lambda_b!r}")
    return math.log1p(h * h * lambda_b) * _LOG2E


def eavesdropper_info(lambda_t: float) -> float:
    """Upper bound log2(1 + lambda_T) on the attacker's rate, bits/symbol.

    Deliberately keeps no finite-length back-off: granting the attacker
    the asymptotic rate is the conservative direction for security.
    """
    if lambda_t <= 0.0:
        raise NumericError(f"lambda_t must be > 0, got {lambda_t!r}")
    return math.log1p(lambda_t) * _LOG2E


def rate_cd(params: SystemParams, p_fa_cd: float) -> float:
    """Achievable rate over n*F symbols at fixed amplitude h_max.

    R = log2(1+S) - sqrt(S(S+2) log2(e)^2 / ((S+1)^2 n F)) * Qinv(p),
    with S = h_max^2 * lambda_B.  May be negative for tiny blocklengths;
    downstream budgets clamp.
    """
    s = params.h_max * params.h_max * params.lambda_B
    n_total = params.n * params.F
    dispersion = s * (s + 2.0) / ((s + 1.0) ** 2) * _LOG2E**2
    return mutual_info_fixed(params.h_max, params.lambda_B) - math.sqrt(
        dispersion / n_total
    ) * q_inverse(p_fa_cd)


def b_key_cd(params: SystemParams, p_fa_cd: float) -> RateReport:
    """Key budget of the pure coding mechanism (no pilots, amplitude h_max)."""
    rate = rate_cd(params, p_fa_cd)
    i_xz = eavesdropper_info(params.lambda_T)
    n_total = params.n * params.F
    s = params.h_max * params.h_max * params.lambda_B
    return RateReport(
        i_xy=mutual_info_fixed(params.h_max, params.lambda_B),
        i_xz=i_xz,
        dispersion=s * (s + 2.0) / ((s + 1.0) ** 2) * _LOG2E**2,
        rate=rate,
        b_key_1=n_total * rate - params.b_M,
        b_key_2=n_total * (rate - i_xz),
    )


@lru_cache(maxsize=4096)
def _uniform_amplitude_stats(
    h_min: float, h_max: float, lambda_b: float, rel_tol: float, max_subdivisions: int
) -> tuple[float, float, float]:
    """(E[I], Var[I], E[1/(1+h^2 lambda)]) for h uniform on [h_min, h_max]."""
    if h_min == h_max:
        info = mutual_info_fixed(h_min, lambda_b)
        return info, 0.0, 1.0 / (1.0 + h_min * h_min * lambda_b)
    spec = QuadratureSpec(rel_tol=rel_tol, max_subdivisions=max_subdivisions)

    def info(h: float) -> float:
        return math.log1p(h * h * lambda_b) * _LOG2E

    mean_info = uniform_expectation(info, h_min, h_max, spec)
    mean_info_sq = uniform_expectation(lambda h: info(h) ** 2, h_min, h_max, spec)
    mean_inv = uniform_expectation(
        lambda h: 1.0 / (1.0 + h * h * lambda_b), h_min, h_max, spec
    )
    variance = mean_info_sq - mean_info * mean_info
    if variance < -1e-9:
        raise NumericError(
            f"variance of the per-frame information came out {variance}; "
            "quadrature tolerances are inconsistent"
        )
    return mean_info, max(0.0, variance), mean_inv


def _stats(params: SystemParams, spec: QuadratureSpec) -> tuple[float, float, float]:
    return _uniform_amplitude_stats(
        params.h_min, params.h_max, params.lambda_B, spec.rel_tol, spec.max_subdivisions
    )


def dispersion_block_fading(
    params: SystemParams, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Dispersion of the per-frame random-amplitude channel.

    V = n' * Var[I] + 1 - E[1/(1 + h^2 lambda_B)]^2 with the moments taken
    over h uniform on [h_min, h_max].  The variance term vanishes when the
    interval collapses to a point.
    """
    _, variance, mean_inv = _stats(params, spec)
    return params.n_data * variance + 1.0 - mean_inv * mean_inv


def avg_rate_hybrid(
    params: SystemParams, p_fa_cd: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Average achievable rate over the n'*F data symbols.

    Rbar = E[I] - sqrt(V / (n' F)) * Qinv(p) with V from
    :func:`dispersion_block_fading`.
    """
    n_data_total = params.n_data * params.F
    if n_data_total < 1:
        raise NumericError("average rate needs at least one data symbol")
    mean_info, _, _ = _stats(params, spec)
    v = dispersion_block_fading(params, spec)
    return mean_info - math.sqrt(v / n_data_total) * q_inverse(p_fa_cd)


def b_key_hybrid(
    params: SystemParams, p_fa_cd: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> RateReport:
    """Key budget of the coding check inside the hybrid mechanism.

    Uses the block-fading average rate over the n' data symbols of each
    frame.  An all-pilot frame carries no codeword: the report then has
    rate 0 and b_key 0 by convention.
    """
    mean_info, _, _ = _stats(params, spec)
    i_xz = eavesdropper_info(params.lambda_T)
    v = dispersion_block_fading(params, spec)
    if params.n_data == 0:
        return RateReport(
            i_xy=mean_info,
            i_xz=i_xz,
            dispersion=v,
            rate=0.0,
            b_key_1=-float(params.b_M),
            b_key_2=0.0,
        )
    rate = avg_rate_hybrid(params, p_fa_cd, spec)
    n_data_total = params.n_data * params.F
    return RateReport(
        i_xy=mean_info,
        i_xz=i_xz,
        dispersion=v,
        rate=rate,
        b_key_1=n_data_total * rate - params.b_M,
        b_key_2=n_data_total * (rate - i_xz),
    )
