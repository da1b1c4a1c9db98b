"""Channel-check security: how many key bits the estimated-amplitude test
is worth.

The verifier accepts a message when the standardized squared-residual
statistic of the per-frame amplitude estimates stays below a threshold;
geometrically, acceptance means the estimate vector falls inside a
hypersphere around the expected amplitudes.  An attacker who can inject
arbitrary estimates but does not know the per-frame configuration must
land inside that sphere by guessing, and the admissible amplitude vectors
fill 2^F congruent cubes (one per sign pattern) of edge h_max - h_min.
The volume ratio gives the attack-success probability, and its negative
log2 is the equivalent key length.

All volumes are handled in log2 to stay finite for F in the thousands.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import (
    ConvergenceError,
    DimensionMismatch,
    DomainError,
    InvalidPilotCount,
    NarrowMarginWarning,
)
from .params import SystemParams
from .specfun import log_gamma, q_inverse

__all__ = [
    "ChannelGeometry",
    "sigma_h_sq",
    "threshold_from_pfa",
    "threshold_from_pfa_exact",
    "test_statistic",
    "log2_p_succ",
    "equivalent_key_bits",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ChannelGeometry:
    """Acceptance-region geometry of the channel check at one setting.

    ``log2_p_succ`` is min(0, log2 V_sphere - log2 V_cubes); ``b_ch`` is
    its negation.  ``radius`` satisfies radius**2 =
    (sqrt(2F) * tau + F) * sigma_h_sq.
    """

    tau: float
    sigma_h_sq: float
    radius: float
    log2_v_sphere: float
    log2_v_cube: float
    log2_p_succ: float

    @property
    def b_ch(self) -> float:
        return -self.log2_p_succ + 0.0  # normalizes -0.0 at the clamp


def sigma_h_sq(params: SystemParams) -> float:
    """Variance of the per-frame amplitude estimator, 1 / (lambda_B * pilots)."""
    if params.pilot_count < 1:
        raise InvalidPilotCount("amplitude estimation needs at least one pilot per frame")
    return 1.0 / (params.lambda_B * params.pilot_count)


def threshold_from_pfa(p_fa_ch: float) -> float:
    """Acceptance threshold from the asymptotic normal law of the statistic."""
    return q_inverse(p_fa_ch)


def threshold_from_pfa_exact(p_fa_ch: float, F: int) -> float:
    """Threshold from the exact finite-F chi-square law of the statistic.

    Solves chi_square_sf(sqrt(2F) * tau + F, F) = p_fa_ch.  Converges to
    the asymptotic threshold as F grows.
    """
    if not 0.0 < p_fa_ch < 1.0:
        raise DomainError(f"p_fa_ch must lie in (0, 1), got {p_fa_ch!r}")
    if not isinstance(F, int) or F < 1:
        raise DomainError(f"F must be a positive integer, got {F!r}")
    x = 2.0 * float(special.gammainccinv(F / 2.0, p_fa_ch))
    if not math.isfinite(x):
        raise ConvergenceError(f"chi-square inversion failed for p={p_fa_ch}, F={F}")
    return (x - F) / math.sqrt(2.0 * F)


def test_statistic(h_hat: np.ndarray, h: np.ndarray, sigma_sq: float) -> float:
    """Standardized squared-residual statistic over F frames.

    L = (sum_k (h_hat_k - h_k)^2 / sigma_sq - F) / sqrt(2F).  Under the
    legitimate hypothesis the sum is chi-square with F degrees of freedom,
    so L is asymptotically standard normal.  The message is accepted when
    L <= tau.
    """
    h_hat = np.asarray(h_hat, dtype=float)
    h = np.asarray(h, dtype=float)
    if h_hat.shape != h.shape or h_hat.ndim != 1 or h_hat.size == 0:
        raise DimensionMismatch(
            f"need two equal-length 1-D vectors, got shapes {h_hat.shape} and {h.shape}"
        )
    if not sigma_sq > 0.0:
        raise DomainError(f"sigma_sq must be > 0, got {sigma_sq!r}")
    F = h_hat.size
    residual = h_hat - h
    return float((residual @ residual / sigma_sq - F) / math.sqrt(2.0 * F))


def log2_p_succ(params: SystemParams, tau: float) -> float:
    """log2 of the attack-success probability at threshold ``tau``.

    Computed as min(0, F * log2(sqrt(pi * (sqrt(2F) tau + F)) * sigma_h
    / (2 (h_max - h_min))) - log2 Gamma(F/2 + 1)), never materializing the
    volumes themselves.  A zero-width amplitude interval means no challenge
    randomness at all; by convention the attack then succeeds freely
    (returns 0, so b_ch = 0).
    """
    span = params.amplitude_span
    if span == 0.0:
        return 0.0
    F = params.F
    sigma = math.sqrt(sigma_h_sq(params))
    chi = math.sqrt(2.0 * F) * tau + F
    if chi <= 0.0:
        return float("-inf")  # empty acceptance sphere
    radius = math.sqrt(chi) * sigma
    if radius > 0.1 * span:
        # Static message so repeated hits deduplicate to one line per run.
        warnings.warn(
            "sphere radius exceeds 10% of the amplitude span; the boundary-free "
            "volume ratio is a coarse approximation in this regime",
            NarrowMarginWarning,
            stacklevel=2,
        )
    per_frame = math.log2(math.sqrt(math.pi) * radius / (2.0 * span))
    return min(0.0, F * per_frame - log_gamma(F / 2.0 + 1.0) / _LN2)


def equivalent_key_bits(
    params: SystemParams, p_fa_ch: float, exact_threshold: bool = False
) -> ChannelGeometry:
    """Full acceptance-region geometry and equivalent key bits.

    The threshold comes from the asymptotic normal law by default; pass
    ``exact_threshold=True`` to use the finite-F chi-square inverse.
    """
    tau = (
        threshold_from_pfa_exact(p_fa_ch, params.F)
        if exact_threshold
        else threshold_from_pfa(p_fa_ch)
    )
    var = sigma_h_sq(params)
    F = params.F
    chi = math.sqrt(2.0 * F) * tau + F
    radius = math.sqrt(max(chi, 0.0) * var)
    span = params.amplitude_span
    log2_gamma_term = log_gamma(F / 2.0 + 1.0) / _LN2
    if radius > 0.0:
        log2_v_sphere = (F / 2.0) * math.log2(math.pi) + F * math.log2(radius) - log2_gamma_term
    else:
        log2_v_sphere = float("-inf")
    log2_v_cube = F * (1.0 + math.log2(span)) if span > 0.0 else float("-inf")
    return ChannelGeometry(
        tau=tau,
        sigma_h_sq=var,
        radius=radius,
        log2_v_sphere=log2_v_sphere,
        log2_v_cube=log2_v_cube,
        log2_p_succ=log2_p_succ(params, tau),
    )
