"""Security analysis for hybrid challenge-response physical-layer
authentication: channel-geometry key bits, finite-blocklength coding key
bits, their hybrid combination, and Monte Carlo validation of all three.
"""

from .channel import (
    ChannelGeometry,
    equivalent_key_bits,
    log2_p_succ,
    sigma_h_sq,
    test_statistic,
    threshold_from_pfa,
    threshold_from_pfa_exact,
)
from .coding import (
    RateReport,
    avg_rate_hybrid,
    b_key_cd,
    b_key_hybrid,
    dispersion_block_fading,
    eavesdropper_info,
    mutual_info_fixed,
    rate_cd,
)
from .hybrid import OptimizationGrid, baseline_cd, baseline_ch, hybrid_bits, optimize
from .montecarlo import (
    ChallengeDraw,
    EstimatorMoments,
    TrialBatch,
    draw_challenge,
    measure_attack_success,
    measure_false_alarm,
    simulate_pilot_estimation,
)
from .params import (
    MECHANISMS,
    SecurityReport,
    SystemParams,
    load_params,
    params_from_config,
    params_to_config,
    validate,
)
from .specfun import (
    QuadratureSpec,
    chi_square_sf,
    log_gamma,
    q_function,
    q_inverse,
    uniform_expectation,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelGeometry",
    "ChallengeDraw",
    "EstimatorMoments",
    "MECHANISMS",
    "OptimizationGrid",
    "QuadratureSpec",
    "RateReport",
    "SecurityReport",
    "SystemParams",
    "TrialBatch",
    "avg_rate_hybrid",
    "b_key_cd",
    "b_key_hybrid",
    "baseline_cd",
    "baseline_ch",
    "chi_square_sf",
    "dispersion_block_fading",
    "draw_challenge",
    "eavesdropper_info",
    "equivalent_key_bits",
    "hybrid_bits",
    "load_params",
    "log2_p_succ",
    "log_gamma",
    "measure_attack_success",
    "measure_false_alarm",
    "mutual_info_fixed",
    "optimize",
    "params_from_config",
    "params_to_config",
    "q_function",
    "q_inverse",
    "rate_cd",
    "sigma_h_sq",
    "simulate_pilot_estimation",
    "test_statistic",
    "threshold_from_pfa",
    "threshold_from_pfa_exact",
    "uniform_expectation",
    "validate",
]
