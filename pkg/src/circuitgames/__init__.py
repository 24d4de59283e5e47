"""circuitgames: entangler-vs-disentangler circuit games on a 1D chain.

Three model variants (classical RSOS heights, Clifford/stabilizer, Haar
state vector) share one stochastic schedule and trajectory engine, with a
stochastic Fredkin chain as the analytic reference at criticality and a
statistics layer for the phase-transition observables.
"""

__version__ = "0.1.0"

from .config import (
    ConfigError,
    GameConfig,
    OptimizerConfig,
    StepCapExceeded,
    TrajectoryRecord,
    config_hash,
    default_burn_in,
)
from .engine import (
    EnsembleResult,
    Player,
    make_rng,
    run_ensemble,
    run_trajectory,
    schedule_step,
    spawn_trajectory_seed,
)
from .analysis import (
    EnsembleSeries,
    ScalingFit,
    detect_steady_state,
    estimate_tc,
    fit_power_law,
    fss_collapse,
    fss_scan_nu,
    spatial_correlation,
    spatial_fluctuations,
    temporal_fluctuations,
)

__all__ = [
    "ConfigError",
    "EnsembleResult",
    "EnsembleSeries",
    "GameConfig",
    "OptimizerConfig",
    "Player",
    "ScalingFit",
    "StepCapExceeded",
    "TrajectoryRecord",
    "config_hash",
    "default_burn_in",
    "detect_steady_state",
    "estimate_tc",
    "fit_power_law",
    "fss_collapse",
    "fss_scan_nu",
    "make_rng",
    "run_ensemble",
    "run_trajectory",
    "schedule_step",
    "spatial_correlation",
    "spatial_fluctuations",
    "spawn_trajectory_seed",
    "temporal_fluctuations",
]
