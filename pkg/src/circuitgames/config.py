"""Run configuration and per-trajectory records shared by all game variants."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, asdict

import numpy as np

MODELS = ("classical", "clifford", "haar", "fredkin")

#: Critical disentangler rate per model (classical/fredkin exact, clifford numerical).
P_CRITICAL = {"classical": 0.5, "fredkin": 0.5, "clifford": 0.382}


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


class StepCapExceeded(RuntimeError):
    """A bounded stochastic procedure ran past its step cap."""


@dataclass
class OptimizerConfig:
    """Knobs for the derivative-free bond-entropy minimizer (haar model only).

    ``renyi_order`` selects which Renyi entropy the disentangler minimizes;
    1 means von Neumann.
    """

    n_starts: int = 8
    max_iterations: int = 400
    xatol: float = 1e-4
    fatol: float = 1e-7
    entropy_convergence_threshold: float = 1e-9
    renyi_order: float = 1.0

    def validate(self):
        if self.n_starts < 1:
            raise ConfigError("n_starts must be >= 1")
        if min(self.xatol, self.fatol, self.entropy_convergence_threshold) <= 0:
            raise ConfigError("optimizer tolerances must be positive")
        if self.renyi_order < 1:
            raise ConfigError("renyi_order must be >= 1")


@dataclass
class GameConfig:
    """Full specification of one (model, L, p) ensemble.

    ``p`` is the disentangler probability; for the fredkin model it is read
    as the rate parameter c.  One time step is a set of L updating steps
    (dt = 1/L per update).
    """

    model: str
    L: int
    p: float
    master_seed: int = 0
    n_trajectories: int = 1
    t_burn: int | None = None  # None -> default_burn_in()
    t_measure: int = 100
    measure_every: int = 1
    record_profiles: bool = False
    record_burn: bool = False
    initial: str = "default"  # classical: flat|pyramid, haar: product|haar
    strategy: str = "ordered_19"  # clifford disentangler strategy
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    profile_every: int | None = None  # profile cadence; None -> measure_every

    def validate(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if self.L < 2:
            raise ConfigError("L must be >= 2")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError("p must lie in [0, 1]")
        if self.model == "fredkin":
            if self.L % 2:
                raise ConfigError("fredkin requires even L (half filling)")
            if not 0.0 < self.p < 1.0:
                raise ConfigError("fredkin rate c must lie in (0, 1)")
        if self.n_trajectories < 1:
            raise ConfigError("n_trajectories must be >= 1")
        if self.t_measure < 1:
            raise ConfigError("t_measure must be >= 1")
        if self.measure_every < 1:
            raise ConfigError("measure_every must be >= 1")
        if self.t_burn is not None and self.t_burn < 0:
            raise ConfigError("t_burn must be >= 0")
        if self.model == "clifford" and self.strategy not in (
            "ordered_19",
            "random_19",
            "random_full",
        ):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.model == "haar" and self.L > 16:
            raise ConfigError("haar model is capped at L = 16")
        self.optimizer.validate()
        return self

    @property
    def burn_in(self) -> int:
        return self.t_burn if self.t_burn is not None else default_burn_in(self.model, self.L, self.p)

    def to_dict(self) -> dict:
        return asdict(self)

    def hash(self) -> str:
        return config_hash(self.to_dict())


def default_burn_in(model: str, L: int, p: float) -> int:
    """Equilibration length: 5 L^2 time steps near criticality (z = 2),
    10 L deep in either phase.  "Near" means within 0.06 of the model's
    critical rate; the haar model has no transition and equilibrates fast."""
    pc = P_CRITICAL.get(model)
    if pc is not None and abs(p - pc) <= 0.06:
        return 5 * L * L
    return 10 * L


def config_hash(config: dict) -> str:
    """Stable 16-hex-digit digest of a config dict (canonical JSON)."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), default=float)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class TrajectoryRecord:
    """Observable time series from a single trajectory.

    ``times`` are in time-step units and strictly increasing; ``profiles``
    (optional) holds one entropy/height profile per profile-cadence row.
    """

    config_hash: str
    trajectory_index: int
    seed: int
    times: np.ndarray
    s_half: np.ndarray
    profiles: np.ndarray | None = None
    profile_times: np.ndarray | None = None

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("timestamps must be strictly increasing")
        if len(self.times) != len(self.s_half):
            raise ValueError("times and s_half length mismatch")
