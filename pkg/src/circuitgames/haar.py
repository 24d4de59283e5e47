"""Haar-random U(4) game with a derivative-free entropy-minimizing player.

The disentangler searches a 9-parameter family: three Ising-type
interaction angles (XX, YY, ZZ) times a pre-rotation Euler triple per
qubit.  Single-qubit unitaries applied after the gate cannot change the
bond entropy, which is why 9 parameters (not 15) span all achievable
entropies.  Minimization is multi-start Nelder-Mead with the identity as
one start, so the accepted move never increases the entropy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .config import OptimizerConfig

MAX_QUBITS = 16
LOG2 = math.log(2.0)

# Bell basis diagonalizes the commuting family {XX, YY, ZZ}; columns are
# |Phi+>, |Phi->, |Psi+>, |Psi-> with eigenvalue rows below.
_BELL = np.array(
    [
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, -1, 0, 0],
    ],
    dtype=np.float64,
) / math.sqrt(2.0)
_EIG_XX = np.array([1.0, -1.0, 1.0, -1.0])
_EIG_YY = np.array([-1.0, 1.0, 1.0, -1.0])
_EIG_ZZ = np.array([1.0, 1.0, -1.0, -1.0])


def sample_haar_u4(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed 4x4 unitary: Ginibre draw, QR, phase fixing."""
    g = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / math.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def euler_rotation(a: float, b: float, c: float) -> np.ndarray:
    """Single-qubit ZYZ rotation Rz(a) Ry(b) Rz(c)."""
    ca, sa = math.cos(a / 2), math.sin(a / 2)
    cb, sb = math.cos(b / 2), math.sin(b / 2)
    cc, sc = math.cos(c / 2), math.sin(c / 2)
    rz_a = np.array([[ca - 1j * sa, 0], [0, ca + 1j * sa]])
    ry_b = np.array([[cb, -sb], [sb, cb]])
    rz_c = np.array([[cc - 1j * sc, 0], [0, cc + 1j * sc]])
    return rz_a @ ry_b @ rz_c


def interaction_unitary(tx: float, ty: float, tz: float) -> np.ndarray:
    """exp(i (tx XX + ty YY + tz ZZ)), evaluated in the Bell eigenbasis."""
    phases = np.exp(1j * (tx * _EIG_XX + ty * _EIG_YY + tz * _EIG_ZZ))
    return (_BELL * phases) @ _BELL.T


def gate_from_params(theta) -> np.ndarray:
    """U(theta) = exp(i(t1 XX + t2 YY + t3 ZZ)) (R(t4,t5,t6) x R(t7,t8,t9))."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (9,) or not np.all(np.isfinite(theta)):
        raise ValueError("theta must be 9 finite reals")
    u_int = interaction_unitary(theta[0], theta[1], theta[2])
    locals_ = np.kron(euler_rotation(*theta[3:6]), euler_rotation(*theta[6:9]))
    return u_int @ locals_


def _check_unitary(U: np.ndarray, tol: float = 1e-12):
    if U.shape != (4, 4) or not np.allclose(U.conj().T @ U, np.eye(4), atol=tol):
        raise ValueError("gate is not unitary within tolerance")


def renyi_from_schmidt(lam2: np.ndarray, alpha: float) -> float:
    """Entropy in bits from squared Schmidt coefficients, clamped at 1e-14."""
    lam2 = lam2[lam2 > 1e-14]
    if lam2.size == 0:
        return 0.0
    if alpha == 1.0:
        return float(-np.sum(lam2 * np.log2(lam2)))
    return float(np.log2(np.sum(lam2 ** alpha)) / (1.0 - alpha))


class StateVector:
    """Dense 2^L amplitudes, renormalized after every gate; qubit 1 is the
    slowest index, so the cut {1..x}|{x+1..L} reshapes to 2^x by 2^(L-x)."""

    def __init__(self, amplitudes: np.ndarray, L: int):
        if L < 2 or L > MAX_QUBITS:
            raise ValueError(f"L must lie in 2..{MAX_QUBITS}")
        if amplitudes.shape != (2**L,):
            raise ValueError("amplitude count must be 2^L")
        self.L = L
        self.psi = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        n = np.linalg.norm(self.psi)
        if abs(n - 1.0) > 1e-10:
            raise ValueError("state must be normalized")

    @classmethod
    def product(cls, L: int) -> "StateVector":
        psi = np.zeros(2**L, dtype=np.complex128)
        psi[0] = 1.0
        return cls(psi, L)

    @classmethod
    def haar_random(cls, L: int, rng: np.random.Generator) -> "StateVector":
        psi = rng.normal(size=2**L) + 1j * rng.normal(size=2**L)
        return cls(psi / np.linalg.norm(psi), L)

    def copy(self) -> "StateVector":
        out = StateVector.__new__(StateVector)
        out.L = self.L
        out.psi = self.psi.copy()
        return out

    def apply_two_qubit(self, U: np.ndarray, x: int, check: bool = True):
        """Act with a 4x4 unitary on the qubit pair (x, x+1)."""
        self._check_bond(x)
        if check:
            _check_unitary(U)
        self.psi = _apply(self.psi, U, x, self.L)
        self.psi /= np.linalg.norm(self.psi)
        return self

    def bond_entropy(self, x: int, alpha: float = 1.0) -> float:
        self._check_bond(x)
        m = self.psi.reshape(2**x, 2 ** (self.L - x))
        s = np.linalg.svd(m, compute_uv=False)
        return renyi_from_schmidt(s**2, alpha)

    def entropy_profile(self, alpha: float = 1.0) -> np.ndarray:
        return np.array([self.bond_entropy(x, alpha) for x in range(1, self.L)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.psi))

    def _check_bond(self, x: int):
        if not 1 <= x <= self.L - 1:
            raise IndexError(f"bond {x} outside 1..{self.L - 1}")


def _apply(psi: np.ndarray, U: np.ndarray, x: int, L: int) -> np.ndarray:
    block = psi.reshape(2 ** (x - 1), 4, 2 ** (L - x - 1))
    return np.einsum("ab,ibj->iaj", U, block).reshape(-1)


@dataclass
class MinimizeInfo:
    """Diagnostics of one disentangler optimization."""

    s_before: float
    s_after: float
    n_evaluations: int
    converged: bool
    best_start: int


def minimize_bond_entropy(
    state: StateVector,
    x: int,
    cfg: OptimizerConfig,
    rng: np.random.Generator,
) -> tuple:
    """Multi-start simplex minimization of the bond entropy at x.

    Applies the best gate found and returns (state, dS, info) with
    dS = S_before - S_after >= -1e-9 (identity is always a candidate).
    Hitting the iteration cap is reported in info, not raised.
    """
    alpha = cfg.renyi_order
    s0 = state.bond_entropy(x, alpha)
    if s0 < cfg.entropy_convergence_threshold:
        return state, 0.0, MinimizeInfo(s0, s0, 0, True, -1)

    psi = state.psi
    L = state.L
    evals = 0

    def objective(theta):
        nonlocal evals
        evals += 1
        phi = _apply(psi, gate_from_params(theta), x, L)
        m = phi.reshape(2**x, 2 ** (L - x))
        s = np.linalg.svd(m, compute_uv=False)
        return renyi_from_schmidt(s**2, alpha)

    best_s, best_theta, best_start = s0, None, -1
    hit_cap = False
    for start in range(cfg.n_starts):
        theta0 = np.zeros(9) if start == 0 else rng.uniform(-math.pi, math.pi, 9)
        res = minimize(
            objective,
            theta0,
            method="Nelder-Mead",
            options={
                "maxiter": cfg.max_iterations,
                "xatol": cfg.xatol,
                "fatol": cfg.fatol,
            },
        )
        if res.fun < best_s:
            best_s, best_theta, best_start = float(res.fun), res.x.copy(), start
        if not res.success:
            hit_cap = True
        if best_s < cfg.entropy_convergence_threshold:
            break

    if best_theta is not None:
        state.apply_two_qubit(gate_from_params(best_theta), x, check=False)
        s_after = state.bond_entropy(x, alpha)
    else:
        s_after = s0
    info = MinimizeInfo(s0, s_after, evals, not hit_cap, best_start)
    return state, s0 - s_after, info


class HaarGame:
    """Game-protocol wrapper around the state-vector model."""

    def __init__(self, L: int, initial: str = "product", optimizer: OptimizerConfig | None = None):
        self.cfg = optimizer or OptimizerConfig()
        self._initial = initial
        if initial in ("product", "default"):
            self.state = StateVector.product(L)
            self._lazy_haar = False
        elif initial == "haar":
            self.state = StateVector.product(L)
            self._lazy_haar = True  # sampled from the trajectory rng
        else:
            raise ValueError(f"unknown initial condition {initial!r}")

    @property
    def L(self) -> int:
        return self.state.L

    @property
    def n_bonds(self) -> int:
        return self.state.L - 1

    def entangle(self, x: int, rng):
        self.state.apply_two_qubit(sample_haar_u4(rng), x, check=False)

    def disentangle(self, x: int, rng):
        minimize_bond_entropy(self.state, x, self.cfg, rng)

    def advance(self, rng, p: float, n_steps: int):
        if self._lazy_haar:
            self.state = StateVector.haar_random(self.L, rng)
            self._lazy_haar = False
        from .engine import advance_generic

        advance_generic(self, rng, p, n_steps)

    def profile(self) -> np.ndarray:
        return self.state.entropy_profile(self.cfg.renyi_order)

    def s_half(self) -> float:
        return self.state.bond_entropy(self.L // 2, self.cfg.renyi_order)


def harmonic_number(n: int) -> float:
    return sum(1.0 / k for k in range(1, n + 1))


def haar_disentangle_experiment(
    L: int,
    n_e: int,
    rng: np.random.Generator,
    cfg: OptimizerConfig | None = None,
    threshold_bits: float | None = None,
    step_cap: int | None = None,
) -> tuple:
    """Entangle with n_e Haar gates on random bonds, then probe random
    bonds with the minimizer until sum_x S_x drops below the threshold
    (default 1e-3 L nats, stored in bits).  Returns (n_d, censored); a
    censored run hit step_cap before disentangling.
    """
    cfg = cfg or OptimizerConfig()
    if threshold_bits is None:
        threshold_bits = 1e-3 * L / LOG2
    if step_cap is None:
        step_cap = 1000 * L
    state = StateVector.product(L)
    alpha = cfg.renyi_order
    prof = np.zeros(L + 1)
    for _ in range(n_e):
        x = 1 + int(rng.integers(0, L - 1))
        state.apply_two_qubit(sample_haar_u4(rng), x, check=False)
        prof[x] = state.bond_entropy(x, alpha)

    # bonds this far below the stopping threshold cannot matter; probing
    # them still counts a step but skips the optimizer
    skip_eps = 0.1 * threshold_bits / L
    n_d = 0
    while prof.sum() >= threshold_bits:
        if n_d >= step_cap:
            return n_d, True
        x = 1 + int(rng.integers(0, L - 1))
        n_d += 1
        if prof[x] > skip_eps:
            minimize_bond_entropy(state, x, cfg, rng)
            prof[x] = state.bond_entropy(x, alpha)
    return n_d, False
