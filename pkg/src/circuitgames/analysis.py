"""Ensemble statistics and scaling analysis.

All estimators are pure functions of their inputs.  Height profiles and
entropies arrive as plain arrays; nothing here touches the simulators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats


@dataclass
class EnsembleSeries:
    """Per-time ensemble mean/variance of the half-chain observable."""

    model: str
    p: float
    L: int
    times: np.ndarray
    mean_s_half: np.ndarray
    var_s_half: np.ndarray
    n_trajectories: int
    mean_profile: np.ndarray | None = None

    def __post_init__(self):
        if self.n_trajectories < 1:
            raise ValueError("need at least one trajectory")
        if np.any(self.var_s_half < 0):
            raise ValueError("variance must be non-negative")

    @property
    def sem_s_half(self) -> np.ndarray:
        return np.sqrt(self.var_s_half / self.n_trajectories)


@dataclass
class ScalingFit:
    """Power-law fit result on a log-log window."""

    exponent: float
    stderr: float
    window: tuple
    r2: float
    prefactor: float = math.nan
    n_points: int = 0


def detect_steady_state(times, values, window: int, tol: float = 2.0) -> float:
    """Earliest time at which two consecutive length-``window`` blocks have
    means within tol pooled standard errors of each other.  Returns
    math.inf if the series never settles within the data."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(values) < 2 * window:
        raise ValueError("series shorter than 2*window")
    for i in range(len(values) - 2 * window + 1):
        a = values[i : i + window]
        b = values[i + window : i + 2 * window]
        pooled = math.sqrt((a.var() + b.var()) / window)
        if abs(a.mean() - b.mean()) <= tol * pooled:
            return float(times[i + window])
    return math.inf


def spatial_fluctuations(profiles) -> float:
    """Steady-state roughness W: snapshot-averaged rms deviation from the
    snapshot-mean profile, rms taken over bonds within each snapshot."""
    profiles = np.asarray(profiles, dtype=float)
    if profiles.ndim != 2 or profiles.shape[0] < 2:
        raise ValueError("need >= 2 profile snapshots")
    mean_prof = profiles.mean(axis=0)
    per_snapshot = np.sqrt(np.mean((profiles - mean_prof) ** 2, axis=1))
    return float(per_snapshot.mean())


def temporal_fluctuations(values) -> np.ndarray:
    """Cross-trajectory std dev at each time: w(t) = sqrt(E[S^2]-E[S]^2).

    ``values`` has one row per trajectory, one column per recorded time.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] < 2:
        raise ValueError("need >= 2 trajectories")
    return values.std(axis=0)


def spatial_correlation(profiles, center: int, r_max: int | None = None) -> np.ndarray:
    """Height-difference correlation G(r) = sqrt(mean (S_c - S_{c+r})^2)
    for r = 1..r_max, averaged over the given snapshots.  ``center`` is a
    0-based column index; snapshots should come from the growth regime and
    the caller restricts the fit window to the active region."""
    profiles = np.asarray(profiles, dtype=float)
    if profiles.ndim != 2:
        raise ValueError("profiles must be 2-D (snapshots x bonds)")
    width = profiles.shape[1]
    if r_max is None:
        r_max = width - 1 - center
    r_max = min(r_max, width - 1 - center)
    if r_max < 1:
        raise ValueError("no room to the right of center")
    out = np.empty(r_max)
    ref = profiles[:, center]
    for r in range(1, r_max + 1):
        out[r - 1] = np.sqrt(np.mean((ref - profiles[:, center + r]) ** 2))
    return out


def fit_power_law(xs, ys, window: tuple | None = None) -> ScalingFit:
    """Least-squares y = a * x^b on log-log, restricted to window (lo, hi)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if window is None:
        window = (xs.min(), xs.max())
    lo, hi = window
    mask = (xs >= lo) & (xs <= hi)
    if not mask.any():
        raise ValueError("empty fit window")
    x, y = xs[mask], ys[mask]
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("power-law fit needs positive data in the window")
    res = stats.linregress(np.log(x), np.log(y))
    return ScalingFit(
        exponent=float(res.slope),
        stderr=float(res.stderr),
        window=(float(lo), float(hi)),
        r2=float(res.rvalue**2),
        prefactor=float(math.exp(res.intercept)),
        n_points=int(mask.sum()),
    )


def estimate_tc(
    critical_curve,
    offcritical_curve,
    crit_window: tuple | None = None,
    linear_slope_min: float = 0.8,
) -> float:
    """Crossover time between critical t^(1/4) growth and linear growth.

    The t^(1/4) amplitude A is fitted on the critical curve (slope pinned
    to 1/4); the linear amplitude B is fitted on the late window of the
    off-critical curve, located as the trailing region whose running
    log-log slope exceeds ``linear_slope_min``.  The crossover is the
    intersection A t^(1/4) = B t.
    """
    tc_, sc_ = _as_curve(critical_curve)
    to_, so_ = _as_curve(offcritical_curve)

    if crit_window is None:
        crit_window = (10.0, tc_.max())
    m = (tc_ >= crit_window[0]) & (tc_ <= crit_window[1]) & (sc_ > 0)
    if m.sum() < 3:
        raise ValueError("critical fit window too small")
    log_a = np.mean(np.log(sc_[m]) - 0.25 * np.log(tc_[m]))

    pos = (so_ > 0) & (to_ > 0)
    t, s = to_[pos], so_[pos]
    logt, logs = np.log(t), np.log(s)
    # trailing window whose running log-log slope stays near one
    k = max(3, len(t) // 20)
    n = len(t)
    if n < 2 * k:
        raise ValueError("off-critical curve too short")

    def slope(i):
        return (logs[i + k] - logs[i]) / (logt[i + k] - logt[i])

    if slope(n - 1 - k) < linear_slope_min:
        raise ValueError("regimes not separable: no linear window found")
    start = n - 1 - k
    while start > 0 and slope(start - 1) >= linear_slope_min:
        start -= 1
    lin = slice(start, n)
    log_b = np.mean(logs[lin] - logt[lin])

    t_c = math.exp((log_a - log_b) / 0.75)
    if t_c <= t[0] or t_c >= t[-1] * 10:
        raise ValueError("regimes not separable: crossover outside data")
    return t_c


def _as_curve(curve):
    t, s = curve
    return np.asarray(t, dtype=float), np.asarray(s, dtype=float)


def fss_collapse(curves: dict, p_c: float, nu: float) -> float:
    """Quality of the finite-size-scaling collapse of S_{L/2}/L vs
    (p - p_c) L^(1/nu).

    ``curves`` maps L -> (p_array, s_half_array).  Each rescaled point is
    compared against a local linear fit through the nearest points of the
    *other* curves (pooled master curve), so uneven sampling along the
    rescaled axis does not masquerade as mis-collapse.  Returns the rms
    residual normalized by the pooled spread; smaller is better.
    """
    if len(curves) < 3:
        raise ValueError("need at least 3 system sizes")
    us, ys, ids = [], [], []
    for cid, (L, (ps, ss)) in enumerate(sorted(curves.items())):
        ps = np.asarray(ps, dtype=float)
        ss = np.asarray(ss, dtype=float)
        us.append((ps - p_c) * L ** (1.0 / nu))
        ys.append(ss / L)
        ids.append(np.full(ps.shape, cid))
    u = np.concatenate(us)
    y = np.concatenate(ys)
    cid = np.concatenate(ids)

    k = 5
    residuals = []
    for i in range(len(u)):
        other = cid != cid[i]
        uo, yo = u[other], y[other]
        if uo.min() > u[i] or uo.max() < u[i]:
            continue  # outside the others' sampled range
        near = np.argsort(np.abs(uo - u[i]))[:k]
        a, b = np.polyfit(uo[near], yo[near], 1)
        residuals.append(y[i] - (a * u[i] + b))
    if not residuals:
        raise ValueError("rescaled curves do not overlap")
    spread = float(np.std(y))
    return float(np.sqrt(np.mean(np.square(residuals)))) / max(spread, 1e-300)


def fss_scan_nu(curves: dict, p_c: float, nu_grid) -> tuple[float, np.ndarray]:
    """Scan nu over a grid, returning (best nu, collapse quality array)."""
    nu_grid = np.asarray(nu_grid, dtype=float)
    quality = np.array([fss_collapse(curves, p_c, nu) for nu in nu_grid])
    return float(nu_grid[np.argmin(quality)]), quality
