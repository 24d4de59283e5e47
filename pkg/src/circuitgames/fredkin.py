"""Stochastic Fredkin chain: the continuous-time reference model.

Occupations z_i move by swapping a neighbouring particle/hole pair inside
a 4-site window; the flanking sites select the rate.  With the height
variable h_n = sum_{i<=n} (2 z_i - 1), the allowed moves at rate parameter
c are (top label = left-to-right rate, bottom = reverse):

    1100 <-> 1010   2(1-c) / 2c
    1101 <-> 1011   (1-c) / c
    0100 <-> 0010   (1-c) / c
    0101 <-> 0011   forbidden (would drive h negative)

At c = 1/2 every move and its reverse balance, so the stationary state is
uniform over Dyck paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit


class FrozenChainError(RuntimeError):
    """No enabled moves (cannot happen for valid half-filled states)."""


@dataclass
class FredkinState:
    """Half-filled occupation pattern whose height profile is a Dyck path."""

    z: np.ndarray  # uint8, length L

    @classmethod
    def zigzag(cls, L: int) -> "FredkinState":
        """Minimal-height state 1010...10, the flat-profile analogue."""
        _check_L(L)
        z = np.zeros(L, dtype=np.uint8)
        z[::2] = 1
        return cls(z)

    @classmethod
    def from_occupations(cls, occupations) -> "FredkinState":
        return cls(np.asarray(occupations, dtype=np.uint8))

    @property
    def L(self) -> int:
        return len(self.z)

    def heights(self) -> np.ndarray:
        """h_0..h_L with h_0 = 0; valid states keep every entry >= 0."""
        h = np.zeros(self.L + 1, dtype=np.int64)
        h[1:] = np.cumsum(2 * self.z.astype(np.int64) - 1)
        return h

    def validate(self):
        if int(self.z.sum()) * 2 != self.L:
            raise ValueError("not half filled")
        h = self.heights()
        if h[-1] != 0 or np.any(h < 0):
            raise ValueError("height profile is not a Dyck path")
        return self


def _check_L(L: int):
    if L < 4 or L % 2:
        raise ValueError("need even L >= 4")


def analytic_profile(x, L: int):
    """Thermodynamic-limit mean height at bond x for the critical chain:
    (4 / sqrt(2 pi)) sqrt(x (L - x) / L)."""
    x = np.asarray(x, dtype=float)
    return (4.0 / math.sqrt(2.0 * math.pi)) * np.sqrt(x * (L - x) / L)


def correlation_length(c: float) -> float:
    """|1 / ln(c / (1-c))|, diverging as |c - 1/2|^{-1} at the critical
    point, where it is raised as infinite."""
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    if c == 0.5:
        raise ValueError("correlation length is infinite at c = 1/2")
    return abs(1.0 / math.log(c / (1.0 - c)))


# -- exact Dyck-path machinery ----------------------------------------------

def dyck_paths(L: int) -> list:
    """All step sequences of length L whose height profile is a Dyck path."""
    _check_L(L)
    out = []

    def rec(prefix, h):
        rem = L - len(prefix)
        if rem == 0:
            out.append(np.array(prefix, dtype=np.uint8))
            return
        if _ballot(rem - 1, h + 1) > 0:
            rec(prefix + [1], h + 1)
        if h > 0 and _ballot(rem - 1, h - 1) > 0:
            rec(prefix + [0], h - 1)

    rec([], 0)
    return out


def _ballot(m: int, h: int) -> int:
    """Paths of m +-1 steps from height h >= 0 down to 0 staying >= 0."""
    if h < 0 or h > m or (m - h) % 2:
        return 0
    u = (m - h) // 2
    return math.comb(m, u) - (math.comb(m, u - 1) if u >= 1 else 0)


def sample_dyck_path(rng: np.random.Generator, L: int) -> FredkinState:
    """Exactly uniform Dyck path via sequential ballot-number sampling."""
    _check_L(L)
    z = np.zeros(L, dtype=np.uint8)
    h = 0
    for n in range(L):
        rem = L - n
        n_up = _ballot(rem - 1, h + 1)
        n_tot = _ballot(rem, h)
        if rng.random() * n_tot < n_up:
            z[n] = 1
            h += 1
        else:
            h -= 1
    return FredkinState(z)


# -- Gillespie dynamics -------------------------------------------------------

def _rate_table(c: float) -> np.ndarray:
    """rate[pattern] for the 16 window patterns z0 | z1<<1 | z2<<2 | z3<<3."""
    rates = np.zeros(16)
    for z0 in (0, 1):
        for z3 in (0, 1):
            if (z0, z3) == (0, 1):
                continue  # forbidden: would create a negative height
            scale = 2.0 if (z0, z3) == (1, 0) else 1.0
            fwd = z0 | (1 << 1) | (0 << 2) | (z3 << 3)  # middle 10 -> 01
            bwd = z0 | (0 << 1) | (1 << 2) | (z3 << 3)  # middle 01 -> 10
            rates[fwd] = scale * (1.0 - c)
            rates[bwd] = scale * c
    return rates


@njit(cache=True)
def _window_pattern(z, i):
    return int(z[i]) | (int(z[i + 1]) << 1) | (int(z[i + 2]) << 2) | (int(z[i + 3]) << 3)


@njit(cache=True)
def _init_rates(z, rates16, win_rate):
    total = 0.0
    for i in range(win_rate.size):
        win_rate[i] = rates16[_window_pattern(z, i)]
        total += win_rate[i]
    return total


@njit(cache=True)
def _gillespie_advance(z, rates16, win_rate, rng, duration):
    """Advance the chain by ``duration`` time units; returns the event
    count, or -1 if the chain froze (total rate zero)."""
    L = z.shape[0]
    nw = win_rate.size
    total = _init_rates(z, rates16, win_rate)
    t = 0.0
    events = 0
    while True:
        if total <= 0.0:
            return -1
        dwell = rng.exponential(1.0 / total)
        if t + dwell > duration:
            return events
        t += dwell
        u = rng.random() * total
        acc = 0.0
        pick = nw - 1
        for i in range(nw):
            acc += win_rate[i]
            if u < acc:
                pick = i
                break
        # swap the middle pair of the window
        tmp = z[pick + 1]
        z[pick + 1] = z[pick + 2]
        z[pick + 2] = tmp
        lo = pick - 2 if pick - 2 > 0 else 0
        hi = pick + 3 if pick + 3 < nw else nw
        for i in range(lo, hi):
            total -= win_rate[i]
            win_rate[i] = rates16[_window_pattern(z, i)]
            total += win_rate[i]
        events += 1
        if events % 16384 == 0:  # refresh against float drift
            total = _init_rates(z, rates16, win_rate)


def ctmc_step(state: FredkinState, c: float, rng: np.random.Generator) -> tuple:
    """One exact Gillespie event; returns (state, dwell_time)."""
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    z = state.z
    nw = state.L - 3
    rates16 = _rate_table(c)
    win_rate = np.array([rates16[_window_pattern(z, i)] for i in range(nw)])
    total = float(win_rate.sum())
    if total <= 0.0:
        raise FrozenChainError("no enabled moves")
    dwell = float(rng.exponential(1.0 / total))
    u = rng.random() * total
    pick = int(np.searchsorted(np.cumsum(win_rate), u, side="right"))
    pick = min(pick, nw - 1)
    z[pick + 1], z[pick + 2] = z[pick + 2], z[pick + 1]
    return state, dwell


def enabled_moves(state: FredkinState, c: float) -> list:
    """(window_start_1indexed, rate) for every enabled move; test helper."""
    rates16 = _rate_table(c)
    out = []
    for i in range(state.L - 3):
        r = rates16[_window_pattern(state.z, i)]
        if r > 0:
            out.append((i + 1, float(r)))
    return out


class FredkinGame:
    """Game-protocol wrapper; ``p`` plays the role of the rate c and one
    time step is one unit of continuous time.

    ``initial='uniform'`` starts from an exactly uniform Dyck path (the
    stationary state at c = 1/2, sampled lazily from the trajectory rng),
    ``'zigzag'`` from the minimal-height state.
    """

    def __init__(self, L: int, initial: str = "zigzag"):
        _check_L(L)
        if initial in ("zigzag", "default"):
            self.state = FredkinState.zigzag(L)
            self._lazy_uniform = False
        elif initial == "uniform":
            self.state = FredkinState.zigzag(L)
            self._lazy_uniform = True
        else:
            raise ValueError(f"unknown initial condition {initial!r}")
        self._rates16 = None
        self._c = None
        self._win_rate = np.zeros(L - 3)

    @property
    def L(self) -> int:
        return self.state.L

    @property
    def n_bonds(self) -> int:
        return self.state.L - 1

    def advance(self, rng, c: float, n_steps: int):
        if self._lazy_uniform:
            self.state = sample_dyck_path(rng, self.L)
            self._lazy_uniform = False
        if not n_steps:
            return
        if self._rates16 is None or c != self._c:
            self._rates16 = _rate_table(c)
            self._c = c
        res = _gillespie_advance(self.state.z, self._rates16, self._win_rate, rng, float(n_steps))
        if res < 0:
            raise FrozenChainError("no enabled moves")

    def profile(self) -> np.ndarray:
        return self.state.heights()[1 : self.L].astype(np.float64)

    def s_half(self) -> float:
        return float(self.state.heights()[self.L // 2])
