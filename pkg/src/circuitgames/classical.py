"""Classical (1+1)D growth-depletion game on an RSOS height profile.

Heights live on bonds x = 1..L with pinned boundaries S_0 = S_{L+1} = 0.
The entangler raises S_x to min(S_{x-1}, S_{x+1}) + 1, the disentangler
lowers it to max(S_{x-1}, S_{x+1}, 1) - 1; both keep the profile
non-negative with adjacent steps of at most one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit


@dataclass
class HeightProfile:
    """Integer surface heights including the two pinned boundary entries."""

    heights: np.ndarray  # int64, length L + 2

    @classmethod
    def flat(cls, L: int) -> "HeightProfile":
        return cls(np.zeros(L + 2, dtype=np.int64))

    @classmethod
    def pyramid(cls, L: int) -> "HeightProfile":
        """Maximal profile min(x, L+1-x); p=0 fixed point, and the initial
        condition for depletion studies in the area-law phase."""
        x = np.arange(L + 2)
        return cls(np.minimum(x, L + 1 - x).astype(np.int64))

    @property
    def L(self) -> int:
        return len(self.heights) - 2

    def validate(self):
        h, L = self.heights, self.L
        if h[0] != 0 or h[L + 1] != 0:
            raise ValueError("boundary heights must stay 0")
        if np.any(h < 0):
            raise ValueError("heights must be non-negative")
        if np.any(np.abs(np.diff(h)) > 1):
            raise ValueError("RSOS constraint violated")
        x = np.arange(L + 2)
        if np.any(h > np.minimum(x, L + 1 - x)):
            raise ValueError("pyramid bound violated")
        return self

    def interior(self) -> np.ndarray:
        return self.heights[1:-1]


def _check_bond(profile: HeightProfile, x: int):
    if not 1 <= x <= profile.L:
        raise IndexError(f"bond {x} outside 1..{profile.L}")


def entangle_bond(profile: HeightProfile, x: int) -> HeightProfile:
    """Raise bond x; never lowers it (min of the neighbours is >= S_x - 1)."""
    _check_bond(profile, x)
    h = profile.heights
    h[x] = min(h[x - 1], h[x + 1]) + 1
    return profile


def disentangle_bond(profile: HeightProfile, x: int) -> HeightProfile:
    """Lower bond x; never raises it, and clamps at zero."""
    _check_bond(profile, x)
    h = profile.heights
    h[x] = max(h[x - 1], h[x + 1], 1) - 1
    return profile


@njit(cache=True)
def _advance_kernel(h, L, p, n_updates, rng):
    for _ in range(n_updates):
        x = 1 + rng.integers(0, L)
        if rng.random() < p:
            a, b = h[x - 1], h[x + 1]
            m = a if a > b else b
            if m < 1:
                m = 1
            h[x] = m - 1
        else:
            a, b = h[x - 1], h[x + 1]
            m = a if a < b else b
            h[x] = m + 1


class ClassicalGame:
    """Game-protocol wrapper used by the trajectory engine."""

    def __init__(self, L: int, initial: str = "flat"):
        if initial in ("flat", "default"):
            self.state = HeightProfile.flat(L)
        elif initial == "pyramid":
            self.state = HeightProfile.pyramid(L)
        else:
            raise ValueError(f"unknown initial condition {initial!r}")

    @property
    def L(self) -> int:
        return self.state.L

    @property
    def n_bonds(self) -> int:
        return self.state.L

    def entangle(self, x: int, rng=None):
        entangle_bond(self.state, x)

    def disentangle(self, x: int, rng=None):
        disentangle_bond(self.state, x)

    def advance(self, rng, p: float, n_steps: int):
        if n_steps:
            _advance_kernel(self.state.heights, self.L, p, int(n_steps) * self.L, rng)

    def profile(self) -> np.ndarray:
        return self.state.interior().astype(np.float64)

    def s_half(self) -> float:
        return float(self.state.heights[self.L // 2])
