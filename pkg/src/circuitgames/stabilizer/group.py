"""Enumeration and uniform sampling of the two-qubit Clifford group.

The group has 720 symplectic images times 16 sign patterns = 11520 gates.
Everything is enumerated once per process in a fixed order and cached, so
a uniform index draw is exactly uniform over the group.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import CliffordGate2, commutes, hermitian

N_CLIFFORD2 = 11520
N_SYMPLECTIC = 720


def _enumerate_symplectics() -> list[tuple]:
    """All 720 bit-image quadruples (x1, z1, x2, z2) in a fixed order."""
    out = []
    nz = range(1, 16)
    for bx1 in nz:
        for bz1 in nz:
            if commutes(bx1, bz1):
                continue
            for bx2 in nz:
                if not (commutes(bx2, bx1) and commutes(bx2, bz1)):
                    continue
                for bz2 in nz:
                    if not (commutes(bz2, bx1) and commutes(bz2, bz1)):
                        continue
                    if commutes(bz2, bx2):
                        continue
                    out.append((bx1, bz1, bx2, bz2))
    assert len(out) == N_SYMPLECTIC
    return out


@dataclass
class CliffordTable:
    """Cached conjugation tables for the whole two-qubit Clifford group.

    Gate id = 16 * symplectic_index + sign_pattern; the bit action depends
    only on the symplectic index, signs only add flips.
    """

    sym_images: list  # per symplectic index: 4 bit patterns
    bits_maps: np.ndarray  # (11520, 16) uint8
    flip_maps: np.ndarray  # (11520, 16) uint8
    sym_bits_maps: np.ndarray  # (720, 16) uint8, sign-free trial tables

    @property
    def n(self) -> int:
        return N_CLIFFORD2

    def gate(self, gid: int) -> CliffordGate2:
        sid, pattern = divmod(int(gid), 16)
        bims = self.sym_images[sid]
        return CliffordGate2(
            tuple(hermitian(bims[k], (pattern >> k) & 1) for k in range(4))
        )

    def index_of(self, gate: CliffordGate2) -> int:
        key = tuple(im[1] for im in gate.images)
        sid = self._sym_lookup[key]
        pattern = 0
        from .pauli import sign_of

        for k in range(4):
            pattern |= sign_of(gate.images[k]) << k
        return 16 * sid + pattern

    def __post_init__(self):
        self._sym_lookup = {tuple(b): i for i, b in enumerate(self.sym_images)}


@lru_cache(maxsize=1)
def clifford_table() -> CliffordTable:
    syms = _enumerate_symplectics()
    sym_bits = np.zeros((N_SYMPLECTIC, 16), dtype=np.uint8)
    sym_flip = np.zeros((N_SYMPLECTIC, 16), dtype=np.uint8)
    for sid, bims in enumerate(syms):
        g = CliffordGate2(tuple(hermitian(b) for b in bims))
        bm, fm = g.local_table
        sym_bits[sid] = bm
        sym_flip[sid] = fm

    # parity_tab[pattern, idx]: extra flip from negating the images listed
    # in ``pattern`` when the input uses the images listed in ``idx``
    k = np.arange(16)
    parity = np.zeros((16, 16), dtype=np.uint8)
    for pat in range(16):
        overlap = pat & k
        parity[pat] = (
            (overlap & 1) ^ ((overlap >> 1) & 1) ^ ((overlap >> 2) & 1) ^ ((overlap >> 3) & 1)
        ).astype(np.uint8)

    bits_maps = np.repeat(sym_bits, 16, axis=0)
    flip_maps = np.empty((N_CLIFFORD2, 16), dtype=np.uint8)
    for sid in range(N_SYMPLECTIC):
        for pat in range(16):
            flip_maps[16 * sid + pat] = sym_flip[sid] ^ parity[pat]

    return CliffordTable(
        sym_images=syms,
        bits_maps=bits_maps,
        flip_maps=flip_maps,
        sym_bits_maps=sym_bits,
    )


def sample_clifford_index(rng: np.random.Generator) -> int:
    return int(rng.integers(0, N_CLIFFORD2))


def sample_random_clifford2(rng: np.random.Generator) -> CliffordGate2:
    """Uniform draw over all 11520 two-qubit Clifford gates."""
    return clifford_table().gate(sample_clifford_index(rng))
