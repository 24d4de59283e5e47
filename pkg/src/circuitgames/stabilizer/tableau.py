"""Stabilizer tableau: L generators as binary symplectic rows plus signs.

Entropies come from GF(2) ranks: for a region A holding n_A qubits,
S_A = n_A - (L - rank of the rows restricted to the complement), i.e. the
number of independent generators supported inside A is subtracted from n_A.
All entropies are integers in bits.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .pauli import CliffordGate2

_PAULI_CHARS = ("I", "X", "Z", "Y")  # index = x + 2z


class StabilizerTableau:
    """Packed tableau; qubits and bonds are 1-indexed in the public API."""

    def __init__(self, bits: np.ndarray, signs: np.ndarray, L: int):
        self.L = L
        self.bits = bits
        self.signs = signs
        self._scratch = _kernels.scratch_for(L)

    @classmethod
    def product_state(cls, L: int) -> "StabilizerTableau":
        """All-zeros state: generators {Z_i}, every bond entropy zero."""
        if L < 1:
            raise ValueError("L must be >= 1")
        W = (2 * L + 63) // 64
        bits = np.zeros((L, W), dtype=np.uint64)
        for q in range(L):
            c = 2 * q + 1
            bits[q, c >> 6] |= np.uint64(1) << (c & 63)
        return cls(bits, np.zeros(L, dtype=np.uint8), L)

    @classmethod
    def from_arrays(cls, x: np.ndarray, z: np.ndarray, signs=None) -> "StabilizerTableau":
        """Build from unpacked (L, L) x/z bit arrays (rows = generators)."""
        x = np.asarray(x, dtype=np.uint8)
        z = np.asarray(z, dtype=np.uint8)
        L = x.shape[1]
        if x.shape != z.shape or x.shape[0] != L:
            raise ValueError("expected square (L, L) x and z arrays")
        W = (2 * L + 63) // 64
        bits = np.zeros((L, W), dtype=np.uint64)
        for i in range(L):
            for q in range(L):
                if x[i, q]:
                    bits[i, (2 * q) >> 6] |= np.uint64(1) << ((2 * q) & 63)
                if z[i, q]:
                    bits[i, (2 * q + 1) >> 6] |= np.uint64(1) << ((2 * q + 1) & 63)
        s = np.zeros(L, dtype=np.uint8) if signs is None else np.asarray(signs, dtype=np.uint8)
        tab = cls(bits, s.copy(), L)
        tab.validate()
        return tab

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.bits.copy(), self.signs.copy(), self.L)

    # -- unpacked views ------------------------------------------------
    def x_array(self) -> np.ndarray:
        return self._unpack(0)

    def z_array(self) -> np.ndarray:
        return self._unpack(1)

    def _unpack(self, off: int) -> np.ndarray:
        out = np.zeros((self.L, self.L), dtype=np.uint8)
        for q in range(self.L):
            c = 2 * q + off
            out[:, q] = (self.bits[:, c >> 6] >> np.uint64(c & 63)) & np.uint64(1)
        return out

    def generator_label(self, i: int) -> str:
        x, z = self.x_array()[i], self.z_array()[i]
        body = "".join(_PAULI_CHARS[x[q] + 2 * z[q]] for q in range(self.L))
        return ("-" if self.signs[i] else "+") + body

    def generator_labels(self) -> list:
        return [self.generator_label(i) for i in range(self.L)]

    # -- operations -----------------------------------------------------
    def apply_gate(self, gate: CliffordGate2, x: int):
        """Conjugate all generators by a gate on the bond-x qubit pair."""
        self._check_bond(x)
        bmap, fmap = gate.local_table
        _kernels.apply_gate(self.bits, self.signs, x - 1, bmap, fmap)
        return self

    def apply_gate_maps(self, bmap, fmap, x: int):
        self._check_bond(x)
        _kernels.apply_gate(self.bits, self.signs, x - 1, bmap, fmap)
        return self

    def bond_entropy(self, x: int) -> int:
        self._check_bond(x)
        return int(_kernels.bond_entropy(self.bits, x, self._scratch))

    def bond_entropy_after(self, gate: CliffordGate2, x: int) -> int:
        self._check_bond(x)
        bmap, _ = gate.local_table
        return int(_kernels.bond_entropy_after(self.bits, x, bmap, self._scratch))

    def entropy(self, qubits) -> int:
        """S_A for an arbitrary set of (1-indexed) qubits."""
        qs = sorted(set(int(q) for q in qubits))
        if any(q < 1 or q > self.L for q in qs):
            raise ValueError("qubit index out of range")
        comp = [q for q in range(1, self.L + 1) if q not in set(qs)]
        x, z = self.x_array(), self.z_array()
        cols = []
        for q in comp:
            cols.append(x[:, q - 1])
            cols.append(z[:, q - 1])
        if not cols:
            return 0
        m = np.column_stack(cols)
        return len(qs) - (self.L - gf2_rank(m))

    def entropy_profile(self) -> np.ndarray:
        out = np.zeros(self.L + 1, dtype=np.int64)
        _kernels.entropy_profile(self.bits, self._scratch, out)
        return out[1 : self.L]

    def validate(self):
        """Rows must pairwise commute and be independent over GF(2)."""
        x, z = self.x_array(), self.z_array()
        sym = (x @ z.T + z @ x.T) % 2
        if sym.any():
            raise ValueError("generators do not commute")
        if gf2_rank(np.concatenate([x, z], axis=1)) != self.L:
            raise ValueError("generators are not independent")
        return self

    def row_span_matrix(self) -> np.ndarray:
        return np.concatenate([self.x_array(), self.z_array()], axis=1)

    def _check_bond(self, x: int):
        if not 1 <= x <= self.L - 1:
            raise IndexError(f"bond {x} outside 1..{self.L - 1}")


def gf2_rank(m: np.ndarray) -> int:
    a = np.array(m, dtype=np.uint8) % 2
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def product_state(L: int) -> StabilizerTableau:
    return StabilizerTableau.product_state(L)


def entropy_rank(tableau: StabilizerTableau, region) -> int:
    """S_A in bits for region A (iterable of 1-indexed qubits, or an int x
    meaning the contiguous block {1..x})."""
    if isinstance(region, (int, np.integer)):
        return tableau.bond_entropy(int(region))
    return tableau.entropy(region)
