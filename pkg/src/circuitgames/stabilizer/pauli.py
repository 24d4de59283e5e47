"""Exact phase arithmetic for two-qubit Paulis and Clifford gates.

A two-qubit Pauli is stored as (phase, bits) meaning
``i^phase * X1^x1 Z1^z1 X2^x2 Z2^z2`` with the bit layout
x1 = bit0, z1 = bit1, x2 = bit2, z2 = bit3.  A Clifford gate is stored by
the images of X1, Z1, X2, Z2 under conjugation, each a Hermitian signed
Pauli; that fixes the gate up to an (irrelevant) global phase.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

_PAULI_CHARS = {0: "I", 1: "X", 2: "Z", 3: "Y"}  # (x + 2z) -> char
_CHAR_BITS = {"I": 0, "X": 1, "Z": 2, "Y": 3}


def y_count(bits: int) -> int:
    """Number of Y factors in the Hermitian reading of ``bits``."""
    return ((bits & 1) & (bits >> 1)) + (((bits >> 2) & 1) & (bits >> 3))


def mul(p: tuple, q: tuple) -> tuple:
    """Product of two phase-tracked Paulis in normal order."""
    sp, bp = p
    sq, bq = q
    # moving the X's of q left past the Z's of p costs (-1) per crossing
    cross = ((bp >> 1) & bq & 1) + ((bp >> 3) & (bq >> 2) & 1)
    return (sp + sq + 2 * cross) % 4, bp ^ bq


def commutes(bp: int, bq: int) -> bool:
    sym = (bp & (bq >> 1)) ^ ((bp >> 1) & bq)
    return ((sym & 1) ^ ((sym >> 2) & 1)) == 0


def hermitian(bits: int, sign: int = 0) -> tuple:
    """Phase-tracked form of the Hermitian Pauli (-1)^sign * W1 (x) W2."""
    return (2 * sign + y_count(bits)) % 4, bits


def sign_of(p: tuple) -> int:
    """0/1 sign bit of a Hermitian phase-tracked Pauli; raises otherwise."""
    s, bits = p
    rel = (s - y_count(bits)) % 4
    if rel not in (0, 2):
        raise ValueError(f"pauli {p} is not Hermitian")
    return rel >> 1


def pauli_label(p: tuple) -> str:
    s, bits = p
    sign = "-" if sign_of(p) else "+"
    c1 = _PAULI_CHARS[(bits & 1) | ((bits >> 1) & 1) * 2]
    c2 = _PAULI_CHARS[((bits >> 2) & 1) | ((bits >> 3) & 1) * 2]
    return sign + c1 + c2


def parse_pauli(label: str) -> tuple:
    """Parse labels like 'XZ', '+IY', '-ZZ' into phase-tracked form."""
    sign = 0
    if label[0] in "+-":
        sign = 1 if label[0] == "-" else 0
        label = label[1:]
    if len(label) != 2:
        raise ValueError("two-qubit label expected")
    b1 = _CHAR_BITS[label[0]]
    b2 = _CHAR_BITS[label[1]]
    bits = (b1 & 1) | ((b1 >> 1) << 1) | ((b2 & 1) << 2) | ((b2 >> 1) << 3)
    return hermitian(bits, sign)


X1 = parse_pauli("XI")
Z1 = parse_pauli("ZI")
X2 = parse_pauli("IX")
Z2 = parse_pauli("IZ")


@dataclass(frozen=True)
class CliffordGate2:
    """Two-qubit Clifford gate given by its conjugation images."""

    images: tuple  # images of (X1, Z1, X2, Z2), each phase-tracked Hermitian

    def __post_init__(self):
        bs = [im[1] for im in self.images]
        if 0 in bs:
            raise ValueError("images must be non-identity Paulis")
        for im in self.images:
            sign_of(im)  # must be Hermitian
        pairs_anti = [(0, 1), (2, 3)]
        for i in range(4):
            for j in range(i + 1, 4):
                want_anti = (i, j) in pairs_anti
                if commutes(bs[i], bs[j]) == want_anti:
                    raise ValueError("images break the commutation relations")

    def conjugate(self, p: tuple) -> tuple:
        """Image of an arbitrary phase-tracked Pauli under this gate."""
        s, bits = p
        out = (s % 4, 0)
        for k in range(4):
            if (bits >> k) & 1:
                out = mul(out, self.images[k])
        return out

    @cached_property
    def local_table(self) -> tuple:
        """(bits_map, flip_map): action on the 16 local Pauli configs.

        bits_map[idx] is the conjugated bit pattern and flip_map[idx] the
        sign flip, both in the Hermitian convention used by tableau rows.
        """
        bits_map = np.zeros(16, dtype=np.uint8)
        flip_map = np.zeros(16, dtype=np.uint8)
        for idx in range(1, 16):
            out = self.conjugate(hermitian(idx))
            bits_map[idx] = out[1]
            flip_map[idx] = sign_of(out)
        return bits_map, flip_map

    def compose(self, other: "CliffordGate2") -> "CliffordGate2":
        """Gate equal to applying ``other`` first, then ``self``."""
        return CliffordGate2(tuple(self.conjugate(im) for im in other.images))

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self) -> "CliffordGate2":
        m = np.zeros((4, 4), dtype=np.uint8)
        for k in range(4):
            b = self.images[k][1]
            for row in range(4):
                m[row, k] = (b >> row) & 1
        minv = _gf2_inverse(m)
        images = []
        for k, target in enumerate((X1, Z1, X2, Z2)):
            pre_bits = 0
            for row in range(4):
                pre_bits |= int(minv[row, k]) << row
            cand = hermitian(pre_bits)
            back = self.conjugate(cand)
            flip = sign_of(back) ^ sign_of(target)
            images.append(hermitian(pre_bits, flip))
        return CliffordGate2(tuple(images))

    def labels(self) -> tuple:
        return tuple(pauli_label(im) for im in self.images)


def _gf2_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    a = np.concatenate([m.copy(), np.eye(n, dtype=np.uint8)], axis=1)
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix over GF(2)")
        a[[r, piv]] = a[[piv, r]]
        for i in range(n):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return a[:, n:]


def gate_from_labels(x1: str, z1: str, x2: str, z2: str) -> CliffordGate2:
    return CliffordGate2((parse_pauli(x1), parse_pauli(z1), parse_pauli(x2), parse_pauli(z2)))


IDENTITY = gate_from_labels("XI", "ZI", "IX", "IZ")
SWAP = gate_from_labels("IX", "IZ", "XI", "ZI")
CNOT = gate_from_labels("XX", "ZI", "IX", "ZZ")  # control = qubit 1
CZ = gate_from_labels("XZ", "ZI", "ZX", "IZ")
H1 = gate_from_labels("ZI", "XI", "IX", "IZ")
H2 = gate_from_labels("XI", "ZI", "IZ", "IX")
S1 = gate_from_labels("YI", "ZI", "IX", "IZ")
S2 = gate_from_labels("XI", "ZI", "IY", "IZ")
