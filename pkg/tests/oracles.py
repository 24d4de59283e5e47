"""Independent reference implementations used as test oracles.

Everything here recomputes observables from first principles (dense state
vectors, explicit Markov chains, exhaustive enumeration) and never calls
into the code paths it is checking.
"""
from __future__ import annotations

import itertools

import numpy as np

# ---------------------------------------------------------------------------
# dense state-vector machinery (qubit 1 = most significant index)

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S_MAT = np.diag([1, 1j]).astype(complex)
CNOT_MAT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ_MAT = np.diag([1, 1, 1, -1]).astype(complex)
SWAP_MAT = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def apply_two_qubit(psi: np.ndarray, U: np.ndarray, x: int, L: int) -> np.ndarray:
    """Act with a 4x4 matrix on qubits (x, x+1), 1-indexed."""
    block = psi.reshape(2 ** (x - 1), 4, 2 ** (L - x - 1))
    return np.einsum("ab,ibj->iaj", U, block).reshape(-1)


def bond_entropy_sv(psi: np.ndarray, x: int, L: int, alpha: float = 1.0) -> float:
    m = psi.reshape(2**x, 2 ** (L - x))
    lam = np.linalg.svd(m, compute_uv=False) ** 2
    lam = lam[lam > 1e-14]
    if alpha == 1.0:
        return float(-np.sum(lam * np.log2(lam)))
    return float(np.log2(np.sum(lam**alpha)) / (1 - alpha))


def region_entropy_sv(psi: np.ndarray, region, L: int) -> float:
    """Von Neumann entropy of an arbitrary qubit set via partial trace."""
    region = sorted(region)
    comp = [q for q in range(1, L + 1) if q not in region]
    t = psi.reshape((2,) * L)
    axes = [q - 1 for q in comp]
    rho = np.tensordot(t, t.conj(), axes=(axes, axes))
    d = 2 ** len(region)
    rho = rho.reshape(d, d)
    ev = np.linalg.eigvalsh(rho)
    ev = ev[ev > 1e-14]
    return float(-np.sum(ev * np.log2(ev)))


def pauli_string_matrix(label: str) -> np.ndarray:
    """Matrix of a signed Pauli string like '+XIZ' or '-YY'."""
    sign = 1.0
    if label[0] in "+-":
        sign = -1.0 if label[0] == "-" else 1.0
        label = label[1:]
    m = np.array([[sign]], dtype=complex)
    for ch in label:
        m = np.kron(m, PAULI[ch])
    return m


def tableau_to_statevector(labels) -> np.ndarray:
    """State stabilized by the given generator labels, via the projector
    product prod_i (1 + g_i) / 2 applied to a generic vector."""
    L = len(labels[0].lstrip("+-"))
    dim = 2**L
    rng = np.random.default_rng(1234)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    for lab in labels:
        g = pauli_string_matrix(lab)
        v = (v + g @ v) / 2.0
    n = np.linalg.norm(v)
    if n < 1e-9:  # generic vector was orthogonal to the stabilized state
        for k in range(dim):
            v = np.zeros(dim, dtype=complex)
            v[k] = 1.0
            for lab in labels:
                g = pauli_string_matrix(lab)
                v = (v + g @ v) / 2.0
            n = np.linalg.norm(v)
            if n > 1e-9:
                break
    assert n > 1e-9, "no stabilized state found"
    return v / n


# ---------------------------------------------------------------------------
# exact machinery for the classical height model

def rsos_profiles(L: int) -> list:
    """All valid height profiles (boundaries, RSOS steps, pyramid bound)."""
    out = []

    def rec(prefix):
        x = len(prefix)  # next index to fill; interior runs 1..L
        if x == L + 1:
            assert prefix[-1] <= 1  # pyramid cap guarantees closure to 0
            out.append(tuple(prefix) + (0,))
            return
        cap = min(x, L + 1 - x)
        prev = prefix[-1]
        for h in (prev - 1, prev, prev + 1):
            if 0 <= h <= cap:
                rec(prefix + [h])

    rec([0])
    return out


def classical_step(profile: tuple, x: int, disentangle: bool) -> tuple:
    h = list(profile)
    if disentangle:
        h[x] = max(h[x - 1], h[x + 1], 1) - 1
    else:
        h[x] = min(h[x - 1], h[x + 1]) + 1
    return tuple(h)


def classical_transition_matrix(L: int, p: float):
    """Column-stochastic single-update transition matrix over all valid
    profiles; returns (states, P)."""
    states = rsos_profiles(L)
    index = {s: i for i, s in enumerate(states)}
    n = len(states)
    P = np.zeros((n, n))
    for s in states:
        i = index[s]
        for x in range(1, L + 1):
            for dis, w in ((False, (1 - p) / L), (True, p / L)):
                s2 = classical_step(s, x, dis)
                P[index[s2], i] += w
    return states, P


def stationary_distribution(P: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eig(P)
    k = int(np.argmin(np.abs(w - 1.0)))
    pi = np.real(v[:, k])
    pi = np.abs(pi)
    return pi / pi.sum()


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))
