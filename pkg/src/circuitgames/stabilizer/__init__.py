"""Clifford/stabilizer model: tableau algebra, clipped gauge, disentanglers."""
from .pauli import (
    CNOT,
    CZ,
    H1,
    H2,
    IDENTITY,
    S1,
    S2,
    SWAP,
    CliffordGate2,
    gate_from_labels,
    parse_pauli,
    pauli_label,
)
from .group import N_CLIFFORD2, N_SYMPLECTIC, clifford_table, sample_random_clifford2
from .tableau import StabilizerTableau, entropy_rank, gf2_rank, product_state
from .clipped import ClippedView, GaugeError, clip_gauge, entropy_profile_clipped
from .game import (
    CliffordGame,
    build_disentangler_set,
    clifford_disentangle_experiment,
    make_ud_gate,
    maximally_disentangle_bond,
)

__all__ = [
    "CNOT",
    "CZ",
    "H1",
    "H2",
    "IDENTITY",
    "S1",
    "S2",
    "SWAP",
    "CliffordGate2",
    "CliffordGame",
    "ClippedView",
    "GaugeError",
    "N_CLIFFORD2",
    "N_SYMPLECTIC",
    "StabilizerTableau",
    "build_disentangler_set",
    "clifford_disentangle_experiment",
    "clifford_table",
    "clip_gauge",
    "entropy_profile_clipped",
    "entropy_rank",
    "gate_from_labels",
    "gf2_rank",
    "make_ud_gate",
    "maximally_disentangle_bond",
    "parse_pauli",
    "pauli_label",
    "product_state",
    "sample_random_clifford2",
]
