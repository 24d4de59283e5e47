"""Clifford circuit game: random entangler vs optimal local disentangler.

The disentangler only ever needs 19 gates: the nine two-qubit unitaries
U_d(A, C) fixed by A_1 -> A_1, C_2 -> C_2, B_1 -> B_1 C_2, D_2 -> A_1 D_2
(B anticommuting with A, D with C), the SWAP, and the nine U_d * SWAP
products.  Their best move matches exhaustive search over all 11520
two-qubit Cliffords; see the optimality tests.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from ..config import StepCapExceeded
from . import _kernels
from .group import clifford_table, sample_clifford_index
from .pauli import SWAP, CliffordGate2, hermitian, mul, parse_pauli
from .tableau import StabilizerTableau

STRATEGIES = {"ordered_19": 0, "random_19": 1, "random_full": 2}

_ANTICOMMUTING_PARTNER = {"X": "Z", "Y": "Z", "Z": "X"}


def _solve_image(target, generators, images):
    """Image of ``target`` under a map given on generating Paulis.

    Finds the subset product of generators equal to target (up to an i^k
    factor) and applies the same product with the same factor to the
    images; brute force over the 15 subsets is plenty for 4 generators.
    """
    n = len(generators)
    for mask in range(1, 1 << n):
        prod = (0, 0)
        img = (0, 0)
        for k in range(n):
            if (mask >> k) & 1:
                prod = mul(prod, generators[k])
                img = mul(img, images[k])
        if prod[1] == target[1]:
            sigma = (target[0] - prod[0]) % 4
            return ((img[0] + sigma) % 4, img[1])
    raise ValueError("target not in the span of the generators")


def make_ud_gate(a: str, c: str) -> CliffordGate2:
    """The disentangling unitary fixed by leaving A_1 and C_2 invariant."""
    b = _ANTICOMMUTING_PARTNER[a]
    d = _ANTICOMMUTING_PARTNER[c]
    a1 = parse_pauli(a + "I")
    b1 = parse_pauli(b + "I")
    c2 = parse_pauli("I" + c)
    d2 = parse_pauli("I" + d)
    generators = (a1, b1, c2, d2)
    images = (a1, mul(b1, c2), c2, mul(a1, d2))
    targets = (parse_pauli("XI"), parse_pauli("ZI"), parse_pauli("IX"), parse_pauli("IZ"))
    return CliffordGate2(tuple(_solve_image(t, generators, images) for t in targets))


def build_disentangler_set() -> list:
    """The canonical 19-gate list: nine U_d(A, C) in (A, C) lexicographic
    order, then SWAP, then the nine U_d(A, C) * SWAP in the same order."""
    uds = [make_ud_gate(a, c) for a, c in product("XYZ", repeat=2)]
    return uds + [SWAP] + [ud.compose(SWAP) for ud in uds]


@lru_cache(maxsize=1)
def disentangler_maps() -> tuple:
    """(bits, flips) arrays of shape (19, 16) for the kernel loops."""
    gates = build_disentangler_set()
    bits = np.empty((19, 16), dtype=np.uint8)
    flips = np.empty((19, 16), dtype=np.uint8)
    for k, g in enumerate(gates):
        bm, fm = g.local_table
        bits[k] = bm
        flips[k] = fm
    return bits, flips


def maximally_disentangle_bond(
    tableau: StabilizerTableau,
    x: int,
    strategy: str = "ordered_19",
    rng: np.random.Generator | None = None,
) -> tuple:
    """Apply the strategy's best gate at bond x; returns (tableau, dS).

    dS >= 0 is the achieved entropy reduction.  Bonds protected by
    subadditivity (S_x below both neighbours) are left untouched, and a
    no-op is returned whenever no gate can lower S_x.
    """
    strat = STRATEGIES[strategy]
    if strat != 0 and rng is None:
        raise ValueError(f"strategy {strategy!r} needs an rng")
    if rng is None:
        rng = np.random.Generator(np.random.Philox(0))
    L = tableau.L
    tableau._check_bond(x)
    prof = np.zeros(L + 1, dtype=np.int64)
    for y in (x - 1, x, x + 1):
        if 1 <= y <= L - 1:
            prof[y] = tableau.bond_entropy(y)
    table = clifford_table()
    d_bits, d_flips = disentangler_maps()
    svals = np.empty(720, dtype=np.int64)
    delta = _kernels._disentangle_at(
        tableau.bits,
        tableau.signs,
        prof,
        x,
        strat,
        rng,
        d_bits,
        d_flips,
        table.sym_bits_maps,
        table.flip_maps,
        tableau._scratch,
        svals,
    )
    return tableau, int(-delta)


class CliffordGame:
    """Game-protocol wrapper with a compiled advance loop.

    Keeps the full bond-entropy profile up to date; a two-qubit gate at
    bond x can only change S_x, so one rank computation per gate suffices.
    """

    def __init__(self, L: int, strategy: str = "ordered_19"):
        if L < 2:
            raise ValueError("L must be >= 2")
        self.strategy = strategy
        self._strat = STRATEGIES[strategy]
        self.tab = StabilizerTableau.product_state(L)
        self.prof = np.zeros(L + 1, dtype=np.int64)
        self._table = clifford_table()
        self._d_bits, self._d_flips = disentangler_maps()
        self._svals = np.empty(720, dtype=np.int64)

    @property
    def L(self) -> int:
        return self.tab.L

    @property
    def n_bonds(self) -> int:
        return self.tab.L - 1

    def entangle(self, x: int, rng):
        gid = sample_clifford_index(rng)
        t = self._table
        self.tab.apply_gate_maps(t.bits_maps[gid], t.flip_maps[gid], x)
        self.prof[x] = self.tab.bond_entropy(x)

    def disentangle(self, x: int, rng=None):
        if rng is None:
            rng = np.random.Generator(np.random.Philox(0))
        _kernels._disentangle_at(
            self.tab.bits,
            self.tab.signs,
            self.prof,
            x,
            self._strat,
            rng,
            self._d_bits,
            self._d_flips,
            self._table.sym_bits_maps,
            self._table.flip_maps,
            self.tab._scratch,
            self._svals,
        )

    def advance(self, rng, p: float, n_steps: int):
        if n_steps:
            _kernels.clifford_advance(
                self.tab.bits,
                self.tab.signs,
                self.prof,
                p,
                int(n_steps),
                rng,
                self._strat,
                self._d_bits,
                self._d_flips,
                self._table.sym_bits_maps,
                self._table.bits_maps,
                self._table.flip_maps,
                self.tab._scratch,
            )

    def profile(self) -> np.ndarray:
        return self.prof[1 : self.L].astype(np.float64)

    def s_half(self) -> float:
        return float(self.prof[self.L // 2])


def clifford_disentangle_experiment(
    L: int,
    n_e: int,
    rng: np.random.Generator,
    strategy: str = "ordered_19",
    cap: int | None = None,
) -> int:
    """Entangle with n_e random gates, then probe random bonds with the
    disentangler until the state is a product state again; returns the
    number of probes.  Raises StepCapExceeded past cap (default 1000 L^2):
    a depth of order L^2 always suffices for stabilizer states."""
    if L < 2 or n_e < 0:
        raise ValueError("need L >= 2 and n_e >= 0")
    if cap is None:
        cap = 1000 * L * L
    game = CliffordGame(L, strategy=strategy)
    table = game._table
    _kernels.random_circuit(
        game.tab.bits, game.tab.signs, game.prof, rng, n_e,
        table.bits_maps, table.flip_maps, game.tab._scratch,
    )
    n_d = _kernels.disentangle_until_empty(
        game.tab.bits,
        game.tab.signs,
        game.prof,
        rng,
        game._strat,
        cap,
        game._d_bits,
        game._d_flips,
        table.sym_bits_maps,
        table.flip_maps,
        game.tab._scratch,
    )
    if n_d < 0:
        raise StepCapExceeded(f"disentangling exceeded {cap} probes at L={L}, n_e={n_e}")
    return int(n_d)
