"""Acceptance suite: one test per release criterion.

Each test prints a single `ACCEPT <name>: ...` line with the measured
numbers so a run log doubles as a scorecard.  Everything is seeded;
re-running reproduces the numbers bit for bit.  The whole module is
compute-heavy (a couple of hours on two cores).

One criterion is implemented exactly as specified but expected to fail
for a physics reason documented at the test: the finite-size deficit of
the critical profile at L = 128 exceeds the stated tolerance.
"""
import itertools
import math
import subprocess
import sys

import numpy as np
import pytest

from circuitgames import (
    GameConfig,
    OptimizerConfig,
    estimate_tc,
    fit_power_law,
    make_rng,
    run_ensemble,
    spawn_trajectory_seed,
)
from circuitgames.analysis import spatial_correlation, spatial_fluctuations
from circuitgames.classical import HeightProfile, entangle_bond
from circuitgames.fredkin import FredkinGame, analytic_profile, dyck_paths, _ballot
from circuitgames.haar import haar_disentangle_experiment, harmonic_number
from circuitgames.stabilizer import (
    CNOT,
    H1,
    StabilizerTableau,
    clifford_disentangle_experiment,
    clifford_table,
    clip_gauge,
    entropy_profile_clipped,
    product_state,
)
from circuitgames.stabilizer import _kernels
from circuitgames.stabilizer.game import CliffordGame, disentangler_maps
from circuitgames.stabilizer.group import sample_clifford_index

from oracles import total_variation


def report(name: str, ok: bool, detail: str):
    print(f"\nACCEPT {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


# -- classical -----------------------------------------------------------


def test_classical_limiting_cases():
    L = 64
    cfg = GameConfig(model="classical", L=L, p=1.0, master_seed=1,
                     n_trajectories=4, t_burn=50, t_measure=50,
                     measure_every=5, record_profiles=True)
    res = run_ensemble(cfg)
    all_zero = bool(np.all(res.profiles == 0))

    x = np.arange(L + 2)
    pyramid = np.minimum(x, L + 1 - x)
    prof = HeightProfile(pyramid.copy())
    fixed = True
    for b in range(1, L + 1):
        entangle_bond(prof, b)
        fixed &= bool(np.array_equal(prof.heights, pyramid))
    cfg0 = GameConfig(model="classical", L=L, p=0.0, master_seed=2,
                      n_trajectories=1, t_burn=40 * L, t_measure=1,
                      measure_every=1, record_profiles=True)
    res0 = run_ensemble(cfg0)
    reaches = bool(np.array_equal(res0.profiles[-1], pyramid[1:-1]))
    report(
        "classical-limits",
        all_zero and fixed and reaches,
        f"p=1 all-zero={all_zero}, pyramid fixed point={fixed}, p=0 reaches pyramid={reaches}",
    )


def test_classical_critical_scaling():
    # [CALIBRATION PENDING]
    raise NotImplementedError


# -- fredkin --------------------------------------------------------------


def exact_dyck_midpoint(L: int) -> float:
    m = L // 2
    num = den = 0
    for h in range(m + 1):
        w = _ballot(m, h) * _ballot(L - m, h)
        num += h * w
        den += w
    return num / den


def _fredkin_midpoint(L: int, seed: int, n_traj: int = 8, t_meas: int = 4000) -> float:
    cfg = GameConfig(model="fredkin", L=L, p=0.5, master_seed=seed,
                     n_trajectories=n_traj, t_burn=20, t_measure=t_meas,
                     measure_every=2, initial="uniform")
    res = run_ensemble(cfg)
    return float(res.series.mean_s_half.mean())


def test_fredkin_enumeration_oracle():
    L = 6
    paths = sorted(tuple(p) for p in dyck_paths(L))
    index = {p: i for i, p in enumerate(paths)}
    game = FredkinGame(L, initial="uniform")
    rng = make_rng(61)
    game.advance(rng, 0.5, 10)
    counts = np.zeros(len(paths))
    for _ in range(50_000):
        game.advance(rng, 0.5, 0.5)
        counts[index[tuple(game.state.z)]] += 1
    tv = total_variation(counts / counts.sum(), np.full(5, 0.2))
    report("fredkin-dyck-oracle", tv < 0.02, f"TV(MC, enumeration) = {tv:.4f} < 0.02 at L=6")


def test_fredkin_profile_converges_to_closed_form():
    ratios = {}
    for L in (32, 64, 128):
        mid = _fredkin_midpoint(L, seed=62 + L)
        ratios[L] = mid / analytic_profile(L // 2, L)
    monotone = ratios[32] < ratios[64] < ratios[128]
    exact = exact_dyck_midpoint(128)
    mc = ratios[128] * analytic_profile(64, 128)
    agrees_exact = abs(mc - exact) / exact < 0.02
    report(
        "fredkin-profile-convergence",
        monotone and agrees_exact,
        f"ratios to Eq.(4): {ratios[32]:.3f} -> {ratios[64]:.3f} -> {ratios[128]:.3f}; "
        f"MC vs exact Dyck at L=128: {mc:.3f} vs {exact:.3f}",
    )


@pytest.mark.xfail(
    strict=True,
    reason=(
        "finite-size physics: the exact uniform-Dyck midpoint at L=128 is "
        "8.11, i.e. 10.1% below the asymptotic closed form 9.03, so a 5% "
        "match at L=128 is unattainable (the deficit only drops below 5% "
        "near L ~ 600).  See the decisions ledger."
    ),
)
def test_fredkin_profile_matches_eq4_at_128_within_5pct():
    mid = _fredkin_midpoint(128, seed=63)
    rel = abs(mid - analytic_profile(64, 128)) / analytic_profile(64, 128)
    report("fredkin-eq4-L128-5pct", rel < 0.05, f"|MC - Eq.(4)|/Eq.(4) = {rel:.3f} at L=128")


# -- stabilizer -----------------------------------------------------------


def _random_tableau(rng, L, depth):
    table = clifford_table()
    t = product_state(L)
    for _ in range(depth):
        gid = sample_clifford_index(rng)
        x = 1 + int(rng.integers(0, L - 1))
        t.apply_gate_maps(table.bits_maps[gid], table.flip_maps[gid], x)
    return t


def test_stabilizer_entropy_property_suite():
    rng = make_rng(71)
    mismatches = 0
    for _ in range(1000):
        L = int(rng.integers(2, 11))
        t = _random_tableau(rng, L, 5 * L)
        _, view = clip_gauge(t)
        if not np.array_equal(entropy_profile_clipped(view), t.entropy_profile()):
            mismatches += 1

    bell = product_state(2)
    bell.apply_gate(H1, 1)
    bell.apply_gate(CNOT, 1)
    hand = bell.bond_entropy(1) == 1
    ghz = product_state(3)
    ghz.apply_gate(H1, 1)
    ghz.apply_gate(CNOT, 1)
    ghz.apply_gate(CNOT, 2)
    hand &= ghz.bond_entropy(1) == 1 and ghz.bond_entropy(2) == 1
    hand &= ghz.entropy({1, 2}) == 1

    # the worked 8-qubit example: spans (1,4)(1,4)(2,2)(3,6)(3,5)(5,7)(6,8)(7,8)
    labels = [
        "XIIXIIII", "ZIIZIIII", "IZIIIIII", "IIXIXXII",
        "IIZIZIII", "IIIIZZXI", "IIIIIXZX", "IIIIIIXZ",
    ]
    x = np.array([[1 if ch == "X" or ch == "Y" else 0 for ch in lab] for lab in labels], dtype=np.uint8)
    z = np.array([[1 if ch == "Z" or ch == "Y" else 0 for ch in lab] for lab in labels], dtype=np.uint8)
    example = StabilizerTableau.from_arrays(x, z)
    _, view = clip_gauge(example)
    prof = entropy_profile_clipped(view)
    example_ok = prof.tolist() == [1, 1, 2, 1, 1, 1, 1]
    report(
        "stabilizer-entropy-suite",
        mismatches == 0 and hand and example_ok,
        f"clipped==rank on 1000 random circuits (mismatches={mismatches}), "
        f"Bell/GHZ exact={hand}, example profile {prof.tolist()}",
    )


def test_19_gate_optimality_oracle():
    rng = make_rng(73)
    table = clifford_table()
    d_bits, _ = disentangler_maps()
    checked = 0
    failures = 0
    for _ in range(1000):
        L = int(rng.integers(3, 9))
        t = _random_tableau(rng, L, 5 * L)
        scratch = t._scratch
        for x in range(1, L):
            s0 = t.bond_entropy(x)
            best19 = min(
                _kernels.bond_entropy_after(t.bits, x, d_bits[k], scratch)
                for k in range(19)
            )
            bestfull = min(
                _kernels.bond_entropy_after(t.bits, x, table.sym_bits_maps[s], scratch)
                for s in range(720)
            )
            checked += 1
            if min(best19, s0) != min(bestfull, s0):
                failures += 1
    report(
        "19-gate-optimality",
        failures == 0,
        f"{checked} bonds on 1000 random states: best-of-19 == best-of-11520 "
        f"(failures={failures})",
    )


def test_clifford_disentangling_regimes():
    # [CALIBRATION PENDING]
    raise NotImplementedError


def test_determinism_byte_identical():
    cmd = [
        sys.executable, "-m", "circuitgames.cli", "run-clifford",
        "--L", "12", "--p", "0.4", "--trajectories", "3", "--t-burn", "5",
        "--t-measure", "10", "--measure-every", "2", "--seed", "99",
        "--threads", "2",
    ]
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / "a", Path(tmp) / "b"
        for out in (a, b):
            r = subprocess.run(cmd + ["--out", str(out)], capture_output=True, text=True)
            assert r.returncode == 0, r.stderr
        cell = "clifford_L12_p0.4"
        same = True
        for name in ["aggregate.csv", "meta.json"] + [f"traj_{i:05d}.csv" for i in range(3)]:
            same &= (a / cell / name).read_bytes() == (b / cell / name).read_bytes()
    report("determinism", same, "independent reruns produced byte-identical cells")
