"""Disentangling-depth experiments for both quantum models.

Clifford states disentangle in O(L^2) gates (three regimes, n_d/L^2
collapse); in the Haar model the sparse regime follows the harmonic-number
law n_d = (L-1) H_{n_e} while dense circuits become exponentially hard.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from circuitgames import OptimizerConfig, make_rng
from circuitgames.haar import haar_disentangle_experiment, harmonic_number
from circuitgames.stabilizer import clifford_disentangle_experiment

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))

rng = make_rng(47)
for L in (8, 16, 32):
    fs = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
    means = []
    for f in fs:
        n_e = max(1, int(f * L * L))
        vals = [clifford_disentangle_experiment(L, n_e, rng) for _ in range(10)]
        means.append(np.mean(vals) / L**2)
    ax1.plot(fs, means, "o-", label=f"L={L}")
    print(f"clifford L={L}: n_d/L^2 =", np.round(means, 2))
ax1.set_xlabel(r"$n_e/L^2$")
ax1.set_ylabel(r"$n_d/L^2$")
ax1.set_xscale("log")
ax1.set_title("clifford: collapse and saturation")
ax1.legend()

rng = make_rng(53)
opt = OptimizerConfig(n_starts=4, max_iterations=150)
for L in (8, 10):
    nes = list(range(1, L // 2 + 1))
    means = []
    for n_e in nes:
        vals = [haar_disentangle_experiment(L, n_e, rng, opt)[0] for _ in range(40)]
        means.append(np.mean(vals) / (L - 1))
    ax2.plot([harmonic_number(n) for n in nes], means, "s", label=f"L={L}")
    print(f"haar L={L}: n_d/(L-1) =", np.round(means, 2))
h = np.linspace(0.8, 2.5, 10)
ax2.plot(h, h, "k--", lw=1, label=r"$H_{n_e}$")
ax2.set_xlabel(r"$H_{n_e}$")
ax2.set_ylabel(r"$n_d/(L-1)$")
ax2.set_title("haar: harmonic-number law")
ax2.legend()

fig.tight_layout()
fig.savefig(OUT / "disentangle_depth.png", dpi=150)
print(f"wrote {OUT/'disentangle_depth.png'}")
