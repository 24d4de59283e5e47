"""Critical steady-state profiles vs the closed-form Fredkin curve.

Runs the classical game at p = 1/2 and the continuous-time Fredkin chain
at c = 1/2 and compares their mean height profiles, normalized by
sqrt(L), against (4/sqrt(2 pi)) sqrt(x (L-x) / L).
"""
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from circuitgames import GameConfig, run_ensemble
from circuitgames.fredkin import analytic_profile

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

fig, ax = plt.subplots(figsize=(5.2, 3.8))
for model, L, style in (("classical", 128, "o"), ("fredkin", 128, "s")):
    cfg = GameConfig(
        model=model, L=L, p=0.5, master_seed=11, n_trajectories=8,
        t_burn=(4 * L * L if model == "classical" else 20),
        t_measure=(6 * L * L if model == "classical" else 4000),
        measure_every=(max(1, L * L // 8) if model == "classical" else 5),
        record_profiles=True, initial=("flat" if model == "classical" else "uniform"),
    )
    res = run_ensemble(cfg)
    prof = res.profiles.mean(axis=0)
    x = np.arange(1, len(prof) + 1)
    ax.plot(x / L, prof / math.sqrt(L), style, ms=3, label=f"{model} L={L}")
    print(f"{model}: midpoint/sqrt(L) = {prof[len(prof)//2]/math.sqrt(L):.3f}")

xs = np.linspace(0, 128, 200)
ax.plot(xs / 128, analytic_profile(xs, 128) / math.sqrt(128), "r--",
        label="Fredkin closed form")
ax.set_xlabel("x / L")
ax.set_ylabel(r"$\overline{S_x}/\sqrt{L}$")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "critical_profiles.png", dpi=150)
print(f"wrote {OUT/'critical_profiles.png'}")
