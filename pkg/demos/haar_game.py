"""Haar-random game: the entangler always wins.

Runs the state-vector model at a fairly high disentangler rate from both
a product state and a Haar-random state; both relax to the same
(extensively entangled) steady state.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from circuitgames import GameConfig, OptimizerConfig, run_ensemble

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

L = 8
opt = OptimizerConfig(n_starts=4, max_iterations=150)
fig, ax = plt.subplots(figsize=(5.2, 3.8))
for initial, style in (("product", "-"), ("haar", "--")):
    cfg = GameConfig(
        model="haar", L=L, p=0.5, master_seed=31, n_trajectories=6,
        t_burn=0, t_measure=40, measure_every=2, record_burn=True,
        initial=initial, optimizer=opt,
    )
    res = run_ensemble(cfg)
    ax.plot(res.series.times, res.series.mean_s_half, style, label=f"{initial} start")
    print(f"{initial}: final S_half = {res.series.mean_s_half[-5:].mean():.3f} bits")
ax.set_xlabel("t (time steps)")
ax.set_ylabel(r"$S_{L/2}$ (bits)")
ax.set_title(f"haar game, L={L}, p=0.5")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "haar_initial_states.png", dpi=150)
print(f"wrote {OUT/'haar_initial_states.png'}")
