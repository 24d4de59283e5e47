"""Growth-law fits and a finite-size-scaling collapse on classical data.

Extracts the critical growth exponent (1/4 at p = 1/2), shows the
spatial correlation law G(r) ~ r^(1/2), and scans the correlation-length
exponent nu via the collapse of S_{L/2}/L on the volume-law side.
"""
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from circuitgames import GameConfig, run_ensemble
from circuitgames.analysis import fit_power_law, fss_scan_nu, spatial_correlation

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

# growth at criticality
L = 256
cfg = GameConfig(model="classical", L=L, p=0.5, master_seed=13,
                 n_trajectories=200, t_burn=0, t_measure=4000,
                 measure_every=1, record_burn=True)
res = run_ensemble(cfg)
t, s = res.series.times, res.series.mean_s_half
fit = fit_power_law(t, s, window=(30, 2000))
print(f"growth exponent beta = {fit.exponent:.3f} +- {fit.stderr:.3f} (EW: 0.25)")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
ax1.loglog(t, s, lw=1)
ax1.loglog(t, fit.prefactor * t**fit.exponent, "r--", lw=1,
           label=f"fit slope {fit.exponent:.3f}")
ax1.set_xlabel("t")
ax1.set_ylabel(r"$S_{L/2}$")
ax1.legend()

# spatial correlations in the growth regime
cfg = GameConfig(model="classical", L=512, p=0.5, master_seed=17,
                 n_trajectories=100, t_burn=2000, t_measure=1,
                 measure_every=1, record_profiles=True)
res = run_ensemble(cfg)
g = spatial_correlation(res.profiles, center=255, r_max=64)
gfit = fit_power_law(np.arange(1, 65), g, window=(2, 20))
print(f"roughness exponent alpha = {gfit.exponent:.3f} (EW/KPZ: 0.5)")
ax2.loglog(np.arange(1, 65), g, "o", ms=3)
ax2.loglog(np.arange(2, 21), gfit.prefactor * np.arange(2, 21) ** gfit.exponent,
           "r--", label=f"fit slope {gfit.exponent:.3f}")
ax2.set_xlabel("r")
ax2.set_ylabel("G(r)")
ax2.legend()
fig.tight_layout()
fig.savefig(OUT / "scaling_analysis.png", dpi=150)

# nu scan from the volume-law side
curves = {}
for L in (32, 64, 128):
    ps = np.linspace(0.38, 0.5, 13)
    vals = []
    for p in ps:
        cfg = GameConfig(model="classical", L=L, p=float(p), master_seed=19,
                         n_trajectories=8, t_burn=4 * L * L, t_measure=4 * L * L,
                         measure_every=max(1, L * L // 8))
        vals.append(run_ensemble(cfg).series.mean_s_half.mean())
    curves[L] = (ps, np.array(vals))
best, _ = fss_scan_nu(curves, 0.5, np.linspace(0.6, 1.6, 21))
print(f"collapse scan: nu = {best:.2f} (Fredkin: 1)")
print(f"wrote {OUT/'scaling_analysis.png'}")
