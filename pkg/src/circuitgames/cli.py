"""Config-driven command line front end.

Subcommands: run-classical, run-fredkin, run-clifford, run-haar,
disentangle-bench, analyze.  A run executes the cartesian sweep over the
L and p lists, writes one canonical output cell per (L, p) and prints a
one-line summary per cell.  Exit codes: 0 ok, 2 bad config, 3 runtime cap
exceeded, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, io
from .config import ConfigError, GameConfig, OptimizerConfig, StepCapExceeded
from .engine import make_rng, resolve_threads, run_ensemble, spawn_trajectory_seed

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAP = 3
EXIT_IO = 4


@dataclass
class ExperimentManifest:
    """A sweep: cartesian product of L-list and p-list over shared knobs."""

    model: str
    L: list
    p: list
    out: str = "out"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.L or not self.p:
            raise ConfigError("empty sweep: need at least one L and one p")

    def configs(self):
        for L in self.L:
            for p in self.p:
                yield GameConfig(model=self.model, L=int(L), p=float(p), **self.options).validate()


def _int_list(text: str) -> list:
    return [int(v) for v in str(text).split(",") if v != ""]


def _float_list(text: str) -> list:
    return [float(v) for v in str(text).split(",") if v != ""]


def _add_run_flags(sp):
    sp.add_argument("--config", help="JSON config file; flags override it")
    sp.add_argument("--L", help="comma-separated system sizes")
    sp.add_argument("--p", help="comma-separated disentangler rates (c for fredkin)")
    sp.add_argument("--seed", type=int, help="master seed")
    sp.add_argument("--trajectories", type=int, help="trajectories per cell")
    sp.add_argument("--t-burn", type=int, dest="t_burn")
    sp.add_argument("--t-measure", type=int, dest="t_measure")
    sp.add_argument("--measure-every", type=int, dest="measure_every")
    sp.add_argument("--profile-every", type=int, dest="profile_every")
    sp.add_argument("--initial")
    sp.add_argument("--strategy")
    sp.add_argument("--renyi-order", type=float, dest="renyi_order")
    sp.add_argument("--no-profiles", action="store_true", help="skip per-trajectory profile output")
    sp.add_argument("--threads", type=int)
    sp.add_argument("--out", help="output directory")


def _manifest_from_args(model: str, args) -> ExperimentManifest:
    doc = {}
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
    L = _int_list(args.L) if args.L else doc.get("L", [])
    p = _float_list(args.p) if args.p else doc.get("p", [])
    if isinstance(L, (int, float)):
        L = [int(L)]
    if isinstance(p, (int, float)):
        p = [float(p)]
    out = args.out or doc.get("out", "out")

    options = {k: v for k, v in doc.items() if k not in ("model", "L", "p", "out", "optimizer")}
    if "optimizer" in doc:
        options["optimizer"] = OptimizerConfig(**doc["optimizer"])
    overrides = {
        "master_seed": args.seed,
        "n_trajectories": args.trajectories,
        "t_burn": args.t_burn,
        "t_measure": args.t_measure,
        "measure_every": args.measure_every,
        "profile_every": args.profile_every,
        "initial": args.initial,
        "strategy": args.strategy,
    }
    for k, v in overrides.items():
        if v is not None:
            options[k] = v
    if args.renyi_order is not None:
        opt = options.get("optimizer") or OptimizerConfig()
        opt.renyi_order = args.renyi_order
        options["optimizer"] = opt
    options.setdefault("record_profiles", not args.no_profiles)
    return ExperimentManifest(model=model, L=L, p=p, out=out, options=options)


def _cmd_run(model: str, args) -> int:
    manifest = _manifest_from_args(model, args)
    threads = resolve_threads(args.threads)
    for config in manifest.configs():
        result = run_ensemble(config, threads=threads, keep_records=config.record_profiles)
        cdir = io.export_cell(manifest.out, config, result)
        tail = result.series.mean_s_half[-1]
        print(
            f"{model} L={config.L} p={config.p:g}: "
            f"<S_half>={tail:.4g} over {config.n_trajectories} trajectories -> {cdir}"
        )
    return EXIT_OK


def _cmd_disentangle_bench(args) -> int:
    Ls = _int_list(args.L)
    nes = _int_list(args.ne)
    if not Ls or not nes:
        raise ConfigError("need --L and --ne lists")
    rows = []
    censored_any = False
    for L in Ls:
        for n_e in nes:
            for rep in range(args.reps):
                seed = spawn_trajectory_seed(args.seed, hash((L, n_e, rep)) % (1 << 31))
                rng = make_rng(seed)
                if args.model == "clifford":
                    from .stabilizer.game import clifford_disentangle_experiment

                    n_d = clifford_disentangle_experiment(L, n_e, rng, strategy=args.strategy or "ordered_19")
                    censored = False
                else:
                    from .haar import haar_disentangle_experiment

                    n_d, censored = haar_disentangle_experiment(L, n_e, rng, step_cap=args.step_cap)
                censored_any |= censored
                rows.append((L, n_e, rep, n_d, int(censored)))
                print(f"{args.model} L={L} n_e={n_e} rep={rep}: n_d={n_d}{' (censored)' if censored else ''}")
    out = Path(args.out or "out") / f"disentangle_{args.model}.csv"
    lines = ["# format_version=1", f"# model={args.model} kind=disentangle-bench", "L,n_e,rep,n_d,censored"]
    lines += [",".join(str(v) for v in row) for row in rows]
    io.atomic_write_text(out, "\n".join(lines) + "\n")
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    import glob as globmod

    cells = []
    for pattern in args.inputs:
        cells.extend(Path(p) for p in sorted(globmod.glob(str(pattern))))
    cells = [c for c in cells if (c / "aggregate.csv").exists()]
    if not cells:
        raise ConfigError("no input cells matched")
    families = set()
    per_cell = {}
    for cdir in cells:
        meta, t, mean, var, n = io.read_aggregate_csv(cdir / "aggregate.csv")
        families.add(meta.get("family_hash", "?"))
        entry = {
            "config_hash": meta.get("config_hash"),
            "family_hash": meta.get("family_hash"),
            "model": meta.get("model"),
            "L": int(meta["L"]),
            "p": float(meta["p"]),
            "steady_mean_s_half": float(np.mean(mean[len(mean) // 2 :])),
            "sem_s_half": float(np.sqrt(np.mean(var[len(var) // 2 :]) / max(n, 1))),
            "n_traj": n,
        }
        profs = sorted(cdir.glob("traj_*.csv"))
        if profs:
            snaps = np.concatenate([io.read_trajectory_csv(p)[2] for p in profs], axis=0)
            entry["W"] = analysis.spatial_fluctuations(snaps) if len(snaps) >= 2 else None
        if args.fit_growth:
            pos = (t > 0) & (mean > 0)
            if pos.sum() >= 3:
                fit = analysis.fit_power_law(t[pos], mean[pos])
                entry["growth_fit"] = {
                    "exponent": fit.exponent,
                    "stderr": fit.stderr,
                    "r2": fit.r2,
                    "prefactor": fit.prefactor,
                }
        per_cell[str(cdir)] = entry
    if len(families) > 1 and not args.force:
        raise ConfigError(f"mixed family hashes {sorted(families)}; pass --force to combine")
    doc = {"cells": per_cell, "families": sorted(families)}
    out = Path(args.out or "analysis.json")
    io.atomic_write_text(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out} ({len(per_cell)} cells)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circuit-game", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for model in ("classical", "fredkin", "clifford", "haar"):
        sp = sub.add_parser(f"run-{model}", help=f"sweep the {model} model")
        _add_run_flags(sp)
        sp.set_defaults(func=lambda a, m=model: _cmd_run(m, a))

    bench = sub.add_parser("disentangle-bench", help="n_d(n_e) depth experiments")
    bench.add_argument("--model", choices=("clifford", "haar"), required=True)
    bench.add_argument("--L", required=True)
    bench.add_argument("--ne", required=True, help="comma-separated entangling gate counts")
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--step-cap", type=int, dest="step_cap")
    bench.add_argument("--strategy")
    bench.add_argument("--out")
    bench.set_defaults(func=_cmd_disentangle_bench)

    an = sub.add_parser("analyze", help="summarize canonical output cells")
    an.add_argument("inputs", nargs="+", help="cell directory globs")
    an.add_argument("--out")
    an.add_argument("--force", action="store_true", help="allow mixed family hashes")
    an.add_argument("--fit-growth", action="store_true")
    an.set_defaults(func=_cmd_analyze)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG if not isinstance(exc, FileNotFoundError) else EXIT_IO
    except StepCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
