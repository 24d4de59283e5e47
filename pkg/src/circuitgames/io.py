"""Canonical CSV/JSON result files.

Every output embeds the exact config hash plus a sweep "family" hash
(config minus L, p, seed) in `#`-comment header lines; floats are written
with 17 significant digits so files round-trip losslessly and re-runs are
byte-identical.  All writes go through a temp file + rename.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .config import GameConfig, TrajectoryRecord, config_hash

FORMAT_VERSION = 1


def family_hash(config: GameConfig) -> str:
    """Hash of the sweep family: the config with L, p and seed factored out."""
    d = config.to_dict()
    for k in ("L", "p", "master_seed"):
        d.pop(k, None)
    return config_hash(d)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def atomic_write_text(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header_lines(config: GameConfig) -> list:
    return [
        f"# format_version={FORMAT_VERSION}",
        f"# config_hash={config.hash()}",
        f"# family_hash={family_hash(config)}",
        f"# model={config.model} L={config.L} p={_fmt(config.p)}",
    ]


def cell_dir(out_dir, config: GameConfig) -> Path:
    return Path(out_dir) / f"{config.model}_L{config.L}_p{format(config.p, 'g')}"


def write_trajectory_csv(path, config: GameConfig, record: TrajectoryRecord):
    """Wide canonical form: one profile row per sampled time."""
    if record.profiles is None or len(record.profiles) == 0:
        raise ValueError("record has no profiles; run with record_profiles")
    width = record.profiles.shape[1]
    lines = _header_lines(config)
    lines.append(f"# trajectory_index={record.trajectory_index} seed={record.seed}")
    lines.append("t," + ",".join(f"S_{i}" for i in range(1, width + 1)))
    for t, row in zip(record.profile_times, record.profiles):
        lines.append(_fmt(t) + "," + ",".join(_fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_aggregate_csv(path, config: GameConfig, series):
    lines = _header_lines(config)
    lines.append("t,mean_S_half,var_S_half,n_traj")
    for t, m, v in zip(series.times, series.mean_s_half, series.var_s_half):
        lines.append(f"{_fmt(t)},{_fmt(m)},{_fmt(v)},{series.n_trajectories}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_sidecar_json(path, config: GameConfig, extra: dict | None = None):
    doc = {
        "format_version": FORMAT_VERSION,
        "library_version": __version__,
        "config_hash": config.hash(),
        "family_hash": family_hash(config),
        "config": config.to_dict(),
    }
    if extra:
        doc.update(extra)
    atomic_write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def export_cell(out_dir, config: GameConfig, result) -> Path:
    """Write one (model, L, p) cell: trajectory CSVs (when profiles were
    recorded), the aggregate CSV and the JSON sidecar."""
    if result.series is None or len(result.series.times) == 0:
        raise ValueError("nothing to export: empty result")
    cdir = cell_dir(out_dir, config)
    cdir.mkdir(parents=True, exist_ok=True)
    if result.records:
        for rec in result.records:
            if rec.profiles is not None:
                write_trajectory_csv(cdir / f"traj_{rec.trajectory_index:05d}.csv", config, rec)
    write_aggregate_csv(cdir / "aggregate.csv", config, result.series)
    extra = {}
    if result.series.mean_profile is not None:
        extra["mean_profile"] = [float(v) for v in result.series.mean_profile]
    write_sidecar_json(cdir / "meta.json", config, extra)
    return cdir


def read_csv(path):
    """Parse a canonical CSV into (meta dict, header list, float matrix)."""
    meta = {}
    header = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if "=" in tok:
                        k, v = tok.split("=", 1)
                        meta[k] = v
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ValueError(f"{path}: no header row")
    return meta, header, np.asarray(rows)


def read_trajectory_csv(path):
    meta, header, data = read_csv(path)
    return meta, data[:, 0], data[:, 1:]


def read_aggregate_csv(path):
    meta, header, data = read_csv(path)
    return meta, data[:, 0], data[:, 1], data[:, 2], int(data[0, 3]) if len(data) else 0


def read_sidecar_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
