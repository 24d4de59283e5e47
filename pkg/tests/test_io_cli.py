import json
from pathlib import Path

import numpy as np
import pytest

from circuitgames import GameConfig, run_ensemble
from circuitgames.cli import EXIT_CAP, EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from circuitgames.io import (
    export_cell,
    family_hash,
    read_aggregate_csv,
    read_sidecar_json,
    read_trajectory_csv,
    write_trajectory_csv,
)


def small_result(p=0.5, seed=7, L=8):
    cfg = GameConfig(
        model="classical", L=L, p=p, master_seed=seed, n_trajectories=3,
        t_burn=2, t_measure=8, measure_every=2, record_profiles=True,
    )
    return cfg, run_ensemble(cfg, threads=1, keep_records=True)


def test_export_roundtrip(tmp_path):
    cfg, res = small_result()
    cdir = export_cell(tmp_path, cfg, res)
    meta, times, prof = read_trajectory_csv(cdir / "traj_00000.csv")
    rec = res.records[0]
    assert meta["config_hash"] == cfg.hash()
    assert np.array_equal(times, rec.profile_times)
    assert np.array_equal(prof, rec.profiles)  # lossless float round-trip
    meta, t, mean, var, n = read_aggregate_csv(cdir / "aggregate.csv")
    assert n == 3
    assert np.array_equal(t, res.series.times)
    assert np.array_equal(mean, res.series.mean_s_half)
    assert np.array_equal(var, res.series.var_s_half)
    side = read_sidecar_json(cdir / "meta.json")
    assert side["config_hash"] == cfg.hash()
    assert side["config"]["L"] == cfg.L


def test_export_empty_errors(tmp_path):
    cfg, res = small_result()
    rec = res.records[0]
    rec.profiles = None
    with pytest.raises(ValueError):
        write_trajectory_csv(tmp_path / "x.csv", cfg, rec)
    assert not (tmp_path / "x.csv").exists()


def test_family_hash_groups_sweeps():
    a = GameConfig(model="classical", L=8, p=0.4, master_seed=1)
    b = GameConfig(model="classical", L=16, p=0.5, master_seed=2)
    c = GameConfig(model="classical", L=8, p=0.4, master_seed=1, t_measure=999)
    assert family_hash(a) == family_hash(b)
    assert family_hash(a) != family_hash(c)
    assert a.hash() != b.hash()


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_cli_run_and_determinism(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    args = ["run-classical", "--L", "16", "--p", "1.0", "--trajectories", "4",
            "--t-burn", "3", "--t-measure", "6", "--measure-every", "2",
            "--seed", "5", "--threads", "1"]
    assert run_cli(*args, "--out", out1) == EXIT_OK
    assert run_cli(*args, "--out", out2) == EXIT_OK
    cell = "classical_L16_p1"
    f1 = (out1 / cell / "aggregate.csv").read_bytes()
    f2 = (out2 / cell / "aggregate.csv").read_bytes()
    assert f1 == f2
    t1 = (out1 / cell / "traj_00001.csv").read_bytes()
    t2 = (out2 / cell / "traj_00001.csv").read_bytes()
    assert t1 == t2
    _, _, prof = read_trajectory_csv(out1 / cell / "traj_00000.csv")
    assert np.all(prof == 0.0)  # p=1: disentangler-only game stays flat


def test_cli_pyramid_after_long_burn(tmp_path):
    assert run_cli(
        "run-classical", "--L", "12", "--p", "0.0", "--trajectories", "1",
        "--t-burn", "200", "--t-measure", "1", "--measure-every", "1",
        "--seed", "3", "--threads", "1", "--out", tmp_path,
    ) == EXIT_OK
    _, _, prof = read_trajectory_csv(tmp_path / "classical_L12_p0" / "traj_00000.csv")
    x = np.arange(1, 13)
    assert np.array_equal(prof[-1], np.minimum(x, 13 - x))


def test_cli_sweep_cartesian(tmp_path):
    assert run_cli(
        "run-classical", "--L", "8,12", "--p", "0.2,0.8", "--trajectories", "2",
        "--t-burn", "1", "--t-measure", "4", "--measure-every", "2",
        "--seed", "1", "--threads", "1", "--out", tmp_path,
    ) == EXIT_OK
    cells = sorted(d.name for d in tmp_path.iterdir())
    assert cells == [
        "classical_L12_p0.2", "classical_L12_p0.8",
        "classical_L8_p0.2", "classical_L8_p0.8",
    ]


def test_cli_config_file_with_overrides(tmp_path):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({
        "L": [8], "p": [0.5], "n_trajectories": 2, "t_burn": 1,
        "t_measure": 4, "measure_every": 2, "out": str(tmp_path / "o1"),
    }))
    assert run_cli("run-classical", "--config", cfgfile) == EXIT_OK
    assert (tmp_path / "o1" / "classical_L8_p0.5" / "meta.json").exists()
    # CLI flag overrides the file
    assert run_cli("run-classical", "--config", cfgfile, "--out", tmp_path / "o2") == EXIT_OK
    assert (tmp_path / "o2" / "classical_L8_p0.5" / "meta.json").exists()


def test_cli_exit_codes(tmp_path):
    assert run_cli("run-classical", "--L", "8", "--p", "2.0",
                   "--trajectories", "1", "--out", tmp_path) == EXIT_CONFIG
    assert run_cli("run-classical", "--config", tmp_path / "missing.json") == EXIT_IO
    assert run_cli("disentangle-bench", "--model", "clifford", "--L", "6",
                   "--ne", "0", "--reps", "1", "--out", tmp_path) == EXIT_OK


def test_cli_analyze_and_hash_guard(tmp_path):
    base = ["--trajectories", "2", "--t-burn", "1", "--t-measure", "4",
            "--measure-every", "2", "--seed", "1", "--threads", "1", "--out", tmp_path]
    assert run_cli("run-classical", "--L", "8,12", "--p", "0.5", *base) == EXIT_OK
    out = tmp_path / "analysis.json"
    assert run_cli("analyze", tmp_path / "classical_L*", "--out", out) == EXIT_OK
    doc = json.loads(out.read_text())
    assert len(doc["cells"]) == 2
    for cell in doc["cells"].values():
        assert "W" in cell and cell["n_traj"] == 2

    # a different family (t_measure changed) must be refused without --force
    assert run_cli("run-classical", "--L", "10", "--p", "0.5", "--trajectories", "2",
                   "--t-burn", "1", "--t-measure", "6", "--measure-every", "2",
                   "--seed", "1", "--threads", "1", "--out", tmp_path) == EXIT_OK
    assert run_cli("analyze", tmp_path / "classical_L*", "--out", out) == EXIT_CONFIG
    assert run_cli("analyze", tmp_path / "classical_L*", "--out", out, "--force") == EXIT_OK


def test_cli_disentangle_bench_csv(tmp_path):
    assert run_cli("disentangle-bench", "--model", "clifford", "--L", "6,8",
                   "--ne", "2,4", "--reps", "2", "--seed", "9",
                   "--out", tmp_path) == EXIT_OK
    text = (tmp_path / "disentangle_clifford.csv").read_text()
    rows = [l for l in text.splitlines() if l and not l.startswith("#") and not l.startswith("L,")]
    assert len(rows) == 8
