import numpy as np
import pytest

from circuitgames import (
    GameConfig,
    Player,
    make_rng,
    run_ensemble,
    run_trajectory,
    schedule_step,
    spawn_trajectory_seed,
)
from circuitgames.models import make_game


def test_schedule_degenerate_coins():
    rng = make_rng(1)
    assert all(schedule_step(rng, 8, 0.0)[1] is Player.ENTANGLER for _ in range(200))
    assert all(schedule_step(rng, 8, 1.0)[1] is Player.DISENTANGLER for _ in range(200))


def test_schedule_bond_uniform_binomial():
    # L=4 -> 3 bonds; each hit count within 3 sigma of n/3
    rng = make_rng(7)
    n = 10**6
    counts = np.zeros(4)
    for _ in range(n):
        bond, _ = schedule_step(rng, 4, 0.5)
        counts[bond] += 1
    assert counts[0] == 0
    sigma = np.sqrt(n * (1 / 3) * (2 / 3))
    assert np.all(np.abs(counts[1:] - n / 3) < 3 * sigma)


def test_schedule_player_bias():
    rng = make_rng(3)
    n = 200_000
    hits = sum(schedule_step(rng, 4, 0.3)[1] is Player.DISENTANGLER for _ in range(n))
    sigma = np.sqrt(n * 0.3 * 0.7)
    assert abs(hits - 0.3 * n) < 4 * sigma


def test_spawn_seed_deterministic():
    assert spawn_trajectory_seed(123, 7) == spawn_trajectory_seed(123, 7)


def test_spawn_seed_collision_scan():
    rng = np.random.default_rng(0)
    seeds = rng.integers(0, 2**63, size=10_000)
    a = {spawn_trajectory_seed(int(s), 0) for s in seeds}
    b = {spawn_trajectory_seed(int(s), 1) for s in seeds}
    assert len(a) == len(b) == 10_000
    assert not (a & b)
    for s in seeds[:10_000:7]:
        i = int(s) % 97
        assert spawn_trajectory_seed(int(s), i) != spawn_trajectory_seed(int(s) + 1, i)


def _record(model, L, p, **kw):
    defaults = dict(t_burn=3, t_measure=6, measure_every=2, record_profiles=True)
    defaults.update(kw)
    config = GameConfig(model=model, L=L, p=p, **defaults).validate()
    return run_trajectory(make_game(config), config, seed=99), config


def test_trajectory_row_count_and_times():
    rec, config = _record("classical", 8, 0.4)
    assert len(rec.times) == config.t_measure // config.measure_every
    assert np.all(np.diff(rec.times) > 0)
    assert rec.times[0] == config.t_burn + config.measure_every


def test_trajectory_burn_rows_when_requested():
    rec, config = _record("classical", 8, 0.4, record_burn=True, t_burn=4)
    assert rec.times[0] <= 4
    assert len(rec.times) == 4 // 2 + 6 // 2


def test_classical_disentangler_only_all_zero():
    rec, _ = _record("classical", 16, 1.0, t_burn=20)
    assert np.all(rec.profiles == 0)
    assert np.all(rec.s_half == 0)


def test_classical_entangler_only_reaches_pyramid():
    rec, config = _record("classical", 12, 0.0, t_burn=200, t_measure=2, measure_every=1)
    x = np.arange(1, 13)
    assert np.array_equal(rec.profiles[-1], np.minimum(x, 13 - x))


def test_clifford_fixed_seed_bit_identical():
    for threads in (1,):
        cfg = GameConfig(
            model="clifford", L=8, p=0.4, t_burn=5, t_measure=10, measure_every=2,
            record_profiles=True, master_seed=5, n_trajectories=2,
        )
        a = run_ensemble(cfg, threads=threads, keep_records=True)
        b = run_ensemble(cfg, threads=threads, keep_records=True)
        assert np.array_equal(a.series.mean_s_half, b.series.mean_s_half)
        for ra, rb in zip(a.records, b.records):
            assert ra.seed == rb.seed
            assert np.array_equal(ra.s_half, rb.s_half)
            assert np.array_equal(ra.profiles, rb.profiles)


def test_ensemble_order_independent_aggregation():
    cfg = GameConfig(
        model="classical", L=16, p=0.5, t_burn=2, t_measure=10, measure_every=1,
        master_seed=11, n_trajectories=6, record_profiles=True,
    )
    serial = run_ensemble(cfg, threads=1)
    parallel = run_ensemble(cfg, threads=2)
    assert np.array_equal(serial.series.mean_s_half, parallel.series.mean_s_half)
    assert np.array_equal(serial.series.var_s_half, parallel.series.var_s_half)
    assert np.array_equal(serial.profiles, parallel.profiles)


def test_run_ensemble_validates():
    with pytest.raises(Exception):
        run_ensemble(GameConfig(model="classical", L=1, p=0.5))
