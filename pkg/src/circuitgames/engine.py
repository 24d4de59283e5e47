"""Shared stochastic schedule, trajectory execution and ensemble aggregation.

Every model is driven the same way: at each updating step a random bond is
chosen and an entangler/disentangler coin with bias p is flipped; one time
step is a set of L updating steps (dt = 1/L).  Trajectories are independent
RNG streams derived from a master seed, so ensembles are reproducible
bit-for-bit regardless of execution order.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import EnsembleSeries
from .config import GameConfig, TrajectoryRecord


class Player(enum.Enum):
    ENTANGLER = 0
    DISENTANGLER = 1


def spawn_trajectory_seed(master_seed: int, trajectory_index: int) -> int:
    """Collision-free 128-bit child seed for one trajectory.

    Uses numpy's splittable SeedSequence spawn-key construction, so the
    same (master_seed, index) pair always yields the same seed and distinct
    pairs yield distinct streams.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=(trajectory_index,))
    words = ss.generate_state(4, np.uint32)
    seed = 0
    for w in words:
        seed = (seed << 32) | int(w)
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) generator; independent streams per seed."""
    return np.random.Generator(np.random.Philox(seed))


def schedule_step(rng: np.random.Generator, L: int, p: float):
    """Draw one updating step for an L-site chain: a uniform bond in
    1..L-1 and the player coin (disentangler with probability exactly p).
    Bond and coin are independent draws, bond first."""
    if L < 2:
        raise ValueError("L must be >= 2")
    bond = 1 + int(rng.integers(0, L - 1))
    player = Player.DISENTANGLER if rng.random() < p else Player.ENTANGLER
    return bond, player


def advance_generic(game, rng: np.random.Generator, p: float, n_steps: int):
    """Default advance: n_steps time steps of L updating steps each.

    Consumes the RNG exactly like repeated schedule_step calls on a chain
    with game.n_bonds + 1 sites; fast models override advance() with a
    compiled kernel that draws in the same order.
    """
    nb = game.n_bonds
    for _ in range(int(n_steps) * game.L):
        x = 1 + int(rng.integers(0, nb))
        if rng.random() < p:
            game.disentangle(x, rng)
        else:
            game.entangle(x, rng)


def run_trajectory(game, config: GameConfig, seed: int, trajectory_index: int = 0) -> TrajectoryRecord:
    """Burn in, then record observables every measure_every time steps.

    The measurement phase produces floor(t_measure / measure_every) rows;
    with record_burn the burn-in phase is sampled at the same cadence.
    """
    rng = make_rng(seed)
    p = config.p
    cadence = config.measure_every
    profile_stride = max(1, (config.profile_every or cadence) // cadence)

    times, s_half, profiles, profile_times = [], [], [], []
    n_sampled = 0

    def sample(t):
        nonlocal n_sampled
        times.append(float(t))
        s_half.append(game.s_half())
        if config.record_profiles and n_sampled % profile_stride == 0:
            profiles.append(game.profile().copy())
            profile_times.append(float(t))
        n_sampled += 1

    t = 0
    t_burn = config.burn_in
    if config.record_burn:
        while t < t_burn:
            dt = min(cadence, t_burn - t)
            game.advance(rng, p, dt)
            t += dt
            sample(t)
    else:
        game.advance(rng, p, t_burn)
        t = t_burn

    n_rows = config.t_measure // cadence
    for _ in range(n_rows):
        game.advance(rng, p, cadence)
        t += cadence
        sample(t)

    return TrajectoryRecord(
        config_hash=config.hash(),
        trajectory_index=trajectory_index,
        seed=seed,
        times=np.asarray(times),
        s_half=np.asarray(s_half),
        profiles=np.asarray(profiles) if profiles else None,
        profile_times=np.asarray(profile_times) if profile_times else None,
    )


@dataclass
class EnsembleResult:
    """Aggregated output of run_ensemble.

    ``profiles`` stacks the recorded profile snapshots of all trajectories
    in trajectory-index order (shape: total_snapshots x width).
    """

    config: GameConfig
    series: EnsembleSeries
    s_half_matrix: np.ndarray | None = None
    profiles: np.ndarray | None = None
    records: list | None = None


def _worker(args) -> TrajectoryRecord:
    config, index = args
    from .models import make_game

    game = make_game(config)
    seed = spawn_trajectory_seed(config.master_seed, index)
    return run_trajectory(game, config, seed, index)


def resolve_threads(threads: int | None = None) -> int:
    if threads is not None and threads > 0:
        return threads
    env = os.environ.get("CIRCUIT_GAME_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_ensemble(
    config: GameConfig,
    threads: int | None = None,
    keep_records: bool = False,
    keep_matrix: bool = False,
) -> EnsembleResult:
    """Run config.n_trajectories independent trajectories and aggregate.

    Aggregation accumulates in trajectory-index order (executor.map keeps
    input order), so results do not depend on completion order.
    """
    config.validate()
    n = config.n_trajectories
    jobs = [(config, i) for i in range(n)]
    workers = resolve_threads(threads)

    sum_s = sumsq_s = times = None
    profiles, records, rows = [], [], []

    def consume(rec: TrajectoryRecord):
        nonlocal sum_s, sumsq_s, times
        if times is None:
            times = rec.times
            sum_s = np.zeros_like(rec.s_half)
            sumsq_s = np.zeros_like(rec.s_half)
        sum_s += rec.s_half
        sumsq_s += rec.s_half**2
        if rec.profiles is not None:
            profiles.append(rec.profiles)
        if keep_records:
            records.append(rec)
        if keep_matrix:
            rows.append(rec.s_half)

    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rec in pool.map(_worker, jobs, chunksize=max(1, n // (4 * workers))):
                consume(rec)
    else:
        for job in jobs:
            consume(_worker(job))

    mean = sum_s / n
    var = np.maximum(sumsq_s / n - mean**2, 0.0)
    series = EnsembleSeries(
        model=config.model,
        p=config.p,
        L=config.L,
        times=times,
        mean_s_half=mean,
        var_s_half=var,
        n_trajectories=n,
    )
    stacked = np.concatenate(profiles, axis=0) if profiles else None
    if stacked is not None:
        series.mean_profile = stacked.mean(axis=0)
    return EnsembleResult(
        config=config,
        series=series,
        s_half_matrix=np.asarray(rows) if keep_matrix else None,
        profiles=stacked,
        records=records if keep_records else None,
    )
