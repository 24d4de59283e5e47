"""Model registry: build a game object from a GameConfig."""
from __future__ import annotations

from .config import ConfigError, GameConfig


def make_game(config: GameConfig):
    if config.model == "classical":
        from .classical import ClassicalGame

        return ClassicalGame(config.L, initial=config.initial)
    if config.model == "clifford":
        from .stabilizer.game import CliffordGame

        return CliffordGame(config.L, strategy=config.strategy)
    if config.model == "haar":
        from .haar import HaarGame

        return HaarGame(config.L, initial=config.initial, optimizer=config.optimizer)
    if config.model == "fredkin":
        from .fredkin import FredkinGame

        return FredkinGame(config.L, initial=config.initial)
    raise ConfigError(f"unknown model {config.model!r}")
