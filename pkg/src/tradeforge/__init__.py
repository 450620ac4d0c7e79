"""Genetic-algorithm trade finder for fantasy football rosters."""

from .domain import (
    EngineConfig,
    FreeAgentCeilings,
    LeagueSnapshot,
    PlayerProjection,
    Position,
    Roster,
    Trade,
    TradeEvaluation,
    ValidationError,
    build_config,
    preset_config,
)

__version__ = "0.1.0"

__all__ = [
    "EngineConfig",
    "FreeAgentCeilings",
    "LeagueSnapshot",
    "PlayerProjection",
    "Position",
    "Roster",
    "Trade",
    "TradeEvaluation",
    "ValidationError",
    "build_config",
    "preset_config",
    "__version__",
]
