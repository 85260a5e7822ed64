"""Constructive Builder strategy for RR(C4, P_n, H)."""

from .books import BookError, BookIndex, BookLibrary, BookWalker
from .butterfly import Butterfly, ButterflyError, MaloCase, butterfly_force_plan, malo_dispatch
from .core import (
    ContractionError,
    ContractionFrame,
    EngineError,
    EngineState,
    InductiveBuilder,
    Move,
    Phase,
    contraction_push,
    engine_next_move,
    engine_observe,
    first_blue_handler,
)
from .hamilton import NoHamiltonPath, check_lacing_path, hamilton_path

__all__ = [
    "BookError",
    "BookIndex",
    "BookLibrary",
    "BookWalker",
    "Butterfly",
    "ButterflyError",
    "ContractionError",
    "ContractionFrame",
    "EngineError",
    "EngineState",
    "InductiveBuilder",
    "MaloCase",
    "Move",
    "NoHamiltonPath",
    "Phase",
    "butterfly_force_plan",
    "check_lacing_path",
    "contraction_push",
    "engine_next_move",
    "engine_observe",
    "first_blue_handler",
    "hamilton_path",
    "malo_dispatch",
]
