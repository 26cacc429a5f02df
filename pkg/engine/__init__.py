"""
The game engine: play, exhaustive verification and strategy lifting through covers.
"""

from .controller import Controller, ControllerState, PositionalController
from .state import Outcome, OutcomeKind, Trace, TraceStep, TRACE_SCHEMA_VERSION
from .paths import ShortestPaths, shortest_paths
from .policies import GreedyEvade, RandomRobber, RobberPolicy, ScriptedRobber, StationaryRobber
from .game import check_cop_moves, play, replay_trace
from .verifier import EscapeWitness, Verdict, VerdictKind, verify_controller
from .lifting import LiftedController, lift_strategy
from .chaser import Chaser, force_move_chaser
from .trace_io import load_trace, save_trace

__all__ = [
    "Controller",
    "ControllerState",
    "PositionalController",
    "Outcome",
    "OutcomeKind",
    "Trace",
    "TraceStep",
    "TRACE_SCHEMA_VERSION",
    "ShortestPaths",
    "shortest_paths",
    "GreedyEvade",
    "RandomRobber",
    "RobberPolicy",
    "ScriptedRobber",
    "StationaryRobber",
    "check_cop_moves",
    "play",
    "replay_trace",
    "EscapeWitness",
    "Verdict",
    "VerdictKind",
    "verify_controller",
    "LiftedController",
    "lift_strategy",
    "Chaser",
    "force_move_chaser",
    "load_trace",
    "save_trace",
]
