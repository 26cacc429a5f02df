"""
Cop strategies: conflux traps, shadow guards and hunts, paddles, and the
general composite, each addressable by id through the registry.
"""

from .base import Fragment, FragmentController, FragmentStatus, apply_moves
from .stream_trap import StreamEndgame, StreamTrap, StreamTrapState
from .traps import Trap1, Trap2, Trap3, entry_frame
from .shadow_guard import GuardState, ShadowGuard, guard_move
from .simple import ChaserController, IdleController
from .hunt import HuntGoal, HuntPlan, ShadowHuntController, StationPlan, double_shadow_13, kregular_13, shadow_capture_7
from .paddles import PaddleController, PaddleFrame, PaddleGuard, PaddlePairMachine, reform_path
from .general import GeneralController, Territory, general_319, territory_of
from .registry import REGISTRY, build_controller, strategy_ids

__all__ = [
    "Fragment",
    "FragmentController",
    "FragmentStatus",
    "apply_moves",
    "StreamEndgame",
    "StreamTrap",
    "StreamTrapState",
    "Trap1",
    "Trap2",
    "Trap3",
    "entry_frame",
    "ShadowGuard",
    "GuardState",
    "guard_move",
    "ChaserController",
    "IdleController",
    "HuntGoal",
    "HuntPlan",
    "ShadowHuntController",
    "StationPlan",
    "double_shadow_13",
    "kregular_13",
    "shadow_capture_7",
    "PaddleController",
    "PaddleFrame",
    "PaddleGuard",
    "PaddlePairMachine",
    "reform_path",
    "GeneralController",
    "Territory",
    "general_319",
    "territory_of",
    "REGISTRY",
    "build_controller",
    "strategy_ids",
]
