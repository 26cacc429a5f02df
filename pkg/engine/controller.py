"""
Cop controllers.

A controller is deterministic and keeps everything it remembers in the
ControllerState it hands back; the object itself only holds configuration.
That is what lets the verifier branch a play without copying controllers.
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, NamedTuple, Optional, Sequence, Tuple

from grid_model.digraph import Vertex

logger = logging.getLogger(__name__)


class ControllerState(NamedTuple):
    cops: Tuple[Vertex, ...]
    memory: Hashable = None


class Controller(ABC):
    name: str = "controller"
    # False when memory carries a counter that must not be folded into repeat detection
    step_invariant: bool = True

    def __init__(self, board: Any):
        self.board = board
        self.digraph = board.to_digraph()

    @property
    @abstractmethod
    def cop_count(self) -> int:
        ...

    @abstractmethod
    def place(self) -> Tuple[Vertex, ...]:
        """Initial cop positions, chosen before the robber is seen"""

    @abstractmethod
    def observe_robber(self, robber: Vertex) -> ControllerState:
        """State at step 0 once the robber has placed itself"""

    @abstractmethod
    def step(self, state: ControllerState, robber: Vertex) -> ControllerState:
        """One cop half-move: every cop stays or follows one out-arc"""

    def is_goal(self, state: ControllerState) -> bool:
        """A controller-declared success short of capture (e.g. confinement)"""
        return False

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        return {}

    def robber_starts(self) -> Optional[Sequence[Vertex]]:
        """Robber starts the controller is meant for; None means every vertex"""
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, cops={self.cop_count})"


class PositionalController(Controller):
    """Memoryless controller: the next cop tuple depends only on cops and robber"""

    def observe_robber(self, robber: Vertex) -> ControllerState:
        return ControllerState(tuple(self.place()))

    def step(self, state: ControllerState, robber: Vertex) -> ControllerState:
        return ControllerState(tuple(self.respond(state.cops, robber)))

    @abstractmethod
    def respond(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Tuple[Vertex, ...]:
        ...
