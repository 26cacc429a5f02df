"""
Playing a cover's strategy on the covered board.

The lifted controller keeps a lift of the robber's walk in the cover, runs the
cover controller against that lift and projects its cops back down. Because
the projection is locally bijective every robber move has exactly one lift.
"""
import logging
from typing import Any, Dict, Optional, Sequence, Tuple

from engine.controller import Controller, ControllerState
from errors import LiftConsistencyError
from grid_model.covering import CoveringMap
from grid_model.digraph import Vertex

logger = logging.getLogger(__name__)


class LiftedController(Controller):
    step_invariant = True

    def __init__(self, cover: CoveringMap, source: Controller):
        super().__init__(cover.target)
        self.cover = cover
        self.source = source
        self.name = f"lift({source.name})"
        self.step_invariant = source.step_invariant

    @property
    def cop_count(self) -> int:
        return self.source.cop_count

    def _project(self, cops: Sequence[Vertex]) -> Tuple[Vertex, ...]:
        return tuple(self.cover.project(c) for c in cops)

    def place(self) -> Tuple[Vertex, ...]:
        return self._project(self.source.place())

    def observe_robber(self, robber: Vertex) -> ControllerState:
        fiber = self.cover.fiber(robber)
        if not fiber:
            raise LiftConsistencyError(f"{robber!r} has an empty fiber")
        lifted_robber = min(fiber)
        source_state = self.source.observe_robber(lifted_robber)
        return ControllerState(self._project(source_state.cops), (source_state, lifted_robber))

    def _lift_move(self, previous: Vertex, robber: Vertex) -> Vertex:
        for candidate in self.cover.source.moves(previous):
            if self.cover.project(candidate) == robber:
                return candidate
        raise LiftConsistencyError(f"robber move to {robber!r} has no lift from {previous!r}")

    def step(self, state: ControllerState, robber: Vertex) -> ControllerState:
        source_state, previous = state.memory
        lifted_robber = self._lift_move(previous, robber)
        source_next = self.source.step(source_state, lifted_robber)
        source_next = ControllerState(tuple(source_next.cops), source_next.memory)
        return ControllerState(self._project(source_next.cops), (source_next, lifted_robber))

    def is_goal(self, state: ControllerState) -> bool:
        return self.source.is_goal(state.memory[0])

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        source_state, lifted = state.memory
        notes = dict(self.source.annotate(source_state))
        notes["lifted_robber"] = list(lifted)
        return notes

    def robber_starts(self) -> Optional[Sequence[Vertex]]:
        return None


def same_board(played: Any, source: Any) -> bool:
    """Two boards match when their digraphs share vertices and arcs"""
    if played is source:
        return True
    mine, theirs = played.to_digraph(), source.to_digraph()
    return set(mine.vertices) == set(theirs.vertices) and set(mine.edges()) == set(theirs.edges())


def lift_strategy(cover: CoveringMap, controller: Controller) -> LiftedController:
    if not same_board(controller.board, cover.source):
        raise LiftConsistencyError(f"{controller.name} plays on {controller.board!r}, not on the cover's source")
    lifted = LiftedController(cover, controller)
    logger.info(f"✅ Lifted {controller.name} through {cover!r}")
    return lifted
