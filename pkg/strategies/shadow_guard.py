"""
Holding a diagonal shadow of the robber.

A cop on a diagonal shadow copies the robber's moves through shadow_step and
stays on a shadow forever; the robber then cannot cross the guard's mirror.
"""
import logging
from typing import Any, Dict, Hashable, NamedTuple, Sequence, Tuple

from decomposition.shadows import Mirror, is_diagonal_shadow, mirror_of, shadow_step
from errors import InvariantViolation
from grid_model.grid import Coord, OrientedGrid
from strategies.base import Fragment, FragmentStatus, Moves

logger = logging.getLogger(__name__)


def guard_move(grid: OrientedGrid, before: Coord, robber: Coord, guard: Coord) -> Coord:
    """The guard's reply to the robber moving from before to robber"""
    moved = shadow_step(grid, before, robber, guard)
    if moved != robber and not is_diagonal_shadow(grid, robber, moved):
        raise InvariantViolation(f"guard left the shadows of {robber} at {moved}")
    return moved


class GuardState(NamedTuple):
    mirror: Mirror


class ShadowGuard(Fragment):
    name = "shadowguard"

    def __init__(self, grid: OrientedGrid, cop: int):
        super().__init__(grid, (cop,))
        self.cop = cop

    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        guard = positions[self.cop]
        if guard == robber:
            return None
        if not is_diagonal_shadow(self.grid, robber, guard):
            self.refuse(f"{guard} is not a diagonal shadow of {robber}")
        return GuardState(mirror_of(self.grid, robber, guard))

    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        if state is None or self.caught(positions, robber):
            return {}, state
        moved = guard_move(self.grid, before, robber, positions[self.cop])
        if moved != robber and mirror_of(self.grid, robber, moved) != state.mirror:
            raise InvariantViolation(f"mirror moved from {state.mirror} to {mirror_of(self.grid, robber, moved)}")
        return {self.cop: moved}, state

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.GUARDING

    def describe(self, state: Hashable) -> Dict[str, Any]:
        notes: Dict[str, Any] = {"fragment": self.name, "status": "guarding"}
        if isinstance(state, GuardState):
            notes["mirror"] = str(state.mirror)
        return notes
