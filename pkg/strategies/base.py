"""
Controller fragments and the controller that runs one of them.

A fragment drives a fixed set of cops (indices into the controller's cop
tuple). It never holds play state itself: start() returns a frozen state,
respond() takes it back together with the cop positions, the robber's
previous position and its current one, and returns the cops it moves plus
the next state. Composite controllers keep those states in their memory.
"""
import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Hashable, NamedTuple, Optional, Sequence, Tuple

from engine.chaser import Chaser
from engine.controller import Controller, ControllerState
from engine.paths import ShortestPaths, shortest_paths
from errors import StrategyRefusal
from grid_model.grid import Coord, OrientedGrid

logger = logging.getLogger(__name__)

Moves = Dict[int, Coord]


class FragmentStatus(str, Enum):
    RUNNING = "running"
    CONFINED = "confined"
    GUARDING = "guarding"


class Fragment(ABC):
    name = "fragment"

    def __init__(self, grid: OrientedGrid, cops: Sequence[int]):
        self.grid = grid
        self.cops: Tuple[int, ...] = tuple(cops)
        self.paths: ShortestPaths = shortest_paths(grid.to_digraph())

    @abstractmethod
    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        """Check the activation preconditions and return the initial state"""

    @abstractmethod
    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        ...

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.RUNNING

    def describe(self, state: Hashable) -> Dict[str, Any]:
        return {"fragment": self.name, "status": self.status(state).value}

    def refuse(self, message: str, minimal_n: Optional[int] = None):
        raise StrategyRefusal(f"{self.name}: {message}", minimal_n)

    def caught(self, positions: Sequence[Coord], robber: Coord) -> bool:
        """One of this fragment's own cops stands on robber"""
        return any(positions[c] == robber for c in self.cops)

    def toward(self, position: Coord, target: Coord) -> Coord:
        return self.paths.next_step(position, target)

    def distance(self, position: Coord, target: Coord) -> int:
        d = self.paths.distance(position, target)
        return -1 if d is None else d


def apply_moves(positions: Sequence[Coord], moves: Moves) -> Tuple[Coord, ...]:
    moved = list(positions)
    for index, target in moves.items():
        moved[index] = target
    return tuple(moved)


class FragmentMemory(NamedTuple):
    before: Coord
    state: Hashable


class FragmentController(Controller):
    """
    One fragment placed in position, plus an optional force-move chaser as
    the last cop. With goal_on_confinement the controller reports success as
    soon as the fragment confines the robber to a stream.
    """

    def __init__(self, grid: OrientedGrid, fragment: Fragment, placement: Sequence[Coord],
                 chaser_start: Optional[Coord] = None, domain: Optional[Sequence[Coord]] = None,
                 goal_on_confinement: bool = False, name: Optional[str] = None):
        super().__init__(grid)
        self.grid = grid
        self.fragment = fragment
        self.placement = tuple(placement)
        self.chaser = Chaser(grid, len(self.placement)) if chaser_start is not None else None
        self.chaser_start = chaser_start
        self.domain = list(domain) if domain is not None else None
        self.goal_on_confinement = goal_on_confinement
        self.name = name or fragment.name

    @property
    def cop_count(self) -> int:
        return len(self.placement) + (1 if self.chaser is not None else 0)

    def place(self) -> Tuple[Coord, ...]:
        if self.chaser is None:
            return self.placement
        return self.placement + (self.chaser_start,)

    def observe_robber(self, robber: Coord) -> ControllerState:
        cops = self.place()
        return ControllerState(cops, FragmentMemory(robber, self.fragment.start(cops, robber)))

    def step(self, state: ControllerState, robber: Coord) -> ControllerState:
        memory: FragmentMemory = state.memory
        moves, fragment_state = self.fragment.respond(memory.state, state.cops, memory.before, robber)
        if self.chaser is not None:
            moves[self.chaser.cop_index] = self.chaser.next_position(state.cops[self.chaser.cop_index], robber)
        return ControllerState(apply_moves(state.cops, moves), FragmentMemory(robber, fragment_state))

    def is_goal(self, state: ControllerState) -> bool:
        return self.goal_on_confinement and self.fragment.status(state.memory.state) is FragmentStatus.CONFINED

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        return self.fragment.describe(state.memory.state)

    def robber_starts(self) -> Optional[Sequence[Coord]]:
        return self.domain
