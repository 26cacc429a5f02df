"""
Baseline controllers: cops that only chase, and cops that never move.
"""
import logging
from typing import Any, Tuple

from engine.controller import PositionalController
from engine.paths import shortest_paths
from grid_model.digraph import Vertex

logger = logging.getLogger(__name__)


def spread_placement(board: Any, count: int) -> Tuple[Vertex, ...]:
    """count vertices spread evenly through the board's vertex order"""
    vertices = board.to_digraph().vertices
    if count == 0:
        return ()
    stride = max(len(vertices) // count, 1)
    # on a grid, stepping the index by n + 1 walks the main diagonal
    if hasattr(board, "n"):
        stride = max((board.n + 1) * max(board.n // count, 1), 1)
    return tuple(vertices[(i * stride) % len(vertices)] for i in range(count))


class ChaserController(PositionalController):
    """Every cop walks a shortest directed path to the robber"""

    def __init__(self, board: Any, count: int = 1):
        super().__init__(board)
        if count < 1:
            raise ValueError(f"a chaser controller needs at least one cop, got {count}")
        self.count = count
        self.name = f"chaser{count}"
        self.paths = shortest_paths(self.digraph)
        self._placement = spread_placement(board, count)

    @property
    def cop_count(self) -> int:
        return self.count

    def place(self) -> Tuple[Vertex, ...]:
        return self._placement

    def respond(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Tuple[Vertex, ...]:
        return tuple(self.paths.next_step(c, robber) for c in cops)


class IdleController(PositionalController):
    """Cops placed once that never move; with zero cops the robber plays alone"""

    def __init__(self, board: Any, count: int = 0):
        super().__init__(board)
        self.count = count
        self.name = "none" if count == 0 else f"idle{count}"
        self._placement = spread_placement(board, count)

    @property
    def cop_count(self) -> int:
        return self.count

    def place(self) -> Tuple[Vertex, ...]:
        return self._placement

    def respond(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Tuple[Vertex, ...]:
        return tuple(cops)
