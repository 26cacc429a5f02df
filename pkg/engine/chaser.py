"""
The force-move chaser: one cop walking a shortest directed path to the robber.

On a strongly connected board the robber cannot stand still forever next to
it, which is how the trap strategies get the robber to move.
"""
import logging
from typing import Any, Tuple

from engine.paths import ShortestPaths, shortest_paths
from grid_model.digraph import Vertex

logger = logging.getLogger(__name__)


class Chaser:
    def __init__(self, board: Any, cop_index: int):
        self.board = board
        self.cop_index = cop_index
        self.paths: ShortestPaths = shortest_paths(board.to_digraph())

    def next_position(self, cop: Vertex, robber: Vertex) -> Vertex:
        return self.paths.next_step(cop, robber)

    def respond(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Tuple[Vertex, ...]:
        moved = list(cops)
        moved[self.cop_index] = self.next_position(cops[self.cop_index], robber)
        return tuple(moved)

    def distance(self, cop: Vertex, robber: Vertex) -> int:
        d = self.paths.distance(cop, robber)
        return -1 if d is None else d


def force_move_chaser(board: Any, cop_index: int) -> Chaser:
    if not board.to_digraph().is_strongly_connected():
        logger.warning(f"⚠️ {board!r} is not strongly connected; the chaser may stall")
    return Chaser(board, cop_index)
