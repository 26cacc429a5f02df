"""
Robber policies for play().

A policy picks a start after seeing the cops and then answers every cop
half-move. state_key() is what play() folds into repeat detection; None means
the policy is not deterministic and repeats prove nothing.
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from engine.paths import shortest_paths
from grid_model.digraph import Digraph, Vertex

logger = logging.getLogger(__name__)


class RobberPolicy(ABC):
    name: str = "robber"

    def __init__(self, board: Any):
        self.digraph: Digraph = board.to_digraph()
        self.allowed: Optional[List[Vertex]] = None

    @abstractmethod
    def start(self, cops: Tuple[Vertex, ...]) -> Vertex:
        ...

    @abstractmethod
    def move(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Vertex:
        ...

    def state_key(self) -> Optional[Hashable]:
        return ()

    def restrict_starts(self, starts: Sequence[Vertex]) -> None:
        """Only start on these vertices (a fragment controller's domain)"""
        self.allowed = list(starts)

    def start_pool(self, cops: Tuple[Vertex, ...]) -> List[Vertex]:
        pool = self.allowed if self.allowed else list(self.digraph.vertices)
        return [v for v in pool if v not in cops] or pool


class StationaryRobber(RobberPolicy):
    name = "stationary"

    def __init__(self, board: Any, start: Optional[Vertex] = None):
        super().__init__(board)
        self._start = start

    def start(self, cops: Tuple[Vertex, ...]) -> Vertex:
        if self._start is not None:
            return self._start
        return min(self.start_pool(cops))

    def move(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Vertex:
        return robber


class GreedyEvade(RobberPolicy):
    """
    Maximise the undirected distance to the nearest cop, smallest vertex on ties.
    """

    name = "greedy"

    def __init__(self, board: Any, start: Optional[Vertex] = None):
        super().__init__(board)
        self.paths = shortest_paths(self.digraph)
        self._start = start

    def _score(self, cops: Tuple[Vertex, ...], v: Vertex) -> int:
        return min((self.paths.undirected_distance(c, v) for c in cops), default=0)

    def _best(self, cops: Tuple[Vertex, ...], options: Sequence[Vertex]) -> Vertex:
        best_score = max(self._score(cops, v) for v in options)
        return min(v for v in options if self._score(cops, v) == best_score)

    def start(self, cops: Tuple[Vertex, ...]) -> Vertex:
        if self._start is not None:
            return self._start
        return self._best(cops, self.start_pool(cops))

    def move(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Vertex:
        return self._best(cops, self.digraph.moves(robber))


class ScriptedRobber(RobberPolicy):
    """
    Start at start, then play moves in order; after the last one the script
    wraps back to index cycle_from, or stays put when cycle_from is None.
    Illegal script entries are kept as written so play() can reject them.
    """

    name = "scripted"

    def __init__(self, board: Any, start: Vertex, moves: Sequence[Vertex] = (), cycle_from: Optional[int] = None):
        super().__init__(board)
        self._start = start
        self.moves = list(moves)
        if cycle_from is not None and not 0 <= cycle_from < max(len(self.moves), 1):
            raise ValueError(f"cycle_from={cycle_from} outside the script of {len(self.moves)} moves")
        self.cycle_from = cycle_from
        self.index = 0

    def start(self, cops: Tuple[Vertex, ...]) -> Vertex:
        self.index = 0
        return self._start

    def move(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Vertex:
        if self.index >= len(self.moves):
            if self.cycle_from is None or not self.moves:
                return robber
            self.index = self.cycle_from
        target = self.moves[self.index]
        self.index += 1
        return target

    def state_key(self) -> Optional[Hashable]:
        return self.index


class RandomRobber(RobberPolicy):
    name = "random"

    def __init__(self, board: Any, seed: int = 0, start: Optional[Vertex] = None):
        super().__init__(board)
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self._start = start

    def start(self, cops: Tuple[Vertex, ...]) -> Vertex:
        self.rng = np.random.default_rng(self.seed)
        if self._start is not None:
            return self._start
        free = self.start_pool(cops)
        return free[int(self.rng.integers(len(free)))]

    def move(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Vertex:
        options = self.digraph.moves(robber)
        return options[int(self.rng.integers(len(options)))]

    def state_key(self) -> Optional[Hashable]:
        return None
