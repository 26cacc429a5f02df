"""
Shortest directed paths by reverse BFS, one int32 table per target.
"""
import logging
from collections import deque
from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np

from grid_model.digraph import Digraph, Vertex

logger = logging.getLogger(__name__)

UNREACHABLE = -1


class ShortestPaths:
    def __init__(self, digraph: Digraph):
        self.digraph = digraph
        self._adjacency = digraph.index_adjacency()
        self._reverse: List[List[int]] = [[] for _ in range(len(digraph))]
        for source, targets in enumerate(self._adjacency):
            for target in targets:
                self._reverse[target].append(source)
        self._to: Dict[int, np.ndarray] = {}
        self._undirected: Dict[int, np.ndarray] = {}
        self._both: Optional[List[List[int]]] = None

    def _bfs(self, start: int, neighbours: List[List[int]]) -> np.ndarray:
        dist = np.full(len(self.digraph), UNREACHABLE, dtype=np.int32)
        dist[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in neighbours[v]:
                if dist[u] == UNREACHABLE:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def table_to(self, target: Vertex) -> np.ndarray:
        """dist[i] = directed distance from vertex i to target"""
        t = self.digraph.index_of(target)
        if t not in self._to:
            self._to[t] = self._bfs(t, self._reverse)
        return self._to[t]

    def distance(self, source: Vertex, target: Vertex) -> Optional[int]:
        d = int(self.table_to(target)[self.digraph.index_of(source)])
        return None if d == UNREACHABLE else d

    def next_step(self, source: Vertex, target: Vertex) -> Vertex:
        """First vertex of a shortest path; the smallest out-neighbour on ties, source itself if unreachable"""
        table = self.table_to(target)
        d = table[self.digraph.index_of(source)]
        if d <= 0:
            return source
        candidates = [u for u in self.digraph.out_neighbors(source) if table[self.digraph.index_of(u)] == d - 1]
        return min(candidates)

    def path(self, source: Vertex, target: Vertex) -> List[Vertex]:
        """Vertices after source up to and including target; empty if already there or unreachable"""
        result: List[Vertex] = []
        v = source
        while v != target:
            u = self.next_step(v, target)
            if u == v:
                return []
            result.append(u)
            v = u
        return result

    def undirected_distance(self, source: Vertex, target: Vertex) -> int:
        t = self.digraph.index_of(target)
        if t not in self._undirected:
            if self._both is None:
                self._both = [sorted(set(a) | set(b)) for a, b in zip(self._adjacency, self._reverse)]
            self._undirected[t] = self._bfs(t, self._both)
        return int(self._undirected[t][self.digraph.index_of(source)])


@lru_cache(maxsize=32)
def shortest_paths(digraph: Digraph) -> ShortestPaths:
    return ShortestPaths(digraph)
