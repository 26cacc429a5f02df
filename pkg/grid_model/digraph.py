"""
Finite digraph over hashable vertices.

Oriented grids, quadrangulations and the small graphs the oracle is checked
against all convert to this one shape, so the engine and the oracle never
need to know where a board came from.
"""
import hashlib
import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

Vertex = Hashable


class Digraph:
    def __init__(self, vertices: Sequence[Vertex], out_adj: Dict[Vertex, Sequence[Vertex]],
                 name: str = "digraph"):
        self.name = name
        self.vertices: Tuple[Vertex, ...] = tuple(vertices)
        self._index: Dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError(f"{name}: duplicate vertices")

        self._out: List[Tuple[Vertex, ...]] = []
        self._in: List[List[Vertex]] = [[] for _ in self.vertices]
        for v in self.vertices:
            targets = tuple(out_adj.get(v, ()))
            for u in targets:
                if u not in self._index:
                    raise ValueError(f"{name}: arc {v!r}->{u!r} leaves the vertex set")
                self._in[self._index[u]].append(v)
            self._out.append(targets)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[Vertex, Vertex]],
                   vertices: Optional[Iterable[Vertex]] = None, name: str = "digraph") -> "Digraph":
        edges = list(edges)
        if vertices is None:
            seen = {v for edge in edges for v in edge}
            vertices = sorted(seen)
        out_adj: Dict[Vertex, List[Vertex]] = {}
        for u, v in edges:
            out_adj.setdefault(u, []).append(v)
        return cls(list(vertices), out_adj, name=name)

    @classmethod
    def directed_cycle(cls, n: int) -> "Digraph":
        if n < 1:
            raise ValueError("a directed cycle needs at least one vertex")
        return cls.from_edges(((i, (i + 1) % n) for i in range(n)), vertices=range(n), name=f"cycle:{n}")

    # -- queries --------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._index

    def index_of(self, v: Vertex) -> int:
        return self._index[v]

    def out_neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self._out[self._index[v]]

    def in_neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return tuple(self._in[self._index[v]])

    def moves(self, v: Vertex) -> Tuple[Vertex, ...]:
        """Legal destinations from v: staying first, then out-neighbours without repeats"""
        result = [v]
        for u in self._out[self._index[v]]:
            if u not in result:
                result.append(u)
        return tuple(result)

    def is_move(self, u: Vertex, v: Vertex) -> bool:
        return u == v or v in self._out[self._index[u]]

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        return [(v, u) for v, targets in zip(self.vertices, self._out) for u in targets]

    def index_adjacency(self) -> List[Tuple[int, ...]]:
        """Out-adjacency over vertex indices, stays excluded"""
        return [tuple(self._index[u] for u in targets) for targets in self._out]

    def canonical_hash(self) -> str:
        edge_list = sorted((self._index[u], self._index[v]) for u, v in self.edges())
        payload = f"{len(self)}|" + ";".join(f"{a},{b}" for a, b in edge_list)
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph(name=self.name)
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges())
        return graph

    def is_strongly_connected(self) -> bool:
        return nx.is_strongly_connected(self.to_networkx())

    def to_digraph(self) -> "Digraph":
        return self

    @property
    def descriptor(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Digraph({self.name!r}, |V|={len(self)}, |A|={len(self.edges())})"
