"""
The conflux digraph D_G: one vertex per maximal conflux, an arc K1 -> K2 when
some grid arc leaves K1 into K2.

Vertex (i, j) is the conflux of row stream i and column stream j, streams
numbered by first line. An x-arc leaves through the column stream's direction
into row stream i + dir(col stream j); a y-arc into column stream j + dir(row
stream i). A single stream on an axis gives loops.
"""
import logging
from functools import cached_property
from typing import Dict, List, Tuple

import networkx as nx

from decomposition.confluxes import Conflux
from decomposition.diagonals import diagonal_distance
from decomposition.streams import Axis, maximal_streams, stream_index
from errors import DecompositionError
from grid_model.grid import Coord, OrientedGrid

logger = logging.getLogger(__name__)

ConfluxId = Tuple[int, int]


class ConfluxDigraph:
    def __init__(self, grid: OrientedGrid):
        self.grid = grid
        self.row_streams = maximal_streams(grid, Axis.HORIZONTAL)
        self.col_streams = maximal_streams(grid, Axis.VERTICAL)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_streams), len(self.col_streams)

    def vertices(self) -> List[ConfluxId]:
        rows, cols = self.shape
        return [(i, j) for i in range(rows) for j in range(cols)]

    def conflux(self, cid: ConfluxId) -> Conflux:
        i, j = cid
        return Conflux(self.col_streams[j], self.row_streams[i], self.grid)

    def id_of(self, v: Coord) -> ConfluxId:
        return stream_index(self.grid, Axis.HORIZONTAL, v.x), stream_index(self.grid, Axis.VERTICAL, v.y)

    def out_neighbors(self, cid: ConfluxId) -> Tuple[ConfluxId, ConfluxId]:
        i, j = cid
        rows, cols = self.shape
        return ((i + self.col_streams[j].direction) % rows, j), (i, (j + self.row_streams[i].direction) % cols)

    def edges(self) -> List[Tuple[ConfluxId, ConfluxId]]:
        return [(cid, target) for cid in self.vertices() for target in self.out_neighbors(cid)]

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices())
        g.add_edges_from(self.edges())
        return g

    def matches_grid_arcs(self) -> bool:
        """Every grid arc between distinct confluxes is an arc of D_G"""
        arcs = set(self.edges())
        for v in self.grid.vertices():
            source = self.id_of(v)
            for u in self.grid.out_neighbors(v):
                target = self.id_of(u)
                if target != source and (source, target) not in arcs:
                    return False
        return True

    def is_product_of_cycles(self) -> bool:
        """D_G is isomorphic to C_rows x C_cols as an undirected multigraph"""
        rows, cols = self.shape
        expected = nx.MultiDiGraph()
        for i in range(rows):
            for j in range(cols):
                expected.add_edge((i, j), ((i + 1) % rows, j))
                expected.add_edge((i, j), (i, (j + 1) % cols))
        return nx.is_isomorphic(self.graph.to_undirected(), expected.to_undirected())

    def as_grid(self) -> OrientedGrid:
        """D_G as an oriented grid of its own; needs as many row streams as column streams"""
        rows, cols = self.shape
        if rows != cols:
            raise DecompositionError(f"conflux digraph is {rows} x {cols}, not square")
        return OrientedGrid(rows, [s.direction for s in self.row_streams], [s.direction for s in self.col_streams])

    def diagonal_distance(self, first: ConfluxId, second: ConfluxId) -> int:
        return diagonal_distance(self.as_grid(), Coord(*first), Coord(*second))

    def type_of(self, cid: ConfluxId) -> Tuple[int, int]:
        i, j = cid
        return self.col_streams[j].direction, self.row_streams[i].direction

    def describe(self) -> Dict[str, object]:
        rows, cols = self.shape
        return {"rows": rows, "cols": cols, "edges": self.edges()}


def conflux_digraph(grid: OrientedGrid) -> ConfluxDigraph:
    dg = ConfluxDigraph(grid)
    logger.debug(f"Conflux digraph of {grid.descriptor}: {dg.shape[0]} x {dg.shape[1]}")
    return dg
