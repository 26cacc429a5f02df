"""
Confluxes: the blocks V(S1) ∩ V(S2) cut out by one vertical and one horizontal stream.

Inside a conflux every vertex has the same type, so x-arcs all move x the same
way and y-arcs all move y the same way. Local coordinates (p, q) count those
steps from the entry corner: p grows along x-arcs, q along y-arcs, and K is
exactly 0 <= p < a, 0 <= q < b.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from decomposition.streams import Axis, Stream, maximal_streams, stream_of
from errors import DecompositionError
from grid_model.grid import Coord, OrientedGrid, VertexType

logger = logging.getLogger(__name__)

Distance = Union[int, float]


@dataclass(frozen=True)
class Conflux:
    v_stream: Stream
    h_stream: Stream
    grid: OrientedGrid = field(compare=False, repr=False)

    def __post_init__(self):
        if self.v_stream.axis is not Axis.VERTICAL or self.h_stream.axis is not Axis.HORIZONTAL:
            raise DecompositionError(f"conflux needs a vertical and a horizontal stream, got "
                                     f"{self.v_stream} and {self.h_stream}")

    # -- shape ----------------------------------------------------------------

    @property
    def a(self) -> int:
        """Extent along x-arcs (the width of the horizontal stream)"""
        return self.h_stream.width

    @property
    def b(self) -> int:
        """Extent along y-arcs (the width of the vertical stream)"""
        return self.v_stream.width

    @property
    def type(self) -> VertexType:
        return self.v_stream.direction, self.h_stream.direction

    @property
    def size(self) -> int:
        return self.a * self.b

    @property
    def covers_grid(self) -> bool:
        return self.h_stream.spans_grid and self.v_stream.spans_grid

    @property
    def is_maximal(self) -> bool:
        return (stream_of(self.grid, Axis.VERTICAL, self.v_stream.first_line) == self.v_stream
                and stream_of(self.grid, Axis.HORIZONTAL, self.h_stream.first_line) == self.h_stream)

    def contains(self, v: Coord) -> bool:
        return self.h_stream.contains_line(v.x) and self.v_stream.contains_line(v.y)

    def __contains__(self, v: Coord) -> bool:
        return self.contains(v)

    def vertices(self) -> Iterator[Coord]:
        for x in self.h_stream.lines:
            for y in self.v_stream.lines:
                yield Coord(x, y)

    # -- local frame ----------------------------------------------------------

    @property
    def _origin(self) -> Tuple[int, int]:
        cd, rd = self.type
        xs = self.h_stream.first_line if cd > 0 else self.h_stream.last_line
        ys = self.v_stream.first_line if rd > 0 else self.v_stream.last_line
        return xs, ys

    def local(self, v: Coord) -> Tuple[int, int]:
        cd, rd = self.type
        xs, ys = self._origin
        n = self.grid.n
        return (cd * (v.x - xs)) % n, (rd * (v.y - ys)) % n

    def from_local(self, p: int, q: int) -> Coord:
        cd, rd = self.type
        xs, ys = self._origin
        return self.grid.coord(xs + cd * p, ys + rd * q)

    def __str__(self) -> str:
        return f"K[x {self.h_stream.first_line}..{self.h_stream.last_line}, " \
               f"y {self.v_stream.first_line}..{self.v_stream.last_line}]"


@dataclass(frozen=True)
class CornerSet:
    main: Tuple[Coord, ...]
    secondary: Tuple[Coord, ...] = ()
    terminal: Optional[Coord] = None

    @property
    def all(self) -> Tuple[Coord, ...]:
        return self.main + self.secondary


@dataclass(frozen=True)
class GuardPosts:
    vertical: Coord
    horizontal: Coord
    terminal: Optional[Coord] = None


def main_corner_a(k: Conflux) -> Coord:
    """The main corner whose x-arc leaves K"""
    return k.from_local(k.a - 1, 0)


def main_corner_b(k: Conflux) -> Coord:
    """The main corner whose y-arc leaves K"""
    return k.from_local(0, k.b - 1)


def terminal_corner(k: Conflux) -> Coord:
    return k.from_local(k.a - 1, k.b - 1)


def entry_side(k: Conflux) -> List[Coord]:
    """Vertices of K with an in-arc from outside: local column p = 0 and row q = 0"""
    return [k.from_local(0, q) for q in range(k.b)] + [k.from_local(p, 0) for p in range(1, k.a)]


def corners(k: Conflux) -> CornerSet:
    if k.covers_grid:
        raise DecompositionError("conflux covers grid")
    a_corner, b_corner = main_corner_a(k), main_corner_b(k)
    main = (a_corner,) if a_corner == b_corner else (a_corner, b_corner)
    if k.a >= 2 and k.b >= 2:
        terminal = terminal_corner(k)
        return CornerSet(main=main, secondary=(k.from_local(0, 0), terminal), terminal=terminal)
    return CornerSet(main=main)


def guard_posts(k: Conflux) -> GuardPosts:
    if k.h_stream.spans_grid or k.v_stream.spans_grid:
        raise DecompositionError(f"{k} spans the grid along one axis and has no guard posts")
    vertical = k.from_local(k.a, 0)
    horizontal = k.from_local(0, k.b)
    terminal = k.from_local(k.a, k.b) if k.is_maximal else None
    return GuardPosts(vertical=vertical, horizontal=horizontal, terminal=terminal)


def maximal_conflux(grid: OrientedGrid, v: Coord) -> Conflux:
    return Conflux(stream_of(grid, Axis.VERTICAL, v.y), stream_of(grid, Axis.HORIZONTAL, v.x), grid)


def maximal_confluxes(grid: OrientedGrid) -> List[Conflux]:
    """All maximal confluxes, ordered by (row stream, column stream)"""
    return [Conflux(vs, hs, grid)
            for hs in maximal_streams(grid, Axis.HORIZONTAL)
            for vs in maximal_streams(grid, Axis.VERTICAL)]


def escape_distances(grid: OrientedGrid, v: Coord) -> Tuple[Distance, Distance, Distance]:
    """(HE, VE, E): steps along x-arcs, along y-arcs, and the smaller, to leave v's maximal conflux"""
    k = maximal_conflux(grid, v)
    p, q = k.local(v)
    he: Distance = math.inf if k.h_stream.spans_grid else k.a - p
    ve: Distance = math.inf if k.v_stream.spans_grid else k.b - q
    return he, ve, min(he, ve)


def exits_covered(region: Sequence[Conflux], guarded: Sequence[Conflux], cops: Sequence[Coord]) -> bool:
    """
    A robber inside the region confluxes can only leave into the guarded
    confluxes, and every main corner of a guarded conflux holds a cop.
    """
    if not region or not guarded:
        return False
    grid = region[0].grid
    occupied = set(cops)
    for k in guarded:
        if any(c not in occupied for c in corners(k).main):
            return False
    for k in region:
        for v in k.vertices():
            for u in grid.out_neighbors(v):
                if any(u in r for r in region):
                    continue
                if not any(u in g for g in guarded):
                    return False
    return True
