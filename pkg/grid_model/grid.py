"""
Straight-ahead oriented toroidal grids.

Coordinates follow the row/column convention used throughout the package:
the row of (x, y) is {(x, z)} and is oriented by row_dir[x]; the column of
(x, y) is {(z, y)} and is oriented by col_dir[y].
"""
import logging
from functools import cached_property
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from errors import GridConstructionError
from grid_model.digraph import Digraph

logger = logging.getLogger(__name__)

Direction = int
VertexType = Tuple[int, int]


class Coord(NamedTuple):
    x: int
    y: int


class OrientedGrid:
    """C_n x C_n with one direction per row and one per column"""

    def __init__(self, n: int, row_dir: Sequence[Direction], col_dir: Sequence[Direction]):
        self.n = n
        self.row_dir: Tuple[Direction, ...] = tuple(int(d) for d in row_dir)
        self.col_dir: Tuple[Direction, ...] = tuple(int(d) for d in col_dir)

    # -- coordinates ----------------------------------------------------------

    def coord(self, x: int, y: int) -> Coord:
        return Coord(x % self.n, y % self.n)

    def vertices(self) -> Iterator[Coord]:
        for x in range(self.n):
            for y in range(self.n):
                yield Coord(x, y)

    def x_arc(self, v: Coord) -> Coord:
        """Out-neighbour along the column through v"""
        return Coord((v.x + self.col_dir[v.y]) % self.n, v.y)

    def y_arc(self, v: Coord) -> Coord:
        """Out-neighbour along the row through v"""
        return Coord(v.x, (v.y + self.row_dir[v.x]) % self.n)

    def out_neighbors(self, v: Coord) -> Tuple[Coord, Coord]:
        return self.x_arc(v), self.y_arc(v)

    def in_neighbors(self, v: Coord) -> Tuple[Coord, Coord]:
        return (Coord((v.x - self.col_dir[v.y]) % self.n, v.y),
                Coord(v.x, (v.y - self.row_dir[v.x]) % self.n))

    def moves(self, v: Coord) -> Tuple[Coord, ...]:
        result = [v]
        for u in self.out_neighbors(v):
            if u not in result:
                result.append(u)
        return tuple(result)

    def is_move(self, u: Coord, v: Coord) -> bool:
        return u == v or v in self.out_neighbors(u)

    def vertex_type(self, v: Coord) -> VertexType:
        return self.col_dir[v.y], self.row_dir[v.x]

    # -- views ----------------------------------------------------------------

    @cached_property
    def digraph(self) -> Digraph:
        vertices = list(self.vertices())
        return Digraph(vertices, {v: self.out_neighbors(v) for v in vertices}, name=self.descriptor)

    def to_digraph(self) -> Digraph:
        return self.digraph

    @property
    def descriptor(self) -> str:
        return f"grid:{self.n}:{directions_to_text(self.row_dir)}:{directions_to_text(self.col_dir)}"

    def line_is_cycle(self, axis: str, index: int) -> bool:
        """Walk the row (axis 'row') or column ('col') through index and check it closes after n arcs"""
        start = Coord(index, 0) if axis == "row" else Coord(0, index)
        step = self.y_arc if axis == "row" else self.x_arc
        seen = {start}
        v = step(start)
        while v != start:
            if v in seen:
                return False
            seen.add(v)
            v = step(v)
        return len(seen) == self.n

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, OrientedGrid) and self.n == other.n
                and self.row_dir == other.row_dir and self.col_dir == other.col_dir)

    def __hash__(self) -> int:
        return hash((self.n, self.row_dir, self.col_dir))

    def __repr__(self) -> str:
        return f"OrientedGrid({self.descriptor})"


def directions_to_text(dirs: Sequence[Direction]) -> str:
    return "".join("+" if d > 0 else "-" for d in dirs)


def _check_directions(name: str, dirs: Sequence[Direction], n: int) -> None:
    if len(dirs) != n:
        raise GridConstructionError(f"{name} has length {len(dirs)}, expected {n}", index=min(len(dirs), n))
    for i, d in enumerate(dirs):
        if d not in (1, -1):
            raise GridConstructionError(f"{name}[{i}] = {d!r} is not +1 or -1", index=i)


def make_grid(n: int, row_dir: Sequence[Direction], col_dir: Sequence[Direction]) -> OrientedGrid:
    if n < 3:
        raise GridConstructionError(f"n must be at least 3, got {n}")
    _check_directions("row_dir", row_dir, n)
    _check_directions("col_dir", col_dir, n)
    grid = OrientedGrid(n, row_dir, col_dir)
    logger.debug(f"Built {grid.descriptor}")
    return grid


def uniform_grid(n: int) -> OrientedGrid:
    return make_grid(n, [1] * n, [1] * n)


def kregular_directions(n: int, k: int) -> Tuple[Direction, ...]:
    return tuple(1 if (i // k) % 2 == 0 else -1 for i in range(n))


def kregular_grid(n: int, k: int) -> OrientedGrid:
    """Every maximal stream of width exactly k; needs 2k | n"""
    if k < 1 or n % (2 * k):
        raise GridConstructionError(f"k-regular orientation needs 2k | n (n={n}, k={k})")
    dirs = kregular_directions(n, k)
    return make_grid(n, dirs, dirs)


def random_grid(n: int, seed: int, max_width: Optional[int] = None) -> OrientedGrid:
    """Random orientation; max_width bounds every run of equal directions (cyclically)"""
    rng = np.random.default_rng(seed)
    if max_width is None:
        return make_grid(n, list(rng.choice([1, -1], size=n)), list(rng.choice([1, -1], size=n)))
    return make_grid(n, _bounded_runs(rng, n, max_width), _bounded_runs(rng, n, max_width))


def _bounded_runs(rng: np.random.Generator, n: int, max_width: int) -> list:
    # an even number of alternating runs keeps the wrap-around boundary a real flip
    if max_width < 1 or (max_width == 1 and n % 2):
        raise GridConstructionError(f"cannot split n={n} into alternating runs of width <= {max_width}")
    widths = []
    remaining = n
    while remaining:
        if remaining <= 2 * max_width:
            a = int(rng.integers(max(1, remaining - max_width), min(max_width, remaining - 1) + 1))
            widths.extend([a, remaining - a])
            break
        a = int(rng.integers(1, max_width + 1))
        b = int(rng.integers(1, max_width + 1))
        if remaining - a - b == 1:
            if b > 1:
                b -= 1
            else:
                a -= 1 if a > 1 else -1
        widths.extend([a, b])
        remaining -= a + b
    dirs = []
    for i, w in enumerate(widths):
        dirs.extend([1 if i % 2 == 0 else -1] * w)
    return dirs
