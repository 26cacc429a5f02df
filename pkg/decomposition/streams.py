"""
Streams: runs of consecutive parallel lines sharing a direction.

HORIZONTAL streams are made of rows {(x, z)} and are indexed by x; VERTICAL
streams are made of columns {(z, y)} and are indexed by y.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Sequence, Tuple

from grid_model.grid import Coord, Direction, OrientedGrid

logger = logging.getLogger(__name__)


class Axis(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @property
    def other(self) -> "Axis":
        return Axis.VERTICAL if self is Axis.HORIZONTAL else Axis.HORIZONTAL


@dataclass(frozen=True)
class Stream:
    axis: Axis
    first_line: int
    width: int
    direction: Direction
    n: int

    @property
    def last_line(self) -> int:
        return (self.first_line + self.width - 1) % self.n

    @property
    def lines(self) -> Tuple[int, ...]:
        return tuple((self.first_line + i) % self.n for i in range(self.width))

    @property
    def spans_grid(self) -> bool:
        return self.width == self.n

    def contains_line(self, line: int) -> bool:
        return (line - self.first_line) % self.n < self.width

    def line_of(self, v: Coord) -> int:
        """Index of the line of this axis through v"""
        return v.x if self.axis is Axis.HORIZONTAL else v.y

    def along(self, v: Coord) -> int:
        """The coordinate that moves when travelling along the stream's lines"""
        return v.y if self.axis is Axis.HORIZONTAL else v.x

    def contains(self, v: Coord) -> bool:
        return self.contains_line(self.line_of(v))

    def offset(self, line: int) -> int:
        """Position of a line inside the stream, 0 for first_line"""
        return (line - self.first_line) % self.n

    def vertex(self, line: int, along: int) -> Coord:
        if self.axis is Axis.HORIZONTAL:
            return Coord(line % self.n, along % self.n)
        return Coord(along % self.n, line % self.n)

    def substream(self, first_line: int, width: int) -> "Stream":
        if not self.contains_line(first_line) or self.offset(first_line) + width > self.width:
            raise ValueError(f"lines {first_line}..+{width} are not inside {self}")
        return Stream(self.axis, first_line % self.n, width, self.direction, self.n)

    def __str__(self) -> str:
        sign = "+" if self.direction > 0 else "-"
        return f"{self.axis.value}[{self.first_line}..{self.last_line}]{sign}"


def line_directions(grid: OrientedGrid, axis: Axis) -> Sequence[Direction]:
    return grid.row_dir if axis is Axis.HORIZONTAL else grid.col_dir


@lru_cache(maxsize=256)
def maximal_streams(grid: OrientedGrid, axis: Axis) -> Tuple[Stream, ...]:
    """Partition the lines of one axis into maximal runs, ordered by first_line"""
    dirs = line_directions(grid, axis)
    n = grid.n
    if all(d == dirs[0] for d in dirs):
        return (Stream(axis, 0, n, dirs[0], n),)

    start = next(i for i in range(n) if dirs[i] != dirs[i - 1])
    streams: List[Stream] = []
    first, width = start, 1
    for step in range(1, n):
        i = (start + step) % n
        if dirs[i] == dirs[first]:
            width += 1
        else:
            streams.append(Stream(axis, first, width, dirs[first], n))
            first, width = i, 1
    streams.append(Stream(axis, first, width, dirs[first], n))
    return tuple(sorted(streams, key=lambda s: s.first_line))


def stream_index(grid: OrientedGrid, axis: Axis, line: int) -> int:
    return _line_lookup(grid, axis)[line % grid.n]


def stream_of(grid: OrientedGrid, axis: Axis, line: int) -> Stream:
    return maximal_streams(grid, axis)[stream_index(grid, axis, line)]


@lru_cache(maxsize=256)
def _line_lookup(grid: OrientedGrid, axis: Axis) -> Tuple[int, ...]:
    lookup = [0] * grid.n
    for index, stream in enumerate(maximal_streams(grid, axis)):
        for line in stream.lines:
            lookup[line] = index
    return tuple(lookup)


def max_width(grid: OrientedGrid) -> int:
    return max(s.width for axis in Axis for s in maximal_streams(grid, axis))


def regularity(grid: OrientedGrid) -> int:
    """The common stream width when the grid is k-regular, else 0"""
    widths = {s.width for axis in Axis for s in maximal_streams(grid, axis)}
    return widths.pop() if len(widths) == 1 else 0
