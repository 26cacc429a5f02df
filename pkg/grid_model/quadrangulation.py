"""
4-regular torus quadrangulations Q(r, s, t).

Take the cylinder C_r x P_(s+1) and glue its top r-cycle onto the bottom
one after a twist of t edges: (x, s) is identified with (x + t mod r, 0).
Vertices are (x, y) with x in Z_r and y in Z_s.

Straight-ahead walks come in two classes. The s horizontal walks are the
r-cycles y = const. The vertical walks climb y and pick up the twist every
time they wrap; there are gcd(r, t) of them (r when t = 0), and the walk
through (x, y) has index x mod gcd(r, t).
"""
import logging
import math
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from errors import GridConstructionError
from grid_model.digraph import Digraph
from grid_model.grid import Direction, directions_to_text

logger = logging.getLogger(__name__)

QVertex = Tuple[int, int]


class Quadrangulation:
    def __init__(self, r: int, s: int, t: int, h_dir: Sequence[Direction], v_dir: Sequence[Direction]):
        self.r = r
        self.s = s
        self.t = t
        self.h_dir: Tuple[Direction, ...] = tuple(h_dir)
        self.v_dir: Tuple[Direction, ...] = tuple(v_dir)

    @property
    def vertical_walk_count(self) -> int:
        return math.gcd(self.r, self.t)

    def vertical_walk_of(self, v: QVertex) -> int:
        return v[0] % self.vertical_walk_count

    def vertices(self) -> Iterator[QVertex]:
        for x in range(self.r):
            for y in range(self.s):
                yield (x, y)

    def up(self, v: QVertex) -> QVertex:
        x, y = v
        if y + 1 < self.s:
            return (x, y + 1)
        return ((x + self.t) % self.r, 0)

    def down(self, v: QVertex) -> QVertex:
        x, y = v
        if y > 0:
            return (x, y - 1)
        return ((x - self.t) % self.r, self.s - 1)

    def horizontal_arc(self, v: QVertex) -> QVertex:
        x, y = v
        return ((x + self.h_dir[y]) % self.r, y)

    def vertical_arc(self, v: QVertex) -> QVertex:
        return self.up(v) if self.v_dir[self.vertical_walk_of(v)] > 0 else self.down(v)

    def out_neighbors(self, v: QVertex) -> Tuple[QVertex, QVertex]:
        return self.horizontal_arc(v), self.vertical_arc(v)

    def in_neighbors(self, v: QVertex) -> Tuple[QVertex, QVertex]:
        x, y = v
        back_h = ((x - self.h_dir[y]) % self.r, y)
        back_v = self.down(v) if self.v_dir[self.vertical_walk_of(v)] > 0 else self.up(v)
        return back_h, back_v

    def moves(self, v: QVertex) -> Tuple[QVertex, ...]:
        result = [v]
        for u in self.out_neighbors(v):
            if u not in result:
                result.append(u)
        return tuple(result)

    def vertical_walk(self, start: QVertex) -> List[QVertex]:
        """The closed straight-ahead vertical walk through start, in its direction"""
        walk = [start]
        v = self.vertical_arc(start)
        while v != start:
            walk.append(v)
            v = self.vertical_arc(v)
        return walk

    def horizontal_walk(self, start: QVertex) -> List[QVertex]:
        walk = [start]
        v = self.horizontal_arc(start)
        while v != start:
            walk.append(v)
            v = self.horizontal_arc(v)
        return walk

    @cached_property
    def digraph(self) -> Digraph:
        vertices = list(self.vertices())
        return Digraph(vertices, {v: self.out_neighbors(v) for v in vertices}, name=self.descriptor)

    def to_digraph(self) -> Digraph:
        return self.digraph

    @property
    def descriptor(self) -> str:
        return (f"quad:{self.r}:{self.s}:{self.t}:"
                f"{directions_to_text(self.h_dir)}:{directions_to_text(self.v_dir)}")

    def __repr__(self) -> str:
        return f"Quadrangulation({self.descriptor})"


def make_quadrangulation(r: int, s: int, t: int,
                         h_dir: Optional[Sequence[Direction]] = None,
                         v_dir: Optional[Sequence[Direction]] = None) -> Quadrangulation:
    """Build Q(r, s, t); walk directions default to +1 and are checked against the walk counts"""
    if r < 1 or s < 1:
        raise GridConstructionError(f"Q(r,s,t) needs r, s >= 1 (got r={r}, s={s})")
    if not 0 <= t < r:
        raise GridConstructionError(f"twist t={t} outside 0..{r - 1}", index=t)

    walks = math.gcd(r, t)
    h_dir = list(h_dir) if h_dir is not None else [1] * s
    v_dir = list(v_dir) if v_dir is not None else [1] * walks
    if len(h_dir) != s:
        raise GridConstructionError(f"{len(h_dir)} horizontal directions for {s} horizontal walks")
    if len(v_dir) != walks:
        raise GridConstructionError(f"{len(v_dir)} vertical directions for {walks} vertical walks")
    for name, dirs in (("h_dir", h_dir), ("v_dir", v_dir)):
        for i, d in enumerate(dirs):
            if d not in (1, -1):
                raise GridConstructionError(f"{name}[{i}] = {d!r} is not +1 or -1", index=i)

    q = Quadrangulation(r, s, t, h_dir, v_dir)
    logger.debug(f"Built {q.descriptor}")
    return q
