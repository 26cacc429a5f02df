"""
Diagonal lines and the diagonal distance between opposite-type vertices.

A diagonal is a residue class: MAIN_DIAG lines keep x - y fixed and run along
(1, 1); ANTI_DIAG lines keep x + y fixed and run along (1, -1). SD(v) runs
along tau(v), MD(v) along (tau_x, -tau_y).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterator, Tuple

from errors import DecompositionError
from grid_model.grid import Coord, OrientedGrid

logger = logging.getLogger(__name__)

Step = Tuple[int, int]


class DiagClass(Enum):
    MAIN_DIAG = "main"
    ANTI_DIAG = "anti"

    @classmethod
    def of_step(cls, step: Step) -> "DiagClass":
        return cls.MAIN_DIAG if step[0] * step[1] > 0 else cls.ANTI_DIAG

    def offset_of(self, v: Coord, n: int) -> int:
        return (v.x - v.y) % n if self is DiagClass.MAIN_DIAG else (v.x + v.y) % n

    @property
    def orthogonal(self) -> "DiagClass":
        return DiagClass.ANTI_DIAG if self is DiagClass.MAIN_DIAG else DiagClass.MAIN_DIAG


@dataclass(frozen=True)
class Diagonal:
    diag_class: DiagClass
    offset: int
    n: int

    @classmethod
    def through(cls, v: Coord, step: Step, n: int) -> "Diagonal":
        diag_class = DiagClass.of_step(step)
        return cls(diag_class, diag_class.offset_of(v, n), n)

    def __contains__(self, v: Coord) -> bool:
        return self.diag_class.offset_of(v, self.n) == self.offset

    def vertices(self) -> Iterator[Coord]:
        for x in range(self.n):
            y = (x - self.offset) % self.n if self.diag_class is DiagClass.MAIN_DIAG else (self.offset - x) % self.n
            yield Coord(x, y)

    def as_set(self) -> FrozenSet[Coord]:
        return frozenset(self.vertices())

    def shifted(self, amount: int) -> "Diagonal":
        return Diagonal(self.diag_class, (self.offset + amount) % self.n, self.n)

    def __str__(self) -> str:
        sign = "-" if self.diag_class is DiagClass.MAIN_DIAG else "+"
        return f"x{sign}y={self.offset}"


def sd_step(grid: OrientedGrid, v: Coord) -> Step:
    return grid.vertex_type(v)


def md_step(grid: OrientedGrid, v: Coord) -> Step:
    tx, ty = grid.vertex_type(v)
    return tx, -ty


def secondary_diag(grid: OrientedGrid, v: Coord) -> Diagonal:
    return Diagonal.through(v, sd_step(grid, v), grid.n)


def main_diag(grid: OrientedGrid, v: Coord) -> Diagonal:
    return Diagonal.through(v, md_step(grid, v), grid.n)


def _orthogonal(a: Step, b: Step) -> bool:
    return a[0] * b[0] + a[1] * b[1] == 0


def md_shifted(grid: OrientedGrid, v: Coord, s: int, d: Step) -> Diagonal:
    """
    MD(v) translated s times by (tau(v) + d) / 2. For either orthogonal d the
    translation moves the MD offset by s * tau_x, so both signs give one line.
    """
    tau = grid.vertex_type(v)
    if not _orthogonal(tau, d):
        raise DecompositionError(f"type {d} is not orthogonal to tau({v}) = {tau}")
    unit = ((tau[0] + d[0]) // 2, (tau[1] + d[1]) // 2)
    return main_diag(grid, v).shifted(_offset_change(DiagClass.of_step(md_step(grid, v)), unit) * s)


def _offset_change(diag_class: DiagClass, vector: Step) -> int:
    if diag_class is DiagClass.MAIN_DIAG:
        return vector[0] - vector[1]
    return vector[0] + vector[1]


def _require_opposite(grid: OrientedGrid, u: Coord, v: Coord) -> None:
    tu, tv = grid.vertex_type(u), grid.vertex_type(v)
    if tu != (-tv[0], -tv[1]):
        raise DecompositionError(f"diagonal distance needs opposite types, got {tu} at {u} and {tv} at {v}")


def diagonal_distance(grid: OrientedGrid, u: Coord, v: Coord) -> int:
    """Least t with v on MD_t(u, d); symmetric in u and v"""
    _require_opposite(grid, u, v)
    tau_x = grid.vertex_type(u)[0]
    md_u, md_v = main_diag(grid, u), main_diag(grid, v)
    return (tau_x * (md_v.offset - md_u.offset)) % grid.n


def between_band(grid: OrientedGrid, u: Coord, v: Coord) -> FrozenSet[Coord]:
    """B(u, v): the MD-shifts of u from 0 up to the diagonal distance, inclusive"""
    t = diagonal_distance(grid, u, v)
    d = md_step(grid, u)
    band = set()
    for i in range(t + 1):
        band |= md_shifted(grid, u, i, d).as_set()
    logger.debug(f"Band between {u} and {v}: {t + 1} diagonals")
    return frozenset(band)


def band_offsets(grid: OrientedGrid, u: Coord, v: Coord) -> Tuple[DiagClass, FrozenSet[int]]:
    """The same band as between_band, as a diagonal class and its set of offsets"""
    t = diagonal_distance(grid, u, v)
    md = main_diag(grid, u)
    tau_x = grid.vertex_type(u)[0]
    return md.diag_class, frozenset((md.offset + tau_x * i) % grid.n for i in range(t + 1))
