"""
Diagonal shadows of a vertex and the mirrors they induce.

w is a main shadow of v when w lies on MD(v), has v's type and VE(v) = HE(w);
a secondary shadow lies on SD(v), has the opposite type and VE(v) = HE(w).
A cop standing on a shadow can keep it a shadow whatever the robber does
(shadow_step), and while it does the robber cannot cross the mirror.
"""
import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from decomposition.confluxes import escape_distances
from decomposition.diagonals import DiagClass, Diagonal, Step, main_diag, md_step, sd_step, secondary_diag
from errors import DecompositionError, InvariantViolation
from grid_model.grid import Coord, OrientedGrid

logger = logging.getLogger(__name__)

Mirror = Diagonal


class ShadowKind(Enum):
    MAIN = "main"
    SECONDARY = "secondary"


def is_main_shadow(grid: OrientedGrid, v: Coord, w: Coord) -> bool:
    if grid.vertex_type(v) != grid.vertex_type(w) or w not in main_diag(grid, v):
        return False
    return escape_distances(grid, v)[1] == escape_distances(grid, w)[0]


def is_secondary_shadow(grid: OrientedGrid, v: Coord, w: Coord) -> bool:
    tv, tw = grid.vertex_type(v), grid.vertex_type(w)
    if tw != (-tv[0], -tv[1]) or w not in secondary_diag(grid, v):
        return False
    return escape_distances(grid, v)[1] == escape_distances(grid, w)[0]


def shadow_kind(grid: OrientedGrid, v: Coord, w: Coord) -> Optional[ShadowKind]:
    if is_main_shadow(grid, v, w):
        return ShadowKind.MAIN
    if is_secondary_shadow(grid, v, w):
        return ShadowKind.SECONDARY
    return None


def is_diagonal_shadow(grid: OrientedGrid, v: Coord, w: Coord) -> bool:
    return shadow_kind(grid, v, w) is not None


def shadows_of(grid: OrientedGrid, v: Coord) -> Tuple[List[Coord], List[Coord]]:
    """(main shadows, secondary shadows) of v, each in lexicographic order"""
    main = sorted(w for w in main_diag(grid, v).vertices() if is_main_shadow(grid, v, w))
    secondary = sorted(w for w in secondary_diag(grid, v).vertices() if is_secondary_shadow(grid, v, w))
    return main, secondary


def unit_delta(grid: OrientedGrid, a: Coord, b: Coord) -> Step:
    """b - a for adjacent (or equal) vertices, each component in {-1, 0, 1}"""
    n = grid.n
    return ((b.x - a.x + 1) % n) - 1, ((b.y - a.y + 1) % n) - 1


def shadow_step(grid: OrientedGrid, robber_before: Coord, robber_after: Coord, shadow: Coord) -> Coord:
    """
    Where a shadow of robber_before goes when the robber moves to robber_after:
    a main shadow takes the robber's other out-arc, a secondary shadow its
    reverse.
    """
    kind = shadow_kind(grid, robber_before, shadow)
    if kind is None:
        raise InvariantViolation(f"{shadow} is not a diagonal shadow of {robber_before}")
    if robber_after == robber_before:
        return shadow
    outs = grid.out_neighbors(robber_before)
    if robber_after not in outs:
        raise InvariantViolation(f"{robber_before}->{robber_after} is not a move")
    other = outs[1] if robber_after == outs[0] else outs[0]
    dx, dy = unit_delta(grid, robber_before, other)
    sign = 1 if kind is ShadowKind.MAIN else -1
    moved = grid.coord(shadow.x + sign * dx, shadow.y + sign * dy)
    if not grid.is_move(shadow, moved):
        raise InvariantViolation(f"shadow step {shadow}->{moved} is not an arc")
    return moved


def mirror_of(grid: OrientedGrid, robber: Coord, cop: Coord) -> Mirror:
    """The diagonal through the robber's row and the cop's column, orthogonal to cop - robber"""
    if cop == robber:
        raise DecompositionError(f"cop and robber share {robber}; no mirror")
    kind = shadow_kind(grid, robber, cop)
    if kind is None:
        raise DecompositionError(f"{cop} is not a diagonal shadow of {robber}")
    step = sd_step(grid, robber) if kind is ShadowKind.MAIN else md_step(grid, robber)
    return Diagonal.through(Coord(robber.x, cop.y), step, grid.n)


def mirror_distance(first: Mirror, second: Mirror, k: int) -> Optional[int]:
    """Least m > 0 with the mirrors m*k diagonal steps apart; None when no such m"""
    if first.diag_class is not second.diag_class:
        raise DecompositionError(f"mirrors {first} and {second} are not parallel")
    n = first.n
    diff = (second.offset - first.offset) % n
    for m in range(1, n + 1):
        shift = (2 * m * k) % n
        if shift == diff or (-shift) % n == diff:
            return m
    return None


def offset_arc(low: int, high: int, n: int) -> List[int]:
    """Offsets strictly between low and high going upwards mod n"""
    return [(low + i) % n for i in range(1, (high - low) % n)]


def side_of(mirrors: Tuple[Mirror, Mirror], v: Coord) -> Optional[List[int]]:
    """The open arc of offsets between two parallel mirrors that holds v, None if v is on one"""
    first, second = mirrors
    n = first.n
    offset = first.diag_class.offset_of(v, n)
    if offset in (first.offset, second.offset):
        return None
    arc = offset_arc(first.offset, second.offset, n)
    return arc if offset in arc else offset_arc(second.offset, first.offset, n)


def universal_mirrors(grid: OrientedGrid, k: int) -> List[Mirror]:
    """
    The diagonals x - y = 0 and x + y = -1 (mod 2k) of a k-regular grid. The
    reflection of any vertex across one of them is a diagonal shadow whose
    mirror is that diagonal.
    """
    n = grid.n
    main = [Diagonal(DiagClass.MAIN_DIAG, c, n) for c in range(0, n, 2 * k)]
    anti = [Diagonal(DiagClass.ANTI_DIAG, c, n) for c in range(2 * k - 1, n, 2 * k)]
    return main + anti


def reflect_across(mirror: Mirror, v: Coord) -> Coord:
    n, c = mirror.n, mirror.offset
    if mirror.diag_class is DiagClass.MAIN_DIAG:
        return Coord((v.y + c) % n, (v.x - c) % n)
    return Coord((c - v.y) % n, (c - v.x) % n)


def mirror_between(mirrors: Sequence[Mirror], robber: Coord, cop: Coord) -> Optional[Mirror]:
    """The first of mirrors reflecting robber onto cop"""
    if cop == robber:
        return None
    for mirror in mirrors:
        if reflect_across(mirror, robber) == cop:
            return mirror
    return None
