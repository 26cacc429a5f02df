"""
Covering projections C_n x C_n -> Q(r, s, t).

Source vertex (a, b) sits in sheet q = b // s of the cylinder stack; it maps to
y = b mod s and x = (a + q*t) mod r. The kernel lattice is generated by (r, 0)
and (-t, s) (the mirror image of <(r,0),(t,s)> under the twist sign), and
n x n fits in it exactly when r | n, s | n and r*s | n*t.
"""
import logging
import math
from collections import Counter
from typing import Dict, List, Optional

from errors import GridConstructionError
from grid_model.grid import Coord, OrientedGrid
from grid_model.quadrangulation import QVertex, Quadrangulation
from settings import get_settings

logger = logging.getLogger(__name__)


def minimal_cover_n(q: Quadrangulation, bound: Optional[int] = None) -> int:
    bound = bound if bound is not None else get_settings().cover_bound
    base = q.r * q.s // math.gcd(q.r, q.s)
    n = base
    while n <= bound:
        if (n * q.t) % (q.r * q.s) == 0:
            return n
        n += base
    raise GridConstructionError(f"no cover of {q.descriptor} with n <= {bound}")


class CoveringMap:
    def __init__(self, source: OrientedGrid, target: Quadrangulation):
        self.source = source
        self.target = target
        self._fibers: Optional[Dict[QVertex, List[Coord]]] = None

    def project(self, v: Coord) -> QVertex:
        q, y = divmod(v.y, self.target.s)
        return ((v.x + q * self.target.t) % self.target.r, y)

    def fiber(self, w: QVertex) -> List[Coord]:
        if self._fibers is None:
            fibers: Dict[QVertex, List[Coord]] = {}
            for v in self.source.vertices():
                fibers.setdefault(self.project(v), []).append(v)
            self._fibers = fibers
        return self._fibers.get(w, [])

    def fiber_sizes(self) -> Counter:
        return Counter(self.project(v) for v in self.source.vertices())

    def is_homomorphism(self) -> bool:
        for v in self.source.vertices():
            image = self.project(v)
            for u in self.source.out_neighbors(v):
                if self.project(u) not in self.target.out_neighbors(image):
                    return False
        return True

    def is_locally_bijective(self) -> bool:
        """Out- and in-arcs at every source vertex map one-to-one onto those at its image"""
        for v in self.source.vertices():
            image = self.project(v)
            outs = sorted(self.project(u) for u in self.source.out_neighbors(v))
            ins = sorted(self.project(u) for u in self.source.in_neighbors(v))
            if outs != sorted(self.target.out_neighbors(image)):
                return False
            if ins != sorted(self.target.in_neighbors(image)):
                return False
        return True

    def __repr__(self) -> str:
        return f"CoveringMap({self.source.descriptor} -> {self.target.descriptor})"


def covering_projection(q: Quadrangulation, n: Optional[int] = None) -> CoveringMap:
    """Pull the orientation of q back to C_n x C_n, n defaulting to minimal_cover_n(q)"""
    if n is None:
        n = minimal_cover_n(q)
    elif n % q.r or n % q.s or (n * q.t) % (q.r * q.s):
        raise GridConstructionError(f"C_{n} x C_{n} does not cover {q.descriptor}")

    walks = q.vertical_walk_count
    # x-arcs of the source move a, i.e. along the horizontal walk y = b mod s
    col_dir = [q.h_dir[b % q.s] for b in range(n)]
    # y-arcs move b; the row a lies over the vertical walk through (a mod r, 0)
    row_dir = [q.v_dir[(a % q.r) % walks] for a in range(n)]
    source = OrientedGrid(n, row_dir, col_dir)

    cover = CoveringMap(source, q)
    logger.info(f"✅ Cover C_{n} x C_{n} -> {q.descriptor}")
    return cover
