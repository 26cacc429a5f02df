"""
Boards: oriented toroidal grids, torus quadrangulations and the covers between them.
"""

from .digraph import Digraph
from .grid import (
    Coord,
    OrientedGrid,
    directions_to_text,
    kregular_directions,
    kregular_grid,
    make_grid,
    random_grid,
    uniform_grid,
)
from .quadrangulation import Quadrangulation, make_quadrangulation
from .covering import CoveringMap, covering_projection, minimal_cover_n
from .formats import (
    format_orientation,
    format_quadrangulation,
    load_board,
    parse_board,
    parse_orientation,
    parse_quadrangulation,
)

__all__ = [
    "Digraph",
    "Coord",
    "OrientedGrid",
    "directions_to_text",
    "kregular_directions",
    "kregular_grid",
    "make_grid",
    "random_grid",
    "uniform_grid",
    "Quadrangulation",
    "make_quadrangulation",
    "CoveringMap",
    "covering_projection",
    "minimal_cover_n",
    "format_orientation",
    "format_quadrangulation",
    "load_board",
    "parse_board",
    "parse_orientation",
    "parse_quadrangulation",
]
