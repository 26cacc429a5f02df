"""
Plain-text dump of a grid's decomposition, for debugging and the CLI.
"""
import logging
from typing import List

from decomposition.conflux_digraph import conflux_digraph
from decomposition.confluxes import corners, guard_posts, maximal_confluxes
from decomposition.streams import Axis, maximal_streams
from errors import DecompositionError
from grid_model.grid import OrientedGrid

logger = logging.getLogger(__name__)


def dump_decomposition(grid: OrientedGrid) -> str:
    lines: List[str] = [f"grid {grid.descriptor}"]
    for axis in Axis:
        streams = maximal_streams(grid, axis)
        lines.append(f"{axis.value} streams ({len(streams)}):")
        lines.extend(f"  {i}: {s} width={s.width}" for i, s in enumerate(streams))

    dg = conflux_digraph(grid)
    lines.append(f"maximal confluxes ({len(dg.vertices())}):")
    for cid, k in zip(dg.vertices(), maximal_confluxes(grid)):
        entry = f"  {cid}: {k} type={k.type}"
        try:
            cs = corners(k)
            entry += f" main={list(cs.main)} secondary={list(cs.secondary)}"
            posts = guard_posts(k)
            entry += f" posts=V{tuple(posts.vertical)} H{tuple(posts.horizontal)}"
            if posts.terminal is not None:
                entry += f" T{tuple(posts.terminal)}"
        except DecompositionError as e:
            entry += f" ({e})"
        lines.append(entry)

    lines.append("conflux digraph arcs:")
    lines.extend(f"  {a} -> {b}" for a, b in dg.edges())
    return "\n".join(lines) + "\n"
