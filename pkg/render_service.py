"""
Static renders of boards and traces: an ASCII board for the terminal and a
self-contained HTML strip (one plotly frame per step) for traces.
"""
import logging
from pathlib import Path
from typing import Any, List, Sequence, Tuple, Union

import plotly.graph_objects as go

from engine.state import Trace
from grid_model.grid import OrientedGrid

logger = logging.getLogger(__name__)

EMPTY, COP, ROBBER, CAPTURE = ".", "C", "R", "X"


def ascii_board(board: Any, cops: Sequence[Any], robber: Any = None) -> str:
    """One character per vertex; rows of an oriented grid top to bottom"""
    occupied = {tuple(c) if isinstance(c, (list, tuple)) else c for c in cops}
    robber = tuple(robber) if isinstance(robber, list) else robber

    def mark(v: Any) -> str:
        if v == robber:
            return CAPTURE if v in occupied else ROBBER
        return COP if v in occupied else EMPTY

    if isinstance(board, OrientedGrid):
        rows = []
        for x in range(board.n):
            rows.append("".join(mark(board.coord(x, y)) for y in range(board.n)))
        return "\n".join(rows)
    digraph = board.to_digraph()
    return "\n".join(f"{v}: {mark(v)}" for v in digraph.vertices)


def _xy(vertex: Any, index: int) -> Tuple[float, float]:
    """Plot position: (column, row) for grid coordinates, (index, 0) otherwise"""
    if isinstance(vertex, (list, tuple)) and len(vertex) == 2 and all(isinstance(c, int) for c in vertex):
        return vertex[1], vertex[0]
    return index, 0


def _points(vertices: Sequence[Any]) -> Tuple[List[float], List[float]]:
    xs, ys = [], []
    for i, v in enumerate(vertices):
        x, y = _xy(v, i)
        xs.append(x)
        ys.append(y)
    return xs, ys


def trace_strip_html(trace: Trace, path: Union[str, Path]) -> Path:
    """Write the trace as an HTML page with a step slider; returns the path"""
    if not trace.steps:
        raise ValueError("trace has no steps to render")
    frames = []
    for step in trace.steps:
        cx, cy = _points(step.cops)
        rx, ry = _points([step.robber])
        frames.append(go.Frame(name=str(step.step), data=[
            go.Scatter(x=cx, y=cy, mode="markers", name="cops", marker={"size": 12, "color": "royalblue"}),
            go.Scatter(x=rx, y=ry, mode="markers", name="robber", marker={"size": 14, "color": "crimson",
                                                                          "symbol": "x"}),
        ]))

    first = trace.steps[0]
    figure = go.Figure(data=frames[0].data, frames=frames)
    outcome = trace.outcome.kind.value if trace.outcome is not None else "unfinished"
    figure.update_layout(
        title=f"{trace.controller} vs {trace.robber_policy} on {trace.board}: {outcome}",
        yaxis={"autorange": "reversed", "scaleanchor": "x"},
        sliders=[{"steps": [{"label": f.name, "method": "animate",
                             "args": [[f.name], {"mode": "immediate", "frame": {"duration": 0}}]}
                            for f in frames]}],
    )
    logger.debug(f"Rendering {len(frames)} frames starting at step {first.step}")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    figure.write_html(str(path), include_plotlyjs=True, auto_play=False)
    logger.info(f"💾 Trace strip written to {path}")
    return path
