"""
Text formats for boards.

Orientation:            Quadrangulation:
    6                       Q 4 4 1
    ++--++                  ++-+        (one char per horizontal walk)
    +-+-+-                  +           (one char per vertical walk)

Blank lines and lines starting with '#' are ignored.
"""
import logging
import math
from pathlib import Path
from typing import List, Tuple, Union

from errors import FormatError, GridConstructionError
from grid_model.grid import OrientedGrid, directions_to_text, make_grid
from grid_model.quadrangulation import Quadrangulation, make_quadrangulation

logger = logging.getLogger(__name__)

Board = Union[OrientedGrid, Quadrangulation]


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((number, line))
    return lines


def _parse_directions(number: int, line: str, expected: int) -> List[int]:
    dirs = []
    for column, char in enumerate(line, start=1):
        if char == "+":
            dirs.append(1)
        elif char == "-":
            dirs.append(-1)
        else:
            raise FormatError(f"unexpected character {char!r}, expected '+' or '-'", number, column)
    if len(dirs) != expected:
        raise FormatError(f"expected {expected} directions, found {len(dirs)}", number, min(len(dirs), expected) + 1)
    return dirs


def parse_orientation(text: str) -> OrientedGrid:
    lines = _content_lines(text)
    if len(lines) < 3:
        last = lines[-1][0] if lines else 0
        raise FormatError("orientation needs three lines: n, row directions, column directions", last + 1)
    number, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise FormatError(f"grid size {header!r} is not an integer", number, 1)

    row_dir = _parse_directions(*lines[1], n)
    col_dir = _parse_directions(*lines[2], n)
    if len(lines) > 3:
        raise FormatError("trailing content after column directions", lines[3][0], 1)
    try:
        return make_grid(n, row_dir, col_dir)
    except GridConstructionError as e:
        raise FormatError(str(e), number, 1) from e


def format_orientation(grid: OrientedGrid) -> str:
    return f"{grid.n}\n{directions_to_text(grid.row_dir)}\n{directions_to_text(grid.col_dir)}\n"


def parse_quadrangulation(text: str) -> Quadrangulation:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty quadrangulation description", 1)
    number, header = lines[0]
    fields = header.split()
    if len(fields) != 4 or fields[0] != "Q":
        raise FormatError(f"header must read 'Q r s t', got {header!r}", number, 1)
    try:
        r, s, t = (int(f) for f in fields[1:])
    except ValueError:
        raise FormatError(f"non-integer parameter in {header!r}", number, 3)
    if r < 1 or s < 1 or not 0 <= t < r:
        raise FormatError(f"parameters out of range: r={r}, s={s}, t={t}", number, 3)

    h_dir = [1] * s
    v_dir = [1] * math.gcd(r, t)
    if len(lines) >= 2:
        h_dir = _parse_directions(*lines[1], s)
    if len(lines) >= 3:
        v_dir = _parse_directions(*lines[2], len(v_dir))
    if len(lines) > 3:
        raise FormatError("trailing content after walk directions", lines[3][0], 1)
    return make_quadrangulation(r, s, t, h_dir, v_dir)


def format_quadrangulation(q: Quadrangulation) -> str:
    return f"Q {q.r} {q.s} {q.t}\n{directions_to_text(q.h_dir)}\n{directions_to_text(q.v_dir)}\n"


def parse_board(text: str) -> Board:
    lines = _content_lines(text)
    if lines and lines[0][1].startswith("Q"):
        return parse_quadrangulation(text)
    return parse_orientation(text)


def load_board(path: Union[str, Path]) -> Board:
    text = Path(path).read_text()
    board = parse_board(text)
    logger.info(f"✅ Loaded {board.descriptor} from {path}")
    return board
