"""
Confining the robber to a stream, and finishing it there.

Two riders follow the robber on the stream's boundary lines: each heads for
the vertex of its line level with the robber and stays once there. If m_i
is a rider's distance to that vertex and d_i the robber's distance to the
line, m_i <= d_i survives every robber move, so stepping onto a boundary
line means capture.

The endgame adds two things. When both riders already stand level with the
robber, the rider whose crossing arc points inward steps across and the
stream loses a line. An interceptor walks to the robber's own line and
waits on it, so the robber cannot run along its line forever.
"""
import logging
from typing import Any, Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from decomposition.streams import Axis, Stream
from errors import InvariantViolation
from grid_model.grid import Coord, Direction, OrientedGrid
from strategies.base import Fragment, FragmentStatus, Moves

logger = logging.getLogger(__name__)


class StreamTrapState(NamedTuple):
    stream: Stream
    low: int
    high: int
    interceptor: Optional[int] = None


def cross_direction(grid: OrientedGrid, axis: Axis, along: int) -> Direction:
    """Direction, in line indices, of the crossing line at coordinate along"""
    return grid.col_dir[along % grid.n] if axis is Axis.HORIZONTAL else grid.row_dir[along % grid.n]


def stream_between(base: Stream, line_a: int, line_b: int) -> Tuple[Stream, bool]:
    """The substream of base bounded by two of its lines; True when line_a is its first line"""
    offset_a, offset_b = base.offset(line_a), base.offset(line_b)
    if offset_a >= base.width or offset_b >= base.width:
        raise InvariantViolation(f"lines {line_a} and {line_b} are not both inside {base}")
    low = min(offset_a, offset_b)
    width = abs(offset_a - offset_b) + 1
    return base.substream((base.first_line + low) % base.n, width), offset_a <= offset_b


def targets(state: StreamTrapState, robber: Coord) -> Dict[int, Coord]:
    s = state.stream
    z = s.along(robber)
    return {state.low: s.vertex(s.first_line, z), state.high: s.vertex(s.last_line, z)}


class StreamEndgame:
    """Rider and interceptor moves for a robber held inside a stream"""

    def __init__(self, fragment: Fragment):
        self.fragment = fragment
        self.grid = fragment.grid

    def begin(self, base: Stream, rider_a: int, line_a: int, rider_b: int, line_b: int,
              interceptor: Optional[int] = None) -> StreamTrapState:
        stream, a_first = stream_between(base, line_a, line_b)
        low, high = (rider_a, rider_b) if a_first else (rider_b, rider_a)
        logger.debug(f"Robber held in {stream} by cops {low} and {high}")
        return StreamTrapState(stream, low, high, interceptor)

    def check(self, state: StreamTrapState, positions: Sequence[Coord], robber: Coord):
        """m_i <= d_i for both riders; a robber on a rider is already caught"""
        if self.fragment.caught(positions, robber):
            return
        s = state.stream
        offset = s.offset(s.line_of(robber))
        if offset >= s.width:
            raise InvariantViolation(f"robber at {robber} outside {s}")
        gaps = {state.low: offset, state.high: s.width - 1 - offset}
        for cop, target in targets(state, robber).items():
            m = self.fragment.distance(positions[cop], target)
            if m < 0 or m > gaps[cop]:
                raise InvariantViolation(f"rider {cop} is {m} moves from {target}, robber {gaps[cop]} lines away")

    def respond(self, state: StreamTrapState, positions: Sequence[Coord], robber: Coord) -> Tuple[Moves, StreamTrapState]:
        s = state.stream
        n = self.grid.n
        z = s.along(robber)
        goal = targets(state, robber)
        moves: Moves = {}
        if s.width > 2 and all(positions[c] == v for c, v in goal.items()):
            if cross_direction(self.grid, s.axis, z) > 0:
                moves[state.low] = s.vertex(s.first_line + 1, z)
                state = state._replace(stream=Stream(s.axis, (s.first_line + 1) % n, s.width - 1, s.direction, n))
            else:
                moves[state.high] = s.vertex(s.last_line - 1, z)
                state = state._replace(stream=Stream(s.axis, s.first_line, s.width - 1, s.direction, n))
        else:
            for cop, target in goal.items():
                moves[cop] = self.fragment.toward(positions[cop], target)
        if state.interceptor is not None:
            moves[state.interceptor] = self._intercept(positions[state.interceptor], s, s.line_of(robber))

        moved = list(positions)
        for cop, target in moves.items():
            moved[cop] = target
        self.check(state, moved, robber)
        return moves, state

    def _intercept(self, position: Coord, stream: Stream, line: int) -> Coord:
        if stream.line_of(position) == line:
            return position
        options: List[Tuple[int, Coord]] = []
        for t in range(self.grid.n):
            v = stream.vertex(line, t)
            d = self.fragment.distance(position, v)
            if d >= 0:
                options.append((d, v))
        if not options:
            return position
        return self.fragment.toward(position, min(options)[1])


class StreamTrap(Fragment):
    """Two riders on the boundary lines of a stream, optionally with an interceptor"""

    name = "streamtrap"

    def __init__(self, grid: OrientedGrid, stream: Stream, riders: Tuple[int, int],
                 interceptor: Optional[int] = None):
        cops = riders + ((interceptor,) if interceptor is not None else ())
        super().__init__(grid, cops)
        self.stream = stream
        self.riders = riders
        self.interceptor = interceptor
        self.endgame = StreamEndgame(self)

    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        if not self.stream.contains(robber):
            self.refuse(f"robber at {robber} is not in {self.stream}")
        if len(set(self.cops)) != len(self.cops):
            self.refuse("riders and interceptor must be distinct cops")
        state = StreamTrapState(self.stream, self.riders[0], self.riders[1], self.interceptor)
        try:
            self.endgame.check(state, positions, robber)
        except InvariantViolation as e:
            self.refuse(f"riders cannot keep up: {e}")
        return state

    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        return self.endgame.respond(state, positions, robber)

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.CONFINED

    def describe(self, state: Hashable) -> Dict[str, Any]:
        return {"fragment": self.name, "status": "confined", "stream": str(state.stream)}
