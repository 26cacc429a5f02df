"""
Conflux traps.

Local coordinates (p, q) of the conflux K grow along its arcs, so inside K
the robber only ever increases p or q. The main corners are A = (a-1, 0)
and B = (0, b-1), the terminal corner is T = (a-1, b-1).

trap1 works in a frame (u, w) where the robber entered K across the w = 0
side: C1 is the corner cop on the robber's w-line and C2 the other one,
waiting on the far side w = W-1. C1 keeps level with the robber so it can
never reach u = U-1; C2 creeps along u towards it. Once the robber reaches
C2's line both cops ride it and the stream endgame takes over.
"""
import logging
from typing import Any, Dict, Hashable, NamedTuple, Optional, Sequence, Tuple

from decomposition.confluxes import Conflux, guard_posts, main_corner_a, main_corner_b, terminal_corner
from errors import DecompositionError, InvariantViolation
from grid_model.grid import Coord, OrientedGrid
from strategies.base import Fragment, FragmentStatus, Moves
from strategies.stream_trap import StreamEndgame, StreamTrapState

logger = logging.getLogger(__name__)


class Frame(NamedTuple):
    swapped: bool
    extent_u: int
    extent_w: int

    def to_uw(self, p: int, q: int) -> Tuple[int, int]:
        return (q, p) if self.swapped else (p, q)

    def to_pq(self, u: int, w: int) -> Tuple[int, int]:
        return (w, u) if self.swapped else (u, w)


def entry_frame(k: Conflux, robber: Coord) -> Optional[Frame]:
    """The frame in which the robber sits on the w = 0 side with an in-arc from outside K"""
    p, q = k.local(robber)
    if q == 0 and not k.v_stream.spans_grid:
        return Frame(False, k.a, k.b)
    if p == 0 and not k.h_stream.spans_grid:
        return Frame(True, k.b, k.a)
    return None


class Trap1State(NamedTuple):
    frame: Frame


class Trap1(Fragment):
    name = "trap1"

    def __init__(self, grid: OrientedGrid, conflux: Conflux, corner_cops: Tuple[int, int],
                 interceptor: Optional[int] = None):
        cops = corner_cops + ((interceptor,) if interceptor is not None else ())
        super().__init__(grid, cops)
        self.conflux = conflux
        self.cop_a, self.cop_b = corner_cops
        self.interceptor = interceptor
        self.endgame = StreamEndgame(self)

    def _roles(self, frame: Frame) -> Tuple[int, int]:
        """(C1, C2) for this frame"""
        return (self.cop_b, self.cop_a) if frame.swapped else (self.cop_a, self.cop_b)

    def _uw(self, frame: Frame, v: Coord) -> Tuple[int, int]:
        return frame.to_uw(*self.conflux.local(v))

    def _vertex(self, frame: Frame, u: int, w: int) -> Coord:
        return self.conflux.from_local(*frame.to_pq(u, w))

    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        k = self.conflux
        if k.covers_grid:
            self.refuse(f"{k} covers the grid")
        if robber not in k:
            self.refuse(f"robber at {robber} is outside {k}")
        if positions[self.cop_a] != main_corner_a(k) or positions[self.cop_b] != main_corner_b(k):
            self.refuse(f"main corners of {k} are not both covered")
        frame = entry_frame(k, robber)
        if frame is None:
            self.refuse(f"every in-neighbour of {robber} lies inside {k}")
        return self._maybe_confine(Trap1State(frame), positions, robber)

    def _maybe_confine(self, state: Trap1State, positions: Sequence[Coord], robber: Coord) -> Hashable:
        frame = state.frame
        c1, c2 = self._roles(frame)
        u1, w1 = self._uw(frame, positions[c1])
        u2, w2 = self._uw(frame, positions[c2])
        _, wr = self._uw(frame, robber)
        if not (w1 == wr == w2):
            return state
        base = self.conflux.v_stream if frame.swapped else self.conflux.h_stream
        line = base.line_of
        return self.endgame.begin(base, c2, line(self._vertex(frame, u2, 0)), c1, line(self._vertex(frame, u1, 0)),
                                  self.interceptor)

    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        if isinstance(state, StreamTrapState):
            return self.endgame.respond(state, positions, robber)
        if self.caught(positions, robber):
            return {}, state
        if robber not in self.conflux:
            raise InvariantViolation(f"robber left {self.conflux} at {robber} before being confined")

        frame = state.frame
        c1, c2 = self._roles(frame)
        ur, wr = self._uw(frame, robber)
        u1, w1 = self._uw(frame, positions[c1])
        u2, w2 = self._uw(frame, positions[c2])
        moves: Moves = {}
        if w1 < wr:
            moves[c1] = self._vertex(frame, u1, w1 + 1)
        if u2 < ur:
            moves[c2] = self._vertex(frame, u2 + 1, w2)

        moved = list(positions)
        for cop, target in moves.items():
            moved[cop] = target
        return moves, self._maybe_confine(state, moved, robber)

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.CONFINED if isinstance(state, StreamTrapState) else FragmentStatus.RUNNING

    def describe(self, state: Hashable) -> Dict[str, Any]:
        notes = {"fragment": self.name, "status": self.status(state).value, "conflux": str(self.conflux)}
        if isinstance(state, StreamTrapState):
            notes["stream"] = str(state.stream)
        return notes


class Trap2(Fragment):
    """
    Corner cops on A, B and T hold still until the robber reaches the last
    p- or q-line of K. That line is a one-wide conflux whose main corners are
    already covered, so the robber is confined at once; the corner cop left
    over becomes the interceptor.
    """

    name = "trap2"
    HOLD = "hold"

    def __init__(self, grid: OrientedGrid, conflux: Conflux, corner_cops: Tuple[int, int],
                 terminal_cop: Optional[int] = None):
        cops = corner_cops + ((terminal_cop,) if terminal_cop is not None else ())
        super().__init__(grid, cops)
        self.conflux = conflux
        self.cop_a, self.cop_b = corner_cops
        self.terminal_cop = terminal_cop
        self.endgame = StreamEndgame(self)
        self.thin = min(conflux.a, conflux.b) == 1
        self.delegate = Trap1(grid, conflux, corner_cops, terminal_cop) if self.thin else None

    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        k = self.conflux
        if self.delegate is not None:
            return self.delegate.start(positions, robber)
        if k.covers_grid:
            self.refuse(f"{k} covers the grid")
        if robber not in k:
            self.refuse(f"robber at {robber} is outside {k}")
        if self.terminal_cop is None:
            self.refuse(f"{k} has a terminal corner and needs a cop on it")
        expected = {self.cop_a: main_corner_a(k), self.cop_b: main_corner_b(k), self.terminal_cop: terminal_corner(k)}
        if any(positions[c] != v for c, v in expected.items()):
            self.refuse(f"corners of {k} are not covered")
        return self._maybe_confine(positions, robber)

    def _maybe_confine(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        k = self.conflux
        if self.caught(positions, robber):
            return self.HOLD
        p, q = k.local(robber)
        if q == k.b - 1:
            base = k.h_stream
            return self.endgame.begin(base, self.cop_b, base.line_of(main_corner_b(k)),
                                      self.terminal_cop, base.line_of(terminal_corner(k)), self.cop_a)
        if p == k.a - 1:
            base = k.v_stream
            return self.endgame.begin(base, self.cop_a, base.line_of(main_corner_a(k)),
                                      self.terminal_cop, base.line_of(terminal_corner(k)), self.cop_b)
        return self.HOLD

    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        if self.delegate is not None:
            return self.delegate.respond(state, positions, before, robber)
        if isinstance(state, StreamTrapState):
            return self.endgame.respond(state, positions, robber)
        if robber not in self.conflux and not self.caught(positions, robber):
            raise InvariantViolation(f"robber left {self.conflux} at {robber} past the corner cops")
        state = self._maybe_confine(positions, robber)
        if isinstance(state, StreamTrapState):
            return self.endgame.respond(state, positions, robber)
        return {}, state

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.CONFINED if isinstance(state, StreamTrapState) else FragmentStatus.RUNNING

    def describe(self, state: Hashable) -> Dict[str, Any]:
        notes = {"fragment": self.name, "status": self.status(state).value, "conflux": str(self.conflux)}
        if isinstance(state, StreamTrapState):
            notes["stream"] = str(state.stream)
        return notes


class Budgets(NamedTuple):
    vertical: int
    horizontal: int
    terminal: int


class Trap3(Fragment):
    """
    Three cops heading for the guard posts of a conflux. While the robber
    stays inside, every cop closes in on its post. When it leaves, the cops
    on the two posts it could not have passed become the riders of the
    stream it is left in and the third cop intercepts.
    """

    name = "trap3"
    COUNTDOWN = "countdown"

    def __init__(self, grid: OrientedGrid, conflux: Conflux, c_v: int, c_h: int, c_t: int):
        super().__init__(grid, (c_v, c_h, c_t))
        self.conflux = conflux
        self.c_v, self.c_h, self.c_t = c_v, c_h, c_t
        try:
            self.posts = guard_posts(conflux)
        except DecompositionError as e:
            self.refuse(str(e))
        self.terminal_targets = (terminal_corner(conflux),) + (
            (self.posts.terminal,) if self.posts.terminal is not None else ())
        self.endgame = StreamEndgame(self)

    def limits(self, robber: Coord) -> Budgets:
        k = self.conflux
        p, q = k.local(robber)
        d1, d1_back, d2, d2_back = k.a - 1 - p, p, k.b - 1 - q, q
        return Budgets(d1 + d2_back + 1, d2 + d1_back + 1, d1 + d2)

    def budgets(self, positions: Sequence[Coord]) -> Budgets:
        terminal = [self.distance(positions[self.c_t], t) for t in self.terminal_targets]
        terminal = [d for d in terminal if d >= 0]
        return Budgets(self.distance(positions[self.c_v], self.posts.vertical),
                       self.distance(positions[self.c_h], self.posts.horizontal),
                       min(terminal) if terminal else -1)

    def start(self, positions: Sequence[Coord], robber: Coord) -> Hashable:
        if robber not in self.conflux:
            self.refuse(f"robber at {robber} is outside {self.conflux}")
        have, allowed = self.budgets(positions), self.limits(robber)
        for name, m, limit in zip(Budgets._fields, have, allowed):
            if m < 0 or m > limit:
                self.refuse(f"{name} cop needs {m} moves, budget is {limit}")
        return self.COUNTDOWN

    def _terminal_target(self, position: Coord) -> Coord:
        options = [(self.distance(position, t), i, t) for i, t in enumerate(self.terminal_targets)]
        options = [o for o in options if o[0] >= 0]
        return min(options)[2] if options else self.terminal_targets[0]

    def respond(self, state: Hashable, positions: Sequence[Coord], before: Coord,
                robber: Coord) -> Tuple[Moves, Hashable]:
        if isinstance(state, StreamTrapState):
            return self.endgame.respond(state, positions, robber)
        k = self.conflux
        if robber in k or self.caught(positions, robber):
            return {
                self.c_v: self.toward(positions[self.c_v], self.posts.vertical),
                self.c_h: self.toward(positions[self.c_h], self.posts.horizontal),
                self.c_t: self.toward(positions[self.c_t], self._terminal_target(positions[self.c_t])),
            }, state

        if k.v_stream.contains(robber):
            base = k.v_stream
            state = self.endgame.begin(base, self.c_v, base.line_of(k.from_local(0, 0)),
                                       self.c_t, base.line_of(k.from_local(0, k.b - 1)), self.c_h)
        elif k.h_stream.contains(robber):
            base = k.h_stream
            state = self.endgame.begin(base, self.c_h, base.line_of(k.from_local(0, 0)),
                                       self.c_t, base.line_of(k.from_local(k.a - 1, 0)), self.c_v)
        else:
            raise InvariantViolation(f"robber jumped from {before} to {robber}, outside both streams of {k}")
        logger.debug(f"trap3: robber left {k} at {robber}, now held in {state.stream}")
        return self.endgame.respond(state, positions, robber)

    def status(self, state: Hashable) -> FragmentStatus:
        return FragmentStatus.CONFINED if isinstance(state, StreamTrapState) else FragmentStatus.RUNNING

    def describe(self, state: Hashable) -> Dict[str, Any]:
        notes = {"fragment": self.name, "status": self.status(state).value, "conflux": str(self.conflux)}
        if isinstance(state, StreamTrapState):
            notes["stream"] = str(state.stream)
        return notes
