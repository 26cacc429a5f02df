"""
Paddles: formations of cops that block a stream.

The stream's own direction is "up". An inner paddle stands on the two
boundary lines of the stream and can only move up; an outer paddle stands on
the lines just outside it, which point down. A paddle is a column of cop
pairs, one cop on each side, m rows apart, and its domain is the 4w + 3 rows
starting at its lowest pair.

Rows are tracked as unwrapped integers u (along = direction * u mod n) so
the machine can compare heights without caring about the torus.

PaddlePairMachine keeps two paddles around the robber's row:

    0  setup: one pair of paddles sweeps up, another sweeps down, until the
       robber stands on the top row of the first or the bottom row of the
       second; that pair is kept and the other released (goes to 4)
    1  P1 up, P2 down, same rows, robber inside
    2  P1 up, P2 reforming to go up in t moves, d1 + d2 + t <= 2w + 1
    3  both up, d1 >= 1, d1 + d2 <= 2w + 1
    4  both up, same rows, robber d <= 2w + 1 rows below the top
    5  P1 up, P2 reforming to go down in t moves, d + t <= 4w + 2, d >= t

d1 is how far P1 is above P2, d2 (or d) how far the robber is below P1's top.
Leaving state 1 downwards flips the frame: "up" becomes the other way and the
paddles swap names.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from decomposition.confluxes import guard_posts, maximal_conflux, terminal_corner
from decomposition.streams import Axis, Stream, line_directions, maximal_streams, stream_of
from engine.chaser import Chaser
from engine.controller import Controller, ControllerState
from engine.paths import shortest_paths
from errors import DecompositionError, InvariantViolation, StrategyRefusal
from grid_model.grid import Coord, OrientedGrid
from settings import get_settings
from strategies.base import Fragment, FragmentStatus, apply_moves
from strategies.stream_trap import StreamTrap, cross_direction
from strategies.traps import Trap3

logger = logging.getLogger(__name__)


def spacing(width: int) -> int:
    return width // 3 + 1


def domain_rows(width: int) -> int:
    return 4 * width + 2


def reform_bound(width: int) -> int:
    return 2 * width + 1


def minimal_paddle_n(width: int) -> int:
    """Smallest n that fits a full paddle formation with w free rows below it"""
    return 14 * spacing(width) + width + 2


@dataclass(frozen=True)
class PaddleFrame:
    grid: OrientedGrid
    stream: Stream

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def width(self) -> int:
        return self.stream.width

    @property
    def m(self) -> int:
        return spacing(self.width)

    @property
    def depth(self) -> int:
        return domain_rows(self.width)

    @property
    def direction(self) -> int:
        return self.stream.direction

    def inner(self, side: int) -> int:
        return self.stream.first_line if side == 0 else self.stream.last_line

    def outer(self, side: int) -> int:
        return (self.stream.first_line - 1) % self.n if side == 0 else (self.stream.last_line + 1) % self.n

    def line(self, side: int, inner: bool) -> int:
        return self.inner(side) if inner else self.outer(side)

    def core_lines(self) -> Tuple[int, ...]:
        """Lines at distance at least m - 1 from both boundary lines; all of them when m <= 1"""
        if self.m <= 1:
            return self.stream.lines
        low, high = self.m - 1, self.width - self.m
        return tuple(line for i, line in enumerate(self.stream.lines) if low <= i <= high)

    def in_core(self, v: Coord) -> bool:
        return self.stream.line_of(v) in self.core_lines()

    def along(self, u: int) -> int:
        return (self.direction * u) % self.n

    def height(self, v: Coord) -> int:
        """u of v in [0, n)"""
        return (self.direction * self.stream.along(v)) % self.n

    def unwrap(self, previous: int, v: Coord) -> int:
        """Unwrapped u of v, given the unwrapped u of a vertex at most one move away"""
        n = self.n
        delta = (self.height(v) - previous % n + n // 2) % n - n // 2
        return previous + delta

    def vertex(self, side: int, inner: bool, u: int) -> Coord:
        return self.stream.vertex(self.line(side, inner), self.along(u))


def reform_path(grid: OrientedGrid, frame: PaddleFrame, vertex: Coord, side: int) -> List[Coord]:
    """
    From a vertex on one of the side's two lines to the horizontally adjacent
    vertex on the other: along its own line until a crossing arc points the
    right way, across, then back along the other line the same distance.
    """
    stream = frame.stream
    n = grid.n
    line = stream.line_of(vertex)
    if line == frame.inner(side):
        target = frame.outer(side)
    elif line == frame.outer(side):
        target = frame.inner(side)
    else:
        raise DecompositionError(f"{vertex} is on neither line of side {side} of {stream}")
    sign = 1 if (target - line) % n == 1 else -1
    dirs = line_directions(grid, stream.axis)
    own, back = dirs[line], dirs[target]

    path: List[Coord] = []
    v = vertex
    d = 0
    while cross_direction(grid, stream.axis, stream.along(v)) != sign:
        v = stream.vertex(line, stream.along(v) + own)
        path.append(v)
        d += 1
        if d > n:
            raise DecompositionError(f"no crossing line from {line} to {target} in {stream}")
    v = stream.vertex(target, stream.along(v))
    path.append(v)
    for _ in range(d):
        v = stream.vertex(target, stream.along(v) + back)
        path.append(v)
    return path


class PairState(NamedTuple):
    label: int
    flip: int
    p1: int
    p2: int
    hi1: int
    hi2: int
    t: int = 0
    released: Tuple[int, ...] = ()
    # setup only: the downward pair and its top row
    q: Tuple[int, ...] = ()
    lo: int = 0


class PaddleView(NamedTuple):
    """How a physical paddle stands: real top row, which lines, steps left to reform"""
    top: int
    inner: bool
    reforming: int = 0


class PaddlePairMachine:
    def __init__(self, width: int, n: Optional[int] = None):
        self.width = width
        self.depth = domain_rows(width)
        self.limit = reform_bound(width)
        self.n = n

    def setup(self, top: int) -> PairState:
        return PairState(label=0, flip=1, p1=0, p2=1, hi1=top, hi2=top, q=(2, 3), lo=top)

    def _swap(self, hi: int) -> int:
        return self.depth - 1 - hi

    def _same_row(self, a: int, b: int) -> bool:
        return a == b if self.n is None else (a - b) % self.n == 0

    def step(self, state: PairState, robber: int) -> PairState:
        """The cops' answer to the robber standing on row robber (real, unwrapped)"""
        if state.label == 0:
            return self._setup_step(state, robber)
        r = state.flip * robber
        s = state
        if s.label == 1:
            if r > s.hi1:
                return s._replace(label=2, hi1=s.hi1 + 1, t=self.limit - 1)
            if r < s.hi1 - self.depth + 1:
                # P2 steps down, P1 turns round; in the flipped frame P2 leads
                return PairState(label=2, flip=-s.flip, p1=s.p2, p2=s.p1, hi1=self._swap(s.hi2 - 1),
                                 hi2=self._swap(s.hi1), t=self.limit - 1, released=s.released)
            return s
        if s.label == 2:
            hi1 = s.hi1 + 1 if r > s.hi1 else s.hi1
            t = s.t - 1
            return s._replace(label=3 if t == 0 else 2, hi1=hi1, t=t)
        if s.label == 3:
            if r > s.hi1:
                return s._replace(hi1=s.hi1 + 1, hi2=s.hi2 + 1)
            hi2 = s.hi2 + 1
            return s._replace(label=4 if hi2 == s.hi1 else 3, hi2=hi2)
        if s.label == 4:
            if s.hi1 - r > self.limit:
                return s._replace(label=5, t=self.limit - 1)
            if r > s.hi1:
                return s._replace(hi1=s.hi1 + 1, hi2=s.hi2 + 1)
            return s
        if s.label == 5:
            t = s.t - 1
            return s._replace(label=1 if t == 0 else 5, t=t)
        raise InvariantViolation(f"unknown paddle state {s.label}")

    def _setup_step(self, s: PairState, robber: int) -> PairState:
        if self._same_row(robber, s.hi1):
            logger.debug(f"Robber reached the top of the upward paddles at row {robber}")
            return PairState(label=4, flip=1, p1=s.p1, p2=s.p2, hi1=robber, hi2=robber, released=s.q)
        if self._same_row(robber, s.lo - self.depth + 1):
            logger.debug(f"Robber reached the bottom of the downward paddles at row {robber}")
            return PairState(label=4, flip=-1, p1=s.q[0], p2=s.q[1], hi1=-robber, hi2=-robber,
                             released=(s.p1, s.p2))
        return s._replace(hi1=s.hi1 + 1, hi2=s.hi2 + 1, lo=s.lo - 1)

    def check(self, state: PairState, robber: int):
        """The inequalities of the current state; raises InvariantViolation"""
        s = state
        if s.label == 0:
            return
        r = s.flip * robber
        w2 = self.limit
        d1, d2 = s.hi1 - s.hi2, s.hi1 - r
        ok = {
            1: d1 == 0 and 0 <= d2 <= self.depth - 1,
            2: d1 >= 1 and d2 >= 0 and s.t >= 1 and d1 + d2 + s.t <= w2,
            3: d1 >= 1 and d2 >= 0 and d1 + d2 <= w2,
            4: d1 == 0 and 0 <= d2 <= w2,
            5: d1 == 0 and s.t >= 1 and d2 + s.t <= 2 * w2 and d2 - s.t >= 0,
        }[s.label]
        if not ok:
            raise InvariantViolation(f"paddle state {s.label} broken: d1={d1} d={d2} t={s.t}")

    def views(self, state: PairState) -> Dict[int, PaddleView]:
        """Physical paddle index -> how it stands; released paddles are left out"""
        s = state
        if s.label == 0:
            return {s.p1: PaddleView(s.hi1, True), s.p2: PaddleView(s.hi2, True),
                    s.q[0]: PaddleView(s.lo, False), s.q[1]: PaddleView(s.lo, False)}

        def real_top(hi: int) -> int:
            return hi if s.flip > 0 else self._swap(hi)

        up_is_inner = s.flip > 0
        p2_up = s.label in (2, 3, 4)
        p2_reforming = s.t if s.label in (2, 5) else 0
        return {s.p1: PaddleView(real_top(s.hi1), up_is_inner),
                s.p2: PaddleView(real_top(s.hi2), up_is_inner if p2_up else not up_is_inner, p2_reforming)}


class TrapSpec(NamedTuple):
    """Enough to rebuild a trap fragment: its name, the stream or conflux, its cops"""
    kind: str
    region: Hashable
    cops: Tuple[Optional[int], ...]


def build_trap(grid: OrientedGrid, spec: TrapSpec) -> Fragment:
    if spec.kind == StreamTrap.name:
        return StreamTrap(grid, spec.region, (spec.cops[0], spec.cops[1]), spec.cops[2])
    if spec.kind == Trap3.name:
        return Trap3(grid, spec.region, *spec.cops)
    raise ValueError(f"unknown trap {spec.kind}")


class PaddleGuardState(NamedTuple):
    pair: PairState
    robber: int
    forcing: Optional[Tuple[int, int]] = None


class PaddleGuard:
    """
    The cops of one blocked stream: four paddles of size cops each, the
    first pair of paddles starting inner and the second outer. With forcing,
    five cops of the released pair form the forcing pairs after setup (one
    pair holding a row, one pair walking up the stream) and stand by as an
    interceptor.
    """

    def __init__(self, grid: OrientedGrid, stream: Stream, cops: Sequence[int], size: int, forcing: bool = True):
        self.grid = grid
        self.paths = shortest_paths(grid.to_digraph())
        self.frame = PaddleFrame(self.grid, stream)
        self.size = size
        self.pairs = size // 2
        self.forcing = forcing
        if len(cops) != 4 * size:
            raise ValueError(f"a paddle guard needs {4 * size} cops, got {len(cops)}")
        self.paddles: Tuple[Tuple[int, ...], ...] = tuple(tuple(cops[j * size:(j + 1) * size]) for j in range(4))
        self.machine = PaddlePairMachine(stream.width, self.grid.n)

    @property
    def stream(self) -> Stream:
        return self.frame.stream

    @property
    def cops(self) -> Tuple[int, ...]:
        return tuple(c for paddle in self.paddles for c in paddle)

    def distance(self, position: Coord, target: Coord) -> int:
        d = self.paths.distance(position, target)
        return -1 if d is None else d

    def initial(self, robber: Coord) -> PaddleGuardState:
        return PaddleGuardState(self.machine.setup(self.frame.depth - 1), self.frame.height(robber))

    def placement(self) -> Dict[int, Coord]:
        return self.slots(PaddleGuardState(self.machine.setup(self.frame.depth - 1), 0))

    def _formation(self, paddle: int, view: PaddleView) -> Dict[int, Coord]:
        bottom = view.top - self.frame.depth + 1
        slots = {}
        for k, cop in enumerate(self.paddles[paddle]):
            pair, side = divmod(k, 2)
            slots[cop] = self.frame.vertex(side, view.inner, bottom + pair * self.frame.m)
        return slots

    def forcing_cops(self, state: PaddleGuardState) -> Tuple[int, ...]:
        released = state.pair.released
        if not released or not self.forcing:
            return ()
        return self.paddles[released[0]][:5]

    def slots(self, state: PaddleGuardState) -> Dict[int, Coord]:
        slots: Dict[int, Coord] = {}
        for paddle, view in self.machine.views(state.pair).items():
            slots.update(self._formation(paddle, view))
        if state.forcing is not None:
            cops = self.forcing_cops(state)
            held, walking = state.forcing
            slots[cops[0]] = self.frame.vertex(0, True, held)
            slots[cops[1]] = self.frame.vertex(1, True, held)
            slots[cops[2]] = self.frame.vertex(0, True, walking)
            slots[cops[3]] = self.frame.vertex(1, True, walking)
        return slots

    def interceptor(self, state: PaddleGuardState) -> Optional[int]:
        cops = self.forcing_cops(state)
        return cops[4] if len(cops) == 5 else None

    def idle(self, state: PaddleGuardState) -> Tuple[int, ...]:
        """Released cops with nothing left to do"""
        taken = set(self.forcing_cops(state))
        return tuple(c for p in state.pair.released for c in self.paddles[p] if c not in taken)

    def step(self, state: PaddleGuardState, positions: Sequence[Coord], robber: Coord) -> PaddleGuardState:
        u = self.frame.unwrap(state.robber, robber)
        pair = self.machine.step(state.pair, u)
        forcing = state.forcing
        if pair.released and forcing is None and self.forcing:
            held = self.machine.views(pair)[pair.p1].top + self.grid.n // 2
            forcing = (held, held)
            logger.debug(f"Forcing pairs for {self.stream} start at row {held}")
        elif forcing is not None:
            cops = self.forcing_cops(state)
            held, walking = forcing
            if all(positions[c] == self.frame.vertex(i % 2, True, walking) for i, c in enumerate(cops[2:4])):
                forcing = (held, walking + 1)
        return PaddleGuardState(pair, u, forcing)

    def check(self, state: PaddleGuardState, positions: Sequence[Coord]):
        """Machine inequalities, and every reforming cop within reach of its slot"""
        self.machine.check(state.pair, state.robber)
        slots = self.slots(state)
        for paddle, view in self.machine.views(state.pair).items():
            if not view.reforming:
                continue
            for cop in self.paddles[paddle]:
                d = self.distance(positions[cop], slots[cop])
                if d < 0 or d > view.reforming:
                    raise InvariantViolation(f"paddle cop {cop} is {d} moves from its slot, {view.reforming} left")

    # -- confinement ----------------------------------------------------------

    def _pair_at(self, paddle: int, pair: int) -> Tuple[int, int]:
        return self.paddles[paddle][2 * pair], self.paddles[paddle][2 * pair + 1]

    def confine(self, state: PaddleGuardState, positions: Sequence[Coord],
                robber: Coord) -> Optional[Tuple[TrapSpec, Hashable]]:
        """A trap that already holds the robber, and its state, if this guard has one ready"""
        if not self.stream.contains(robber):
            return None
        interceptor = self.interceptor(state)
        slots = self.slots(state)
        n = self.grid.n
        u = state.robber

        candidates: List[Tuple[int, int]] = []
        if state.forcing is not None:
            cops = self.forcing_cops(state)
            for i in (0, 2):
                row = state.forcing[0] if i == 0 else state.forcing[1]
                if (u - row) % n == 0:
                    candidates.append((cops[i], cops[i + 1]))
        if self.frame.in_core(robber):
            for paddle, view in self.machine.views(state.pair).items():
                if view.reforming:
                    continue
                offset = (u - (view.top - self.frame.depth + 1)) % n
                if offset >= self.frame.depth:
                    continue
                if view.inner:
                    pair = offset // self.frame.m
                    if pair < self.pairs:
                        candidates.append(self._pair_at(paddle, pair))
                else:
                    found = self._outer_trap(paddle, positions, robber)
                    if found is not None:
                        return found

        for riders in candidates:
            if any(positions[c] != slots.get(c) for c in riders):
                continue
            trap = StreamTrap(self.grid, self.stream, riders, interceptor)
            try:
                return TrapSpec(trap.name, self.stream, riders + (interceptor,)), trap.start(positions, robber)
            except StrategyRefusal as e:
                logger.debug(f"{self.stream}: {e}")
        return None

    def _outer_trap(self, paddle: int, positions: Sequence[Coord],
                    robber: Coord) -> Optional[Tuple[TrapSpec, Hashable]]:
        k = maximal_conflux(self.grid, robber)
        try:
            posts = guard_posts(k)
        except DecompositionError:
            return None
        cops = list(self.paddles[paddle])
        terminal = [terminal_corner(k)] + ([posts.terminal] if posts.terminal is not None else [])

        def nearest(targets: Sequence[Coord], exclude: Sequence[int]) -> Optional[int]:
            options = []
            for c in cops:
                if c in exclude:
                    continue
                ds = [self.distance(positions[c], t) for t in targets]
                ds = [d for d in ds if d >= 0]
                if ds:
                    options.append((min(ds), c))
            return min(options)[1] if options else None

        c_t = nearest(terminal, ())
        c_v = nearest([posts.vertical], (c_t,))
        c_h = nearest([posts.horizontal], (c_t, c_v))
        if None in (c_t, c_v, c_h):
            return None
        try:
            trap = Trap3(self.grid, k, c_v, c_h, c_t)
            return TrapSpec(trap.name, k, (c_v, c_h, c_t)), trap.start(positions, robber)
        except StrategyRefusal as e:
            logger.debug(f"{self.stream}: {e}")
            return None


def paddle_refusal(grid: OrientedGrid, stream: Stream, name: str = "paddle"):
    """Raise StrategyRefusal when a paddle guard cannot block stream on grid"""
    if stream.spans_grid:
        raise StrategyRefusal(f"{name}: {stream} covers the whole axis")
    if stream_of(grid, stream.axis, stream.first_line) != stream:
        raise StrategyRefusal(f"{name}: {stream} is not a maximal stream")
    need = minimal_paddle_n(stream.width)
    if grid.n < need:
        raise StrategyRefusal(f"{name}: n={grid.n} is too small for a paddle on {stream}", minimal_n=need)


def widest_crossing(grid: OrientedGrid, stream: Stream) -> int:
    return max(s.width for s in maximal_streams(grid, stream.axis.other))


def paddle_paths_ok(grid: OrientedGrid, frame: PaddleFrame) -> bool:
    """Every reform path on the frame stays within 2w + 1 moves"""
    paths = shortest_paths(grid.to_digraph())
    limit = reform_bound(frame.width)
    for side in (0, 1):
        for inner in (True, False):
            for u in range(grid.n):
                start = frame.vertex(side, inner, u)
                end = frame.vertex(side, not inner, u)
                d = paths.distance(start, end)
                if d is None or d > limit:
                    return False
    return True


def widest_streams(grid: OrientedGrid) -> List[Stream]:
    """Maximal streams of both axes that do not span the grid, widest first"""
    streams = [s for axis in (Axis.VERTICAL, Axis.HORIZONTAL) for s in maximal_streams(grid, axis)
               if not s.spans_grid]
    return sorted(streams, key=lambda s: (-s.width, s.axis.value, s.first_line))


class PaddleMemory(NamedTuple):
    before: Coord
    guard: PaddleGuardState
    trap: Optional[TrapSpec] = None
    trap_state: Hashable = None


class PaddleController(Controller):
    """
    One paddle guard on a stream (the widest one by default) and a chaser.
    The robber can wander anywhere, but once inside the stream's core it is
    held by a pair of paddle cops or a conflux trap; the forcing pairs catch
    it anywhere in the stream.
    """

    name = "paddle"
    step_invariant = False

    def __init__(self, grid: OrientedGrid, stream: Optional[Stream] = None, size: Optional[int] = None,
                 goal_on_confinement: bool = False):
        super().__init__(grid)
        self.grid = grid
        if stream is None:
            candidates = widest_streams(grid)
            if not candidates:
                raise StrategyRefusal(f"{self.name}: {grid!r} has no stream to block")
            stream = candidates[0]
        paddle_refusal(grid, stream, self.name)
        if widest_crossing(grid, stream) > stream.width:
            raise StrategyRefusal(f"{self.name}: a crossing stream is wider than {stream}")
        self.size = size or get_settings().paddle_size
        self.guard = PaddleGuard(grid, stream, range(4 * self.size), self.size)
        self.chaser = Chaser(grid, 4 * self.size)
        self.goal_on_confinement = goal_on_confinement

    @property
    def cop_count(self) -> int:
        return 4 * self.size + 1

    def place(self) -> Tuple[Coord, ...]:
        slots = self.guard.placement()
        n = self.grid.n
        return tuple(slots[c] for c in range(4 * self.size)) + (Coord(n // 2, n // 2),)

    def observe_robber(self, robber: Coord) -> ControllerState:
        return ControllerState(self.place(), PaddleMemory(robber, self.guard.initial(robber)))

    def step(self, state: ControllerState, robber: Coord) -> ControllerState:
        memory: PaddleMemory = state.memory
        cops = state.cops
        chaser = {self.chaser.cop_index: self.chaser.next_position(cops[self.chaser.cop_index], robber)}

        if memory.trap is not None:
            moves, trap_state = build_trap(self.grid, memory.trap).respond(memory.trap_state, cops,
                                                                           memory.before, robber)
            moves.update(chaser)
            return ControllerState(apply_moves(cops, moves), memory._replace(before=robber, trap_state=trap_state))

        stepped = self.guard.step(memory.guard, cops, robber)
        found = self.guard.confine(memory.guard._replace(robber=stepped.robber), cops, robber)
        if found is not None:
            spec, trap_state = found
            logger.info(f"🎯 {spec.kind} holds the robber at {robber} in {spec.region}")
            moves, trap_state = build_trap(self.grid, spec).respond(trap_state, cops, memory.before, robber)
            moves.update(chaser)
            return ControllerState(apply_moves(cops, moves), PaddleMemory(robber, stepped, spec, trap_state))

        moves = {c: self.guard.paths.next_step(cops[c], slot) for c, slot in self.guard.slots(stepped).items()}
        moves.update(chaser)
        moved = apply_moves(cops, moves)
        self.guard.check(stepped, moved)
        return ControllerState(moved, PaddleMemory(robber, stepped))

    def is_goal(self, state: ControllerState) -> bool:
        memory: PaddleMemory = state.memory
        if not self.goal_on_confinement or memory.trap is None:
            return False
        return build_trap(self.grid, memory.trap).status(memory.trap_state) is FragmentStatus.CONFINED

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        memory: PaddleMemory = state.memory
        pair = memory.guard.pair
        notes: Dict[str, Any] = {"stream": str(self.guard.stream), "paddle_state": pair.label, "flip": pair.flip,
                                 "reform": pair.t}
        if memory.trap is not None:
            notes["trap"] = build_trap(self.grid, memory.trap).describe(memory.trap_state)
        return notes
