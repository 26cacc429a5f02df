"""
Capture on any straight-ahead grid with at most 319 cops at a time.

Streams are blocked with paddle guards, widest first. A guard counts once
its paddles stand in formation; from then on the robber cannot pass its
core without being held. Where a blocked vertical stream meets a blocked
horizontal one, three cops guard the conflux with trap3.

The territory is the part of the torus the robber can still reach: on each
axis, the run of lines around the robber's line that no guarded core cuts.
It never grows. Whenever three guards stand on one axis, only the two that
bound the robber's run are kept, the others go back to the pool, and the
next guard goes to the widest stream still meeting the territory.

Every guard starts with four paddles: two stay committed after setup, two
are temporary. With one chaser that is 5 x 60 + 6 x 3 + 1 = 319 at most;
the ledger refuses any assignment beyond that.
"""
import logging
from typing import Any, Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from cop_ledger import CopLedger, CopStatus, FrozenRoles
from decomposition.confluxes import Conflux, guard_posts, terminal_corner
from decomposition.streams import Axis, Stream
from engine.chaser import Chaser
from engine.controller import Controller, ControllerState
from errors import InvariantViolation, StrategyRefusal
from grid_model.grid import Coord, OrientedGrid
from settings import get_settings
from strategies.base import apply_moves
from strategies.paddles import (PaddleFrame, PaddleGuard, PaddleGuardState, TrapSpec, build_trap,
                                minimal_paddle_n, widest_streams)
from strategies.traps import Trap3

logger = logging.getLogger(__name__)

BUDGET = 319
MAX_STREAMS = 5
MAX_CONFLUXES = 6
CHASER = "chaser"


class StreamGuardSlot(NamedTuple):
    stream: Stream
    cops: Tuple[int, ...]
    # None while the paddles walk into formation
    state: Optional[PaddleGuardState] = None


class ConfluxGuardSlot(NamedTuple):
    conflux: Conflux
    cops: Tuple[int, int, int]


class Territory(NamedTuple):
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.rows) * len(self.cols)

    def meets(self, stream: Stream) -> bool:
        lines = self.rows if stream.axis is Axis.HORIZONTAL else self.cols
        return any(stream.contains_line(line) for line in lines)


class GeneralMemory(NamedTuple):
    before: Coord
    roles: FrozenRoles
    streams: Tuple[StreamGuardSlot, ...]
    confluxes: Tuple[ConfluxGuardSlot, ...]
    territory: Territory
    trap: Optional[TrapSpec] = None
    trap_state: Hashable = None


def stream_role(stream: Stream) -> str:
    return f"stream:{stream.axis.value}:{stream.first_line}"


def conflux_role(k: Conflux) -> str:
    return f"conflux:{k.v_stream.first_line},{k.h_stream.first_line}"


def axis_run(grid: OrientedGrid, cuts: Sequence[int], line: int) -> Tuple[int, ...]:
    """The lines reachable from line without crossing a cut line, in order"""
    n = grid.n
    blocked = set(cuts)
    if line in blocked:
        raise InvariantViolation(f"line {line} is itself cut")
    if not blocked:
        return tuple(range(n))
    low = line
    while (low - 1) % n not in blocked:
        low = (low - 1) % n
    run = []
    current = low
    while current not in blocked:
        run.append(current)
        current = (current + 1) % n
    return tuple(run)


def territory_of(grid: OrientedGrid, guarded: Sequence[Stream], robber: Coord,
                 previous: Optional[Territory] = None) -> Territory:
    """
    Territory around the robber bounded by the cores of guarded streams.
    A robber standing in a guarded core is being held; the previous
    territory stands until it is.
    """
    cut_rows: List[int] = []
    cut_cols: List[int] = []
    for stream in guarded:
        core = PaddleFrame(grid, stream).core_lines()
        (cut_rows if stream.axis is Axis.HORIZONTAL else cut_cols).extend(core)
    if robber.x in cut_rows or robber.y in cut_cols:
        if previous is not None:
            return previous
        raise InvariantViolation(f"robber at {robber} starts inside a guarded core")
    return Territory(axis_run(grid, cut_rows, robber.x), axis_run(grid, cut_cols, robber.y))


def bounding_guards(grid: OrientedGrid, guarded: Sequence[Stream], territory: Territory) -> List[Stream]:
    """Guarded streams whose core touches one end of the territory's run on their axis"""
    bounds = []
    for stream in guarded:
        run = territory.rows if stream.axis is Axis.HORIZONTAL else territory.cols
        if len(run) == grid.n:
            continue
        ends = {(run[0] - 1) % grid.n, (run[-1] + 1) % grid.n}
        if ends & set(PaddleFrame(grid, stream).core_lines()):
            bounds.append(stream)
    return bounds


class GeneralController(Controller):
    name = "general319"
    step_invariant = False

    def __init__(self, grid: OrientedGrid, size: Optional[int] = None):
        super().__init__(grid)
        self.grid = grid
        self.size = size or get_settings().paddle_size
        self.candidates = widest_streams(grid)
        if not self.candidates:
            raise StrategyRefusal(f"{self.name}: {grid!r} has no stream narrower than the grid")
        need = minimal_paddle_n(self.candidates[0].width)
        if grid.n < need:
            raise StrategyRefusal(f"{self.name}: n={grid.n} is too small for paddles of width "
                                  f"{self.candidates[0].width}", minimal_n=need)
        self.count = BUDGET
        self.chaser = Chaser(grid, BUDGET - 1)
        self._guards: Dict[Tuple[Stream, Tuple[int, ...]], PaddleGuard] = {}

    @property
    def cop_count(self) -> int:
        return self.count

    def guard(self, slot: StreamGuardSlot) -> PaddleGuard:
        key = (slot.stream, slot.cops)
        if key not in self._guards:
            self._guards[key] = PaddleGuard(self.grid, slot.stream, slot.cops, self.size, forcing=False)
        return self._guards[key]

    def _first_slot(self) -> StreamGuardSlot:
        return StreamGuardSlot(self.candidates[0], tuple(range(4 * self.size)))

    def place(self) -> Tuple[Coord, ...]:
        slots = self.guard(self._first_slot()).placement()
        rest = Coord(self.grid.n // 2, self.grid.n // 2)
        return tuple(slots.get(c, rest) for c in range(self.count))

    def observe_robber(self, robber: Coord) -> ControllerState:
        first = self._first_slot()
        ledger = CopLedger(self.count, budget=BUDGET)
        self._commit(ledger, first)
        ledger.assign(self.chaser.cop_index, CopStatus.CHASER, CHASER)
        guard = self.guard(first)
        slot = first._replace(state=guard.initial(robber))
        territory = territory_of(self.grid, [first.stream], robber) if not PaddleFrame(
            self.grid, first.stream).in_core(robber) else territory_of(self.grid, [], robber)
        memory = GeneralMemory(robber, ledger.freeze(), (slot,), (), territory)
        return ControllerState(self.place(), memory)

    def _commit(self, ledger: CopLedger, slot: StreamGuardSlot):
        role = stream_role(slot.stream)
        for i, cop in enumerate(slot.cops):
            status = CopStatus.COMMITTED if i < 2 * self.size else CopStatus.TEMPORARY
            ledger.assign(cop, status, role)

    # -- one step -------------------------------------------------------------

    def step(self, state: ControllerState, robber: Coord) -> ControllerState:
        memory: GeneralMemory = state.memory
        cops = state.cops
        ledger = CopLedger.thaw(memory.roles, budget=BUDGET)
        chase = {self.chaser.cop_index: self.chaser.next_position(cops[self.chaser.cop_index], robber)}

        if memory.trap is not None:
            moves, trap_state = build_trap(self.grid, memory.trap).respond(memory.trap_state, cops,
                                                                           memory.before, robber)
            if self.chaser.cop_index not in moves:
                moves.update(chase)
            return ControllerState(apply_moves(cops, moves), memory._replace(before=robber, trap_state=trap_state))

        streams = list(memory.streams)
        for i, slot in enumerate(streams):
            if slot.state is None:
                continue
            guard = self.guard(slot)
            stepped = guard.step(slot.state, cops, robber)
            found = guard.confine(slot.state._replace(robber=stepped.robber), cops, robber)
            if found is not None:
                return self._spring(memory, cops, robber, found, chase)
            streams[i] = slot._replace(state=stepped)

        for k in memory.confluxes:
            if robber in k.conflux:
                try:
                    trap = Trap3(self.grid, k.conflux, *k.cops)
                    found = TrapSpec(trap.name, k.conflux, k.cops), trap.start(cops, robber)
                except StrategyRefusal as e:
                    logger.debug(f"Conflux guard not ready: {e}")
                    continue
                return self._spring(memory, cops, robber, found, chase)

        formed = [s.stream for s in streams if s.state is not None]
        territory = territory_of(self.grid, formed, robber, memory.territory)
        if territory.size > memory.territory.size:
            raise InvariantViolation(f"territory grew from {memory.territory.size} to {territory.size}")

        confluxes = list(memory.confluxes)
        streams, confluxes = self._release(ledger, streams, confluxes, territory)
        streams = self._recruit(ledger, streams, territory)
        confluxes = self._guard_confluxes(ledger, streams, confluxes)

        moves = dict(chase)
        for i, slot in enumerate(streams):
            guard = self.guard(slot)
            if slot.state is None:
                targets = guard.placement()
                if all(cops[c] == targets[c] for c in slot.cops):
                    logger.info(f"✅ Paddles in formation on {slot.stream}")
                    streams[i] = slot._replace(state=guard.initial(robber))
                    continue
            else:
                targets = guard.slots(slot.state)
                for cop in guard.idle(slot.state):
                    if ledger.cops[cop].active and ledger.cops[cop].role == stream_role(slot.stream):
                        ledger.release(cop, "setup over")
            for cop, target in targets.items():
                moves[cop] = guard.paths.next_step(cops[cop], target)
        for k in confluxes:
            moves.update(self._conflux_moves(k, cops))

        moved = apply_moves(cops, moves)
        for slot in streams:
            if slot.state is not None:
                self.guard(slot).check(slot.state, moved)
        memory = GeneralMemory(robber, ledger.freeze(), tuple(streams), tuple(confluxes), territory)
        return ControllerState(moved, memory)

    def _spring(self, memory: GeneralMemory, cops: Tuple[Coord, ...], robber: Coord,
                found: Tuple[TrapSpec, Hashable], chase: Dict[int, Coord]) -> ControllerState:
        spec, trap_state = found
        logger.info(f"🎯 {spec.kind} holds the robber at {robber} in {spec.region}")
        moves, trap_state = build_trap(self.grid, spec).respond(trap_state, cops, memory.before, robber)
        if self.chaser.cop_index not in moves:
            moves.update(chase)
        return ControllerState(apply_moves(cops, moves),
                               memory._replace(before=robber, trap=spec, trap_state=trap_state))

    def _release(self, ledger: CopLedger, streams: List[StreamGuardSlot], confluxes: List[ConfluxGuardSlot],
                 territory: Territory) -> Tuple[List[StreamGuardSlot], List[ConfluxGuardSlot]]:
        """Three formed guards on one axis: keep the two that bound the territory"""
        formed = [s.stream for s in streams if s.state is not None]
        bounds = set(bounding_guards(self.grid, formed, territory))
        for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
            on_axis = [s for s in formed if s.axis is axis]
            if len(on_axis) < 3:
                continue
            dropped = [s for s in on_axis if s not in bounds]
            if len(on_axis) - len(dropped) < 2:
                continue
            for stream in dropped:
                ledger.release_holders(stream_role(stream), "outside the territory")
                logger.info(f"♻️ Guard on {stream} released, territory {territory.size}")
            streams = [s for s in streams if s.stream not in dropped]
            kept = []
            for k in confluxes:
                if k.conflux.v_stream in dropped or k.conflux.h_stream in dropped:
                    ledger.release_holders(conflux_role(k.conflux), "stream released")
                else:
                    kept.append(k)
            confluxes = kept
        return streams, confluxes

    def _recruit(self, ledger: CopLedger, streams: List[StreamGuardSlot],
                 territory: Territory) -> List[StreamGuardSlot]:
        """Start a guard on the widest unguarded stream meeting the territory"""
        if len(streams) >= MAX_STREAMS or any(s.state is None for s in streams):
            return streams
        need = 4 * self.size
        if BUDGET - ledger.active_count() < need or len(ledger.free()) < need:
            return streams
        guarded = {s.stream for s in streams}
        for stream in self.candidates:
            if stream in guarded or not territory.meets(stream):
                continue
            if self.grid.n < minimal_paddle_n(stream.width):
                continue
            slot = StreamGuardSlot(stream, tuple(ledger.free()[:need]))
            self._commit(ledger, slot)
            logger.info(f"🛡️ Guarding {stream} ({len(streams) + 1} streams, {ledger.active_count()} active)")
            return streams + [slot]
        return streams

    def _guard_confluxes(self, ledger: CopLedger, streams: List[StreamGuardSlot],
                         confluxes: List[ConfluxGuardSlot]) -> List[ConfluxGuardSlot]:
        formed = [s.stream for s in streams if s.state is not None]
        have = {k.conflux for k in confluxes}
        for v_stream in (s for s in formed if s.axis is Axis.VERTICAL):
            for h_stream in (s for s in formed if s.axis is Axis.HORIZONTAL):
                if len(confluxes) >= MAX_CONFLUXES or len(ledger.free()) < 3 or BUDGET - ledger.active_count() < 3:
                    return confluxes
                k = Conflux(v_stream, h_stream, self.grid)
                if k in have:
                    continue
                cops = tuple(ledger.take_free(3, CopStatus.COMMITTED, conflux_role(k)))
                confluxes.append(ConfluxGuardSlot(k, cops))
                have.add(k)
        return confluxes

    def _conflux_moves(self, k: ConfluxGuardSlot, cops: Sequence[Coord]) -> Dict[int, Coord]:
        posts = guard_posts(k.conflux)
        c_v, c_h, c_t = k.cops
        terminal = posts.terminal if posts.terminal is not None else terminal_corner(k.conflux)
        paths = self.chaser.paths
        return {c_v: paths.next_step(cops[c_v], posts.vertical),
                c_h: paths.next_step(cops[c_h], posts.horizontal),
                c_t: paths.next_step(cops[c_t], terminal)}

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        memory: GeneralMemory = state.memory
        ledger = CopLedger.thaw(memory.roles, budget=BUDGET)
        notes: Dict[str, Any] = {
            "streams": [{"stream": str(s.stream), "formed": s.state is not None,
                         "paddle_state": s.state.pair.label if s.state is not None else None}
                        for s in memory.streams],
            "confluxes": [str(k.conflux) for k in memory.confluxes],
            "territory": memory.territory.size,
            "ledger": ledger.snapshot(),
        }
        if memory.trap is not None:
            notes["trap"] = build_trap(self.grid, memory.trap).describe(memory.trap_state)
        return notes


def general_319(grid: OrientedGrid) -> GeneralController:
    return GeneralController(grid)
