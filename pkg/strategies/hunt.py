"""
Shadow hunts on k-regular grids.

The diagonals x - y = 0 and x + y = -1 (mod 2k) are universal mirrors: the
reflection of the robber across one of them is always a diagonal shadow
with that mirror. Each maximal conflux is cut by exactly one of them.

Station cops stand on the entry sides of chosen confluxes. A robber can
never walk into such a conflux, and it cannot walk into any reflection of
it either: the step that lands it on the reflection of a station puts that
station's cop on a shadow, and the cop turns into a guard. Stations are
chosen so that the robber's remaining moves are acyclic, so it either runs
out of moves and the chaser walks in, or it hands the cops another guard.
Guarded mirrors are walls; every new guard cuts the robber's region down,
and a third guard on one diagonal class releases the one on the far side.

shadow7 stops at the first guard, double13 at two guards on parallel
mirrors, kregular13 goes on until capture.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from cop_ledger import CopLedger, CopStatus, FrozenRoles
from decomposition.conflux_digraph import ConfluxDigraph, ConfluxId
from decomposition.confluxes import Conflux, entry_side, exits_covered
from decomposition.diagonals import DiagClass
from decomposition.shadows import Mirror, mirror_between, mirror_distance, reflect_across, universal_mirrors
from decomposition.streams import regularity
from engine.controller import Controller, ControllerState
from engine.paths import shortest_paths
from errors import DecompositionError, InvariantViolation, StrategyRefusal
from grid_model.grid import Coord, OrientedGrid
from strategies.shadow_guard import GuardState, ShadowGuard

logger = logging.getLogger(__name__)

STATION = "station"
GUARD = "guard"
CHASER = "chaser"
SPARE = "spare"

# strips beyond this get a handful of style vectors instead of all of them
EXHAUSTIVE_STRIPS = 6

Walls = FrozenSet[Mirror]
Styles = Tuple[int, ...]


class HuntGoal(str, Enum):
    ONE_GUARD = "one_guard"
    TWO_GUARDS = "two_guards"
    CAPTURE = "capture"


class HuntPhase(str, Enum):
    HUNTING = "hunting"
    SHRINKING = "shrinking"
    FINAL = "final"


def style_vectors(strips: int) -> List[Styles]:
    if strips <= EXHAUSTIVE_STRIPS:
        return list(itertools.product((0, 1), repeat=strips))
    alternating = tuple(i % 2 for i in range(strips))
    vectors = [alternating, tuple(1 - s for s in alternating)]
    for i in range(strips):
        vectors.append(tuple(int(j == i) for j in range(strips)))
        vectors.append(tuple(int(j != i) for j in range(strips)))
    return vectors


@dataclass(frozen=True)
class StationPlan:
    """Where the station cops stand for one set of walls"""

    scheme: DiagClass
    styles: Styles
    stations: Tuple[Coord, ...]
    lines: Tuple[Mirror, ...]
    sealed: Tuple[ConfluxId, ...]
    watched: FrozenSet[Coord] = field(repr=False)


@dataclass(frozen=True)
class HuntPlan:
    """Mirror and conflux geometry of a hunt on a k-regular grid"""

    grid: OrientedGrid
    k: int
    digraph: ConfluxDigraph = field(compare=False, repr=False)
    _components: Dict[Walls, List[FrozenSet[Coord]]] = field(default_factory=dict, compare=False, repr=False)
    _plans: Dict[Tuple[Walls, Coord], Optional[StationPlan]] = field(default_factory=dict, compare=False,
                                                                      repr=False)

    @classmethod
    def build(cls, grid: OrientedGrid, name: str = "hunt") -> "HuntPlan":
        k = regularity(grid)
        if k == 0:
            raise StrategyRefusal(f"{name}: {grid.descriptor} is not k-regular")
        if k < 2 or k >= grid.n:
            raise StrategyRefusal(f"{name}: needs 2 <= k < n, got k={k}, n={grid.n}")
        if grid.n // k == 2:
            raise StrategyRefusal(f"{name}: only two streams per axis, every conflux touches both mirrors",
                                  minimal_n=4 * k)
        return cls(grid, k, ConfluxDigraph(grid))

    @property
    def strips(self) -> int:
        """Universal mirrors per diagonal class"""
        return self.grid.n // (2 * self.k)

    @cached_property
    def mirrors(self) -> Tuple[Mirror, ...]:
        return tuple(universal_mirrors(self.grid, self.k))

    @cached_property
    def confluxes(self) -> Dict[ConfluxId, Conflux]:
        return {cid: self.digraph.conflux(cid) for cid in self.digraph.vertices()}

    @cached_property
    def entries(self) -> Dict[ConfluxId, Tuple[Coord, ...]]:
        return {cid: tuple(entry_side(k)) for cid, k in self.confluxes.items()}

    @cached_property
    def cut_lines(self) -> Dict[ConfluxId, Mirror]:
        cuts = {}
        for cid, k in self.confluxes.items():
            lines = [m for m in self.mirrors if any(v in m for v in k.vertices())]
            if len(lines) != 1:
                raise DecompositionError(f"{k} meets {len(lines)} universal mirrors, expected one")
            cuts[cid] = lines[0]
        return cuts

    @cached_property
    def scheme_types(self) -> Dict[DiagClass, Tuple[Tuple[int, int], ...]]:
        return {scheme: tuple(sorted({self.confluxes[cid].type for cid, m in self.cut_lines.items()
                                      if m.diag_class is scheme}))
                for scheme in DiagClass}

    @cached_property
    def undirected(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.grid.vertices())
        g.add_edges_from((v, u) for v in self.grid.vertices() for u in self.grid.out_neighbors(v))
        return g

    @cached_property
    def arcs(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.grid.vertices())
        g.add_edges_from((v, u) for v in self.grid.vertices() for u in self.grid.out_neighbors(v))
        return g

    def strip_of(self, cid: ConfluxId) -> int:
        """Index of the strip between two mirrors of the other class that holds the conflux"""
        v = next(iter(self.confluxes[cid].vertices()))
        n, width = self.grid.n, 2 * self.k
        if self.cut_lines[cid].diag_class is DiagClass.ANTI_DIAG:
            return ((v.x - v.y) % n) // width
        return ((v.x + v.y + 1) % n) // width

    # -- regions --------------------------------------------------------------

    def region(self, walls: Walls, robber: Coord) -> FrozenSet[Coord]:
        """The robber's component once every vertex of a wall is taken out"""
        if walls not in self._components:
            closed = set().union(*(m.as_set() for m in walls))
            kept = self.undirected.subgraph(v for v in self.undirected if v not in closed)
            self._components[walls] = [frozenset(c) for c in nx.connected_components(kept)]
        for component in self._components[walls]:
            if robber in component:
                return component
        raise InvariantViolation(f"robber at {robber} stands on a guarded mirror")

    def touches(self, mirror: Mirror, region: FrozenSet[Coord]) -> bool:
        return any(u in region for v in mirror.vertices() for u in self.undirected[v])

    def useful(self, walls: Walls, region: FrozenSet[Coord]) -> Tuple[Mirror, ...]:
        return tuple(m for m in self.mirrors if m not in walls and any(v in region for v in m.vertices()))

    # -- stations -------------------------------------------------------------

    def watched_from(self, station: Coord, lines: Sequence[Mirror]) -> FrozenSet[Coord]:
        return frozenset([station, *(reflect_across(m, station) for m in lines)])

    def station_plan(self, walls: Walls, region: FrozenSet[Coord]) -> Optional[StationPlan]:
        """Fewest stations leaving the robber an acyclic region; None when no style works"""
        key = (walls, min(region))
        if key not in self._plans:
            lines = self.useful(walls, region)
            best: Optional[StationPlan] = None
            for scheme in (DiagClass.ANTI_DIAG, DiagClass.MAIN_DIAG):
                for styles in style_vectors(self.strips):
                    plan = self._try(scheme, styles, lines, region)
                    if plan is not None and (best is None or len(plan.stations) < len(best.stations)):
                        best = plan
            self._plans[key] = best
            if best is not None:
                logger.debug(f"🧭 {len(walls)} walls, {len(region)} vertices: {len(best.stations)} stations "
                             f"({best.scheme.value}, styles {best.styles})")
        return self._plans[key]

    def _try(self, scheme: DiagClass, styles: Styles, lines: Sequence[Mirror],
             region: FrozenSet[Coord]) -> Optional[StationPlan]:
        types = self.scheme_types[scheme]
        sealed = tuple(cid for cid, m in self.cut_lines.items() if m.diag_class is scheme
                       and self.confluxes[cid].type == types[styles[self.strip_of(cid)] % len(types)])
        need = frozenset(v for cid in sealed for v in self.entries[cid] if v in region)
        stations = self._cover(need, lines)
        watched = frozenset().union(*(self.watched_from(s, lines) for s in stations)) & region
        if not nx.is_directed_acyclic_graph(self.arcs.subgraph(region - watched)):
            return None
        return StationPlan(scheme, styles, tuple(sorted(stations)), tuple(lines), sealed, watched)

    def _cover(self, need: FrozenSet[Coord], lines: Sequence[Mirror]) -> List[Coord]:
        """Greedy set cover of need; reflections are involutions, so every candidate reaches need"""
        reach: Dict[Coord, FrozenSet[Coord]] = {}
        for v in need:
            for s in self.watched_from(v, lines):
                if s not in reach:
                    reach[s] = self.watched_from(s, lines) & need
        uncovered = set(need)
        chosen: List[Coord] = []
        while uncovered:
            best = min(reach, key=lambda c: (-len(reach[c] & uncovered), c))
            chosen.append(best)
            uncovered -= reach[best]
        for s in list(reversed(chosen)):
            others = set().union(*(reach[o] for o in chosen if o != s))
            if reach[s] <= others:
                chosen.remove(s)
        return chosen

    def seals_hold(self, plan: StationPlan, cops: Sequence[Coord]) -> bool:
        """Every sealed conflux has its main corners under a cop or under a cop's reflection"""
        watched = set(cops) | {reflect_across(m, c) for c in cops for m in plan.lines}
        sealed = [self.confluxes[cid] for cid in plan.sealed]
        left = [k for cid, k in self.confluxes.items() if cid not in plan.sealed]
        return exits_covered(left, sealed, list(watched))


class GuardSlot(NamedTuple):
    cop: int
    mirror: Mirror


class HuntMemory(NamedTuple):
    before: Coord
    roles: FrozenRoles
    guards: Tuple[GuardSlot, ...]
    phase: HuntPhase


def station_role(v: Coord) -> str:
    return f"{STATION}:{v.x},{v.y}"


def station_of(role: str) -> Optional[Coord]:
    if not role.startswith(STATION):
        return None
    x, y = role.split(":")[1].split(",")
    return Coord(int(x), int(y))


def phase_of(guards: Sequence[GuardSlot]) -> HuntPhase:
    if not guards:
        return HuntPhase.HUNTING
    counts = Counter(g.mirror.diag_class for g in guards)
    if all(counts[c] >= 2 for c in DiagClass):
        return HuntPhase.FINAL
    return HuntPhase.SHRINKING


class ShadowHuntController(Controller):
    def __init__(self, grid: OrientedGrid, goal: HuntGoal, cops: int, name: str):
        super().__init__(grid)
        self.grid = grid
        self.goal = goal
        self.count = cops
        self.name = name
        self.plan = HuntPlan.build(grid, name)
        self.paths = shortest_paths(grid.to_digraph())
        self.chaser = cops - 1
        self._guards: Dict[int, ShadowGuard] = {}

        whole = self.plan.region(frozenset(), grid.coord(0, 0))
        opening = self.plan.station_plan(frozenset(), whole)
        if opening is None:
            raise StrategyRefusal(f"{name}: no station layout leaves {grid.descriptor} acyclic")
        if len(opening.stations) + 1 > cops:
            raise StrategyRefusal(f"{name}: {len(opening.stations)} stations and a chaser need "
                                  f"{len(opening.stations) + 1} cops, only {cops} given")
        if not self.plan.seals_hold(opening, opening.stations):
            raise StrategyRefusal(f"{name}: stations leave a sealed conflux corner uncovered")
        self.opening = opening
        taken = set(opening.stations)
        self.base = min(v for v in grid.vertices() if v not in taken)
        logger.info(f"🎯 {name}: {len(opening.stations)} stations on {grid.descriptor}, k={self.plan.k}")

    @property
    def cop_count(self) -> int:
        return self.count

    # -- setup ----------------------------------------------------------------

    def initial_roles(self) -> FrozenRoles:
        ledger = CopLedger(self.count, budget=self.count)
        for cop, station in enumerate(self.opening.stations):
            ledger.assign(cop, CopStatus.COMMITTED, station_role(station))
        for cop in range(len(self.opening.stations), self.chaser):
            ledger.assign(cop, CopStatus.IDLE, SPARE)
        ledger.assign(self.chaser, CopStatus.CHASER, CHASER)
        return ledger.freeze()

    def place(self) -> Tuple[Coord, ...]:
        stations = self.opening.stations
        return tuple(stations) + (self.base,) * (self.count - len(stations))

    def observe_robber(self, robber: Coord) -> ControllerState:
        memory = HuntMemory(robber, self.initial_roles(), (), HuntPhase.HUNTING)
        return ControllerState(self.place(), memory)

    # -- helpers --------------------------------------------------------------

    def _guard(self, cop: int) -> ShadowGuard:
        if cop not in self._guards:
            self._guards[cop] = ShadowGuard(self.grid, cop)
        return self._guards[cop]

    def _reached(self, guards: Sequence[GuardSlot]) -> bool:
        if self.goal is HuntGoal.ONE_GUARD:
            return len(guards) >= 1
        if self.goal is HuntGoal.TWO_GUARDS:
            return any(n >= 2 for n in Counter(g.mirror.diag_class for g in guards).values())
        return False

    def _walls(self, guards: Sequence[GuardSlot]) -> Walls:
        return frozenset(g.mirror for g in guards)

    # -- the step -------------------------------------------------------------

    def step(self, state: ControllerState, robber: Coord) -> ControllerState:
        memory: HuntMemory = state.memory
        cops = state.cops
        ledger = CopLedger.thaw(memory.roles, budget=self.count)
        guards = list(memory.guards)
        moves: Dict[int, Coord] = {}

        for guard in guards:
            guard_moves, _ = self._guard(guard.cop).respond(GuardState(guard.mirror), cops, memory.before, robber)
            moves.update(guard_moves)
        if robber in moves.values():
            return self._finish(cops, moves, robber, ledger, guards)

        if not self._reached(guards):
            slot = self._new_guard(ledger, guards, cops, robber)
            if slot is not None:
                guards = self._establish(ledger, guards, slot, robber)

        if not self._reached(guards):
            walls = self._walls(guards)
            region = self.plan.region(walls, robber)
            plan = self.plan.station_plan(walls, region)
            if plan is None:
                raise InvariantViolation(f"{self.name}: no acyclic station layout behind walls "
                                         f"{sorted(str(w) for w in walls)}")
            self._assign(ledger, plan, cops)

        for record in ledger.cops:
            if record.index in moves or not record.active:
                continue
            station = station_of(record.role)
            if station is not None:
                moves[record.index] = self.paths.next_step(cops[record.index], station)
            elif record.role == CHASER:
                moves[record.index] = self.paths.next_step(cops[record.index], robber)
        return self._finish(cops, moves, robber, ledger, guards)

    def _finish(self, cops: Sequence[Coord], moves: Dict[int, Coord], robber: Coord, ledger: CopLedger,
                guards: Sequence[GuardSlot]) -> ControllerState:
        moved = list(cops)
        for cop, target in moves.items():
            moved[cop] = target
        for record in ledger.cops:
            station = station_of(record.role)
            if station is not None:
                status = CopStatus.COMMITTED if moved[record.index] == station else CopStatus.TRANSIT
                if status is not record.status:
                    ledger.assign(record.index, status, record.role)
        memory = HuntMemory(robber, ledger.freeze(), tuple(guards), phase_of(guards))
        return ControllerState(tuple(moved), memory)

    def _new_guard(self, ledger: CopLedger, guards: Sequence[GuardSlot], cops: Sequence[Coord],
                   robber: Coord) -> Optional[GuardSlot]:
        """The lowest station or spare cop standing on the robber's reflection across a useful mirror"""
        walls = self._walls(guards)
        lines = self.plan.useful(walls, self.plan.region(walls, robber))
        for record in ledger.cops:
            if record.role in (GUARD, CHASER):
                continue
            mirror = mirror_between(lines, robber, cops[record.index])
            if mirror is None:
                continue
            try:
                held = self._guard(record.index).start(cops, robber)
            except StrategyRefusal as e:
                raise InvariantViolation(f"{self.name}: reflection across {mirror} is not a shadow: {e}")
            if held.mirror != mirror:
                raise InvariantViolation(f"{self.name}: cop {record.index} mirrors {held.mirror}, not {mirror}")
            return GuardSlot(record.index, mirror)
        return None

    def _establish(self, ledger: CopLedger, guards: List[GuardSlot], slot: GuardSlot,
                   robber: Coord) -> List[GuardSlot]:
        ledger.assign(slot.cop, CopStatus.COMMITTED, GUARD, "on a shadow")
        guards = guards + [slot]
        logger.info(f"✅ {self.name}: cop {slot.cop} guards mirror {slot.mirror}")
        family = [g for g in guards if g.mirror.diag_class is slot.mirror.diag_class]
        if len(family) <= 2:
            return guards
        region = self.plan.region(self._walls(guards), robber)
        far = [g for g in family if g != slot and not self.plan.touches(g.mirror, region)]
        if not far:
            raise InvariantViolation(f"{self.name}: three {slot.mirror.diag_class.value} guards all bound the robber")
        ledger.assign(far[0].cop, CopStatus.IDLE, SPARE, "far guard released")
        logger.debug(f"{self.name}: released cop {far[0].cop} from {far[0].mirror}")
        return [g for g in guards if g != far[0]]

    def _assign(self, ledger: CopLedger, plan: StationPlan, cops: Sequence[Coord]):
        """Keep cops on stations that survive; send the nearest spare cops to the rest"""
        targets = set(plan.stations)
        held = set()
        for record in ledger.cops:
            station = station_of(record.role)
            if station is None:
                continue
            if station in targets and station not in held:
                held.add(station)
            else:
                ledger.assign(record.index, CopStatus.IDLE, SPARE, "station dropped")
        spares = [c.index for c in ledger.cops if c.role == SPARE]
        missing = sorted(targets - held)
        if len(missing) > len(spares):
            raise InvariantViolation(f"{self.name}: {len(missing)} stations to fill, {len(spares)} spare cops")
        for station in missing:
            cop = min(spares, key=lambda c: (self._distance(cops[c], station), c))
            spares.remove(cop)
            ledger.assign(cop, CopStatus.TRANSIT, station_role(station))

    def _distance(self, source: Coord, target: Coord) -> int:
        d = self.paths.distance(source, target)
        return self.grid.n * self.grid.n if d is None else d

    # -- reporting ------------------------------------------------------------

    def is_goal(self, state: ControllerState) -> bool:
        return self._reached(state.memory.guards)

    def annotate(self, state: ControllerState) -> Dict[str, Any]:
        memory: HuntMemory = state.memory
        ledger = CopLedger.thaw(memory.roles, budget=self.count)
        notes: Dict[str, Any] = {
            "phase": memory.phase.value,
            "guards": [g.cop for g in memory.guards],
            "mirrors": [str(g.mirror) for g in memory.guards],
            "stations": sum(1 for c in ledger.cops if station_of(c.role) is not None),
            "ledger": ledger.snapshot(),
        }
        if not memory.guards:
            notes["seals_hold"] = self.plan.seals_hold(self.opening, state.cops)
        for first, second in itertools.combinations(memory.guards, 2):
            if first.mirror.diag_class is second.mirror.diag_class:
                notes["mirror_distance"] = mirror_distance(first.mirror, second.mirror, self.plan.k)
        return notes


def shadow_capture_7(grid: OrientedGrid) -> ShadowHuntController:
    return ShadowHuntController(grid, HuntGoal.ONE_GUARD, 7, "shadow7")


def double_shadow_13(grid: OrientedGrid) -> ShadowHuntController:
    return ShadowHuntController(grid, HuntGoal.TWO_GUARDS, 13, "double13")


def kregular_13(grid: OrientedGrid) -> ShadowHuntController:
    return ShadowHuntController(grid, HuntGoal.CAPTURE, 13, "kregular13")
