"""
Strategies by id, as the CLI and the tests name them.

Single-fragment strategies (trap1, trap2, trap3) pick the first maximal
conflux that suits them and streamtrap the widest stream with an inner line.
Each puts its cops in position and only accepts robber starts the fragment
is meant for.
"""
import logging
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from decomposition.confluxes import (Conflux, guard_posts, main_corner_a, main_corner_b, maximal_confluxes,
                                     terminal_corner)
from decomposition.streams import Axis, Stream, maximal_streams
from engine.controller import Controller
from errors import StrategyRefusal
from grid_model.grid import Coord, OrientedGrid
from oracle_service import CopNumberOracle, OracleStrategyController
from strategies.base import FragmentController
from strategies.general import GeneralController
from strategies.hunt import double_shadow_13, kregular_13, shadow_capture_7
from strategies.paddles import PaddleController
from strategies.simple import ChaserController, IdleController
from strategies.stream_trap import StreamTrap
from strategies.traps import Trap1, Trap2, Trap3, entry_frame

logger = logging.getLogger(__name__)

ORACLE_K_MAX = 3


class StrategyEntry(NamedTuple):
    id: str
    description: str
    builder: Callable[[Any], Controller]
    grid_only: bool = True


def _require_grid(board: Any, strategy_id: str) -> OrientedGrid:
    if not isinstance(board, OrientedGrid):
        raise StrategyRefusal(f"{strategy_id}: needs an oriented grid, got {type(board).__name__}")
    return board


def _confluxes(grid: OrientedGrid, name: str, thick: bool = False) -> List[Conflux]:
    found = [k for k in maximal_confluxes(grid)
             if not k.v_stream.spans_grid and not k.h_stream.spans_grid and (not thick or min(k.a, k.b) >= 2)]
    if not found:
        raise StrategyRefusal(f"{name}: no suitable conflux on {grid.descriptor}")
    return found


def _outside(grid: OrientedGrid, k: Conflux) -> Coord:
    """A chaser start away from k"""
    return k.from_local(k.a + grid.n // 2, k.b + grid.n // 2)


def trap1_controller(grid: OrientedGrid, conflux: Optional[Conflux] = None) -> FragmentController:
    k = conflux or _confluxes(grid, Trap1.name)[0]
    placement = (main_corner_a(k), main_corner_b(k))
    domain = [v for v in k.vertices() if entry_frame(k, v) is not None and v not in placement]
    return FragmentController(grid, Trap1(grid, k, (0, 1)), placement, chaser_start=_outside(grid, k),
                              domain=domain, goal_on_confinement=True)


def trap2_controller(grid: OrientedGrid, conflux: Optional[Conflux] = None) -> FragmentController:
    k = conflux or _confluxes(grid, Trap2.name, thick=True)[0]
    placement = (main_corner_a(k), main_corner_b(k), terminal_corner(k))
    domain = [v for v in k.vertices() if v not in placement]
    return FragmentController(grid, Trap2(grid, k, (0, 1), 2), placement, chaser_start=_outside(grid, k),
                              domain=domain, goal_on_confinement=True)


def trap3_controller(grid: OrientedGrid, conflux: Optional[Conflux] = None) -> FragmentController:
    k = conflux or _confluxes(grid, Trap3.name)[0]
    posts = guard_posts(k)
    placement = (posts.vertical, posts.horizontal, posts.terminal or terminal_corner(k))
    domain = [v for v in k.vertices() if v not in placement]
    return FragmentController(grid, Trap3(grid, k, 0, 1, 2), placement, chaser_start=_outside(grid, k),
                              domain=domain, goal_on_confinement=True)


def stream_trap_controller(grid: OrientedGrid, stream: Optional[Stream] = None) -> FragmentController:
    if stream is None:
        streams = sorted((s for s in maximal_streams(grid, Axis.HORIZONTAL) if not s.spans_grid),
                         key=lambda s: -s.width)
        if not streams:
            raise StrategyRefusal(f"{StreamTrap.name}: every horizontal stream of {grid.descriptor} spans the grid")
        stream = streams[0]
    if stream.width < 3:
        raise StrategyRefusal(f"{StreamTrap.name}: {stream} has no line strictly between its boundary lines")
    placement = (stream.vertex(stream.first_line, 0), stream.vertex(stream.last_line, 0),
                 stream.vertex(stream.first_line, grid.n // 2))
    fragment = StreamTrap(grid, stream, (0, 1), 2)
    domain = [v for v in stream_interior(stream) if v not in placement and _holds(fragment, placement, v)]
    chaser = stream.vertex(stream.last_line + 1 + grid.n // 2, grid.n // 2)
    return FragmentController(grid, fragment, placement, chaser_start=chaser, domain=domain)


def stream_interior(stream: Stream) -> List[Coord]:
    return [stream.vertex(line, t) for line in stream.lines[1:-1] for t in range(stream.n)]


def _holds(fragment: StreamTrap, placement: Sequence[Coord], robber: Coord) -> bool:
    """The riders are already close enough to hold a robber starting at robber"""
    try:
        fragment.start(placement, robber)
    except StrategyRefusal:
        return False
    return True


def oracle_controller(board: Any, k_max: int = ORACLE_K_MAX) -> OracleStrategyController:
    digraph = board.to_digraph()
    oracle = CopNumberOracle()
    for k in range(1, k_max + 1):
        result = oracle.solve(digraph, k)
        if result.cops_win:
            return OracleStrategyController(result)
    raise StrategyRefusal(f"oracle: more than {k_max} cops needed on {digraph.name}")


REGISTRY: Dict[str, StrategyEntry] = {entry.id: entry for entry in [
    StrategyEntry("trap1", "two corner cops on a conflux, robber confined to a stream", trap1_controller),
    StrategyEntry("trap2", "corner and terminal cops on a conflux", trap2_controller),
    StrategyEntry("trap3", "three cops heading for the guard posts of a conflux", trap3_controller),
    StrategyEntry("streamtrap", "two riders and an interceptor inside a stream", stream_trap_controller),
    StrategyEntry("chaser1", "one cop on a shortest path to the robber",
                  lambda board: ChaserController(board, 1), grid_only=False),
    StrategyEntry("chaser2", "two cops on shortest paths to the robber",
                  lambda board: ChaserController(board, 2), grid_only=False),
    StrategyEntry("none", "no cops at all", lambda board: IdleController(board, 0), grid_only=False),
    StrategyEntry("idle1", "one cop that never moves", lambda board: IdleController(board, 1), grid_only=False),
    StrategyEntry("shadow7", "seven cops until one guards a diagonal shadow", shadow_capture_7),
    StrategyEntry("double13", "thirteen cops until two guards hold parallel mirrors", double_shadow_13),
    StrategyEntry("kregular13", "thirteen cops that capture on k-regular grids", kregular_13),
    StrategyEntry("paddle", "one paddle guard on the widest stream, with a chaser", PaddleController),
    StrategyEntry("general319", "paddle and conflux guards, at most 319 cops", GeneralController),
    StrategyEntry("oracle", "the oracle's own strategy with the fewest winning cops", oracle_controller,
                  grid_only=False),
]}


def strategy_ids() -> List[str]:
    return list(REGISTRY)


def build_controller(strategy_id: str, board: Any) -> Controller:
    entry = REGISTRY.get(strategy_id)
    if entry is None:
        raise KeyError(f"unknown strategy '{strategy_id}'; choose from {', '.join(REGISTRY)}")
    if entry.grid_only:
        board = _require_grid(board, strategy_id)
    controller = entry.builder(board)
    logger.debug(f"Built {controller!r}")
    return controller
