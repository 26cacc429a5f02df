"""
Exhaustive verification of a controller against every robber play.

Nodes are (controller state, robber) at the cops' turn. From a node the
controller moves; if a cop lands on the robber, or the controller reports its
goal, the branch is won. Otherwise every robber reply either walks onto a cop
or leads to a child node. A child already on the DFS stack closes a loop the
robber can repeat forever; that loop is returned as a scripted witness.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from engine.controller import Controller, ControllerState
from engine.game import check_cop_moves
from errors import StrategyRefusal
from grid_model.digraph import Vertex
from settings import get_settings

logger = logging.getLogger(__name__)

_GRAY, _BLACK = 1, 2


class VerdictKind(str, Enum):
    CAPTURED_FOR_ALL = "captured-for-all"
    ESCAPE = "escape"
    INCONCLUSIVE = "inconclusive"


@dataclass
class EscapeWitness:
    start: Vertex
    moves: List[Vertex]
    cycle_from: int


@dataclass
class Verdict:
    kind: VerdictKind
    states: int = 0
    max_capture_time: Optional[int] = None
    witness: Optional[EscapeWitness] = None
    goals: int = 0
    seconds: float = 0.0
    statistics: Dict[str, Any] = field(default_factory=dict)

    @property
    def captured_for_all(self) -> bool:
        return self.kind is VerdictKind.CAPTURED_FOR_ALL

    def __str__(self) -> str:
        if self.kind is VerdictKind.CAPTURED_FOR_ALL:
            return f"Captured-for-all ({self.states} states, worst case {self.max_capture_time} rounds)"
        if self.kind is VerdictKind.ESCAPE:
            return f"Escape (start {self.witness.start}, {len(self.witness.moves)} scripted moves)"
        return f"Inconclusive after {self.states} states"


Node = Tuple[ControllerState, Vertex]


def verify_controller(board: Any, controller: Controller, robber_starts: Optional[Iterable[Vertex]] = None,
                      state_cap: Optional[int] = None) -> Verdict:
    digraph = board.to_digraph()
    state_cap = state_cap if state_cap is not None else get_settings().verify_state_cap
    if robber_starts is None:
        robber_starts = controller.robber_starts()
    starts = list(robber_starts) if robber_starts is not None else list(digraph.vertices)
    if not starts:
        raise StrategyRefusal(f"{controller.name}: no robber start to verify on {digraph.name}")
    began = time.perf_counter()

    color: Dict[Node, int] = {}
    depth: Dict[Node, int] = {}
    goals = 0
    placed = tuple(controller.place())

    def expand(node: Node) -> List[Node]:
        nonlocal goals
        state, robber = node
        moved = controller.step(state, robber)
        check_cop_moves(digraph, state.cops, tuple(moved.cops), 0)
        moved = ControllerState(tuple(moved.cops), moved.memory)
        if robber in moved.cops:
            return []
        if controller.is_goal(moved):
            goals += 1
            return []
        result = []
        for reply in digraph.moves(robber):
            if reply not in moved.cops:
                result.append((moved, reply))
        return result

    for start in starts:
        if start in placed:
            continue
        root: Node = (controller.observe_robber(start), start)
        if controller.is_goal(root[0]) or root in color:
            continue

        color[root] = _GRAY
        stack: List[Tuple[Node, List[Node], int]] = [(root, expand(root), 0)]
        while stack:
            node, children, i = stack[-1]
            if i == len(children):
                stack.pop()
                color[node] = _BLACK
                depth[node] = 1 + max((depth[c] for c in children), default=0)
                continue
            stack[-1] = (node, children, i + 1)
            child = children[i]
            mark = color.get(child)
            if mark == _BLACK:
                continue
            if mark == _GRAY:
                witness = _witness([entry[0] for entry in stack], child)
                verdict = Verdict(VerdictKind.ESCAPE, states=len(color), witness=witness, goals=goals,
                                  seconds=time.perf_counter() - began)
                logger.info(f"❌ {controller.name}: {verdict}")
                return verdict
            if len(color) >= state_cap:
                stats = {"states": len(color), "stack_depth": len(stack), "cap": state_cap}
                verdict = Verdict(VerdictKind.INCONCLUSIVE, states=len(color), goals=goals,
                                  seconds=time.perf_counter() - began, statistics=stats)
                logger.warning(f"⚠️ {controller.name}: {verdict}")
                return verdict
            color[child] = _GRAY
            grandchildren = expand(child)
            stack.append((child, grandchildren, 0))

    worst = max(depth.values(), default=0)
    verdict = Verdict(VerdictKind.CAPTURED_FOR_ALL, states=len(color), max_capture_time=worst, goals=goals,
                      seconds=time.perf_counter() - began)
    logger.info(f"✅ {controller.name}: {verdict}")
    return verdict


def _witness(path: List[Node], repeated: Node) -> EscapeWitness:
    robbers = [node[1] for node in path]
    i = path.index(repeated)
    if i >= 1:
        return EscapeWitness(start=robbers[0], moves=robbers[1:], cycle_from=i - 1)
    return EscapeWitness(start=robbers[0], moves=robbers[1:] + [robbers[0]], cycle_from=0)
