"""
The game loop: cops place, the robber places, then rounds of a cop half-move
followed by a robber half-move, with capture checked after each.
"""
import logging
from typing import Any, Dict, Hashable, Optional, Tuple

from engine.controller import Controller, ControllerState
from engine.policies import RobberPolicy, ScriptedRobber
from engine.state import Outcome, Trace, TraceStep
from errors import IllegalMoveError, InvariantViolation
from grid_model.digraph import Digraph, Vertex
from settings import get_settings

logger = logging.getLogger(__name__)


def check_cop_moves(digraph: Digraph, before: Tuple[Vertex, ...], after: Tuple[Vertex, ...], step: int) -> None:
    if len(before) != len(after):
        raise IllegalMoveError(f"controller returned {len(after)} cops instead of {len(before)}", -1, step)
    for i, (u, v) in enumerate(zip(before, after)):
        if v not in digraph:
            raise IllegalMoveError(f"{v!r} is not a vertex", i, step)
        if not digraph.is_move(u, v):
            raise IllegalMoveError(f"{u!r} -> {v!r} is neither a stay nor an arc", i, step)


def play(board: Any, controller: Controller, policy: RobberPolicy, max_steps: Optional[int] = None) -> Trace:
    digraph = board.to_digraph()
    max_steps = max_steps if max_steps is not None else get_settings().max_steps
    if max_steps < 1:
        raise ValueError(f"max_steps must be at least 1, got {max_steps}")

    trace = Trace(board=getattr(board, "descriptor", digraph.name), controller=controller.name,
                  robber_policy=policy.name, max_steps=max_steps)

    placed = tuple(controller.place())
    for i, c in enumerate(placed):
        if c not in digraph:
            raise IllegalMoveError(f"placement {c!r} is not a vertex", i, 0)
    domain = controller.robber_starts()
    if domain is not None:
        policy.restrict_starts(domain)
    robber = policy.start(placed)
    if robber not in digraph:
        raise InvariantViolation(f"robber start {robber!r} is not a vertex")
    state = controller.observe_robber(robber)
    if tuple(state.cops) != placed:
        raise IllegalMoveError("observe_robber moved the cops", -1, 0)
    trace.steps.append(_record(0, state, robber, controller))
    logger.info(f"🎲 {controller.name} vs {policy.name} on {trace.board}, budget {max_steps}")

    if robber in state.cops:
        return _finish(trace, Outcome.captured(0))

    seen: Dict[Hashable, int] = {}
    detect = controller.step_invariant and policy.state_key() is not None
    if detect:
        seen[(state, robber, policy.state_key())] = 0

    for step in range(1, max_steps + 1):
        new_state = controller.step(state, robber)
        check_cop_moves(digraph, state.cops, tuple(new_state.cops), step)
        state = ControllerState(tuple(new_state.cops), new_state.memory)
        if robber in state.cops:
            trace.steps.append(_record(step, state, robber, controller))
            return _finish(trace, Outcome.captured(step))

        target = policy.move(state.cops, robber)
        if not digraph.is_move(robber, target):
            raise InvariantViolation(f"step {step}: robber move {robber!r} -> {target!r} is illegal")
        robber = target
        trace.steps.append(_record(step, state, robber, controller))
        if robber in state.cops:
            return _finish(trace, Outcome.captured(step))

        if detect:
            key = (state, robber, policy.state_key())
            if key in seen:
                return _finish(trace, Outcome.noncapture(step, seen[key]))
            seen[key] = step

    return _finish(trace, Outcome.escaped(max_steps))


def _record(step: int, state: ControllerState, robber: Vertex, controller: Controller) -> TraceStep:
    return TraceStep(step=step, cops=list(state.cops), robber=robber, annotations=controller.annotate(state))


def _finish(trace: Trace, outcome: Outcome) -> Trace:
    trace.outcome = outcome
    icon = "✅" if outcome.kind.value == "captured" else "⚠️"
    logger.info(f"{icon} {trace.controller} vs {trace.robber_policy}: {outcome}")
    return trace


def replay_trace(board: Any, controller: Controller, trace: Trace) -> Trace:
    """Re-run a trace with its robber walk scripted; positions and any capture must be reproduced"""
    walk = trace.robber_walk
    if not walk:
        raise InvariantViolation("trace has no steps to replay")
    policy = ScriptedRobber(board, walk[0], walk[1:])
    replayed = play(board, controller, policy, max(trace.steps[-1].step, 1))

    for original, again in zip(trace.steps, replayed.steps):
        if tuple(original.cops) != tuple(again.cops) or original.robber != again.robber:
            raise InvariantViolation(f"replay diverged at step {original.step}")
    if trace.captured != replayed.captured or (trace.captured and replayed.outcome.step != trace.outcome.step):
        raise InvariantViolation(f"replay ended {replayed.outcome}, trace says {trace.outcome}")
    return replayed
