#!/usr/bin/env python3
"""
Tests for the game loop, robber policies, traces, the verifier and lifting
"""
import pytest

from engine.controller import ControllerState, PositionalController
from engine.game import play, replay_trace
from engine.lifting import lift_strategy
from engine.paths import shortest_paths
from engine.policies import GreedyEvade, RandomRobber, ScriptedRobber, StationaryRobber
from engine.state import OutcomeKind, Trace
from engine.trace_io import load_trace, save_trace
from engine.verifier import VerdictKind, verify_controller
from errors import IllegalMoveError, InvariantViolation, LiftConsistencyError
from grid_model.covering import covering_projection
from grid_model.grid import Coord, uniform_grid
from grid_model.quadrangulation import make_quadrangulation
from oracle_service import CopNumberOracle, OracleStrategyController
from strategies.simple import ChaserController, IdleController


class Teleporter(PositionalController):
    """Jumps its cop straight onto the robber"""

    name = "teleporter"

    @property
    def cop_count(self) -> int:
        return 1

    def place(self):
        return (Coord(0, 0),)

    def respond(self, cops, robber):
        return (robber,)


def test_shortest_paths(grid_8_2):
    paths = shortest_paths(grid_8_2.to_digraph())
    assert paths.distance(Coord(0, 0), Coord(0, 0)) == 0
    assert paths.distance(Coord(0, 0), Coord(1, 1)) == 2
    route = paths.path(Coord(0, 0), Coord(5, 3))
    assert route[-1] == Coord(5, 3)
    assert len(route) == paths.distance(Coord(0, 0), Coord(5, 3))
    walk = [Coord(0, 0)] + route
    assert all(grid_8_2.is_move(a, b) for a, b in zip(walk, walk[1:]))
    assert paths.undirected_distance(Coord(1, 1), Coord(0, 0)) == 2


def test_chaser_catches_a_stationary_robber(grid_8_2):
    trace = play(grid_8_2, ChaserController(grid_8_2, 1), StationaryRobber(grid_8_2, Coord(5, 6)), max_steps=50)
    assert trace.captured
    assert trace.steps[-1].robber == Coord(5, 6)
    assert Coord(5, 6) in trace.steps[-1].cops
    print(f"✅ captured at step {trace.outcome.step}")


def test_no_cops_gives_a_noncapture_cycle(uniform_5):
    trace = play(uniform_5, IdleController(uniform_5, 0), GreedyEvade(uniform_5), max_steps=20)
    assert trace.outcome.kind is OutcomeKind.NONCAPTURE
    assert trace.outcome.cycle_start == 0


def test_greedy_robber_keeps_the_farthest_vertex(cycle_5):
    """Nearest-cop distance decides, the smallest vertex breaks ties"""
    robber = GreedyEvade(cycle_5)
    assert robber.start((0,)) == 2
    assert robber.move((0,), 2) == 2
    assert robber.move((0,), 4) == 4
    assert robber.move((1,), 2) == 3
    trace = play(cycle_5, IdleController(cycle_5, 1), robber, max_steps=40)
    assert not trace.captured


def test_random_robber_runs_out_the_budget(cycle_4):
    trace = play(cycle_4, IdleController(cycle_4, 0), RandomRobber(cycle_4, seed=11), max_steps=30)
    assert trace.outcome.kind is OutcomeKind.ESCAPED
    assert trace.outcome.step == 30
    assert len(trace.steps) == 31


def test_illegal_cop_move_is_rejected(uniform_5):
    with pytest.raises(IllegalMoveError):
        play(uniform_5, Teleporter(uniform_5), StationaryRobber(uniform_5, Coord(3, 3)), max_steps=5)


def test_illegal_robber_move_is_rejected(uniform_5):
    robber = ScriptedRobber(uniform_5, Coord(3, 3), [Coord(1, 1)])
    with pytest.raises(InvariantViolation):
        play(uniform_5, IdleController(uniform_5, 0), robber, max_steps=5)


def test_max_steps_must_be_positive(uniform_5):
    with pytest.raises(ValueError):
        play(uniform_5, IdleController(uniform_5, 0), StationaryRobber(uniform_5), max_steps=0)


def test_trace_file_round_trip(grid_8_2, tmp_path):
    """Coordinates reload as tuples that compare equal to the original Coords"""
    trace = play(grid_8_2, ChaserController(grid_8_2, 2), StationaryRobber(grid_8_2, Coord(5, 6)), max_steps=50)
    path = save_trace(trace, tmp_path / "traces" / "chase.json")
    loaded = load_trace(path)
    assert loaded.outcome == trace.outcome
    assert loaded.robber_walk == trace.robber_walk
    assert [tuple(c) for c in loaded.steps[-1].cops] == list(trace.steps[-1].cops)


def test_unknown_schema_version_is_refused():
    with pytest.raises(ValueError):
        Trace(schema_version=2, board="b", controller="c", robber_policy="r", max_steps=1)


def test_replay_reproduces_a_trace(grid_8_2):
    controller = ChaserController(grid_8_2, 1)
    trace = play(grid_8_2, controller, RandomRobber(grid_8_2, seed=5), max_steps=40)
    replayed = replay_trace(grid_8_2, controller, trace)
    assert replayed.robber_walk[:len(trace.steps)] == trace.robber_walk


def test_verifier_finds_the_escape_on_a_cycle(cycle_4):
    """One cop never gains on a robber running round a directed cycle"""
    controller = ChaserController(cycle_4, 1)
    verdict = verify_controller(cycle_4, controller)
    assert verdict.kind is VerdictKind.ESCAPE
    witness = verdict.witness
    assert (witness.start, witness.moves, witness.cycle_from) == (2, [3, 0, 1, 2], 0)

    robber = ScriptedRobber(cycle_4, witness.start, witness.moves, witness.cycle_from)
    trace = play(cycle_4, controller, robber, max_steps=100)
    assert trace.outcome.kind is OutcomeKind.NONCAPTURE


def test_verifier_respects_the_state_cap(cycle_4):
    verdict = verify_controller(cycle_4, ChaserController(cycle_4, 1), state_cap=1)
    assert verdict.kind is VerdictKind.INCONCLUSIVE
    assert verdict.statistics["cap"] == 1


def test_verifier_with_no_cops():
    """A robber that simply stays put is already an escape"""
    board = uniform_grid(3)
    controller = IdleController(board, 0)
    verdict = verify_controller(board, controller, robber_starts=[Coord(1, 1)])
    assert verdict.kind is VerdictKind.ESCAPE
    assert verdict.witness.start == Coord(1, 1)


def test_lifted_chaser_catches_on_the_quotient():
    q = make_quadrangulation(3, 3, 1)
    cover = covering_projection(q)
    lifted = lift_strategy(cover, ChaserController(cover.source, 1))
    assert lifted.cop_count == 1
    trace = play(q, lifted, StationaryRobber(q, (2, 1)), max_steps=60)
    assert trace.captured
    assert "lifted_robber" in trace.steps[-1].annotations


def test_lift_needs_the_cover_source(grid_8_2):
    cover = covering_projection(make_quadrangulation(3, 3, 1))
    with pytest.raises(LiftConsistencyError):
        lift_strategy(cover, ChaserController(grid_8_2, 1))


@pytest.mark.parametrize("r,s,t", [(2, 2, 1), (3, 2, 2)])
def test_lifted_oracle_strategy_captures_on_the_quotient(r, s, t):
    """A solved strategy on the cover plays on its own digraph and still lifts"""
    q = make_quadrangulation(r, s, t)
    cover = covering_projection(q)
    oracle = CopNumberOracle()
    k = oracle.cop_number(cover.source.to_digraph(), 4)
    assert k is not None
    lifted = lift_strategy(cover, OracleStrategyController(oracle.solve(cover.source.to_digraph(), k)))
    verdict = verify_controller(q, lifted)
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL
    quotient_k = oracle.cop_number(q.to_digraph(), k)
    assert quotient_k is not None and quotient_k <= k
    print(f"✅ c({q.descriptor}) = {quotient_k} <= {k}")


def test_controller_state_is_hashable():
    state = ControllerState((Coord(0, 0), Coord(1, 1)), ("memory", 3))
    assert {state: 1}[ControllerState((Coord(0, 0), Coord(1, 1)), ("memory", 3))] == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
