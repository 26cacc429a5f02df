#!/usr/bin/env python3
"""
Tests for the cop strategies: registry, conflux traps, hunts, paddles and the
general composite
"""
from collections import Counter

import networkx as nx
import numpy as np
import pytest

from cop_ledger import CopLedger, CopStatus
from decomposition.confluxes import maximal_confluxes
from decomposition.diagonals import DiagClass
from decomposition.streams import Axis, Stream, maximal_streams
from engine.game import play
from engine.policies import GreedyEvade, StationaryRobber
from engine.state import OutcomeKind
from engine.verifier import VerdictKind, verify_controller
from errors import DecompositionError, InvariantViolation, StrategyRefusal
from grid_model.grid import Coord, kregular_grid, random_grid, uniform_grid
from strategies.general import (GeneralController, StreamGuardSlot, Territory, axis_run, bounding_guards, stream_role,
                                territory_of)
from strategies.hunt import HuntPlan, double_shadow_13, kregular_13, shadow_capture_7
from strategies.paddles import (PaddleController, PaddleFrame, PaddlePairMachine, PairState, minimal_paddle_n,
                                paddle_paths_ok, reform_bound, reform_path, widest_streams)
from strategies.registry import (REGISTRY, build_controller, strategy_ids, trap1_controller, trap2_controller,
                                 trap3_controller)


# -- registry -----------------------------------------------------------------

def test_registry_ids():
    expected = {"trap1", "trap2", "trap3", "streamtrap", "chaser1", "chaser2", "none", "idle1",
                "shadow7", "double13", "kregular13", "paddle", "general319", "oracle"}
    assert expected <= set(strategy_ids())
    assert all(entry.description for entry in REGISTRY.values())


def test_unknown_strategy(grid_8_2):
    with pytest.raises(KeyError):
        build_controller("teleport", grid_8_2)


def test_grid_strategies_refuse_other_boards(cycle_4):
    with pytest.raises(StrategyRefusal):
        build_controller("trap1", cycle_4)
    assert build_controller("none", cycle_4).cop_count == 0
    assert build_controller("chaser2", cycle_4).cop_count == 2


def test_single_fragment_cop_counts(grid_8_2):
    """Each fragment's own cops plus one chaser"""
    assert build_controller("trap1", grid_8_2).cop_count == 3
    assert build_controller("trap2", grid_8_2).cop_count == 4
    assert build_controller("trap3", grid_8_2).cop_count == 4
    assert build_controller("streamtrap", kregular_grid(12, 3)).cop_count == 4


def test_streamtrap_needs_an_inner_line(grid_8_2):
    with pytest.raises(StrategyRefusal):
        build_controller("streamtrap", grid_8_2)
    with pytest.raises(StrategyRefusal):
        verify_controller(grid_8_2, build_controller("trap1", grid_8_2), robber_starts=[])


def test_streamtrap_captures_from_its_inner_line():
    grid = kregular_grid(12, 3)
    controller = build_controller("streamtrap", grid)
    stream = controller.fragment.stream
    starts = list(controller.robber_starts())
    assert starts and all(stream.line_of(v) == stream.lines[1] for v in starts)
    verdict = verify_controller(grid, controller)
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL
    assert verdict.states > 0
    print(f"✅ streamtrap: {verdict}")


@pytest.mark.parametrize("builder", [trap1_controller, trap2_controller, trap3_controller])
def test_traps_on_every_conflux(grid_8_2, builder):
    """Capture or confinement from every start each trap accepts, on all sixteen confluxes"""
    confluxes = maximal_confluxes(grid_8_2)
    assert len(confluxes) == 16
    for k in confluxes:
        controller = builder(grid_8_2, k)
        verdict = verify_controller(grid_8_2, controller)
        assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL, f"{controller.name} on {k}: {verdict}"
        assert verdict.states > 0


def test_traps_need_a_bounded_conflux(uniform_5):
    for strategy in ("trap1", "trap2", "trap3", "streamtrap"):
        with pytest.raises(StrategyRefusal):
            build_controller(strategy, uniform_5)


def test_trap1_captures_for_all(grid_8_2):
    """The corner cops hold the entry corner and the chaser walks in"""
    controller = build_controller("trap1", grid_8_2)
    assert list(controller.robber_starts()) == [Coord(0, 0)]
    verdict = verify_controller(grid_8_2, controller)
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL
    print(f"✅ trap1: {verdict}")


def test_oracle_strategy_from_the_registry(cycle_5):
    controller = build_controller("oracle", cycle_5)
    assert controller.name == "oracle2"
    assert verify_controller(cycle_5, controller).captured_for_all


# -- hunts --------------------------------------------------------------------

def test_hunt_plan_refusals(mixed_6):
    with pytest.raises(StrategyRefusal) as excinfo:
        HuntPlan.build(kregular_grid(4, 2))
    assert excinfo.value.minimal_n == 8
    with pytest.raises(StrategyRefusal):
        HuntPlan.build(mixed_6)
    with pytest.raises(StrategyRefusal):
        HuntPlan.build(kregular_grid(8, 1))


def test_every_conflux_is_cut_by_one_universal_mirror(grid_12_3):
    plan = HuntPlan.build(grid_12_3)
    assert plan.strips == 2
    assert len(plan.mirrors) == 4
    classes = Counter(m.diag_class for m in plan.cut_lines.values())
    assert classes[DiagClass.MAIN_DIAG] == classes[DiagClass.ANTI_DIAG] == 8
    assert {plan.strip_of(cid) for cid in plan.confluxes} == {0, 1}


@pytest.mark.parametrize("n,k", [(8, 2), (12, 2), (12, 3)])
def test_opening_stations_seal_an_acyclic_region(n, k):
    controller = kregular_13(kregular_grid(n, k))
    plan, opening = controller.plan, controller.opening
    assert opening.sealed
    for cid in opening.sealed:
        assert set(plan.entries[cid]) <= opening.watched
    whole = frozenset(controller.grid.vertices())
    assert nx.is_directed_acyclic_graph(plan.arcs.subgraph(whole - opening.watched))
    assert len(opening.stations) + 1 <= controller.cop_count
    print(f"✅ kregular({n},{k}): {len(opening.stations)} stations")


def test_seals_hold_only_with_cops_in_place(grid_8_2):
    controller = kregular_13(grid_8_2)
    assert controller.plan.seals_hold(controller.opening, controller.place())
    assert not controller.plan.seals_hold(controller.opening, ())


def test_shadow7_places_on_its_stations(grid_8_2):
    controller = shadow_capture_7(grid_8_2)
    placed = controller.place()
    stations = controller.opening.stations
    assert len(placed) == 7
    assert placed[:len(stations)] == stations
    assert set(placed[len(stations):]) == {controller.base}
    assert controller.base not in stations


def test_a_wall_splits_the_region(grid_8_2):
    plan = HuntPlan.build(grid_8_2)
    main = [m for m in plan.mirrors if m.diag_class is DiagClass.MAIN_DIAG]
    robber = Coord(1, 0)
    assert len(plan.region(frozenset(main[:1]), robber)) == 64 - 8
    walled = plan.region(frozenset(main), robber)
    assert len(walled) == 24
    assert all(plan.touches(m, walled) for m in main)
    with pytest.raises(InvariantViolation):
        plan.region(frozenset(main), Coord(0, 0))


def test_shadow7_always_gets_a_guard(grid_8_2):
    verdict = verify_controller(grid_8_2, shadow_capture_7(grid_8_2))
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL


@pytest.mark.parametrize("n,k", [(8, 2), (12, 2), (12, 3)])
def test_kregular13_captures_every_robber(n, k):
    grid = kregular_grid(n, k)
    verdict = verify_controller(grid, kregular_13(grid))
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL
    assert verdict.goals == 0
    print(f"✅ kregular13 on ({n},{k}): {verdict}")


@pytest.mark.parametrize("n,k", [(12, 2), (12, 3)])
def test_double13_reaches_two_parallel_guards(n, k):
    grid = kregular_grid(n, k)
    verdict = verify_controller(grid, double_shadow_13(grid))
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL


def test_kregular13_against_a_greedy_robber():
    grid = kregular_grid(12, 2)
    controller = kregular_13(grid)
    trace = play(grid, controller, GreedyEvade(grid), max_steps=2000)
    assert trace.outcome.kind is OutcomeKind.CAPTURED
    phases = {step.annotations["phase"] for step in trace.steps if step.annotations}
    assert "hunting" in phases


# -- paddles ------------------------------------------------------------------

def test_paddle_sizes():
    assert minimal_paddle_n(2) == 18
    assert minimal_paddle_n(3) == 33
    assert reform_bound(4) == 9


def test_paddle_frame():
    grid = kregular_grid(20, 2)
    up, down = maximal_streams(grid, Axis.HORIZONTAL)[:2]
    frame = PaddleFrame(grid, up)
    assert (frame.inner(0), frame.inner(1), frame.outer(0), frame.outer(1)) == (0, 1, 19, 2)
    assert frame.core_lines() == (0, 1)
    assert frame.height(Coord(0, 5)) == 5
    assert frame.unwrap(19, Coord(0, 0)) == 20
    assert frame.vertex(1, False, 23) == Coord(2, 3)
    assert PaddleFrame(grid, down).height(Coord(2, 5)) == 15

    wide = kregular_grid(24, 6)
    assert PaddleFrame(wide, maximal_streams(wide, Axis.VERTICAL)[0]).core_lines() == (2, 3)


def test_reform_paths_are_short_and_legal():
    grid = kregular_grid(20, 2)
    frame = PaddleFrame(grid, maximal_streams(grid, Axis.HORIZONTAL)[0])
    limit = reform_bound(frame.width)
    for side in (0, 1):
        for inner in (True, False):
            for u in range(grid.n):
                start = frame.vertex(side, inner, u)
                path = reform_path(grid, frame, start, side)
                assert len(path) <= limit
                assert path[-1] == frame.vertex(side, not inner, u)
                walk = [start] + path
                assert all(grid.is_move(a, b) for a, b in zip(walk, walk[1:]))
    assert paddle_paths_ok(grid, frame)


@pytest.mark.parametrize("width", [1, 2, 3, 4, 5])
def test_reform_fits_its_window_for_every_width(width):
    grid = kregular_grid(6 * width, width)
    frame = PaddleFrame(grid, maximal_streams(grid, Axis.HORIZONTAL)[0])
    assert frame.width == width
    assert frame.depth == PaddlePairMachine(width).depth == 4 * width + 2
    for side in (0, 1):
        for inner in (True, False):
            for u in range(grid.n):
                assert len(reform_path(grid, frame, frame.vertex(side, inner, u), side)) <= reform_bound(width)
    assert paddle_paths_ok(grid, frame)


def test_reform_path_needs_a_side_line():
    grid = kregular_grid(20, 2)
    frame = PaddleFrame(grid, maximal_streams(grid, Axis.HORIZONTAL)[0])
    with pytest.raises(DecompositionError):
        reform_path(grid, frame, Coord(10, 0), 0)


def test_pair_machine_survives_a_long_random_walk():
    """Whatever the robber does, every state's inequalities hold after the cops answer"""
    width = 2
    machine = PaddlePairMachine(width)
    top = machine.depth - 1
    state = PairState(label=1, flip=1, p1=0, p2=1, hi1=top, hi2=top)
    robber = top // 2
    rng = np.random.default_rng(2024)
    labels = set()
    for delta in rng.integers(-1, 2, size=100_000):
        robber += int(delta)
        state = machine.step(state, robber)
        machine.check(state, robber)
        labels.add(state.label)
    assert labels == {1, 2, 3, 4, 5}


def test_pair_machine_setup_ends_on_either_pair():
    machine = PaddlePairMachine(2)
    top = machine.depth - 1
    state = machine.setup(top)
    for _ in range(10):
        state = machine.step(state, top + 4)
        if state.label:
            break
    assert (state.label, state.flip, state.hi1, state.released) == (4, 1, top + 4, (2, 3))

    state = machine.setup(top)
    for _ in range(10):
        state = machine.step(state, -5)
        if state.label:
            break
    assert (state.label, state.flip, state.hi1, state.released) == (4, -1, 5, (0, 1))
    assert (state.p1, state.p2) == (2, 3)


def test_pair_machine_check_catches_a_broken_state():
    machine = PaddlePairMachine(2)
    with pytest.raises(InvariantViolation):
        machine.check(PairState(label=4, flip=1, p1=0, p2=1, hi1=10, hi2=10), 0)


def test_paddle_refuses_small_grids(grid_8_2, uniform_5):
    with pytest.raises(StrategyRefusal) as excinfo:
        PaddleController(grid_8_2)
    assert excinfo.value.minimal_n == 18
    with pytest.raises(StrategyRefusal):
        PaddleController(uniform_5)


def test_paddle_placement():
    grid = kregular_grid(20, 2)
    controller = PaddleController(grid, size=26)
    assert controller.cop_count == 105
    assert controller.guard.stream == Stream(Axis.HORIZONTAL, 0, 2, 1, 20)
    placed = controller.place()
    assert all(placed[c].x in (0, 1) for c in range(52))
    assert all(placed[c].x in (19, 2) for c in range(52, 104))
    assert placed[104] == Coord(10, 10)


def test_paddle_chaser_catches_a_robber_outside_the_stream():
    grid = kregular_grid(20, 2)
    trace = play(grid, PaddleController(grid, size=26), StationaryRobber(grid, Coord(10, 5)), max_steps=40)
    assert trace.captured
    assert trace.steps[-1].annotations["paddle_state"] == 0


def test_widest_streams_order():
    grid = kregular_grid(8, 2)
    streams = widest_streams(grid)
    assert len(streams) == 8
    assert streams[0] == Stream(Axis.HORIZONTAL, 0, 2, 1, 8)


# -- general ------------------------------------------------------------------

def test_axis_run():
    grid = uniform_grid(10)
    assert axis_run(grid, [3, 4], 7) == (5, 6, 7, 8, 9, 0, 1, 2)
    assert axis_run(grid, [], 3) == tuple(range(10))
    with pytest.raises(InvariantViolation):
        axis_run(grid, [3], 3)


def test_territory():
    grid = kregular_grid(40, 2)
    guarded = [Stream(Axis.HORIZONTAL, 0, 2, 1, 40)]
    territory = territory_of(grid, guarded, Coord(5, 5))
    assert territory.rows == tuple(range(2, 40))
    assert territory.cols == tuple(range(40))
    assert territory.size == 38 * 40
    assert not territory.meets(guarded[0])
    assert territory.meets(Stream(Axis.VERTICAL, 0, 2, 1, 40))
    assert bounding_guards(grid, guarded, territory) == guarded

    assert territory_of(grid, guarded, Coord(1, 7), previous=territory) is territory
    with pytest.raises(InvariantViolation):
        territory_of(grid, guarded, Coord(1, 7))


def test_general_refuses_small_grids(grid_8_2):
    with pytest.raises(StrategyRefusal) as excinfo:
        GeneralController(grid_8_2)
    assert excinfo.value.minimal_n == 18


def test_general_start():
    grid = kregular_grid(40, 2)
    controller = GeneralController(grid)
    assert controller.cop_count == 319
    placed = controller.place()
    assert len(placed) == 319
    assert placed[318] == Coord(20, 20)

    state = controller.observe_robber(Coord(10, 10))
    memory = state.memory
    assert memory.territory == Territory(tuple(range(2, 40)), tuple(range(40)))
    assert len(memory.streams) == 1
    ledger = CopLedger.thaw(memory.roles, budget=319)
    assert ledger.active_count() == 4 * controller.size + 1
    assert ledger.cops[318].status is CopStatus.CHASER


def test_ledger_budget():
    ledger = CopLedger(5, budget=2)
    ledger.take_free(2, CopStatus.COMMITTED, "stream:horizontal:0")
    with pytest.raises(InvariantViolation):
        ledger.assign(4, CopStatus.TEMPORARY, "conflux:0,0")
    assert ledger.release_holders("stream:horizontal:0") == [0, 1]
    assert ledger.free() == [0, 1, 2, 3]
    with pytest.raises(InvariantViolation):
        ledger.take_free(6, CopStatus.TRANSIT, "too many")


def test_ledger_releases_exact_roles():
    ledger = CopLedger(6, budget=6)
    ledger.take_free(2, CopStatus.COMMITTED, "stream:horizontal:1")
    ledger.take_free(2, CopStatus.COMMITTED, "stream:horizontal:12")
    ledger.take_free(2, CopStatus.COMMITTED, "stream:horizontal:15")
    assert ledger.release_holders("stream:horizontal:1", "dropped") == [0, 1]
    assert ledger.free() == [0, 1]
    assert ledger.with_role("stream:horizontal:12") == [2, 3]
    assert ledger.release_holders("stream:horizontal:1") == []


def test_general_release_keeps_the_bounding_guards():
    grid = kregular_grid(40, 2)
    controller = GeneralController(grid, size=2)
    ledger = CopLedger(controller.count, budget=319)
    slots = []
    for i, first in enumerate((2, 20, 24)):
        stream = Stream(Axis.HORIZONTAL, first, 2, 1, 40)
        slot = StreamGuardSlot(stream, tuple(range(8 * i, 8 * i + 8)), state="formed")
        controller._commit(ledger, slot)
        slots.append(slot)

    territory = territory_of(grid, [s.stream for s in slots], Coord(22, 5))
    assert territory.rows == (22, 23)
    streams, confluxes = controller._release(ledger, slots, [], territory)

    assert [s.stream.first_line for s in streams] == [20, 24]
    assert confluxes == []
    assert ledger.free()[:8] == list(range(8))
    assert all(ledger.cops[c].active for c in range(8, 24))
    assert ledger.with_role(stream_role(slots[1].stream)) == list(range(8, 16))
    print("✅ Only the guard outside the territory went back to the pool")


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_general_territory_never_grows(seed):
    grid = random_grid(40, seed, max_width=3)
    trace = play(grid, GeneralController(grid), GreedyEvade(grid), max_steps=20000)
    assert trace.outcome.kind is OutcomeKind.CAPTURED
    sizes = [s.annotations["territory"] for s in trace.steps if "territory" in s.annotations]
    assert sizes
    assert all(later <= earlier for earlier, later in zip(sizes, sizes[1:]))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
