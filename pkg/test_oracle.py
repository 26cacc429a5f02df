#!/usr/bin/env python3
"""
Tests for the cop-number oracle, its extracted strategies and its result stores
"""
import json

import pytest

from engine.verifier import VerdictKind, verify_controller
from errors import StateCapExceeded, StrategyRefusal
from grid_model.digraph import Digraph
from oracle_service import (CopNumberOracle, OracleStrategyController, ResultsCache, append_regression,
                            check_fixpoint)


def test_single_vertex_needs_one_cop():
    point = Digraph.from_edges([], vertices=[0], name="point")
    result = CopNumberOracle().solve(point, 1)
    assert result.cops_win
    assert result.placement == (0,)
    assert result.capture_time == 0


def test_directed_cycle_needs_two_cops(cycle_5):
    oracle = CopNumberOracle()
    assert not oracle.cop_win_with_k(cycle_5, 1)
    assert oracle.cop_win_with_k(cycle_5, 2)
    assert oracle.cop_number(cycle_5, 3) == 2


@pytest.mark.parametrize("n", range(3, 9))
def test_every_directed_cycle_needs_two_cops(n):
    assert CopNumberOracle().cop_number(Digraph.directed_cycle(n), 3) == 2


def test_more_cops_never_hurt(cycle_5):
    oracle = CopNumberOracle()
    wins = [oracle.solve(cycle_5, k).cops_win for k in (1, 2, 3)]
    assert wins == [False, True, True]


def test_labelling_is_a_fixpoint(cycle_4):
    oracle = CopNumberOracle()
    for k in (1, 2):
        result = oracle.solve(cycle_4, k)
        assert check_fixpoint(result)
    print(f"✅ fixpoint holds on {cycle_4.name}")


def test_fixpoint_on_a_grid(mixed_6):
    """Backward induction agrees with the local rule on a 36-vertex grid"""
    result = CopNumberOracle().solve(mixed_6.to_digraph(), 1)
    assert check_fixpoint(result)


def test_extracted_strategy_captures_for_all(cycle_5):
    result = CopNumberOracle().solve(cycle_5, 2)
    controller = OracleStrategyController(result)
    assert controller.cop_count == 2
    verdict = verify_controller(cycle_5, controller)
    assert verdict.kind is VerdictKind.CAPTURED_FOR_ALL
    assert verdict.max_capture_time <= result.capture_time


def test_losing_result_has_no_strategy(cycle_5):
    result = CopNumberOracle().solve(cycle_5, 1)
    assert result.placement is None
    with pytest.raises(StrategyRefusal):
        OracleStrategyController(result)


def test_state_cap(cycle_5):
    with pytest.raises(StateCapExceeded) as excinfo:
        CopNumberOracle(state_cap=10).solve(cycle_5, 2)
    assert excinfo.value.statistics["states"] == 2 * 15 * 5


def test_rejects_bad_k(cycle_5):
    with pytest.raises(ValueError):
        CopNumberOracle().solve(cycle_5, 0)
    with pytest.raises(ValueError):
        CopNumberOracle().cop_number(cycle_5, 0)


def test_results_cache_round_trip(cycle_5, tmp_path):
    path = tmp_path / "cache" / "results.json"
    cache = ResultsCache(str(path))
    assert CopNumberOracle().cop_number(cycle_5, 3, cache) == 2
    stored = json.loads(path.read_text())
    assert stored[ResultsCache.key(cycle_5, 2)]["win"] is True

    reloaded = ResultsCache(str(path))
    assert reloaded.get(cycle_5, 1)["win"] is False
    assert reloaded.get(Digraph.directed_cycle(6), 1) is None


def test_unreadable_cache_starts_empty(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert ResultsCache(str(path)).entries == {}


def test_regression_table_appends(tmp_path):
    path = str(tmp_path / "regression.csv")
    row = {"grid": "cycle:5", "k": 2, "verdict": "win", "states": 150, "seconds": 0.01}
    append_regression([row], path)
    frame = append_regression([row], path)
    assert len(frame) == 2
    assert list(frame.columns) == ["grid", "k", "verdict", "states", "seconds"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
