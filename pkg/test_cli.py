#!/usr/bin/env python3
"""
Tests for the command line and the static renders
"""
import pytest
from typer.testing import CliRunner

from engine.game import play
from engine.policies import StationaryRobber
from grid_model.grid import Coord, uniform_grid
from main import app, board_from_generator, nearest_kregular_n
from oracle_service import CopNumberOracle
from render_service import ascii_board, trace_strip_html
from strategies.simple import ChaserController

runner = CliRunner()


def test_generators():
    assert board_from_generator("uniform:4").n == 4
    assert board_from_generator("kregular:8:2").row_dir == (1, 1, -1, -1, 1, 1, -1, -1)
    assert len(board_from_generator("cycle:6")) == 6
    assert board_from_generator("quad:4:4:2").vertical_walk_count == 2
    with pytest.raises(ValueError):
        board_from_generator("hexagon:5")
    with pytest.raises(ValueError):
        board_from_generator("uniform:five")


def test_nearest_kregular_n():
    assert nearest_kregular_n(13, 2) == 12
    assert nearest_kregular_n(3, 2) == 4


def test_simulate_capture_writes_a_trace(tmp_path):
    trace = tmp_path / "chase.json"
    result = runner.invoke(app, ["simulate", "--gen", "kregular:8:2", "--strategy", "chaser2",
                                 "--robber", "stationary", "--trace", str(trace)])
    assert result.exit_code == 0, result.output
    assert trace.exists()
    assert "trace written" in result.output


def test_simulate_escape_exit_code(tmp_path):
    result = runner.invoke(app, ["simulate", "--gen", "uniform:6", "--strategy", "none",
                                 "--trace", str(tmp_path / "t.json")])
    assert result.exit_code == 2


def test_bad_input_exits_with_one(tmp_path):
    trace = str(tmp_path / "t.json")
    assert runner.invoke(app, ["simulate", "--gen", "hexagon:5", "--trace", trace]).exit_code == 1
    assert runner.invoke(app, ["simulate", "--gen", "uniform:5", "--strategy", "teleport",
                               "--trace", trace]).exit_code == 1
    both = runner.invoke(app, ["simulate", "--gen", "uniform:5", "--grid", "3;+++;+++", "--trace", trace])
    assert both.exit_code == 1


def test_kregular_suggests_a_valid_n():
    result = runner.invoke(app, ["decompose", "--gen", "kregular:10:2"])
    assert result.exit_code == 1
    assert "nearest valid n is" in result.output


def test_format_error_is_reported():
    result = runner.invoke(app, ["render", "--grid", "3;+x+;+++"])
    assert result.exit_code == 1
    assert "format error" in result.output


def test_copnumber_of_a_cycle():
    result = runner.invoke(app, ["copnumber", "--gen", "cycle:5", "--no-cache"])
    assert result.exit_code == 0, result.output
    assert "c(cycle:5) = 2" in result.output
    print(f"✅ {result.output.strip()}")


def test_copnumber_with_cover(monkeypatch):
    result = runner.invoke(app, ["copnumber", "--gen", "quad:2:2:1", "--cover", "--k-max", "4", "--no-cache"])
    assert result.exit_code == 0, result.output
    assert "c(quad:2:2:1:" in result.output

    answers = iter([3, 2])
    monkeypatch.setattr(CopNumberOracle, "cop_number", lambda self, digraph, k_max, cache=None: next(answers))
    result = runner.invoke(app, ["copnumber", "--gen", "quad:2:2:1", "--cover", "--no-cache"])
    assert result.exit_code == 1
    assert "❌ the quotient needs 3 cops but its cover only 2" in result.output


def test_verify_exit_codes():
    assert runner.invoke(app, ["verify", "--gen", "cycle:4", "--strategy", "chaser1"]).exit_code == 2
    assert runner.invoke(app, ["verify", "--gen", "cycle:5", "--strategy", "oracle"]).exit_code == 0


def test_verify_cap_is_inconclusive():
    result = runner.invoke(app, ["verify", "--gen", "cycle:4", "--strategy", "chaser1", "--cap", "1"])
    assert result.exit_code == 3


def test_decompose():
    result = runner.invoke(app, ["decompose", "--gen", "kregular:8:2"])
    assert result.exit_code == 0
    assert "horizontal streams (4):" in result.output
    assert runner.invoke(app, ["decompose", "--gen", "cycle:4"]).exit_code == 1


def test_render_board():
    result = runner.invoke(app, ["render", "--gen", "uniform:3"])
    assert result.exit_code == 0
    assert "..." in result.output


def test_render_trace(tmp_path):
    trace, html = tmp_path / "t.json", tmp_path / "t.html"
    runner.invoke(app, ["simulate", "--gen", "uniform:4", "--strategy", "idle1", "--robber", "stationary",
                        "--max-steps", "3", "--trace", str(trace)])
    result = runner.invoke(app, ["render", "--trace", str(trace), "--out", str(html),
                                 "--gen", "uniform:4", "--step", "0"])
    assert result.exit_code == 0, result.output
    assert html.exists()
    missing = runner.invoke(app, ["render", "--trace", str(trace), "--gen", "uniform:4", "--step", "99"])
    assert missing.exit_code == 1


def test_ascii_board():
    assert ascii_board(uniform_grid(3), [Coord(0, 0)], Coord(1, 1)) == "C..\n.R.\n..."
    assert ascii_board(uniform_grid(3), [Coord(1, 1)], Coord(1, 1)).splitlines()[1] == ".X."


def test_trace_strip_html(grid_8_2, tmp_path):
    trace = play(grid_8_2, ChaserController(grid_8_2, 1), StationaryRobber(grid_8_2, Coord(5, 6)), max_steps=50)
    path = trace_strip_html(trace, tmp_path / "strip.html")
    assert path.exists()
    assert "<html" in path.read_text().lower()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
