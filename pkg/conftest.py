"""
Shared fixtures for the pursuit engine tests
"""
import pytest

from grid_model.digraph import Digraph
from grid_model.grid import kregular_grid, make_grid, uniform_grid
from settings import get_settings


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep the oracle cache and regression table out of the working tree"""
    monkeypatch.setenv("PURSUIT_RESULTS_CACHE", str(tmp_path / "oracle_results.json"))
    monkeypatch.setenv("PURSUIT_REGRESSION_CSV", str(tmp_path / "regression.csv"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def grid_8_2():
    return kregular_grid(8, 2)


@pytest.fixture
def grid_12_3():
    return kregular_grid(12, 3)


@pytest.fixture
def uniform_5():
    return uniform_grid(5)


@pytest.fixture
def mixed_6():
    """Stream widths 2, 1, 1, 2 on both axes"""
    dirs = [1, 1, -1, 1, -1, -1]
    return make_grid(6, dirs, dirs)


@pytest.fixture
def cycle_4():
    return Digraph.directed_cycle(4)


@pytest.fixture
def cycle_5():
    return Digraph.directed_cycle(5)
