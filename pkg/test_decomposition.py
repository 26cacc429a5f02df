#!/usr/bin/env python3
"""
Tests for the grid decomposition: streams, confluxes, diagonals and shadows
"""
import math

import pytest

from decomposition.conflux_digraph import conflux_digraph
from decomposition.confluxes import (corners, entry_side, escape_distances, exits_covered, guard_posts, main_corner_a,
                                     main_corner_b, maximal_conflux, maximal_confluxes, terminal_corner)
from decomposition.diagonals import (DiagClass, Diagonal, band_offsets, between_band, diagonal_distance, main_diag,
                                     secondary_diag)
from decomposition.dump import dump_decomposition
from decomposition.shadows import (ShadowKind, is_diagonal_shadow, mirror_between, mirror_distance, mirror_of,
                                   reflect_across, shadow_kind, shadow_step, shadows_of, side_of, universal_mirrors)
from decomposition.streams import Axis, Stream, max_width, maximal_streams, regularity, stream_of
from errors import DecompositionError
from grid_model.grid import Coord, kregular_grid, make_grid, random_grid
from strategies.shadow_guard import guard_move


def test_kregular_streams(grid_8_2):
    for axis in Axis:
        streams = maximal_streams(grid_8_2, axis)
        assert [s.first_line for s in streams] == [0, 2, 4, 6]
        assert [s.direction for s in streams] == [1, -1, 1, -1]
        assert all(s.width == 2 for s in streams)
    assert regularity(grid_8_2) == 2


def test_uniform_grid_has_one_spanning_stream(uniform_5):
    streams = maximal_streams(uniform_5, Axis.HORIZONTAL)
    assert len(streams) == 1
    assert streams[0].spans_grid
    assert max_width(uniform_5) == 5


def test_mixed_widths(mixed_6):
    streams = maximal_streams(mixed_6, Axis.VERTICAL)
    assert [(s.first_line, s.width, s.direction) for s in streams] == [(0, 2, 1), (2, 1, -1), (3, 1, 1), (4, 2, -1)]
    assert regularity(mixed_6) == 0
    assert stream_of(mixed_6, Axis.HORIZONTAL, 5) == Stream(Axis.HORIZONTAL, 4, 2, -1, 6)


def test_stream_wrapping_around_the_torus():
    grid = make_grid(6, [-1, 1, 1, -1, -1, -1], [1, 1, 1, 1, 1, 1])
    wrapped = stream_of(grid, Axis.HORIZONTAL, 0)
    assert (wrapped.first_line, wrapped.width, wrapped.last_line) == (3, 4, 0)
    assert wrapped.lines == (3, 4, 5, 0)
    assert wrapped.contains(Coord(0, 2))
    assert not wrapped.contains(Coord(1, 2))
    assert wrapped.offset(0) == 3
    assert wrapped.substream(5, 2).lines == (5, 0)
    with pytest.raises(ValueError):
        wrapped.substream(5, 3)


def test_confluxes_partition_the_grid(grid_8_2):
    confluxes = maximal_confluxes(grid_8_2)
    assert len(confluxes) == 16
    for v in grid_8_2.vertices():
        assert sum(1 for k in confluxes if v in k) == 1


def test_local_coordinates(mixed_6):
    """Local coordinates grow along arcs and from_local inverts local"""
    for k in maximal_confluxes(mixed_6):
        for v in k.vertices():
            p, q = k.local(v)
            assert 0 <= p < k.a and 0 <= q < k.b
            assert k.from_local(p, q) == v
            x_next, y_next = mixed_6.out_neighbors(v)
            if x_next in k:
                assert k.local(x_next) == (p + 1, q)
            if y_next in k:
                assert k.local(y_next) == (p, q + 1)


def test_corners_and_posts(grid_8_2):
    k = maximal_conflux(grid_8_2, Coord(0, 0))
    assert main_corner_a(k) == Coord(1, 0)
    assert main_corner_b(k) == Coord(0, 1)
    assert terminal_corner(k) == Coord(1, 1)
    assert grid_8_2.x_arc(main_corner_a(k)) not in k
    assert grid_8_2.y_arc(main_corner_b(k)) not in k

    cs = corners(k)
    assert cs.main == (Coord(1, 0), Coord(0, 1))
    assert cs.terminal == Coord(1, 1)

    posts = guard_posts(k)
    assert (posts.vertical, posts.horizontal, posts.terminal) == (Coord(2, 0), Coord(0, 2), Coord(2, 2))


def test_spanning_conflux_has_no_corners(uniform_5):
    k = maximal_confluxes(uniform_5)[0]
    assert k.covers_grid
    with pytest.raises(DecompositionError):
        corners(k)
    with pytest.raises(DecompositionError):
        guard_posts(k)
    assert escape_distances(uniform_5, Coord(2, 2)) == (math.inf, math.inf, math.inf)


def test_escape_distances(grid_8_2):
    assert escape_distances(grid_8_2, Coord(0, 0)) == (2, 2, 2)
    assert escape_distances(grid_8_2, Coord(1, 0)) == (1, 2, 1)


def test_conflux_digraph(grid_8_2, mixed_6):
    dg = conflux_digraph(grid_8_2)
    assert dg.shape == (4, 4)
    assert dg.matches_grid_arcs()
    assert dg.is_product_of_cycles()
    assert dg.as_grid().row_dir == (1, -1, 1, -1)

    mixed = conflux_digraph(mixed_6)
    assert mixed.matches_grid_arcs()
    assert mixed.id_of(Coord(5, 2)) == (3, 1)


def test_diagonal_distance_is_symmetric(grid_8_2):
    u, v = Coord(0, 0), Coord(2, 2)
    assert diagonal_distance(grid_8_2, u, v) == 4
    assert diagonal_distance(grid_8_2, v, u) == 4
    with pytest.raises(DecompositionError):
        diagonal_distance(grid_8_2, u, Coord(4, 4))


def test_between_band(grid_8_2):
    u, v = Coord(0, 0), Coord(2, 2)
    band = between_band(grid_8_2, u, v)
    assert len(band) == 5 * 8
    assert u in band and v in band
    assert band_offsets(grid_8_2, u, v) == (DiagClass.ANTI_DIAG, frozenset(range(5)))


def test_shadows(grid_8_2):
    main, secondary = shadows_of(grid_8_2, Coord(0, 0))
    assert main == [Coord(0, 0), Coord(4, 4)]
    assert secondary == [Coord(3, 3), Coord(7, 7)]
    assert shadow_kind(grid_8_2, Coord(0, 0), Coord(4, 4)) is ShadowKind.MAIN
    assert shadow_kind(grid_8_2, Coord(0, 0), Coord(7, 7)) is ShadowKind.SECONDARY
    assert shadow_kind(grid_8_2, Coord(0, 0), Coord(2, 2)) is None


def test_guard_keeps_its_mirror(grid_8_2):
    """A main shadow answers an x-move with the robber's y-arc and the mirror stays put"""
    robber, guard = Coord(0, 0), Coord(4, 4)
    mirror = mirror_of(grid_8_2, robber, guard)
    assert mirror == Diagonal(DiagClass.MAIN_DIAG, 4, 8)

    moved = guard_move(grid_8_2, robber, Coord(1, 0), guard)
    assert moved == Coord(4, 5)
    assert mirror_of(grid_8_2, Coord(1, 0), moved) == mirror
    assert guard_move(grid_8_2, robber, robber, guard) == guard


def test_mirror_geometry():
    first, second = Diagonal(DiagClass.MAIN_DIAG, 0, 8), Diagonal(DiagClass.MAIN_DIAG, 4, 8)
    assert mirror_distance(first, second, 2) == 1
    with pytest.raises(DecompositionError):
        mirror_distance(first, Diagonal(DiagClass.ANTI_DIAG, 4, 8), 2)
    assert side_of((first, second), Coord(2, 0)) == [1, 2, 3]
    assert side_of((first, second), Coord(6, 0)) == [5, 6, 7]
    assert side_of((first, second), Coord(0, 0)) is None


@pytest.mark.parametrize("n,k", [(8, 2), (12, 2), (12, 3)])
def test_reflections_across_universal_mirrors_are_shadows(n, k):
    grid = kregular_grid(n, k)
    mirrors = universal_mirrors(grid, k)
    assert len(mirrors) == n // k
    for mirror in mirrors:
        for v in grid.vertices():
            w = reflect_across(mirror, v)
            assert reflect_across(mirror, w) == v
            if w == v:
                assert v in mirror
                continue
            assert is_diagonal_shadow(grid, v, w)
            assert mirror_of(grid, v, w) == mirror
            assert mirror_between(mirrors, v, w) == mirror


def test_guard_tracks_the_reflection(grid_8_2):
    for mirror in universal_mirrors(grid_8_2, 2):
        for v in grid_8_2.vertices():
            w = reflect_across(mirror, v)
            if w == v:
                continue
            for u in grid_8_2.moves(v):
                assert guard_move(grid_8_2, v, u, w) == reflect_across(mirror, u)


def test_entry_side(grid_8_2):
    k = maximal_conflux(grid_8_2, Coord(2, 0))
    assert set(entry_side(k)) == {Coord(2, 0), Coord(2, 1), Coord(3, 1)}
    for k in maximal_confluxes(grid_8_2):
        side = set(entry_side(k))
        assert len(side) == 3
        assert set(corners(k).main) <= side
        for v in k.vertices():
            from_outside = any(u not in k for u in grid_8_2.in_neighbors(v))
            assert from_outside == (v in side)


def test_exits_covered(grid_8_2):
    home = maximal_conflux(grid_8_2, Coord(0, 0))
    exits = []
    for v in home.vertices():
        for u in grid_8_2.out_neighbors(v):
            if u not in home and not any(u in e for e in exits):
                exits.append(maximal_conflux(grid_8_2, u))
    assert len(exits) == 2
    posts = [c for k in exits for c in corners(k).main]
    assert exits_covered([home], exits, posts)
    assert not exits_covered([home], exits, posts[1:])
    assert not exits_covered([home], exits[:1], posts)
    assert not exits_covered([home], [], posts)


@pytest.mark.parametrize("n,k", [(8, 1), (8, 2), (12, 3)])
def test_shadows_survive_every_robber_move(n, k):
    """A shadow answered by shadow_step is again a shadow of the robber's new vertex"""
    grid = kregular_grid(n, k)
    checked = 0
    for v in grid.vertices():
        main, secondary = shadows_of(grid, v)
        for x in main + secondary:
            for u in grid.out_neighbors(v):
                moved = shadow_step(grid, v, u, x)
                assert grid.is_move(x, moved)
                assert is_diagonal_shadow(grid, u, moved)
                checked += 1
    assert checked > 0
    print(f"✅ {checked} shadow steps on {grid.descriptor}")


def test_diagonals_meet_every_line(mixed_6):
    for v in mixed_6.vertices():
        for diagonal in (main_diag(mixed_6, v), secondary_diag(mixed_6, v)):
            cells = list(diagonal.vertices())
            assert {c.x for c in cells} == set(range(6))
            assert {c.y for c in cells} == set(range(6))


@pytest.mark.parametrize("n,k", [(8, 1), (8, 2), (12, 2), (12, 3)])
def test_conflux_digraph_distances_are_even_and_short(n, k):
    quotient = conflux_digraph(kregular_grid(n, k)).as_grid()
    m = n // k
    assert quotient.n == m
    for u in quotient.vertices():
        tu = quotient.vertex_type(u)
        for v in quotient.vertices():
            if quotient.vertex_type(v) != (-tu[0], -tu[1]):
                continue
            d = diagonal_distance(quotient, u, v)
            assert d % 2 == 0 and d < m


@pytest.mark.parametrize("seed", range(5))
def test_random_grid_structure(seed):
    grid = random_grid(12, seed=seed, max_width=3)
    for axis in Axis:
        streams = maximal_streams(grid, axis)
        lines = [line for s in streams for line in s.lines]
        assert sorted(lines) == list(range(12))
    confluxes = maximal_confluxes(grid)
    assert sum(len(list(k.vertices())) for k in confluxes) == 12 * 12
    assert conflux_digraph(grid).matches_grid_arcs()
    for k in confluxes:
        side = set(entry_side(k))
        for v in k.vertices():
            assert maximal_conflux(grid, v) == k
            from_outside = any(u not in k for u in grid.in_neighbors(v))
            assert from_outside == (v in side)
            he, ve, e = escape_distances(grid, v)
            assert 1 <= e <= 3 and e == min(he, ve)


def test_dump(grid_8_2, uniform_5):
    text = dump_decomposition(grid_8_2)
    assert "horizontal streams (4):" in text
    assert "maximal confluxes (16):" in text
    assert "(0, 0) -> (1, 0)" in text
    assert "conflux covers grid" in dump_decomposition(uniform_5)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
