from __future__ import annotations

import dataclasses

import pytest

from facetint.domain.drawing import VertexKind, twin
from facetint.domain.entities import ViolationKind
from facetint.domain.exceptions import DrawingError, InvalidInputError
from facetint.services import generators
from facetint.services.drawing import (
    crossing_triples,
    dual,
    face_orbits,
    faces,
    find_violations,
    is_good_drawing,
    place_vertex_at_crossing,
    planar_graph,
    touchings,
    trail_passes,
    validate_drawing,
)
from facetint.services.multigraph import is_isomorphic


def test_face_orbits_follow_the_successor(convex_k4):
    for orbit in face_orbits(convex_k4):
        assert orbit[0] == min(orbit)
        for a, b in zip(orbit, orbit[1:] + orbit[:1]):
            assert convex_k4.face_successor(a) == b


def test_every_dart_lies_on_exactly_one_face(convex_k4):
    structure = faces(convex_k4)
    darts = [dart for orbit in structure.orbits for dart in orbit]
    assert sorted(darts) == sorted(convex_k4.darts)


def test_outer_face_of_square_is_bounded_by_all_four_sides(square):
    structure = faces(square)
    assert len(structure.orbits[structure.outer]) == 4
    assert structure.left(0) != structure.right(0)


def test_dual_has_one_edge_per_segment(convex_k4):
    g = dual(convex_k4).graph
    assert g.order == 5
    assert g.size == len(convex_k4.segments)
    assert all(not e.is_loop for e in g.edges)


def test_dual_of_a_bridge_is_a_loop(single_edge):
    g = dual(single_edge).graph
    assert g.order == 1
    assert g.edges[0].is_loop


def test_planar_graph_turns_crossings_into_vertices(convex_k4):
    g = planar_graph(convex_k4)
    assert g.order == 5
    assert g.degree_of(convex_k4.crossings[0]) == 4


def test_trail_passes_at_a_crossing(convex_k4):
    (x,) = convex_k4.crossings
    passes = trail_passes(convex_k4, x)
    assert {p.edge for p in passes} == {1, 4}
    for p in passes:
        assert convex_k4.origin(p.in_dart) == convex_k4.origin(p.out_dart) == x


# ── Validation ─────────────────────────────────────────────────────────────


def test_validate_drawing_accepts_ingested_maps(convex_k4, figure_eight):
    assert validate_drawing(convex_k4) is convex_k4
    assert validate_drawing(figure_eight) is figure_eight


def test_rotation_missing_a_dart_is_rejected(square):
    rotation = dict(square.rotation)
    rotation[0] = rotation[0][:1]
    with pytest.raises(DrawingError, match="every dart"):
        validate_drawing(dataclasses.replace(square, rotation=rotation))


def test_outer_dart_must_exist(square):
    with pytest.raises(DrawingError):
        validate_drawing(dataclasses.replace(square, outer_dart=99))


def test_swapped_rotation_breaks_euler(convex_k4):
    rotation = dict(convex_k4.rotation)
    x = convex_k4.crossings[0]
    a, b, c, d = rotation[x]
    rotation[x] = (a, c, b, d)
    with pytest.raises(DrawingError):
        validate_drawing(dataclasses.replace(convex_k4, rotation=rotation))


# ── Good drawings ──────────────────────────────────────────────────────────


def test_convex_k4_is_good(convex_k4):
    good, violations = is_good_drawing(convex_k4)
    assert good
    assert violations == []
    assert crossing_triples(convex_k4) == 1
    assert touchings(convex_k4) == 0


def test_self_crossing_loop(figure_eight):
    (violation,) = find_violations(figure_eight)
    assert violation.kind is ViolationKind.SELF_INTERSECTION
    assert violation.edges == (0,)


def test_adjacent_crossing(adjacent_crossing):
    (violation,) = find_violations(adjacent_crossing)
    assert violation.kind is ViolationKind.ADJACENT_CROSSING
    assert violation.edges == (0, 1)


def test_circle_drawing_of_k4_is_good():
    from facetint.services.planarize import circle_planarization

    d = circle_planarization(generators.complete_graph(4))
    assert len(d.crossings) == 1
    assert is_good_drawing(d)[0]


# ── Placing a vertex at a crossing ─────────────────────────────────────────


def test_vertex_at_the_crossing_of_convex_k4_gives_w4(convex_k4):
    (x,) = convex_k4.crossings
    placed, h = place_vertex_at_crossing(convex_k4, x)
    assert is_isomorphic(h, generators.wheel(4))
    assert placed.kind(x) is VertexKind.NORMAL
    assert placed.crossings == ()
    assert faces(placed).count == faces(convex_k4).count


def test_vertex_can_only_be_placed_at_a_crossing(convex_k4):
    with pytest.raises(InvalidInputError):
        place_vertex_at_crossing(convex_k4, 0)


def test_twin_is_an_involution():
    assert all(twin(twin(d)) == d for d in range(10))
    assert twin(4) == 5
