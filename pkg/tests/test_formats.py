from __future__ import annotations

from fractions import Fraction

import pytest

from facetint.domain.entities import FaceColoring
from facetint.domain.exceptions import FormatError
from facetint.domain.orientation import Orientation, Z3Flow
from facetint.infrastructure.formats import (
    parse_cmap,
    parse_coloring,
    parse_graph,
    parse_orientation,
    parse_polylines,
    read_text,
    serialize_cmap,
    serialize_coloring,
    serialize_faces,
    serialize_graph,
    serialize_orientation,
    serialize_polylines,
    write_text,
)
from facetint.services import generators
from facetint.services.drawing import faces
from facetint.services.flow3 import nz3_flow

# ── Graphs ─────────────────────────────────────────────────────────────────


def test_parse_graph_skips_comments_and_blank_lines():
    text = "# a digon\nv 0\nv 1\n\ne 0 0 1   # first\ne 1 1 0\n"
    g = parse_graph(text)
    assert g.vertices == (0, 1)
    assert g.multiplicity(0, 1) == 2


def test_serialized_graph_parses_back():
    g = generators.petersen()
    assert parse_graph(serialize_graph(g)) == g


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("v 0\nx 1\n", "line 2"),
        ("v zero\n", "expected an integer"),
        ("v 0\ne 0 0\n", "line 2"),
        ("v 0\ne 0 0 1\n", "undeclared endpoint"),
    ],
)
def test_bad_graph_files(text, message):
    with pytest.raises(FormatError, match=message):
        parse_graph(text)


# ── Orientations ───────────────────────────────────────────────────────────


def test_orientation_without_values_is_an_orientation():
    g = generators.digon()
    o = parse_orientation("a 0 0 1\na 1 1 0\n", g)
    assert isinstance(o, Orientation)
    assert o.is_mod3()
    assert o.arcs() == {0: (0, 1), 1: (1, 0)}


def test_flow_lines_make_a_flow():
    g = generators.complete_bipartite(3, 3)
    flow = nz3_flow(g)
    parsed = parse_orientation(serialize_orientation(flow), g)
    assert isinstance(parsed, Z3Flow)
    assert parsed.is_valid()


def test_orientation_must_cover_every_edge():
    with pytest.raises(FormatError, match="every edge"):
        parse_orientation("a 0 0 1\n", generators.digon())


def test_orientation_edge_twice():
    with pytest.raises(FormatError, match="oriented twice"):
        parse_orientation("a 0 0 1\na 0 1 0\n", generators.digon())


# ── Polylines and maps ─────────────────────────────────────────────────────


def test_polylines_parse_back():
    p = generators.figure_eight_drawing()
    parsed = parse_polylines(serialize_polylines(p))
    assert parsed.graph == p.graph
    assert parsed.points == p.points
    assert parsed.curves == p.curves


def test_rational_coordinates():
    p = parse_polylines("v 0 1/2 -3/4\nv 1 1 0\ne 0 0 1 : 1/2,-3/4 1,0\n")
    assert p.points[0] == (Fraction(1, 2), Fraction(-3, 4))
    assert p.curves[0][0] == p.points[0]


def test_zero_denominator_is_rejected():
    with pytest.raises(FormatError, match="zero denominator"):
        parse_polylines("v 0 1/0 0\n")


def test_cmap_round_trip(convex_k4):
    parsed = parse_cmap(serialize_cmap(convex_k4))
    assert dict(parsed.segments) == dict(convex_k4.segments)
    assert dict(parsed.rotation) == dict(convex_k4.rotation)
    assert dict(parsed.trails) == dict(convex_k4.trails)
    assert faces(parsed).outer == faces(convex_k4).outer
    assert parsed.positions == convex_k4.positions
    assert parsed.underlying == convex_k4.underlying


def test_cmap_rotations_and_trails_share_dart_tokens(convex_k4):
    records = [line.split() for line in serialize_cmap(convex_k4).splitlines()]
    tokens = [t for r in records if r[0] in ("rot", "trail") for t in r[2:]]
    assert tokens
    assert all(t[0] in "+-" and t[1:].isdigit() for t in tokens)


def test_cmap_rotation_tokens_parse_to_darts(single_edge):
    text = serialize_cmap(single_edge)
    assert "rot 0 +0\n" in text
    assert "rot 1 -0\n" in text
    assert dict(parse_cmap(text).rotation) == {0: (0,), 1: (1,)}


def test_cmap_needs_an_outer_face(square):
    text = "".join(
        line + "\n" for line in serialize_cmap(square).splitlines() if not line.startswith("outer")
    )
    with pytest.raises(FormatError, match="outer face"):
        parse_cmap(text)


def test_cmap_rejects_a_missing_outer_face_index(square):
    text = serialize_cmap(square).replace("outer 0", "outer 7").replace("outer 1", "outer 7")
    with pytest.raises(FormatError, match="does not exist"):
        parse_cmap(text)


# ── Colorings ──────────────────────────────────────────────────────────────


def test_coloring_parses_back():
    c = FaceColoring({0: 2, 1: 0, 2: 1}, 3)
    assert parse_coloring(serialize_coloring(c)) == c


def test_coloring_needs_k():
    with pytest.raises(FormatError, match="'k <k>'"):
        parse_coloring("f 0 1\n")


def test_face_listing(square):
    text = serialize_faces(faces(square))
    lines = text.splitlines()
    assert lines[0].startswith("outer ")
    assert len(lines) == 3


# ── Files ──────────────────────────────────────────────────────────────────


def test_read_missing_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        read_text(tmp_path / "missing.g")


def test_write_then_read(tmp_path):
    path = tmp_path / "k4.g"
    write_text(path, serialize_graph(generators.complete_graph(4)))
    assert parse_graph(read_text(path)) == generators.complete_graph(4)
