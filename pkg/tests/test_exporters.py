from __future__ import annotations

import dataclasses

from facetint.domain.orientation import Orientation
from facetint.infrastructure.exporters import PALETTE, color_of, export_dot, export_svg
from facetint.services.facecolor import color_faces_exact, face_2_coloring


def _cyclic(d):
    return Orientation(d.underlying, {e.id: True for e in d.underlying.edges})


def test_svg_marks_crossings(convex_k4):
    svg = export_svg(convex_k4)
    assert svg.startswith("<svg ")
    assert svg.count('class="crossing"') == 1
    assert svg.count('class="segment"') == 8
    assert 'class="face"' not in svg


def test_svg_fills_inner_faces(convex_k4):
    coloring = color_faces_exact(convex_k4, 3)
    svg = export_svg(convex_k4, coloring)
    assert svg.count('<polygon class="face"') == 4


def test_svg_without_positions_uses_face_markers(convex_k4):
    bare = dataclasses.replace(convex_k4, positions=None, bends=None)
    svg = export_svg(bare, color_faces_exact(bare, 3))
    assert svg.count('<circle class="face"') == 4


def test_svg_arrows_follow_the_orientation(square):
    svg = export_svg(square, orientation=_cyclic(square))
    assert svg.count('marker-end="url(#arrow)"') == 4


def test_dot_labels_and_directions(square):
    dot = export_dot(square, face_2_coloring(square), _cyclic(square))
    assert dot.startswith("graph facetint {")
    assert dot.count("dir=forward") == 4
    assert dot.count('label="0|1"') + dot.count('label="1|0"') == 4


def test_dot_crossings_are_points(convex_k4):
    dot = export_dot(convex_k4)
    assert dot.count("shape=point") == 1
    assert dot.count(" -- ") == 8


def test_palette_wraps():
    assert color_of(len(PALETTE)) == PALETTE[0]
