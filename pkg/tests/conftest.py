from __future__ import annotations

from fractions import Fraction

import pytest

from facetint.domain.drawing import PlanarizedDrawing, PolylineDrawing
from facetint.domain.graph import Multigraph
from facetint.infrastructure.config import Settings
from facetint.services import generators
from facetint.services.planarize import ingest_polylines


def _pt(x: int | str, y: int | str) -> tuple[Fraction, Fraction]:
    return Fraction(x), Fraction(y)


@pytest.fixture
def settings() -> Settings:
    return Settings(_env_file=None)


@pytest.fixture
def square() -> PlanarizedDrawing:
    return ingest_polylines(generators.square_drawing())


@pytest.fixture
def triangle() -> PlanarizedDrawing:
    return ingest_polylines(generators.triangle_drawing())


@pytest.fixture
def convex_k4() -> PlanarizedDrawing:
    return ingest_polylines(generators.convex_k4_drawing())


@pytest.fixture
def figure_eight() -> PlanarizedDrawing:
    return ingest_polylines(generators.figure_eight_drawing())


@pytest.fixture
def planar_k4() -> PlanarizedDrawing:
    """K_4 drawn without crossings, vertex 3 inside the triangle 0 1 2."""
    g = generators.complete_graph(4)
    points = {0: _pt(0, 0), 1: _pt(4, 0), 2: _pt(2, 4), 3: _pt(2, 1)}
    curves = {e.id: (points[e.u], points[e.v]) for e in g.edges}
    return ingest_polylines(PolylineDrawing(g, points, curves))


@pytest.fixture
def adjacent_crossing() -> PlanarizedDrawing:
    """Edges 0-1 and 0-2 leave vertex 0 and cross once at (16/5, 4/5)."""
    g = Multigraph.from_edges([(0, 1), (0, 2)])
    points = {0: _pt(0, 0), 1: _pt(4, 0), 2: _pt(2, 4)}
    curves = {
        0: (points[0], _pt(2, 2), points[1]),
        1: (points[0], _pt(4, 1), points[2]),
    }
    return ingest_polylines(PolylineDrawing(g, points, curves))


@pytest.fixture
def single_edge() -> PlanarizedDrawing:
    g = generators.path(2)
    points = {0: _pt(0, 0), 1: _pt(1, 0)}
    return ingest_polylines(PolylineDrawing(g, points, {0: (points[0], points[1])}))
