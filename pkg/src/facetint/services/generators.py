"""Named graph families and small hand-made drawings."""

from __future__ import annotations

import itertools
from fractions import Fraction

from facetint.domain.drawing import Point, PolylineDrawing
from facetint.domain.exceptions import InvalidInputError
from facetint.domain.graph import Edge, Multigraph


def _pt(x: int | Fraction, y: int | Fraction) -> Point:
    return Fraction(x), Fraction(y)


# ── Graph families ─────────────────────────────────────────────────────────


def path(n: int) -> Multigraph:
    """Path on ``n`` vertices 0..n-1."""
    if n < 1:
        raise InvalidInputError("path needs at least one vertex")
    return Multigraph.from_edges(((i, i + 1) for i in range(n - 1)), vertices=range(n))


def cycle(n: int) -> Multigraph:
    """Cycle 0-1-...-(n-1)-0; ``n = 1`` is a loop and ``n = 2`` a digon."""
    if n < 1:
        raise InvalidInputError("cycle needs at least one vertex")
    return Multigraph.from_edges(((i, (i + 1) % n) for i in range(n)), vertices=range(n))


def complete_graph(n: int) -> Multigraph:
    if n < 1:
        raise InvalidInputError("complete graph needs at least one vertex")
    return Multigraph.from_edges(itertools.combinations(range(n), 2), vertices=range(n))


def complete_bipartite(m: int, n: int) -> Multigraph:
    """K_{m,n} with side A = 0..m-1, side B = m..m+n-1, edges (a, b) in lexicographic order."""
    if m < 1 or n < 1:
        raise InvalidInputError("complete bipartite graph needs two nonempty sides")
    return Multigraph.from_edges((a, m + b) for a in range(m) for b in range(n))


def k3n_plus(n: int) -> Multigraph:
    """K_{3,n} plus the edge 0-1 inside the 3-side (added last)."""
    return complete_bipartite(3, n).with_edges([(0, 1)])


def wheel(k: int) -> Multigraph:
    """Hub 0 joined to the rim cycle 1..k; W_3 is K_4."""
    if k < 3:
        raise InvalidInputError("wheel needs a rim of at least 3 vertices")
    rim = [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    spokes = [(0, 1 + i) for i in range(k)]
    return Multigraph.from_edges(rim + spokes)


def odd_wheels(up_to: int = 7) -> dict[str, Multigraph]:
    return {f"W{k}": wheel(k) for k in range(3, up_to + 1, 2)}


def petersen() -> Multigraph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i-(i+5)."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Multigraph.from_edges(outer + inner + spokes)


def digon() -> Multigraph:
    return Multigraph.from_edges([(0, 1), (0, 1)])


def single_loop() -> Multigraph:
    return Multigraph.from_edges([(0, 0)])


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    """Shift ``h``'s vertex and edge ids past ``g``'s."""
    dv, de = g.next_vertex_id, g.next_edge_id
    edges = g.edges + tuple(Edge(e.id + de, e.u + dv, e.v + dv) for e in h.edges)
    return Multigraph(g.vertices + tuple(v + dv for v in h.vertices), edges)


# ── Hand-made drawings ─────────────────────────────────────────────────────

_SQUARE = (_pt(0, 0), _pt(1, 0), _pt(1, 1), _pt(0, 1))


def _straight(g: Multigraph, points: dict[int, Point]) -> PolylineDrawing:
    curves = {e.id: (points[e.u], points[e.v]) for e in g.edges}
    return PolylineDrawing(g, points, curves)


def square_drawing() -> PolylineDrawing:
    """C_4 drawn as the unit square."""
    return _straight(cycle(4), dict(enumerate(_SQUARE)))


def triangle_drawing() -> PolylineDrawing:
    g = cycle(3)
    return _straight(g, {0: _pt(0, 0), 1: _pt(2, 0), 2: _pt(1, 2)})


def convex_k4_drawing() -> PolylineDrawing:
    """K_4 on the unit square; the two diagonals cross at the center."""
    return _straight(complete_graph(4), dict(enumerate(_SQUARE)))


def figure_eight_drawing() -> PolylineDrawing:
    """One loop at the origin crossing itself once at (2, 0)."""
    g = single_loop()
    origin = _pt(0, 0)
    curve = (origin, _pt(1, 1), _pt(3, -1), _pt(3, 1), _pt(1, -1), origin)
    return PolylineDrawing(g, {0: origin}, {0: curve})
