"""Polyline drawings in, planarized maps out.

Every intersection of curve interiors becomes a crossing vertex. All
arithmetic is exact; nothing is snapped or rounded.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.drawing import (
    PlanarizedDrawing,
    PlanarVertex,
    Point,
    PolylineDrawing,
    VertexKind,
)
from facetint.domain.exceptions import DrawingError, InvalidInputError
from facetint.domain.graph import Multigraph
from facetint.domain.value_objects import SearchGuards
from facetint.services.drawing import face_orbits, validate_drawing
from facetint.services.geometry import (
    circle_point,
    clockwise_order,
    on_segment,
    parameter,
    segment_intersection,
    segments_overlap,
    signed_area,
    sub,
)
from facetint.services.multigraph import is_connected

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()

# (piece index, parameter in [0, 1)) along a curve
Position = tuple[int, Fraction]


@dataclass(frozen=True, slots=True)
class _Piece:
    edge: int
    index: int
    a: Point
    b: Point


def _check_curves(p: PolylineDrawing) -> None:
    g = p.graph
    if set(p.points) != set(g.vertices):
        raise DrawingError("every vertex needs exactly one point")
    if len(set(p.points.values())) != len(p.points):
        raise DrawingError("vertex points must be distinct")
    if set(p.curves) != {e.id for e in g.edges}:
        raise DrawingError("every edge needs exactly one curve")
    for e in g.edges:
        curve = p.curves[e.id]
        if len(curve) < 2:
            raise DrawingError(f"curve of edge {e.id} needs at least two points")
        if curve[0] != p.points[e.u] or curve[-1] != p.points[e.v]:
            raise DrawingError(f"curve of edge {e.id} does not join its endpoints")
        for a, b in itertools.pairwise(curve):
            if a == b:
                raise DrawingError(f"curve of edge {e.id} repeats a point")


def _pieces(p: PolylineDrawing) -> list[_Piece]:
    return [
        _Piece(e, i, a, b)
        for e in sorted(p.curves)
        for i, (a, b) in enumerate(itertools.pairwise(p.curves[e]))
    ]


def _check_vertex_clearance(p: PolylineDrawing, pieces: Sequence[_Piece]) -> None:
    """Vertex points may only appear as the two ends of a curve."""
    for piece in pieces:
        last = len(p.curves[piece.edge]) - 2
        for v, q in p.points.items():
            if not on_segment(q, piece.a, piece.b):
                continue
            if (q == piece.a and piece.index == 0) or (q == piece.b and piece.index == last):
                continue
            raise DrawingError(f"curve of edge {piece.edge} passes through vertex {v}")


def _position(piece: _Piece, x: Point) -> Position:
    t = parameter(x, piece.a, piece.b)
    if t == 1:
        return piece.index + 1, Fraction(0)
    return piece.index, t


def _intersections(
    p: PolylineDrawing, pieces: Sequence[_Piece]
) -> dict[int, set[tuple[Position, Point]]]:
    """Crossing points of curve interiors, recorded per edge with their positions."""
    vertex_points = set(p.points.values())
    hits: dict[int, set[tuple[Position, Point]]] = defaultdict(set)
    for s, t in itertools.combinations(pieces, 2):
        if segments_overlap(s.a, s.b, t.a, t.b):
            raise DrawingError(f"curves of edges {s.edge} and {t.edge} overlap")
        x = segment_intersection(s.a, s.b, t.a, t.b)
        if x is None or x in vertex_points:
            continue
        if s.edge == t.edge and abs(s.index - t.index) == 1:
            shared = s.b if s.index < t.index else s.a
            if x == shared:
                continue
        hits[s.edge].add((_position(s, x), x))
        hits[t.edge].add((_position(t, x), x))
    return hits


def _segment_points(curve: Sequence[Point], start: Position, end: Position) -> list[Point]:
    """Points of ``curve`` strictly between two positions."""
    return [curve[k] for k in range(start[0] + 1, end[0] + 1) if (k, 0) < end]


def ingest_polylines(p: PolylineDrawing) -> PlanarizedDrawing:
    """Planarize an exact polyline drawing and locate its outer face."""
    _check_curves(p)
    pieces = _pieces(p)
    _check_vertex_clearance(p, pieces)
    hits = _intersections(p, pieces)

    g = p.graph
    planar_id = {v: i for i, v in enumerate(g.vertices)}
    crossing_points = sorted({x for found in hits.values() for _, x in found})
    crossing_id = {x: len(planar_id) + i for i, x in enumerate(crossing_points)}
    vertices: dict[int, PlanarVertex] = {
        pv: PlanarVertex(VertexKind.NORMAL, v) for v, pv in planar_id.items()
    }
    vertices.update({pv: PlanarVertex(VertexKind.CROSSING) for pv in crossing_id.values()})
    positions: dict[int, Point] = {planar_id[v]: pt for v, pt in p.points.items()}
    positions.update({pv: x for x, pv in crossing_id.items()})

    segments: dict[int, tuple[int, int]] = {}
    geometry: dict[int, list[Point]] = {}
    trails: dict[int, tuple[int, ...]] = {}
    for e in g.edges:
        curve = p.curves[e.id]
        nodes = [((0, Fraction(0)), curve[0], planar_id[e.u])]
        nodes += [(pos, x, crossing_id[x]) for pos, x in sorted(hits.get(e.id, ()))]
        nodes.append(((len(curve) - 1, Fraction(0)), curve[-1], planar_id[e.v]))
        trail: list[int] = []
        for (pos0, pt0, pv0), (pos1, pt1, pv1) in itertools.pairwise(nodes):
            s = len(segments)
            segments[s] = (pv0, pv1)
            geometry[s] = [pt0, *_segment_points(curve, pos0, pos1), pt1]
            trail.append(2 * s)
        trails[e.id] = tuple(trail)

    leaving: dict[int, list[tuple[int, Point]]] = {pv: [] for pv in vertices}
    for s, pts in geometry.items():
        leaving[segments[s][0]].append((2 * s, sub(pts[1], pts[0])))
        leaving[segments[s][1]].append((2 * s + 1, sub(pts[-2], pts[-1])))
    rotation = {
        pv: tuple(darts[i][0] for i in clockwise_order([vec for _, vec in darts]))
        for pv, darts in leaving.items()
    }

    simple: nx.Graph = nx.Graph()  # type: ignore[type-arg]
    simple.add_nodes_from(vertices)
    simple.add_edges_from(segments.values())
    if not nx.is_connected(simple):
        raise DrawingError("planarization is disconnected")

    draft = PlanarizedDrawing(vertices, segments, rotation, trails, g, None)
    outer_dart = _outer_dart(draft, geometry)
    drawing = PlanarizedDrawing(
        vertices,
        segments,
        rotation,
        trails,
        g,
        outer_dart,
        positions,
        {s: tuple(pts[1:-1]) for s, pts in geometry.items()},
    )
    validate_drawing(drawing)
    logger.info(
        "planarized %d vertices, %d crossings, %d segments",
        g.order,
        len(crossing_points),
        len(segments),
    )
    return drawing


def _outer_dart(d: PlanarizedDrawing, geometry: dict[int, list[Point]]) -> int | None:
    """Smallest dart of the orbit with the least signed area (the clockwise one)."""
    best: tuple[Fraction, int] | None = None
    for orbit in face_orbits(d):
        polygon: list[Point] = []
        for dart in orbit:
            pts = geometry[dart >> 1]
            polygon += (pts if dart % 2 == 0 else pts[::-1])[:-1]
        key = (signed_area(polygon), orbit[0])
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


# ── Circle drawings ────────────────────────────────────────────────────────


def _circle_points(order: Sequence[int], step: int) -> dict[int, Point] | None:
    n = len(order)
    spacing = 2 * math.pi / n
    denominator = 2 ** (8 + step // 16) * max(n, 4)
    points: dict[int, Point] = {}
    for i, v in enumerate(order):
        jitter = 0.0
        if step:
            jitter = spacing * 0.2 * (((i + 1) * 7919 * step) % 997 / 997 - 0.5)
        points[v] = circle_point(-math.pi + spacing * (i + 0.5) + jitter, denominator)
    if len(set(points.values())) != n:
        return None
    return points


def _scaled(p: Point, v: Point, k: Fraction) -> Point:
    return p[0] + v[0] * k, p[1] + v[1] * k


def _circle_curves(g: Multigraph, points: dict[int, Point]) -> dict[int, tuple[Point, ...]]:
    curves: dict[int, tuple[Point, ...]] = {}
    parallel: dict[frozenset[int], list[int]] = defaultdict(list)
    loops: dict[int, list[int]] = defaultdict(list)
    for e in g.edges:
        if e.is_loop:
            loops[e.u].append(e.id)
        else:
            parallel[frozenset((e.u, e.v))].append(e.id)
    for ids in parallel.values():
        for j, eid in enumerate(ids):
            e = g.edge(eid)
            pu, pv = points[e.u], points[e.v]
            if j == 0:
                curves[eid] = (pu, pv)
                continue
            mid = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2)
            perp = (pu[1] - pv[1], pv[0] - pu[0])
            if perp[0] * mid[0] + perp[1] * mid[1] > 0:
                perp = (-perp[0], -perp[1])
            curves[eid] = (pu, _scaled(mid, perp, Fraction(j, 4 * (len(ids) + 1))), pv)
    for v, ids in loops.items():
        p = points[v]
        inward = (-p[0], -p[1])
        tangent = (-p[1], p[0])
        eps = Fraction(1, 8 * (len(ids) + 1))
        delta = Fraction(1, 4 * (len(ids) + 1))
        for j, eid in enumerate(ids, start=1):
            base = _scaled(p, inward, j * eps)
            half = j * j * eps * delta
            curves[eid] = (p, _scaled(base, tangent, half), _scaled(base, tangent, -half), p)
    return curves


def circle_drawing(
    g: Multigraph,
    order: Sequence[int] | None = None,
    guards: SearchGuards = _DEFAULT_GUARDS,
) -> PolylineDrawing:
    """Vertices on the unit circle in ``order`` (counterclockwise), edges as chords.

    Parallel edges become two-piece detours bent toward the center and loops
    nested thin triangles. Positions are perturbed until no three curves meet
    at a point.
    """
    order = tuple(order) if order is not None else g.vertices
    if sorted(order) != list(g.vertices):
        raise InvalidInputError("order must be a permutation of the vertices")
    if not is_connected(g):
        raise InvalidInputError("circle drawing needs a connected graph")
    for step in range(guards.perturbation_cap):
        points = _circle_points(order, step)
        if points is None:
            continue
        drawing = PolylineDrawing(g, points, _circle_curves(g, points))
        try:
            planar = ingest_polylines(drawing)
        except DrawingError as exc:
            logger.debug("circle drawing step %d rejected: %s", step, exc)
            continue
        if all(planar.degree(x) == 4 for x in planar.crossings):
            return drawing
        logger.debug("circle drawing step %d: concurrent chords, perturbing", step)
    raise DrawingError(f"no generic circle drawing within {guards.perturbation_cap} perturbations")


def circle_planarization(
    g: Multigraph,
    order: Sequence[int] | None = None,
    guards: SearchGuards = _DEFAULT_GUARDS,
) -> PlanarizedDrawing:
    return ingest_polylines(circle_drawing(g, order, guards))
