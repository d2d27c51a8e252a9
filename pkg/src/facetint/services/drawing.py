"""Faces, duals, validation and good-drawing checks on planarized drawings."""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from math import comb

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.drawing import (
    DualGraph,
    FaceStructure,
    PlanarizedDrawing,
    PlanarVertex,
    TrailPass,
    VertexKind,
    segment_of,
)
from facetint.domain.entities import Violation, ViolationKind
from facetint.domain.exceptions import DrawingError, InvalidInputError
from facetint.domain.graph import Edge, Multigraph

logger = logging.getLogger(__name__)


# ── Faces ──────────────────────────────────────────────────────────────────


def face_orbits(d: PlanarizedDrawing) -> tuple[tuple[int, ...], ...]:
    """Orbits of ``face_successor``, each starting at and sorted by its smallest dart."""
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for start in d.darts:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        nxt = d.face_successor(start)
        while nxt != start:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = d.face_successor(nxt)
        orbits.append(tuple(orbit))
    return tuple(orbits)


def faces(d: PlanarizedDrawing) -> FaceStructure:
    orbits = face_orbits(d)
    if not orbits:
        return FaceStructure(((),), 0)
    structure = FaceStructure(orbits, 0)
    if d.outer_dart is None:
        raise DrawingError("drawing with segments needs an outer dart")
    return FaceStructure(orbits, structure.face_of[d.outer_dart])


def dual(d: PlanarizedDrawing, structure: FaceStructure | None = None) -> DualGraph:
    """One dual edge per segment, joining the faces on its two sides."""
    structure = structure or faces(d)
    edges = tuple(
        Edge(s, structure.left(2 * s), structure.right(2 * s)) for s in sorted(d.segments)
    )
    return DualGraph(Multigraph(tuple(range(structure.count)), edges), structure)


def outer_face_vertices(d: PlanarizedDrawing, structure: FaceStructure | None = None) -> set[int]:
    structure = structure or faces(d)
    if not d.segments:
        return set(d.vertices)
    return {d.origin(dart) for dart in structure.orbits[structure.outer]}


def planar_graph(d: PlanarizedDrawing) -> Multigraph:
    """The planarization as a multigraph: planar vertex ids, one edge per segment id."""
    return Multigraph(
        tuple(d.vertices),
        tuple(Edge(s, u, v) for s, (u, v) in d.segments.items()),
    )


def trail_passes(d: PlanarizedDrawing, x: int) -> tuple[TrailPass, ...]:
    d.kind(x)
    return d.passes(x)


# ── Validation ─────────────────────────────────────────────────────────────


def validate_drawing(d: PlanarizedDrawing) -> PlanarizedDrawing:
    """Check every map invariant; return ``d`` unchanged or raise DrawingError."""
    for s, (a, b) in d.segments.items():
        if a not in d.vertices or b not in d.vertices:
            raise DrawingError(f"segment {s} has an unknown endpoint")
    if set(d.rotation) - set(d.vertices):
        raise DrawingError("rotation at an unknown planar vertex")
    listed = [dart for rot in d.rotation.values() for dart in rot]
    if sorted(listed) != sorted(d.darts):
        raise DrawingError("rotations must list every dart exactly once")
    for v, rot in d.rotation.items():
        if any(d.origin(dart) != v for dart in rot):
            raise DrawingError(f"rotation at {v} lists a dart leaving another vertex")

    if len(d.vertices) > 1:
        if not nx.is_connected(planar_graph(d).to_weighted_simple()):
            raise DrawingError("planarization is disconnected")
    elif not d.vertices:
        raise DrawingError("drawing has no vertices")
    if d.segments and (d.outer_dart is None or segment_of(d.outer_dart) not in d.segments):
        raise DrawingError(f"outer dart {d.outer_dart} is not a dart")
    if not d.segments and d.outer_dart is not None:
        raise DrawingError("outer dart given for a map without segments")
    face_count = len(face_orbits(d)) or 1
    if len(d.vertices) - len(d.segments) + face_count != 2:
        raise DrawingError("map violates Euler's formula")

    _validate_kinds(d)
    _validate_trails(d)
    return d


def _validate_kinds(d: PlanarizedDrawing) -> None:
    images: dict[int, int] = {}
    for pv, vertex in d.vertices.items():
        if vertex.kind is VertexKind.NORMAL:
            if vertex.original is None or vertex.original in images:
                raise DrawingError(f"normal vertex {pv} needs a unique original vertex")
            images[vertex.original] = pv
        elif vertex.original is not None:
            raise DrawingError(f"crossing {pv} cannot carry an original vertex")
    if set(images) != set(d.underlying.vertices):
        raise DrawingError("every abstract vertex needs exactly one image")
    for v, pv in images.items():
        if d.degree(pv) != d.underlying.degree_of(v):
            raise DrawingError(f"image of vertex {v} has the wrong degree")


def _validate_trails(d: PlanarizedDrawing) -> None:
    if set(d.trails) != {e.id for e in d.underlying.edges}:
        raise DrawingError("every abstract edge needs exactly one trail")
    used: list[int] = [segment_of(dart) for trail in d.trails.values() for dart in trail]
    if sorted(used) != sorted(d.segments):
        raise DrawingError("every segment must belong to exactly one trail")
    for e in d.underlying.edges:
        trail = d.trails[e.id]
        if not trail:
            raise DrawingError(f"trail of edge {e.id} is empty")
        if d.origin(trail[0]) != d.image[e.u] or d.head(trail[-1]) != d.image[e.v]:
            raise DrawingError(f"trail of edge {e.id} does not join its endpoints")
        for a, b in itertools.pairwise(trail):
            if d.head(a) != d.origin(b):
                raise DrawingError(f"trail of edge {e.id} is not contiguous")
            if d.kind(d.head(a)) is not VertexKind.CROSSING:
                raise DrawingError(f"trail of edge {e.id} runs through a normal vertex")
    for x in d.crossings:
        if d.degree(x) < 4 or d.degree(x) % 2:
            raise DrawingError(f"crossing {x} must have even degree at least 4")
        if 2 * len(d.passes(x)) != d.degree(x):
            raise DrawingError(f"crossing {x} is not covered by trail passes")


# ── Good drawings ──────────────────────────────────────────────────────────


def is_alternating(d: PlanarizedDrawing, x: int, first: TrailPass, second: TrailPass) -> bool:
    """At a 4-valent vertex, the passes alternate iff each pass's darts are opposite."""
    rot = d.rotation[x]
    i, j = rot.index(first.in_dart), rot.index(first.out_dart)
    k = rot.index(second.in_dart)
    lo, hi = min(i, j), max(i, j)
    return (lo < k < hi) != (lo < rot.index(second.out_dart) < hi)


def edges_adjacent(g: Multigraph, e1: int, e2: int) -> bool:
    a, b = g.edge(e1), g.edge(e2)
    return bool({a.u, a.v} & {b.u, b.v})


def find_violations(d: PlanarizedDrawing) -> list[Violation]:
    """Every site where the drawing fails to be good, in planar vertex order."""
    found: list[Violation] = []
    proper: dict[tuple[int, int], list[int]] = defaultdict(list)
    g = d.underlying
    for x in d.crossings:
        passes = d.passes(x)
        edges = tuple(sorted({p.edge for p in passes}))
        if len(passes) >= 3:
            found.append(Violation(ViolationKind.MULTI_CROSSING, (x,), edges))
            continue
        first, second = passes
        if not is_alternating(d, x, first, second):
            found.append(Violation(ViolationKind.TOUCHING, (x,), edges))
        elif first.edge == second.edge:
            found.append(Violation(ViolationKind.SELF_INTERSECTION, (x,), edges))
        elif g.edge(first.edge).is_loop or g.edge(second.edge).is_loop:
            found.append(Violation(ViolationKind.LOOP_CROSSING, (x,), edges))
        elif edges_adjacent(g, first.edge, second.edge):
            found.append(Violation(ViolationKind.ADJACENT_CROSSING, (x,), edges))
        else:
            proper[(edges[0], edges[1])].append(x)
    for pair, sites in sorted(proper.items()):
        if len(sites) >= 2:
            found.append(Violation(ViolationKind.DOUBLE_CROSSING, tuple(sites), pair))
    return found


def is_good_drawing(d: PlanarizedDrawing) -> tuple[bool, list[Violation]]:
    violations = find_violations(d)
    return not violations, violations


def crossing_triples(d: PlanarizedDrawing) -> int:
    """Pairs of trail passes meeting at a crossing, summed over crossings."""
    return sum(comb(len(d.passes(x)), 2) for x in d.crossings)


def touchings(d: PlanarizedDrawing) -> int:
    return sum(1 for v in find_violations(d) if v.kind is ViolationKind.TOUCHING)


# ── Reinterpretation ───────────────────────────────────────────────────────


def place_vertex_at_crossing(d: PlanarizedDrawing, x: int) -> tuple[PlanarizedDrawing, Multigraph]:
    """Make the 4-valent crossing ``x`` a new vertex ``u`` splitting both crossing edges.

    Edge ``u1 v1`` becomes ``u1 u`` and ``u v1`` (likewise for the second edge);
    new edge ids are assigned in the order (u1,u), (u,v1), (u2,u), (u,v2).
    The cell decomposition is unchanged.
    """
    if d.kind(x) is not VertexKind.CROSSING or d.degree(x) != 4:
        raise InvalidInputError(f"planar vertex {x} is not a 4-valent crossing")
    first, second = d.passes(x)
    if first.edge == second.edge:
        raise InvalidInputError(f"crossing {x} is a self-intersection")
    g = d.underlying
    u = g.next_vertex_id
    next_id = g.next_edge_id
    trails = {e: t for e, t in d.trails.items() if e not in (first.edge, second.edge)}
    added: list[Edge] = []
    for p in (first, second):
        e = g.edge(p.edge)
        trail = d.trails[p.edge]
        added += [Edge(next_id, e.u, u), Edge(next_id + 1, u, e.v)]
        trails[next_id] = trail[: p.position + 1]
        trails[next_id + 1] = trail[p.position + 1 :]
        next_id += 2
    h = Multigraph(
        g.vertices + (u,),
        tuple(e for e in g.edges if e.id not in (first.edge, second.edge)) + tuple(added),
    )
    vertices = dict(d.vertices)
    vertices[x] = PlanarVertex(VertexKind.NORMAL, u)
    placed = PlanarizedDrawing(
        vertices, d.segments, d.rotation, trails, h, d.outer_dart, d.positions, d.bends
    )
    return validate_drawing(placed), h
