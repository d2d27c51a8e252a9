"""Face colorings of planarized drawings and their duality with 3-flows."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Mapping

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.drawing import (
    FaceStructure,
    PlanarizedDrawing,
    PlanarVertex,
    VertexKind,
    twin,
)
from facetint.domain.entities import FaceColoring
from facetint.domain.exceptions import ColoringError, InvalidInputError
from facetint.domain.graph import Edge, Multigraph
from facetint.domain.orientation import Orientation
from facetint.domain.value_objects import SearchGuards
from facetint.services.drawing import (
    dual,
    faces,
    is_good_drawing,
    outer_face_vertices,
    place_vertex_at_crossing,
    planar_graph,
    validate_drawing,
)
from facetint.services.flow3 import k3nplus_h_orientation
from facetint.services.map_editor import DartMap, MapEditor
from facetint.services.multigraph import (
    bridges,
    recognize_k3n_plus,
    shortest_cycle,
)
from facetint.services.planarize import circle_planarization

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()


# ── Validation and transfer ────────────────────────────────────────────────


def validate_coloring(
    d: PlanarizedDrawing, c: FaceColoring, structure: FaceStructure | None = None
) -> FaceColoring:
    """Return ``c`` if it colors every face in range and both sides of every segment differ."""
    structure = structure or faces(d)
    if set(c.colors) != set(range(structure.count)):
        raise ColoringError("coloring must assign a color to every face exactly once")
    for f, color in c.colors.items():
        if not 0 <= color < c.k:
            raise ColoringError(f"face {f} has color {color} outside 0..{c.k - 1}")
    for s in d.segments:
        if c[structure.left(2 * s)] == c[structure.right(2 * s)]:
            raise ColoringError(f"segment {s} has the same color on both sides")
    return c


def pull_coloring(
    before: PlanarizedDrawing,
    after: PlanarizedDrawing,
    dart_map: DartMap,
    coloring: FaceColoring,
) -> FaceColoring:
    """Color every face of ``before`` like the face of ``after`` that carries its darts."""
    old, new = faces(before), faces(after)
    colors: dict[int, int] = {}
    for f, orbit in enumerate(old.orbits):
        image = next((dart_map[a] for a in orbit if dart_map.get(a) is not None), None)
        if image is None:
            raise ColoringError(f"face {f} has no surviving dart")
        colors[f] = coloring[new.left(image)]
    return FaceColoring(colors, coloring.k)


def push_coloring(
    before: PlanarizedDrawing,
    after: PlanarizedDrawing,
    dart_map: DartMap,
    coloring: FaceColoring,
) -> FaceColoring:
    old, new = faces(before), faces(after)
    colors: dict[int, int] = {}
    for original, image in dart_map.items():
        if image is not None:
            colors.setdefault(new.left(image), coloring[old.left(original)])
    if len(colors) != new.count:
        raise ColoringError("some face of the edited drawing has no preimage")
    return FaceColoring(colors, coloring.k)


# ── Exact colorings ────────────────────────────────────────────────────────


class _Dsatur:
    """Backtracking over the dual, most saturated face first."""

    def __init__(self, adjacency: Mapping[int, set[int]], k: int, first: int) -> None:
        self.adjacency = adjacency
        self.k = k
        self.first = first
        self.colors: dict[int, int] = {}

    def run(self) -> dict[int, int] | None:
        self.colors[self.first] = 0
        return dict(self.colors) if self._extend(1) else None

    def _pick(self) -> int:
        def key(f: int) -> tuple[int, int, int]:
            seen = {self.colors[g] for g in self.adjacency[f] if g in self.colors}
            return (-len(seen), -len(self.adjacency[f]), f)

        return min((f for f in self.adjacency if f not in self.colors), key=key)

    def _extend(self, max_used: int) -> bool:
        if len(self.colors) == len(self.adjacency):
            return True
        f = self._pick()
        blocked = {self.colors[g] for g in self.adjacency[f] if g in self.colors}
        for color in range(min(self.k, max_used + 1)):
            if color in blocked:
                continue
            self.colors[f] = color
            if self._extend(max(max_used, color + 1)):
                return True
            del self.colors[f]
        return False


def color_faces_exact(d: PlanarizedDrawing, k: int) -> FaceColoring | None:
    """Proper face-k-coloring (k in 2..4) by exhaustive search, or None."""
    if k not in (2, 3, 4):
        raise InvalidInputError(f"face colorings are supported for k in 2..4, got {k}")
    if not d.segments:
        return FaceColoring({0: 0}, k)
    g = dual(d)
    if any(e.is_loop for e in g.graph.edges):
        logger.debug("dual has a loop; no face coloring for any k")
        return None
    adjacency: dict[int, set[int]] = {f: set() for f in g.graph.vertices}
    for e in g.graph.edges:
        adjacency[e.u].add(e.v)
        adjacency[e.v].add(e.u)
    colors = _Dsatur(adjacency, k, g.faces.outer).run()
    if colors is None:
        return None
    return validate_coloring(d, FaceColoring(colors, k), g.faces)


def face_2_coloring(d: PlanarizedDrawing) -> FaceColoring | None:
    """Two-coloring from a bipartition of the dual; the outer face gets color 0."""
    if not d.segments:
        return FaceColoring({0: 0}, 2)
    g = dual(d)
    try:
        sides = nx.bipartite.color(g.graph.to_networkx())
    except nx.NetworkXError:
        return None
    flip = sides[g.faces.outer]
    return FaceColoring({f: side ^ flip for f, side in sides.items()}, 2)


# ── Flows and colorings ────────────────────────────────────────────────────


def lift_orientation(d: PlanarizedDrawing, o: Orientation) -> Orientation:
    """Direct every segment along the trail of its edge, following ``o``."""
    if {e.id for e in o.graph.edges} != {e.id for e in d.underlying.edges}:
        raise InvalidInputError("orientation does not belong to the drawn graph")
    forward: dict[int, bool] = {}
    for e, trail in d.trails.items():
        for dart in trail:
            forward[dart >> 1] = (dart & 1 == 0) == o.forward[e]
    return Orientation(planar_graph(d), forward)


def coloring_from_mod3(d: PlanarizedDrawing, o: Orientation) -> FaceColoring:
    """Face-3-coloring from a modulo-3-orientation of the planarization.

    The outer face gets 0. Across a directed segment the color on its right
    exceeds the color on its left by one.
    """
    if set(o.forward) != set(d.segments):
        raise InvalidInputError("orientation must direct every segment of the drawing")
    if not o.is_mod3():
        raise ColoringError("orientation is not a modulo-3-orientation")
    structure = faces(d)
    if not d.segments:
        return FaceColoring({0: 0}, 3)
    directed = {s: 2 * s if o.forward[s] else 2 * s + 1 for s in d.segments}
    colors = {structure.outer: 0}
    queue = deque([structure.outer])
    while queue:
        f = queue.popleft()
        for dart in structure.orbits[f]:
            g = structure.right(dart)
            if g in colors:
                continue
            step = 1 if directed[dart >> 1] == dart else -1
            colors[g] = (colors[f] + step) % 3
            queue.append(g)
    for s, dart in directed.items():
        if (colors[structure.right(dart)] - colors[structure.left(dart)]) % 3 != 1:
            raise ColoringError(f"coloring potential is inconsistent at segment {s}")
    return FaceColoring(colors, 3)


def mod3_from_coloring(d: PlanarizedDrawing, c: FaceColoring) -> Orientation:
    """Direct each segment so the color on its right is one more than on its left."""
    if c.k != 3:
        raise InvalidInputError("a modulo-3-orientation needs a 3-coloring")
    structure = faces(d)
    forward: dict[int, bool] = {}
    for s in d.segments:
        step = (c[structure.right(2 * s)] - c[structure.left(2 * s)]) % 3
        if step == 0:
            raise ColoringError(f"segment {s} has the same color on both sides")
        forward[s] = step == 1
    return Orientation(planar_graph(d), forward)


# ── Constructions ──────────────────────────────────────────────────────────


def outerface_3coloring(d: PlanarizedDrawing) -> FaceColoring:
    """3-coloring of a drawing with every vertex on the outer face.

    A new vertex in the outer face is joined to every odd vertex without new
    crossings; the resulting Eulerian drawing is 2-colored and the outer face
    of ``d`` is recolored 2.
    """
    g = d.underlying
    if bridges(g):
        raise InvalidInputError("outer-face coloring needs a bridgeless graph")
    structure = faces(d)
    on_outer = outer_face_vertices(d, structure)
    missing = sorted(v for v, pv in d.image.items() if pv not in on_outer)
    if missing:
        raise InvalidInputError(f"vertices {missing} are not on the outer face")
    if not d.segments:
        return FaceColoring({0: 2}, 3)

    odd = {d.image[v] for v in g.vertices if g.degree_of(v) % 2}
    if odd:
        plus, carried = _join_odd_vertices(d, structure, odd)
        two = face_2_coloring(plus)
        if two is None:
            raise ColoringError("augmented drawing is not face-2-colorable")
        plus_faces = faces(plus)
        colors = {f: two[plus_faces.left(orbit[0])] for f, orbit in enumerate(structure.orbits)}
        logger.debug("outer-face coloring joined %d odd vertices (%d darts)", len(odd), carried)
    else:
        two = face_2_coloring(d)
        if two is None:
            raise ColoringError("Eulerian drawing is not face-2-colorable")
        colors = dict(two.colors)
    colors[structure.outer] = 2
    return validate_coloring(d, FaceColoring(colors, 3), structure)


def _join_odd_vertices(
    d: PlanarizedDrawing, structure: FaceStructure, odd: set[int]
) -> tuple[PlanarizedDrawing, int]:
    g = d.underlying
    hub = g.next_vertex_id
    hub_pv = max(d.vertices) + 1
    next_segment = max(d.segments) + 1
    next_edge = g.next_edge_id

    orbit = structure.orbits[structure.outer]
    start = orbit.index(d.outer_dart) if d.outer_dart in orbit else 0
    rotation = {v: list(rot) for v, rot in d.rotation.items()}
    segments = dict(d.segments)
    trails = dict(d.trails)
    vertices = dict(d.vertices)
    vertices[hub_pv] = PlanarVertex(VertexKind.NORMAL, hub)
    added: list[Edge] = []
    hub_darts: list[int] = []
    joined: set[int] = set()
    for a in orbit[start:] + orbit[:start]:
        w = d.origin(a)
        if w not in odd or w in joined:
            continue
        joined.add(w)
        s = next_segment
        next_segment += 1
        segments[s] = (hub_pv, w)
        rot = rotation[w]
        rot.insert(rot.index(a), 2 * s + 1)
        hub_darts.append(2 * s)
        edge = Edge(next_edge, hub, vertices[w].original)  # type: ignore[arg-type]
        next_edge += 1
        added.append(edge)
        trails[edge.id] = (2 * s,)
    rotation[hub_pv] = hub_darts[::-1]
    plus = PlanarizedDrawing(
        vertices,
        segments,
        {v: tuple(rot) for v, rot in rotation.items()},
        trails,
        Multigraph(g.vertices + (hub,), g.edges + tuple(added)),
        d.outer_dart,
    )
    return validate_drawing(plus), len(hub_darts)


def leafless_3colorable_drawing(
    g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS
) -> tuple[PlanarizedDrawing, FaceColoring]:
    """A drawing of ``g`` together with a face-3-coloring of it.

    Vertex-disjoint cycles are peeled until a forest remains; one edge of
    every peeled cycle is rerouted through a single hub point, the rest is
    drawn with all vertices on a circle.
    """
    if g.order == 0:
        raise InvalidInputError("graph has no vertices")
    for v in g.vertices:
        if g.degree_of(v) < 2:
            raise InvalidInputError(
                f"vertex {v} has degree {g.degree_of(v)}; the face around it touches itself"
            )

    # every component holds a cycle, so the hub joins them all
    chosen: list[int] = []
    remaining = g
    while (found := shortest_cycle(remaining)) is not None:
        cycle_vertices, cycle_edges = found
        chosen.append(min(cycle_edges))
        remaining = remaining.induced(set(remaining.vertices) - set(cycle_vertices))
    logger.info("peeled %d vertex-disjoint cycles", len(chosen))

    hub = g.next_vertex_id
    base = g.without_edges(chosen)
    start = base.next_edge_id
    pairs: list[tuple[int, int]] = []
    for e in chosen:
        edge = g.edge(e)
        pairs += [(hub, edge.u), (hub, edge.v)]
    spread = base.with_edges(pairs)
    drawn = circle_planarization(spread, guards=guards)
    coloring = outerface_3coloring(drawn)

    trails = {e.id: drawn.trails[e.id] for e in base.edges}
    for i, e in enumerate(chosen):
        to_u, to_v = drawn.trails[start + 2 * i], drawn.trails[start + 2 * i + 1]
        trails[e] = tuple(twin(dart) for dart in reversed(to_u)) + to_v
    hub_pv = drawn.image[hub]
    vertices = dict(drawn.vertices)
    vertices[hub_pv] = PlanarVertex(VertexKind.CROSSING)
    expanded = PlanarizedDrawing(
        vertices,
        drawn.segments,
        drawn.rotation,
        trails,
        g,
        drawn.outer_dart,
        drawn.positions,
        drawn.bends,
    )
    if len(chosen) > 1:
        return validate_drawing(expanded), validate_coloring(expanded, coloring)

    editor = MapEditor(expanded, guards)
    editor.suppress(hub_pv)
    final, dart_map = editor.build()
    moved = push_coloring(expanded, final, dart_map, coloring)
    return final, validate_coloring(final, moved)


def k3nplus_coloring(d: PlanarizedDrawing) -> FaceColoring:
    """Face-3-coloring of a good drawing of K_{3,n}^+ for n >= 4.

    Two crossing edges are replaced by a new vertex at their crossing; the
    resulting graph has an explicit modulo-3-orientation, which is lifted to
    the planarization.
    """
    found = recognize_k3n_plus(d.underlying)
    if found is None or len(found[1]) < 4:
        raise InvalidInputError("drawing is not of K_{3,n}^+ with n >= 4")
    side_a, side_b = found
    good, violations = is_good_drawing(d)
    if not good:
        raise InvalidInputError(
            f"drawing is not good ({len(violations)} violations); normalize it first"
        )
    extra = {side_a[0], side_a[1]}
    site = None
    for x in d.crossings:
        edges = [d.underlying.edge(p.edge) for p in d.passes(x)]
        if all({e.u, e.v} != extra for e in edges):
            site = x
            break
    if site is None:
        raise ColoringError("no crossing between two edges of the K_{3,n} part")

    placed, h = place_vertex_at_crossing(d, site)
    orientation = k3nplus_h_orientation(h, d.underlying.next_vertex_id, side_a, side_b)
    if not orientation.is_mod3():
        raise ColoringError("auxiliary orientation is not a modulo-3-orientation")
    coloring = coloring_from_mod3(placed, lift_orientation(placed, orientation))
    logger.info("colored K_{3,%d}^+ drawing via crossing %d", len(side_b), site)
    return validate_coloring(d, coloring)
