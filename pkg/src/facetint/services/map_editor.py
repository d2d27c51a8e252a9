"""Mutable rotation-system editing for drawing surgeries.

A ``MapEditor`` copies a drawing, applies local edits and builds a new,
validated drawing together with a map from the original darts to the darts
that now carry them (None for deleted darts).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable
from fractions import Fraction

from facetint.domain.drawing import PlanarizedDrawing, PlanarVertex, Point, VertexKind, twin
from facetint.domain.exceptions import DrawingError, SurgeryError
from facetint.domain.graph import Multigraph
from facetint.domain.value_objects import SearchGuards
from facetint.services.drawing import face_orbits, faces, validate_drawing
from facetint.services.geometry import clockwise_order, segment_intersection, sub

logger = logging.getLogger(__name__)

DartMap = dict[int, "int | None"]


class MapEditor:
    def __init__(self, d: PlanarizedDrawing, guards: SearchGuards | None = None) -> None:
        self.guards = guards or SearchGuards()
        self.vertices: dict[int, PlanarVertex] = dict(d.vertices)
        self.segments: dict[int, list[int]] = {s: list(ends) for s, ends in d.segments.items()}
        self.rotation: dict[int, list[int]] = {v: list(d.rotation.get(v, ())) for v in d.vertices}
        self.trails: dict[int, list[int]] = {e: list(t) for e, t in d.trails.items()}
        self.underlying: Multigraph = d.underlying
        self._image: dict[int, int | None] = {dart: dart for dart in d.darts}
        self._next_vertex = max(d.vertices, default=-1) + 1
        self._next_segment = max(d.segments, default=-1) + 1
        self._outer_orbit: tuple[int, ...] = ()
        if d.segments:
            structure = faces(d)
            self._outer_orbit = structure.orbits[structure.outer]

    # ── Darts ───────────────────────────────────────────────────────────

    def origin(self, dart: int) -> int:
        return self.segments[dart >> 1][dart & 1]

    def head(self, dart: int) -> int:
        return self.segments[dart >> 1][1 - (dart & 1)]

    def image(self, dart: int) -> int | None:
        return self._image.get(dart)

    def passes_at(self, x: int) -> list[tuple[int, int, int, int]]:
        """``(edge, position, in_dart, out_dart)`` for every trail pass through ``x``."""
        found = []
        for e in sorted(self.trails):
            trail = self.trails[e]
            for i in range(len(trail) - 1):
                if self.head(trail[i]) == x:
                    found.append((e, i, twin(trail[i]), trail[i + 1]))
        return found

    # ── Primitive edits ─────────────────────────────────────────────────

    def new_vertex(self, kind: VertexKind, original: int | None = None) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self.vertices[v] = PlanarVertex(kind, original)
        self.rotation[v] = []
        return v

    def new_segment(self, a: int, b: int) -> int:
        """Segment from ``a`` to ``b``; the caller places its darts in the rotations."""
        s = self._next_segment
        self._next_segment += 1
        self.segments[s] = [a, b]
        return s

    def remove_segment(self, s: int) -> None:
        for dart in (2 * s, 2 * s + 1):
            self.rotation[self.origin(dart)].remove(dart)
        del self.segments[s]
        self._redirect({2 * s: None, 2 * s + 1: None})

    def delete_vertex(self, v: int) -> None:
        if self.rotation[v]:
            raise SurgeryError(f"cannot delete planar vertex {v} with incident darts")
        del self.vertices[v]
        del self.rotation[v]

    def insert_before(self, v: int, anchor: int, darts: Iterable[int]) -> None:
        rot = self.rotation[v]
        i = rot.index(anchor)
        rot[i:i] = list(darts)

    def _redirect(self, moves: dict[int, int | None]) -> None:
        for original, current in self._image.items():
            if current is not None and current in moves:
                self._image[original] = moves[current]

    def suppress(self, v: int) -> int:
        """Merge the two segments at a degree-2 vertex into one; return the new segment."""
        if len(self.rotation[v]) != 2:
            raise SurgeryError(f"planar vertex {v} does not have degree 2")
        d1, d2 = self.rotation[v]
        if d1 >> 1 == d2 >> 1:
            raise SurgeryError(f"planar vertex {v} lies on a closed curve without vertices")
        t1, t2 = twin(d1), twin(d2)
        u1, u2 = self.origin(t1), self.origin(t2)
        s = self.new_segment(u1, u2)
        forward, backward = 2 * s, 2 * s + 1
        rot1 = self.rotation[u1]
        rot1[rot1.index(t1)] = forward
        rot2 = self.rotation[u2]
        rot2[rot2.index(t2)] = backward
        for trail in self.trails.values():
            if self._merge_in_trail(trail, (t1, d2), forward) or self._merge_in_trail(
                trail, (t2, d1), backward
            ):
                break
        else:
            raise SurgeryError(f"no trail passes through planar vertex {v}")
        del self.segments[d1 >> 1]
        del self.segments[d2 >> 1]
        self.rotation[v] = []
        self.delete_vertex(v)
        self._redirect({t1: forward, d2: forward, t2: backward, d1: backward})
        return s

    @staticmethod
    def _merge_in_trail(trail: list[int], pair: tuple[int, int], merged: int) -> bool:
        for i in range(len(trail) - 1):
            if (trail[i], trail[i + 1]) == pair:
                trail[i : i + 2] = [merged]
                return True
        return False

    # ── Local arrangements ──────────────────────────────────────────────

    def replace_by_arrangement(self, x: int) -> None:
        """Replace ``x`` by straight chords, one per trail pass, in a small disk.

        Passes whose darts interleave around ``x`` cross exactly once at new
        4-valent crossings; the others are separated.
        """
        rot = list(self.rotation[x])
        passes = self.passes_at(x)
        index = {dart: i for i, dart in enumerate(rot)}
        chords = [(index[p[2]], index[p[3]]) for p in passes]
        points, crossings = self._chord_layout(len(rot), chords)

        ports: dict[int, int] = {}
        for dart in rot:
            port = self.new_vertex(VertexKind.CROSSING)
            self.segments[dart >> 1][dart & 1] = port
            self.rotation[port] = [dart]
            ports[dart] = port
        self.rotation[x] = []
        self.delete_vertex(x)

        crossing_vertex = {
            pair: self.new_vertex(VertexKind.CROSSING) for pair in sorted(crossings)
        }
        node_point: dict[int, Point] = {}
        leaving: dict[int, list[tuple[int, Point]]] = {c: [] for c in crossing_vertex.values()}
        chord_darts: list[list[int]] = []
        for j, (a, b) in enumerate(chords):
            on_chord = sorted(
                (t, crossing_vertex[pair], pt)
                for pair, (pt, params) in crossings.items()
                if j in pair
                for t in (params[pair.index(j)],)
            )
            nodes = [(ports[rot[a]], points[a])]
            nodes += [(c, pt) for _, c, pt in on_chord]
            nodes.append((ports[rot[b]], points[b]))
            darts: list[int] = []
            for (n0, p0), (n1, p1) in itertools.pairwise(nodes):
                s = self.new_segment(n0, n1)
                darts.append(2 * s)
                node_point[n0], node_point[n1] = p0, p1
                if n0 in leaving:
                    leaving[n0].append((2 * s, sub(p1, p0)))
                if n1 in leaving:
                    leaving[n1].append((2 * s + 1, sub(p0, p1)))
            self.rotation[nodes[0][0]].append(darts[0])
            self.rotation[nodes[-1][0]].append(twin(darts[-1]))
            chord_darts.append(darts)
        for c, out in leaving.items():
            self.rotation[c] = [out[i][0] for i in clockwise_order([vec for _, vec in out])]

        by_edge = sorted(zip(passes, chord_darts), key=lambda item: (item[0][0], -item[0][1]))
        for (e, position, _, _), darts in by_edge:
            self.trails[e][position + 1 : position + 1] = darts
        for port in ports.values():
            self.suppress(port)
        logger.debug(
            "replaced planar vertex %d by %d chords with %d crossings",
            x,
            len(chords),
            len(crossings),
        )

    def _chord_layout(
        self, k: int, chords: list[tuple[int, int]]
    ) -> tuple[list[Point], dict[tuple[int, int], tuple[Point, tuple[Fraction, Fraction]]]]:
        """Ports in convex position (clockwise by index) and chord crossings.

        Crossings map a chord pair to the point and its parameter along each chord.
        """
        for step in range(self.guards.perturbation_cap):
            points: list[Point] = []
            for i in range(k):
                shift = Fraction(step * ((i * i * 31 + 7) % 17), 97 * (step + 1))
                a = -(i + shift)
                points.append((a, a * a))
            crossings: dict[tuple[int, int], tuple[Point, tuple[Fraction, Fraction]]] = {}
            for (j, (a1, b1)), (l, (a2, b2)) in itertools.combinations(enumerate(chords), 2):
                hit = segment_intersection(points[a1], points[b1], points[a2], points[b2])
                if hit is None:
                    continue
                crossings[(j, l)] = (
                    hit,
                    (_along(hit, points[a1], points[b1]), _along(hit, points[a2], points[b2])),
                )
            if len({pt for pt, _ in crossings.values()}) == len(crossings):
                return points, crossings
        raise SurgeryError("could not separate concurrent chords")

    # ── Output ──────────────────────────────────────────────────────────

    def current_orbits(self, skip_edges: Iterable[int] = ()) -> tuple[tuple[int, ...], ...]:
        """Face orbits of the current map, ignoring the trails of ``skip_edges``."""
        skipped = set(skip_edges)
        draft = PlanarizedDrawing(
            dict(self.vertices),
            {s: (a, b) for s, (a, b) in self.segments.items()},
            {v: tuple(r) for v, r in self.rotation.items()},
            {e: tuple(t) for e, t in self.trails.items() if e not in skipped},
            self.underlying,
            None,
        )
        return face_orbits(draft)

    def _outer_dart(self) -> int | None:
        if not self.segments:
            return None
        for candidate in itertools.chain(self._outer_orbit, (twin(d) for d in self._outer_orbit)):
            img = self._image.get(candidate)
            if img is not None and img >> 1 in self.segments:
                return img
        return min(self.segments) * 2

    def build(self) -> tuple[PlanarizedDrawing, DartMap]:
        drawing = PlanarizedDrawing(
            dict(self.vertices),
            {s: (a, b) for s, (a, b) in self.segments.items()},
            {v: tuple(r) for v, r in self.rotation.items()},
            {e: tuple(t) for e, t in self.trails.items()},
            self.underlying,
            self._outer_dart(),
        )
        try:
            validate_drawing(drawing)
        except DrawingError as exc:
            raise SurgeryError(f"surgery produced an invalid map: {exc}") from exc
        return drawing, dict(self._image)


def _along(p: Point, a: Point, b: Point) -> Fraction:
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])
