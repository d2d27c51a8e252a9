"""Drawings: polyline geometry and the dart-based planarization map.

Dart ``2s`` runs along segment ``s`` from its first endpoint to its second,
dart ``2s + 1`` runs back. Rotations list the darts leaving a planar vertex
in clockwise order; the face to the left of dart ``d`` is traced by
``succ(d) = rotation_next(twin(d))``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

from facetint.domain.exceptions import UnknownVertexError
from facetint.domain.graph import Multigraph

Point = tuple[Fraction, Fraction]


class VertexKind(str, Enum):
    """Planar vertices are images of graph vertices or crossing points."""

    NORMAL = "normal"
    CROSSING = "crossing"


@dataclass(frozen=True, slots=True)
class PlanarVertex:
    kind: VertexKind
    original: int | None = None


@dataclass(frozen=True, slots=True)
class Dart:
    id: int
    twin: int
    segment: int
    origin: int


@dataclass(frozen=True, slots=True)
class TrailPass:
    """One traversal of a planar vertex by an edge trail, as two darts leaving it."""

    edge: int
    position: int
    in_dart: int
    out_dart: int


def twin(dart: int) -> int:
    return dart ^ 1


def segment_of(dart: int) -> int:
    return dart >> 1


def forward_dart(segment: int) -> int:
    return segment << 1


@dataclass(frozen=True)
class PlanarizedDrawing:
    """Combinatorial map of the planarization of a drawing.

    ``trails[e]`` is the dart sequence of abstract edge ``e`` from the image
    of its stored endpoint ``u`` to the image of ``v``. ``outer_dart`` lies
    on the outer face (None only for a map without segments). Geometry is
    optional and only kept for export.
    """

    vertices: Mapping[int, PlanarVertex]
    segments: Mapping[int, tuple[int, int]]
    rotation: Mapping[int, tuple[int, ...]]
    trails: Mapping[int, tuple[int, ...]]
    underlying: Multigraph
    outer_dart: int | None
    positions: Mapping[int, Point] | None = None
    bends: Mapping[int, tuple[Point, ...]] | None = None

    # ── Darts ───────────────────────────────────────────────────────────

    def origin(self, dart: int) -> int:
        return self.segments[segment_of(dart)][dart & 1]

    def head(self, dart: int) -> int:
        return self.segments[segment_of(dart)][1 - (dart & 1)]

    def dart(self, dart_id: int) -> Dart:
        return Dart(dart_id, twin(dart_id), segment_of(dart_id), self.origin(dart_id))

    @cached_property
    def darts(self) -> tuple[int, ...]:
        return tuple(d for s in sorted(self.segments) for d in (2 * s, 2 * s + 1))

    @cached_property
    def _rotation_position(self) -> dict[int, tuple[int, int]]:
        return {
            d: (v, i) for v, rot in self.rotation.items() for i, d in enumerate(rot)
        }

    def rotation_next(self, dart: int) -> int:
        """Clockwise successor of ``dart`` around its origin."""
        v, i = self._rotation_position[dart]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def rotation_prev(self, dart: int) -> int:
        v, i = self._rotation_position[dart]
        rot = self.rotation[v]
        return rot[(i - 1) % len(rot)]

    def face_successor(self, dart: int) -> int:
        return self.rotation_next(twin(dart))

    # ── Vertices and trails ─────────────────────────────────────────────

    def kind(self, pv: int) -> VertexKind:
        try:
            return self.vertices[pv].kind
        except KeyError:
            raise UnknownVertexError(f"unknown planar vertex {pv}") from None

    def degree(self, pv: int) -> int:
        return len(self.rotation.get(pv, ()))

    @cached_property
    def crossings(self) -> tuple[int, ...]:
        return tuple(
            sorted(v for v, pv in self.vertices.items() if pv.kind is VertexKind.CROSSING)
        )

    @cached_property
    def image(self) -> dict[int, int]:
        """Abstract vertex id -> planar vertex id."""
        return {
            pv.original: v
            for v, pv in self.vertices.items()
            if pv.kind is VertexKind.NORMAL and pv.original is not None
        }

    @cached_property
    def segment_owner(self) -> dict[int, tuple[int, int]]:
        """Segment id -> (edge id, index in the edge's trail)."""
        return {
            segment_of(d): (e, i) for e, trail in self.trails.items() for i, d in enumerate(trail)
        }

    def trail_vertices(self, edge_id: int) -> tuple[int, ...]:
        trail = self.trails[edge_id]
        return (self.origin(trail[0]), *(self.head(d) for d in trail))

    @cached_property
    def _passes_at(self) -> dict[int, tuple[TrailPass, ...]]:
        found: dict[int, list[TrailPass]] = {}
        for e in sorted(self.trails):
            trail = self.trails[e]
            for i in range(len(trail) - 1):
                found.setdefault(self.head(trail[i]), []).append(
                    TrailPass(e, i, twin(trail[i]), trail[i + 1])
                )
        return {v: tuple(ps) for v, ps in found.items()}

    def passes(self, pv: int) -> tuple[TrailPass, ...]:
        """Every traversal of ``pv`` through the interior of a trail."""
        return self._passes_at.get(pv, ())


@dataclass(frozen=True)
class FaceStructure:
    """Face orbits in canonical order (sorted by their smallest dart)."""

    orbits: tuple[tuple[int, ...], ...]
    outer: int

    @cached_property
    def face_of(self) -> dict[int, int]:
        return {d: f for f, orbit in enumerate(self.orbits) for d in orbit}

    @property
    def count(self) -> int:
        return len(self.orbits)

    def left(self, dart: int) -> int:
        return self.face_of[dart]

    def right(self, dart: int) -> int:
        return self.face_of[twin(dart)]


@dataclass(frozen=True)
class DualGraph:
    """Dual multigraph: vertices are face ids, dual edge ``s`` crosses segment ``s``."""

    graph: Multigraph
    faces: FaceStructure


@dataclass(frozen=True)
class PolylineDrawing:
    """Exact rational drawing: a point per vertex and a polyline per edge.

    ``curves[e]`` starts at the point of the stored endpoint ``u`` and ends at
    the point of ``v``; loops are closed polylines through their vertex.
    """

    graph: Multigraph
    points: Mapping[int, Point]
    curves: Mapping[int, tuple[Point, ...]]
