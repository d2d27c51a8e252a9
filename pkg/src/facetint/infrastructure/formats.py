"""Line-oriented text formats: graphs (.g), orientations (.or), polylines (.poly),
combinatorial maps (.cmap) and face colorings (.fc).

Every parser skips blank lines and ``#`` comments and reports the offending
line number in a ``FormatError``. Serializers emit the canonical form, which
parses back to the same value.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterator
from fractions import Fraction
from pathlib import Path
from typing import TypeVar

from facetint.domain.drawing import (
    FaceStructure,
    PlanarizedDrawing,
    PlanarVertex,
    Point,
    PolylineDrawing,
    VertexKind,
)
from facetint.domain.entities import FaceColoring
from facetint.domain.exceptions import FacetintError, FormatError
from facetint.domain.graph import Edge, Multigraph
from facetint.domain.orientation import Orientation, Z3Flow
from facetint.services.drawing import face_orbits, faces, validate_drawing

T = TypeVar("T")

_INT = r"-?\d+"
_RATIONAL = r"-?\d+(?:/\d+)?"
_POINT_RE = re.compile(rf"^(?P<x>{_RATIONAL}),(?P<y>{_RATIONAL})$")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _int(token: str, number: int) -> int:
    if not re.fullmatch(_INT, token):
        raise FormatError(f"line {number}: expected an integer, got '{token}'")
    return int(token)


def _rational(token: str, number: int) -> Fraction:
    if not re.fullmatch(_RATIONAL, token):
        raise FormatError(f"line {number}: expected a rational p/q, got '{token}'")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"line {number}: zero denominator in '{token}'") from None


def _point(token: str, number: int) -> Point:
    match = _POINT_RE.match(token)
    if not match:
        raise FormatError(f"line {number}: expected a point x,y, got '{token}'")
    return _rational(match["x"], number), _rational(match["y"], number)


def _fmt_point(p: Point) -> str:
    return f"{p[0]},{p[1]}"


def _arity(tokens: list[str], count: int, number: int) -> None:
    if len(tokens) != count:
        raise FormatError(f"line {number}: '{tokens[0]}' takes {count - 1} fields")


def _checked(number: int | None, build: Callable[[], T]) -> T:
    """Re-raise domain validation errors as format errors."""
    try:
        return build()
    except FormatError:
        raise
    except FacetintError as exc:
        where = f"line {number}: " if number is not None else ""
        raise FormatError(f"{where}{exc}") from exc


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ── Graphs ─────────────────────────────────────────────────────────────────


def parse_graph(text: str) -> Multigraph:
    vertices: list[int] = []
    edges: list[Edge] = []
    for number, tokens in _lines(text):
        if tokens[0] == "v":
            _arity(tokens, 2, number)
            vertices.append(_int(tokens[1], number))
        elif tokens[0] == "e":
            _arity(tokens, 4, number)
            edges.append(Edge(*(_int(t, number) for t in tokens[1:])))
        else:
            raise FormatError(f"line {number}: unknown record '{tokens[0]}'")
    return _checked(None, lambda: Multigraph(tuple(vertices), tuple(edges)))


def serialize_graph(g: Multigraph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {e.id} {e.u} {e.v}" for e in g.edges]
    return "".join(f"{line}\n" for line in lines)


# ── Orientations and flows ─────────────────────────────────────────────────


def parse_orientation(text: str, g: Multigraph) -> Orientation | Z3Flow:
    """Arcs ``a <edge> <tail> <head>``; any ``f <edge> <value>`` line makes it a flow."""
    arcs: dict[int, tuple[int, int]] = {}
    values: dict[int, int] = {}
    for number, tokens in _lines(text):
        if tokens[0] == "a":
            _arity(tokens, 4, number)
            edge, tail, head = (_int(t, number) for t in tokens[1:])
            if edge in arcs:
                raise FormatError(f"line {number}: edge {edge} oriented twice")
            arcs[edge] = (tail, head)
        elif tokens[0] == "f":
            _arity(tokens, 3, number)
            values[_int(tokens[1], number)] = _int(tokens[2], number)
        else:
            raise FormatError(f"line {number}: unknown record '{tokens[0]}'")
    if set(arcs) != {e.id for e in g.edges}:
        raise FormatError("orientation must list every edge of the graph exactly once")
    orientation = _checked(None, lambda: Orientation.from_arcs(g, arcs))
    if not values:
        return orientation
    return _checked(None, lambda: Z3Flow(orientation, values))


def serialize_orientation(o: Orientation | Z3Flow) -> str:
    orientation = o.orientation if isinstance(o, Z3Flow) else o
    lines = [f"a {e} {tail} {head}" for e, (tail, head) in sorted(orientation.arcs().items())]
    if isinstance(o, Z3Flow):
        lines += [f"f {e} {value}" for e, value in sorted(o.values.items())]
    return "".join(f"{line}\n" for line in lines)


# ── Polyline drawings ──────────────────────────────────────────────────────


def parse_polylines(text: str) -> PolylineDrawing:
    """``v <id> <x> <y>`` and ``e <id> <u> <v> : <x,y> ...`` with the full curve."""
    points: dict[int, Point] = {}
    edges: list[Edge] = []
    curves: dict[int, tuple[Point, ...]] = {}
    for number, tokens in _lines(text):
        if tokens[0] == "v":
            _arity(tokens, 4, number)
            points[_int(tokens[1], number)] = (
                _rational(tokens[2], number),
                _rational(tokens[3], number),
            )
        elif tokens[0] == "e":
            if len(tokens) < 7 or tokens[4] != ":":
                raise FormatError(f"line {number}: expected 'e <id> <u> <v> : <x,y> <x,y> ...'")
            edge = Edge(*(_int(t, number) for t in tokens[1:4]))
            edges.append(edge)
            curves[edge.id] = tuple(_point(t, number) for t in tokens[5:])
        else:
            raise FormatError(f"line {number}: unknown record '{tokens[0]}'")
    graph = _checked(None, lambda: Multigraph(tuple(points), tuple(edges)))
    return PolylineDrawing(graph, points, curves)


def serialize_polylines(p: PolylineDrawing) -> str:
    lines = [f"v {v} {p.points[v][0]} {p.points[v][1]}" for v in p.graph.vertices]
    for e in p.graph.edges:
        curve = " ".join(_fmt_point(q) for q in p.curves[e.id])
        lines.append(f"e {e.id} {e.u} {e.v} : {curve}")
    return "".join(f"{line}\n" for line in lines)


# ── Combinatorial maps ─────────────────────────────────────────────────────


def _dart_token(token: str, number: int) -> int:
    """``+s`` / ``s`` runs along segment s, ``-s`` runs back."""
    backward = token.startswith("-")
    s = _int(token.lstrip("+-"), number)
    return 2 * s + 1 if backward else 2 * s


def _fmt_dart(dart: int) -> str:
    return f"{'-' if dart & 1 else '+'}{dart >> 1}"


def parse_cmap(text: str) -> PlanarizedDrawing:
    vertices: dict[int, PlanarVertex] = {}
    segments: dict[int, tuple[int, int]] = {}
    rotation: dict[int, tuple[int, ...]] = {}
    trails: dict[int, tuple[int, ...]] = {}
    positions: dict[int, Point] = {}
    bends: dict[int, tuple[Point, ...]] = {}
    outer: tuple[int, int] | None = None
    for number, tokens in _lines(text):
        kind = tokens[0]
        if kind == "pv":
            pv = _int(tokens[1], number) if len(tokens) > 1 else -1
            if len(tokens) == 4 and tokens[2] == "normal":
                vertices[pv] = PlanarVertex(VertexKind.NORMAL, _int(tokens[3], number))
            elif len(tokens) == 3 and tokens[2] == "crossing":
                vertices[pv] = PlanarVertex(VertexKind.CROSSING)
            else:
                raise FormatError(f"line {number}: expected 'pv <id> normal <v>|crossing'")
        elif kind == "seg":
            _arity(tokens, 4, number)
            s, a, b = (_int(t, number) for t in tokens[1:])
            segments[s] = (a, b)
        elif kind == "rot":
            if len(tokens) < 2:
                raise FormatError(f"line {number}: expected 'rot <pv> <±seg> ...'")
            rotation[_int(tokens[1], number)] = tuple(_dart_token(t, number) for t in tokens[2:])
        elif kind == "trail":
            if len(tokens) < 3:
                raise FormatError(f"line {number}: expected 'trail <edge> <±seg> ...'")
            trails[_int(tokens[1], number)] = tuple(_dart_token(t, number) for t in tokens[2:])
        elif kind == "outer":
            _arity(tokens, 2, number)
            outer = (_int(tokens[1], number), number)
        elif kind == "pos":
            _arity(tokens, 4, number)
            positions[_int(tokens[1], number)] = (
                _rational(tokens[2], number),
                _rational(tokens[3], number),
            )
        elif kind == "bend":
            if len(tokens) < 2:
                raise FormatError(f"line {number}: expected 'bend <seg> <x,y> ...'")
            bends[_int(tokens[1], number)] = tuple(_point(t, number) for t in tokens[2:])
        else:
            raise FormatError(f"line {number}: unknown record '{kind}'")

    for pv in vertices:
        rotation.setdefault(pv, ())
    graph = _checked(None, lambda: _underlying(vertices, segments, trails))
    draft = PlanarizedDrawing(vertices, segments, rotation, trails, graph, None)
    outer_dart = None
    if segments:
        if outer is None:
            raise FormatError("a map with segments must declare its outer face")
        index, number = outer
        try:
            orbits = face_orbits(draft)
        except KeyError:
            raise FormatError("rotations must list every dart of every segment") from None
        if not 0 <= index < len(orbits):
            raise FormatError(f"line {number}: outer face {index} does not exist")
        outer_dart = orbits[index][0]
    drawing = PlanarizedDrawing(
        vertices,
        segments,
        rotation,
        trails,
        graph,
        outer_dart,
        positions or None,
        bends or None,
    )
    return _checked(None, lambda: validate_drawing(drawing))


def _underlying(
    vertices: dict[int, PlanarVertex],
    segments: dict[int, tuple[int, int]],
    trails: dict[int, tuple[int, ...]],
) -> Multigraph:
    def end(dart: int, head: bool) -> int:
        a, b = segments[dart >> 1]
        pv = (b if dart & 1 == 0 else a) if head else (a if dart & 1 == 0 else b)
        original = vertices[pv].original
        if original is None:
            raise FormatError(f"trail ends at crossing {pv}")
        return original

    originals = [pv.original for pv in vertices.values() if pv.kind is VertexKind.NORMAL]
    try:
        edges = tuple(Edge(e, end(t[0], False), end(t[-1], True)) for e, t in trails.items())
    except KeyError as exc:
        raise FormatError(f"trail uses unknown segment or vertex {exc}") from None
    return Multigraph(tuple(v for v in originals if v is not None), edges)


def serialize_cmap(d: PlanarizedDrawing) -> str:
    lines: list[str] = []
    for pv in sorted(d.vertices):
        vertex = d.vertices[pv]
        if vertex.kind is VertexKind.NORMAL:
            lines.append(f"pv {pv} normal {vertex.original}")
        else:
            lines.append(f"pv {pv} crossing")
    lines += [f"seg {s} {a} {b}" for s, (a, b) in sorted(d.segments.items())]
    for pv in sorted(d.vertices):
        lines.append(" ".join(["rot", str(pv), *map(_fmt_dart, d.rotation.get(pv, ()))]))
    for e in sorted(d.trails):
        lines.append(" ".join(["trail", str(e), *map(_fmt_dart, d.trails[e])]))
    if d.segments:
        lines.append(f"outer {faces(d).outer}")
    for pv, p in sorted((d.positions or {}).items()):
        lines.append(f"pos {pv} {p[0]} {p[1]}")
    for s, pts in sorted((d.bends or {}).items()):
        if pts:
            lines.append(" ".join(["bend", str(s), *map(_fmt_point, pts)]))
    return "".join(f"{line}\n" for line in lines)


# ── Face colorings ─────────────────────────────────────────────────────────


def parse_coloring(text: str) -> FaceColoring:
    k: int | None = None
    colors: dict[int, int] = {}
    for number, tokens in _lines(text):
        if tokens[0] == "k":
            _arity(tokens, 2, number)
            k = _int(tokens[1], number)
        elif tokens[0] == "f":
            _arity(tokens, 3, number)
            face = _int(tokens[1], number)
            if face in colors:
                raise FormatError(f"line {number}: face {face} colored twice")
            colors[face] = _int(tokens[2], number)
        else:
            raise FormatError(f"line {number}: unknown record '{tokens[0]}'")
    if k is None or k <= 0:
        raise FormatError("coloring needs a positive 'k <k>' line")
    return FaceColoring(colors, k)


def serialize_coloring(c: FaceColoring) -> str:
    lines = [f"k {c.k}"] + [f"f {f} {color}" for f, color in sorted(c.colors.items())]
    return "".join(f"{line}\n" for line in lines)


# ── Face listings ──────────────────────────────────────────────────────────


def serialize_faces(structure: FaceStructure) -> str:
    """``outer <id>`` then one ``f <id> <darts>`` line per face, darts as in .cmap."""
    lines = [f"outer {structure.outer}"]
    lines += [
        " ".join(["f", str(f), *map(_fmt_dart, orbit)])
        for f, orbit in enumerate(structure.orbits)
    ]
    return "".join(f"{line}\n" for line in lines)
