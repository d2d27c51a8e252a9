"""SVG and DOT renderings of planarized drawings, face colorings and orientations.

Coordinates are rounded for display only; nothing written here is read back.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.drawing import PlanarizedDrawing, VertexKind, segment_of
from facetint.domain.entities import FaceColoring
from facetint.domain.orientation import Orientation
from facetint.services.drawing import faces, planar_graph

logger = logging.getLogger(__name__)

PALETTE: tuple[str, ...] = (
    "#f4f1de",
    "#e07a5f",
    "#81b29a",
    "#3d5a80",
    "#f2cc8f",
    "#9c89b8",
    "#ef476f",
    "#06d6a0",
    "#118ab2",
    "#ffd166",
    "#8d99ae",
    "#6d597a",
)

_CANVAS = 480.0
_MARGIN = 24.0

XY = tuple[float, float]


def color_of(c: int) -> str:
    return PALETTE[c % len(PALETTE)]


# ── Layout ─────────────────────────────────────────────────────────────────


def _has_geometry(d: PlanarizedDrawing) -> bool:
    return d.positions is not None and set(d.positions) >= set(d.vertices)


def _raw_layout(d: PlanarizedDrawing) -> dict[int, XY]:
    if _has_geometry(d):
        assert d.positions is not None
        return {pv: (float(p[0]), float(p[1])) for pv, p in d.positions.items()}
    graph = planar_graph(d).to_weighted_simple()
    layout = nx.spring_layout(graph, seed=7) if graph.number_of_nodes() > 1 else {}
    return {pv: (float(xy[0]), float(xy[1])) for pv, xy in layout.items()} | {
        pv: (0.0, 0.0) for pv in d.vertices if pv not in layout
    }


class _Frame:
    """Maps drawing coordinates onto the canvas (y axis pointing down)."""

    def __init__(self, points: Sequence[XY]) -> None:
        xs = [p[0] for p in points] or [0.0]
        ys = [p[1] for p in points] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-9)
        self.scale = (_CANVAS - 2 * _MARGIN) / span

    def __call__(self, p: XY) -> XY:
        return (
            round(_MARGIN + (p[0] - self.x0) * self.scale, 2),
            round(_MARGIN + (self.y1 - p[1]) * self.scale, 2),
        )


def _segment_path(
    d: PlanarizedDrawing,
    layout: Mapping[int, XY],
    bends: Mapping[int, list[XY]],
    dart: int,
) -> list[XY]:
    """Points along ``dart`` from its origin to its head."""
    s = segment_of(dart)
    path = [layout[d.segments[s][0]], *bends.get(s, []), layout[d.segments[s][1]]]
    return path if dart % 2 == 0 else path[::-1]


def _points_attr(points: Sequence[XY]) -> str:
    return " ".join(f"{x},{y}" for x, y in points)


# ── SVG ────────────────────────────────────────────────────────────────────


def _segment_directions(d: PlanarizedDrawing, orientation: Orientation) -> dict[int, int]:
    """Dart to draw for every segment so that trails follow the orientation."""
    chosen: dict[int, int] = {}
    for e, trail in d.trails.items():
        forward = orientation.tail(e) == d.underlying.edge(e).u
        for dart in trail:
            chosen[segment_of(dart)] = dart if forward else dart ^ 1
    return chosen


def export_svg(
    d: PlanarizedDrawing,
    coloring: FaceColoring | None = None,
    orientation: Orientation | None = None,
) -> str:
    """Render ``d`` as a standalone SVG document.

    Faces are filled from ``coloring`` when the drawing carries geometry; a
    drawing without positions is laid out by a seeded spring embedding and
    shows face colors as markers at the face centroids instead.
    """
    geometric = _has_geometry(d)
    raw = _raw_layout(d)
    raw_bends: dict[int, list[XY]] = {}
    if geometric and d.bends is not None:
        raw_bends = {s: [(float(x), float(y)) for x, y in pts] for s, pts in d.bends.items()}
    frame = _Frame([*raw.values(), *(p for pts in raw_bends.values() for p in pts)])
    layout = {pv: frame(xy) for pv, xy in raw.items()}
    bends = {s: [frame(p) for p in pts] for s, pts in raw_bends.items()}

    def path_of(dart: int) -> list[XY]:
        return _segment_path(d, layout, bends, dart)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS:g}" height="{_CANVAS:g}" '
        f'viewBox="0 0 {_CANVAS:g} {_CANVAS:g}">',
        "  <defs>",
        '    <marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" '
        'markerWidth="8" markerHeight="8" orient="auto-start-reverse">',
        '      <path d="M 0 0 L 10 5 L 0 10 z" fill="#222"/>',
        "    </marker>",
        "  </defs>",
    ]

    if coloring is not None and d.segments:
        structure = faces(d)
        out.append(
            f'  <rect width="100%" height="100%" fill="{color_of(coloring[structure.outer])}"/>'
        )
        for f, orbit in enumerate(structure.orbits):
            if f == structure.outer:
                continue
            boundary = [p for dart in orbit for p in path_of(dart)[:-1]]
            if geometric:
                out.append(
                    f'  <polygon class="face" data-face="{f}" points="{_points_attr(boundary)}" '
                    f'fill="{color_of(coloring[f])}" stroke="none"/>'
                )
            else:
                cx = round(sum(p[0] for p in boundary) / len(boundary), 2)
                cy = round(sum(p[1] for p in boundary) / len(boundary), 2)
                out.append(
                    f'  <circle class="face" data-face="{f}" cx="{cx}" cy="{cy}" r="9" '
                    f'fill="{color_of(coloring[f])}" stroke="#444"/>'
                )

    directions = _segment_directions(d, orientation) if orientation is not None else {}
    for s in sorted(d.segments):
        dart = directions.get(s, 2 * s)
        head_is_end = d.kind(d.head(dart)) is VertexKind.NORMAL
        marker = ' marker-end="url(#arrow)"' if s in directions and head_is_end else ""
        out.append(
            f'  <polyline class="segment" data-segment="{s}" '
            f'points="{_points_attr(path_of(dart))}" fill="none" stroke="#222" '
            f'stroke-width="1.5"{marker}/>'
        )

    for pv in sorted(d.vertices):
        x, y = layout[pv]
        if d.kind(pv) is VertexKind.CROSSING:
            out.append(f'  <circle class="crossing" cx="{x}" cy="{y}" r="2" fill="#222"/>')
        else:
            label = d.vertices[pv].original
            out.append(
                f'  <circle class="vertex" cx="{x}" cy="{y}" r="6" fill="#fff" stroke="#222"/>'
            )
            out.append(
                f'  <text x="{x}" y="{round(y - 9, 2)}" font-size="10" '
                f'text-anchor="middle">{label}</text>'
            )
    out.append("</svg>")
    logger.debug("svg export: %d planar vertices, %d segments", len(d.vertices), len(d.segments))
    return "\n".join(out) + "\n"


# ── DOT ────────────────────────────────────────────────────────────────────


def export_dot(
    d: PlanarizedDrawing,
    coloring: FaceColoring | None = None,
    orientation: Orientation | None = None,
) -> str:
    """Graphviz text for the planarization.

    Crossings are point-shaped nodes, positions are pinned for ``neato -n``
    when the drawing has geometry, oriented segments carry ``dir=forward`` and
    a coloring labels every segment with the colors on its left and right.
    """
    structure = faces(d) if coloring is not None and d.segments else None
    directions = _segment_directions(d, orientation) if orientation is not None else {}
    lines = ["graph facetint {", "    node [shape=circle];"]
    for pv in sorted(d.vertices):
        attrs: list[str] = []
        if d.kind(pv) is VertexKind.CROSSING:
            attrs += ["shape=point", 'label=""']
        else:
            attrs.append(f'label="{d.vertices[pv].original}"')
        if d.positions is not None and pv in d.positions:
            x, y = d.positions[pv]
            attrs.append(f'pos="{float(x):g},{float(y):g}!"')
        lines.append(f'    "{pv}" [{", ".join(attrs)}];')
    for s in sorted(d.segments):
        dart = directions.get(s, 2 * s)
        attrs = []
        if s in directions:
            attrs.append("dir=forward")
        if structure is not None and coloring is not None:
            left, right = coloring[structure.left(dart)], coloring[structure.right(dart)]
            attrs.append(f'label="{left}|{right}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'    "{d.origin(dart)}" -- "{d.head(dart)}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"
