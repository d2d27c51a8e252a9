"""Good-drawing normalization by local surgery on the rotation system.

Every surgery returns a ``SurgeryStep`` holding the drawing before and after,
the measure bookkeeping, and the dart correspondence used to carry face
colorings back through the step.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from facetint.domain.drawing import PlanarizedDrawing, TrailPass, VertexKind, twin
from facetint.domain.entities import FaceColoring, SurgeryReport, ViolationKind
from facetint.domain.exceptions import InvalidInputError, SurgeryError
from facetint.domain.orientation import Orientation
from facetint.domain.value_objects import SearchGuards
from facetint.services.drawing import (
    crossing_triples,
    edges_adjacent,
    find_violations,
    is_alternating,
    planar_graph,
    touchings,
)
from facetint.services.facecolor import coloring_from_mod3, mod3_from_coloring, pull_coloring
from facetint.services.map_editor import DartMap, MapEditor
from facetint.services.multigraph import is_connected

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()

_PRIORITY = (
    ViolationKind.MULTI_CROSSING,
    ViolationKind.TOUCHING,
    ViolationKind.SELF_INTERSECTION,
    ViolationKind.LOOP_CROSSING,
    ViolationKind.ADJACENT_CROSSING,
    ViolationKind.DOUBLE_CROSSING,
)


@dataclass(frozen=True)
class SurgeryStep:
    operation: str
    before: PlanarizedDrawing
    after: PlanarizedDrawing
    report: SurgeryReport
    dart_map: DartMap
    loop_edge: int | None = None


def _step(
    operation: str,
    before: PlanarizedDrawing,
    after: PlanarizedDrawing,
    dart_map: DartMap,
    sites: Sequence[int],
    edges: Sequence[int],
    loop_edge: int | None = None,
) -> SurgeryStep:
    report = SurgeryReport(
        operation,
        tuple(sites),
        tuple(sorted(edges)),
        crossing_triples(before),
        crossing_triples(after),
        touchings(before),
        touchings(after),
    )
    logger.debug(
        "%s at %s: triples %d -> %d, touchings %d -> %d",
        operation,
        report.sites,
        report.triples_before,
        report.triples_after,
        report.touchings_before,
        report.touchings_after,
    )
    return SurgeryStep(operation, before, after, report, dart_map, loop_edge)


def _two_passes(d: PlanarizedDrawing, site: int, operation: str) -> tuple[TrailPass, TrailPass]:
    if site not in d.vertices or d.kind(site) is not VertexKind.CROSSING:
        raise SurgeryError(f"{operation}: planar vertex {site} is not a crossing")
    passes = d.passes(site)
    if len(passes) != 2:
        raise SurgeryError(f"{operation}: crossing {site} has {len(passes)} passes, expected 2")
    return passes[0], passes[1]


def _reversed_trail(trail: Sequence[int]) -> list[int]:
    return [twin(dart) for dart in reversed(trail)]


# ── Local surgeries ────────────────────────────────────────────────────────


def split_multicrossing(
    d: PlanarizedDrawing, site: int, guards: SearchGuards = _DEFAULT_GUARDS
) -> SurgeryStep:
    """Replace a crossing of three or more passes by pairwise single crossings.

    Only passes whose darts interleave around ``site`` cross in the new
    arrangement, once each at a 4-valent crossing. Passes that merely touch
    at ``site`` are pulled apart, so the crossing-triple count drops by one
    for every such pair and stays put when all passes interleave.
    """
    if site not in d.vertices or d.kind(site) is not VertexKind.CROSSING:
        raise SurgeryError(f"split_multicrossing: planar vertex {site} is not a crossing")
    passes = d.passes(site)
    if len(passes) < 3:
        raise SurgeryError(f"split_multicrossing: crossing {site} has only {len(passes)} passes")
    editor = MapEditor(d, guards)
    editor.replace_by_arrangement(site)
    after, dart_map = editor.build()
    return _step("split_multicrossing", d, after, dart_map, (site,), {p.edge for p in passes})


def remove_touching(
    d: PlanarizedDrawing, site: int, guards: SearchGuards = _DEFAULT_GUARDS
) -> SurgeryStep:
    """Pull the two passes of a touching apart; the faces meeting there merge."""
    first, second = _two_passes(d, site, "remove_touching")
    if is_alternating(d, site, first, second):
        raise SurgeryError(f"remove_touching: crossing {site} is a proper crossing")
    editor = MapEditor(d, guards)
    editor.replace_by_arrangement(site)
    after, dart_map = editor.build()
    return _step("remove_touching", d, after, dart_map, (site,), {first.edge, second.edge})


def reroute_self_intersection(d: PlanarizedDrawing, site: int) -> SurgeryStep:
    """Traverse the closed piece of a self-crossing trail backwards, leaving a touching."""
    first, second = _two_passes(d, site, "reroute_self_intersection")
    if first.edge != second.edge or not is_alternating(d, site, first, second):
        raise SurgeryError(f"reroute_self_intersection: crossing {site} is not a self-crossing")
    i, j = sorted((first.position, second.position))
    editor = MapEditor(d)
    trail = editor.trails[first.edge]
    loop = _reversed_trail(trail[i + 1 : j + 1])
    editor.trails[first.edge] = trail[: i + 1] + loop + trail[j + 1 :]
    after, dart_map = editor.build()
    return _step("reroute_self_intersection", d, after, dart_map, (site,), (first.edge,))


def uncross_adjacent(d: PlanarizedDrawing, site: int) -> SurgeryStep:
    """Exchange the pieces of two adjacent edges between their common end and ``site``."""
    first, second = _two_passes(d, site, "uncross_adjacent")
    g = d.underlying
    e1, e2 = g.edge(first.edge), g.edge(second.edge)
    if e1.id == e2.id or e1.is_loop or e2.is_loop or not edges_adjacent(g, e1.id, e2.id):
        raise SurgeryError(f"uncross_adjacent: crossing {site} is not between adjacent edges")
    if not is_alternating(d, site, first, second):
        raise SurgeryError(f"uncross_adjacent: crossing {site} is a touching")
    v = min({e1.u, e1.v} & {e2.u, e2.v})

    editor = MapEditor(d)
    oriented = []
    for e in (e1, e2):
        trail = list(editor.trails[e.id])
        oriented.append(trail if e.u == v else _reversed_trail(trail))
    t1, t2 = oriented
    p1 = next(i for i, dart in enumerate(t1) if d.head(dart) == site)
    p2 = next(i for i, dart in enumerate(t2) if d.head(dart) == site)
    swapped = (t2[: p2 + 1] + t1[p1 + 1 :], t1[: p1 + 1] + t2[p2 + 1 :])
    for e, trail in zip((e1, e2), swapped):
        editor.trails[e.id] = trail if e.u == v else _reversed_trail(trail)
    after, dart_map = editor.build()
    return _step("uncross_adjacent", d, after, dart_map, (site,), (e1.id, e2.id))


def shared_proper_crossings(d: PlanarizedDrawing, e1: int, e2: int) -> list[int]:
    """Crossings where exactly ``e1`` and ``e2`` cross properly, in order along ``e1``."""
    shared = set()
    for x in d.crossings:
        passes = d.passes(x)
        if len(passes) == 2 and {p.edge for p in passes} == {e1, e2} and e1 != e2:
            if is_alternating(d, x, *passes):
                shared.add(x)
    return [d.head(dart) for dart in d.trails[e1][:-1] if d.head(dart) in shared]


def uncross_double(d: PlanarizedDrawing, e1: int, e2: int) -> SurgeryStep:
    """Exchange the pieces of two edges between their first two shared crossings.

    Both crossings become touchings; the report lists them as its sites.
    """
    g = d.underlying
    if e1 == e2 or g.edge(e1).is_loop or g.edge(e2).is_loop or edges_adjacent(g, e1, e2):
        raise SurgeryError(f"uncross_double: edges {e1} and {e2} are adjacent")
    sites = shared_proper_crossings(d, e1, e2)
    if len(sites) < 2:
        raise SurgeryError(f"uncross_double: edges {e1} and {e2} cross fewer than twice")
    p1, p2 = sites[0], sites[1]

    editor = MapEditor(d)
    t1, t2 = list(editor.trails[e1]), list(editor.trails[e2])
    i1, i2 = (next(i for i, dart in enumerate(t1) if d.head(dart) == p) for p in (p1, p2))
    j1, j2 = (next(i for i, dart in enumerate(t2) if d.head(dart) == p) for p in (p1, p2))
    if j1 < j2:
        editor.trails[e1] = t1[: i1 + 1] + t2[j1 + 1 : j2 + 1] + t1[i2 + 1 :]
        editor.trails[e2] = t2[: j1 + 1] + t1[i1 + 1 : i2 + 1] + t2[j2 + 1 :]
    else:
        editor.trails[e1] = t1[: i1 + 1] + _reversed_trail(t2[j2 + 1 : j1 + 1]) + t1[i2 + 1 :]
        editor.trails[e2] = t2[: j2 + 1] + _reversed_trail(t1[i1 + 1 : i2 + 1]) + t2[j1 + 1 :]
    after, dart_map = editor.build()
    return _step("uncross_double", d, after, dart_map, (p1, p2), (e1, e2))


def isolate_loop(
    d: PlanarizedDrawing, edge_id: int, guards: SearchGuards = _DEFAULT_GUARDS
) -> SurgeryStep:
    """Redraw a crossed loop without crossings inside the largest face at its vertex."""
    e = d.underlying.edge(edge_id)
    if not e.is_loop:
        raise SurgeryError(f"isolate_loop: edge {edge_id} is not a loop")
    trail = d.trails[edge_id]
    if len(trail) == 1:
        raise SurgeryError(f"isolate_loop: loop {edge_id} is already crossing-free")
    v = d.image[e.u]

    editor = MapEditor(d, guards)
    on_loop = sorted({d.head(dart) for dart in trail[:-1]})
    del editor.trails[edge_id]
    for s in sorted({dart >> 1 for dart in trail}):
        editor.remove_segment(s)
    for x in on_loop:
        degree = len(editor.rotation[x])
        if degree == 0:
            editor.delete_vertex(x)
        elif degree == 2:
            editor.suppress(x)

    rot = editor.rotation[v]
    if not rot:
        if len(editor.vertices) > 1:
            raise SurgeryError(f"isolate_loop: vertex {e.u} only meets loop {edge_id}")
        s = editor.new_segment(v, v)
        rot += [2 * s, 2 * s + 1]
    else:
        orbits = editor.current_orbits()
        s = editor.new_segment(v, v)
        face_of = {dart: f for f, orbit in enumerate(orbits) for dart in orbit}
        at_v = {face_of[dart] for dart in rot}
        target = max(sorted(at_v), key=lambda f: len(orbits[f]))
        idx = next(i for i, dart in enumerate(rot) if face_of[dart] == target)
        rot[idx:idx] = [2 * s, 2 * s + 1]
    editor.trails[edge_id] = [2 * s]
    after, dart_map = editor.build()
    return _step("isolate_loop", d, after, dart_map, (v,), (edge_id,), loop_edge=edge_id)


# ── Pipeline ───────────────────────────────────────────────────────────────


def _pipeline(
    d: PlanarizedDrawing,
    kind: ViolationKind,
    sites: tuple[int, ...],
    edges: tuple[int, ...],
    guards: SearchGuards,
) -> list[SurgeryStep]:
    steps: list[SurgeryStep] = []
    if kind is ViolationKind.MULTI_CROSSING:
        return [split_multicrossing(d, sites[0], guards)]
    if kind is ViolationKind.TOUCHING:
        return [remove_touching(d, sites[0], guards)]
    if kind is ViolationKind.LOOP_CROSSING:
        loop = next(e for e in edges if d.underlying.edge(e).is_loop)
        return [isolate_loop(d, loop, guards)]
    if kind is ViolationKind.SELF_INTERSECTION:
        steps.append(reroute_self_intersection(d, sites[0]))
    elif kind is ViolationKind.ADJACENT_CROSSING:
        steps.append(uncross_adjacent(d, sites[0]))
    else:
        steps.append(uncross_double(d, edges[0], edges[1]))
    for site in steps[0].report.sites:
        steps.append(remove_touching(steps[-1].after, site, guards))
    return steps


def normalize_with_steps(
    d: PlanarizedDrawing, guards: SearchGuards = _DEFAULT_GUARDS
) -> tuple[PlanarizedDrawing, list[SurgeryStep]]:
    """Apply surgeries until the drawing is good, highest-priority violation first.

    A drawing that is already good comes back unchanged. Otherwise the drawn
    graph must be connected: a good drawing of a disconnected graph may need
    no crossings between its components, and a map without crossings between
    components is not connected.
    """
    current = d
    steps: list[SurgeryStep] = []
    cap: int | None = None
    rounds = 0
    violations = find_violations(current)
    if violations and not is_connected(d.underlying):
        raise InvalidInputError(
            "normalization needs a connected graph; draw each component separately"
        )
    while violations:
        target = min(violations, key=lambda v: _PRIORITY.index(v.kind))
        if target.kind is not ViolationKind.MULTI_CROSSING:
            if cap is None:
                cap = crossing_triples(current) + touchings(current) + 1
            rounds += 1
            if rounds > cap:
                raise SurgeryError(f"normalization did not finish within {cap} rounds")
        steps += _pipeline(current, target.kind, target.sites, target.edges, guards)
        current = steps[-1].after
        violations = find_violations(current)
    logger.info(
        "normalized drawing in %d surgeries: triples %d -> %d",
        len(steps),
        crossing_triples(d),
        crossing_triples(current),
    )
    return current, steps


def normalize(
    d: PlanarizedDrawing, guards: SearchGuards = _DEFAULT_GUARDS
) -> tuple[PlanarizedDrawing, list[SurgeryReport]]:
    drawing, steps = normalize_with_steps(d, guards)
    return drawing, [step.report for step in steps]


# ── Coloring transfer ──────────────────────────────────────────────────────


def _pull_through_loop(step: SurgeryStep, loop: int, coloring: FaceColoring) -> FaceColoring:
    before, after = step.before, step.after
    carried = mod3_from_coloring(after, coloring)
    loop_segments = {dart >> 1: dart % 2 == 0 for dart in before.trails[loop]}
    forward: dict[int, bool] = {}
    for s in before.segments:
        if s in loop_segments:
            forward[s] = loop_segments[s]
            continue
        image = step.dart_map[2 * s]
        if image is None:
            raise SurgeryError(f"segment {s} vanished outside the re-drawn loop")
        forward[s] = (image % 2 == 0) == carried.forward[image >> 1]
    return coloring_from_mod3(before, Orientation(planar_graph(before), forward))


def transfer_coloring(steps: Sequence[SurgeryStep], coloring: FaceColoring) -> FaceColoring:
    """Carry a 3-coloring of the last drawing back to the first one."""
    for step in reversed(steps):
        if step.loop_edge is not None:
            coloring = _pull_through_loop(step, step.loop_edge, coloring)
        else:
            coloring = pull_coloring(step.before, step.after, step.dart_map, coloring)
    return coloring
