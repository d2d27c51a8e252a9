"""Nowhere-zero 3-flows: modulo-3-orientations and everything built on them."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Collection, Sequence

from facetint.domain.exceptions import (
    GuardExceededError,
    InvalidInputError,
    NotZ3ConnectedError,
)
from facetint.domain.graph import Multigraph
from facetint.domain.orientation import ExcessTarget, NearMod3Orientation, Orientation, Z3Flow
from facetint.domain.value_objects import SearchGuards
from facetint.services.generators import complete_bipartite
from facetint.services.gf3 import Gf3System
from facetint.services.multigraph import (
    bridges,
    components,
    contract_edge,
    identify,
    is_connected,
    small_edge_cuts,
)

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()


# ── Solving ────────────────────────────────────────────────────────────────


def mod3_orientation(g: Multigraph) -> Orientation | None:
    """Orientation with every excess divisible by 3, or None."""
    if bridges(g):
        logger.debug("mod3 orientation: bridge present, no solution")
        return None
    return Gf3System(g).orientation()


def orientation_with_targets(g: Multigraph, target: ExcessTarget) -> Orientation | None:
    """Orientation whose excess at ``v`` is congruent to ``target(v)`` modulo 3."""
    g.require_vertices(target.values)
    return Gf3System(g).orientation(target)


def is_flowable(g: Multigraph) -> bool:
    return mod3_orientation(g) is not None


def orientation_to_flow(orientation: Orientation) -> Z3Flow:
    """A modulo-3-orientation is a flow with value 1 on every arc."""
    return Z3Flow(orientation, {e: 1 for e in orientation.forward})


def flow_to_orientation(flow: Z3Flow) -> Orientation:
    """Re-express value-2 arcs as reversed value-1 arcs."""
    forward = {
        e: fwd if flow.values[e] == 1 else not fwd
        for e, fwd in flow.orientation.forward.items()
    }
    return Orientation(flow.orientation.graph, forward)


def nz3_flow(g: Multigraph) -> Z3Flow | None:
    """Flow on the stored edge directions with values in {1, 2}."""
    if bridges(g):
        return None
    values = Gf3System(g).solve()
    if values is None:
        return None
    reference = Orientation(g, {e.id: True for e in g.edges})
    return Z3Flow(reference, {e.id: values.get(e.id, 1) for e in g.edges})


def brute_force_mod3_orientation(
    g: Multigraph, target: ExcessTarget | None = None
) -> Orientation | None:
    """Exhaustive search over all 2^|E| orientations (oracle for small graphs)."""
    target = target or ExcessTarget.zero()
    edge_ids = [e.id for e in g.edges]
    for bits in itertools.product((True, False), repeat=len(edge_ids)):
        candidate = Orientation(g, dict(zip(edge_ids, bits)))
        if candidate.satisfies(target):
            return candidate
    return None


# ── Z3-connectivity ────────────────────────────────────────────────────────


def is_z3_connected(g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS) -> bool:
    """Every zero-sum excess prescription is realized by some orientation."""
    if g.order > guards.z3_max_vertices:
        raise GuardExceededError(
            f"Z3-connectivity needs |V| <= {guards.z3_max_vertices}, got {g.order}"
        )
    if g.order <= 1:
        return True
    if not is_connected(g) or bridges(g):
        return False
    system = Gf3System(g)
    *head, last = g.vertices
    for values in itertools.product(range(3), repeat=len(head)):
        prescription = dict(zip(head, values))
        prescription[last] = -sum(values)
        if system.solve(ExcessTarget(prescription)) is None:
            logger.debug("not Z3-connected: prescription %s fails", prescription)
            return False
    return True


def near_mod3_orientation(g: Multigraph, u1: int, u2: int) -> NearMod3Orientation | None:
    """Orientation missing only ``u1`` and ``u2`` (excess classes alpha and -alpha)."""
    if u1 == u2:
        raise InvalidInputError("near-mod-3 orientation needs two distinct vertices")
    g.require_vertices((u1, u2))
    system = Gf3System(g)
    for alpha in (1, 2):
        found = system.orientation(ExcessTarget({u1: alpha, u2: -alpha}))
        if found is not None:
            return NearMod3Orientation(found, u1, u2, alpha)
    return None


# ── Criticality ────────────────────────────────────────────────────────────


def is_vertex_3_critical(g: Multigraph) -> bool:
    """Not 3-flowable, but identifying any two vertices makes it so."""
    if is_flowable(g):
        return False
    return all(is_flowable(identify(g, pair)) for pair in itertools.combinations(g.vertices, 2))


def is_edge_3_critical(g: Multigraph) -> bool:
    if is_flowable(g):
        return False
    return all(is_flowable(contract_edge(g, e.id)) for e in g.edges if not e.is_loop)


# ── Complete bipartite orientations ────────────────────────────────────────


def _kmn_arcs(side_a: Sequence[int], side_b: Sequence[int]) -> list[tuple[int, int]]:
    """Arcs of a modulo-3-orientation of the complete bipartite graph on the two sides."""
    m, n = len(side_a), len(side_b)
    if max(m, n) > 3:
        if m >= n:
            half = m // 2
            return _kmn_arcs(side_a[:half], side_b) + _kmn_arcs(side_a[half:], side_b)
        half = n // 2
        return _kmn_arcs(side_a, side_b[:half]) + _kmn_arcs(side_a, side_b[half:])
    if (m, n) == (2, 2):
        a0, a1 = side_a
        b0, b1 = side_b
        return [(a0, b0), (b0, a1), (a1, b1), (b1, a0)]
    if (m, n) == (3, 3):
        return [(a, b) for a in side_a for b in side_b]
    if (m, n) == (3, 2):
        b0, b1 = side_b
        return [arc for a in side_a for arc in ((b0, a), (a, b1))]
    if (m, n) == (2, 3):
        a0, a1 = side_a
        return [arc for b in side_b for arc in ((a0, b), (b, a1))]
    raise InvalidInputError(f"no orientation for K_{{{m},{n}}}")


def _orientation_from_arc_list(g: Multigraph, arcs: Collection[tuple[int, int]]) -> Orientation:
    """Match arcs to edges of a simple graph by their endpoint pair."""
    by_pair = {frozenset((e.u, e.v)): e.id for e in g.edges}
    mapped = {by_pair[frozenset(arc)]: arc for arc in arcs}
    return Orientation.from_arcs(g, mapped)


def kmn_mod3_orientation(m: int, n: int) -> Orientation:
    """Modulo-3-orientation of K_{m,n} built by splitting into 2- and 3-sided blocks.

    Vertices ``0..m-1`` form side A and ``m..m+n-1`` side B, matching
    ``generators.complete_bipartite``.
    """
    if m < 2 or n < 2:
        raise InvalidInputError("K_{m,n} orientation needs m, n >= 2")
    g = complete_bipartite(m, n)
    arcs = _kmn_arcs(list(range(m)), list(range(m, m + n)))
    return _orientation_from_arc_list(g, arcs)


def k3nplus_h_orientation(
    h: Multigraph, u: int, side_a: tuple[int, int, int], side_b: Sequence[int]
) -> Orientation:
    """Modulo-3-orientation of the graph obtained from K_{3,n}^+ at a crossing.

    ``h`` is K_{3,n}^+ without two crossing edges ``x v1`` and ``y v2`` (x, y in
    the 3-side, v1 != v2) plus a vertex ``u`` joined to x, v1, y, v2.
    ``side_a = (x1, x2, x3)`` lists the 3-side with ``x1 x2`` the extra edge.
    """
    x1, x2, x3 = side_a
    nbrs = {e.other(u) for e in h.incident(u)}
    ends_a = nbrs & set(side_a)
    ends_b = sorted(nbrs - set(side_a))
    if len(ends_a) != 2 or len(ends_b) != 2:
        raise InvalidInputError("u must join two vertices of each side")

    def adjacent(p: int, q: int) -> bool:
        return h.multiplicity(p, q) > 0

    if ends_a == {x1, x2}:
        v1 = next(v for v in ends_b if not adjacent(x1, v))
        v2 = next(v for v in ends_b if v != v1)
        core = [
            (x1, x2), (x1, v2), (v1, x2), (v1, x3), (x3, v2),
            (x1, u), (u, x2), (v1, u), (u, v2),
        ]
        rest_b = [b for b in side_b if b not in (v1, v2)]
        arcs = core + _kmn_arcs([x1, x2, x3], rest_b)
        logger.debug("K3n+ H orientation: crossing ends joined by the extra edge")
    else:
        if x3 not in ends_a:
            raise InvalidInputError("crossing edges must leave distinct 3-side vertices")
        # x1 becomes the crossing end other than x3
        x1 = next(iter(ends_a - {x3}))
        x2 = x2 if x1 == side_a[0] else side_a[0]
        v1 = next(v for v in ends_b if not adjacent(x1, v))
        v2 = next(v for v in ends_b if v != v1)
        core = [
            (x2, x1), (x1, v2), (v1, x2), (x2, v2), (v1, x3),
            (x1, u), (v1, u), (u, x3), (u, v2),
        ]
        rest_b = [b for b in side_b if b not in (v1, v2)]
        block = _kmn_arcs([x1, x2, x3], rest_b)
        b = rest_b[0]
        if all(head == b for _, head in (arc for arc in block if b in arc)):
            block = [(head, tail) for tail, head in block]
        block = [(head, tail) if b in (tail, head) else (tail, head) for tail, head in block]
        arcs = core + block
        logger.debug("K3n+ H orientation: crossing ends include the third vertex, pivot %d", b)
    return _orientation_from_arc_list(h, arcs)


# ── Reductions ─────────────────────────────────────────────────────────────


def mincut_reduction(g: Multigraph) -> list[Multigraph]:
    """Split along the least bond of size <= 3 whose sides both have >= 2 vertices.

    ``g`` is 3-flowable iff both returned contractions are.
    """
    if bridges(g):
        raise InvalidInputError("mincut reduction needs a bridgeless graph")
    best = None
    for cut in small_edge_cuts(g, 3):
        if len(cut.side_x) < 2 or len(cut.side_y) < 2:
            continue
        key = tuple(sorted(cut.edges))
        if best is None or key < tuple(sorted(best.edges)):
            best = cut
    if best is None:
        return [g]
    logger.debug("mincut reduction along edges %s", sorted(best.edges))
    return [identify(g, best.side_x), identify(g, best.side_y)]


def z3_subgraph_reduction(
    g: Multigraph, h: Collection[int], guards: SearchGuards = _DEFAULT_GUARDS
) -> Multigraph:
    """Identify a Z3-connected vertex set; the result is 3-flowable iff ``g`` is."""
    g.require_vertices(h)
    if len(set(h)) <= 1:
        return g
    if not is_z3_connected(g.induced(h), guards):
        raise NotZ3ConnectedError(f"subgraph on {sorted(h)} is not Z3-connected")
    return identify(g, h)


def has_nontrivial_z3_subgraph(g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS) -> bool:
    """A parallel pair or a connected induced subgraph of small order that is Z3-connected."""
    simple = g.simple()
    if sum(1 for e in g.edges if not e.is_loop) > simple.size:
        return True
    top = min(guards.z3_subgraph_max_order, g.order)
    for k in range(3, top + 1):
        for subset in itertools.combinations(g.vertices, k):
            sub = g.induced(subset)
            if sub.min_degree < 2 or len(components(sub)) != 1:
                continue
            if is_z3_connected(sub, guards):
                logger.debug("Z3-connected subgraph on %s", subset)
                return True
    return False


def three_cuts_are_vertex_stars(g: Multigraph) -> bool:
    """Every bond of size 3 separates a single degree-3 vertex."""
    for cut in small_edge_cuts(g, 3):
        if len(cut.edges) != 3:
            continue
        small = cut.side_x if len(cut.side_x) <= len(cut.side_y) else cut.side_y
        if len(small) != 1:
            return False
    return True
