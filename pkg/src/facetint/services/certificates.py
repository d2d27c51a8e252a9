"""Independent re-checking of decider certificates."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Collection, Mapping

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.entities import (
    BadSubcontractionCertificate,
    BridgeObstructionCertificate,
    CubicBipartiteCertificate,
    Decision,
    DegreeOneObstructionCertificate,
    FourEdgeConnectedCertificate,
    K3nPlusCertificate,
    K33FreeFlowCertificate,
    Mod3OrientationCertificate,
    SubcubicNoFlowCertificate,
    Verdict,
)
from facetint.domain.exceptions import CertificateError, GuardExceededError
from facetint.domain.graph import Multigraph
from facetint.domain.orientation import Orientation
from facetint.domain.value_objects import SearchGuards
from facetint.services.flow3 import brute_force_mod3_orientation, mod3_orientation
from facetint.services.generators import complete_bipartite
from facetint.services.multigraph import apply_partition, bridges, components, has_minor

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()

_BRUTE_FORCE_MAX_EDGES = 20

_YES_KINDS = (Mod3OrientationCertificate, FourEdgeConnectedCertificate, K3nPlusCertificate)
_NO_KINDS = (
    BridgeObstructionCertificate,
    DegreeOneObstructionCertificate,
    BadSubcontractionCertificate,
    SubcubicNoFlowCertificate,
)


def _edge_multiset(g: Multigraph) -> Counter[tuple[int, int]]:
    return Counter((min(e.u, e.v), max(e.u, e.v)) for e in g.edges)


def _no_flow(g: Multigraph) -> bool:
    if g.size <= _BRUTE_FORCE_MAX_EDGES:
        return brute_force_mod3_orientation(g) is None
    return mod3_orientation(g) is None


def _orientation_ok(g: Multigraph, o: Orientation) -> bool:
    return o.graph == g and o.is_mod3()


def _four_edge_connected_ok(g: Multigraph, c: FourEdgeConnectedCertificate) -> bool:
    if c.root not in g.vertex_set or set(c.local_connectivity) != g.vertex_set - {c.root}:
        return False
    graph = g.to_weighted_simple()
    for v, claimed in c.local_connectivity.items():
        actual = int(nx.maximum_flow_value(graph, c.root, v, capacity="weight"))
        if actual != claimed or actual < 4:
            return False
    return True


def _is_cycle(g: Multigraph, cycle: Collection[int]) -> bool:
    walk = list(cycle)
    if len(walk) < 3 or len(set(walk)) != len(walk):
        return False
    return all(g.multiplicity(a, walk[(i + 1) % len(walk)]) > 0 for i, a in enumerate(walk))


def _cubic_ok(g: Multigraph, c: CubicBipartiteCertificate, verdict: Verdict) -> bool:
    if any(g.degree_of(v) != 3 for v in g.vertices):
        return False
    if verdict is Verdict.YES:
        if c.sides is None:
            return False
        side_x, side_y = c.sides
        if side_x & side_y or side_x | side_y != g.vertex_set:
            return False
        return all((e.u in side_x) != (e.v in side_x) for e in g.edges)
    return c.odd_cycle is not None and len(c.odd_cycle) % 2 == 1 and _is_cycle(g, c.odd_cycle)


def _k3n_plus_ok(g: Multigraph, c: K3nPlusCertificate) -> bool:
    side_a, side_b = set(c.side_a), set(c.side_b)
    if c.n < 4 or len(side_b) != c.n or len(side_a) != 3 or side_a & side_b:
        return False
    if side_a | side_b != g.vertex_set:
        return False
    x1, x2, _ = c.side_a
    expected = Counter((min(a, b), max(a, b)) for a in side_a for b in side_b)
    expected[(min(x1, x2), max(x1, x2))] += 1
    return _edge_multiset(g) == expected


def _bridge_ok(g: Multigraph, c: BridgeObstructionCertificate) -> bool:
    if c.edge not in bridges(g):
        return False
    e = g.edge(c.edge)
    parts = components(g.without_edges([c.edge]))
    return c.side_x in parts and c.side_y in parts and e.u in c.side_x and e.v in c.side_y


def _partition_ok(g: Multigraph, classes: Mapping[int, Collection[int]]) -> bool:
    seen: set[int] = set()
    for members in classes.values():
        if not members or seen & set(members):
            return False
        seen |= set(members)
    return seen == set(g.vertices)


def _subcontraction_ok(g: Multigraph, c: BadSubcontractionCertificate) -> bool:
    if not _partition_ok(g, c.classes) or set(c.classes) != set(c.pattern.vertices):
        return False
    planar, _ = nx.check_planarity(c.pattern.to_weighted_simple())
    if not planar or not _no_flow(c.pattern):
        return False
    quotient = apply_partition(g, list(c.classes.values()))
    rename = {min(members): p for p, members in c.classes.items()}
    return _edge_multiset(quotient.relabeled(rename)) == _edge_multiset(c.pattern)


def _k33_free_ok(
    g: Multigraph, c: K33FreeFlowCertificate, verdict: Verdict, guards: SearchGuards
) -> bool:
    if c.searched_vertices != g.order:
        return False
    try:
        if has_minor(g, complete_bipartite(3, 3), guards=guards) is not None:
            return False
    except GuardExceededError:
        logger.warning("cannot re-check a K_{3,3} minor search on %d vertices", g.order)
        return False
    if verdict is Verdict.YES:
        return c.orientation is not None and _orientation_ok(g, c.orientation)
    return c.orientation is None and _no_flow(g)


def certificate_verify(
    g: Multigraph, d: Decision, guards: SearchGuards = _DEFAULT_GUARDS
) -> bool:
    """Re-check a decision against ``g`` from scratch."""
    c = d.certificate
    if d.verdict is Verdict.UNKNOWN:
        if c is not None:
            raise CertificateError("an UNKNOWN decision carries no certificate")
        return True
    if c is None:
        raise CertificateError(f"a {d.verdict.value} decision needs a certificate")
    if isinstance(c, _YES_KINDS) and d.verdict is not Verdict.YES:
        return False
    if isinstance(c, _NO_KINDS) and d.verdict is not Verdict.NO:
        return False

    if isinstance(c, Mod3OrientationCertificate):
        ok = _orientation_ok(g, c.orientation)
    elif isinstance(c, FourEdgeConnectedCertificate):
        ok = _four_edge_connected_ok(g, c)
    elif isinstance(c, CubicBipartiteCertificate):
        ok = _cubic_ok(g, c, d.verdict)
    elif isinstance(c, K3nPlusCertificate):
        ok = _k3n_plus_ok(g, c)
    elif isinstance(c, BridgeObstructionCertificate):
        ok = _bridge_ok(g, c)
    elif isinstance(c, DegreeOneObstructionCertificate):
        ok = c.vertex in g.vertex_set and g.degree_of(c.vertex) == 1
    elif isinstance(c, BadSubcontractionCertificate):
        ok = _subcontraction_ok(g, c)
    elif isinstance(c, K33FreeFlowCertificate):
        ok = _k33_free_ok(g, c, d.verdict, guards)
    elif isinstance(c, SubcubicNoFlowCertificate):
        ok = c.edges_checked == g.size and g.max_degree <= 3 and _no_flow(g)
    else:
        raise CertificateError(f"unknown certificate type {type(c).__name__}")
    logger.debug("certificate %s for %s: %s", c.kind, d.verdict.value, ok)
    return ok
