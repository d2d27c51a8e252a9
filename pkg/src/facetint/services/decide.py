"""Facial 3-colorability: a ladder of sufficient and class-exact rules with certificates."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Mapping

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
from facetint.domain.exceptions import GuardExceededError, InvalidInputError
from facetint.domain.graph import Multigraph
from facetint.domain.value_objects import SearchGuards
from facetint.services.flow3 import is_flowable, mod3_orientation
from facetint.services.generators import complete_bipartite, odd_wheels, wheel
from facetint.services.multigraph import (
    bridges,
    components,
    edge_connectivity,
    has_minor,
    has_subcontraction,
    identify,
    is_isomorphic,
    recognize_k3n_plus,
    shortest_odd_cycle,
)

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()

RuleOutcome = Decision | None


def _degree_one(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    leaf = next((v for v in g.vertices if g.degree_of(v) == 1), None)
    if leaf is None:
        return None
    return Decision(Verdict.NO, "degree-one", DegreeOneObstructionCertificate(leaf))


def _bridge(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    found = bridges(g)
    if not found:
        return None
    e = g.edge(min(found))
    parts = components(g.without_edges([e.id]))
    side_x = next(p for p in parts if e.u in p)
    side_y = next(p for p in parts if e.v in p)
    return Decision(Verdict.NO, "bridge", BridgeObstructionCertificate(e.id, side_x, side_y))


def _mod3(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    orientation = mod3_orientation(g)
    if orientation is None:
        return None
    return Decision(Verdict.YES, "mod3-orientation", Mod3OrientationCertificate(orientation))


def local_connectivity(g: Multigraph, root: int) -> dict[int, int]:
    """Maximum number of edge-disjoint paths from ``root`` to every other vertex."""
    graph = g.to_weighted_simple()
    return {
        v: int(nx.maximum_flow_value(graph, root, v, capacity="weight"))
        for v in g.vertices
        if v != root
    }


def _four_edge_connected(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    if g.order < 2 or edge_connectivity(g, 3).value < 4:
        return None
    root = g.vertices[0]
    certificate = FourEdgeConnectedCertificate(root, local_connectivity(g, root))
    return Decision(Verdict.YES, "four-edge-connected", certificate)


def _subcubic(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    """Only reached once no modulo-3-orientation exists, so it certifies NO."""
    if g.max_degree > 3:
        return None
    refuted = SubcubicNoFlowCertificate(g.size, "gf3-elimination")
    if g.min_degree < 3:
        return Decision(Verdict.NO, "subcubic-flow", refuted)
    odd = shortest_odd_cycle(g)
    if odd is None or len(odd) < 3 or len(odd) == g.order:
        return Decision(Verdict.NO, "subcubic-flow", refuted)
    rest = g.vertex_set - frozenset(odd)
    pattern = identify(g, rest)
    if is_isomorphic(pattern, wheel(len(odd))):
        classes = {v: frozenset((v,)) for v in odd} | {min(rest): rest}
        certificate = BadSubcontractionCertificate(f"W{len(odd)}", pattern, classes)
        return Decision(Verdict.NO, "cubic-bipartite", certificate)
    return Decision(Verdict.NO, "cubic-bipartite", CubicBipartiteCertificate(odd_cycle=odd))


def _k33_minor_free(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    if has_minor(g, complete_bipartite(3, 3), guards=guards) is not None:
        return None
    orientation = mod3_orientation(g)
    verdict = Verdict.YES if orientation is not None else Verdict.NO
    return Decision(verdict, "k33-minor-free", K33FreeFlowCertificate(g.order, orientation))


def _k3n_plus(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
    found = recognize_k3n_plus(g)
    if found is None or len(found[1]) < 4:
        return None
    side_a, side_b = found
    return Decision(Verdict.YES, "k3n-plus", K3nPlusCertificate(len(side_b), side_a, side_b))


def check_pattern(pattern: Multigraph) -> None:
    """Obstruction patterns must be planar and admit no nowhere-zero 3-flow."""
    planar, _ = nx.check_planarity(pattern.to_weighted_simple())
    if not planar:
        raise InvalidInputError("obstruction pattern must be planar")
    if is_flowable(pattern):
        raise InvalidInputError("obstruction pattern must not be 3-flowable")


def _bad_subcontraction(patterns: Mapping[str, Multigraph]) -> Callable[..., RuleOutcome]:
    def rule(g: Multigraph, guards: SearchGuards) -> RuleOutcome:
        for name in sorted(patterns, key=lambda n: (patterns[n].order, n)):
            pattern = patterns[name]
            if pattern.order > g.order:
                continue
            witness = has_subcontraction(g, pattern, exact=True, guards=guards)
            if witness is not None:
                certificate = BadSubcontractionCertificate(name, pattern, witness.classes)
                return Decision(Verdict.NO, "bad-subcontraction", certificate)
        return None

    return rule


def decide_facially_3_colorable(
    g: Multigraph,
    guards: SearchGuards = _DEFAULT_GUARDS,
    patterns: Mapping[str, Multigraph] | None = None,
) -> Decision:
    """Run the rule ladder; the first rule that settles ``g`` wins.

    Rules whose searches exceed a guard are recorded as ``<rule>:skipped``.
    """
    library = dict(odd_wheels(7))
    for name, pattern in (patterns or {}).items():
        check_pattern(pattern)
        library[name] = pattern
    ladder: list[tuple[str, Callable[..., RuleOutcome]]] = [
        ("degree-one", _degree_one),
        ("bridge", _bridge),
        ("mod3-orientation", _mod3),
        ("four-edge-connected", _four_edge_connected),
        ("subcubic-flow", _subcubic),
        ("k33-minor-free", _k33_minor_free),
        ("k3n-plus", _k3n_plus),
        ("bad-subcontraction", _bad_subcontraction(library)),
    ]
    attempted: list[str] = []
    timings: dict[str, float] = {}
    for name, rule in ladder:
        started = time.perf_counter()
        try:
            outcome = rule(g, guards)
        except GuardExceededError as exc:
            logger.info("rule %s skipped: %s", name, exc)
            attempted.append(f"{name}:skipped")
            continue
        finally:
            timings[name] = time.perf_counter() - started
        attempted.append(name)
        if outcome is not None:
            logger.info("rule %s decided %s", outcome.rule, outcome.verdict.value)
            return Decision(
                outcome.verdict, outcome.rule, outcome.certificate, tuple(attempted), timings
            )
    logger.info("no rule decided the graph (%d vertices, %d edges)", g.order, g.size)
    return Decision(Verdict.UNKNOWN, None, None, tuple(attempted), timings)
