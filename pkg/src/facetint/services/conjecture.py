"""Exploratory check of a graph against the K_{3,n}^+ exclusion conjecture."""

from __future__ import annotations

import logging

from facetint.domain.entities import ConjectureReport
from facetint.domain.exceptions import GuardExceededError
from facetint.domain.graph import Multigraph
from facetint.domain.value_objects import SearchGuards
from facetint.services.decide import decide_facially_3_colorable
from facetint.services.flow3 import (
    has_nontrivial_z3_subgraph,
    is_flowable,
    is_vertex_3_critical,
    three_cuts_are_vertex_stars,
)
from facetint.services.generators import complete_bipartite, k3n_plus
from facetint.services.multigraph import edge_connectivity, has_minor, has_subcontraction

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()


def smallest_k3nplus_subcontraction(
    g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS
) -> int | None:
    """Least n in 4..gate_max_n such that some identification of ``g`` is K_{3,n}^+."""
    for n in range(4, guards.gate_max_n + 1):
        if n + 3 > g.order:
            break
        if has_subcontraction(g, k3n_plus(n), exact=True, guards=guards) is not None:
            return n
    return None


def minimal_counterexample_filters(
    g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS
) -> dict[str, bool]:
    """Properties every smallest counterexample to the conjecture would have."""
    connectivity = edge_connectivity(g, 3)
    return {
        "vertex-3-critical": is_vertex_3_critical(g),
        "simple": g.is_simple,
        "no-z3-subgraph": not has_nontrivial_z3_subgraph(g, guards),
        "3-edge-connected-star-cuts": connectivity.value >= 3 and three_cuts_are_vertex_stars(g),
        "max-degree-4": g.max_degree >= 4,
        "k33-minor": has_minor(g, complete_bipartite(3, 3), guards=guards) is not None,
    }


def conjecture_gate(g: Multigraph, guards: SearchGuards = _DEFAULT_GUARDS) -> ConjectureReport:
    if g.order > guards.subcontraction_max_vertices:
        raise GuardExceededError(
            f"conjecture gate needs |V| <= {guards.subcontraction_max_vertices}, got {g.order}"
        )
    decision = decide_facially_3_colorable(g, guards)
    found = smallest_k3nplus_subcontraction(g, guards)
    report = ConjectureReport(
        verdict=decision.verdict,
        flowable=is_flowable(g),
        k3nplus_free=found is None,
        k3nplus_found=found,
        filters=minimal_counterexample_filters(g, guards),
    )
    if report.counterexample:
        logger.warning("graph on %d vertices contradicts the K_{3,n}^+ conjecture", g.order)
    else:
        logger.info(
            "conjecture gate: verdict %s, flowable %s, K_{3,n}^+ %s",
            report.verdict.value,
            report.flowable,
            found,
        )
    return report
