from __future__ import annotations

import pytest

from facetint.domain.exceptions import (
    GuardExceededError,
    InvalidInputError,
    LoopContractionError,
    UnknownVertexError,
)
from facetint.domain.graph import Edge, Multigraph
from facetint.services import generators
from facetint.services.multigraph import (
    apply_partition,
    branch_sets_valid,
    bridges,
    components,
    contract_edge,
    edge_connectivity,
    has_minor,
    has_subcontraction,
    identify,
    is_bipartite,
    is_eulerian,
    is_isomorphic,
    recognize_k3n_plus,
    shortest_cycle,
    shortest_odd_cycle,
    small_edge_cuts,
)

K33 = generators.complete_bipartite(3, 3)


def _two_triangles_with_bridge() -> Multigraph:
    return Multigraph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])


# ── Construction ───────────────────────────────────────────────────────────


def test_loops_count_twice_toward_degree():
    g = Multigraph.from_edges([(0, 0), (0, 1)])
    assert g.degree_of(0) == 3
    assert not g.is_simple


def test_edge_with_undeclared_endpoint_is_rejected():
    with pytest.raises(UnknownVertexError):
        Multigraph((0,), (Edge(0, 0, 1),))


def test_duplicate_edge_ids_are_rejected():
    with pytest.raises(InvalidInputError):
        Multigraph((0, 1), (Edge(0, 0, 1), Edge(0, 1, 0)))


def test_vertices_and_edges_are_kept_sorted():
    g = Multigraph((2, 0, 1), (Edge(5, 0, 1), Edge(1, 1, 2)))
    assert g.vertices == (0, 1, 2)
    assert [e.id for e in g.edges] == [1, 5]


# ── Identification ─────────────────────────────────────────────────────────


def test_identify_deletes_edges_inside_the_set():
    merged = identify(generators.complete_graph(4), {0, 1})
    assert merged.vertices == (0, 2, 3)
    assert merged.size == 5
    assert not merged.has_edge(0)
    assert merged.multiplicity(0, 2) == 2
    assert merged.degree_of(0) == 4


def test_identify_merges_into_the_smallest_vertex():
    merged = identify(generators.cycle(5), {3, 1})
    assert 1 in merged.vertices
    assert 3 not in merged.vertices


def test_identify_empty_set_is_rejected():
    with pytest.raises(InvalidInputError):
        identify(generators.cycle(3), [])


def test_contracting_a_loop_is_rejected():
    with pytest.raises(LoopContractionError):
        contract_edge(generators.single_loop(), 0)


def test_apply_partition_of_c4_gives_a_digon():
    g = apply_partition(generators.cycle(4), [{0, 1}, {2, 3}])
    assert is_isomorphic(g, generators.digon())


# ── Connectivity ───────────────────────────────────────────────────────────


def test_bridges():
    assert bridges(generators.path(3)) == {0, 1}
    assert bridges(generators.digon()) == frozenset()
    assert bridges(generators.single_loop()) == frozenset()
    assert bridges(_two_triangles_with_bridge()) == {6}


def test_components_are_ordered_by_smallest_vertex():
    g = generators.disjoint_union(generators.cycle(3), generators.path(2))
    assert components(g) == [frozenset({0, 1, 2}), frozenset({3, 4})]


def test_edge_connectivity_exact_with_witness():
    result = edge_connectivity(generators.petersen(), 5)
    assert result.value == 3
    assert result.exact
    assert result.witness is not None
    assert len(result.witness.edges) == 3


def test_edge_connectivity_above_ceiling_is_capped():
    result = edge_connectivity(generators.complete_graph(5), 3)
    assert result.value == 4
    assert not result.exact


def test_edge_connectivity_of_disconnected_graph_is_zero():
    g = generators.disjoint_union(generators.cycle(3), generators.cycle(3))
    assert edge_connectivity(g, 3).value == 0


def test_small_edge_cuts_of_c4_are_all_edge_pairs():
    cuts = list(small_edge_cuts(generators.cycle(4), 2))
    assert len(cuts) == 6
    assert all(len(c.edges) == 2 for c in cuts)


def test_is_eulerian():
    assert is_eulerian(generators.complete_graph(5))
    assert not is_eulerian(generators.complete_graph(4))


# ── Cycles and bipartiteness ───────────────────────────────────────────────


def test_is_bipartite_returns_both_sides():
    sides = is_bipartite(K33)
    assert sides is not None
    assert set(sides) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


@pytest.mark.parametrize("g", [generators.cycle(5), generators.single_loop()])
def test_odd_closed_walks_are_not_bipartite(g):
    assert is_bipartite(g) is None


def test_shortest_odd_cycle():
    assert len(shortest_odd_cycle(generators.petersen())) == 5
    assert shortest_odd_cycle(K33) is None
    assert shortest_odd_cycle(generators.single_loop()) == (0,)


def test_shortest_cycle():
    assert shortest_cycle(generators.digon()) == ((0, 1), (0, 1))
    vertices, edges = shortest_cycle(generators.petersen())
    assert len(vertices) == len(edges) == 5
    assert shortest_cycle(generators.path(3)) is None


def test_isomorphism_respects_multiplicity():
    assert is_isomorphic(generators.wheel(3), generators.complete_graph(4))
    assert not is_isomorphic(generators.digon(), generators.path(2))


# ── Subcontractions and minors ─────────────────────────────────────────────


def test_exact_subcontraction_onto_a_digon():
    g = generators.cycle(4)
    witness = has_subcontraction(g, generators.digon(), exact=True)
    assert witness is not None
    quotient = apply_partition(g, list(witness.classes.values()))
    assert is_isomorphic(quotient, generators.digon())


def test_k4_is_its_own_w3_subcontraction():
    assert has_subcontraction(generators.complete_graph(4), generators.wheel(3), exact=True)


def test_inexact_subcontraction_allows_extra_edges():
    triangle = generators.cycle(3)
    assert has_subcontraction(generators.complete_graph(5), triangle) is not None
    assert has_subcontraction(generators.path(3), triangle) is None


def test_identification_classes_need_not_be_connected():
    witness = has_subcontraction(generators.path(4), generators.cycle(3), exact=True)
    assert witness is not None
    assert frozenset({0, 3}) in witness.classes.values()


def test_subcontraction_guard():
    with pytest.raises(GuardExceededError):
        has_subcontraction(generators.complete_graph(17), generators.cycle(3))


def test_k33_minor_is_found_with_valid_branch_sets():
    g = generators.k3n_plus(4)
    branch_sets = has_minor(g, K33)
    assert branch_sets is not None
    assert branch_sets_valid(g, K33, branch_sets)


def test_planar_graph_has_no_k33_minor():
    assert has_minor(generators.wheel(5), K33) is None


def test_branch_sets_valid_rejects_overlap():
    k4 = generators.complete_graph(4)
    triangle = generators.cycle(3)
    assert branch_sets_valid(k4, triangle, {0: {0}, 1: {1}, 2: {2, 3}})
    assert not branch_sets_valid(k4, triangle, {0: {0, 1}, 1: {1}, 2: {2, 3}})


# ── Recognition ────────────────────────────────────────────────────────────


def test_recognize_k3n_plus():
    assert recognize_k3n_plus(generators.k3n_plus(4)) == ((0, 1, 2), (3, 4, 5, 6))
    assert recognize_k3n_plus(generators.complete_bipartite(3, 4)) is None


def test_recognize_k3n_plus_after_relabeling():
    g = generators.k3n_plus(5).relabeled({v: 10 - v for v in range(8)})
    found = recognize_k3n_plus(g)
    assert found is not None
    (x1, x2, _), side_b = found
    assert {x1, x2} == {10, 9}
    assert len(side_b) == 5
