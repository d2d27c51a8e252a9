"""Seeded sweeps over small random graphs and drawings."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from facetint.domain.drawing import (
    PlanarizedDrawing,
    PlanarVertex,
    Point,
    PolylineDrawing,
    VertexKind,
)
from facetint.domain.graph import Multigraph
from facetint.services import generators
from facetint.services.certificates import certificate_verify
from facetint.services.decide import decide_facially_3_colorable
from facetint.services.drawing import (
    crossing_triples,
    faces,
    is_good_drawing,
    planar_graph,
    touchings,
    validate_drawing,
)
from facetint.services.facecolor import (
    color_faces_exact,
    coloring_from_mod3,
    face_2_coloring,
    k3nplus_coloring,
    leafless_3colorable_drawing,
    lift_orientation,
    outerface_3coloring,
    validate_coloring,
)
from facetint.services.flow3 import brute_force_mod3_orientation, is_flowable, mod3_orientation
from facetint.services.multigraph import edge_connectivity, is_bipartite, is_eulerian
from facetint.services.normalize import normalize_with_steps, transfer_coloring
from facetint.services.planarize import circle_planarization, ingest_polylines

# ── Generators ─────────────────────────────────────────────────────────────


def _random_multigraph(
    rng: random.Random, max_order: int, max_size: int, loops: bool = True
) -> Multigraph:
    """Connected: a random tree plus random extra edges, parallels allowed."""
    n = rng.randint(2, max_order)
    pairs = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(rng.randint(0, max_size - len(pairs))):
        u = rng.randrange(n)
        if loops and rng.random() < 0.15:
            pairs.append((u, u))
        else:
            pairs.append((u, rng.choice([w for w in range(n) if w != u])))
    return Multigraph.from_edges(pairs)


def _ear_graph(rng: random.Random, order: int) -> Multigraph:
    """Simple 2-edge-connected graph grown from a cycle by ears and chords."""
    n = rng.randint(3, 4)
    pairs = [(i, (i + 1) % n) for i in range(n)]
    while n < order:
        u, w = rng.randrange(n), rng.randrange(n)
        inner = 2 if u == w else rng.randint(1, 2)
        pairs += list(itertools.pairwise([u, *range(n, n + inner), w]))
        n += inner
    for _ in range(rng.randint(0, 2)):
        u, w = rng.sample(range(n), 2)
        if all({u, w} != {a, b} for a, b in pairs):
            pairs.append((u, w))
    return Multigraph.from_edges(pairs)


def _point(rng: random.Random) -> Point:
    return (
        Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)),
        Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)),
    )


def _random_drawing(rng: random.Random, g: Multigraph, max_bends: int) -> PlanarizedDrawing:
    """Every edge bent at least once (loops twice), so parallels never overlap."""
    points = {v: _point(rng) for v in g.vertices}
    curves = {}
    for e in g.edges:
        low = 2 if e.is_loop else 1
        bends = [_point(rng) for _ in range(rng.randint(low, max(low, max_bends)))]
        curves[e.id] = (points[e.u], *bends, points[e.v])
    return ingest_polylines(PolylineDrawing(g, points, curves))


def _plane_map(rng: random.Random, order: int) -> PlanarizedDrawing:
    """Crossing-free map of a random connected planar graph from its rotation system."""
    simple = nx.Graph()
    simple.add_edges_from((rng.randrange(v), v) for v in range(1, order))
    for _ in range(rng.randint(0, 2 * order)):
        u, w = rng.sample(range(order), 2)
        if simple.has_edge(u, w):
            continue
        simple.add_edge(u, w)
        if not nx.check_planarity(simple)[0]:
            simple.remove_edge(u, w)
    _, embedding = nx.check_planarity(simple)
    g = Multigraph.from_edges(sorted(simple.edges()))
    dart = {}
    for e in g.edges:
        dart[(e.u, e.v)], dart[(e.v, e.u)] = 2 * e.id, 2 * e.id + 1
    rotation = {
        v: tuple(dart[(v, w)] for w in embedding.neighbors_cw_order(v)) for v in g.vertices
    }
    d = PlanarizedDrawing(
        {v: PlanarVertex(VertexKind.NORMAL, v) for v in g.vertices},
        {e.id: (e.u, e.v) for e in g.edges},
        rotation,
        {e.id: (2 * e.id,) for e in g.edges},
        g,
        0,
    )
    return validate_drawing(d)


def _shuffled(rng: random.Random, g: Multigraph) -> list[int]:
    order = list(g.vertices)
    rng.shuffle(order)
    return order


# ── Flows ──────────────────────────────────────────────────────────────────


def test_solver_agrees_with_exhaustive_search():
    rng = random.Random(11)
    for _ in range(120):
        g = _random_multigraph(rng, max_order=6, max_size=9)
        found = mod3_orientation(g)
        assert (found is None) == (brute_force_mod3_orientation(g) is None), g
        if found is not None:
            assert found.is_mod3()


@pytest.mark.parametrize("seed", range(20))
def test_cubic_graphs_are_flowable_iff_bipartite(seed):
    n = 4 + 2 * (seed % 5)
    simple = nx.random_regular_graph(3, n, seed=seed)
    g = Multigraph.from_edges(sorted(simple.edges()), vertices=simple.nodes())
    assert is_flowable(g) == (is_bipartite(g) is not None)


@pytest.mark.parametrize(
    "g",
    [
        generators.complete_graph(4),
        generators.complete_bipartite(3, 3),
        generators.petersen(),
        Multigraph.from_edges([(0, 1), (0, 1), (0, 1)]),
        Multigraph.from_edges(sorted(nx.cubical_graph().edges())),
        Multigraph.from_edges(sorted(nx.circular_ladder_graph(3).edges())),
    ],
)
def test_named_cubic_graphs(g):
    assert is_flowable(g) == (is_bipartite(g) is not None)


# ── Colorings of drawings ──────────────────────────────────────────────────


@pytest.mark.parametrize("seed", range(30))
def test_crossing_free_maps_are_three_colorable_iff_flowable(seed):
    rng = random.Random(seed)
    d = _plane_map(rng, rng.randint(3, 8))
    assert d.crossings == ()
    assert (color_faces_exact(d, 3) is not None) == is_flowable(d.underlying)


@pytest.mark.parametrize("seed", range(30))
def test_two_colorable_iff_every_degree_is_even(seed):
    rng = random.Random(100 + seed)
    g = _random_multigraph(rng, max_order=5, max_size=7)
    d = _random_drawing(rng, g, max_bends=3)
    coloring = face_2_coloring(d)
    assert (coloring is not None) == is_eulerian(g)
    if coloring is not None:
        assert validate_coloring(d, coloring) is coloring


def _flowable_graph(rng: random.Random) -> Multigraph:
    pick = rng.randrange(4)
    if pick == 0:
        return generators.complete_bipartite(3, 3)
    if pick == 1:
        return generators.wheel(4)
    n = rng.randint(2, 4)
    doubled = [pair for v in range(1, n) for pair in [(rng.randrange(v), v)] * 2]
    return Multigraph.from_edges(doubled + ([(0, 0)] if pick == 3 else []))


@pytest.mark.parametrize("seed", range(20))
def test_flow_lifts_to_a_coloring_of_any_drawing(seed):
    rng = random.Random(200 + seed)
    g = _flowable_graph(rng)
    orientation = mod3_orientation(g)
    assert orientation is not None
    d = _random_drawing(rng, g, max_bends=2)
    lifted = lift_orientation(d, orientation)
    assert lifted.is_mod3()
    coloring = coloring_from_mod3(d, lifted)
    assert coloring[faces(d).outer] == 0
    assert validate_coloring(d, coloring) is coloring


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("seed", range(4))
def test_k3n_plus_circle_drawings_in_random_orders(n, seed):
    rng = random.Random(300 + 10 * n + seed)
    g = generators.k3n_plus(n)
    d = circle_planarization(g, _shuffled(rng, g))
    coloring = k3nplus_coloring(d)
    assert coloring.k == 3
    assert validate_coloring(d, coloring) is coloring


@pytest.mark.parametrize("seed", range(25))
def test_outer_face_construction_on_circle_drawings(seed):
    rng = random.Random(400 + seed)
    g = _ear_graph(rng, rng.randint(4, 8))
    d = circle_planarization(g, _shuffled(rng, g))
    coloring = outerface_3coloring(d)
    assert coloring[faces(d).outer] == 2
    assert validate_coloring(d, coloring) is coloring


@pytest.mark.parametrize("seed", range(25))
def test_leafless_construction_on_random_graphs(seed):
    rng = random.Random(500 + seed)
    g = _ear_graph(rng, rng.randint(3, 7))
    if seed % 3 == 0:
        g = generators.disjoint_union(g, _ear_graph(rng, rng.randint(3, 5)))
    d, coloring = leafless_3colorable_drawing(g)
    assert d.underlying == g
    assert validate_coloring(d, coloring) is coloring


# ── Planarizations ─────────────────────────────────────────────────────────


def _four_edge_connected_corpus() -> list[Multigraph]:
    corpus = [
        generators.complete_graph(5),
        generators.complete_graph(6),
        generators.complete_bipartite(4, 4),
    ]
    for seed in range(6):
        simple = nx.random_regular_graph(4, 6 + seed % 4, seed=seed)
        g = Multigraph.from_edges(sorted(simple.edges()), vertices=simple.nodes())
        if edge_connectivity(g, 3).value >= 4:
            corpus.append(g)
    return corpus


@pytest.mark.parametrize("g", _four_edge_connected_corpus())
def test_good_drawings_keep_four_edge_connectivity(g):
    rng = random.Random(g.size)
    for _ in range(3):
        d = circle_planarization(g, _shuffled(rng, g))
        assert is_good_drawing(d)[0]
        assert edge_connectivity(planar_graph(d), 3).value >= 4


# ── Normalization ──────────────────────────────────────────────────────────


@pytest.mark.parametrize("seed", range(40))
def test_normalization_of_random_drawings(seed):
    rng = random.Random(600 + seed)
    g = _random_multigraph(rng, max_order=4, max_size=5)
    d = _random_drawing(rng, g, max_bends=2)
    rounds_cap = crossing_triples(d) + touchings(d) + 1

    final, steps = normalize_with_steps(d)

    assert is_good_drawing(final)[0]
    assert final.underlying == g
    repairs = [step for step in steps if step.operation != "split_multicrossing"]
    assert len(repairs) <= 3 * rounds_cap
    assert crossing_triples(final) <= crossing_triples(d)
    for step in steps:
        if step.operation == "remove_touching":
            assert step.report.triples_after == step.report.triples_before - 1
    coloring = color_faces_exact(final, 3)
    if coloring is not None:
        back = transfer_coloring(steps, coloring)
        assert validate_coloring(d, back) is back


# ── Decisions ──────────────────────────────────────────────────────────────


def _decision_corpus() -> list[Multigraph]:
    rng = random.Random(700)
    corpus = [_random_multigraph(rng, max_order=6, max_size=9, loops=False) for _ in range(25)]
    corpus += [_ear_graph(rng, rng.randint(4, 6)) for _ in range(10)]
    corpus += [
        generators.complete_graph(4),
        generators.complete_graph(5),
        generators.complete_bipartite(3, 3),
        generators.k3n_plus(4),
        generators.wheel(5),
        generators.petersen(),
    ]
    return corpus


@pytest.mark.parametrize("g", _decision_corpus())
def test_every_decision_carries_a_valid_certificate(g):
    decision = decide_facially_3_colorable(g)
    assert certificate_verify(g, decision)
