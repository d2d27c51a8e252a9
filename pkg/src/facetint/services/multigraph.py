"""Multigraph operations: degrees, cuts, identification and small-pattern searches."""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Collection, Iterator, Mapping

import networkx as nx  # type: ignore[import-untyped]

from facetint.domain.exceptions import (
    GuardExceededError,
    InvalidInputError,
    LoopContractionError,
)
from facetint.domain.graph import (
    ConnectivityResult,
    CutWitness,
    Edge,
    Multigraph,
    SubcontractionWitness,
    VertexSet,
)
from facetint.domain.value_objects import SearchGuards

logger = logging.getLogger(__name__)

_DEFAULT_GUARDS = SearchGuards()


def degree(g: Multigraph, v: int) -> int:
    """Incident edge count with loops counted twice."""
    return g.degree_of(v)


def is_eulerian(g: Multigraph) -> bool:
    """Every degree is even; connectivity is not required."""
    return all(g.degree_of(v) % 2 == 0 for v in g.vertices)


def components(g: Multigraph) -> list[VertexSet]:
    """Connected components ordered by their smallest vertex."""
    comps = [frozenset(c) for c in nx.connected_components(g.to_weighted_simple())]
    return sorted(comps, key=min)


def is_connected(g: Multigraph) -> bool:
    return g.order <= 1 or len(components(g)) == 1


def bridges(g: Multigraph) -> frozenset[int]:
    """Cut edges; loops and edges with a parallel partner are never bridges."""
    graph = g.without_edges([e.id for e in g.edges if e.is_loop]).to_networkx()
    found: set[int] = set()
    for u, v in nx.bridges(graph):
        keys = list(graph[u][v])
        if len(keys) == 1:
            found.add(keys[0])
    return frozenset(found)


def identify(g: Multigraph, x: Collection[int]) -> Multigraph:
    """G/X: merge X into its smallest vertex and delete every edge inside X."""
    if not x:
        raise InvalidInputError("cannot identify an empty vertex set")
    g.require_vertices(x)
    merged = frozenset(x)
    v_x = min(merged)
    vertices = tuple(v for v in g.vertices if v not in merged) + (v_x,)
    edges: list[Edge] = []
    for e in g.edges:
        u_in, v_in = e.u in merged, e.v in merged
        if u_in and v_in:
            continue
        edges.append(Edge(e.id, v_x if u_in else e.u, v_x if v_in else e.v))
    return Multigraph(vertices, tuple(edges))


def contract_edge(g: Multigraph, edge_id: int) -> Multigraph:
    e = g.edge(edge_id)
    if e.is_loop:
        raise LoopContractionError(f"edge {edge_id} is a loop")
    return identify(g, (e.u, e.v))


def apply_partition(g: Multigraph, classes: Collection[Collection[int]]) -> Multigraph:
    """Identify every class in turn; each class ends up at its smallest vertex."""
    result = g
    for cls in classes:
        if len(cls) > 1:
            result = identify(result, cls)
    return result


def edge_connectivity(g: Multigraph, ceiling: int) -> ConnectivityResult:
    """Exact edge connectivity when it is at most ``ceiling``.

    Larger values are reported as ``ceiling + 1`` with ``exact=False``.
    """
    if g.order <= 1:
        return ConnectivityResult(ceiling + 1, exact=False)
    comps = components(g)
    if len(comps) > 1:
        side_x = comps[0]
        return ConnectivityResult(
            0, exact=True, witness=CutWitness(frozenset(), side_x, g.vertex_set - side_x)
        )
    value, (part_x, _) = nx.stoer_wagner(g.to_weighted_simple())
    if value > ceiling:
        return ConnectivityResult(ceiling + 1, exact=False)
    side_x = frozenset(part_x)
    cut = frozenset(e.id for e in g.edges if (e.u in side_x) != (e.v in side_x))
    witness = CutWitness(cut, side_x, g.vertex_set - side_x)
    return ConnectivityResult(int(value), exact=True, witness=witness)


def is_bipartite(g: Multigraph) -> tuple[VertexSet, VertexSet] | None:
    """Two-coloring of the vertices, or None when an odd closed walk exists."""
    if any(e.is_loop for e in g.edges):
        return None
    graph = g.to_weighted_simple()
    if not nx.is_bipartite(graph):
        return None
    coloring: dict[int, int] = nx.bipartite.color(graph)
    side_a = frozenset(v for v, c in coloring.items() if c == 0)
    return side_a, g.vertex_set - side_a


def shortest_odd_cycle(g: Multigraph) -> tuple[int, ...] | None:
    """Vertex sequence of a shortest odd cycle (chordless), or None if bipartite."""
    loops = [e for e in g.edges if e.is_loop]
    if loops:
        return (loops[0].u,)
    simple = g.to_weighted_simple()
    cover: nx.Graph = nx.Graph()  # type: ignore[type-arg]
    for u, v in simple.edges():
        cover.add_edge((u, 0), (v, 1))
        cover.add_edge((u, 1), (v, 0))
    best: list[tuple[int, int]] | None = None
    for s in g.vertices:
        if (s, 0) not in cover:
            continue
        try:
            path = nx.shortest_path(cover, (s, 0), (s, 1))
        except nx.NetworkXNoPath:
            continue
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        return None
    return tuple(v for v, _ in best[:-1])


def shortest_cycle(g: Multigraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Shortest cycle as ``(vertices, edge ids)``: loops, then digons, then BFS."""
    for e in g.edges:
        if e.is_loop:
            return (e.u,), (e.id,)
    first_by_pair: dict[frozenset[int], int] = {}
    for e in g.edges:
        key = frozenset((e.u, e.v))
        if key in first_by_pair:
            return (g.edge(first_by_pair[key]).u, g.edge(first_by_pair[key]).v), (
                first_by_pair[key],
                e.id,
            )
        first_by_pair[key] = e.id
    simple = g.to_weighted_simple()
    best: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    for e in g.edges:
        simple.remove_edge(e.u, e.v)
        try:
            path = nx.shortest_path(simple, e.v, e.u)
        except nx.NetworkXNoPath:
            path = None
        simple.add_edge(e.u, e.v, weight=1)
        if path is None or (best is not None and len(path) >= len(best[0])):
            continue
        ids = [e.id]
        for a, b in itertools.pairwise(path):
            ids.append(first_by_pair[frozenset((a, b))])
        best = (e.u, *path[:-1]), tuple(ids)
    return best


def small_edge_cuts(g: Multigraph, max_size: int) -> Iterator[CutWitness]:
    """Bonds of at most ``max_size`` non-loop edges, smallest sorted edge ids first."""
    if not is_connected(g) or g.order < 2:
        return
    candidates = [e.id for e in g.edges if not e.is_loop]
    for size in range(1, max_size + 1):
        for subset in itertools.combinations(candidates, size):
            rest = g.without_edges(subset)
            comps = components(rest)
            if len(comps) != 2:
                continue
            side_x, side_y = comps
            if all((g.edge(e).u in side_x) != (g.edge(e).v in side_x) for e in subset):
                yield CutWitness(frozenset(subset), side_x, side_y)


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    """Multigraph isomorphism (edge multiplicities and loops respected)."""
    return bool(nx.is_isomorphic(g.to_networkx(), h.to_networkx()))


# ── Subcontraction search ──────────────────────────────────────────────────


class _SubcontractionSearch:
    """Surjection V(g) -> V(pattern) with class-pair edge counts as required."""

    def __init__(self, g: Multigraph, pattern: Multigraph, exact: bool) -> None:
        self.g = g
        self.pattern = pattern
        self.exact = exact
        self.k = pattern.order
        self.index = {p: i for i, p in enumerate(pattern.vertices)}
        self.required = [[0] * self.k for _ in range(self.k)]
        self.loops_required = [0] * self.k
        for e in pattern.edges:
            i, j = self.index[e.u], self.index[e.v]
            if i == j:
                self.loops_required[i] += 1
            else:
                self.required[i][j] += 1
                self.required[j][i] += 1
        self.order = self._host_order()
        self.position = {v: n for n, v in enumerate(self.order)}
        self.loops = Counter(e.u for e in g.edges if e.is_loop)
        nonloop_host = sum(1 for e in g.edges if not e.is_loop)
        nonloop_pattern = sum(1 for e in pattern.edges if not e.is_loop)
        self.internal_budget = nonloop_host - nonloop_pattern
        self.assigned: dict[int, int] = {}
        self.count = [[0] * self.k for _ in range(self.k)]
        self.sizes = [0] * self.k
        self.internal = 0

    def _host_order(self) -> list[int]:
        """BFS order from the highest-degree vertex, so constraints bite early."""
        order: list[int] = []
        seen: set[int] = set()
        by_degree = sorted(self.g.vertices, key=lambda v: (-self.g.degree_of(v), v))
        for root in by_degree:
            if root in seen:
                continue
            queue = [root]
            seen.add(root)
            while queue:
                v = queue.pop(0)
                order.append(v)
                nbrs = sorted({e.other(v) for e in self.g.incident(v)} - seen)
                for w in sorted(nbrs, key=lambda w: (-self.g.degree_of(w), w)):
                    seen.add(w)
                    queue.append(w)
        return order

    def run(self) -> SubcontractionWitness | None:
        if self.k == 0 or self.k > self.g.order or self.internal_budget < 0:
            return None
        if self._extend(0):
            classes: dict[int, set[int]] = {p: set() for p in self.pattern.vertices}
            for v, i in self.assigned.items():
                classes[self.pattern.vertices[i]].add(v)
            return SubcontractionWitness({p: frozenset(c) for p, c in classes.items()})
        return None

    def _place(self, v: int, i: int, sign: int) -> bool:
        """Add (sign=1) or remove (sign=-1) ``v`` from class ``i``; report feasibility."""
        ok = True
        for e in self.g.incident(v):
            if e.is_loop:
                continue
            w = e.other(v)
            j = self.assigned.get(w)
            if j is None:
                continue
            if j == i:
                self.internal += sign
                if self.exact and self.internal > self.internal_budget:
                    ok = False
            else:
                self.count[i][j] += sign
                self.count[j][i] += sign
                if self.exact and self.count[i][j] > self.required[i][j]:
                    ok = False
        self.sizes[i] += sign
        return ok

    def _extend(self, n: int) -> bool:
        if n == len(self.order):
            return self._complete()
        empty = sum(1 for s in self.sizes if s == 0)
        if len(self.order) - n < empty:
            return False
        v = self.order[n]
        for i in range(self.k):
            feasible = self._place(v, i, 1)
            self.assigned[v] = i
            if feasible and self._extend(n + 1):
                return True
            del self.assigned[v]
            self._place(v, i, -1)
        return False

    def _complete(self) -> bool:
        if any(s == 0 for s in self.sizes):
            return False
        for i in range(self.k):
            for j in range(i + 1, self.k):
                have, need = self.count[i][j], self.required[i][j]
                if have < need or (self.exact and have != need):
                    return False
        for i in range(self.k):
            need = self.loops_required[i]
            if need == 0:
                continue
            members = [v for v, c in self.assigned.items() if c == i]
            if len(members) != 1:
                return False
            have = self.loops[members[0]]
            if have < need or (self.exact and have != need):
                return False
        return True


def has_subcontraction(
    g: Multigraph,
    pattern: Multigraph,
    *,
    exact: bool = False,
    guards: SearchGuards = _DEFAULT_GUARDS,
) -> SubcontractionWitness | None:
    """Partition of V(g) whose identification contains ``pattern``.

    With ``exact=False`` the edge counts between classes must be at least the
    pattern multiplicities; with ``exact=True`` they must match, so the
    identified graph is (up to loops at singleton classes) the pattern itself.
    """
    if g.order > guards.subcontraction_max_vertices:
        raise GuardExceededError(
            f"subcontraction search needs |V| <= {guards.subcontraction_max_vertices}, "
            f"got {g.order}"
        )
    witness = _SubcontractionSearch(g, pattern, exact).run()
    logger.debug("subcontraction onto %d vertices: %s", pattern.order, witness is not None)
    return witness


# ── Minor search ───────────────────────────────────────────────────────────

_Label = frozenset[int]


def _label_key(label: _Label) -> tuple[int, ...]:
    return tuple(sorted(label))


def _reduce(h: nx.Graph, min_degree: int) -> nx.Graph:  # type: ignore[type-arg]
    """Delete low-degree vertices and suppress degree-2 vertices when safe."""
    changed = True
    while changed:
        changed = False
        for node in sorted(h.nodes, key=_label_key):
            deg = h.degree(node)
            if min_degree >= 2 and deg <= 1:
                h.remove_node(node)
                changed = True
                break
            if min_degree >= 3 and deg == 2:
                a = min(h.neighbors(node), key=_label_key)
                _contract_into(h, node, a)
                changed = True
                break
    return h


def _contract_into(h: nx.Graph, node: _Label, into: _Label) -> _Label:  # type: ignore[type-arg]
    merged = node | into
    nbrs = (set(h.neighbors(node)) | set(h.neighbors(into))) - {node, into}
    h.remove_nodes_from([node, into])
    h.add_node(merged)
    h.add_edges_from((merged, w) for w in nbrs)
    return merged


_GraphKey = tuple[frozenset[_Label], frozenset[frozenset[_Label]]]


def _graph_key(h: nx.Graph) -> _GraphKey:  # type: ignore[type-arg]
    return frozenset(h.nodes), frozenset(frozenset(e) for e in h.edges)


class _MinorSearch:
    def __init__(self, pattern: nx.Graph) -> None:  # type: ignore[type-arg]
        self.pattern = pattern
        self.p_nodes = pattern.number_of_nodes()
        self.p_edges = pattern.number_of_edges()
        self.min_degree = min((d for _, d in pattern.degree), default=0)
        self.pattern_planar = nx.check_planarity(pattern)[0]
        self.seen: set[_GraphKey] = set()

    def search(self, h: nx.Graph) -> dict[int, _Label] | None:  # type: ignore[type-arg]
        h = _reduce(h, self.min_degree)
        if h.number_of_nodes() < self.p_nodes or h.number_of_edges() < self.p_edges:
            return None
        key = _graph_key(h)
        if key in self.seen:
            return None
        self.seen.add(key)
        if not self.pattern_planar and nx.check_planarity(h)[0]:
            return None
        matcher = nx.isomorphism.GraphMatcher(h, self.pattern)
        if matcher.subgraph_is_monomorphic():
            return {p: label for label, p in matcher.mapping.items()}
        u, v = min(h.edges, key=lambda e: sorted((_label_key(e[0]), _label_key(e[1]))))
        deleted = h.copy()
        deleted.remove_edge(u, v)
        found = self.search(deleted)
        if found is not None:
            return found
        contracted = h.copy()
        _contract_into(contracted, v, u)
        return self.search(contracted)


def has_minor(
    g: Multigraph,
    pattern: Multigraph,
    *,
    guards: SearchGuards = _DEFAULT_GUARDS,
) -> dict[int, VertexSet] | None:
    """Branch sets of a ``pattern`` minor in ``g`` (loops and parallels ignored)."""
    if g.order > guards.minor_max_vertices:
        raise GuardExceededError(
            f"minor search needs |V| <= {guards.minor_max_vertices}, got {g.order}"
        )
    host: nx.Graph = nx.Graph()  # type: ignore[type-arg]
    host.add_nodes_from(frozenset((v,)) for v in g.vertices)
    host.add_edges_from(
        (frozenset((e.u,)), frozenset((e.v,))) for e in g.edges if not e.is_loop
    )
    target = pattern.to_weighted_simple()
    branch_sets = _MinorSearch(target).search(host)
    logger.debug("minor search on %d vertices: %s", g.order, branch_sets is not None)
    if branch_sets is None:
        return None
    return {p: frozenset(label) for p, label in branch_sets.items()}


def branch_sets_valid(
    g: Multigraph, pattern: Multigraph, branch_sets: Mapping[int, Collection[int]]
) -> bool:
    """Disjoint connected branch sets with an edge for every pattern edge."""
    seen: set[int] = set()
    for members in branch_sets.values():
        if not members or seen & set(members):
            return False
        seen |= set(members)
        if not is_connected(g.induced(members)):
            return False
    if set(branch_sets) != set(pattern.vertices):
        return False
    owner = {v: p for p, members in branch_sets.items() for v in members}
    joined = {
        frozenset((owner[e.u], owner[e.v]))
        for e in g.edges
        if e.u in owner and e.v in owner and owner[e.u] != owner[e.v]
    }
    return all(frozenset((e.u, e.v)) in joined for e in pattern.edges if not e.is_loop)


# ── Recognition ────────────────────────────────────────────────────────────


def recognize_k3n_plus(g: Multigraph) -> tuple[tuple[int, int, int], tuple[int, ...]] | None:
    """Sides ``((x1, x2, x3), B)`` if ``g`` is K_{3,n}^+ with extra edge ``x1 x2``.

    Degree fingerprint first, then an explicit check of every adjacency.
    """
    n = g.order - 3
    if n < 1 or not g.is_simple or g.size != 3 * n + 1:
        return None
    for e in g.edges:
        if g.degree_of(e.u) != n + 1 or g.degree_of(e.v) != n + 1:
            continue
        x1, x2 = sorted((e.u, e.v))
        common = {f.other(x1) for f in g.incident(x1)} & {f.other(x2) for f in g.incident(x2)}
        rest = set(g.vertices) - common - {x1, x2}
        if len(common) != n or len(rest) != 1:
            continue
        (x3,) = rest
        side_b = tuple(sorted(common))
        if all(g.multiplicity(x3, b) == 1 for b in side_b) and g.degree_of(x3) == n:
            return (x1, x2, x3), side_b
    return None
