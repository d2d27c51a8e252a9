"""Abstract multigraph value types."""

from __future__ import annotations

from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

from facetint.domain.exceptions import InvalidInputError, UnknownEdgeError, UnknownVertexError

if TYPE_CHECKING:
    import networkx as nx  # type: ignore[import-untyped]

VertexSet = frozenset[int]


@dataclass(frozen=True, slots=True)
class Edge:
    """An edge with a stable id; ``u == v`` marks a loop."""

    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, w: int) -> int:
        """Return the endpoint opposite to ``w``."""
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise UnknownVertexError(f"vertex {w} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Multigraph:
    """Finite multigraph with loops and parallel edges.

    Vertex and edge ids are non-negative integers kept in ascending order.
    Instances are immutable; every transformation returns a new graph that
    keeps the ids of surviving vertices and edges.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInputError("duplicate vertex id")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InvalidInputError("duplicate edge id")
        known = set(self.vertices)
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise UnknownVertexError(f"edge {e.id} has an undeclared endpoint")
            if e.id < 0:
                raise InvalidInputError(f"negative edge id {e.id}")
        if any(v < 0 for v in self.vertices):
            raise InvalidInputError("negative vertex id")
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    # ── Construction ────────────────────────────────────────────────────

    @classmethod
    def from_edges(
        cls,
        pairs: Iterable[tuple[int, int]],
        vertices: Iterable[int] | None = None,
    ) -> Multigraph:
        """Build a graph whose edge ids follow the order of ``pairs``."""
        edges = tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs))
        verts = set(vertices) if vertices is not None else set()
        for e in edges:
            verts.update((e.u, e.v))
        return cls(tuple(verts), edges)

    # ── Lookups ─────────────────────────────────────────────────────────

    @cached_property
    def _edge_index(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> dict[int, tuple[Edge, ...]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e)
            if not e.is_loop:
                inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge id {edge_id}") from None

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._edge_index

    def incident(self, v: int) -> tuple[Edge, ...]:
        """Edges incident to ``v``; a loop is listed once."""
        self.require_vertex(v)
        return self._incidence[v]

    def require_vertex(self, v: int) -> None:
        if v not in self.vertex_set:
            raise UnknownVertexError(f"unknown vertex id {v}")

    def require_vertices(self, vs: Collection[int]) -> None:
        missing = sorted(set(vs) - self.vertex_set)
        if missing:
            raise UnknownVertexError(f"unknown vertex ids {missing}")

    def multiplicity(self, u: int, v: int) -> int:
        """Number of edges joining ``u`` and ``v`` (loops when ``u == v``)."""
        return sum(1 for e in self.incident(u) if e.other(u) == v)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def max_degree(self) -> int:
        return max((self.degree_of(v) for v in self.vertices), default=0)

    @cached_property
    def min_degree(self) -> int:
        return min((self.degree_of(v) for v in self.vertices), default=0)

    def degree_of(self, v: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incident(v))

    @cached_property
    def is_simple(self) -> bool:
        seen: set[frozenset[int]] = set()
        for e in self.edges:
            if e.is_loop:
                return False
            key = frozenset((e.u, e.v))
            if key in seen:
                return False
            seen.add(key)
        return True

    @property
    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    @property
    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    # ── Derived graphs ──────────────────────────────────────────────────

    def induced(self, keep: Collection[int]) -> Multigraph:
        """Subgraph induced by ``keep`` (ids preserved)."""
        self.require_vertices(keep)
        kept = frozenset(keep)
        return Multigraph(
            tuple(kept),
            tuple(e for e in self.edges if e.u in kept and e.v in kept),
        )

    def without_edges(self, drop: Collection[int]) -> Multigraph:
        dropped = frozenset(drop)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in dropped))

    def with_edges(self, pairs: Iterable[tuple[int, int]]) -> Multigraph:
        """Append edges with fresh ids; new endpoints become vertices."""
        start = self.next_edge_id
        added = tuple(Edge(start + i, u, v) for i, (u, v) in enumerate(pairs))
        verts = set(self.vertices)
        for e in added:
            verts.update((e.u, e.v))
        return Multigraph(tuple(verts), self.edges + added)

    def simple(self) -> Multigraph:
        """Drop loops and keep the lowest-id edge of every parallel class."""
        seen: set[frozenset[int]] = set()
        kept: list[Edge] = []
        for e in self.edges:
            key = frozenset((e.u, e.v))
            if e.is_loop or key in seen:
                continue
            seen.add(key)
            kept.append(e)
        return Multigraph(self.vertices, tuple(kept))

    def relabeled(self, mapping: Mapping[int, int]) -> Multigraph:
        """Rename vertices through an injective ``mapping`` (edge ids kept)."""
        return Multigraph(
            tuple(mapping[v] for v in self.vertices),
            tuple(Edge(e.id, mapping[e.u], mapping[e.v]) for e in self.edges),
        )

    def to_networkx(self) -> nx.MultiGraph:  # type: ignore[type-arg]
        """Return an ``nx.MultiGraph`` keyed by edge id."""
        import networkx as nx  # type: ignore[import-untyped]

        graph: nx.MultiGraph = nx.MultiGraph()  # type: ignore[type-arg]
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.u, e.v, key=e.id)
        return graph

    def to_weighted_simple(self) -> nx.Graph:  # type: ignore[type-arg]
        """Loop-free simple graph whose ``weight`` is the edge multiplicity."""
        import networkx as nx  # type: ignore[import-untyped]

        graph: nx.Graph = nx.Graph()  # type: ignore[type-arg]
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            if e.is_loop:
                continue
            if graph.has_edge(e.u, e.v):
                graph[e.u][e.v]["weight"] += 1
            else:
                graph.add_edge(e.u, e.v, weight=1)
        return graph


@dataclass(frozen=True, slots=True)
class CutWitness:
    """An edge cut ``edges`` separating ``side_x`` from ``side_y``."""

    edges: frozenset[int]
    side_x: VertexSet
    side_y: VertexSet


@dataclass(frozen=True, slots=True)
class ConnectivityResult:
    """Edge connectivity, exact when at most the requested ceiling."""

    value: int
    exact: bool
    witness: CutWitness | None = None


@dataclass(frozen=True, slots=True)
class SubcontractionWitness:
    """Partition of the host vertices; ``classes[p]`` maps onto pattern vertex ``p``."""

    classes: Mapping[int, VertexSet] = field(default_factory=dict)
