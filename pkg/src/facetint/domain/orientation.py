"""Orientations, Z3 flows and excess prescriptions."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from facetint.domain.exceptions import InvalidInputError
from facetint.domain.graph import Multigraph


@dataclass(frozen=True)
class Orientation:
    """Direction of every edge of ``graph``.

    ``forward[e]`` is True when edge ``e`` points from its stored endpoint
    ``u`` to ``v``. For loops the flag only records a traversal direction.
    """

    graph: Multigraph
    forward: Mapping[int, bool]

    def __post_init__(self) -> None:
        ids = {e.id for e in self.graph.edges}
        if set(self.forward) != ids:
            raise InvalidInputError("orientation must direct every edge exactly once")

    @classmethod
    def from_arcs(cls, graph: Multigraph, arcs: Mapping[int, tuple[int, int]]) -> Orientation:
        """Build from ``edge id -> (tail, head)``."""
        forward: dict[int, bool] = {}
        for e in graph.edges:
            tail, head = arcs[e.id]
            if {tail, head} != {e.u, e.v}:
                raise InvalidInputError(f"arc {tail}->{head} does not match edge {e.id}")
            forward[e.id] = tail == e.u
        return cls(graph, forward)

    def tail(self, edge_id: int) -> int:
        e = self.graph.edge(edge_id)
        return e.u if self.forward[edge_id] else e.v

    def head(self, edge_id: int) -> int:
        e = self.graph.edge(edge_id)
        return e.v if self.forward[edge_id] else e.u

    def arcs(self) -> dict[int, tuple[int, int]]:
        return {e.id: (self.tail(e.id), self.head(e.id)) for e in self.graph.edges}

    def excess(self, v: int) -> int:
        """Out-degree minus in-degree; loops contribute nothing."""
        total = 0
        for e in self.graph.incident(v):
            if e.is_loop:
                continue
            total += 1 if self.tail(e.id) == v else -1
        return total

    def excesses(self) -> dict[int, int]:
        return {v: self.excess(v) for v in self.graph.vertices}

    def reversed(self) -> Orientation:
        return Orientation(self.graph, {e: not f for e, f in self.forward.items()})

    def is_mod3(self) -> bool:
        return all(x % 3 == 0 for x in self.excesses().values())

    def satisfies(self, target: ExcessTarget) -> bool:
        return all(
            (self.excess(v) - target.value(v)) % 3 == 0 for v in self.graph.vertices
        )


@dataclass(frozen=True)
class Z3Flow:
    """Nowhere-zero Z3 flow: an orientation with values in {1, 2}."""

    orientation: Orientation
    values: Mapping[int, int]

    def __post_init__(self) -> None:
        if set(self.values) != set(self.orientation.forward):
            raise InvalidInputError("flow must carry a value on every edge")
        if any(x not in (1, 2) for x in self.values.values()):
            raise InvalidInputError("flow values must be 1 or 2")

    def net_outflow(self, v: int) -> int:
        total = 0
        graph = self.orientation.graph
        for e in graph.incident(v):
            if e.is_loop:
                continue
            sign = 1 if self.orientation.tail(e.id) == v else -1
            total += sign * self.values[e.id]
        return total

    def is_valid(self) -> bool:
        """Kirchhoff's law modulo 3 at every vertex."""
        return all(self.net_outflow(v) % 3 == 0 for v in self.orientation.graph.vertices)


@dataclass(frozen=True)
class ExcessTarget:
    """Prescribed excess class ``p(v)`` in Z3 for every vertex (default 0)."""

    values: Mapping[int, int]

    def __post_init__(self) -> None:
        normalized = {v: x % 3 for v, x in self.values.items()}
        object.__setattr__(self, "values", normalized)
        if sum(normalized.values()) % 3 != 0:
            raise InvalidInputError("excess targets must sum to 0 modulo 3")

    @classmethod
    def zero(cls) -> ExcessTarget:
        return cls({})

    def value(self, v: int) -> int:
        return self.values.get(v, 0)


@dataclass(frozen=True)
class NearMod3Orientation:
    """Orientation missing exactly ``u1`` and ``u2`` with classes alpha and -alpha."""

    orientation: Orientation
    u1: int
    u2: int
    alpha: int

    def reversed(self) -> NearMod3Orientation:
        return NearMod3Orientation(self.orientation.reversed(), self.u1, self.u2, 3 - self.alpha)
