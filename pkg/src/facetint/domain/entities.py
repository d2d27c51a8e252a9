"""Domain entities: pure result types with no external dependencies."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar

from facetint.domain.graph import Multigraph, VertexSet
from facetint.domain.orientation import Orientation


@dataclass(frozen=True)
class FaceColoring:
    """Color in ``{0, ..., k-1}`` for every face id of a FaceStructure."""

    colors: Mapping[int, int]
    k: int

    def __getitem__(self, face: int) -> int:
        return self.colors[face]

    @property
    def used(self) -> int:
        return len(set(self.colors.values()))


# ── Normalization ──────────────────────────────────────────────────────────


class ViolationKind(str, Enum):
    """Ways a drawing can fail to be good."""

    MULTI_CROSSING = "multi_crossing"
    TOUCHING = "touching"
    SELF_INTERSECTION = "self_intersection"
    ADJACENT_CROSSING = "adjacent_crossing"
    DOUBLE_CROSSING = "double_crossing"
    LOOP_CROSSING = "loop_crossing"


@dataclass(frozen=True, slots=True)
class Violation:
    kind: ViolationKind
    sites: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SurgeryReport:
    """Measure bookkeeping for one surgery."""

    operation: str
    sites: tuple[int, ...]
    edges: tuple[int, ...]
    triples_before: int
    triples_after: int
    touchings_before: int
    touchings_after: int


# ── Decisions and certificates ─────────────────────────────────────────────


class Verdict(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Mod3OrientationCertificate:
    kind: ClassVar[str] = "mod3-orientation"
    orientation: Orientation


@dataclass(frozen=True)
class FourEdgeConnectedCertificate:
    """Max-flow values from ``root`` to every other vertex, each claimed to be at least 4."""

    kind: ClassVar[str] = "four-edge-connected"
    root: int
    local_connectivity: Mapping[int, int]


@dataclass(frozen=True)
class CubicBipartiteCertificate:
    """Bipartition of a cubic graph, or an odd cycle refuting one."""

    kind: ClassVar[str] = "cubic-bipartite"
    sides: tuple[VertexSet, VertexSet] | None = None
    odd_cycle: tuple[int, ...] | None = None


@dataclass(frozen=True)
class K33FreeFlowCertificate:
    kind: ClassVar[str] = "k33-free-flow"
    searched_vertices: int
    orientation: Orientation | None = None


@dataclass(frozen=True)
class K3nPlusCertificate:
    """``side_a = (x1, x2, x3)`` with ``x1 x2`` the extra edge; ``side_b`` the n-side."""

    kind: ClassVar[str] = "k3n-plus"
    n: int
    side_a: tuple[int, int, int]
    side_b: tuple[int, ...]


@dataclass(frozen=True)
class BridgeObstructionCertificate:
    """A bridge; drawing both sides into the outer face makes it self-touching."""

    kind: ClassVar[str] = "bridge"
    edge: int
    side_x: VertexSet
    side_y: VertexSet


@dataclass(frozen=True)
class DegreeOneObstructionCertificate:
    kind: ClassVar[str] = "degree-one"
    vertex: int


@dataclass(frozen=True)
class BadSubcontractionCertificate:
    """Identification classes mapping onto a planar pattern without a 3-flow."""

    kind: ClassVar[str] = "bad-subcontraction"
    pattern_name: str
    pattern: Multigraph
    classes: Mapping[int, VertexSet]


@dataclass(frozen=True)
class SubcubicNoFlowCertificate:
    kind: ClassVar[str] = "subcubic-no-flow"
    edges_checked: int
    method: str


Certificate = (
    Mod3OrientationCertificate
    | FourEdgeConnectedCertificate
    | CubicBipartiteCertificate
    | K33FreeFlowCertificate
    | K3nPlusCertificate
    | BridgeObstructionCertificate
    | DegreeOneObstructionCertificate
    | BadSubcontractionCertificate
    | SubcubicNoFlowCertificate
)


@dataclass(frozen=True)
class Decision:
    """Verdict of the facial 3-colorability decider."""

    verdict: Verdict
    rule: str | None
    certificate: Certificate | None
    attempted: tuple[str, ...] = ()
    timings: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ConjectureReport:
    """Exploratory evaluation of a graph against the K_{3,n}^+ exclusion conjecture."""

    verdict: Verdict
    flowable: bool
    k3nplus_free: bool
    k3nplus_found: int | None
    filters: Mapping[str, bool]

    @property
    def counterexample(self) -> bool:
        """Facially 3-colorable, free of K_{3,n}^+ subcontractions, yet without a 3-flow."""
        return self.verdict is Verdict.YES and self.k3nplus_free and not self.flowable

    @property
    def failed_filters(self) -> tuple[str, ...]:
        return tuple(name for name, ok in self.filters.items() if not ok)
