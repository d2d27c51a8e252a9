"""Pydantic JSON DTOs for the command-line boundary (``"schema": 1``)."""

from __future__ import annotations

from collections.abc import Iterable
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from facetint.domain.entities import (
    BadSubcontractionCertificate,
    BridgeObstructionCertificate,
    Certificate,
    ConjectureReport,
    CubicBipartiteCertificate,
    Decision,
    DegreeOneObstructionCertificate,
    FourEdgeConnectedCertificate,
    K3nPlusCertificate,
    K33FreeFlowCertificate,
    Mod3OrientationCertificate,
    SubcubicNoFlowCertificate,
    SurgeryReport,
    Verdict,
)
from facetint.domain.exceptions import FacetintError, FormatError
from facetint.domain.graph import Edge, Multigraph
from facetint.domain.orientation import Orientation

SCHEMA_VERSION = 1


class _Dto(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


def _sorted_set(values: Iterable[int]) -> list[int]:
    return sorted(values)


# ── Certificates ───────────────────────────────────────────────────────────


class Mod3OrientationDto(_Dto):
    kind: Literal["mod3-orientation"] = "mod3-orientation"
    arcs: dict[int, tuple[int, int]]


class FourEdgeConnectedDto(_Dto):
    kind: Literal["four-edge-connected"] = "four-edge-connected"
    root: int
    local_connectivity: dict[int, int]


class CubicBipartiteDto(_Dto):
    kind: Literal["cubic-bipartite"] = "cubic-bipartite"
    sides: tuple[list[int], list[int]] | None = None
    odd_cycle: list[int] | None = None


class K33FreeFlowDto(_Dto):
    kind: Literal["k33-free-flow"] = "k33-free-flow"
    searched_vertices: int
    arcs: dict[int, tuple[int, int]] | None = None


class K3nPlusDto(_Dto):
    kind: Literal["k3n-plus"] = "k3n-plus"
    n: int
    side_a: tuple[int, int, int]
    side_b: list[int]


class BridgeObstructionDto(_Dto):
    kind: Literal["bridge"] = "bridge"
    edge: int
    side_x: list[int]
    side_y: list[int]


class DegreeOneObstructionDto(_Dto):
    kind: Literal["degree-one"] = "degree-one"
    vertex: int


class PatternDto(_Dto):
    """A small multigraph written as vertex ids plus ``[id, u, v]`` edges."""

    vertices: list[int]
    edges: list[tuple[int, int, int]]

    @classmethod
    def of(cls, g: Multigraph) -> PatternDto:
        return cls(vertices=list(g.vertices), edges=[(e.id, e.u, e.v) for e in g.edges])

    def to_graph(self) -> Multigraph:
        return Multigraph(tuple(self.vertices), tuple(Edge(*e) for e in self.edges))


class BadSubcontractionDto(_Dto):
    kind: Literal["bad-subcontraction"] = "bad-subcontraction"
    pattern_name: str
    pattern: PatternDto
    classes: dict[int, list[int]]


class SubcubicNoFlowDto(_Dto):
    kind: Literal["subcubic-no-flow"] = "subcubic-no-flow"
    edges_checked: int
    method: str


CertificateDto = Annotated[
    Mod3OrientationDto
    | FourEdgeConnectedDto
    | CubicBipartiteDto
    | K33FreeFlowDto
    | K3nPlusDto
    | BridgeObstructionDto
    | DegreeOneObstructionDto
    | BadSubcontractionDto
    | SubcubicNoFlowDto,
    Field(discriminator="kind"),
]


def certificate_to_dto(c: Certificate) -> CertificateDto:
    if isinstance(c, Mod3OrientationCertificate):
        return Mod3OrientationDto(arcs=c.orientation.arcs())
    if isinstance(c, FourEdgeConnectedCertificate):
        return FourEdgeConnectedDto(root=c.root, local_connectivity=dict(c.local_connectivity))
    if isinstance(c, CubicBipartiteCertificate):
        sides = None
        if c.sides is not None:
            sides = (_sorted_set(c.sides[0]), _sorted_set(c.sides[1]))
        odd = list(c.odd_cycle) if c.odd_cycle is not None else None
        return CubicBipartiteDto(sides=sides, odd_cycle=odd)
    if isinstance(c, K33FreeFlowCertificate):
        arcs = c.orientation.arcs() if c.orientation is not None else None
        return K33FreeFlowDto(searched_vertices=c.searched_vertices, arcs=arcs)
    if isinstance(c, K3nPlusCertificate):
        return K3nPlusDto(n=c.n, side_a=c.side_a, side_b=list(c.side_b))
    if isinstance(c, BridgeObstructionCertificate):
        return BridgeObstructionDto(
            edge=c.edge, side_x=_sorted_set(c.side_x), side_y=_sorted_set(c.side_y)
        )
    if isinstance(c, DegreeOneObstructionCertificate):
        return DegreeOneObstructionDto(vertex=c.vertex)
    if isinstance(c, BadSubcontractionCertificate):
        return BadSubcontractionDto(
            pattern_name=c.pattern_name,
            pattern=PatternDto.of(c.pattern),
            classes={p: _sorted_set(members) for p, members in c.classes.items()},
        )
    return SubcubicNoFlowDto(edges_checked=c.edges_checked, method=c.method)


def certificate_from_dto(dto: CertificateDto, g: Multigraph) -> Certificate:
    """Rebuild a domain certificate; orientations are bound to ``g``."""
    if isinstance(dto, Mod3OrientationDto):
        return Mod3OrientationCertificate(Orientation.from_arcs(g, dto.arcs))
    if isinstance(dto, FourEdgeConnectedDto):
        return FourEdgeConnectedCertificate(dto.root, dict(dto.local_connectivity))
    if isinstance(dto, CubicBipartiteDto):
        sides = None
        if dto.sides is not None:
            sides = (frozenset(dto.sides[0]), frozenset(dto.sides[1]))
        odd = tuple(dto.odd_cycle) if dto.odd_cycle is not None else None
        return CubicBipartiteCertificate(sides, odd)
    if isinstance(dto, K33FreeFlowDto):
        orientation = Orientation.from_arcs(g, dto.arcs) if dto.arcs is not None else None
        return K33FreeFlowCertificate(dto.searched_vertices, orientation)
    if isinstance(dto, K3nPlusDto):
        return K3nPlusCertificate(dto.n, dto.side_a, tuple(dto.side_b))
    if isinstance(dto, BridgeObstructionDto):
        return BridgeObstructionCertificate(
            dto.edge, frozenset(dto.side_x), frozenset(dto.side_y)
        )
    if isinstance(dto, DegreeOneObstructionDto):
        return DegreeOneObstructionCertificate(dto.vertex)
    if isinstance(dto, BadSubcontractionDto):
        return BadSubcontractionCertificate(
            dto.pattern_name,
            dto.pattern.to_graph(),
            {p: frozenset(members) for p, members in dto.classes.items()},
        )
    return SubcubicNoFlowCertificate(dto.edges_checked, dto.method)


# ── Decisions ──────────────────────────────────────────────────────────────


class DecisionDto(_Dto):
    """JSON form of a decider verdict."""

    schema_: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    verdict: Verdict
    rule: str | None = None
    certificate: CertificateDto | None = None
    attempted: list[str] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    @field_validator("timings")
    @classmethod
    def _non_negative(cls, v: dict[str, float]) -> dict[str, float]:
        if any(t < 0 for t in v.values()):
            msg = "timings must be non-negative"
            raise ValueError(msg)
        return v


def decision_to_json(d: Decision, indent: int | None = 2) -> str:
    dto = DecisionDto(
        verdict=d.verdict,
        rule=d.rule,
        certificate=certificate_to_dto(d.certificate) if d.certificate is not None else None,
        attempted=list(d.attempted),
        timings={name: round(t, 6) for name, t in d.timings.items()},
    )
    return dto.model_dump_json(by_alias=True, indent=indent)


def decision_from_json(text: str, g: Multigraph) -> Decision:
    """Parse a decision file written by ``decision_to_json`` against graph ``g``."""
    try:
        dto = DecisionDto.model_validate_json(text)
        certificate = (
            certificate_from_dto(dto.certificate, g) if dto.certificate is not None else None
        )
    except ValidationError as exc:
        raise FormatError(f"decision file: {exc.error_count()} validation error(s)") from exc
    except (KeyError, FacetintError) as exc:
        raise FormatError(f"decision certificate does not fit the graph: {exc}") from exc
    return Decision(dto.verdict, dto.rule, certificate, tuple(dto.attempted), dto.timings)


# ── Reports ────────────────────────────────────────────────────────────────


class SurgeryReportDto(_Dto):
    schema_: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    operation: str
    sites: list[int]
    edges: list[int]
    triples_before: int
    triples_after: int
    touchings_before: int
    touchings_after: int

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


def reports_to_jsonl(reports: Iterable[SurgeryReport]) -> str:
    """One JSON object per surgery, in application order."""
    lines = [
        SurgeryReportDto(
            operation=r.operation,
            sites=list(r.sites),
            edges=list(r.edges),
            triples_before=r.triples_before,
            triples_after=r.triples_after,
            touchings_before=r.touchings_before,
            touchings_after=r.touchings_after,
        ).model_dump_json(by_alias=True)
        for r in reports
    ]
    return "".join(f"{line}\n" for line in lines)


class ConjectureReportDto(_Dto):
    schema_: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    verdict: Verdict
    flowable: bool
    k3nplus_free: bool
    k3nplus_found: int | None
    counterexample: bool
    failed_filters: list[str]
    filters: dict[str, bool]

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


def conjecture_to_json(report: ConjectureReport) -> str:
    return ConjectureReportDto(
        verdict=report.verdict,
        flowable=report.flowable,
        k3nplus_free=report.k3nplus_free,
        k3nplus_found=report.k3nplus_found,
        counterexample=report.counterexample,
        failed_filters=list(report.failed_filters),
        filters=dict(report.filters),
    ).model_dump_json(by_alias=True, indent=2)
