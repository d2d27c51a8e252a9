from __future__ import annotations

import dataclasses

import pytest

from facetint.domain.entities import (
    BadSubcontractionCertificate,
    Decision,
    DegreeOneObstructionCertificate,
    FourEdgeConnectedCertificate,
    K3nPlusCertificate,
    Mod3OrientationCertificate,
    Verdict,
)
from facetint.domain.exceptions import CertificateError, GuardExceededError, InvalidInputError
from facetint.domain.graph import Multigraph
from facetint.domain.orientation import Orientation
from facetint.domain.value_objects import SearchGuards
from facetint.services import generators
from facetint.services.certificates import certificate_verify
from facetint.services.conjecture import (
    conjecture_gate,
    minimal_counterexample_filters,
    smallest_k3nplus_subcontraction,
)
from facetint.services.decide import check_pattern, decide_facially_3_colorable, local_connectivity

K4 = generators.complete_graph(4)
K33 = generators.complete_bipartite(3, 3)

LADDER = [
    ("P3", generators.path(3), Verdict.NO, "degree-one"),
    (
        "two-triangles",
        Multigraph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]),
        Verdict.NO,
        "bridge",
    ),
    ("K33", K33, Verdict.YES, "mod3-orientation"),
    ("C4", generators.cycle(4), Verdict.YES, "mod3-orientation"),
    ("K4", K4, Verdict.NO, "cubic-bipartite"),
    ("petersen", generators.petersen(), Verdict.NO, "cubic-bipartite"),
    ("W5", generators.wheel(5), Verdict.NO, "k33-minor-free"),
    ("K34+", generators.k3n_plus(4), Verdict.YES, "k3n-plus"),
    (
        "subdivided-K4",
        Multigraph.from_edges([(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]),
        Verdict.NO,
        "subcubic-flow",
    ),
]


@pytest.mark.parametrize(("name", "g", "verdict", "rule"), LADDER)
def test_decider_ladder(name, g, verdict, rule):
    decision = decide_facially_3_colorable(g)
    assert decision.verdict is verdict
    assert decision.rule == rule
    assert decision.attempted[-1] == rule or rule == "cubic-bipartite"
    assert certificate_verify(g, decision)


def test_leaf_certificate_names_the_leaf():
    decision = decide_facially_3_colorable(generators.path(3))
    assert decision.certificate == DegreeOneObstructionCertificate(0)


def test_bridge_certificate_separates_the_triangles():
    g = Multigraph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    decision = decide_facially_3_colorable(g)
    assert decision.certificate.edge == 6
    assert decision.certificate.side_x == {0, 1, 2}
    assert decision.certificate.side_y == {3, 4, 5}


def test_k4_is_refuted_by_its_w3_subcontraction():
    decision = decide_facially_3_colorable(K4)
    assert isinstance(decision.certificate, BadSubcontractionCertificate)
    assert decision.certificate.pattern_name == "W3"
    assert decision.attempted == (
        "degree-one",
        "bridge",
        "mod3-orientation",
        "four-edge-connected",
        "subcubic-flow",
    )
    assert set(decision.timings) == set(decision.attempted)


def test_petersen_contracts_onto_w5():
    decision = decide_facially_3_colorable(generators.petersen())
    assert decision.certificate.pattern_name == "W5"


def test_k3n_plus_certificate_sides():
    decision = decide_facially_3_colorable(generators.k3n_plus(4))
    assert isinstance(decision.certificate, K3nPlusCertificate)
    assert decision.certificate.side_a == (0, 1, 2)
    assert decision.certificate.n == 4


def test_guarded_rule_is_skipped():
    g = generators.k3n_plus(4)
    decision = decide_facially_3_colorable(g, SearchGuards(minor_max_vertices=3))
    assert "k33-minor-free:skipped" in decision.attempted
    assert decision.rule == "k3n-plus"


# ── Obstruction patterns ───────────────────────────────────────────────────


def test_check_pattern_accepts_odd_wheels():
    check_pattern(generators.wheel(5))


@pytest.mark.parametrize("pattern", [generators.wheel(4), K33])
def test_check_pattern_rejects_flowable_or_nonplanar(pattern):
    with pytest.raises(InvalidInputError):
        check_pattern(pattern)


def test_extra_patterns_are_checked():
    with pytest.raises(InvalidInputError):
        decide_facially_3_colorable(K4, patterns={"P": generators.petersen()})


# ── Certificates ───────────────────────────────────────────────────────────


def test_four_edge_connected_certificate():
    k5 = generators.complete_graph(5)
    values = local_connectivity(k5, 0)
    assert values == {1: 4, 2: 4, 3: 4, 4: 4}
    certificate = FourEdgeConnectedCertificate(0, values)
    decision = Decision(Verdict.YES, "four-edge-connected", certificate)
    assert certificate_verify(k5, decision)
    inflated = FourEdgeConnectedCertificate(0, {**values, 1: 5})
    assert not certificate_verify(k5, dataclasses.replace(decision, certificate=inflated))


def test_certificate_kind_must_match_the_verdict():
    decision = Decision(Verdict.YES, "degree-one", DegreeOneObstructionCertificate(0))
    assert not certificate_verify(generators.path(3), decision)


def test_orientation_certificate_must_be_mod3():
    skewed = Orientation(K33, {e.id: e.id != 0 for e in K33.edges})
    decision = Decision(Verdict.YES, "mod3-orientation", Mod3OrientationCertificate(skewed))
    assert not certificate_verify(K33, decision)


def test_certificate_presence_follows_the_verdict():
    with pytest.raises(CertificateError):
        certificate_verify(K4, Decision(Verdict.NO, "bridge", None))
    leaf = DegreeOneObstructionCertificate(0)
    with pytest.raises(CertificateError):
        certificate_verify(K4, Decision(Verdict.UNKNOWN, None, leaf))
    assert certificate_verify(K4, Decision(Verdict.UNKNOWN, None, None))


# ── Conjecture gate ────────────────────────────────────────────────────────


def test_k4_passes_the_gate_but_fails_two_filters():
    report = conjecture_gate(K4)
    assert report.verdict is Verdict.NO
    assert not report.flowable
    assert report.k3nplus_free
    assert report.k3nplus_found is None
    assert not report.counterexample
    assert report.failed_filters == ("max-degree-4", "k33-minor")


def test_k3n_plus_is_not_a_counterexample():
    report = conjecture_gate(generators.k3n_plus(4))
    assert report.verdict is Verdict.YES
    assert not report.flowable
    assert not report.k3nplus_free
    assert report.k3nplus_found == 4
    assert not report.counterexample


def test_smallest_k3n_plus_subcontraction():
    assert smallest_k3nplus_subcontraction(generators.k3n_plus(5)) == 5
    assert smallest_k3nplus_subcontraction(K33) is None


def test_filter_names():
    filters = minimal_counterexample_filters(K4)
    assert set(filters) == {
        "vertex-3-critical",
        "simple",
        "no-z3-subgraph",
        "3-edge-connected-star-cuts",
        "max-degree-4",
        "k33-minor",
    }


def test_gate_is_guarded():
    with pytest.raises(GuardExceededError):
        conjecture_gate(generators.complete_graph(17))
