from __future__ import annotations

import json

import pytest

from facetint.infrastructure import formats
from facetint.interface.cli import run
from facetint.interface.error_handlers import (
    EXIT_GUARD,
    EXIT_INVALID,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
)
from facetint.services import generators
from facetint.services.drawing import faces


@pytest.fixture
def cli(settings):
    def invoke(*argv: str) -> int:
        return run(list(argv), settings)

    return invoke


@pytest.fixture
def square_cmap(tmp_path, cli):
    poly = tmp_path / "square.poly"
    poly.write_text(formats.serialize_polylines(generators.square_drawing()))
    out = tmp_path / "square.cmap"
    assert cli("planarize", str(poly), "-o", str(out)) == EXIT_OK
    return out


def _write_graph(tmp_path, name, g):
    path = tmp_path / f"{name}.g"
    path.write_text(formats.serialize_graph(g))
    return str(path)


# ── Generators and flows ───────────────────────────────────────────────────


def test_gen_then_flow3_on_k4(tmp_path, cli, capsys):
    graph = tmp_path / "k4.g"
    assert cli("gen", "complete", "4", "-o", str(graph)) == EXIT_OK
    assert cli("flow3", str(graph)) == EXIT_NEGATIVE
    assert "no modulo-3-orientation" in capsys.readouterr().out


def test_flow3_writes_a_flow(tmp_path, cli):
    graph = _write_graph(tmp_path, "k33", generators.complete_bipartite(3, 3))
    out = tmp_path / "k33.or"
    assert cli("flow3", graph, "--flow", "-o", str(out)) == EXIT_OK
    assert any(line.startswith("f ") for line in out.read_text().splitlines())


def test_gen_kmn_orientation(tmp_path, cli):
    out = tmp_path / "k35.or"
    assert cli("gen", "kmn", "3", "5", "--orient", "-o", str(out)) == EXIT_OK
    g = generators.complete_bipartite(3, 5)
    assert formats.parse_orientation(out.read_text(), g).is_mod3()


def test_z3conn_and_critical(tmp_path, cli, capsys):
    k4 = _write_graph(tmp_path, "k4", generators.complete_graph(4))
    assert cli("z3conn", k4) == EXIT_NEGATIVE
    assert cli("critical", k4, "vertex") == EXIT_OK
    out = capsys.readouterr().out
    assert "not Z3-connected" in out
    assert "vertex-3-critical" in out


# ── Colorings ──────────────────────────────────────────────────────────────


def test_square_two_coloring(tmp_path, cli, square_cmap):
    out = tmp_path / "square.fc"
    assert cli("color", str(square_cmap), "-k", "2", "-o", str(out)) == EXIT_OK
    coloring = formats.parse_coloring(out.read_text())
    structure = faces(formats.parse_cmap(square_cmap.read_text()))
    assert coloring[structure.outer] == 0
    assert coloring[1 - structure.outer] == 1


def test_color_outer(cli, square_cmap, capsys):
    assert cli("color-outer", str(square_cmap)) == EXIT_OK
    assert capsys.readouterr().out.startswith("k 3\n")


def test_leafless_writes_drawing_and_coloring(tmp_path, cli):
    graph = _write_graph(tmp_path, "k4", generators.complete_graph(4))
    cmap, fc = tmp_path / "k4.cmap", tmp_path / "k4.fc"
    assert cli("leafless", graph, "--coloring", str(fc), "-o", str(cmap)) == EXIT_OK
    drawing = formats.parse_cmap(cmap.read_text())
    assert formats.parse_coloring(fc.read_text()).colors.keys() == set(
        range(faces(drawing).count)
    )


# ── Decisions ──────────────────────────────────────────────────────────────


def test_decide_then_verify(tmp_path, cli, capsys):
    graph = _write_graph(tmp_path, "petersen", generators.petersen())
    assert cli("decide", graph, "--json") == EXIT_NEGATIVE
    decision = tmp_path / "petersen.json"
    decision.write_text(capsys.readouterr().out)
    assert json.loads(decision.read_text())["verdict"] == "NO"
    assert cli("verify", graph, str(decision)) == EXIT_OK
    assert "certificate valid" in capsys.readouterr().out


def test_decide_plain_output(tmp_path, cli, capsys):
    graph = _write_graph(tmp_path, "k33", generators.complete_bipartite(3, 3))
    assert cli("decide", graph) == EXIT_OK
    assert capsys.readouterr().out.strip() == "YES (mod3-orientation)"


def test_normalize_with_reports(tmp_path, cli, capsys):
    poly = tmp_path / "eight.poly"
    poly.write_text(formats.serialize_polylines(generators.figure_eight_drawing()))
    cmap = tmp_path / "eight.cmap"
    assert cli("planarize", str(poly), "-o", str(cmap)) == EXIT_OK
    out, jsonl = tmp_path / "good.cmap", tmp_path / "steps.jsonl"
    assert cli("normalize", str(cmap), "--jsonl", str(jsonl), "-o", str(out)) == EXIT_OK
    assert "2 surgeries" in capsys.readouterr().err
    assert len(jsonl.read_text().splitlines()) == 2
    assert formats.parse_cmap(out.read_text()).crossings == ()


# ── Failures ───────────────────────────────────────────────────────────────


@pytest.mark.parametrize("argv", [["color", "x.cmap", "-k", "5"], []])
def test_usage_errors(cli, argv):
    assert cli(*argv) == EXIT_USAGE


def test_missing_file_is_invalid_input(tmp_path, cli, capsys):
    assert cli("decide", str(tmp_path / "nope.g")) == EXIT_INVALID
    assert "cannot read" in capsys.readouterr().err


def test_guard_exceeded(tmp_path, cli):
    k4 = _write_graph(tmp_path, "k4", generators.complete_graph(4))
    assert cli("--guards", "z3=3", "z3conn", k4) == EXIT_GUARD


def test_bad_guard_override(tmp_path, cli):
    k4 = _write_graph(tmp_path, "k4", generators.complete_graph(4))
    assert cli("--guards", "speed=3", "decide", k4) == EXIT_INVALID


def test_trace_needs_an_output(cli, square_cmap):
    assert cli("normalize", str(square_cmap), "--trace") == EXIT_INVALID
