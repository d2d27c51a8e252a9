"""``facetint`` command-line front end.

Every subcommand reads its inputs through ``infrastructure.formats``, calls
one library operation and writes the canonical text form of the result.
Results go to ``-o`` or stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from facetint.domain.drawing import PlanarizedDrawing
from facetint.domain.entities import Verdict
from facetint.domain.exceptions import FacetintError, InvalidInputError
from facetint.domain.graph import Multigraph
from facetint.domain.orientation import Orientation, Z3Flow
from facetint.domain.value_objects import SearchGuards
from facetint.infrastructure import formats
from facetint.infrastructure.config import Settings, get_settings
from facetint.infrastructure.exporters import export_dot, export_svg
from facetint.interface.error_handlers import (
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    handle_error,
)
from facetint.interface.schemas import (
    conjecture_to_json,
    decision_from_json,
    decision_to_json,
    reports_to_jsonl,
)
from facetint.services import generators
from facetint.services.certificates import certificate_verify
from facetint.services.conjecture import conjecture_gate
from facetint.services.decide import decide_facially_3_colorable
from facetint.services.drawing import dual, faces, is_good_drawing
from facetint.services.facecolor import (
    color_faces_exact,
    coloring_from_mod3,
    face_2_coloring,
    k3nplus_coloring,
    leafless_3colorable_drawing,
    lift_orientation,
    outerface_3coloring,
)
from facetint.services.flow3 import (
    flow_to_orientation,
    is_edge_3_critical,
    is_vertex_3_critical,
    is_z3_connected,
    kmn_mod3_orientation,
    mod3_orientation,
    orientation_to_flow,
)
from facetint.services.normalize import normalize_with_steps, transfer_coloring
from facetint.services.planarize import circle_drawing, ingest_polylines

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, SearchGuards], int]


class _UsageError(Exception):
    """Raised by the parser instead of exiting the process."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


# ── I/O helpers ────────────────────────────────────────────────────────────


def _emit(text: str, output: str | None) -> None:
    if output:
        formats.write_text(output, text)
    else:
        sys.stdout.write(text)


def _graph(path: str) -> Multigraph:
    return formats.parse_graph(formats.read_text(path))


def _cmap(path: str) -> PlanarizedDrawing:
    return formats.parse_cmap(formats.read_text(path))


def _orientation(path: str, g: Multigraph) -> Orientation:
    parsed = formats.parse_orientation(formats.read_text(path), g)
    return flow_to_orientation(parsed) if isinstance(parsed, Z3Flow) else parsed


def _yes_no(ok: bool, yes: str, no: str) -> int:
    print(yes if ok else no)
    return EXIT_OK if ok else EXIT_NEGATIVE


# ── Drawings ───────────────────────────────────────────────────────────────


def _cmd_planarize(args: argparse.Namespace, guards: SearchGuards) -> int:
    p = formats.parse_polylines(formats.read_text(args.input))
    _emit(formats.serialize_cmap(ingest_polylines(p)), args.output)
    return EXIT_OK


def _cmd_faces(args: argparse.Namespace, guards: SearchGuards) -> int:
    _emit(formats.serialize_faces(faces(_cmap(args.input))), args.output)
    return EXIT_OK


def _cmd_dual(args: argparse.Namespace, guards: SearchGuards) -> int:
    _emit(formats.serialize_graph(dual(_cmap(args.input)).graph), args.output)
    return EXIT_OK


def _cmd_normalize(args: argparse.Namespace, guards: SearchGuards) -> int:
    drawing, steps = normalize_with_steps(_cmap(args.input), guards)
    if args.trace:
        if not args.output:
            raise InvalidInputError("--trace needs -o to place the snapshots")
        out = Path(args.output)
        for i, step in enumerate(steps, start=1):
            snapshot = out.with_name(f"{out.stem}.step{i:03d}{out.suffix}")
            formats.write_text(snapshot, formats.serialize_cmap(step.after))
    if args.jsonl:
        formats.write_text(args.jsonl, reports_to_jsonl(step.report for step in steps))
    _emit(formats.serialize_cmap(drawing), args.output)
    print(f"{len(steps)} surgeries", file=sys.stderr)
    return EXIT_OK


def _cmd_export(args: argparse.Namespace, guards: SearchGuards) -> int:
    d = _cmap(args.input)
    coloring = formats.parse_coloring(formats.read_text(args.coloring)) if args.coloring else None
    orientation = _orientation(args.orientation, d.underlying) if args.orientation else None
    render = export_svg if args.format == "svg" else export_dot
    _emit(render(d, coloring, orientation), args.output)
    return EXIT_OK


# ── Colorings ──────────────────────────────────────────────────────────────


def _cmd_color(args: argparse.Namespace, guards: SearchGuards) -> int:
    d = _cmap(args.input)
    found = face_2_coloring(d) if args.k == 2 else color_faces_exact(d, args.k)
    if found is None:
        print(f"no face-{args.k}-coloring", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(formats.serialize_coloring(found), args.output)
    return EXIT_OK


def _cmd_color_outer(args: argparse.Namespace, guards: SearchGuards) -> int:
    _emit(formats.serialize_coloring(outerface_3coloring(_cmap(args.input))), args.output)
    return EXIT_OK


def _cmd_color_k3nplus(args: argparse.Namespace, guards: SearchGuards) -> int:
    d = _cmap(args.input)
    good, _ = is_good_drawing(d)
    if good:
        coloring = k3nplus_coloring(d)
    else:
        normalized, steps = normalize_with_steps(d, guards)
        coloring = transfer_coloring(steps, k3nplus_coloring(normalized))
    _emit(formats.serialize_coloring(coloring), args.output)
    return EXIT_OK


def _cmd_color_flow(args: argparse.Namespace, guards: SearchGuards) -> int:
    d = _cmap(args.input)
    lifted = lift_orientation(d, _orientation(args.orientation, d.underlying))
    _emit(formats.serialize_coloring(coloring_from_mod3(d, lifted)), args.output)
    return EXIT_OK


def _cmd_leafless(args: argparse.Namespace, guards: SearchGuards) -> int:
    drawing, coloring = leafless_3colorable_drawing(_graph(args.input), guards)
    formats.write_text(args.coloring, formats.serialize_coloring(coloring))
    _emit(formats.serialize_cmap(drawing), args.output)
    return EXIT_OK


# ── Flows ──────────────────────────────────────────────────────────────────


def _cmd_flow3(args: argparse.Namespace, guards: SearchGuards) -> int:
    found = mod3_orientation(_graph(args.input))
    if found is None:
        print("no modulo-3-orientation")
        return EXIT_NEGATIVE
    result: Orientation | Z3Flow = orientation_to_flow(found) if args.flow else found
    _emit(formats.serialize_orientation(result), args.output)
    return EXIT_OK


def _cmd_z3conn(args: argparse.Namespace, guards: SearchGuards) -> int:
    ok = is_z3_connected(_graph(args.input), guards)
    return _yes_no(ok, "Z3-connected", "not Z3-connected")


def _cmd_critical(args: argparse.Namespace, guards: SearchGuards) -> int:
    g = _graph(args.input)
    ok = is_vertex_3_critical(g) if args.kind == "vertex" else is_edge_3_critical(g)
    return _yes_no(ok, f"{args.kind}-3-critical", f"not {args.kind}-3-critical")


# ── Decisions ──────────────────────────────────────────────────────────────


def _cmd_decide(args: argparse.Namespace, guards: SearchGuards) -> int:
    decision = decide_facially_3_colorable(_graph(args.input), guards)
    if args.json:
        print(decision_to_json(decision))
    else:
        print(f"{decision.verdict.value} ({decision.rule or 'no rule applied'})")
    return EXIT_NEGATIVE if decision.verdict is Verdict.NO else EXIT_OK


def _cmd_verify(args: argparse.Namespace, guards: SearchGuards) -> int:
    g = _graph(args.input)
    decision = decision_from_json(formats.read_text(args.decision), g)
    ok = certificate_verify(g, decision, guards)
    return _yes_no(ok, "certificate valid", "certificate invalid")


def _cmd_conjecture(args: argparse.Namespace, guards: SearchGuards) -> int:
    report = conjecture_gate(_graph(args.input), guards)
    print(conjecture_to_json(report))
    return EXIT_NEGATIVE if report.counterexample else EXIT_OK


# ── Generators ─────────────────────────────────────────────────────────────


def _order(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"--order expects comma-separated ids, got '{text}'") from exc


def _cmd_gen(args: argparse.Namespace, guards: SearchGuards) -> int:
    family = args.family
    if family == "kmn":
        if args.orient:
            text = formats.serialize_orientation(kmn_mod3_orientation(args.m, args.n))
        else:
            text = formats.serialize_graph(generators.complete_bipartite(args.m, args.n))
    elif family == "circle":
        order = _order(args.order) if args.order else None
        text = formats.serialize_polylines(circle_drawing(_graph(args.input), order, guards))
    else:
        built = {
            "k3nplus": lambda: generators.k3n_plus(args.n),
            "wheel": lambda: generators.wheel(args.k),
            "complete": lambda: generators.complete_graph(args.n),
            "petersen": generators.petersen,
        }[family]()
        text = formats.serialize_graph(built)
    _emit(text, args.output)
    return EXIT_OK


# ── Parser ─────────────────────────────────────────────────────────────────


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="facetint",
        description="Face colorings of drawings and nowhere-zero 3-flows.",
    )
    parser.add_argument(
        "--guards",
        default="",
        help="search guard overrides, e.g. minor=24,z3=8 (applied after FACETINT_GUARDS)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def with_output(p: argparse.ArgumentParser, required: bool = False) -> None:
        p.add_argument("-o", "--output", required=required, help="output file (default stdout)")

    p = command("planarize", _cmd_planarize, "planarize a polyline drawing (.poly -> .cmap)")
    p.add_argument("input")
    with_output(p)

    p = command("faces", _cmd_faces, "list the faces of a combinatorial map")
    p.add_argument("input")
    with_output(p)

    p = command("dual", _cmd_dual, "dual multigraph of a combinatorial map")
    p.add_argument("input")
    with_output(p)

    p = command("color", _cmd_color, "face-k-coloring by exact search")
    p.add_argument("input")
    p.add_argument("-k", type=int, choices=(2, 3, 4), required=True)
    with_output(p)

    p = command("color-outer", _cmd_color_outer, "3-coloring of an outer drawing")
    p.add_argument("input")
    with_output(p)

    p = command("color-k3nplus", _cmd_color_k3nplus, "3-coloring of a K_{3,n}^+ drawing")
    p.add_argument("input")
    with_output(p)

    p = command("color-flow", _cmd_color_flow, "3-coloring from a modulo-3-orientation")
    p.add_argument("input")
    p.add_argument("orientation", help="orientation or Z3 flow of the underlying graph")
    with_output(p)

    p = command("leafless", _cmd_leafless, "3-colorable drawing of a graph without leaves")
    p.add_argument("input")
    p.add_argument("--coloring", required=True, help="where to write the face coloring")
    with_output(p)

    p = command("flow3", _cmd_flow3, "modulo-3-orientation of a graph")
    p.add_argument("input")
    p.add_argument("--flow", action="store_true", help="write a Z3 flow instead of arcs")
    with_output(p)

    p = command("z3conn", _cmd_z3conn, "test Z3-connectivity")
    p.add_argument("input")

    p = command("critical", _cmd_critical, "test vertex or edge 3-criticality")
    p.add_argument("input")
    p.add_argument("kind", choices=("vertex", "edge"))

    p = command("decide", _cmd_decide, "decide facial 3-colorability")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", help="emit the decision as JSON")

    p = command("verify", _cmd_verify, "re-check a decision file against a graph")
    p.add_argument("input")
    p.add_argument("decision")

    p = command("conjecture", _cmd_conjecture, "evaluate the K_{3,n}^+ exclusion conjecture")
    p.add_argument("input")

    p = command("normalize", _cmd_normalize, "turn a drawing into a good drawing")
    p.add_argument("input")
    p.add_argument("--trace", action="store_true", help="write a .cmap snapshot per surgery")
    p.add_argument("--jsonl", help="write the surgery reports as JSON lines")
    with_output(p)

    p = command("export", _cmd_export, "render a combinatorial map as SVG or DOT")
    p.add_argument("format", choices=("svg", "dot"))
    p.add_argument("input")
    p.add_argument("--coloring")
    p.add_argument("--orientation")
    with_output(p)

    gen = command("gen", _cmd_gen, "generate graph families and drawings")
    families = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    p = families.add_parser("kmn")
    p.add_argument("m", type=_positive)
    p.add_argument("n", type=_positive)
    p.add_argument("--orient", action="store_true", help="write its modulo-3-orientation")
    with_output(p)
    p = families.add_parser("k3nplus")
    p.add_argument("n", type=_positive)
    with_output(p)
    p = families.add_parser("circle")
    p.add_argument("input")
    p.add_argument("--order", help="comma-separated counterclockwise vertex order")
    with_output(p)
    p = families.add_parser("wheel")
    p.add_argument("k", type=_positive)
    with_output(p)
    p = families.add_parser("complete")
    p.add_argument("n", type=_positive)
    with_output(p)
    p = families.add_parser("petersen")
    with_output(p)
    return parser


def run(argv: Sequence[str] | None = None, settings: Settings | None = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    settings = settings or get_settings()
    try:
        guards = settings.search_guards().with_overrides(args.guards)
        code: int = args.handler(args, guards)
    except FacetintError as exc:
        return handle_error(exc)
    logger.debug("%s finished with exit code %d", args.command, code)
    return code
