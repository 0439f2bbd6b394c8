"""Command-line front end.

Subcommands:

* ``tutte``     -- polynomials of the Tait graph (or of a bare graph JSON)
* ``adequate``  -- enumerate adequate states, with optional verification,
                   homogeneity filtering, or the all-A/all-B special case
* ``check``     -- structural diagnostics for a diagram

Exit codes: 0 success, 1 verification/check failure, 2 input error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import sgraph
from .adequacy import (
    DEFAULT_MAX_EDGES,
    ab_adequacy,
    diagram_report,
    report_to_csv,
    report_to_json,
)
from .diagram import (
    ColoringError,
    LinkDiagram,
    PDParseError,
    checkerboard,
    load_diagram_json,
    mirror,
    nugatory_crossings,
    parse_pd,
    region_count,
)
from .sgraph import DisconnectedError, label_sort_key
from .tutte import CapExceededError, TutteEngine

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise PDParseError(f"cannot read {path}: {exc}") from exc


def _load(path: str, fmt: str, coloring: str, mirrored: bool):
    """Returns (diagram or None, graph).  Bare graph JSON gives diagram=None."""
    text = _read_input(path)
    if fmt == "json":
        doc = json.loads(text)
        if "vertices" in doc and "edges" in doc:
            g = sgraph.from_json(text)
            if mirrored:
                g = sgraph.flip_signs(g)
            return None, g
        d = load_diagram_json(text)
        d = LinkDiagram(d.crossings, d.outer_arc)  # recolor per flags below
    else:
        d = parse_pd(text)
    if mirrored:
        d = mirror(d)
    d = checkerboard(d, coloring)
    from .diagram import tait

    g, _ = tait(d)
    return d, g


def cmd_tutte(args) -> int:
    _, g = _load(args.input, args.format, args.coloring, args.mirror)
    engine = TutteEngine()
    chi = engine.tutte(g)
    if not (args.diag or args.trees):
        print(chi.render())
    if args.diag:
        print(chi.specialize("x_equals_y").render_t())
    if args.trees:
        print(chi.eval(1, 1))
    return EXIT_OK


def cmd_adequate(args) -> int:
    d, g = _load(args.input, args.format, args.coloring, args.mirror)
    engine = TutteEngine()

    if args.ab:
        a_ok, b_ok, poly_plus, poly_minus = ab_adequacy(g, engine)
        doc = {
            "a_adequate": a_ok,
            "b_adequate": b_ok,
            "plus_poly": poly_plus.render_t(),
            "minus_poly": poly_minus.render_t(),
        }
        if args.output == "json":
            print(json.dumps(doc, indent=2))
        else:
            for k, v in doc.items():
                print(f"{k}: {v}")
        return EXIT_OK

    if d is not None:
        report = diagram_report(d, engine, max_edges=args.max_edges,
                                with_homogeneous=args.homogeneous)
    else:
        from .adequacy import enumerate_adequate

        report = enumerate_adequate(g, engine, max_edges=args.max_edges,
                                    with_homogeneous=args.homogeneous)
    if args.homogeneous:
        from dataclasses import replace

        shown = replace(report, states=tuple(r for r in report.states if r.homogeneous))
    else:
        shown = report

    if args.output == "json":
        print(report_to_json(shown))
    elif args.output == "csv":
        print(report_to_csv(shown), end="")
    else:
        for rec in shown.states:
            edges = ",".join(str(x) for x in sorted(rec.edge_subset, key=label_sort_key))
            flag = ""
            if rec.homogeneous is not None:
                flag = "  homogeneous" if rec.homogeneous else ""
            print(f"state {rec.state}  edges [{edges}]  poly {rec.poly.render_t()}{flag}")
        print(f"count: {shown.count}")
        print(f"diagonal: {report.diagonal.render_t()}")
        print(f"spanning trees: {report.tree_count}")
        print(f"verified: {str(report.verified).lower()}")

    if args.verify and not report.verified:
        print("verification FAILED: state sum differs from the diagonal", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_check(args) -> int:
    text = _read_input(args.input)
    if args.format == "json":
        d = load_diagram_json(text)
        d = LinkDiagram(d.crossings, d.outer_arc)
    else:
        d = parse_pd(text)
    if args.mirror:
        d = mirror(d)
    failures = 0
    n = d.n_crossings
    print(f"crossings: {n}")
    print(f"regions: {region_count(d)}")
    euler = n - 2 * n + region_count(d)
    print(f"euler (v - e + f): {euler}" + ("  ok" if euler == 2 else "  FAIL"))
    failures += euler != 2
    d = checkerboard(d, args.coloring)
    print("coloring: ok")
    nug = nugatory_crossings(d)
    if nug:
        for ci in nug:
            print(f"not reduced: crossing {ci} is nugatory")
        failures += 1
    else:
        print("reduced: ok")
    return EXIT_VERIFY if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="taitstates",
        description="Tait graphs, Tutte polynomials, and adequate states of link diagrams",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="input file, or - for stdin")
        sp.add_argument("--format", choices=["pd", "json"], default="pd")
        sp.add_argument("--coloring", choices=["canonical", "swapped"], default="canonical")
        sp.add_argument("--mirror", action="store_true", help="mirror the diagram first")

    sp = sub.add_parser("tutte", help="Tutte polynomial of the Tait graph")
    common(sp)
    sp.add_argument("--diag", action="store_true", help="print the diagonal (t,t) polynomial")
    sp.add_argument("--trees", action="store_true", help="print the spanning-tree count")
    sp.set_defaults(fn=cmd_tutte)

    sp = sub.add_parser("adequate", help="enumerate adequate states")
    common(sp)
    sp.add_argument("--output", choices=["table", "json", "csv"], default="table")
    sp.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    sp.add_argument("--verify", action="store_true",
                    help="exit nonzero unless the state sum matches the diagonal")
    sp.add_argument("--homogeneous", action="store_true",
                    help="show only homogeneously adequate states")
    sp.add_argument("--ab", action="store_true",
                    help="only test the all-A and all-B states")
    sp.set_defaults(fn=cmd_adequate)

    sp = sub.add_parser("check", help="diagnostics: connectivity, coloring, reducedness")
    common(sp)
    sp.set_defaults(fn=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    from .adequacy import VerificationError

    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CapExceededError as exc:
        print(f"error: {exc} (raise --max-edges to override)", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        # the completeness certificate failed; never expected on sound input
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (PDParseError, ColoringError, DisconnectedError, json.JSONDecodeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
