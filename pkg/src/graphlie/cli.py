"""Command-line interface.

Every subcommand reads graph JSON files and prints either a short text
report or a JSON document (``--format json``).  Global options may be
given before or after the subcommand name.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from graphlie import golden
from graphlie.classify import (
    ERA,
    TRAAG,
    algebra_kind,
    bk_predicate,
    classify_graph,
    presentation_for,
    verify_theorem,
)
from graphlie.cohomology import era_cohomology, era_poincare_by_monomials, poincare_series, traag_cohomology
from graphlie.errors import BadCoefficients, GraphLieError, UsageError
from graphlie.gf2k import GF2, GF4, GF
from graphlie.graphio import load_graph, load_graph_with_order
from graphlie.graphs import (
    LabelledGraph,
    MixedGraph,
    central_condition,
    clique_polynomial,
    common_origin_per_component,
    is_mixed_droms,
    is_special,
    labelled_droms_obstruction,
    labelled_graphs,
    mixed_droms_obstruction,
    signature_of,
    simple_droms_obstruction,
    special_mixed_graphs,
)
from graphlie.lie import LieAlgebraHandle, defect_report, format_degree_one
from graphlie.series import PowerSeries, format_series, froberg_reciprocal, petrogradsky_dims, series_inverse
from graphlie.tensor import DEFAULT_BUDGET

FIELDS = {"f2": GF2, "f4": GF4}
FAMILIES = ("special", "mixed-droms", "labelled")

# exit statuses
EXIT_OK = 0
EXIT_DISAGREE = 4


@dataclass(frozen=True)
class Config:
    field: GF = GF2
    order: int = 8
    depth: int = 4
    budget: int = DEFAULT_BUDGET
    fmt: str = "text"
    timing: bool = False

    def __post_init__(self):
        if not self.order >= self.depth >= 2:
            raise UsageError(f"need order >= depth >= 2, got order {self.order} and depth {self.depth}")
        if self.budget <= 0:
            raise UsageError("budget must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", type=str.lower, choices=sorted(FIELDS), default=d("f2"))
    p.add_argument("--order", type=int, default=d(8), help="series truncation degree")
    p.add_argument("--depth", type=int, default=d(4), help="defect search depth")
    p.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="largest tensor slice to build")
    p.add_argument("--format", dest="fmt", choices=["text", "json"], default=d("text"))
    p.add_argument("--timing", action="store_true", default=d(False), help="include elapsed times")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphlie", description="Graph restricted Lie algebras in characteristic 2.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        return p

    p = cmd("graph-check", "graph predicates and forbidden subgraphs")
    p.add_argument("path")
    p.add_argument("--negative", action="append", default=[], metavar="V", help="treat isolated vertex V as negative")

    p = cmd("series", "Hilbert series, graded dimensions or Poincare series")
    p.add_argument("path")
    p.add_argument("--what", choices=["hilbert-u", "dims", "poincare"], required=True)

    p = cmd("subalgebra", "closure, cover and defect of a generated subalgebra")
    p.add_argument("path")
    p.add_argument(
        "--generators", action="append", required=True, metavar="ROW",
        help="comma-separated coefficients, one per vertex (repeat for each generator)",
    )

    p = cmd("classify", "graph-theoretic Bloch-Kato verdicts for both field kinds")
    p.add_argument("path")

    p = cmd("bruteforce", "exhaustive defect search over the configured field")
    p.add_argument("path")

    cmd("examples-run", "run the golden example suite")

    p = cmd("verify", "compare predicate and search over a whole family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--max-vertices", type=int, default=4)
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    return Config(FIELDS[args.field], args.order, args.depth, args.budget, args.fmt, args.timing)


# -- formatting helpers ------------------------------------------------------------


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _obstruction_text(ob) -> str:
    if ob is None:
        return "yes"
    kind, verts = ob
    label = {"Lambda_s": "induced Λ_s", "not-special": "not special"}.get(kind, f"induced {kind}")
    return f"no ({label} at {{{','.join(verts)}}})"


def _series_text(coeffs: Sequence) -> str:
    """Print a polynomial exactly once a zero coefficient shows it has terminated."""
    ints = [int(c) for c in coeffs]
    if 0 in ints[1:]:
        while len(ints) > 1 and ints[-1] == 0:
            ints.pop()
        return format_series(ints)
    return format_series(ints, big_o=True)


def _dims_text(dims: Sequence[int]) -> str:
    return ", ".join(str(d) for d in dims)


def _emit(cfg: Config, text_lines: list[str], data: Any) -> None:
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- subcommands -------------------------------------------------------------------


def cmd_graph_check(cfg: Config, path: str, negative: Sequence[str] = ()) -> int:
    g = load_graph(path)
    data: dict[str, Any] = {"graph": g.describe()}
    if isinstance(g, LabelledGraph):
        droms = simple_droms_obstruction(g.vertices, g.edges)
        lab = labelled_droms_obstruction(g)
        data.update(
            kind=ERA,
            droms=_obstruction_text(droms),
            labelled_droms=_obstruction_text(lab),
            central_condition=_yes(central_condition(g)) if droms is None else "n/a",
        )
        parts = [
            f"droms: {data['droms']}",
            f"labelled-droms: {data['labelled_droms']}",
            f"central-condition: {data['central_condition']}",
        ]
    else:
        special = is_special(g)
        sig = None
        if special:
            unknown = [v for v in negative if v not in g.vertices]
            if unknown:
                raise UsageError(f"--negative names unknown vertex {unknown[0]!r}")
            sig = signature_of(g, negative).as_dict()
        data.update(
            kind=TRAAG,
            special=_yes(special),
            signature=sig,
            mixed_droms=_obstruction_text(mixed_droms_obstruction(g)),
            common_origin=_yes(common_origin_per_component(g)),
        )
        parts = [f"special: {data['special']}"]
        if sig is not None:
            neg = [v for v in g.vertices if sig[v]]
            parts.append("negative: " + ("{" + ",".join(neg) + "}" if neg else "none"))
        parts.append(f"mixed-droms: {data['mixed_droms']}")
        parts.append(f"common-origin: {data['common_origin']}")
    _emit(cfg, [g.describe(), "; ".join(parts)], data)
    return EXIT_OK


def _series_paths(cfg: Config, g, what: str) -> tuple[list[int], list[int]]:
    """(combinatorial, slice-based) coefficient lists through degree ``order``."""
    N = cfg.order
    if isinstance(g, LabelledGraph):
        poinc = era_poincare_by_monomials(g, N)
    else:
        signature_of(g)  # raises NotSpecial
        poinc = PowerSeries(clique_polynomial(g).coeffs, N)
    hilb = series_inverse(poinc.at_neg()) if isinstance(g, LabelledGraph) else froberg_reciprocal(poinc.as_ints(), N)
    if what == "poincare":
        comb = poinc.as_ints()
        coh = era_cohomology(g, cfg.field) if isinstance(g, LabelledGraph) else traag_cohomology(g, cfg.field)
        slc = poincare_series(coh, N, cfg.budget).as_ints()
        return comb, slc
    h = LieAlgebraHandle(presentation_for(g, cfg.field), order=N, budget=cfg.budget)
    if what == "hilbert-u":
        return hilb.as_ints(), [int(c) for c in h.algebra.dims(N)]
    return list(petrogradsky_dims(hilb, N)), list(h.graded_dims(N))


def cmd_series(cfg: Config, path: str, what: str) -> int:
    g = load_graph(path)
    comb, slc = _series_paths(cfg, g, what)
    comb = (comb + [0] * (cfg.order + 1))[: len(slc)]
    agree = comb == slc
    show = _dims_text if what == "dims" else _series_text
    data = {
        "graph": g.describe(),
        "what": what,
        "order": cfg.order,
        "combinatorial": comb,
        "slice": slc,
        "agree": agree,
    }
    lines = [
        f"{what} (combinatorial): {show(comb)}",
        f"{what} (slice): {show(slc)}",
        f"agree: {_yes(agree)}",
    ]
    _emit(cfg, lines, data)
    return EXIT_OK


def parse_rows(field: GF, rows: Sequence[str], n: int, order: Sequence[int] | None = None) -> list[list[int]]:
    """Parse comma-separated rows; ``order[k]`` is the graph index of the k-th typed entry."""
    out = []
    for text in rows:
        entries = [e.strip() for e in text.split(",")]
        if len(entries) != n:
            raise BadCoefficients(f"generator {text!r} has {len(entries)} coefficients, expected {n}")
        try:
            vals = [field.parse_element(e) for e in entries]
        except ValueError as e:
            raise BadCoefficients(f"generator {text!r}: {e}") from e
        row = [0] * n
        for k, c in enumerate(vals):
            row[order[k] if order is not None else k] = c
        out.append(row)
    if not any(any(r) for r in out):
        raise BadCoefficients("the generators span the zero subspace")
    return out


def cmd_subalgebra(cfg: Config, path: str, generators: Sequence[str]) -> int:
    g, file_order = load_graph_with_order(path)
    h = LieAlgebraHandle(presentation_for(g, cfg.field), order=cfg.depth, budget=cfg.budget)
    rows = parse_rows(cfg.field, generators, h.n, [g.index(v) for v in file_order])
    r = defect_report(h, rows, cfg.depth)
    w = r.witness
    gens = [format_degree_one(cfg.field, row, h.names) for row in rows]
    if w is None:
        verdict = f"quadratic to depth {cfg.depth}"
    else:
        verdict = f"defect at degree {w.defect_degree} (cover {w.cover_dim}, subalgebra {w.subalgebra_dim})"
    data = {
        "graph": g.describe(),
        "field": cfg.field.name,
        "generators": gens,
        "closure_dims": list(r.subalgebra.dims),
        "cover_dims": list(r.cover_dims),
        "defect_degree": None if w is None else w.defect_degree,
        "verdict": verdict,
    }
    lines = [
        "generators: " + ", ".join(gens),
        f"closure dims: {_dims_text(r.subalgebra.dims)}",
        f"cover dims: {_dims_text(r.cover_dims)}",
        f"verdict: {verdict}",
    ]
    _emit(cfg, lines, data)
    return EXIT_OK


def cmd_classify(cfg: Config, path: str) -> int:
    g = load_graph(path)
    kind = algebra_kind(g)
    verdicts = {fk: bk_predicate(g, fk, kind) for fk in ("F2", "F4")}
    data = {"graph": g.describe(), "kind": kind, **verdicts}
    line = ", ".join(f"{fk}: {'BK' if v else 'notBK'}" for fk, v in verdicts.items())
    _emit(cfg, [line], data)
    return EXIT_OK


def cmd_bruteforce(cfg: Config, path: str) -> int:
    g = load_graph(path)
    v = classify_graph(g, cfg.field, cfg.depth)
    data = v.as_dict(cfg.timing)
    if v.oracle_result is None:
        found = f"no witness to depth {cfg.depth}"
    else:
        span = ", ".join(data["witness"])
        found = f"witness span{{{span}}} with defect degree {v.oracle_result.defect_degree}"
    lines = [
        v.graph,
        f"{cfg.field.name}: {found} ({v.subspaces_checked} subspaces checked)",
        f"predicate: {'BK' if v.predicate_bk else 'notBK'}; agree: {_yes(v.agree)}",
    ]
    if cfg.timing:
        lines.append(f"elapsed: {v.elapsed_ms:.1f} ms")
    _emit(cfg, lines, data)
    return EXIT_OK if v.agree else EXIT_DISAGREE


def cmd_examples_run(cfg: Config) -> int:
    results = golden.run_all()
    lines, records = [], []
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}"
        rec = {"name": r.name, "passed": r.passed, "detail": r.detail}
        if cfg.timing:
            line += f" [{r.elapsed_ms:.0f} ms]"
            rec["elapsed_ms"] = round(r.elapsed_ms, 3)
        lines.append(line)
        records.append(rec)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} examples passed")
    _emit(cfg, lines, {"examples": records, "passed": passed, "total": len(results)})
    return EXIT_OK if passed == len(results) else EXIT_DISAGREE


def family_graphs(family: str, max_vertices: int) -> list:
    if family == "special":
        return special_mixed_graphs(max_vertices)
    if family == "mixed-droms":
        return [g for g in special_mixed_graphs(max_vertices) if is_mixed_droms(g)]
    if family == "labelled":
        return labelled_graphs(max_vertices)
    raise UsageError(f"unknown family {family!r}")


def cmd_verify(cfg: Config, family: str, max_vertices: int) -> int:
    if max_vertices < 1:
        raise UsageError("--max-vertices must be positive")
    graphs = family_graphs(family, max_vertices)
    report = verify_theorem(graphs, cfg.field, None, cfg.depth)
    lines = [report.summary()]
    for v in report.disagreements:
        lines.append(f"DISAGREE {v.graph}: predicate {'BK' if v.predicate_bk else 'notBK'}, witness {v.as_dict()['witness']}")
    for v in report.flagged:
        lines.append(f"FLAGGED {v.graph}: first defect at degree {v.oracle_result.defect_degree}")
    for graph, msg in report.errors:
        lines.append(f"ERROR {graph}: {msg}")
    data = {
        "family": family,
        "max_vertices": max_vertices,
        "field": report.field_kind,
        "depth": cfg.depth,
        "records": [v.as_dict(cfg.timing) for v in report.verdicts],
        "agreements": len(report.agreements),
        "disagreements": len(report.disagreements),
        "flagged": len(report.flagged),
        "errors": [{"graph": g, "message": m} for g, m in report.errors],
    }
    _emit(cfg, lines, data)
    return EXIT_OK if report.ok else EXIT_DISAGREE


def _dispatch(cfg: Config, args: argparse.Namespace) -> int:
    c = args.command
    if c == "graph-check":
        return cmd_graph_check(cfg, args.path, args.negative)
    if c == "series":
        return cmd_series(cfg, args.path, args.what)
    if c == "subalgebra":
        return cmd_subalgebra(cfg, args.path, args.generators)
    if c == "classify":
        return cmd_classify(cfg, args.path)
    if c == "bruteforce":
        return cmd_bruteforce(cfg, args.path)
    if c == "examples-run":
        return cmd_examples_run(cfg)
    return cmd_verify(cfg, args.family, args.max_vertices)


def _report_error(e: GraphLieError, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"error": {"code": e.code, "message": str(e)}}, indent=2))
    else:
        print(f"error[{e.code}]: {e}", file=sys.stderr)


def _requested_format(argv: Sequence[str]) -> str:
    """Best guess at ``--format`` for errors raised before parsing completes."""
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and argv[i + 1 : i + 2] == ["json"]):
            return "json"
    return "text"


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        fmt = args.fmt
        cfg = config_from_args(args)
        return _dispatch(cfg, args)
    except GraphLieError as e:
        _report_error(e, fmt)
        return e.exit_status


if __name__ == "__main__":
    sys.exit(main())
