"""Command-line front end: ``hedcap <command> ...``.

Exit codes: 0 success, 1 usage error, 2 inconclusive within budget,
3 certificate verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .bounds import LabConfig, capacity_bounds, pair_bounds, paley_gap_certificate
from .formats import FormatError, decode_graph6, encode_graph6, parse_dimacs, write_dimacs
from .graph import (
    Graph,
    GraphError,
    and_product,
    complement,
    complete_graph,
    cycle_graph,
    join,
    or_power,
    or_product,
    tensor_product,
)
from .paley import FieldError, PaleyVariant, paley_family
from .properties import run_all
from .report import (
    ReportDocument,
    ReportError,
    bound_report_certificates,
    bound_report_dict,
    pair_report_certificates,
    pair_report_dict,
    theta_certificate,
    theta_dict,
)
from .search import (
    SearchBudget,
    SearchInconclusive,
    chromatic_number,
    homomorphism,
    is_k_colorable,
    max_clique,
    max_independent_set,
    odd_girth,
    verify_homomorphism,
)
from .theta import SolverConfig, lovasz_theta, theta_bar

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags(p: argparse.ArgumentParser, top: bool) -> None:
    # declared on every parser so the flags may appear before or after the
    # subcommand; SUPPRESS keeps a subparser from clobbering a parent value
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=["graph6", "dimacs"], default=d("graph6"), help="graph output format")
    p.add_argument("--json", metavar="PATH", default=d(None), help="write a JSON report ('-' for stdout)")
    p.add_argument(
        "--deterministic", action=argparse.BooleanOptionalAction, default=d(True), help="reproducible witnesses"
    )
    p.add_argument("--seed", type=int, default=d(0), help="seed for the randomized property harness")
    p.add_argument("--no-matrices", action="store_true", default=d(False), help="omit theta matrices from reports")


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hedcap", description="Certified bounds on OR-capacity of graphs and graph pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _common_flags(p, top=False)
        return p

    p = cmd("gen", "generate a named graph")
    p.add_argument("family", choices=["paley", "paley-del", "paley-del2", "cycle", "complete"])
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=["adjacent", "nonadjacent"], default="adjacent")

    p = cmd("op", "apply a graph operation")
    p.add_argument("operation", choices=["complement", "tensor", "or", "and", "join", "power"])
    p.add_argument("inputs", nargs="*", help="graph files, '-' for stdin (default)")
    p.add_argument("-t", type=int, default=2, help="exponent for 'power'")

    p = cmd("compute", "compute one invariant")
    p.add_argument("invariant", choices=["clique", "alpha", "chrom", "theta", "theta-bar", "odd-girth"])
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--tol", type=float, default=1e-5, help="target duality gap for theta")
    _budget_flags(p)

    p = cmd("hom", "search for a homomorphism F -> G")
    p.add_argument("f")
    p.add_argument("g")
    _budget_flags(p)

    p = cmd("bounds", "capacity bounds for one graph")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--max-power", type=int, default=1)
    _budget_flags(p)

    p = cmd("pair", "capacity bounds for the categorical product of two graphs")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--max-power", type=int, default=1)
    _budget_flags(p)

    p = cmd("testcase", "run the Paley gap certificate for a prime p = 1 mod 4")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--variant", choices=["full", "deleted"], default="deleted")

    cmd("properties", "run the randomized property suites")

    p = cmd("verify", "re-check a JSON report and its certificates")
    p.add_argument("report")
    return parser


# -- input / output ---------------------------------------------------------


def _parse_graphs(text: str, fmt_hint: str, name: str) -> list[Graph]:
    stripped = text.strip()
    if not stripped:
        raise UsageError(f"{name}: no graph data")
    first = stripped.split(maxsplit=1)[0]
    if fmt_hint == "dimacs" or first in ("c", "p"):
        g = parse_dimacs(stripped)
        return [g if g.label else g.with_label(name)]
    graphs = []
    for i, line in enumerate(ln for ln in stripped.splitlines() if ln.strip()):
        graphs.append(decode_graph6(line).with_label(name if i == 0 else f"{name}{i}"))
    return graphs


def _read(source: str, fmt: str) -> list[Graph]:
    if source == "-":
        return _parse_graphs(sys.stdin.read(), fmt, "G")
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc
    return _parse_graphs(text, fmt, path.stem)


def _read_one(source: str, fmt: str) -> Graph:
    graphs = _read(source, fmt)
    if len(graphs) != 1:
        raise UsageError(f"{source}: expected one graph, found {len(graphs)}")
    return graphs[0]


def _read_many(sources: list[str], fmt: str) -> list[Graph]:
    if not sources:
        sources = ["-"]
    return [g for s in sources for g in _read(s, fmt)]


def _emit_graph(g: Graph, fmt: str) -> None:
    if fmt == "dimacs":
        sys.stdout.write(write_dimacs(g))
    else:
        sys.stdout.write(encode_graph6(g).decode("ascii") + "\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)


def _lab(args) -> LabConfig:
    base = LabConfig()
    if args.budget_nodes is None and args.budget_seconds is None:
        return LabConfig(max_power=args.max_power)
    b = _budget(args)
    return LabConfig(base.solver, args.max_power, b, b, base.subgraph_limit, base.isomorphism_limit)


# -- commands ----------------------------------------------------------------


def _cmd_gen(args, doc: ReportDocument) -> int:
    fam = args.family
    if fam in ("cycle", "complete"):
        if args.n is None:
            raise UsageError(f"gen {fam} needs --n")
        g = cycle_graph(args.n) if fam == "cycle" else complete_graph(args.n)
    else:
        if args.q is None:
            raise UsageError(f"gen {fam} needs --q")
        if fam == "paley":
            variant = PaleyVariant.FULL
        elif fam == "paley-del":
            variant = PaleyVariant.ONE_DELETED
        elif args.kind == "adjacent":
            variant = PaleyVariant.TWO_DELETED_ADJACENT
        else:
            variant = PaleyVariant.TWO_DELETED_NONADJACENT
        g = paley_family(args.q, variant)
    doc.add_input(g.label, g)
    doc.results["graph"] = g.label
    _emit_graph(g, args.format)
    return EXIT_OK


def _cmd_op(args, doc: ReportDocument) -> int:
    graphs = _read_many(args.inputs, args.format)
    unary = args.operation in ("complement", "power")
    if len(graphs) != (1 if unary else 2):
        raise UsageError(f"op {args.operation} takes {1 if unary else 2} graph(s), got {len(graphs)}")
    if args.operation == "complement":
        out = complement(graphs[0])
    elif args.operation == "power":
        if args.t < 1:
            raise UsageError("-t must be at least 1")
        out = or_power(graphs[0], args.t)
    else:
        fn = {"tensor": tensor_product, "or": or_product, "and": and_product, "join": join}[args.operation]
        out = fn(graphs[0], graphs[1])
    for g in graphs:
        doc.add_input(g.label, g)
    doc.results["output"] = {"n": out.n, "m": out.num_edges, "graph6": encode_graph6(out).decode("ascii")}
    _emit_graph(out, args.format)
    return EXIT_OK


def _cmd_compute(args, doc: ReportDocument) -> int:
    g = _read_one(args.input, args.format)
    gid = g.label
    doc.add_input(gid, g)
    budget = _budget(args)
    inv = args.invariant
    if inv in ("clique", "alpha"):
        res = (max_clique if inv == "clique" else max_independent_set)(g, budget, args.deterministic)
        print(res.size)
        print("witness", " ".join(map(str, res.witness)))
        doc.results[inv] = {"value": res.size, "proven_optimal": res.proven_optimal, "nodes": res.nodes_explored}
        kind = "clique" if inv == "clique" else "independent-set"
        doc.certificates.append({"kind": kind, "graph": gid, "vertices": list(res.witness)})
        if not res.proven_optimal:
            print(f"inconclusive: search budget exhausted, {inv} >= {res.size}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
    elif inv == "chrom":
        try:
            chi = chromatic_number(g, budget)
        except SearchInconclusive as exc:
            print(f"inconclusive: {exc.lower} <= chi <= {exc.upper}", file=sys.stderr)
            doc.results["chrom"] = {"value": None, "lower": exc.lower, "upper": exc.upper}
            return EXIT_INCONCLUSIVE
        coloring = is_k_colorable(g, chi) if g.n else []
        print(chi)
        doc.results["chrom"] = {"value": chi}
        doc.certificates.append({"kind": "coloring", "graph": gid, "k": chi, "colors": coloring})
    elif inv in ("theta", "theta-bar"):
        cfg = SolverConfig(target_gap=args.tol)
        val = lovasz_theta(g, cfg) if inv == "theta" else theta_bar(g, cfg)
        print(f"{val.value:.6f}")
        print(f"certified [{val.lower:.8f}, {val.upper:.8f}] gap {val.gap:.2e} ({val.status})")
        doc.results[inv] = theta_dict(val)
        doc.certificates.append(theta_certificate(gid, val, inv == "theta-bar", not args.no_matrices))
    else:
        og = odd_girth(g)
        print("inf" if og == math.inf else og)
        doc.results["odd-girth"] = None if og == math.inf else int(og)
    return EXIT_OK


def _cmd_hom(args, doc: ReportDocument) -> int:
    f, g = _read_one(args.f, args.format), _read_one(args.g, args.format)
    if f.label == g.label:
        f, g = f.with_label(f.label + "_F"), g.with_label(g.label + "_G")
    doc.add_input(f.label, f)
    doc.add_input(g.label, g)
    try:
        mapping = homomorphism(f, g, _budget(args))
    except SearchInconclusive:
        print("inconclusive: search budget exhausted", file=sys.stderr)
        doc.results["hom"] = {"exists": None}
        return EXIT_INCONCLUSIVE
    if mapping is None:
        print("no")
        doc.results["hom"] = {"exists": False}
    else:
        if not verify_homomorphism(f, g, mapping):
            print("homomorphism witness failed verification", file=sys.stderr)
            return EXIT_VERIFY
        print("yes")
        print("mapping", " ".join(map(str, mapping)))
        doc.results["hom"] = {"exists": True}
        doc.certificates.append({"kind": "homomorphism", "source": f.label, "target": g.label, "mapping": mapping})
    return EXIT_OK


def _print_bounds(r) -> None:
    print(f"{r.graph_id}: {r.best_lower:.6f} <= C_OR <= {r.best_upper:.6f}" + (" (exact)" if r.exact else ""))
    for e in r.entries:
        print(f"  {e.kind:5} {e.value:.6f}  {e.provenance}: {e.detail}")


def _cmd_bounds(args, doc: ReportDocument) -> int:
    g = _read_one(args.input, args.format)
    cfg = _lab(args)
    r = capacity_bounds(g, args.max_power, cfg, graph_id=g.label)
    doc.add_input(g.label, g)
    doc.results["bounds"] = bound_report_dict(r)
    doc.certificates.extend(bound_report_certificates(r, g, cfg.solver, not args.no_matrices))
    _print_bounds(r)
    for note in r.notices:
        print(f"  note: {note}")
    return EXIT_OK


def _print_pair(r) -> None:
    print(f"pair ({r.f_id}, {r.g_id}): verdict {r.verdict}")
    print(f"upper {r.upper:.6f}")
    print(f"best lower candidate {r.best_lower:.6f}")
    if r.cap is not None:
        print(f"cap {r.cap:.6f}")
    for e in r.lower_candidates:
        print(f"  lower {e.value:.6f}  {e.provenance}: {e.detail}")
    for h in r.hypotheses:
        state = {True: "holds", False: "FAILS", None: "undecided"}[h.holds]
        print(f"  hypothesis {state}: {h.name} ({h.detail})")
    for note in r.notices:
        print(f"  note: {note}")


def _cmd_pair(args, doc: ReportDocument) -> int:
    f, g = _read_one(args.f, args.format), _read_one(args.g, args.format)
    if f.label == g.label:
        f, g = f.with_label(f.label + "_F"), g.with_label(g.label + "_G")
    cfg = _lab(args)
    r = pair_bounds(f, g, cfg, max_power=args.max_power)
    doc.add_input(r.f_id, f)
    doc.add_input(r.g_id, g)
    doc.results["pair"] = pair_report_dict(r)
    doc.certificates.extend(pair_report_certificates(r, f, g, cfg.solver, not args.no_matrices))
    _print_pair(r)
    return EXIT_INCONCLUSIVE if r.verdict == "undetermined" and _undecided(r) else EXIT_OK


def _undecided(r) -> bool:
    return any(h.holds is None for h in r.hypotheses) or any(
        v is None for v in r.homomorphisms.values()
    )


def _cmd_testcase(args, doc: ReportDocument) -> int:
    variant = PaleyVariant.FULL if args.variant == "full" else PaleyVariant.ONE_DELETED
    try:
        r = paley_gap_certificate(args.p, variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    f = paley_family(args.p, variant)
    k = complete_graph(int(r.g_id[1:]))
    doc.add_input(r.f_id, f)
    doc.add_input(r.g_id, k)
    doc.results["pair"] = pair_report_dict(r)
    doc.certificates.extend(pair_report_certificates(r, f, k, LabConfig().solver, not args.no_matrices))
    for line in r.narrative:
        print(line)
    print()
    _print_pair(r)
    return EXIT_INCONCLUSIVE if _undecided(r) else EXIT_OK


def _cmd_properties(args, doc: ReportDocument) -> int:
    results = run_all(args.seed)
    ok = True
    for res in results:
        print(res.line())
        for msg in res.failures[:5]:
            print(f"    {msg}")
        ok &= res.passed
    doc.results["properties"] = {
        res.name: {"trials": res.trials, "failures": res.failures} for res in results
    }
    doc.results["seed"] = args.seed
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_verify(args, doc: ReportDocument) -> int:
    try:
        loaded = ReportDocument.from_json(Path(args.report).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.report}: {exc.strerror}") from exc
    failures = loaded.verify()
    for msg in failures:
        print(msg)
    print(f"{len(loaded.certificates)} certificates, {len(failures)} failures")
    doc.results["verified"] = {"certificates": len(loaded.certificates), "failures": failures}
    return EXIT_VERIFY if failures else EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "op": _cmd_op,
    "compute": _cmd_compute,
    "hom": _cmd_hom,
    "bounds": _cmd_bounds,
    "pair": _cmd_pair,
    "testcase": _cmd_testcase,
    "properties": _cmd_properties,
    "verify": _cmd_verify,
}


def _write_report(doc: ReportDocument, dest: str) -> int:
    failures = doc.verify()
    if failures:
        for msg in failures:
            print(f"certificate verification failed: {msg}", file=sys.stderr)
        return EXIT_VERIFY
    text = doc.to_json()
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)
    return EXIT_OK


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # 'op' takes a variable number of inputs that may follow its flags
        if extra and args.command == "op" and not any(a.startswith("-") and a != "-" for a in extra):
            args.inputs = list(args.inputs) + extra
        elif extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return int(exc.code or 0)
    doc = ReportDocument(command=list(sys.argv[1:] if argv is None else argv))
    start = time.perf_counter()
    try:
        code = _COMMANDS[args.command](args, doc)
    except (UsageError, FormatError, GraphError, FieldError, ReportError) as exc:
        print(f"hedcap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchInconclusive as exc:
        print(f"hedcap: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    doc.timing["total_seconds"] = time.perf_counter() - start
    if args.json is not None and args.command != "verify":
        wrote = _write_report(doc, args.json)
        if wrote != EXIT_OK:
            return wrote
    elif args.command != "verify" and doc.verify():
        print("certificate verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return code


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
