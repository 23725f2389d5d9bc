"""``chibound`` command line.

Exit codes: 0 success, 1 configuration or I/O error, 2 bound violations found,
3 node budget exhausted on a single-graph command.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from chibound.colorer import bounded_coloring
from chibound.decomposition import (
    audit_anchors,
    check_unconditional,
    counterexample_audit,
    partition_by_anchor,
)
from chibound.experiment import ExperimentConfig, report_lines, run_experiment
from chibound.generators import ClassSpec, class_corpus, named_graph
from chibound.invariants import BudgetExceeded, SolveBudget, chromatic_number, clique_number, default_budget
from chibound.io import FORMATS, ParseError, format_graphs, load_graphs
from chibound.patterns import find_all_2k2, is_free

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION, EXIT_BUDGET = 0, 1, 2, 3


def _density(text: str) -> tuple[float, float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) == 2:
        return parts[0], parts[1]
    raise argparse.ArgumentTypeError("density is 'p' or 'lo,hi'")


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> SolveBudget:
    return SolveBudget(args.node_budget) if args.node_budget else default_budget()


def _graphs(args):
    return load_graphs(args.graph, args.format)


def cmd_gen(args) -> int:
    if args.named:
        graphs = [named_graph(args.named, *args.param)]
    else:
        graphs = class_corpus(args.samples, args.n_min, args.n_max, args.density, args.seed, ClassSpec.parse(args.cls))
    fmt = args.format
    if fmt == "edgelist" and len(graphs) != 1:
        raise ValueError("edge-list output holds one graph; use --format graph6 or --samples 1")
    text = format_graphs(graphs, fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_free(args) -> int:
    family = ClassSpec.parse(args.cls).family
    lines = []
    for i, g in enumerate(_graphs(args)):
        v = is_free(g, family)
        rec = {"graph": i, "free": v.free}
        if v.certificate:
            rec["pattern"] = v.certificate.pattern.name
            rec["embedding"] = list(v.certificate.mapping)
        lines.append(json.dumps(rec))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_omega(args) -> int:
    lines = []
    for i, g in enumerate(_graphs(args)):
        b = _budget(args)
        r = clique_number(g, b)
        lines.append(json.dumps({"graph": i, "omega": r.value, "witness": list(r.witness), "nodes": b.used}))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_chi(args) -> int:
    lines = []
    for i, g in enumerate(_graphs(args)):
        b = _budget(args)
        r = chromatic_number(g, b)
        lines.append(json.dumps({"graph": i, "chi": r.value, "coloring": list(r.coloring.assignment), "nodes": b.used}))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    lines = []
    worst = EXIT_OK
    cls = ClassSpec.parse(args.cls)
    for i, g in enumerate(_graphs(args)):
        b = _budget(args)
        coloring, trace = bounded_coloring(g, b)
        omega = clique_number(g, b).value
        member = cls.contains(g)
        ok = coloring.k <= 2 * omega
        if member and not ok:
            worst = EXIT_VIOLATION
        lines.append(
            json.dumps(
                {
                    "graph": i,
                    "palette": coloring.k,
                    "omega": omega,
                    "in_class": member,
                    "within_2omega": ok,
                    "coloring": list(coloring.assignment),
                    "trace": trace.as_dicts(),
                    "nodes": b.used,
                },
                ensure_ascii=False,
            )
        )
    _emit(lines, args.out)
    return worst


def _anchor(g, index: int):
    anchors = find_all_2k2(g, cap=index + 1)
    if len(anchors) <= index:
        return None
    return anchors[index]


def cmd_decompose(args) -> int:
    lines = []
    for i, g in enumerate(_graphs(args)):
        a = _anchor(g, args.anchor_index)
        if a is None:
            lines.append(json.dumps({"graph": i, "anchor": None, "note": "no induced 2K2 at that index"}))
            continue
        part = partition_by_anchor(g, a)
        rec = {"graph": i, **part.as_dict(g), "unconditional": check_unconditional(g, part).as_dict()}
        lines.append(json.dumps(rec, ensure_ascii=False))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    lines = []
    for i, g in enumerate(_graphs(args)):
        count, reports = audit_anchors(g, args.anchors)
        rec = {
            "graph": i,
            "anchors": count,
            "unconditional": [{"anchor": list(a.vertices), **rep.as_dict()} for a, rep in reports],
        }
        if count:
            try:
                rec["counterexample"] = counterexample_audit(g, reports[0][0], _budget(args)).as_dict()
            except ValueError as exc:
                rec["counterexample"] = {"skipped": str(exc)}
        lines.append(json.dumps(rec, ensure_ascii=False))
    _emit(lines, args.out)
    return EXIT_OK


def _campaign(cfg: ExperimentConfig) -> int:
    records, summary = run_experiment(cfg)
    if not cfg.out:
        _emit(report_lines(records, summary), None)
    if summary["violations"] or summary["colorer_violations"]:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify_bound(args) -> int:
    cfg = ExperimentConfig(
        cls=ClassSpec.parse(args.cls),
        samples=args.samples,
        n_min=args.n_min,
        n_max=args.n_max,
        density=args.density,
        seed=args.seed,
        node_budget=args.node_budget or default_budget().node_limit,
        anchors=args.anchors,
        out=args.out,
        audit=not args.no_audit,
        color=not args.no_color,
        source="file" if args.input else "random",
        input_path=args.input,
        input_format=args.format,
        jobs=args.jobs,
    )
    return _campaign(cfg)


def cmd_tightness(args) -> int:
    cfg = ExperimentConfig(
        samples=1,
        source="tightness",
        k_even=args.k_even,
        k_odd=args.k_odd,
        node_budget=args.node_budget or default_budget().node_limit,
        anchors=args.anchors,
        out=args.out,
        audit=False,
        jobs=args.jobs,
    )
    records, summary = run_experiment(cfg)
    if not cfg.out:
        _emit(report_lines(records, summary), None)
    tight = all(r.chi == 2 * r.omega for r in records if r.status == "ok")
    return EXIT_OK if tight else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chibound", description="χ ≤ 2ω toolkit for (P3∪P2, house)-free graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_input=True):
        if graph_input:
            sp.add_argument("graph", help="input graph file")
        sp.add_argument("--format", choices=FORMATS, default="edgelist")
        sp.add_argument("--node-budget", type=int, default=None)
        sp.add_argument("--out", default=None)
        return sp

    def corpus_flags(sp):
        sp.add_argument("--samples", type=int, default=500)
        sp.add_argument("--n-min", type=int, default=1)
        sp.add_argument("--n-max", type=int, default=12)
        sp.add_argument("--density", type=_density, default=(0.2, 0.8))
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--class", dest="cls", default="p3up2,house")

    sp = common(sub.add_parser("gen", help="generate class members or a named graph"), graph_input=False)
    corpus_flags(sp)
    sp.add_argument("--named", default=None, help="named graph instead of a random corpus")
    sp.add_argument("--param", type=int, nargs="*", default=[])
    sp.set_defaults(func=cmd_gen, format="graph6")

    sp = common(sub.add_parser("check-free", help="test membership in a forbidden-subgraph class"))
    sp.add_argument("--class", dest="cls", default="p3up2,house")
    sp.set_defaults(func=cmd_check_free)

    common(sub.add_parser("omega", help="exact clique number")).set_defaults(func=cmd_omega)
    common(sub.add_parser("chi", help="exact chromatic number")).set_defaults(func=cmd_chi)

    sp = common(sub.add_parser("color", help="proof-guided coloring with trace"))
    sp.add_argument("--class", dest="cls", default="p3up2,house")
    sp.set_defaults(func=cmd_color)

    sp = common(sub.add_parser("decompose", help="N_S partition around an induced 2K2"))
    sp.add_argument("--anchor-index", type=int, default=0)
    sp.set_defaults(func=cmd_decompose)

    sp = common(sub.add_parser("audit", help="structural predicates over several anchors"))
    sp.add_argument("--anchors", type=int, default=20)
    sp.set_defaults(func=cmd_audit)

    sp = common(sub.add_parser("verify-bound", help="seeded χ ≤ 2ω campaign"), graph_input=False)
    corpus_flags(sp)
    sp.add_argument("--input", default=None, help="read the corpus from a file instead")
    sp.add_argument("--anchors", type=int, default=20)
    sp.add_argument("--no-audit", action="store_true")
    sp.add_argument("--no-color", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify_bound)

    sp = common(sub.add_parser("tightness", help="check χ = 2ω on the extremal families"), graph_input=False)
    sp.add_argument("--k-even", type=int, default=2)
    sp.add_argument("--k-odd", type=int, default=1)
    sp.add_argument("--anchors", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_tightness)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"status": "budget_exceeded", "error": str(exc)}))
        return EXIT_BUDGET
    except (ParseError, OSError, ValueError, KeyError) as exc:
        print(f"chibound: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
