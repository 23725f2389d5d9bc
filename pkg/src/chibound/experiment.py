"""Seeded verification campaigns and their JSON-lines reports."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from chibound.colorer import bounded_coloring
from chibound.decomposition import DEFAULT_ANCHOR_CAP, audit_anchors, counterexample_audit
from chibound.generators import P3UP2_HOUSE, ClassSpec, class_corpus, tightness_family
from chibound.graph import VERTEX_CAP, Graph
from chibound.invariants import DEFAULT_NODE_LIMIT, BudgetExceeded, SolveBudget, chromatic_number, clique_number
from chibound.io import load_graphs
from chibound.patterns import find_all_2k2


@dataclass(frozen=True)
class ExperimentConfig:
    cls: ClassSpec = P3UP2_HOUSE
    samples: int = 500
    n_min: int = 1
    n_max: int = 12
    density: tuple[float, float] = (0.2, 0.8)
    seed: int = 42
    node_budget: int = DEFAULT_NODE_LIMIT
    anchors: int = DEFAULT_ANCHOR_CAP
    out: str | None = None
    audit: bool = True
    color: bool = True
    source: str = "random"  # random | tightness | file
    input_path: str | None = None
    input_format: str = "edgelist"
    k_even: int = 2
    k_odd: int = 1
    planted_every: int = 4
    jobs: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 1 <= self.n_min <= self.n_max <= VERTEX_CAP:
            raise ValueError(f"need 1 <= n_min <= n_max <= {VERTEX_CAP}")
        lo, hi = self.density
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError("density range must satisfy 0 <= lo <= hi <= 1")
        if self.node_budget < 1 or self.anchors < 1:
            raise ValueError("node budget and anchor cap must be positive")
        if self.source not in ("random", "tightness", "file"):
            raise ValueError(f"unknown source {self.source!r}")
        if self.source == "file" and not self.input_path:
            raise ValueError("file source needs an input path")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["cls"] = list(self.cls.forbidden)
        d["density"] = list(self.density)
        return d


def ba18_bound(omega: int) -> int:
    """ω(ω+1)(ω+2)/6, the older cubic bound for the P3∪P2-free class."""
    return omega * (omega + 1) * (omega + 2) // 6


def ck22_bound(omega: int) -> int:
    return max(omega + 3, (3 * omega) // 2 - 1)


@dataclass
class ReportRecord:
    graph_id: str
    n: int
    m: int
    in_class: bool
    omega: int | None = None
    chi: int | None = None
    bound: int | None = None
    bound_ok: bool | None = None
    status: str = "ok"
    audit: dict = field(default_factory=dict)
    counterexample: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)
    nodes: int = 0
    ba18: int | None = None
    ck22: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)


def build_corpus(cfg: ExperimentConfig) -> list[Graph]:
    if cfg.source == "random":
        return class_corpus(cfg.samples, cfg.n_min, cfg.n_max, cfg.density, cfg.seed, cfg.cls, cfg.planted_every)
    if cfg.source == "tightness":
        out = [tightness_family(k, "even") for k in range(1, cfg.k_even + 1)]
        out += [tightness_family(k, "odd") for k in range(1, cfg.k_odd + 1)]
        return out
    graphs = load_graphs(cfg.input_path, cfg.input_format)
    return [g if g.name else g.with_name(f"{Path(cfg.input_path).name}#{i}") for i, g in enumerate(graphs)]


def evaluate_graph(g: Graph, cfg: ExperimentConfig) -> ReportRecord:
    budget = SolveBudget(cfg.node_budget)
    rec = ReportRecord(g.name or "graph", g.n, g.m, cfg.cls.contains(g))
    try:
        omega = clique_number(g, budget).value
        chi = chromatic_number(g, budget).value
    except BudgetExceeded:
        rec.status = "unknown"
        rec.nodes = budget.used
        return rec
    rec.omega, rec.chi = omega, chi
    rec.bound = 2 * omega
    rec.bound_ok = chi <= 2 * omega
    rec.ba18, rec.ck22 = ba18_bound(omega), ck22_bound(omega)

    if rec.in_class:
        count, reports = audit_anchors(g, cfg.anchors)
        fails = Counter(r.predicate_id for _, rep in reports for r in rep.failures())
        rec.audit = {"anchors": count, "failures": dict(sorted(fails.items()))}
        if cfg.audit and count:
            try:
                rep = counterexample_audit(g, find_all_2k2(g, cap=1)[0], budget)
                rec.counterexample = {
                    "failed": [r.predicate_id for r in rep.failures()],
                    "unknown": [r.predicate_id for r in rep.records if r.holds is None],
                    "all_hold": rep.all_hold,
                    "evidence": rep.evidence,
                }
            except BudgetExceeded:
                rec.counterexample = {"status": "unknown"}
    if cfg.color:
        try:
            coloring, trace = bounded_coloring(g, budget)
            rec.trace = {
                "palette": coloring.k,
                "rules": trace.rules_used(),
                "within_2omega": coloring.k <= 2 * omega,
                "join_split": any(s.rule == "join-split" for s in trace.steps),
            }
        except BudgetExceeded:
            rec.trace = {"status": "unknown"}
            rec.status = "unknown"
    rec.nodes = budget.used
    return rec


def _evaluate(args):
    return evaluate_graph(*args)


def summarize(records: Sequence[ReportRecord], cfg: ExperimentConfig) -> dict:
    unconditional = Counter()
    counter = Counter()
    for r in records:
        unconditional.update(r.audit.get("failures", {}))
        counter.update(r.counterexample.get("failed", []))
    violations = sum(1 for r in records if r.bound_ok is False and r.in_class)
    colorer_violations = sum(
        1 for r in records if r.in_class and r.trace.get("within_2omega") is False
    )
    return {
        "records": len(records),
        "seed": cfg.seed,
        "violations": violations,
        "colorer_violations": colorer_violations,
        "out_of_class": sum(1 for r in records if not r.in_class),
        "unknown": sum(1 for r in records if r.status != "ok"),
        "unconditional_failures": dict(sorted(unconditional.items())),
        "counterexample_failures": dict(sorted(counter.items())),
        "minimal_profile_hits": sum(1 for r in records if r.counterexample.get("all_hold")),
        "config": cfg.as_dict(),
    }


def run_experiment(cfg: ExperimentConfig) -> tuple[list[ReportRecord], dict]:
    corpus = build_corpus(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            records = list(pool.map(_evaluate, [(g, cfg) for g in corpus]))
    else:
        records = [evaluate_graph(g, cfg) for g in corpus]
    summary = summarize(records, cfg)
    if cfg.out:
        write_report(records, summary, cfg.out)
    return records, summary


def report_lines(records: Sequence[ReportRecord], summary: dict) -> list[str]:
    return [r.to_json() for r in records] + [json.dumps({"summary": summary}, ensure_ascii=False)]


def write_report(records: Sequence[ReportRecord], summary: dict, path: str | Path) -> None:
    Path(path).write_text("\n".join(report_lines(records, summary)) + "\n")
