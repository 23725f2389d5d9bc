"""Exit criteria of the build, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (also collected into the
terminal summary) and then asserts, so a failing criterion fails the run.
"""

import json
import time
from itertools import combinations

import pytest

from chibound.cli import main
from chibound.colorer import bounded_coloring
from chibound.decomposition import check_unconditional, partition_by_anchor
from chibound.generators import (
    P3UP2_HOUSE,
    P5_HOUSE,
    class_corpus,
    named_graph,
    random_graphs,
    tightness_family,
)
from chibound.graph import induced_subgraph
from chibound.invariants import (
    chromatic_number,
    clique_number,
    independence_number,
    is_perfect_small,
    is_proper_coloring,
)
from chibound.patterns import find_all_2k2, find_induced, is_free, pattern

from conftest import ACCEPTANCE_LINES
from oracles import naive_chromatic_number, naive_clique_number

pytestmark = pytest.mark.acceptance


def verdict(number: int, title: str, checks: dict[str, bool], detail: str = "") -> None:
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    if failed:
        line += f"; failed checks: {', '.join(failed)}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def in_p3up2_house(g) -> bool:
    return is_free(g, P3UP2_HOUSE.family).free


def test_criterion_1_grotzsch():
    start = time.perf_counter()
    g = named_graph("grotzsch")
    omega = clique_number(g).value
    chi = chromatic_number(g).value
    elapsed = time.perf_counter() - start
    verdict(
        1,
        "Grötzsch graph certification",
        {
            "n=11": g.n == 11,
            "m=20": g.m == 20,
            "omega=2": omega == 2,
            "chi=4": chi == 4,
            "triangle-free": find_induced(g, pattern("k3")) is None,
            "class member": in_p3up2_house(g),
            "runtime<1s": elapsed < 1.0,
        },
        f"n={g.n} m={g.m} ω={omega} χ={chi} {elapsed:.2f}s",
    )


def test_criterion_2_schlafli_complement():
    start = time.perf_counter()
    g = named_graph("schlafli_complement")
    srg = all(g.degree(v) == 10 for v in range(g.n)) and all(
        len(g.adj[u] & g.adj[v]) == (1 if g.has_edge(u, v) else 5) for u, v in combinations(range(g.n), 2)
    )
    omega = clique_number(g).value
    alpha = independence_number(g).value
    chi = chromatic_number(g).value
    membership = is_free(g, P3UP2_HOUSE.family)
    elapsed = time.perf_counter() - start
    found = membership.certificate.pattern.name if membership.certificate else "none"
    verdict(
        2,
        "Schläfli complement certification",
        {
            "n=27": g.n == 27,
            "m=135": g.m == 135,
            "srg(27,10,1,5)": srg,
            "omega=3": omega == 3,
            "alpha=6": alpha == 6,
            "chi=6": chi == 6,
            "(P3∪P2, house)-free": membership.free,
            "runtime<=5min": elapsed <= 300,
        },
        f"ω={omega} α={alpha} χ={chi}, forbidden pattern found: {found}, {elapsed:.1f}s",
    )


def test_criterion_3_tightness():
    start = time.perf_counter()
    checks = {}
    details = []
    cases = [(1, "even", 4), (2, "even", 8), (1, "odd", 6)]
    for k, variant, target in cases:
        g = tightness_family(k, variant)
        omega = clique_number(g).value
        chi = chromatic_number(g).value
        coloring, trace = bounded_coloring(g)
        checks[f"{variant} k={k}: chi=2omega={target}"] = chi == 2 * omega == target
        checks[f"{variant} k={k}: colorer palette={target}"] = coloring.k == target
        if k >= 2:
            # the family is a join of k Grötzsch factors; the split must show in the trace
            checks[f"{variant} k={k}: join-split fired"] = trace.steps[0].rule == "join-split"
        details.append(f"{variant} k={k}: ω={omega} χ={chi}")
    elapsed = time.perf_counter() - start
    checks["runtime<1min"] = elapsed < 60
    verdict(3, "tightness families", checks, "; ".join(details) + f"; {elapsed:.1f}s")


def test_criterion_4_bound_on_random_corpus(tmp_path):
    start = time.perf_counter()
    out = tmp_path / "campaign.jsonl"
    code = main(["verify-bound", "--samples", "500", "--n-max", "12", "--seed", "42", "--out", str(out)])
    rows = [json.loads(x) for x in out.read_text().splitlines()]
    records, summary = rows[:-1], rows[-1]["summary"]
    elapsed = time.perf_counter() - start
    verdict(
        4,
        "χ ≤ 2ω on 500 seeded class members",
        {
            "500 records": len(records) == 500,
            "all n<=12": all(r["n"] <= 12 for r in records),
            "all in class": all(r["in_class"] for r in records),
            "chi<=2omega everywhere": all(r["chi"] <= 2 * r["omega"] for r in records),
            "no unknowns": summary["unknown"] == 0,
            "violations=0": summary["violations"] == 0,
            "exit code 0": code == 0,
            "runtime<=10min": elapsed <= 600,
        },
        f"max ω={max(r['omega'] for r in records)}, {elapsed:.1f}s",
    )


def test_criterion_5_unconditional_predicates(class_corpus_500):
    anchors = 0
    failures = []
    for g in class_corpus_500:
        for a in find_all_2k2(g, cap=20):
            anchors += 1
            rep = check_unconditional(g, partition_by_anchor(g, a))
            failures += [(g.name, r.predicate_id) for r in rep.failures()]
    verdict(
        5,
        "unconditional predicates on every anchor",
        {"zero failures": not failures, "anchors exercised": anchors > 0},
        f"{anchors} anchors, {len(failures)} failures",
    )


def test_criterion_6_colorer_guarantee(class_corpus_500):
    graphs = list(class_corpus_500) + [
        named_graph("grotzsch"),
        named_graph("schlafli_complement"),
        tightness_family(2, "even"),
    ]
    bad = []
    for g in graphs:
        coloring, _ = bounded_coloring(g)
        omega = clique_number(g).value
        proper = all(coloring.assignment[u] != coloring.assignment[v] for u, v in g.edges())
        if not (proper and is_proper_coloring(g, coloring) and coloring.k <= 2 * omega):
            bad.append(g.name)
    verdict(
        6,
        "colorer palette ≤ 2ω and proper",
        {"all graphs": not bad},
        f"{len(graphs)} graphs, {len(bad)} bad",
    )


def test_criterion_7_oracle_equivalence(class_corpus_500):
    small = [g for g in class_corpus_500 if g.n <= 8]
    mismatches = [
        g.name
        for g in small
        if chromatic_number(g).value != naive_chromatic_number(g) or clique_number(g).value != naive_clique_number(g)
    ]
    verdict(
        7,
        "exact solvers agree with naive oracles",
        {"100% agreement": not mismatches, "non-empty sample": bool(small)},
        f"{len(small)} graphs with n≤8, {len(mismatches)} mismatches",
    )


def test_criterion_8_p5_house_bound():
    corpus = class_corpus(200, 1, 12, (0.2, 0.8), 2024, P5_HOUSE)
    bad = []
    for g in corpus:
        omega = clique_number(g).value
        if chromatic_number(g).value > (3 * omega) // 2:
            bad.append(g.name)
    verdict(
        8,
        "χ ≤ ⌊3ω/2⌋ on (P5, house)-free members",
        {
            "200 members": len(corpus) == 200,
            "all certified": all(is_free(g, P5_HOUSE.family).free for g in corpus),
            "bound holds": not bad,
        },
        f"{len(bad)} violations",
    )


def chi_equals_omega_everywhere(g) -> bool:
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            h = induced_subgraph(g, s)
            if chromatic_number(h).value != clique_number(h).value:
                return False
    return True


def test_criterion_9_perfection_consistency():
    corpus = random_graphs(100, 1, 9, seed=99)
    disagree = []
    perfect = 0
    for g in corpus:
        verdict_p = is_perfect_small(g).perfect
        perfect += verdict_p
        if verdict_p != chi_equals_omega_everywhere(g):
            disagree.append(g.name)
    verdict(
        9,
        "perfection test matches χ=ω on all induced subgraphs",
        {"full agreement": not disagree, "both verdicts seen": 0 < perfect < len(corpus)},
        f"{perfect} perfect of {len(corpus)}, {len(disagree)} disagreements",
    )
