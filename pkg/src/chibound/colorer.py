"""Constructive coloring within 2ω colors for (P3∪P2, house)-free graphs.

The recursion tries, in order:

1. ``join-split``: if the complement is disconnected, color each join factor
   on its own palette;
2. ``dominated-vertex``: drop vertices whose neighbourhood is contained in a
   non-neighbour's and give them that vertex's color afterwards;
3. ``no-2k2-base``: without an induced 2K2, color exactly;
4. ``good-subgraph``: anchor a 2K2, pick a good subgraph H from the candidate
   pool, spend ``max(χ(H), χ(I)) + χ(T)`` colors on everything except the
   part R complete to H, and recurse on R;
5. ``exact-fallback``: color exactly.

Any input gets a proper coloring.  The 2ω bound is only promised for class
members.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from chibound.decomposition import candidate_pool, good_subgraph_check, partition_by_anchor
from chibound.generators import P3UP2_HOUSE
from chibound.graph import Graph, bits, co_components, induced_subgraph
from chibound.invariants import (
    Coloring,
    SolveBudget,
    chromatic_number,
    default_budget,
    is_proper_coloring,
    max_clique_mask,
)
from chibound.patterns import find_all_2k2, is_free, pattern

RULES = ("join-split", "dominated-vertex", "no-2k2-base", "good-subgraph", "exact-fallback")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    vertices: tuple[int, ...]
    colors: int
    note: str = ""


@dataclass
class ProofTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def add(self, rule: str, vertices, colors: int, note: str = "") -> None:
        assert rule in RULES, rule
        self.steps.append(TraceStep(rule, tuple(sorted(vertices)), colors, note))

    @property
    def colors_consumed(self) -> int:
        return sum(s.colors for s in self.steps)

    def rules_used(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.rule] = out.get(s.rule, 0) + 1
        return out

    def consuming_sets_disjoint(self) -> bool:
        seen: set[int] = set()
        for s in self.steps:
            if s.colors:
                if seen & set(s.vertices):
                    return False
                seen |= set(s.vertices)
        return True

    def as_dicts(self) -> list[dict]:
        return [{"rule": s.rule, "vertices": list(s.vertices), "colors": s.colors, "note": s.note} for s in self.steps]


@dataclass(frozen=True)
class Reduction:
    graph: Graph
    kept: tuple[int, ...]
    plan: tuple[tuple[int, int], ...]  # (removed, dominator) in removal order

    def extend(self, coloring: Coloring | list[int], n: int) -> list[int]:
        """Lift a coloring of ``graph`` to the original ``n`` vertices."""
        assignment = coloring.assignment if isinstance(coloring, Coloring) else coloring
        color = [-1] * n
        for i, v in enumerate(self.kept):
            color[v] = assignment[i]
        for u, v in reversed(self.plan):
            color[u] = color[v]
        return color


def _dominated_in(g: Graph, alive: int):
    for u in bits(alive):
        nu = g.masks[u] & alive
        for v in bits(alive & ~nu & ~(1 << u)):
            if nu & ~g.masks[v] == 0:
                return u, v
    return None


def reduce_dominated(g: Graph) -> Reduction:
    """Repeatedly remove a vertex dominated by a non-neighbour."""
    alive = g.all_mask
    plan = []
    while True:
        hit = _dominated_in(g, alive)
        if hit is None:
            break
        plan.append(hit)
        alive &= ~(1 << hit[0])
    kept = tuple(bits(alive))
    return Reduction(induced_subgraph(g, kept), kept, tuple(plan))


class _Run:
    def __init__(self, budget: SolveBudget, trace: ProofTrace, house_free: bool):
        self.budget = budget
        self.trace = trace
        self.house_free = house_free

    def exact(self, g: Graph) -> tuple[list[int], int]:
        res = chromatic_number(g, self.budget)
        return list(res.coloring.assignment), res.value

    def solve(self, g: Graph, labels: list[int]) -> tuple[dict[int, int], int]:
        """Color ``g``; vertex ``i`` is ``labels[i]`` in the caller's graph.

        Returns colors in ``0..k-1`` keyed by label, and ``k``.
        """
        if g.n == 0:
            return {}, 0

        factors = co_components(g)
        if len(factors) > 1:
            self.trace.add("join-split", labels, 0, f"{len(factors)} factors")
            out: dict[int, int] = {}
            offset = 0
            for f in factors:
                idx = list(bits(f))
                part, k = self.solve(induced_subgraph(g, idx), [labels[i] for i in idx])
                out.update((v, c + offset) for v, c in part.items())
                offset += k
            return out, offset

        red = reduce_dominated(g)
        if red.plan:
            self.trace.add("dominated-vertex", [labels[u] for u, _ in red.plan], 0)
            part, k = self.solve(red.graph, [labels[i] for i in red.kept])
            local = [part[labels[i]] for i in red.kept]
            color = red.extend(local, g.n)
            return {labels[i]: c for i, c in enumerate(color)}, k

        anchors = find_all_2k2(g, cap=1)
        if not anchors:
            color, k = self.exact(g)
            omega = max_clique_mask(g.masks, g.all_mask, self.budget).bit_count()
            if self.house_free and k > (3 * omega) // 2:
                raise AssertionError(f"2K2- and house-free graph with χ={k} > ⌊3ω/2⌋ for ω={omega}")
            self.trace.add("no-2k2-base", labels, k)
            return {labels[i]: c for i, c in enumerate(color)}, k

        chosen = self.pick_good(g, anchors[0])
        if chosen is not None:
            return self.apply_good(g, labels, chosen)

        color, k = self.exact(g)
        self.trace.add("exact-fallback", labels, k, "no good subgraph in pool")
        return {labels[i]: c for i, c in enumerate(color)}, k

    def pick_good(self, g: Graph, anchor):
        part = partition_by_anchor(g, anchor)
        best = None
        best_key = None
        for pos, hm in enumerate(candidate_pool(g, part, self.budget)):
            v = good_subgraph_check(g, hm, self.budget, evidence=False)
            if not v.good:
                continue
            key = (v.chi_h, -len(v.r_set), pos)
            if best_key is None or key < best_key:
                best, best_key = hm, key
        if best is None:
            return None
        return good_subgraph_check(g, best, self.budget)

    def apply_good(self, g: Graph, labels: list[int], v) -> tuple[dict[int, int], int]:
        cols = v.colorings
        out: dict[int, int] = {}
        for i, c in cols["H"].items():
            out[labels[i]] = c
        for i, c in cols["I"].items():
            out[labels[i]] = c
        first = max(v.chi_h, v.chi_i)
        for i, c in cols["T"].items():
            out[labels[i]] = first + c
        used = first + v.chi_t
        side = list(v.h) + list(v.i_set) + list(v.t_set)
        self.trace.add(
            "good-subgraph",
            [labels[i] for i in side],
            used,
            f"H={[labels[i] for i in v.h]} χ(H)={v.chi_h} χ(I)={v.chi_i} χ(T)={v.chi_t}",
        )
        if v.r_set:
            r = list(v.r_set)
            part, k = self.solve(induced_subgraph(g, r), [labels[i] for i in r])
            out.update((lab, c + used) for lab, c in part.items())
            used += k
        return out, used


def bounded_coloring(g: Graph, budget: SolveBudget | None = None) -> tuple[Coloring, ProofTrace]:
    """Proper coloring of ``g`` built from the proof's reductions.

    Raises :class:`~chibound.invariants.BudgetExceeded` rather than returning
    a partial coloring.
    """
    budget = budget if budget is not None else default_budget()
    trace = ProofTrace()
    house_free = is_free(g, [pattern("house")]).free
    colors, k = _Run(budget, trace, house_free).solve(g, list(range(g.n)))
    coloring = Coloring(tuple(colors[v] for v in range(g.n)), k)
    verdict = is_proper_coloring(g, coloring)
    if not verdict.proper:
        raise AssertionError(f"colorer produced a clash on edge {verdict.edge}")
    return coloring, trace


def in_class(g: Graph) -> bool:
    return is_free(g, P3UP2_HOUSE.family).free


__all__ = ["ProofTrace", "Reduction", "TraceStep", "bounded_coloring", "in_class", "reduce_dominated"]
