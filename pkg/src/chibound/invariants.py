"""Exact clique number, chromatic number and independence number.

All solvers work on int bitmasks and count search nodes against a
:class:`SolveBudget`.  Running out of budget raises :class:`BudgetExceeded`;
a value that is returned is always exact.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

from chibound.graph import (
    Graph,
    bits,
    co_components,
    complement,
    components,
    induced_subgraph,
    to_mask,
)

DEFAULT_NODE_LIMIT = 20_000_000
PERFECTION_CAP = 14


class BudgetExceeded(RuntimeError):
    """A solver used up its node budget before reaching an answer."""


@dataclass
class SolveBudget:
    """Search-node allowance shared by every solver call it is passed to."""

    node_limit: int = DEFAULT_NODE_LIMIT
    used: int = 0

    def __post_init__(self):
        if self.node_limit < 1:
            raise ValueError("node_limit must be positive")

    def tick(self, count: int = 1) -> None:
        self.used += count
        if self.used > self.node_limit:
            raise BudgetExceeded(f"node budget of {self.node_limit} exhausted")

    @property
    def remaining(self) -> int:
        return max(0, self.node_limit - self.used)


def default_budget() -> SolveBudget:
    """Fresh budget; ``CHIBOUND_NODE_BUDGET`` overrides the default limit."""
    env = os.environ.get("CHIBOUND_NODE_BUDGET")
    return SolveBudget(int(env) if env else DEFAULT_NODE_LIMIT)


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.assignment and self.k < 1:
            raise ValueError("palette size must be positive")
        for c in self.assignment:
            if not 0 <= c < self.k:
                raise ValueError(f"color {c} outside palette of size {self.k}")

    @classmethod
    def from_list(cls, assignment: Sequence[int]) -> Coloring:
        """Compact the used colors to ``0..k-1`` in order of first use."""
        relabel: dict[int, int] = {}
        out = []
        for c in assignment:
            if c not in relabel:
                relabel[c] = len(relabel)
            out.append(relabel[c])
        return cls(tuple(out), len(relabel))

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class CliqueResult:
    value: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    coloring: Coloring
    lower_bound_clique: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class ProperVerdict:
    proper: bool
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.proper


@dataclass(frozen=True)
class PerfectionVerdict:
    perfect: bool
    witness: tuple[int, ...] | None = None
    kind: str | None = None  # "hole" or "antihole"

    def __bool__(self) -> bool:
        return self.perfect


def _fresh(budget: SolveBudget | None) -> SolveBudget:
    return budget if budget is not None else default_budget()


# -- cliques -------------------------------------------------------------------


def _color_sort(masks: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy color classes of ``p``; returns vertices and their color numbers."""
    order: list[int] = []
    cols: list[int] = []
    q = p
    k = 0
    while q:
        k += 1
        avail = q
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            cols.append(k)
            q &= ~low
            avail &= ~low & ~masks[v]
    return order, cols


def max_clique_mask(masks: Sequence[int], within: int, budget: SolveBudget) -> int:
    """Maximum clique of the graph given by ``masks`` restricted to ``within``."""
    best = [0, 0]  # size, mask
    # a greedy clique as the opening incumbent
    p = within
    greedy = 0
    while p:
        v = max(bits(p), key=lambda u: ((masks[u] & p).bit_count(), -u))
        greedy |= 1 << v
        p &= masks[v]
    best[0], best[1] = greedy.bit_count(), greedy

    def expand(r: int, size: int, p: int) -> None:
        budget.tick()
        order, cols = _color_sort(masks, p)
        for i in range(len(order) - 1, -1, -1):
            if size + cols[i] <= best[0]:
                return
            v = order[i]
            newp = p & masks[v]
            if newp:
                expand(r | (1 << v), size + 1, newp)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, r | (1 << v)
            p &= ~(1 << v)

    if within:
        expand(0, 0, within)
    return best[1]


def clique_number(g: Graph, budget: SolveBudget | None = None) -> CliqueResult:
    budget = _fresh(budget)
    w = max_clique_mask(g.masks, g.all_mask, budget)
    return CliqueResult(w.bit_count(), tuple(bits(w)))


def independence_number(g: Graph, budget: SolveBudget | None = None) -> CliqueResult:
    return clique_number(complement(g), budget)


def maximal_cliques(masks: Sequence[int], within: int, budget: SolveBudget, limit: int | None = None) -> list[int]:
    """Bron-Kerbosch with pivoting; cliques come out in a fixed order."""
    out: list[int] = []

    class _Done(Exception):
        pass

    def bk(r: int, p: int, x: int) -> None:
        budget.tick()
        if not p and not x:
            out.append(r)
            if limit is not None and len(out) >= limit:
                raise _Done
            return
        pivot = max(bits(p | x), key=lambda u: ((masks[u] & p).bit_count(), -u))
        for v in bits(p & ~masks[pivot]):
            bk(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    if within:
        try:
            bk(0, within, 0)
        except _Done:
            pass
    return out


# -- colorings -------------------------------------------------------------------


def is_proper_coloring(g: Graph, c: Coloring | Sequence[int]) -> ProperVerdict:
    assignment = c.assignment if isinstance(c, Coloring) else tuple(c)
    if len(assignment) != g.n:
        raise ValueError("coloring must assign every vertex")
    for u, v in g.edges():
        if assignment[u] == assignment[v]:
            return ProperVerdict(False, (u, v))
    return ProperVerdict(True)


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> Coloring:
    """First-fit coloring along ``order`` (natural order by default)."""
    order = list(range(g.n)) if order is None else list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    color = [-1] * g.n
    for v in order:
        taken = {color[u] for u in g.adj[v]}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return Coloring(tuple(color), max(color, default=-1) + 1)


def dsatur_coloring(g: Graph) -> Coloring:
    """Heuristic DSATUR coloring, used as an upper bound."""
    n = g.n
    color = [-1] * n
    sat = [0] * n  # bitmask of neighbor colors
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (sat[u].bit_count(), g.degree(u), -u))
        c = 0
        while (sat[v] >> c) & 1:
            c += 1
        color[v] = c
        uncolored.discard(v)
        for u in g.adj[v]:
            sat[u] |= 1 << c
    return Coloring(tuple(color), max(color, default=-1) + 1)


def _k_coloring(masks: Sequence[int], n: int, k: int, clique: Sequence[int], budget: SolveBudget) -> list[int] | None:
    """Backtracking DSATUR search for a proper coloring with at most ``k`` colors."""
    if len(clique) > k:
        return None
    color = [-1] * n
    forb = [0] * n
    uncolored = (1 << n) - 1

    def assign(v: int, c: int) -> list[int]:
        color[v] = c
        changed = []
        bit = 1 << c
        for u in bits(masks[v]):
            if not forb[u] & bit:
                forb[u] |= bit
                changed.append(u)
        return changed

    def undo(v: int, c: int, changed: list[int]) -> None:
        color[v] = -1
        bit = ~(1 << c)
        for u in changed:
            forb[u] &= bit

    for i, v in enumerate(clique):
        assign(v, i)
        uncolored &= ~(1 << v)

    full_palette = (1 << k) - 1

    def rec(unc: int, used: int) -> bool:
        budget.tick()
        if not unc:
            return True
        best_v = -1
        best_key = None
        for u in bits(unc):
            f = forb[u]
            if f & full_palette == full_palette:
                return False
            key = (f.bit_count(), (masks[u] & unc).bit_count())
            if best_key is None or key > best_key:
                best_key, best_v = key, u
        v = best_v
        rest = unc & ~(1 << v)
        limit = min(k, used + 1)
        for c in range(limit):
            if (forb[v] >> c) & 1:
                continue
            changed = assign(v, c)
            if rec(rest, max(used, c + 1)):
                return True
            undo(v, c, changed)
        return False

    if rec(uncolored, len(clique)):
        return color
    return None


def _cover_coloring(masks: Sequence[int], n: int, k: int, sets: Sequence[int], budget: SolveBudget) -> list[int] | None:
    """Cover ``0..n-1`` by at most ``k`` of the given independent sets."""
    by_vertex: list[list[int]] = [[] for _ in range(n)]
    for s in sets:
        for v in bits(s):
            by_vertex[v].append(s)
    chosen: list[int] = []

    def rec(unc: int) -> bool:
        budget.tick()
        if not unc:
            return True
        room = k - len(chosen)
        if room == 0:
            return False
        best_v, best_opts = -1, None
        maxc = 0
        for v in bits(unc):
            opts = {s & unc for s in by_vertex[v]}
            if best_opts is None or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
            for s in opts:
                c = s.bit_count()
                if c > maxc:
                    maxc = c
        if room * maxc < unc.bit_count():
            return False
        # sets that are subsets of another option are dominated
        opts = sorted(best_opts, key=lambda s: (-s.bit_count(), s))
        kept: list[int] = []
        for s in opts:
            if not any(s & t == s for t in kept):
                kept.append(s)
        for s in kept:
            chosen.append(s)
            if rec(unc & ~s):
                return True
            chosen.pop()
        return False

    if not rec((1 << n) - 1):
        return None
    color = [-1] * n
    for c, s in enumerate(chosen):
        for v in bits(s):
            if color[v] < 0:
                color[v] = c
    return color


def _use_cover_strategy(g: Graph, omega: int, alpha: int) -> bool:
    if g.n > 32:
        return False
    return g.density() >= 0.5 or math.ceil(g.n / alpha) > omega


def _color_prime(g: Graph, budget: SolveBudget) -> list[int]:
    """Exact coloring of a graph with no join or union split."""
    n = g.n
    if n == 0:
        return []
    clique = tuple(bits(max_clique_mask(g.masks, g.all_mask, budget)))
    omega = len(clique)
    upper = dsatur_coloring(g)
    if upper.k == omega:
        return list(upper.assignment)
    comp = complement(g)
    alpha = max_clique_mask(comp.masks, comp.all_mask, budget).bit_count()
    lower = max(omega, math.ceil(n / alpha))
    if upper.k == lower:
        return list(upper.assignment)
    if _use_cover_strategy(g, omega, alpha):
        sets = maximal_cliques(comp.masks, comp.all_mask, budget)
        for k in range(lower, upper.k):
            found = _cover_coloring(g.masks, n, k, sets, budget)
            if found is not None:
                return found
    else:
        for k in range(lower, upper.k):
            found = _k_coloring(g.masks, n, k, clique, budget)
            if found is not None:
                return found
    return list(upper.assignment)


def _color_mask(g: Graph, mask: int, budget: SolveBudget) -> dict[int, int]:
    if not mask:
        return {}
    factors = co_components(g, mask)
    if len(factors) > 1:
        out: dict[int, int] = {}
        offset = 0
        for f in factors:
            part = _color_mask(g, f, budget)
            out.update((v, c + offset) for v, c in part.items())
            offset += max(part.values()) + 1
        return out
    comps = components(g, mask)
    if len(comps) > 1:
        out = {}
        for c in comps:
            out.update(_color_mask(g, c, budget))
        return out
    order = list(bits(mask))
    sub = induced_subgraph(g, order)
    colored = _color_prime(sub, budget)
    return {v: colored[i] for i, v in enumerate(order)}


def chromatic_number(g: Graph, budget: SolveBudget | None = None) -> ChromaticResult:
    """Exact chromatic number with an optimal coloring.

    The graph is first split into join factors (components of the
    complement, whose chromatic numbers add) and disjoint components (whose
    chromatic numbers take the maximum); only the indivisible pieces reach the
    branch-and-bound search.
    """
    budget = _fresh(budget)
    colors = _color_mask(g, g.all_mask, budget)
    coloring = Coloring.from_list([colors[v] for v in range(g.n)])
    return ChromaticResult(coloring.k, coloring)


def chromatic_of(g: Graph, vertices, budget: SolveBudget | None = None) -> int:
    """χ of the subgraph induced by ``vertices`` (a mask or an iterable)."""
    mask = vertices if isinstance(vertices, int) else to_mask(vertices)
    colors = _color_mask(g, mask, _fresh(budget))
    return len(set(colors.values()))


def clique_of(g: Graph, vertices, budget: SolveBudget | None = None) -> int:
    mask = vertices if isinstance(vertices, int) else to_mask(vertices)
    return max_clique_mask(g.masks, mask, _fresh(budget)).bit_count()


# -- perfection ----------------------------------------------------------------


def find_odd_hole(g: Graph) -> tuple[int, ...] | None:
    """Some induced odd cycle of length at least 5, or ``None``."""
    masks = g.masks
    n = g.n
    for s in range(n):
        higher = g.all_mask & ~((1 << (s + 1)) - 1)
        path = [s]
        # interior: path vertices other than s and the current end
        found = _extend_hole(masks, s, higher, path, 0)
        if found:
            return tuple(found)
    return None


def _extend_hole(masks, s: int, allowed: int, path: list[int], interior: int):
    end = path[-1]
    blocked = 0
    for v in path:
        blocked |= 1 << v
    cand = masks[end] & allowed & ~blocked
    for w in bits(cand):
        if masks[w] & interior:
            continue
        closes = (masks[w] >> s) & 1
        if len(path) == 1:
            # w is the second vertex; it is adjacent to s by construction
            path.append(w)
            found = _extend_hole(masks, s, allowed, path, 0)
            path.pop()
            if found:
                return found
            continue
        if closes:
            length = len(path) + 1
            if length >= 5 and length % 2 == 1:
                return path + [w]
            continue
        path.append(w)
        found = _extend_hole(masks, s, allowed, path, interior | (1 << end))
        path.pop()
        if found:
            return found
    return None


def is_perfect_small(g: Graph, cap: int = PERFECTION_CAP) -> PerfectionVerdict:
    if g.n > cap:
        raise ValueError(f"perfection test is limited to {cap} vertices, got {g.n}")
    hole = find_odd_hole(g)
    if hole is not None:
        return PerfectionVerdict(False, hole, "hole")
    anti = find_odd_hole(complement(g))
    if anti is not None:
        return PerfectionVerdict(False, anti, "antihole")
    return PerfectionVerdict(True)
