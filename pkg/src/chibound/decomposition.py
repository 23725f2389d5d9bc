"""Neighborhood partition around an induced 2K2 and the structural predicates on it.

Given an anchor ``v1v2, v3v4`` every other vertex falls into exactly one set
``N_S`` (its anchor neighbours are indexed by ``S``) or into ``A`` (no anchor
neighbour).  Predicates are split in two groups:

* unconditional ones, which hold in every (P3∪P2, house)-free graph;
* counterexample-only ones, which a minimal graph with χ > 2ω would have to
  satisfy.  These are reported, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from chibound.generators import P3UP2_HOUSE
from chibound.graph import Graph, bits, induced_subgraph, to_mask
from chibound.invariants import (
    PERFECTION_CAP,
    BudgetExceeded,
    SolveBudget,
    chromatic_number,
    default_budget,
    is_perfect_small,
    max_clique_mask,
    maximal_cliques,
)
from chibound.patterns import Anchor2K2, find_all_2k2, is_free

INDICES = (1, 2, 3, 4)
ALL_S = tuple(frozenset(c) for r in range(1, 5) for c in combinations(INDICES, r))
POOL_CLIQUE_CAP = 100
DEFAULT_ANCHOR_CAP = 20


def S(*idx: int) -> frozenset[int]:
    return frozenset(idx)


def s_label(s: frozenset[int]) -> str:
    return "N" + "".join(str(i) for i in sorted(s))


@dataclass(frozen=True)
class NSPartition:
    anchor: Anchor2K2
    ns: dict[frozenset[int], int]  # bitmasks
    a_mask: int

    def n_s(self, *idx: int) -> frozenset[int]:
        return frozenset(bits(self.ns[frozenset(idx)]))

    def mask(self, *idx: int) -> int:
        return self.ns[frozenset(idx)]

    @property
    def a_set(self) -> frozenset[int]:
        return frozenset(bits(self.a_mask))

    @property
    def n_total_mask(self) -> int:
        out = 0
        for m in self.ns.values():
            out |= m
        return out

    @property
    def n_total(self) -> frozenset[int]:
        return frozenset(bits(self.n_total_mask))

    @property
    def b_mask(self) -> int:
        out = 0
        for s in ((2, 3), (2, 4), (1, 3, 4), (1, 3), (1, 4), (2, 3, 4), (1, 2, 3), (1, 2, 4)):
            out |= self.ns[frozenset(s)]
        return out

    @property
    def b_set(self) -> frozenset[int]:
        return frozenset(bits(self.b_mask))

    def _d_mask(self, g: Graph) -> int:
        full = self.mask(1, 2, 3, 4)
        d = 0
        for v in bits(full):
            if (full & ~(1 << v)) & ~g.masks[v] == 0:
                d |= 1 << v
        return d

    def d_set(self, g: Graph) -> frozenset[int]:
        """Vertices of ``N1234`` adjacent to all the rest of ``N1234``."""
        return frozenset(bits(self._d_mask(g)))

    def c_set(self, g: Graph) -> frozenset[int]:
        return frozenset(bits(self.mask(1, 2, 3, 4) & ~self._d_mask(g)))

    def as_dict(self, g: Graph) -> dict:
        return {
            "anchor": list(self.anchor.vertices),
            "ns": {s_label(s): sorted(bits(m)) for s, m in self.ns.items() if m},
            "A": sorted(self.a_set),
            "B": sorted(self.b_set),
            "C": sorted(self.c_set(g)),
            "D": sorted(self.d_set(g)),
        }


def partition_by_anchor(g: Graph, anchor: Anchor2K2) -> NSPartition:
    if not anchor.is_valid_in(g):
        raise ValueError(f"{anchor} is not an induced 2K2 of the graph")
    vs = anchor.vertices
    anchor_mask = to_mask(vs)
    ns = {s: 0 for s in ALL_S}
    a_mask = 0
    for v in range(g.n):
        if (anchor_mask >> v) & 1:
            continue
        s = frozenset(i + 1 for i, a in enumerate(vs) if g.has_edge(v, a))
        if s:
            ns[s] |= 1 << v
        else:
            a_mask |= 1 << v
    part = NSPartition(anchor, ns, a_mask)
    _check_partition(g, part)
    return part


def _check_partition(g: Graph, part: NSPartition) -> None:
    seen = to_mask(part.anchor.vertices)
    for m in list(part.ns.values()) + [part.a_mask]:
        if seen & m:
            raise AssertionError("partition blocks overlap")
        seen |= m
    if seen != g.all_mask:
        raise AssertionError("partition does not cover the vertex set")


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class PredicateRecord:
    predicate_id: str
    holds: bool | None  # None: unknown (budget or size cap)
    witness: tuple[int, ...] | None = None
    note: str = ""


@dataclass
class AuditReport:
    scope: str  # "unconditional" or "counterexample-only"
    records: list[PredicateRecord] = field(default_factory=list)
    evidence: dict = field(default_factory=dict)

    def record(self, pid: str, holds: bool | None, witness=None, note: str = "") -> None:
        self.records.append(PredicateRecord(pid, holds, tuple(witness) if witness is not None else None, note))

    def get(self, pid: str) -> PredicateRecord:
        for r in self.records:
            if r.predicate_id == pid:
                return r
        raise KeyError(pid)

    def failures(self) -> list[PredicateRecord]:
        return [r for r in self.records if r.holds is False]

    @property
    def all_hold(self) -> bool:
        return all(r.holds is True for r in self.records)

    def as_dict(self) -> dict:
        return {
            "scope": self.scope,
            "records": [
                {"id": r.predicate_id, "holds": r.holds, "witness": list(r.witness) if r.witness else None, "note": r.note}
                for r in self.records
            ],
            "evidence": self.evidence,
        }


# -- unconditional predicates ---------------------------------------------------


def forced_relations() -> list[tuple[str, frozenset[int], frozenset[int]]]:
    """Every (kind, X, Y) relation between two N_S sets that house-freeness forces.

    ``kind`` is ``"anti"`` (X anticomplete to Y) or ``"complete"``.
    """
    rel = []
    full = S(1, 2, 3, 4)
    for i, ip in ((1, 2), (2, 1)):
        for j, jp in ((3, 4), (4, 3)):
            x = S(i, j)
            for y in (S(i, jp), S(ip, j), S(i, ip, jp), S(ip, j, jp)):
                rel.append(("anti", x, y))
            for y in (S(i, ip, j), S(i, j, jp), full):
                rel.append(("complete", x, y))
    for pair in ((1, 2), (3, 4)):
        s, sp = pair
        others = [t for t in INDICES if t not in pair]
        for t, tp in ((others[0], others[1]), (others[1], others[0])):
            x = S(s, sp, t)
            rel.append(("anti", x, S(s, sp, tp)))
            for y in (S(s, t, tp), S(sp, t, tp), full):
                rel.append(("complete", x, y))
    return rel


def _first_edge_between(g: Graph, xm: int, ym: int):
    for x in bits(xm):
        hit = g.masks[x] & ym
        if hit:
            return (x, (hit & -hit).bit_length() - 1)
    return None


def _first_nonedge_between(g: Graph, xm: int, ym: int):
    for x in bits(xm):
        miss = ym & ~g.masks[x] & ~(1 << x)
        if miss:
            return (x, (miss & -miss).bit_length() - 1)
    return None


def _first_nonedge_within(g: Graph, xm: int):
    for x in bits(xm):
        miss = xm & ~g.masks[x] & ~(1 << x)
        if miss:
            y = (miss & -miss).bit_length() - 1
            return (min(x, y), max(x, y))
    return None


def check_unconditional(g: Graph, part: NSPartition) -> AuditReport:
    rep = AuditReport("unconditional")

    singles = [s for s in ALL_S if len(s) == 1 and part.ns[s]]
    if singles:
        s = singles[0]
        v = (part.ns[s] & -part.ns[s]).bit_length() - 1
        rep.record("u1", False, (v,), f"{s_label(s)} is not empty")
    else:
        rep.record("u1", True)

    bad = None
    for kind, x, y in forced_relations():
        xm, ym = part.ns[x], part.ns[y]
        w = _first_edge_between(g, xm, ym) if kind == "anti" else _first_nonedge_between(g, xm, ym)
        if w is not None:
            word = "anticomplete" if kind == "anti" else "complete"
            bad = (w, f"{s_label(x)} not {word} to {s_label(y)}")
            break
    rep.record("u2", bad is None, bad[0] if bad else None, bad[1] if bad else "")

    bad = None
    for s in (S(1, 2), S(3, 4)):
        w = _first_nonedge_within(g, part.ns[s])
        if w is not None:
            bad = (w, f"{s_label(s)} is not a clique")
            break
    rep.record("u3", bad is None, bad[0] if bad else None, bad[1] if bad else "")

    w = _first_edge_between(g, part.a_mask, part.mask(1, 2) | part.mask(3, 4))
    rep.record("u4", w is None, w, "A not anticomplete to N12 ∪ N34" if w else "")

    w = _first_nonedge_between(g, part.b_mask, part.mask(1, 2, 3, 4))
    rep.record("u5", w is None, w, "B not complete to N1234" if w else "")
    return rep


def unconditional_witness_violates(g: Graph, part: NSPartition, rec: PredicateRecord) -> bool:
    """Recheck a failed unconditional record's witness from scratch."""
    w = rec.witness
    if w is None:
        return False

    def where(v: int):
        for s, m in part.ns.items():
            if (m >> v) & 1:
                return s
        return "A" if (part.a_mask >> v) & 1 else None

    pid = rec.predicate_id
    if pid == "u1":
        s = where(w[0])
        return isinstance(s, frozenset) and len(s) == 1
    x, y = w
    sx, sy = where(x), where(y)
    if pid == "u2":
        for kind, a, b in forced_relations():
            if (sx, sy) == (a, b):
                if kind == "anti" and g.has_edge(x, y):
                    return True
                if kind == "complete" and not g.has_edge(x, y):
                    return True
        return False
    if pid == "u3":
        return sx == sy and sx in (S(1, 2), S(3, 4)) and not g.has_edge(x, y)
    if pid == "u4":
        return sx == "A" and sy in (S(1, 2), S(3, 4)) and g.has_edge(x, y)
    if pid == "u5":
        return (part.b_mask >> x) & 1 == 1 and sy == S(1, 2, 3, 4) and not g.has_edge(x, y)
    raise KeyError(pid)


# -- good subgraphs --------------------------------------------------------------


@dataclass(frozen=True)
class GoodSubgraphVerdict:
    good: bool
    h: tuple[int, ...]
    i_set: tuple[int, ...]
    r_set: tuple[int, ...]
    t_set: tuple[int, ...]
    omega_h: int
    chi_h: int
    chi_i: int | None
    chi_t: int | None
    colorings: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "good": self.good,
            "H": list(self.h),
            "I": list(self.i_set),
            "R": list(self.r_set),
            "T": list(self.t_set),
            "omega_H": self.omega_h,
            "chi_H": self.chi_h,
            "chi_I": self.chi_i,
            "chi_T": self.chi_t,
        }


def split_around(g: Graph, hm: int) -> tuple[int, int, int]:
    """(I, R, T) masks: anticomplete to H, complete to H, the rest."""
    i_mask = r_mask = 0
    for v in bits(g.all_mask & ~hm):
        seen = g.masks[v] & hm
        if not seen:
            i_mask |= 1 << v
        elif seen == hm:
            r_mask |= 1 << v
    t_mask = g.all_mask & ~hm & ~i_mask & ~r_mask
    return i_mask, r_mask, t_mask


def _chi(g: Graph, mask: int, budget: SolveBudget):
    order = list(bits(mask))
    res = chromatic_number(induced_subgraph(g, order), budget)
    return res.value, {v: res.coloring.assignment[i] for i, v in enumerate(order)}


def good_subgraph_check(
    g: Graph, h: Iterable[int] | int, budget: SolveBudget | None = None, evidence: bool = True
) -> GoodSubgraphVerdict:
    """Test whether ``g[h]`` is a good subgraph.

    With ``evidence=False`` the computation stops at the first failed
    condition and the remaining chromatic numbers are left as ``None``.
    """
    budget = budget if budget is not None else default_budget()
    hm = h if isinstance(h, int) else to_mask(h)
    if not hm:
        raise ValueError("h must be non-empty")
    i_mask, r_mask, t_mask = split_around(g, hm)
    omega_h = max_clique_mask(g.masks, hm, budget).bit_count()
    chi_h, col_h = _chi(g, hm, budget)
    good = chi_h <= omega_h
    chi_i = chi_t = None
    col_i = col_t = None
    if good or evidence:
        chi_i, col_i = _chi(g, i_mask, budget)
        good = good and chi_i <= chi_h
    if good or evidence:
        chi_t, col_t = _chi(g, t_mask, budget)
        good = good and chi_t <= chi_h
    return GoodSubgraphVerdict(
        good,
        tuple(bits(hm)),
        tuple(bits(i_mask)),
        tuple(bits(r_mask)),
        tuple(bits(t_mask)),
        omega_h,
        chi_h,
        chi_i,
        chi_t,
        {"H": col_h, "I": col_i, "T": col_t},
    )


def candidate_pool(g: Graph, part: NSPartition | None, budget: SolveBudget, clique_cap: int = POOL_CLIQUE_CAP) -> list[int]:
    """Vertex sets tried as good subgraphs, as masks, without repeats.

    Order: single vertices, edges, nonempty N_S sets, maximal cliques.
    """
    pool: list[int] = []
    seen: set[int] = set()

    def add(m: int) -> None:
        if m and m not in seen:
            seen.add(m)
            pool.append(m)

    for v in range(g.n):
        add(1 << v)
    for u, v in g.edges():
        add((1 << u) | (1 << v))
    if part is not None:
        for s in ALL_S:
            add(part.ns[s])
    for c in maximal_cliques(g.masks, g.all_mask, budget, limit=clique_cap):
        add(c)
    return pool


# -- counterexample-only predicates ----------------------------------------------


def dominated_pair(g: Graph):
    """First non-adjacent ``(u, v)`` with ``N(u) ⊆ N(v)``, or ``None``."""
    for u in range(g.n):
        for v in range(g.n):
            if u != v and not g.has_edge(u, v) and g.masks[u] & ~g.masks[v] == 0:
                return (u, v)
    return None


def _induced_p3(g: Graph, mask: int):
    for mid in bits(mask):
        nb = g.masks[mid] & mask
        for a in bits(nb):
            far = nb & ~g.masks[a] & ~(1 << a)
            far &= ~((1 << (a + 1)) - 1)  # report each P3 once, ends ascending
            if far:
                b = (far & -far).bit_length() - 1
                return (a, mid, b)
    return None


def counterexample_audit(g: Graph, anchor: Anchor2K2, budget: SolveBudget | None = None) -> AuditReport:
    """Evaluate the predicates a minimal counterexample would satisfy.

    Raises ``ValueError`` for graphs outside the (P3∪P2, house)-free class.
    A failed ``c2`` is definitive; a holding ``c2`` only means no good
    subgraph was found in the candidate pool.
    """
    budget = budget if budget is not None else default_budget()
    verdict = is_free(g, P3UP2_HOUSE.family)
    if not verdict.free:
        raise ValueError(f"graph induces {verdict.certificate.pattern.name}; audit needs a class member")
    part = partition_by_anchor(g, anchor)
    rep = AuditReport("counterexample-only")

    w = dominated_pair(g)
    rep.record("c1", w is None, w, "N(u) ⊆ N(v) for non-adjacent u, v" if w else "")

    try:
        found = None
        for hm in candidate_pool(g, part, budget):
            if good_subgraph_check(g, hm, budget, evidence=False).good:
                found = hm
                break
        rep.record("c2", found is None, tuple(bits(found)) if found else None, "good subgraph in pool" if found else "")
    except BudgetExceeded:
        rep.record("c2", None, None, "budget exceeded")

    bad = None
    for s in ALL_S:
        if len(s) in (2, 3):
            w = _induced_p3(g, part.ns[s])
            if w:
                bad = (w, f"{s_label(s)} induces P3")
                break
    rep.record("c3", bad is None, bad[0] if bad else None, bad[1] if bad else "")

    bm = part.b_mask
    try:
        if part.a_mask:
            chi_b, _ = _chi(g, bm, budget)
            rep.evidence["chi_B"] = chi_b
            rep.record("c4", chi_b <= 3, tuple(bits(bm)) if chi_b > 3 else None, f"A nonempty, χ(B)={chi_b}")
        elif bm.bit_count() <= PERFECTION_CAP:
            order = list(bits(bm))
            pv = is_perfect_small(induced_subgraph(g, order))
            wit = tuple(order[i] for i in pv.witness) if pv.witness else None
            rep.record("c4", pv.perfect, wit, "A empty, G[B] perfect" if pv.perfect else f"A empty, odd {pv.kind} in G[B]")
        else:
            rep.record("c4", None, None, "A empty and |B| over the perfection cap")
    except BudgetExceeded:
        rep.record("c4", None, None, "budget exceeded")

    w = _first_nonedge_within(g, part.mask(1, 2, 3, 4))
    rep.record("c5", w is None, w, "N1234 not a clique" if w else "")

    try:
        full = part.mask(1, 2, 3, 4)
        rep.evidence["omega0"] = max_clique_mask(g.masks, full, budget).bit_count()
        c_mask = full & ~part._d_mask(g)
        rep.evidence["omega1"] = max_clique_mask(g.masks, c_mask, budget).bit_count()
    except BudgetExceeded:
        pass
    return rep


def counterexample_witness_violates(g: Graph, part: NSPartition, rec: PredicateRecord, budget: SolveBudget | None = None) -> bool:
    w = rec.witness
    if w is None:
        return False
    pid = rec.predicate_id
    if pid == "c1":
        u, v = w
        return u != v and not g.has_edge(u, v) and g.masks[u] & ~g.masks[v] == 0
    if pid == "c2":
        return good_subgraph_check(g, w, budget).good
    if pid == "c3":
        a, mid, b = w
        same = [s for s, m in part.ns.items() if all((m >> x) & 1 for x in w)]
        return bool(same) and len(same[0]) in (2, 3) and g.has_edge(a, mid) and g.has_edge(mid, b) and not g.has_edge(a, b)
    if pid == "c4":
        if part.a_mask:
            return _chi(g, to_mask(w), budget or default_budget())[0] > 3
        sub = induced_subgraph(g, w)
        return not is_perfect_small(sub).perfect
    if pid == "c5":
        x, y = w
        full = part.mask(1, 2, 3, 4)
        return (full >> x) & 1 == 1 and (full >> y) & 1 == 1 and not g.has_edge(x, y)
    raise KeyError(pid)


def audit_anchors(g: Graph, cap: int = DEFAULT_ANCHOR_CAP) -> tuple[int, list[tuple[Anchor2K2, AuditReport]]]:
    """Run the unconditional checks on up to ``cap`` anchors; returns (anchor count, reports)."""
    anchors = find_all_2k2(g, cap=cap)
    return len(anchors), [(a, check_unconditional(g, partition_by_anchor(g, a))) for a in anchors]
