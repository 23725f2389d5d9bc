"""Induced-subgraph detection with embedding certificates.

The matcher is a plain backtracking search.  Pattern vertices are visited in
degree-descending order (ties by index) and host candidates are tried in
increasing index, so the first embedding found is the lexicographically
smallest host tuple read in that visiting order.  Results are therefore the
same on every run and platform.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from chibound.graph import Graph, bits, complement, join, disjoint_union


@dataclass(frozen=True)
class PatternSpec:
    name: str
    graph: Graph


@dataclass(frozen=True)
class Embedding:
    """Witness that ``pattern`` occurs induced in some host.

    ``mapping[i]`` is the host vertex playing pattern vertex ``i``.
    """

    pattern: PatternSpec
    mapping: tuple[int, ...]

    @property
    def host_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.mapping))

    def is_valid_in(self, host: Graph) -> bool:
        p = self.pattern.graph
        if len(set(self.mapping)) != p.n or len(self.mapping) != p.n:
            return False
        if any(not 0 <= v < host.n for v in self.mapping):
            return False
        for a, b in combinations(range(p.n), 2):
            if p.has_edge(a, b) != host.has_edge(self.mapping[a], self.mapping[b]):
                return False
        return True


@dataclass(frozen=True)
class FreeVerdict:
    free: bool
    certificate: Embedding | None = None

    def __bool__(self) -> bool:
        return self.free


@dataclass(frozen=True)
class Anchor2K2:
    """Induced 2K2 with edges ``v1v2`` and ``v3v4``."""

    v1: int
    v2: int
    v3: int
    v4: int

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.v1, self.v2, self.v3, self.v4)

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != 4 or any(not 0 <= v < g.n for v in vs):
            return False
        if not (g.has_edge(self.v1, self.v2) and g.has_edge(self.v3, self.v4)):
            return False
        return not any(g.has_edge(a, b) for a in vs[:2] for b in vs[2:])


# -- catalog -----------------------------------------------------------------


def _path(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def _cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def _complete(k: int) -> Graph:
    return Graph.from_edges(k, combinations(range(k), 2))


def _star(k: int) -> Graph:
    """``K_{1,k}`` with the centre at vertex 0."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def _hvn() -> Graph:
    return Graph.from_edges(5, list(combinations(range(4), 2)) + [(4, 0), (4, 1)])


_FIXED = {
    "2k2": lambda: disjoint_union(_complete(2), _complete(2)),
    "p3up2": lambda: disjoint_union(_path(3), _path(2)),
    "diamond": lambda: join(_complete(1), _path(3)),
    "w4": lambda: join(_complete(1), _cycle(4)),
    "house": lambda: complement(_path(5)),
    "crown": lambda: join(_complete(1), _star(3)),
    "hvn": _hvn,
    "claw": lambda: _star(3),
}

_PARAM = {"p": _path, "c": _cycle, "k": _complete}

#: Names accepted by :func:`pattern`; ``p<k>``, ``c<k>`` and ``k<k>`` are
#: parametrised.
CATALOG_NAMES = tuple(_FIXED) + ("p<k>", "c<k>", "k<k>")

_cache: dict[str, PatternSpec] = {}


def pattern(name: str) -> PatternSpec:
    key = name.strip().lower()
    if key in _cache:
        return _cache[key]
    if key in _FIXED:
        g = _FIXED[key]()
    else:
        mt = re.fullmatch(r"([pck])(\d+)", key)
        if not mt:
            raise KeyError(f"unknown pattern {name!r}")
        k = int(mt.group(2))
        if k < 1 or k > 8:
            raise KeyError(f"pattern size out of range in {name!r}")
        g = _PARAM[mt.group(1)](k)
    spec = PatternSpec(key, g.with_name(key))
    _cache[key] = spec
    return spec


def patterns(names: Iterable[str]) -> list[PatternSpec]:
    return [pattern(n) for n in names]


# -- matching ----------------------------------------------------------------


def _search_order(p: Graph) -> list[int]:
    return sorted(range(p.n), key=lambda v: (-p.degree(v), v))


def _embeddings(host: Graph, p: Graph):
    """Yield induced embeddings of ``p`` into ``host`` in canonical order."""
    order = _search_order(p)
    k = p.n
    if k > host.n:
        return
    full = host.all_mask
    pdeg = [p.degree(v) for v in range(k)]
    hdeg = [host.degree(v) for v in range(host.n)]
    # which earlier (in search order) pattern vertices each vertex must see / avoid
    earlier_adj: list[list[tuple[int, bool]]] = []
    for i, a in enumerate(order):
        earlier_adj.append([(j, p.has_edge(a, order[j])) for j in range(i)])
    placed = [0] * k

    def rec(i: int, used: int):
        if i == k:
            mapping = [0] * k
            for j, a in enumerate(order):
                mapping[a] = placed[j]
            yield tuple(mapping)
            return
        cand = full & ~used
        for j, adjacent in earlier_adj[i]:
            hm = host.masks[placed[j]]
            cand &= hm if adjacent else ~hm
            if not cand:
                return
        need = pdeg[order[i]]
        for v in bits(cand):
            if hdeg[v] < need:
                continue
            placed[i] = v
            yield from rec(i + 1, used | (1 << v))

    yield from rec(0, 0)


def find_induced(host: Graph, pat: PatternSpec) -> Embedding | None:
    if pat.graph.n < 1:
        raise ValueError("pattern must have at least one vertex")
    for mapping in _embeddings(host, pat.graph):
        return Embedding(pat, mapping)
    return None


def is_free(host: Graph, family: Sequence[PatternSpec]) -> FreeVerdict:
    for pat in family:
        emb = find_induced(host, pat)
        if emb is not None:
            return FreeVerdict(False, emb)
    return FreeVerdict(True)


def class_pattern_names(spec: str | Sequence[str]) -> list[str]:
    if isinstance(spec, str):
        return [s for s in re.split(r"[,\s]+", spec) if s]
    return list(spec)


def find_all_2k2(host: Graph, cap: int = 10**9):
    """Induced ``2K2`` anchors, lexicographic in (first edge, second edge).

    Each unordered pair of edges appears once; the lexicographically smaller
    edge is ``(v1, v2)``.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    out = []
    edges = host.edges()
    for a in range(len(edges)):
        u1, u2 = edges[a]
        around = host.masks[u1] | host.masks[u2] | (1 << u1) | (1 << u2)
        for b in range(a + 1, len(edges)):
            w1, w2 = edges[b]
            if (around >> w1) & 1 or (around >> w2) & 1:
                continue
            out.append(Anchor2K2(u1, u2, w1, w2))
            if len(out) >= cap:
                return out
    return out


def has_2k2(host: Graph) -> bool:
    return bool(find_all_2k2(host, cap=1))
