"""Immutable simple graphs and the standard combinators.

Vertices are the integers ``0..n-1``.  Adjacency is kept twice: as a tuple of
frozensets (convenient for reading) and as a tuple of int bitmasks (what the
solvers actually iterate over).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator, Sequence

#: Largest vertex count accepted by :class:`Graph`.
VERTEX_CAP = 512


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]
    name: str | None = field(default=None, compare=False)
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.n > VERTEX_CAP:
            raise ValueError(f"graph has {self.n} vertices, cap is {VERTEX_CAP}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        adj = tuple(frozenset(row) for row in self.adj)
        for v, row in enumerate(adj):
            for u in row:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if v not in adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "masks", tuple(to_mask(row) for row in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> Graph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(frozenset(r) for r in rows), name)

    @classmethod
    def from_masks(cls, masks: Sequence[int], name: str | None = None) -> Graph:
        return cls(len(masks), tuple(frozenset(bits(m)) for m in masks), name)

    @classmethod
    def empty(cls, n: int = 0) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    # -- accessors ---------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(r) for r in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return self.m / (self.n * (self.n - 1) / 2)

    def with_name(self, name: str | None) -> Graph:
        return Graph(self.n, self.adj, name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph.from_masks([full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` on ``0..n_g-1`` followed by ``h`` shifted by ``n_g``; no cross edges."""
    off = g.n
    masks = list(g.masks) + [m << off for m in h.masks]
    return Graph.from_masks(masks)


def disjoint_copies(g: Graph, k: int) -> Graph:
    return reduce(disjoint_union, [g] * k, Graph.empty(0))


def join(g: Graph, h: Graph) -> Graph:
    off = g.n
    h_block = ((1 << h.n) - 1) << off
    masks = [m | h_block for m in g.masks] + [(m << off) | g.all_mask for m in h.masks]
    return Graph.from_masks(masks)


def expansion(g: Graph, parts: Sequence[Graph]) -> Graph:
    """Replace vertex ``i`` of ``g`` by ``parts[i]``.

    Blocks are laid out in input order.  Two blocks are completely joined
    exactly when the corresponding vertices of ``g`` are adjacent.
    """
    if len(parts) != g.n:
        raise ValueError(f"expansion needs {g.n} parts, got {len(parts)}")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    blocks = [((1 << p.n) - 1) << off for p, off in zip(parts, offsets)]
    masks: list[int] = []
    for i, (p, off) in enumerate(zip(parts, offsets)):
        outside = 0
        for j in bits(g.masks[i]):
            outside |= blocks[j]
        masks.extend((m << off) | outside for m in p.masks)
    return Graph.from_masks(masks)


def blowup(k: int, h: Graph) -> Graph:
    """``K_k(h)``: the expansion of ``K_k`` with every part a copy of ``h``."""
    kk = Graph.from_edges(k, combinations(range(k), 2))
    return expansion(kk, [h] * k)


def mycielski(g: Graph) -> Graph:
    """Mycielskian of ``g``.

    Layout: originals ``0..n-1``, shadows ``n..2n-1`` (shadow ``n+i`` sees
    ``N(i)``), apex ``2n`` adjacent to every shadow.
    """
    n = g.n
    edges = list(g.edges())
    for i in range(n):
        edges.extend((n + i, u) for u in g.adj[i])
        edges.append((n + i, 2 * n))
    return Graph.from_edges(2 * n + 1, edges)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """``g[s]`` relabelled ``0..|s|-1`` following the sorted order of ``s``."""
    order = sorted(set(s))
    for v in order:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(order)}
    rows = [frozenset(index[u] for u in g.adj[v] if u in index) for v in order]
    return Graph(len(order), tuple(rows))


def neighborhood(g: Graph, x: Iterable[int], closed: bool = False) -> set[int]:
    xm = to_mask(x)
    if xm >> g.n:
        raise ValueError("vertex set out of range")
    nb = 0
    for v in bits(xm):
        nb |= g.masks[v]
    nb &= ~xm
    if closed:
        nb |= xm
    return set(bits(nb))


def non_neighborhood(g: Graph, x: Iterable[int]) -> set[int]:
    """``M(X)``: vertices neither in ``x`` nor adjacent to it."""
    x = set(x)
    return set(g.vertices()) - neighborhood(g, x, closed=True)


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    rest = g.all_mask if within is None else within
    out = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = g.masks[v] & rest & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        rest &= ~comp
    return out


def co_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of the complement of ``g[within]``: the join factors."""
    rest = g.all_mask if within is None else within
    out = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = rest & ~g.masks[v] & ~comp & ~(1 << v)
            comp |= new
            frontier |= new
        out.append(comp)
        rest &= ~comp
    return out


def is_clique(g: Graph, vertices: int) -> bool:
    for v in bits(vertices):
        if (vertices & ~(1 << v)) & ~g.masks[v]:
            return False
    return True


def is_independent(g: Graph, vertices: int) -> bool:
    for v in bits(vertices):
        if g.masks[v] & vertices:
            return False
    return True
