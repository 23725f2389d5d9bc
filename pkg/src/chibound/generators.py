"""Named graphs, the extremal families, and seeded random class members."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from chibound.graph import (
    Graph,
    blowup,
    complement,
    disjoint_union,
    expansion,
    induced_subgraph,
    join,
    mycielski,
)
from chibound.patterns import PatternSpec, is_free, pattern


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)], name=f"P{k}")


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)], name=f"C{k}")


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, combinations(range(k), 2), name=f"K{k}")


def empty_graph(k: int) -> Graph:
    return Graph.empty(k).with_name(f"E{k}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}")


def grotzsch() -> Graph:
    return mycielski(cycle_graph(5)).with_name("grotzsch")


def schlafli_complement() -> Graph:
    """Intersection graph of the 27 lines on a cubic surface.

    Vertex order: ``a1..a6`` (0-5), ``b1..b6`` (6-11), then ``c_ij`` for
    ``i < j`` in lexicographic order (12-26).
    """
    a = list(range(6))
    b = list(range(6, 12))
    pairs = list(combinations(range(6), 2))
    c = {p: 12 + idx for idx, p in enumerate(pairs)}
    edges = []
    for i in range(6):
        for j in range(6):
            if i != j:
                if i < j:
                    edges.append((a[i], b[j]))
                    edges.append((a[j], b[i]))
    for (j, k), v in c.items():
        edges.extend([(a[j], v), (a[k], v), (b[j], v), (b[k], v)])
    for p, q in combinations(pairs, 2):
        if not set(p) & set(q):
            edges.append((c[p], c[q]))
    return Graph.from_edges(27, edges, name="schlafli_complement")


_FIXED = {
    "2k2": lambda: disjoint_union(complete_graph(2), complete_graph(2)),
    "p3up2": lambda: disjoint_union(path_graph(3), path_graph(2)),
    "diamond": lambda: join(complete_graph(1), path_graph(3)),
    "w4": lambda: join(complete_graph(1), cycle_graph(4)),
    "house": lambda: complement(path_graph(5)),
    "crown": lambda: join(complete_graph(1), complete_bipartite(1, 3)),
    "hvn": lambda: Graph.from_edges(5, list(combinations(range(4), 2)) + [(4, 0), (4, 1)]),
    "grotzsch": grotzsch,
    "schlafli_complement": schlafli_complement,
}

_PARAMETRIC = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "empty": empty_graph,
}

NAMED_GRAPHS = tuple(_PARAMETRIC) + tuple(_FIXED)


def named_graph(name: str, *params: int) -> Graph:
    key = name.strip().lower()
    if key in _PARAMETRIC:
        if len(params) != 1 or params[0] < 0:
            raise ValueError(f"{key} takes one non-negative size parameter")
        return _PARAMETRIC[key](params[0])
    if key in _FIXED:
        if params:
            raise ValueError(f"{key} takes no parameters")
        return _FIXED[key]().with_name(key)
    raise ValueError(f"unknown graph name {name!r}")


def tightness_family(k: int, variant: str = "even") -> Graph:
    """Graphs meeting ``χ = 2ω`` exactly.

    ``even``: ``K_k(Grötzsch)`` with ω=2k, χ=4k.
    ``odd``: ``K_{k-1}(Grötzsch) + Schläfli complement`` with ω=2k+1, χ=4k+2.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if variant == "even":
        return blowup(k, grotzsch()).with_name(f"K{k}(grotzsch)")
    if variant == "odd":
        if k == 1:
            return schlafli_complement()
        g = join(blowup(k - 1, grotzsch()), schlafli_complement())
        return g.with_name(f"K{k - 1}(grotzsch)+schlafli_complement")
    raise ValueError("variant must be 'even' or 'odd'")


@dataclass(frozen=True)
class ClassSpec:
    """A hereditary class given by its forbidden induced subgraphs."""

    forbidden: tuple[str, ...]

    def __post_init__(self):
        for name in self.forbidden:
            pattern(name)  # raises on unknown names

    @classmethod
    def parse(cls, text: str) -> ClassSpec:
        names = tuple(s for s in text.replace(",", " ").split() if s)
        return cls(names)

    @property
    def family(self) -> list[PatternSpec]:
        return [pattern(n) for n in self.forbidden]

    def contains(self, g: Graph) -> bool:
        return is_free(g, self.family).free

    def __str__(self) -> str:
        return ",".join(self.forbidden)


P3UP2_HOUSE = ClassSpec(("p3up2", "house"))
P5_HOUSE = ClassSpec(("p5", "house"))


def repair(g: Graph, cls: ClassSpec) -> Graph:
    """Delete vertices until ``g`` is in ``cls``.

    Each round removes the highest-indexed vertex of the first certificate.
    """
    family = cls.family
    keep = list(range(g.n))
    current = g
    while True:
        verdict = is_free(current, family)
        if verdict.free:
            return current
        drop = max(verdict.certificate.mapping)
        del keep[drop]
        current = induced_subgraph(g, keep)


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_class_member(n: int, p: float, seed: int, cls: ClassSpec) -> Graph:
    """Seeded ``G(n, p)`` sample repaired into ``cls`` by vertex deletion.

    Not a uniform sample of the class.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(f"{seed}:{n}:{p!r}:{cls}")
    return repair(gnp(n, p, rng), cls)


def planted_class_member(n: int, p: float, seed: int, cls: ClassSpec, max_clique: int = 3) -> Graph:
    """Class member with larger cliques: blow vertices of a small member up into cliques.

    A small member is drawn, each vertex is replaced by a clique of random
    size ``1..max_clique`` (joined along the original edges), and the result
    is repaired back into the class.  The total is capped near ``n`` vertices.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(f"planted:{seed}:{n}:{p!r}:{cls}:{max_clique}")
    base_n = max(1, n // 2)
    base = repair(gnp(base_n, p, rng), cls)
    sizes = []
    budget = n
    for _ in range(base.n):
        s = min(rng.randint(1, max_clique), max(1, budget - (base.n - len(sizes) - 1)))
        sizes.append(s)
        budget -= s
    g = expansion(base, [complete_graph(s) for s in sizes])
    return repair(g, cls)


def class_corpus(
    samples: int,
    n_min: int,
    n_max: int,
    density: tuple[float, float],
    seed: int,
    cls: ClassSpec,
    planted_every: int = 4,
) -> list[Graph]:
    """Reproducible list of class members; every ``planted_every``-th one is planted."""
    rng = random.Random(seed)
    out = []
    for i in range(samples):
        n = rng.randint(n_min, n_max)
        p = round(rng.uniform(*density), 4)
        sub_seed = rng.randrange(2**32)
        if planted_every and i % planted_every == planted_every - 1:
            g = planted_class_member(n, p, sub_seed, cls)
        else:
            g = random_class_member(n, p, sub_seed, cls)
        out.append(g.with_name(f"{cls}#{i}"))
    return out


def random_graph(n: int, p: float, seed: int) -> Graph:
    return gnp(n, p, random.Random(f"gnp:{seed}:{n}:{p!r}"))


def random_graphs(count: int, n_min: int, n_max: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(n_min, n_max)
        p = rng.random()
        out.append(gnp(n, p, rng).with_name(f"gnp#{i}"))
    return out


__all__: Sequence[str] = (
    "ClassSpec",
    "NAMED_GRAPHS",
    "P3UP2_HOUSE",
    "P5_HOUSE",
    "class_corpus",
    "complete_bipartite",
    "complete_graph",
    "cycle_graph",
    "empty_graph",
    "grotzsch",
    "named_graph",
    "path_graph",
    "planted_class_member",
    "random_class_member",
    "random_graph",
    "random_graphs",
    "repair",
    "schlafli_complement",
    "tightness_family",
)
