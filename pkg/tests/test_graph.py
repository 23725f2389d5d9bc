import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chibound.generators import complete_graph, cycle_graph, grotzsch, named_graph, path_graph
from chibound.graph import (
    Graph,
    complement,
    disjoint_union,
    expansion,
    induced_subgraph,
    join,
    mycielski,
    neighborhood,
    non_neighborhood,
)
from chibound.invariants import chromatic_number, clique_number

from conftest import graphs
from oracles import isomorphic, naive_chromatic_number, naive_clique_number, partition_chromatic_number


def assert_structural(g: Graph):
    for v in range(g.n):
        assert v not in g.adj[v]
        for u in g.adj[v]:
            assert 0 <= u < g.n
            assert v in g.adj[u]


def test_graph_rejects_bad_rows():
    with pytest.raises(ValueError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(ValueError):
        Graph(1, (frozenset({0}),))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_vertex_cap(monkeypatch):
    import chibound.graph as gm

    monkeypatch.setattr(gm, "VERTEX_CAP", 4)
    with pytest.raises(ValueError):
        Graph.empty(5)


def test_complement_of_p5_is_house():
    h = complement(path_graph(5))
    assert (h.n, h.m) == (5, 6)
    assert h == named_graph("house")


def test_complement_of_triangle_is_edgeless():
    c = complement(complete_graph(3))
    assert c.n == 3 and c.m == 0


@given(graphs(max_n=10))
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert_structural(complement(g))


def test_union_examples():
    two = disjoint_union(complete_graph(2), complete_graph(2))
    assert (two.n, two.edges()) == (4, [(0, 1), (2, 3)])
    p = disjoint_union(path_graph(3), path_graph(2))
    assert (p.n, p.m) == (5, 3)
    g = cycle_graph(5)
    assert disjoint_union(g, Graph.empty(0)) == g


def test_join_examples():
    assert join(complete_graph(1), path_graph(3)) == named_graph("diamond")
    w4 = join(complete_graph(1), cycle_graph(4))
    assert w4 == named_graph("w4") and w4.m == 8
    assert join(complete_graph(2), complete_graph(3)) == complete_graph(5)


def test_expansion_examples():
    assert expansion(complete_graph(2), [complete_graph(1)] * 2) == complete_graph(2)
    big = expansion(complete_graph(2), [grotzsch(), grotzsch()])
    assert big.n == 22
    assert big.m == 2 * 20 + 11 * 11
    for k in (1, 2, 3):
        g = expansion(complete_graph(k), [grotzsch()] * k)
        assert clique_number(g).value == 2 * k


def test_expansion_arity():
    with pytest.raises(ValueError):
        expansion(complete_graph(3), [complete_graph(1)] * 2)


def test_expansion_follows_host_adjacency():
    # P3 host: blocks 0 and 2 are not joined
    g = expansion(path_graph(3), [complete_graph(2), complete_graph(1), complete_graph(2)])
    assert g.has_edge(0, 2) and g.has_edge(3, 2)
    assert not g.has_edge(0, 3)


def test_mycielski_of_k2_is_c5():
    g = mycielski(complete_graph(2))
    assert (g.n, g.m) == (5, 5)
    assert all(g.degree(v) == 2 for v in range(5))
    assert isomorphic(g, cycle_graph(5))


GROTZSCH_EDGES = [
    # outer 5-cycle
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    # each spoke vertex 5+i sees the two cycle neighbours of i
    (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
    # hub
    (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
]


def test_mycielski_of_c5_is_grotzsch():
    g = mycielski(cycle_graph(5))
    assert (g.n, g.m) == (11, 20)
    assert clique_number(g).value == 2
    assert isomorphic(g, Graph.from_edges(11, GROTZSCH_EDGES))


def test_isomorphism_helper_rejects():
    assert not isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)))


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_mycielski_raises_chi(g):
    assert naive_chromatic_number(mycielski(g)) == naive_chromatic_number(g) + 1


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_mycielski_clique(g):
    if g.m == 0:
        return
    assert naive_clique_number(mycielski(g)) == max(2, naive_clique_number(g))


def test_induced_subgraph_examples():
    house = named_graph("house")
    tri = [v for v in range(5) if house.degree(v) == 3]
    # the triangle is the two degree-3 vertices plus the roof
    roof = [v for v in range(5) if all(house.has_edge(v, t) for t in tri)]
    triangle = set(tri + roof)
    assert len(triangle) == 3
    from itertools import combinations

    for four in combinations(range(5), 4):
        if triangle <= set(four):
            assert clique_number(induced_subgraph(house, four)).value >= 3
    g = cycle_graph(6)
    assert induced_subgraph(g, range(6)) == g
    assert induced_subgraph(g, []).n == 0
    with pytest.raises(ValueError):
        induced_subgraph(g, [7])


def test_induced_subgraph_relabels_in_sorted_order():
    g = path_graph(5)
    sub = induced_subgraph(g, [4, 3, 1])
    assert sub.edges() == [(1, 2)]


def test_neighborhood_examples():
    p5 = path_graph(5)
    assert neighborhood(p5, {0}) == {1}
    k4 = complete_graph(4)
    assert neighborhood(k4, {2}) == {0, 1, 3}
    assert neighborhood(p5, {0, 1, 3, 4}) == {2}
    assert non_neighborhood(p5, {0, 1, 3, 4}) == set()
    assert neighborhood(p5, {0}, closed=True) == {0, 1}


def test_degree_accessors():
    g = named_graph("hvn")
    assert g.max_degree() == 4 and g.min_degree() == 2


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5), graphs(max_n=5))
def test_join_adds_chi_and_omega(g, h):
    j = join(g, h)
    assert_structural(j)
    assert naive_chromatic_number(j) == naive_chromatic_number(g) + naive_chromatic_number(h)
    assert naive_clique_number(j) == naive_clique_number(g) + naive_clique_number(h)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_union_takes_max(g, h):
    u = disjoint_union(g, h)
    assert_structural(u)
    assert naive_chromatic_number(u) == max(naive_chromatic_number(g), naive_chromatic_number(h))
    assert naive_clique_number(u) == max(naive_clique_number(g), naive_clique_number(h))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.lists(graphs(min_n=1, max_n=4), min_size=k, max_size=k)))
def test_expansion_of_complete_sums_cliques(parts):
    g = expansion(complete_graph(len(parts)), parts)
    assert_structural(g)
    assert clique_number(g).value == sum(naive_clique_number(p) for p in parts)


def test_union_block_order_is_fixed():
    u = disjoint_union(path_graph(2), path_graph(3))
    assert u.edges() == [(0, 1), (2, 3), (3, 4)]
    j = join(complete_graph(1), Graph.empty(2))
    assert j.edges() == [(0, 1), (0, 2)]


def test_chromatic_agrees_on_constructed(small_random):
    for g in small_random[:30]:
        assert chromatic_number(g).value == naive_chromatic_number(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_oracles_agree(g):
    assert naive_chromatic_number(g) == partition_chromatic_number(g)
