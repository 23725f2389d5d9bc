from itertools import combinations

import pytest

from chibound.generators import (
    NAMED_GRAPHS,
    P3UP2_HOUSE,
    P5_HOUSE,
    ClassSpec,
    class_corpus,
    grotzsch,
    named_graph,
    planted_class_member,
    random_class_member,
    random_graph,
    repair,
    schlafli_complement,
    tightness_family,
)
from chibound.graph import Graph, blowup
from chibound.invariants import chromatic_number, clique_number
from chibound.patterns import find_induced, is_free, pattern

from test_graph import assert_structural


def test_named_graph_catalog():
    assert named_graph("path", 4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert named_graph("cycle", 5).m == 5
    assert named_graph("complete", 4).m == 6
    assert named_graph("empty", 3).m == 0
    for name in NAMED_GRAPHS:
        if name in ("path", "cycle", "complete", "empty"):
            assert_structural(named_graph(name, 5))
        else:
            assert_structural(named_graph(name))


def test_named_graph_errors():
    with pytest.raises(ValueError):
        named_graph("petersen")
    with pytest.raises(ValueError):
        named_graph("path")
    with pytest.raises(ValueError):
        named_graph("house", 3)
    with pytest.raises(ValueError):
        named_graph("cycle", 2)


def test_hvn():
    g = named_graph("hvn")
    assert (g.n, g.m) == (5, 8)
    assert clique_number(g).value == 4


def test_crown():
    g = named_graph("crown")
    assert g.n == 5
    assert g.max_degree() == 4
    assert sorted(g.degree(v) for v in range(5)) == [2, 2, 2, 4, 4]


def test_schlafli_complement_is_strongly_regular():
    g = named_graph("schlafli_complement")
    assert (g.n, g.m) == (27, 135)
    assert all(g.degree(v) == 10 for v in range(27))
    for u, v in combinations(range(27), 2):
        common = len(g.adj[u] & g.adj[v])
        assert common == (1 if g.has_edge(u, v) else 5)


def test_schlafli_model_rules():
    g = schlafli_complement()
    pairs = list(combinations(range(6), 2))
    c = {p: 12 + i for i, p in enumerate(pairs)}
    for i in range(6):
        for j in range(6):
            assert g.has_edge(i, 6 + j) == (i != j)
        for p, v in c.items():
            assert g.has_edge(i, v) == (i in p)
            assert g.has_edge(6 + i, v) == (i in p)
    for p, q in combinations(pairs, 2):
        assert g.has_edge(c[p], c[q]) == (not set(p) & set(q))


def test_tightness_even():
    g1 = tightness_family(1, "even")
    assert g1 == grotzsch()
    assert clique_number(g1).value == 2 and chromatic_number(g1).value == 4
    g2 = tightness_family(2, "even")
    assert g2.n == 22
    assert clique_number(g2).value == 4 and chromatic_number(g2).value == 8
    assert g2 == blowup(2, grotzsch())


def test_tightness_even_in_class():
    for k in (1, 2):
        assert is_free(tightness_family(k, "even"), P3UP2_HOUSE.family).free


def test_tightness_odd_values():
    g = tightness_family(1, "odd")
    assert g == schlafli_complement()
    assert clique_number(g).value == 3
    assert chromatic_number(g).value == 6


def test_tightness_odd_membership_fails_on_house():
    # The odd family is P3∪P2-free, but the 27-lines graph carries an induced house.
    g = tightness_family(1, "odd")
    assert find_induced(g, pattern("p3up2")) is None
    v = is_free(g, P3UP2_HOUSE.family)
    assert not v.free and v.certificate.pattern.name == "house"


def test_tightness_errors():
    with pytest.raises(ValueError):
        tightness_family(0)
    with pytest.raises(ValueError):
        tightness_family(1, "middle")


def test_class_spec():
    spec = ClassSpec.parse("p3up2, house")
    assert spec == P3UP2_HOUSE
    assert str(spec) == "p3up2,house"
    assert spec.contains(grotzsch())
    assert not spec.contains(named_graph("house"))
    with pytest.raises(KeyError):
        ClassSpec.parse("p3up2,bogus")


def test_random_member_examples():
    g = random_class_member(10, 0.4, 42, P3UP2_HOUSE)
    assert g.n <= 10
    assert is_free(g, P3UP2_HOUSE.family).free
    assert random_class_member(10, 0.4, 42, P3UP2_HOUSE).edges() == g.edges()
    one = random_class_member(1, 0.9, 7, P5_HOUSE)
    assert one == Graph.empty(1)


def test_random_member_errors():
    with pytest.raises(ValueError):
        random_class_member(0, 0.5, 1, P3UP2_HOUSE)
    with pytest.raises(ValueError):
        random_class_member(5, 1.5, 1, P3UP2_HOUSE)


def test_repair_removes_highest_certificate_vertex():
    # P3∪P2 on 0..4 plus an isolated vertex 5: certificate uses 0..4 only
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    fixed = repair(g, P3UP2_HOUSE)
    assert fixed.n == 5
    assert is_free(fixed, P3UP2_HOUSE.family).free


def test_planted_members_reach_larger_cliques():
    omegas = [clique_number(planted_class_member(12, 0.5, s, P3UP2_HOUSE)).value for s in range(30)]
    assert max(omegas) >= 4
    for s in range(30):
        g = planted_class_member(12, 0.5, s, P3UP2_HOUSE)
        assert g.n <= 12
        assert P3UP2_HOUSE.contains(g)


def test_corpus_is_reproducible_and_certified(class_corpus_500):
    again = class_corpus(500, 1, 12, (0.2, 0.8), 42, P3UP2_HOUSE)
    assert [g.edges() for g in again] == [g.edges() for g in class_corpus_500]
    assert [g.n for g in again] == [g.n for g in class_corpus_500]
    for g in class_corpus_500:
        assert 1 <= g.n <= 12
        assert P3UP2_HOUSE.contains(g)
        assert_structural(g)


def test_random_graph_reproducible():
    assert random_graph(9, 0.5, 3).edges() == random_graph(9, 0.5, 3).edges()
    assert random_graph(9, 0.5, 3).edges() != random_graph(9, 0.5, 4).edges()
