import pytest
from hypothesis import given

from _corpus import small_graphs, star123
from maxbisize.errors import ParseError
from maxbisize.generators import gen_base
from maxbisize.graph import (
    BLACK,
    WHITE,
    BipartiteGraph,
    bipartite_complement,
    connected_components,
    find_induced_star123,
    find_twins,
    format_graph,
    induced_subgraph,
    is_biclique,
    is_k13_free,
    parse_graph,
)


def test_parse_single_edge():
    g = parse_graph("p bip 1 1 1\ne 1 1\n")
    assert (g.nB, g.nW, g.m) == (1, 1, 1)


def test_parse_complete_and_comments():
    g = parse_graph("# K22\np bip 2 2 4\ne 1 1\ne 1 2\n\ne 2 1\ne 2 2\n")
    assert g.m == 4 and all(g.has_edge(i, j) for i in range(2) for j in range(2))


@pytest.mark.parametrize(
    "text",
    [
        "p bip 2 2 4\ne 1 1\ne 1 1\ne 2 1\ne 2 2\n",  # duplicate
        "e 1 1\n",  # no header
        "p bip 1 1 1\np bip 1 1 1\ne 1 1\n",
        "p bip 1 1 1\ne 2 1\n",  # out of range
        "p bip 1 1 2\ne 1 1\n",  # count mismatch
        "p bip 1 x 0\n",
        "p bip 1 1 1\ne 1\n",
        "q 1 2\n",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_graph(text)


@given(small_graphs(twin_free=False))
def test_format_parse_round_trip(g):
    assert parse_graph(format_graph(g, comment="x")) == g


def test_constructor_rejects_duplicates():
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, [(0, 0), (0, 0)])


def test_complement_examples():
    k22 = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert bipartite_complement(k22).m == 0
    c6 = bipartite_complement(gen_base("cycle", 6))
    assert c6.m == 3 and all(c6.degree(v) == 1 for v in c6.vertices())


@given(small_graphs(twin_free=False))
def test_complement_involution(g):
    assert bipartite_complement(bipartite_complement(g)) == g
    assert g.m + bipartite_complement(g).m == g.nB * g.nW


def test_twins():
    k22 = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert find_twins(k22) == [frozenset({(BLACK, 0), (BLACK, 1)}), frozenset({(WHITE, 0), (WHITE, 1)})]
    assert find_twins(gen_base("path", 7)) == []
    assert find_twins(BipartiteGraph(3, 0)) == [frozenset({(BLACK, 0), (BLACK, 1), (BLACK, 2)})]


def test_components():
    assert len(connected_components(BipartiteGraph(2, 2, [(0, 0), (1, 1)]))) == 2
    assert len(connected_components(gen_base("cycle", 8))) == 1
    assert len(connected_components(BipartiteGraph(2, 1))) == 3


def test_is_biclique():
    c8 = gen_base("cycle", 8)
    # black 1 is adjacent to whites 1 and 0
    assert is_biclique(c8, [(BLACK, 1), (WHITE, 0), (WHITE, 1)])
    assert not is_biclique(c8, [(BLACK, 0), (BLACK, 2), (WHITE, 0)])
    assert is_biclique(c8, [(BLACK, i) for i in range(4)])


def test_induced_subgraph():
    c8 = gen_base("cycle", 8)
    h, mapping = induced_subgraph(c8, [(BLACK, 0), (WHITE, 0), (BLACK, 1), (WHITE, 1)])
    assert h.m == 3 and max(h.degree(v) for v in h.vertices()) == 2
    assert set(mapping.values()) == {(BLACK, 0), (WHITE, 0), (BLACK, 1), (WHITE, 1)}
    assert induced_subgraph(c8, c8.vertices())[0] == c8
    assert induced_subgraph(c8, [])[0].n == 0


def test_star123_search():
    assert find_induced_star123(star123()) is not None
    assert find_induced_star123(gen_base("path", 7)) is None
    assert find_induced_star123(gen_base("cycle", 8)) is None


def test_k13():
    assert is_k13_free(gen_base("cycle", 8))
    assert not is_k13_free(BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)]))
    assert is_k13_free(BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]))
