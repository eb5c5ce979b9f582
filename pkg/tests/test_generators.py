import pytest

from maxbisize.decomposition import Kind, bimodularwidth, build_canonical_tree, build_lozin_tree, validate_tree
from maxbisize.errors import BadParameter, BadSpec, TwinsProduced
from maxbisize.generators import (
    base,
    gen_base,
    gen_from_spec,
    gen_random,
    leaf,
    parallel,
    prime,
    prime_library,
    series,
    spks_spec,
)
from maxbisize.graph import BLACK, WHITE, BipartiteGraph, bipartite_complement, find_twins
from maxbisize.oracle import oracle_bimodules

# earlier precedence wins when a graph admits several splits
_PRECEDENCE = {Kind.KS: 0, Kind.PARALLEL: 1, Kind.SERIES: 2, Kind.PRIME: 3, Kind.BASE: 3, Kind.LEAF: 4}


def test_gen_base():
    p7 = gen_base("path", 7)
    assert (p7.nB, p7.nW, p7.m) == (4, 3, 6)
    c8 = gen_base("cycle", 8)
    assert c8.m == 8 and all(c8.degree(v) == 2 for v in c8.vertices())
    assert gen_base("copath", 9) == bipartite_complement(gen_base("path", 9))
    for shape, n in (("path", 1), ("cycle", 5), ("cocycle", 2)):
        with pytest.raises(BadParameter):
            gen_base(shape, n)


def test_spec_examples():
    g, t = gen_from_spec(series(leaf(BLACK), leaf(WHITE)))
    assert g == BipartiteGraph(1, 1, [(0, 0)])
    g, t = gen_from_spec(parallel(base("path", 5), base("path", 5)))
    assert g.m == 8 and t.root.kind == Kind.PARALLEL
    assert [c.kind for c in t.root.children] == [Kind.BASE, Kind.BASE]
    validate_tree(g, t)


def test_prime_round_trip_p7():
    slots = [(b, None) for b in range(4)] + [(None, w) for w in range(3)]
    children = [leaf(BLACK)] * 4 + [leaf(WHITE)] * 3
    g, t = gen_from_spec(prime("P7", slots, children))
    assert g == gen_base("path", 7)
    ct = build_canonical_tree(g)
    assert ct.root.kind == Kind.PRIME and len(ct.root.children) == 7


def test_bad_specs():
    with pytest.raises(BadSpec):
        gen_from_spec(series(leaf(BLACK)))
    with pytest.raises(BadSpec):
        gen_from_spec(prime("nope", [], [leaf(BLACK), leaf(WHITE)]))
    with pytest.raises(BadSpec):
        gen_from_spec(prime("P7", [(0, None), (1, None)], [leaf(WHITE), leaf(WHITE)]))
    with pytest.raises(TwinsProduced):
        gen_from_spec(parallel(leaf(BLACK), leaf(BLACK)))


def test_library_is_prime():
    lib = prime_library()
    assert {"P7", "C8"} <= set(lib)
    for h in lib.values():
        assert h.n <= 12 and not find_twins(h)
        assert all(len(c) == 1 for c in oracle_bimodules(h).canonical_partition)
        assert build_canonical_tree(h).root.kind == Kind.PRIME


@pytest.mark.parametrize("seed", range(40))
def test_random_star_free(seed):
    g, t, spec = gen_random(16, "lozin", seed=seed)
    assert not find_twins(g) and g.n == spec.leaf_count
    validate_tree(g, t)
    lt = build_lozin_tree(g)
    assert _PRECEDENCE[lt.root.kind] <= _PRECEDENCE[t.root.kind]


@pytest.mark.parametrize("seed", range(40))
def test_random_canonical(seed):
    g, t, spec = gen_random(16, "canonical", max_width=7, seed=seed)
    assert not find_twins(g)
    validate_tree(g, t)
    ct = build_canonical_tree(g)
    assert _PRECEDENCE[ct.root.kind] <= _PRECEDENCE[t.root.kind]
    assert bimodularwidth(ct) <= 7


def test_degenerate_single_vertex():
    g, t, _ = gen_random(1, "lozin", seed=0)
    assert g.n == 1 and t.root.kind == Kind.LEAF


def test_spks_family_twin_free():
    g, t = gen_from_spec(spks_spec(256))
    assert g.n == 256 and not find_twins(g)
    validate_tree(g, t)
