import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bouquet_of_words, cyclic_words, words
from pirank.graph import (LabeledGraph, NotLiftable, b1, betti_euler, canonical_form, canonical_graph, core,
                          fiber_product, find_morphism, fold, fold_naive, from_text, immersion_clash, is_core,
                          lift_word, quotient, rose, spanning_tree_basis, express_in_basis, evaluate_in_basis,
                          to_text)
from pirank.words import MalformedInput, reduce, word_to_cycle


def random_graph(rng, nv, ne, rank):
    edges = {i: (rng.randrange(nv), rng.randrange(nv), rng.randint(1, rank)) for i in range(ne)}
    return LabeledGraph(range(nv), edges, 0)


def accepts(g, w):
    try:
        _, end = lift_word(g, w)
    except NotLiftable:
        return False
    return end == g.base


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_fold_agrees_with_naive(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 6), rng.randint(0, 9), 2)
    folded, q = fold(g)
    naive = fold_naive(g)
    assert immersion_clash(folded) is None
    assert len(folded.vertices) == len(naive.vertices) and len(folded.edges) == len(naive.edges)
    assert folded.base == q.vmap[0] and naive.base is not None
    # both are based immersions, so canonical forms decide isomorphism (of the based components)
    assert canonical_form(folded) == canonical_form(naive)
    q.check()


@settings(max_examples=60, deadline=None)
@given(st.lists(words(2, 1, 6), min_size=1, max_size=3), words(2, 0, 8))
def test_folded_bouquet_accepts_products(gens, probe):
    gens = [reduce(w) for w in gens if reduce(w)]
    if not gens:
        return
    g, _ = fold(bouquet_of_words(gens))
    # every generator and product of two generators is read as a closed loop
    for u in gens:
        assert accepts(g, u)
        for v in gens:
            assert accepts(g, reduce(u + v))
    basis = spanning_tree_basis(g)
    # rewriting in the basis and evaluating back is the identity on accepted words
    w = reduce(probe)
    if accepts(g, w):
        assert evaluate_in_basis(basis, express_in_basis(g, w, basis)) == w


@settings(max_examples=40, deadline=None)
@given(st.lists(words(2, 1, 5), min_size=1, max_size=2), st.lists(words(2, 1, 5), min_size=1, max_size=2),
       words(2, 0, 8))
def test_fiber_product_is_intersection(gh, gk, probe):
    gh = [reduce(w) for w in gh if reduce(w)]
    gk = [reduce(w) for w in gk if reduce(w)]
    if not gh or not gk:
        return
    h, _ = fold(bouquet_of_words(gh))
    k, _ = fold(bouquet_of_words(gk))
    fp = fiber_product(h, k)
    w = reduce(probe)
    assert accepts(fp.graph, w) == (accepts(h, w) and accepts(k, w))
    assert len(fp.graph.vertices) == len(h.vertices) * len(k.vertices)   # over a rose


def test_rose_and_betti():
    r = rose(3)
    assert betti_euler(r) == (1, 3, -2)
    g = LabeledGraph([0, 1, 2], {0: (0, 1, 1), 1: (1, 2, 1)})
    assert b1(g) == 0
    assert b1(LabeledGraph([0, 1], {})) == 0


def test_core_strips_trees():
    g = LabeledGraph([0, 1, 2, 3], {0: (0, 0, 1), 1: (0, 1, 2), 2: (1, 2, 1), 3: (1, 3, 1)}, base=0)
    c = core(g)
    assert set(c.vertices) == {0} and set(c.edges) == {0}
    assert is_core(c)
    # with a hanging base the spike to the base is kept
    g2 = LabeledGraph([0, 1], {0: (0, 1, 1), 1: (1, 1, 2)}, base=0)
    assert set(core(g2).edges) == {0, 1}


def test_find_morphism_into_rose():
    c = word_to_cycle((1, 2, -1, -2))
    m = find_morphism(c, rose(2).with_base(0))
    assert m is not None and m.is_immersion()   # cyclically reduced, so it immerses
    assert find_morphism(rose(2).with_base(0), c) is None
    with pytest.raises(MalformedInput):
        find_morphism(LabeledGraph([0]), rose(1))


def test_quotient_identifies_edges_and_ends():
    g = LabeledGraph([0, 1, 2, 3], {0: (0, 1, 1), 1: (2, 3, 1)})
    q, m = quotient(g, edge_pairs=[(0, 1)])
    assert len(q.edges) == 1 and len(q.vertices) == 2
    assert m.vmap[0] == m.vmap[2]


@given(cyclic_words(2, 1, 8))
def test_canonical_form_ignores_ids(w):
    c = word_to_cycle(w)
    shuffled = c.relabel({v: f"v{v * 7 % 101}" for v in c.vertices}, {e: 100 + e for e in c.edges})
    assert canonical_form(c) == canonical_form(shuffled)
    assert canonical_graph(shuffled) == canonical_graph(c)


def test_text_roundtrip():
    g = LabeledGraph([0, "x"], {"e": (0, "x", 1), 3: ("x", "x", 2)}, base=0)
    assert from_text(to_text(g)) == g
    with pytest.raises(MalformedInput):
        from_text("v 0\ne 1 0 5 a\n")
