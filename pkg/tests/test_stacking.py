import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyclic_words
from pirank.graph import GraphMorphism, LabeledGraph, fold, rose
from pirank.prank import BudgetExceeded
from pirank.stacking import (Stacking, brute_force_stackable, find_stacking, format_stacking, parse_stacking,
                             search_stacking, stack_word_raw, verify_stacking, word_morphism)
from pirank.words import DomainError, MalformedInput, maximal_root, parse_word, power


def random_immersion(rng, nv, ne, rank):
    edges = {i: (rng.randrange(nv), rng.randrange(nv), rng.randint(1, rank)) for i in range(ne)}
    folded, _ = fold(LabeledGraph(range(nv), edges))
    r = rose(rank)
    return GraphMorphism(folded, r, {v: 0 for v in folded.vertices}, {e: folded.label(e) for e in folded.edges})


def test_two_letter_ladder_word():
    w = parse_word("uuvuvvUUVUVV")
    w = tuple((1 if abs(x) == 21 else 2) * (1 if x > 0 else -1) for x in w)
    st_ = find_stacking(w, 2)
    assert verify_stacking(w, st_)
    assert verify_stacking(word_morphism(w, 2), st_)


@settings(max_examples=60, deadline=None)
@given(cyclic_words(3, 1, 10))
def test_indivisible_words_stack(w):
    if maximal_root(w).exponent > 1:
        with pytest.raises(DomainError):
            find_stacking(w)
        assert stack_word_raw(w) is None
        return
    s = find_stacking(w)
    assert verify_stacking(w, s)
    # the reversed orders are a stacking too
    assert verify_stacking(w, s.reversed())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_search_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    f = random_immersion(rng, rng.randint(1, 5), rng.randint(1, 7), 2)
    if len(f.domain.vertices) > 6:
        return
    s = search_stacking(f)
    assert (s is not None) == brute_force_stackable(f)
    if s is not None:
        assert verify_stacking(f, s)


@pytest.mark.parametrize("v", ["a", "ab", "aB", "abb", "aBB", "aabb", "abAB"])
@pytest.mark.parametrize("k", [2, 3])
def test_proper_powers_do_not_stack(v, k):
    w = power(parse_word(v), k)
    assert stack_word_raw(w) is None
    if len(w) <= 8:
        assert not brute_force_stackable(word_morphism(w, 2))


def test_verify_rejects_bad_orders():
    w = parse_word("aab")
    s = find_stacking(w)
    broken = dict(s.orders)
    broken[("v", 0)] = tuple(reversed(broken[("v", 0)]))
    # two a-edges keep their order while their endpoints swap heights
    assert verify_stacking(w, s) and not verify_stacking(w, Stacking(broken))
    with pytest.raises(MalformedInput):
        verify_stacking(w, Stacking({("v", 0): (0, 1, 2)}))


def test_text_roundtrip():
    s = find_stacking(parse_word("aabAB"))
    assert parse_stacking(format_stacking(s)).orders == s.orders


def test_non_immersion_rejected():
    g = LabeledGraph([0, 1], {0: (0, 1, 1), 1: (0, 1, 1)})
    f = GraphMorphism(g, rose(1), {0: 0, 1: 0}, {0: 1, 1: 1})
    with pytest.raises(DomainError):
        search_stacking(f)


def test_budget():
    with pytest.raises(BudgetExceeded):
        stack_word_raw(power(parse_word("aabab"), 3), max_nodes=2)
