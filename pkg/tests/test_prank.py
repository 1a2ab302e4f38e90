import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyclic_words
from pirank.graph import NotLiftable, lift_word
from pirank.prank import (INF, BudgetExceeded, bruteforce_primitivity_rank, exhaustive_primitivity_rank,
                          negative_immersions_verdict, peripheral_subgroup, primitivity_rank,
                          restricted_growth_strings)
from pirank.whitehead import automorphism_images, is_primitive
from pirank.words import cyclic_reduce, inverse, is_proper_power, parse_word, power


def test_bell_numbers():
    assert [sum(1 for _ in restricted_growth_strings(n)) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("u", ["a", "b", "ab", "aB", "abb"])
@pytest.mark.parametrize("k", [2, 3])
def test_powers_have_rank_one(u, k):
    w = power(parse_word(u), k)
    rep = primitivity_rank(w, 2)
    assert rep.pi == 1 and rep.verdict == "torsion"
    (sub,) = rep.w_subgroups
    gen = sub.basis_words
    # the subgroup <u>, generated by u or by its inverse
    assert gen in [(parse_word(u),), (inverse(parse_word(u)),)]
    assert sub.w_in_basis == ((1,) if gen == (parse_word(u),) else (-1,)) * k


@pytest.mark.parametrize("text,rank,pi", [
    ("a", 2, INF), ("ab", 2, INF), ("abAB", 2, 2), ("aabb", 2, 2), ("aabbcc", 3, 3), ("abABcc", 3, 3),
    ("abc", 3, INF), ("aabAB", 2, 2),
])
def test_known_values(text, rank, pi):
    w = parse_word(text)
    assert primitivity_rank(w, rank).pi == pi
    if len(w) <= 6:
        assert bruteforce_primitivity_rank(w, rank) == pi


def test_trivial_word():
    rep = primitivity_rank((1, -1), 2)
    assert rep.pi == 0 and rep.is_trivial


def test_conjugates_share_rank():
    assert primitivity_rank(parse_word("babABB"), 2).pi == primitivity_rank(parse_word("abAB"), 2).pi


def test_budget():
    with pytest.raises(BudgetExceeded):
        primitivity_rank(parse_word("aabbaBAbAB"), 2, budget=3)


def test_peripheral_subgroup_of_commutator():
    p = peripheral_subgroup(parse_word("abAB"), 2)
    assert p is not None and p.rank == 2 and p.basis_words == ((1,), (2,))
    assert peripheral_subgroup(parse_word("aaa"), 1) is None
    assert negative_immersions_verdict(parse_word("aabbcc"), 3) == "negative"


@settings(max_examples=40, deadline=None)
@given(cyclic_words(2, 1, 7))
def test_optimized_matches_bell_oracle(w):
    assert primitivity_rank(w, 2).pi == bruteforce_primitivity_rank(w, 2)


@settings(max_examples=40, deadline=None)
@given(cyclic_words(3, 1, 9))
def test_basic_bounds(w):
    rep = primitivity_rank(w, 3)
    used = len({abs(x) for x in w})
    assert (rep.pi == 1) == is_proper_power(w)
    assert (rep.pi == INF) == is_primitive(w, 3)
    if rep.pi != INF:
        assert 1 <= rep.pi <= used
        assert rep.pi == exhaustive_primitivity_rank(w, 3)
    for sub in rep.w_subgroups:
        # w is a closed loop at the base of each w-subgroup graph and is imprimitive there
        _, end = lift_word(sub.graph, rep.core)
        assert end == sub.graph.base
        assert sub.rank == rep.pi
        assert not is_primitive(sub.w_in_basis, sub.rank)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), cyclic_words(2, 2, 6))
def test_rank_is_automorphism_invariant(seed, w):
    rng = random.Random(seed)
    images = [(1,), (2,)]
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(2)
        images[i] = automorphism_images([(1,), (2,)], images[i] + images[1 - i] if rng.random() < 0.5
                                        else images[1 - i] + images[i])
    v = cyclic_reduce(automorphism_images(images, w))[0]
    if len(v) > 12:
        return
    assert primitivity_rank(w, 2).pi == primitivity_rank(v, 2).pi


def test_w_subgroup_lift_fails_outside():
    rep = primitivity_rank(parse_word("aaa"), 2)
    with pytest.raises(NotLiftable):
        lift_word(rep.w_subgroups[0].graph, (2,))
