import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyclic_words
from pirank.whitehead import (apply_to_element, automorphism_images, in_proper_free_factor, is_primitive,
                              is_primitive_rank2, is_sub_basis, minimal_length, replay, type_two_moves,
                              whitehead_minimize)
from pirank.words import cyclic_reduce, parse_word, reduce


def random_automorphism(rng, rank, steps):
    """Images of the basis under a random product of elementary Nielsen moves."""
    images = [(k,) for k in range(1, rank + 1)]
    for _ in range(steps):
        i = rng.randrange(rank)
        kind = rng.random()
        if kind < 0.15:
            images[i] = tuple(-x for x in reversed(images[i]))
        elif rank > 1:
            j = rng.choice([k for k in range(rank) if k != i])
            other = images[j] if rng.random() < 0.5 else tuple(-x for x in reversed(images[j]))
            images[i] = reduce(images[i] + other) if rng.random() < 0.5 else reduce(other + images[i])
    return images


def test_move_count():
    assert len(type_two_moves(2)) == 4 * 2 ** 2
    assert len(type_two_moves(3)) == 6 * 2 ** 4


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_images_of_generators_are_primitive(seed, rank):
    rng = random.Random(seed)
    images = random_automorphism(rng, rank, rng.randint(0, 8))
    assert is_primitive(images[0], rank)
    assert is_sub_basis(images[:-1], rank)
    assert is_sub_basis(images, rank)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), cyclic_words(2, 1, 8))
def test_primitivity_is_automorphism_invariant(seed, w):
    rng = random.Random(seed)
    phi = random_automorphism(rng, 2, rng.randint(0, 6))
    assert is_primitive(w, 2) == is_primitive(automorphism_images(phi, w), 2)
    assert minimal_length([w], 2) == minimal_length([automorphism_images(phi, w)], 2)


@given(cyclic_words(2, 1, 12))
def test_rank_two_closed_form_agrees(w):
    assert is_primitive_rank2(w) == is_primitive(w, 2)


@pytest.mark.parametrize("text,rank,expected", [
    ("a", 1, True), ("aa", 1, False), ("ab", 2, True), ("abAB", 2, False), ("aabb", 2, False),
    ("abb", 2, True), ("abc", 3, True), ("aabbcc", 3, False), ("abAB", 3, False),
])
def test_known_primitivity(text, rank, expected):
    assert is_primitive(parse_word(text), rank) == expected


def test_free_factor():
    assert in_proper_free_factor(parse_word("abAB"), 3)
    assert not in_proper_free_factor(parse_word("abAB"), 2)
    assert in_proper_free_factor(parse_word("aabAB"), 2) is False
    # b a a B is conjugate into <a>
    assert in_proper_free_factor(parse_word("baaB"), 2)


def test_sub_basis():
    assert is_sub_basis([parse_word("a"), parse_word("ab")], 2)
    assert not is_sub_basis([parse_word("a"), parse_word("bab")], 2)     # same class as a twice
    assert not is_sub_basis([parse_word("abAB")], 2)
    assert not is_sub_basis([parse_word("a"), parse_word("b"), parse_word("ab")], 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(cyclic_words(3, 1, 8), min_size=1, max_size=2))
def test_trace_replays(ws):
    trace = whitehead_minimize(ws, 3)
    assert replay(trace)
    assert trace.length <= sum(len(w) for w in ws)


@given(cyclic_words(2, 1, 8))
def test_apply_to_element_is_a_homomorphism(w):
    move = type_two_moves(2)[5]
    half = len(w) // 2
    assert apply_to_element(move, w) == reduce(apply_to_element(move, w[:half]) + apply_to_element(move, w[half:]))
    assert cyclic_reduce(apply_to_element(move.inverse(), apply_to_element(move, w)))[0] == cyclic_reduce(w)[0]
