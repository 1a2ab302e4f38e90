"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``acceptance N: PASS|FAIL ...`` line; run with
``pytest -s`` to see them.
"""

import itertools
import random
import time
from contextlib import contextmanager

from conftest import bouquet_of_words
from pirank.adjunction import (borromean_instance, build, check_diagrammatic_irreducibility, classify_dependence,
                               covering_degrees, filtration, filtration_example, fuzz_updown, random_word,
                               random_weakly_dependent, sublevel_increments, verify_dependence_theorem)
from pirank.graph import NotLiftable, b1, fold, lift_word
from pirank.prank import (INF, bruteforce_primitivity_rank, exhaustive_primitivity_rank, peripheral_subgroup,
                          primitivity_rank)
from pirank.stacking import (brute_force_stackable, find_stacking, search_stacking, stack_word_raw, verify_stacking,
                             word_morphism)
from pirank.twocomplex import (FUZZ_RELATORS, classify_immersion, covering_complex, find_relator_with_pi,
                               fuzz_pushout, fuzz_reduction, identity_map, matches_poset_oracle, presentation_complex,
                               pushout_inequality, small_branched_maps, transitive)
from pirank.wordclasses import word_classes_upto
from pirank.words import abelianization_kernel_rank, inverse, maximal_root, parse_word, power


@contextmanager
def criterion(n):
    """Print one PASS/FAIL line for criterion ``n``; the body fills ``info`` with a short summary."""
    info = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        print(f"\nacceptance {n}: FAIL ({type(exc).__name__}: {exc})")
        raise
    print(f"\nacceptance {n}: PASS ({info['detail']}; {time.perf_counter() - start:.1f}s)")


def test_criterion_1_primitivity_rank_values():
    with criterion(1) as info:
        start = time.perf_counter()
        for u in ("a", "b", "ab"):
            for k in (2, 3):
                w = power(parse_word(u), k)
                assert primitivity_rank(w, 2).pi == 1
                assert bruteforce_primitivity_rank(w, 2) == 1
        for text in ("a", "b", "ab", "aab", "abb", "aBB"):
            assert primitivity_rank(parse_word(text), 2).pi == INF
        for text in ("abAB", "aabb"):
            w = parse_word(text)
            assert bruteforce_primitivity_rank(w, 2) == 2
            assert primitivity_rank(w, 2).pi == 2
        classes = word_classes_upto(10, 3)
        mismatches = [w for w in classes if primitivity_rank(w, 3).pi != exhaustive_primitivity_rank(w, 3)]
        assert not mismatches, mismatches[:5]
        short = [w for w in classes if len(w) <= 6]
        bell = [w for w in short if primitivity_rank(w, 3).pi != bruteforce_primitivity_rank(w, 3)]
        assert not bell, bell[:5]
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"took {elapsed:.1f}s"
        info["detail"] = f"{len(classes)} word classes |w|<=10 agree, {len(short)} also against partitions"


def _closes(g, w, v):
    try:
        return lift_word(g, w, v)[1] == v
    except NotLiftable:
        return False


def test_criterion_2_w_subgroups():
    with criterion(2) as info:
        for u in ("a", "ab", "aB", "abb", "abAB"):
            v = parse_word(u)
            for k in (2, 3, 4):
                subs = primitivity_rank(power(v, k), 2).w_subgroups
                assert len(subs) == 1
                assert subs[0].basis_words in [(v,), (inverse(v),)]
        rng = random.Random(2)
        found = []
        while len(found) < 50:
            w = random_word(rng, rng.randint(4, 10), rng.choice([2, 3]))
            rep = primitivity_rank(w, 3)
            if rep.pi != 2:
                continue
            p = peripheral_subgroup(w, 3, rep)
            assert len(rep.w_subgroups) == 1 and p.rank == 2 == b1(p.graph)
            assert any(_closes(p.graph, w, v) for v in p.graph.vertices)
            found.append(w)
        info["detail"] = f"powers give <u>; {len(found)} random pi=2 words each have one peripheral subgroup"


def test_criterion_3_stackings():
    with criterion(3) as info:
        start = time.perf_counter()
        ladder = tuple((1 if abs(x) == 21 else 2) * (1 if x > 0 else -1) for x in parse_word("uuvuvvUUVUVV"))
        assert verify_stacking(ladder, find_stacking(ladder, 2))
        swept = 0
        for w in word_classes_upto(12, 3):
            if maximal_root(w).exponent > 1:
                continue
            assert verify_stacking(w, find_stacking(w, 3)), w
            swept += 1
        powers = brute = 0
        for v in word_classes_upto(4, 3):
            for k in (2, 3):
                w = power(v, k)
                assert stack_word_raw(w) is None, w
                powers += 1
                if len(w) <= 8:
                    assert not brute_force_stackable(word_morphism(w, 3)), w
                    brute += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 120, f"took {elapsed:.1f}s"
        info["detail"] = (f"{swept} indivisible classes |w|<=12 stack, {powers} powers do not "
                          f"({brute} confirmed by brute force)")


def test_criterion_4_dependence_fuzz():
    with criterion(4) as info:
        violations, equality = [], 0
        for t in range(1000):
            inst = random_weakly_dependent(random.Random(f"acceptance:{t}"))
            assert len(inst.s.edges) <= 8 and len(inst.gamma.edges) <= 12
            assert sum(covering_degrees(inst.sigma)) <= 4
            space = build(inst)
            assert check_diagrammatic_irreducibility(inst, space)
            assert classify_dependence(space).weakly_dependent
            rep = verify_dependence_theorem(inst)
            assert rep.asserted
            if rep.lhs > rep.rhs:
                violations.append(t)
            equality += rep.lhs == rep.rhs
        assert not violations
        bor = verify_dependence_theorem(borromean_instance())
        assert (bor.lhs, bor.rhs) == (-1, -1) and bor.free_rank_bound == 2
        info["detail"] = f"1000 instances, 0 violations, {equality} tight; Borromean -1 <= -1, free rank <= 2"


def test_criterion_5_invariants():
    with criterion(5) as info:
        fibres = 0
        for t in range(1000):
            inst = random_weakly_dependent(random.Random(f"invariants:{t}"))
            space = build(inst)
            chi_gamma = inst.gamma.euler_characteristic()
            chi_w = chi_gamma + inst.s.euler_characteristic() - inst.p.euler_characteristic()
            assert chi_w == space.chi_w() == space.chi_w_fibres()
            deg = sum(covering_degrees(inst.sigma))
            for fib in space.fibers.values():
                assert all(fib.valence("S", s) == deg for s in fib.s_side)
            rep = filtration(space, search_stacking(inst.w))
            assert rep.chi_c == rep.chi_c_plus == rep.chi_c_minus == space.chi_c()
            for f in rep.fibers.values():
                assert sum(f.plus) == sum(f.minus) == f.betti
                assert max(f.plus + f.minus, default=0) <= rep.chi_c
                fibres += 1
        info["detail"] = f"1000 instances, {fibres} fibres"


def test_criterion_6_updown():
    with criterion(6) as info:
        s = fuzz_updown(6, 1000)
        assert s.passed == 1000 and s.min_good >= 2, s.failures[:5]
        b = filtration_example()
        plus, minus = sublevel_increments(b)
        assert plus == [0, 0, 2, 2, 1, 2]
        chi = len(b.u) + len(b.c) - len(b.edges)
        assert (len(b.u), len(b.c), len(b.edges), chi) == (6, 6, 18, -6)
        assert b.is_connected() and 1 - chi == sum(plus) == sum(minus) == 7
        info["detail"] = f"1000/1000 graphs have >= {s.min_good} good vertices; increments {plus}"


def test_criterion_7_pushout():
    with criterion(7) as info:
        maps = 0
        for text in ("a", "aa", "ab", "aab", "abAB", "abab"):
            for f in small_branched_maps(parse_word(text)):
                assert matches_poset_oracle(f), (text, f)
                maps += 1
        s = fuzz_pushout(7, 500)
        assert not s.violations
        for w in FUZZ_RELATORS:
            rep = pushout_inequality(identity_map(presentation_complex([w])))
            assert rep.asserted and rep.lhs == rep.chi_y_hat
        info["detail"] = f"{maps} small maps match the poset oracle; 500 fuzzed maps, {s.asserted} asserted, 0 violations"


def test_criterion_8_stallings():
    with criterion(8) as info:
        for n in range(2, 7):
            gens = [power((2,), i) + (1,) + power((-2,), i) for i in range(n)]
            g, _ = fold(bouquet_of_words(gens))
            assert b1(g) == n       # the generators are a basis of H
            assert abelianization_kernel_rank(gens, 2) == n - 1
        info["detail"] = "kernel ranks 1..5 for n = 2..6"


def test_criterion_9_classification():
    with criterion(9) as info:
        torus = presentation_complex([parse_word("abAB")], 2)
        pr = primitivity_rank(parse_word("abAB"), 2)
        kinds = [classify_immersion(identity_map(torus), pr).kind]
        for perms in itertools.product(itertools.permutations(range(2)), repeat=2):
            if transitive(perms):
                _, f = covering_complex(torus, perms)
                kinds.append(classify_immersion(f, pr).kind)
        assert set(kinds) <= {"factors-through-Q", "reduces-to-graph"}, kinds
        w = find_relator_with_pi(3)
        assert exhaustive_primitivity_rank(w, 3) == 3
        s = fuzz_reduction(9, 500, w, 3)
        assert s.nonnegative > 0 and not s.failures
        assert s.reduced == s.nonnegative
        info["detail"] = (f"torus and {len(kinds) - 1} double covers classified; "
                          f"{s.reduced}/{s.nonnegative} chi>=0 immersions over pi=3 relator reduce")
