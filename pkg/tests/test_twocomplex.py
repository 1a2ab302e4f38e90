import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pirank.graph import LabeledGraph
from pirank.prank import primitivity_rank
from pirank.twocomplex import (BranchedMap, TwoComplex, boundary_covers_relator, boundary_edges,
                               classify_immersion, closes_to_reduced_sphere, collapse, collapse_all, complex_from_text,
                               complex_key, complex_to_text, covering_complex, disjoint_faces, fold_complex_map,
                               fold_complex_naive, free_faces, identity_map, infer_map, map_from_text, map_to_text,
                               matches_poset_oracle, nielsen_reduces_to_graph, one_relator_pushout, poset_maximum,
                               presentation_complex, pushout_inequality, quotient_complex, random_branched_map,
                               random_disk_diagram, random_immersed_complex, transitive, word_complex)
from pirank.words import DomainError, MalformedInput

TORUS = (1, 2, -1, -2)


def torus():
    return presentation_complex([TORUS], 2)


def test_euler_characteristic():
    assert torus().euler_characteristic() == 0
    assert word_complex("aabbcc").euler_characteristic() == -1
    assert disjoint_faces(TORUS, [1]).euler_characteristic() == 1


def test_open_boundary_rejected():
    g = LabeledGraph([0, 1], {0: (0, 1, 1)})
    with pytest.raises(MalformedInput):
        TwoComplex(g, {0: ((0, 1),)})


# -- free faces, collapses, Nielsen reduction


def test_free_faces():
    assert free_faces(torus()) == []
    disk = disjoint_faces(TORUS, [1])
    assert sorted(e for _, e in free_faces(disk)) == [0, 1, 2, 3]
    # a bigon over one edge used once and one edge used twice by two faces
    g = LabeledGraph([0, 1], {0: (0, 1, 1), 1: (0, 1, 2)})
    y = TwoComplex(g, {0: ((0, 1), (1, -1)), 1: ((1, 1), (0, -1))})
    assert free_faces(y) == []
    y2 = TwoComplex(g, {0: ((0, 1), (1, -1))})
    assert sorted(free_faces(y2)) == [(0, 0), (0, 1)]
    assert boundary_edges(y2) == {0, 1}


def test_collapse():
    disk = disjoint_faces(TORUS, [1])
    y = collapse(disk, (0, 2))
    assert not y.faces and 2 not in y.skeleton.edges
    with pytest.raises(DomainError):
        collapse(torus(), (0, 1))
    with pytest.raises(DomainError):
        collapse(disk, (5, 0))
    z, steps = collapse_all(disjoint_faces(TORUS, [1, 1]))
    assert len(steps) == 2 and not z.faces
    assert z.euler_characteristic() == 2


def test_nielsen_examples():
    assert nielsen_reduces_to_graph(presentation_complex([(1,)], 2))
    assert not nielsen_reduces_to_graph(torus())
    res = nielsen_reduces_to_graph(disjoint_faces(TORUS, [1]))
    assert res and len(res.collapses) == 1
    assert nielsen_reduces_to_graph(presentation_complex([(1, 2), (2, 2, 1)], 2))


def test_nielsen_two_faces():
    # ab and b: together a basis of F(a, b)
    assert nielsen_reduces_to_graph(presentation_complex([(1, 2), (2,)], 2))
    # aa and b: aa is not primitive
    assert not nielsen_reduces_to_graph(presentation_complex([(1, 1), (2,)], 2))


# -- folding


def test_fold_of_immersion_is_identity():
    x = torus()
    res = fold_complex_map(identity_map(x))
    assert complex_key(res.z) == complex_key(x)
    assert res.back.is_immersion()


def test_fold_merges_identical_faces():
    y = disjoint_faces(TORUS, [1, 1])
    y = quotient_complex(y, vertex_pairs=[(0, 4)])
    f = infer_map(y, torus())
    res = fold_complex_map(f)
    assert len(res.z.faces) == 1
    assert len(res.z.skeleton.edges) == 4 and res.z.euler_characteristic() == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fold_matches_repeated_scan(seed):
    rng = random.Random(seed)
    w = rng.choice([TORUS, (1, 1, 2), (1, 2, 1, -2, -2)])
    k, L = rng.randint(1, 3), len(w)
    y = disjoint_faces(w, [1] * k)
    verts = list(y.skeleton.vertices)
    # one merge per extra disc keeps the complex connected
    pairs = [(rng.randrange(j * L), j * L + rng.randrange(L)) for j in range(1, k)]
    pairs += [tuple(rng.sample(verts, 2)) for _ in range(rng.randint(0, 2))]
    y = quotient_complex(y, vertex_pairs=pairs)
    f = infer_map(y, presentation_complex([w], 2))
    f.faces = {g: (0, 0, 1) for g in y.faces}
    res = fold_complex_map(f)
    assert res.back.is_immersion()
    assert res.front.alignment_error() is None
    assert complex_key(res.z) == complex_key(fold_complex_naive(f))


def test_fold_rejects_branched():
    y, f = covering_complex(word_complex("ab"), [[1, 0], [0, 1]])
    assert any(n > 1 for _, _, n in f.faces.values())
    with pytest.raises(DomainError):
        fold_complex_map(f)


# -- maps


def test_link_condition():
    x = torus()
    y = disjoint_faces(TORUS, [1, 1])
    # gluing the two discs along their whole boundary gives a sphere: edge links still immerse
    y2 = quotient_complex(y, edge_pairs=[(i, i + 4) for i in range(4)])
    f = infer_map(y2, x)
    assert f.link_clash() is not None       # the two faces fold onto each other at every corner
    assert infer_map(y, x).link_clash() is None


def test_alignment_errors():
    x = torus()
    y = disjoint_faces(TORUS, [1])
    f = infer_map(y, x)
    bad = BranchedMap(y, x, f.skeleton, {0: (0, 1, 1)})
    assert bad.alignment_error() is not None
    with pytest.raises(MalformedInput):
        bad.check()


@pytest.mark.parametrize("perms", [p for p in itertools.product(itertools.permutations(range(3)), repeat=2)])
def test_cells_identity_on_covers(perms):
    y, f = covering_complex(torus(), perms)
    assert f.is_branched()
    deg = sum(n for _, _, n in f.faces.values())
    # every sheet's face lift is counted once per turn
    assert deg == 3
    assert f.branching() + len(y.faces) == f.deg_sigma()


@pytest.mark.parametrize("perms", [p for p in itertools.product(itertools.permutations(range(3)), repeat=2)])
def test_free_faces_pull_back(perms):
    # over <a, b | aab> the edge b is free; an honest cover immerses, so preimages of free faces are free
    x = word_complex("aab")
    y, f = covering_complex(x, perms)
    if not f.is_immersion():
        return
    over_b = {e for e in y.skeleton.edges if f.skeleton.emap[e] == 2}
    assert {e for _, e in free_faces(y)} == over_b


# -- pushouts


def test_identity_pushout():
    x = torus()
    res = one_relator_pushout(identity_map(x))
    assert complex_key(res.y_hat) == complex_key(x)
    assert res.chi_y == res.chi_y_hat == res.chi_y_hat_I == 0
    rep = pushout_inequality(identity_map(x))
    assert rep.asserted and rep.lhs == rep.chi_y_hat == 0


def test_disk_pushout_is_the_disk():
    y = disjoint_faces(TORUS, [1])
    res = one_relator_pushout(infer_map(y, torus()))
    assert len(res.y_hat.skeleton.vertices) == 4 and len(res.y_hat.skeleton.edges) == 4
    assert res.chi_y_hat == 1
    assert res.chi_y_hat_I == 1       # the boundary circle already immerses


def test_two_faces_at_a_point():
    y = quotient_complex(disjoint_faces(TORUS, [1, 1]), vertex_pairs=[(0, 4)])
    f = infer_map(y, torus())
    n, top = poset_maximum(f)
    assert n > 1 and top is not None
    assert matches_poset_oracle(f)


def test_degenerate_pushout():
    y = TwoComplex(LabeledGraph([0], {0: (0, 0, 1)}), {})
    f = infer_map(y, torus())
    res = one_relator_pushout(f)
    assert res.degenerate and res.y_hat is y


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pushout_properties(seed):
    rng = random.Random(seed)
    w = rng.choice([TORUS, (1, 1, 2), (1, 2, 1, -2)])
    f = random_branched_map(rng, w, 2, max_faces=2, max_degree=2)
    assert f.is_branched()
    assert f.branching() + len(f.domain.faces) == f.deg_sigma()
    res = one_relator_pushout(f)
    assert res.chi_y_hat_I >= res.chi_y_hat
    assert res.f_z.is_branched()
    rep = pushout_inequality(f)
    if rep.asserted:
        assert rep.holds


def test_divisible_relator_is_a_hypothesis_failure():
    x = presentation_complex([(1, 2, 1, 2)], 2)
    rep = pushout_inequality(identity_map(x))
    assert not rep.hypotheses_ok
    assert rep.root == (1, 2)
    assert "root ab" in rep.summary()


# -- classification


def test_classify_graph_and_torus():
    pr = primitivity_rank(TORUS, 2)
    x = torus()
    graph = TwoComplex(LabeledGraph([0], {0: (0, 0, 1)}), {})
    assert classify_immersion(infer_map(graph, x), pr).kind == "reduces-to-graph"
    cl = classify_immersion(identity_map(x), pr)
    assert cl.kind == "factors-through-Q" and cl.subgroup_index == 0


@pytest.mark.parametrize("perms", [p for p in itertools.product(itertools.permutations(range(2)), repeat=2)
                                   if transitive(p)])
def test_double_covers_of_torus(perms):
    pr = primitivity_rank(TORUS, 2)
    y, f = covering_complex(torus(), perms)
    assert f.is_immersion() and y.euler_characteristic() == 0
    cl = classify_immersion(f, pr)
    assert cl.kind == "factors-through-Q"
    # a torus is not homotopy equivalent to a graph; Whitehead agrees
    assert not nielsen_reduces_to_graph(y)


def test_classify_preconditions():
    pr = primitivity_rank(TORUS, 2)
    disk = disjoint_faces(TORUS, [1])
    assert classify_immersion(infer_map(disk, torus()), pr).kind == "precondition-failure"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_immersions_over_torus(seed):
    pr = primitivity_rank(TORUS, 2)
    f = random_immersed_complex(random.Random(seed), TORUS, 2)
    assert f.is_immersion()
    if f.domain.skeleton.edges:
        assert classify_immersion(f, pr).kind != "boundary-case-violation"


# -- disk diagrams


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([TORUS, (1, 1, 2), (1, 1, 2, 2, 3, 3)]))
def test_disk_diagrams(seed, w):
    rng = random.Random(seed)
    d = random_disk_diagram(rng, w, max(abs(x) for x in w), faces=rng.randint(1, 5))
    assert d.map.is_branched()
    assert d.complex.euler_characteristic() == 1
    assert sorted(e for e, _ in d.boundary) == sorted(boundary_edges(d.complex))
    assert boundary_covers_relator(d)
    assert not closes_to_reduced_sphere(d)


# -- files


def test_complex_roundtrip():
    x = torus()
    assert complex_key(complex_from_text(complex_to_text(x))) == complex_key(x)
    y, f = covering_complex(x, [[1, 0], [0, 1]])
    g = map_from_text(map_to_text(f))
    assert g.faces == f.faces and g.skeleton.emap == f.skeleton.emap


def test_map_inferred_from_labels():
    text = "complex Y\n" + "".join("  " + ln + "\n" for ln in complex_to_text(disjoint_faces(TORUS, [1])).splitlines())
    text += "complex X\n" + "".join("  " + ln + "\n" for ln in complex_to_text(torus()).splitlines())
    f = map_from_text(text)
    assert f.faces == {0: (0, 0, 1)}


def test_bad_files():
    with pytest.raises(MalformedInput):
        complex_from_text("v 0\ne 0 0 0 a\nface 0 0 7\n")
    with pytest.raises(MalformedInput):
        map_from_text("complex Y\n  v 0\n")
