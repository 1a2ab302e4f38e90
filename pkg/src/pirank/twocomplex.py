"""Combinatorial 2-complexes over a graph, branched maps and one-relator pushouts.

A 2-complex is a graph (its 1-skeleton) with faces attached along closed
edge paths, each a tuple of ``(edge, sign)``.  A map of complexes is a
graph morphism on skeleta together with, for each face, a target face, an
offset and a degree ``n``: position ``i`` of the source boundary lies over
position ``(i + offset) mod L`` of the target boundary, and the source
boundary has length ``n * L``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .adjunction import (AdjunctionInstance, InvariantViolation, build, check_diagrammatic_irreducibility,
                         classify_dependence, is_indivisible_loop)
from .graph import (GraphMorphism, LabeledGraph, UnionFind, _parse_id, _token, canonical_order, components,
                    core, find_morphism, fold, fold_naive, graph_lines, parse_graph_lines, path_in_basis,
                    quotient, rose, spanning_tree_basis)
from .whitehead import is_sub_basis, whitehead_minimize
from .words import DomainError, MalformedInput, Word, format_word, maximal_root, parse_word

Path = tuple  # of (edge, sign)


@dataclass
class TwoComplex:
    skeleton: LabeledGraph
    faces: dict                     # face id -> closed edge path

    def __post_init__(self):
        self.faces = {f: tuple(tuple(step) for step in p) for f, p in self.faces.items()}
        for f, p in self.faces.items():
            if not p:
                raise MalformedInput(f"face {f!r} has an empty boundary")
            for e, sign in p:
                if e not in self.skeleton.edges or sign not in (1, -1):
                    raise MalformedInput(f"face {f!r} uses an unknown edge step {(e, sign)!r}")
            for k in range(len(p)):
                if _step_end(self.skeleton, p[k]) != _step_start(self.skeleton, p[(k + 1) % len(p)]):
                    raise MalformedInput(f"boundary of face {f!r} is not a closed path")

    def euler_characteristic(self) -> int:
        return self.skeleton.euler_characteristic() + len(self.faces)

    def face_word(self, f) -> Word:
        """The boundary of ``f`` read in the rose alphabet (labels are generator indices)."""
        return tuple(self.skeleton.label(e) * s for e, s in self.faces[f])

    def traversals(self) -> dict:
        """Edge -> list of ``(face, position)`` where some boundary crosses it."""
        out = {e: [] for e in self.skeleton.edges}
        for f, p in self.faces.items():
            for i, (e, _) in enumerate(p):
                out[e].append((f, i))
        return out

    def is_connected(self) -> bool:
        return len(components(self.skeleton)) <= 1


def _step_start(g: LabeledGraph, step) -> object:
    e, s = step
    return g.src(e) if s == 1 else g.dst(e)


def _step_end(g: LabeledGraph, step) -> object:
    e, s = step
    return g.dst(e) if s == 1 else g.src(e)


def presentation_complex(relators: Sequence[Sequence[int]] | Sequence[int], rank: int | None = None) -> TwoComplex:
    """The rose with one face per relator; rose edge ``k`` is generator ``k``."""
    if relators and isinstance(relators[0], int):
        relators = [relators]
    rank = rank or max(abs(x) for r in relators for x in r)
    faces = {i: tuple((abs(x), 1 if x > 0 else -1) for x in r) for i, r in enumerate(relators)}
    return TwoComplex(rose(rank), faces)


# -- maps ---------------------------------------------------------------------------


@dataclass
class BranchedMap:
    domain: TwoComplex
    codomain: TwoComplex
    skeleton: GraphMorphism
    faces: dict                     # face -> (target face, offset, degree)

    def degree(self, f) -> int:
        return self.faces[f][2]

    def deg_sigma(self) -> int:
        return sum(n for _, _, n in self.faces.values())

    def branching(self) -> int:
        """``sum (n_e - 1)`` over the faces of the domain."""
        return sum(n - 1 for _, _, n in self.faces.values())

    def alignment_error(self) -> str | None:
        """Why the face data fails to describe boundaries wrapping ``n`` times, or ``None``."""
        try:
            self.skeleton.check()
        except MalformedInput as exc:
            return f"skeleton map: {exc}"
        for f, p in self.domain.faces.items():
            if f not in self.faces:
                return f"face {f!r} has no target"
            t, off, n = self.faces[f]
            q = self.codomain.faces.get(t)
            if q is None:
                return f"face {f!r} maps to unknown face {t!r}"
            if n < 1 or len(p) != n * len(q):
                return f"face {f!r}: boundary length {len(p)} is not {n} x {len(q)}"
            L = len(q)
            for i, (e, s) in enumerate(p):
                if (self.skeleton.emap[e], s) != q[(i + off) % L]:
                    return f"face {f!r}: position {i} does not lie over the target boundary"
        return None

    def link_clash(self):
        """Two corners at one link vertex of the domain with the same image, or ``None``.

        The corner of face ``g`` at position ``i`` joins the arriving end of
        step ``i - 1`` to the leaving end of step ``i``.  The induced map on
        links is an immersion iff these images are distinct at every link vertex.
        """
        seen = {}
        for g, p in self.domain.faces.items():
            t, off, _ = self.faces[g]
            L = len(self.codomain.faces[t])
            k = len(p)
            for i in range(k):
                e0, s0 = p[i - 1]
                e1, s1 = p[i]
                img = (t, (i + off) % L)
                for slot, lv in ((0, (e0, -s0)), (1, (e1, s1))):
                    key = (lv, img, slot)
                    if key in seen and seen[key] != (g, i):
                        return seen[key], (g, i)
                    seen[key] = (g, i)
        return None

    def is_branched(self) -> bool:
        return self.alignment_error() is None and self.link_clash() is None

    def is_immersion(self) -> bool:
        return (self.is_branched() and all(n == 1 for _, _, n in self.faces.values())
                and self.skeleton.is_immersion())

    def check(self) -> None:
        err = self.alignment_error()
        if err:
            raise MalformedInput(err)
        clash = self.link_clash()
        if clash:
            raise DomainError(f"not a branched map: corners {clash} have the same image in a link")


def _face_offsets(path_word: Word, target_word: Word) -> list[tuple[int, int]]:
    """All ``(offset, degree)`` with ``path_word[i] == target_word[(i + offset) % L]``."""
    L = len(target_word)
    if not L or len(path_word) % L:
        return []
    n = len(path_word) // L
    return [(off, n) for off in range(L)
            if all(path_word[i] == target_word[(i + off) % L] for i in range(len(path_word)))]


def infer_map(y: TwoComplex, x: TwoComplex) -> BranchedMap:
    """The map of complexes over a rose read off the labels.

    The codomain's skeleton must be a rose whose edge ``k`` carries label
    ``k``; each face of ``y`` is matched to the first target face and offset
    that fits.
    """
    if len(x.skeleton.vertices) != 1:
        raise DomainError("maps are inferred only into complexes over a rose")
    v0 = x.skeleton.vertices[0]
    emap = {}
    for e in y.skeleton.edges:
        lab = y.skeleton.label(e)
        if lab not in x.skeleton.edges:
            raise MalformedInput(f"edge {e!r} has label {lab!r}, which is not an edge of the target")
        emap[e] = lab
    sk = GraphMorphism(y.skeleton, x.skeleton, {v: v0 for v in y.skeleton.vertices}, emap)
    faces = {}
    for g in y.faces:
        word = y.face_word(g)
        for t in x.faces:
            fits = _face_offsets(word, x.face_word(t))
            if fits:
                faces[g] = (t, fits[0][0], fits[0][1])
                break
        else:
            raise DomainError(f"face {g!r} reads {format_word(word)}, which covers no target face")
    return BranchedMap(y, x, sk, faces)


def identity_map(x: TwoComplex) -> BranchedMap:
    sk = GraphMorphism(x.skeleton, x.skeleton, {v: v for v in x.skeleton.vertices},
                       {e: e for e in x.skeleton.edges})
    return BranchedMap(x, x, sk, {f: (f, 0, 1) for f in x.faces})


# -- folding ------------------------------------------------------------------------


@dataclass
class FoldResult:
    z: TwoComplex
    front: BranchedMap              # domain -> z, surjective
    back: BranchedMap               # z -> codomain, an immersion


def _aligned(path: Path, off: int, L: int) -> Path:
    """Rotate a boundary so that position ``j`` lies over target position ``j mod L``."""
    k = len(path)
    return tuple(path[(j - off) % k] for j in range(k))


def fold_complex_map(f: BranchedMap) -> FoldResult:
    """Factor a combinatorial map as a surjection followed by an immersion.

    The skeleton map is folded; faces are pushed forward and two faces are
    identified when they have the same target and the same boundary.
    """
    if any(n != 1 for _, _, n in f.faces.values()):
        raise DomainError("folding is defined for combinatorial maps (every face of degree one)")
    err = f.alignment_error()
    if err:
        raise MalformedInput(err)
    down, q = fold(f.skeleton)
    zg = down.domain
    keys: dict = {}
    zfaces, front_faces = {}, {}
    for g, p in f.domain.faces.items():
        t, off, _ = f.faces[g]
        L = len(f.codomain.faces[t])
        pushed = tuple((q.emap[e], s) for e, s in p)
        key = (repr(t), _aligned(pushed, off, L))
        if key not in keys:
            keys[key] = g
            zfaces[g] = key[1]
        front_faces[g] = (keys[key], off, 1)
    z = TwoComplex(zg, zfaces)
    back_faces = {g: (f.faces[g][0], 0, 1) for g in zfaces}
    front = BranchedMap(f.domain, z, q, front_faces)
    back = BranchedMap(z, f.codomain, down, back_faces)
    return FoldResult(z, front, back)


def fold_complex_naive(f: BranchedMap) -> TwoComplex:
    """Oracle: naive skeleton folding, then pairwise face comparison until nothing changes."""
    lab = f.skeleton.as_labeled()
    folded = fold_naive(lab)
    # recover the quotient map by following each edge to the surviving edge with
    # the same endpoints class and label; rebuild it with a union-find instead
    vuf, euf = UnionFind(lab.vertices), UnionFind(lab.edges)
    changed = True
    while changed:
        changed = False
        items = list(lab.edges.items())
        for i, (e, (s, d, l1)) in enumerate(items):
            for e2, (s2, d2, l2) in items[i + 1:]:
                if l1 == l2 and euf.find(e) != euf.find(e2) and (vuf.find(s) == vuf.find(s2)
                                                                 or vuf.find(d) == vuf.find(d2)):
                    euf.union(e, e2)
                    vuf.union(s, s2)
                    vuf.union(d, d2)
                    changed = True
    if len({euf.find(e) for e in lab.edges}) != len(folded.edges):
        raise InvariantViolation("naive folds disagree on the number of edges")
    faces: dict = {}
    for g, p in f.domain.faces.items():
        t, off, _ = f.faces[g]
        L = len(f.codomain.faces[t])
        faces[g] = (t, _aligned(tuple((euf.find(e), s) for e, s in p), off, L))
    keep: dict = {}
    for g in faces:
        if not any(faces[h] == faces[g] for h in keep):
            keep[g] = faces[g]
    vrep = {}
    for v in lab.vertices:
        vrep.setdefault(vuf.find(v), v)
    edges = {}
    for e, (s, d, l) in lab.edges.items():
        r = euf.find(e)
        edges[r] = (vrep[vuf.find(s)], vrep[vuf.find(d)], l)
    sk = LabeledGraph(list(vrep.values()), edges)
    return TwoComplex(sk, {g: p for g, (_, p) in keep.items()})


def complex_key(y: TwoComplex) -> tuple:
    """An isomorphism invariant of a connected complex (complete when the skeleton immerses)."""
    best = None
    for v in y.skeleton.vertices:
        vnum, enum = canonical_order(y.skeleton, v)
        edges = tuple(sorted((enum[e], vnum[s], vnum[d], repr(lab))
                             for e, (s, d, lab) in y.skeleton.edges.items() if e in enum))
        faces = []
        for p in y.faces.values():
            steps = [(enum[e], s) for e, s in p]
            faces.append(min(tuple(steps[k:] + steps[:k]) for k in range(len(steps))))
        key = (len(vnum), edges, tuple(sorted(faces)))
        if best is None or key < best:
            best = key
    return best if best is not None else (0, (), ())


# -- collapses and Nielsen reduction ------------------------------------------------


def free_faces(y: TwoComplex) -> list[tuple]:
    """Pairs ``(face, edge)`` where the face crosses the edge once and nothing else crosses it."""
    out = []
    for e, crossings in y.traversals().items():
        if len(crossings) == 1:
            out.append((crossings[0][0], e))
    return out


def boundary_edges(y: TwoComplex) -> set:
    """Edges crossed exactly once by the boundaries of faces (the closure of the free faces)."""
    return {e for e, crossings in y.traversals().items() if len(crossings) == 1}


def collapse(y: TwoComplex, candidate: tuple) -> TwoComplex:
    """Remove an open face together with a free edge of it."""
    g, e = candidate
    crossings = y.traversals().get(e)
    if g not in y.faces or crossings is None or len(crossings) != 1 or crossings[0][0] != g:
        raise DomainError(f"{candidate!r} is not a free face")
    sk = y.skeleton.subgraph(y.skeleton.vertices, [x for x in y.skeleton.edges if x != e])
    return TwoComplex(sk, {f: p for f, p in y.faces.items() if f != g})


def collapse_all(y: TwoComplex) -> tuple[TwoComplex, list]:
    """Collapse free faces until none remain; returns the result and the collapses made."""
    done = []
    while True:
        cand = free_faces(y)
        if not cand:
            return y, done
        y = collapse(y, cand[0])
        done.append(cand[0])


@dataclass
class NielsenResult:
    reduces: bool
    collapses: list
    rank: int
    words: list                     # remaining attaching maps in a basis of pi_1 of the skeleton
    trace: object = None

    def __bool__(self):
        return self.reduces


def attaching_words(y: TwoComplex) -> tuple[int, list]:
    """The rank of ``pi_1`` of the connected skeleton and each face boundary in a spanning-tree basis."""
    sk = y.skeleton
    if not sk.vertices:
        return 0, []
    base = sk.vertices[0]
    basis = spanning_tree_basis(sk.with_base(base), base)
    if len(components(sk)) != 1:
        raise DomainError("Nielsen reduction is decided for connected complexes")
    return basis.rank, [path_in_basis(basis, p) for p in y.faces.values()]


def nielsen_reduces_to_graph(y: TwoComplex) -> NielsenResult:
    """Decide whether the complex Nielsen reduces to a graph.

    Free faces are collapsed first; the remaining attaching maps must then
    be a sub-basis of the free group of the skeleton, decided by Whitehead.
    """
    y2, done = collapse_all(y)
    rank, words = attaching_words(y2)
    if not words:
        return NielsenResult(True, done, rank, [])
    trace = whitehead_minimize(words, rank) if rank else None
    ok = rank > 0 and is_sub_basis(words, rank)
    return NielsenResult(ok, done, rank, words, trace)


# -- one-relator pushouts -----------------------------------------------------------


def _circle_over(path: Path, g: LabeledGraph, tag_offset: int = 0):
    """A cycle graph following ``path`` in ``g``: vertices/edges numbered along the path."""
    k = len(path)
    verts = list(range(tag_offset, tag_offset + k))
    edges, vmap, emap = {}, {}, {}
    for i, (e, s) in enumerate(path):
        a, b = tag_offset + i, tag_offset + (i + 1) % k
        edges[tag_offset + i] = (a, b, None) if s == 1 else (b, a, None)
        emap[tag_offset + i] = e
        vmap[tag_offset + i] = _step_start(g, (e, s))
    return LabeledGraph(verts, edges), vmap, emap


def adjunction_data(f: BranchedMap) -> AdjunctionInstance:
    """The square ``P -> S, P -> Y^(1), S -> X^(1), Y^(1) -> X^(1)`` of a branched map to a one-relator complex."""
    x, y = f.codomain, f.domain
    if len(x.faces) != 1:
        raise DomainError("the target must have exactly one face")
    (xf, xpath), = x.faces.items()
    L = len(xpath)
    s, s_v, s_e = _circle_over(xpath, x.skeleton)
    w = GraphMorphism(s, x.skeleton, s_v, s_e)
    pv, pe, lam_v, lam_e, sig_v, sig_e = [], {}, {}, {}, {}, {}
    offset = 0
    for g, p in y.faces.items():
        _, off, _ = f.faces[g]
        circ, cv, ce = _circle_over(p, y.skeleton, offset)
        pv += circ.vertices
        pe.update(circ.edges)
        lam_v.update(cv)
        lam_e.update(ce)
        for i in range(len(p)):
            sig_v[offset + i] = (i + off) % L
            sig_e[offset + i] = (i + off) % L
        offset += len(p)
    pg = LabeledGraph(pv, pe)
    inst = AdjunctionInstance(x.skeleton, y.skeleton, s, pg, f.skeleton, w,
                              GraphMorphism(pg, y.skeleton, lam_v, lam_e), GraphMorphism(pg, s, sig_v, sig_e))
    inst.check()
    return inst


@dataclass
class PushoutResult:
    y_hat: TwoComplex
    y_hat_I: TwoComplex
    f_z: BranchedMap | None         # Y -> y_hat
    g_z: BranchedMap | None         # y_hat -> X
    chi_y: int
    chi_y_hat: int
    chi_y_hat_I: int
    degenerate: bool = False
    space: object = None
    cell_map: dict = field(default_factory=dict)    # skeleton cell of Y -> skeleton cell of y_hat


def one_relator_pushout(f: BranchedMap) -> PushoutResult:
    """The maximal one-relator complex through which ``f`` factors, and its folded form."""
    f.check()
    x, y = f.codomain, f.domain
    if len(x.faces) != 1:
        raise DomainError("the target must have exactly one face")
    if not y.faces:
        folded, _ = fold(f.skeleton)
        yi = TwoComplex(folded.domain, {})
        return PushoutResult(y, yi, None, None, y.euler_characteristic(), y.euler_characteristic(),
                             yi.euler_characteristic(), degenerate=True)
    inst = adjunction_data(f)
    space = build(inst)
    gu = space.gamma_u
    (xf, xpath), = x.faces.items()
    face = tuple((space.m[("S", ("e", i))][1], s) for i, (_, s) in enumerate(xpath))
    y_hat = TwoComplex(gu, {0: face})
    cell_map = {}
    for v in y.skeleton.vertices:
        cell_map[("v", v)] = space.m[("G", ("v", v))]
    for e in y.skeleton.edges:
        cell_map[("e", e)] = space.m[("G", ("e", e))]
    fz_sk = GraphMorphism(y.skeleton, gu, {v: cell_map[("v", v)][1] for v in y.skeleton.vertices},
                          {e: cell_map[("e", e)][1] for e in y.skeleton.edges})
    f_z = BranchedMap(y, y_hat, fz_sk, {g: (0, off, n) for g, (_, off, n) in f.faces.items()})
    g_z = BranchedMap(y_hat, x, space.l, {0: (xf, 0, 1)})
    fi = space.fold_map
    y_hat_I = TwoComplex(fi.codomain, {0: tuple((fi.emap[e], s) for e, s in face)})
    res = PushoutResult(y_hat, y_hat_I, f_z, g_z, y.euler_characteristic(), y_hat.euler_characteristic(),
                        y_hat_I.euler_characteristic(), space=space, cell_map=cell_map)
    if res.chi_y_hat_I < res.chi_y_hat:
        raise InvariantViolation("folding the pushout skeleton decreased chi")
    return res


# -- the poset oracle ---------------------------------------------------------------


def _rgs(items: Sequence, compatible) -> Iterable[dict]:
    """All partitions of ``items`` (as item -> block index) whose blocks are pairwise ``compatible``."""
    n = len(items)
    assign: dict = {}
    blocks: list = []

    def rec(i):
        if i == n:
            yield dict(assign)
            return
        x = items[i]
        for b, members in enumerate(blocks):
            if compatible(members[0], x):
                members.append(x)
                assign[x] = b
                yield from rec(i + 1)
                members.pop()
        blocks.append([x])
        assign[x] = len(blocks) - 1
        yield from rec(i + 1)
        blocks.pop()
        del assign[x]

    yield from rec(0)


def pushout_objects(f: BranchedMap) -> list[tuple[dict, dict]]:
    """Every object of the poset of one-relator quotients of ``Y`` over ``X``, by brute force.

    An object is a pair of partitions of the vertices and edges of the
    skeleton of Y forming a quotient graph in which every face boundary
    wraps ``n`` times around one closed path over the face of X.  Edge
    partitions are enumerated outright; vertex partitions as coarsenings of
    the blocks the edge partition forces.
    """
    y = f.domain
    sk = y.skeleton
    (xf, xpath), = f.codomain.faces.items()
    L = len(xpath)
    at_edge: dict = {}
    at_vertex: dict = {}
    for g, p in y.faces.items():
        off = f.faces[g][1]
        for i, (e, s) in enumerate(p):
            at_edge.setdefault((i + off) % L, []).append(e)
            at_vertex.setdefault((i + off) % L, []).append(_step_start(sk, (e, s)))
    edges, verts = list(sk.edges), list(sk.vertices)
    out = []
    for ep in _rgs(edges, lambda a, b: f.skeleton.emap[a] == f.skeleton.emap[b]):
        if any(len({ep[e] for e in es}) != 1 for es in at_edge.values()):
            continue
        uf = UnionFind(verts)
        for vs in at_vertex.values():
            for v in vs[1:]:
                uf.union(vs[0], v)
        rep: dict = {}
        for e in edges:
            r = rep.setdefault(ep[e], e)
            uf.union(sk.src(r), sk.src(e))
            uf.union(sk.dst(r), sk.dst(e))
        blocks = list(uf.classes().values())
        if any(len({f.skeleton.vmap[v] for v in b}) != 1 for b in blocks):
            continue
        for bp in _rgs(list(range(len(blocks))),
                       lambda i, j: f.skeleton.vmap[blocks[i][0]] == f.skeleton.vmap[blocks[j][0]]):
            out.append(({v: bp[i] for i, b in enumerate(blocks) for v in b}, dict(ep)))
    return out


def _refines(a: dict, b: dict) -> bool:
    """Whether partition ``a`` is finer than (or equal to) ``b``."""
    img: dict = {}
    for x, blk in a.items():
        if img.setdefault(blk, b[x]) != b[x]:
            return False
    return True


def _same_partition(a: dict, b: dict) -> bool:
    return _refines(a, b) and _refines(b, a)


def poset_maximum(f: BranchedMap) -> tuple[int, tuple | None]:
    """The number of objects, and the object every other object is a quotient of, if any."""
    objs = pushout_objects(f)
    if not objs:
        return 0, None
    top = max(objs, key=lambda o: (len(set(o[0].values())) + len(set(o[1].values()))))
    if all(_refines(top[0], o[0]) and _refines(top[1], o[1]) for o in objs):
        return len(objs), top
    return len(objs), None


def pushout_partition(res: PushoutResult) -> tuple[dict, dict]:
    vp = {v: c[1] for (k, v), c in res.cell_map.items() if k == "v"}
    ep = {e: c[1] for (k, e), c in res.cell_map.items() if k == "e"}
    return vp, ep


def matches_poset_oracle(f: BranchedMap, res: PushoutResult | None = None) -> bool:
    res = res or one_relator_pushout(f)
    _, top = poset_maximum(f)
    if top is None:
        return False
    vp, ep = pushout_partition(res)
    return _same_partition(top[0], vp) and _same_partition(top[1], ep)


# -- the pushout inequality -------------------------------------------------------------


@dataclass
class PushoutInequalityReport:
    hypotheses: dict
    chi_y: int = 0
    branching: int = 0
    chi_y_hat: int = 0
    chi_y_hat_I: int = 0
    boundary_cover: dict = field(default_factory=dict)   # edge of X in w(S) -> boundary edges over it
    two_to_one: bool = True
    weakly_dependent: bool = False
    asserted: bool = False
    holds: bool | None = None
    immersion_case: bool = False
    root: Word | None = None

    @property
    def lhs(self) -> int:
        return self.chi_y + self.branching

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypotheses.values())

    def summary(self) -> str:
        if not self.hypotheses_ok:
            failed = ", ".join(k for k, v in self.hypotheses.items() if not v)
            extra = f"; pass to the root {format_word(self.root)}" if self.root else ""
            return f"hypothesis failure: {failed}{extra}"
        rel = f"{self.lhs} <= {self.chi_y_hat}"
        if not self.asserted:
            return f"boundary at least two-to-one: {rel} not asserted"
        return f"{rel} {'OK' if self.holds else 'VIOLATED'}"

    def to_json(self) -> dict:
        return {"hypotheses": dict(self.hypotheses), "chi_Y": self.chi_y, "branching": self.branching,
                "lhs": self.lhs, "chi_Y_hat": self.chi_y_hat, "chi_Y_hat_I": self.chi_y_hat_I,
                "boundary_cover": {str(k): v for k, v in self.boundary_cover.items()},
                "two_to_one": self.two_to_one, "weakly_dependent": self.weakly_dependent,
                "asserted": self.asserted, "holds": self.holds, "immersion_case": self.immersion_case}


def pushout_inequality(f: BranchedMap) -> PushoutInequalityReport:
    """Check ``chi(Y) + sum(n_e - 1) <= chi(Y_hat)`` when the boundary is not two-to-one onto ``w(S)``."""
    x, y = f.codomain, f.domain
    rep = PushoutInequalityReport({
        "target has one face": len(x.faces) == 1,
        "Y connected": y.is_connected(),
        "branched map": f.is_branched(),
    })
    if rep.hypotheses["target has one face"]:
        (xf, xpath), = x.faces.items()
        s_graph, s_v, s_e = _circle_over(xpath, x.skeleton)
        rep.hypotheses["relator indivisible"] = is_indivisible_loop(GraphMorphism(s_graph, x.skeleton, s_v, s_e))
        if not rep.hypotheses["relator indivisible"] and all(isinstance(x.skeleton.label(e), int)
                                                             for e, _ in xpath):
            rep.root = maximal_root(x.face_word(xf)).root
    if not rep.hypotheses_ok:
        return rep
    res = one_relator_pushout(f)
    rep.chi_y, rep.branching = res.chi_y, f.branching()
    rep.chi_y_hat, rep.chi_y_hat_I = res.chi_y_hat, res.chi_y_hat_I
    if rep.chi_y + rep.branching != y.skeleton.euler_characteristic() + f.deg_sigma():
        raise InvariantViolation("face bookkeeping: chi(Y) + sum(n_e - 1) != chi(Y^(1)) + deg(sigma)")
    bnd = boundary_edges(y)
    (xf, xpath), = x.faces.items()
    cover = {e: 0 for e, _ in xpath}
    for e in bnd:
        img = f.skeleton.emap[e]
        if img in cover:
            cover[img] += 1
    rep.boundary_cover = dict(sorted(cover.items(), key=lambda kv: repr(kv[0])))
    rep.two_to_one = all(c >= 2 for c in cover.values())
    if res.space is not None:
        if not check_diagrammatic_irreducibility(res.space.instance, res.space):
            raise InvariantViolation("a branched map gave a space that is not diagrammatically irreducible")
        rep.weakly_dependent = classify_dependence(res.space).weakly_dependent
    else:
        rep.weakly_dependent = True
    if not rep.two_to_one or rep.weakly_dependent:
        rep.asserted = True
        rep.holds = rep.lhs <= rep.chi_y_hat
        if not rep.holds:
            raise InvariantViolation(f"pushout inequality fails: {rep.lhs} > {rep.chi_y_hat}")
    if f.is_immersion() and not free_faces(y):
        rep.immersion_case = True
        if y.euler_characteristic() > rep.chi_y_hat:
            raise InvariantViolation("an immersion without free faces has chi(Y) > chi(Y_hat)")
    return rep


# -- classification of immersions ---------------------------------------------------


@dataclass
class Classification:
    kind: str                       # reduces-to-graph | factors-through-Q | boundary-case-violation | precondition-failure
    detail: str = ""
    subgroup_index: int | None = None
    rank: int | None = None
    pushout: PushoutResult | None = None
    nielsen: NielsenResult | None = None

    def __str__(self):
        if self.kind == "factors-through-Q":
            return f"factors-through-Q{self.subgroup_index + 1}"
        return self.kind + (f" ({self.detail})" if self.detail else "")


def _factor_unbased(src: LabeledGraph, dst: LabeledGraph):
    if not src.vertices:
        return None
    v0 = src.vertices[0]
    for u in dst.vertices:
        m = find_morphism(src.with_base(v0), dst.with_base(u))
        if m is not None:
            return m
    return None


def classify_immersion(f: BranchedMap, pr) -> Classification:
    """Run the negative-immersions dichotomy on an immersion ``Y -> X``.

    ``pr`` is the primitivity-rank report of the relator of ``X``.
    """
    y = f.domain
    pi = pr.pi
    if not f.is_immersion():
        return Classification("precondition-failure", "the map is not an immersion")
    if not y.is_connected():
        return Classification("precondition-failure", "Y is not connected")
    if free_faces(y):
        return Classification("precondition-failure", "Y has free faces")
    if any(y.skeleton.valence(v) < 2 for v in y.skeleton.vertices) and y.skeleton.edges:
        return Classification("precondition-failure", "the 1-skeleton of Y is not a core graph")
    if pi != float("inf") and y.euler_characteristic() < 2 - pi:
        return Classification("precondition-failure", f"chi(Y) = {y.euler_characteristic()} < 2 - pi(w)")
    if not y.faces:
        return Classification("reduces-to-graph", "Y is a graph")
    res = one_relator_pushout(f)
    yi = res.y_hat_I
    rank = 1 - yi.skeleton.euler_characteristic()
    nr = nielsen_reduces_to_graph(yi)
    if rank < pi:
        if not nr:
            return Classification("boundary-case-violation",
                                  f"rank {rank} < pi(w) but the folded pushout does not reduce",
                                  rank=rank, pushout=res, nielsen=nr)
        return Classification("reduces-to-graph", "via the folded pushout", rank=rank, pushout=res, nielsen=nr)
    if rank > pi:
        return Classification("boundary-case-violation", f"folded pushout has rank {rank} > pi(w)",
                              rank=rank, pushout=res, nielsen=nr)
    if nr:
        return Classification("reduces-to-graph", "w is primitive in the folded pushout",
                              rank=rank, pushout=res, nielsen=nr)
    for i, sub in enumerate(pr.w_subgroups):
        if _factor_unbased(yi.skeleton, sub.graph) is not None:
            return Classification("factors-through-Q", f"through the w-subgroup {sub.generators_text()}",
                                  subgroup_index=i, rank=rank, pushout=res, nielsen=nr)
    return Classification("boundary-case-violation", "no w-subgroup receives the folded pushout",
                          rank=rank, pushout=res, nielsen=nr)


# -- constructions used by the test harness ------------------------------------------


def covering_complex(x: TwoComplex, perms: Sequence[Sequence[int]]) -> tuple[TwoComplex, BranchedMap]:
    """The cover of a complex over a rose given by one permutation of sheets per generator.

    Each face lifts from every sheet; a lift that closes only after ``n``
    turns gives a face of degree ``n`` (so the map is branched, not a covering,
    unless every lift closes at once).
    """
    d = len(perms[0])
    rank = len(perms)
    edges = {}
    for k in range(1, rank + 1):
        for i in range(d):
            edges[(k - 1) * d + i] = (i, perms[k - 1][i], k)
    sk = LabeledGraph(range(d), edges)
    table = {}
    for e, (s, t, lab) in edges.items():
        table[(s, lab)] = (e, 1, t)
        table[(t, -lab)] = (e, -1, s)
    faces, fmap, seen = {}, {}, set()
    for xf in x.faces:
        word = x.face_word(xf)
        for start in range(d):
            if (xf, start) in seen:
                continue
            v, path, n = start, [], 0
            while True:
                for letter in word:
                    e, s, v = table[(v, letter)]
                    path.append((e, s))
                n += 1
                seen.add((xf, v))
                if v == start:
                    break
            fid = len(faces)
            faces[fid] = tuple(path)
            fmap[fid] = (xf, 0, n)
    y = TwoComplex(sk, faces)
    m = infer_map(y, x)
    m.faces = fmap
    return y, m


def transitive(perms: Sequence[Sequence[int]]) -> bool:
    d = len(perms[0])
    seen, queue = {0}, deque([0])
    while queue:
        v = queue.popleft()
        for p in perms:
            for u in (p[v], p.index(v)):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return len(seen) == d


def quotient_complex(y: TwoComplex, vertex_pairs=(), edge_pairs=()) -> TwoComplex:
    sk, q = quotient(y.skeleton, vertex_pairs, edge_pairs)
    return TwoComplex(sk, {g: tuple((q.emap[e], s) for e, s in p) for g, p in y.faces.items()})


def disjoint_faces(word: Sequence[int], degrees: Sequence[int]) -> TwoComplex:
    """One circle per degree ``n`` reading ``word**n``, with the circles disjoint."""
    verts, edges, faces = [], {}, {}
    off = 0
    for j, n in enumerate(degrees):
        w = tuple(word) * n
        k = len(w)
        for i, x in enumerate(w):
            a, b = off + i, off + (i + 1) % k
            edges[off + i] = (a, b, x) if x > 0 else (b, a, -x)
        verts += range(off, off + k)
        faces[j] = tuple((off + i, 1 if x > 0 else -1) for i, x in enumerate(w))
        off += k
    return TwoComplex(LabeledGraph(verts, edges), faces)


def random_branched_map(rng: random.Random, word: Sequence[int], rank: int, max_faces: int = 3,
                        max_degree: int = 3, merges: int | None = None) -> BranchedMap:
    """A random connected branched map to the presentation complex of ``word``.

    Starts from disjoint face circles and identifies random same-label edge
    pairs while the link condition survives, then joins components at
    vertices.
    """
    x = presentation_complex([tuple(word)], rank)
    degrees = [rng.randint(1, max_degree) for _ in range(rng.randint(1, max_faces))]
    y = disjoint_faces(word, degrees)
    f = _offset_map(y, x)
    tries = merges if merges is not None else rng.randint(0, 3 * len(y.skeleton.edges))
    for _ in range(tries):
        es = list(y.skeleton.edges)
        a, b = rng.sample(es, 2) if len(es) > 1 else (es[0], es[0])
        if a == b or y.skeleton.label(a) != y.skeleton.label(b):
            continue
        y2 = quotient_complex(y, edge_pairs=[(a, b)])
        f2 = _offset_map(y2, x, f.faces)
        if f2.link_clash() is None:
            y, f = y2, f2
    comps = components(y.skeleton)
    while len(comps) > 1:
        a, b = rng.choice(comps[0]), rng.choice(comps[1])
        y = quotient_complex(y, vertex_pairs=[(a, b)])
        f = _offset_map(y, x, f.faces)
        comps = components(y.skeleton)
    return f


def _offset_map(y: TwoComplex, x: TwoComplex, faces: dict | None = None) -> BranchedMap:
    v0 = x.skeleton.vertices[0]
    sk = GraphMorphism(y.skeleton, x.skeleton, {v: v0 for v in y.skeleton.vertices},
                       {e: y.skeleton.label(e) for e in y.skeleton.edges})
    if faces is None:
        L = len(next(iter(x.faces.values())))
        faces = {g: (0, 0, len(p) // L) for g, p in y.faces.items()}
    return BranchedMap(y, x, sk, dict(faces))


def random_immersed_complex(rng: random.Random, word: Sequence[int], rank: int, max_faces: int = 3,
                            merges: int | None = None, collapse_free: bool = True) -> BranchedMap:
    """A random immersion into the presentation complex of ``word``.

    Face circles are glued at random vertices and the result is folded; by
    construction the folded complex immerses.  Unless
    ``collapse_free`` is false, free faces are then collapsed and hanging
    trees removed, which keeps it immersed.
    """
    x = presentation_complex([tuple(word)], rank)
    y = disjoint_faces(word, [1] * rng.randint(1, max_faces))
    verts = list(y.skeleton.vertices)
    pairs = [tuple(rng.sample(verts, 2)) for _ in range(merges if merges is not None else rng.randint(0, 4))
             if len(verts) > 1]
    comps = components(y.skeleton)
    for a, b in zip(comps, comps[1:]):
        pairs.append((rng.choice(a), rng.choice(b)))
    y = quotient_complex(y, vertex_pairs=pairs)
    z = fold_complex_map(_offset_map(y, x)).z
    if collapse_free:
        z, _ = collapse_all(z)
        z = _core_complex(z)
    return _offset_map(z, x, {g: (0, 0, 1) for g in z.faces}) if z.faces else _offset_map(z, x, {})


def _core_complex(y: TwoComplex) -> TwoComplex:
    sk = core(LabeledGraph(y.skeleton.vertices, y.skeleton.edges))
    return TwoComplex(sk, y.faces)


def random_immersed_graph(rng: random.Random, rank: int, length: int) -> TwoComplex:
    """A cycle reading a random cyclically reduced word: an immersed core graph with ``chi = 0``."""
    from .adjunction import random_word
    w = random_word(rng, length, rank)
    y = disjoint_faces(w, [1])
    return TwoComplex(y.skeleton, {})


def find_relator_with_pi(target: int, rank: int = 3, max_length: int = 12):
    """The first word class (by length, then generation order) with the given primitivity rank."""
    from .prank import primitivity_rank
    from .wordclasses import word_classes
    for n in range(1, max_length + 1):
        for w in word_classes(n, rank):
            if len({abs(x) for x in w}) < rank:
                continue
            if primitivity_rank(w, rank).pi == target:
                return w
    return None


# -- disk diagrams -------------------------------------------------------------------


@dataclass
class DiskDiagram:
    complex: TwoComplex
    boundary: list                  # boundary cycle as (edge, sign)
    map: BranchedMap


def random_disk_diagram(rng: random.Random, word: Sequence[int], rank: int, faces: int,
                        attempts: int = 50) -> DiskDiagram:
    """Grow a reduced disk diagram over ``<rank | word>`` face by face.

    Each new face is glued along a proper arc of the current boundary and
    reads a rotation of the relator or of its inverse; a gluing is kept only
    if the map on links stays an immersion, so no two faces cancel.
    """
    word = tuple(word)
    x = presentation_complex([word], rank)
    L = len(word)
    inv = tuple(-c for c in reversed(word))
    rots = {w[r:] + w[:r] for w in (word, inv) for r in range(L)}
    y = disjoint_faces(word, [1])
    f = _offset_map(y, x)
    boundary = list(y.faces[0])
    next_v = max(y.skeleton.vertices) + 1
    next_e = max(y.skeleton.edges) + 1
    for _ in range(faces - 1):
        for _ in range(attempts):
            n = len(boundary)
            k = rng.randint(1, min(L - 1, n - 1))
            j = rng.randrange(n)
            arc = [boundary[(j + t) % n] for t in range(k)]
            back = [(e, -s) for e, s in reversed(arc)]
            need = tuple(y.skeleton.label(e) * s for e, s in back)
            options = sorted(r for r in rots if r[:k] == need)
            if not options:
                continue
            read = rng.choice(options)
            sk = y.skeleton
            a_vertex, b_vertex = _step_start(sk, arc[0]), _step_end(sk, arc[-1])
            verts, edges = list(sk.vertices), dict(sk.edges)
            steps, v, ne, nv = [], a_vertex, next_e, next_v
            for t, c in enumerate(read[k:]):
                u = b_vertex if t == L - k - 1 else nv
                if u == nv:
                    verts.append(nv)
                    nv += 1
                edges[ne] = (v, u, c) if c > 0 else (u, v, -c)
                steps.append((ne, 1 if c > 0 else -1))
                ne += 1
                v = u
            path = tuple(back + steps)
            if tuple(y.skeleton.label(e) * s if e in sk.edges else edges[e][2] * s for e, s in path) not in \
                    {word[r:] + word[:r] for r in range(L)}:
                path = tuple((e, -s) for e, s in reversed(path))
            gid = len(y.faces)
            y2 = TwoComplex(LabeledGraph(verts, edges), {**y.faces, gid: path})
            off = _face_offsets(y2.face_word(gid), word)[0][0]
            f2 = _offset_map(y2, x, {**f.faces, gid: (0, off, 1)})
            if f2.alignment_error() is None and f2.link_clash() is None:
                y, f, next_v, next_e = y2, f2, nv, ne
                boundary = steps + [boundary[(j + k + t) % n] for t in range(n - k)]
                break
    return DiskDiagram(y, boundary, f)


def boundary_covers_relator(d: DiskDiagram) -> bool:
    """Whether the free edges of the diagram map onto every edge the relator uses."""
    f = d.map
    used = {e for e, _ in next(iter(f.codomain.faces.values()))}
    image = {f.skeleton.emap[e] for e in boundary_edges(d.complex)}
    return used <= image


def closes_to_reduced_sphere(d: DiskDiagram) -> bool:
    """Whether capping the diagram with one more face would give a reduced sphere."""
    y, x = d.complex, d.map.codomain
    word = next(iter(x.faces.values()))
    bword = tuple(y.skeleton.label(e) * s for e, s in d.boundary)
    L = len(word)
    if len(bword) != L:
        return False
    cap = tuple((e, -s) for e, s in reversed(d.boundary))
    for path in (cap, tuple((e, -s) for e, s in reversed(cap))):
        faces = dict(y.faces)
        gid = len(faces)
        faces[gid] = path
        try:
            y2 = TwoComplex(y.skeleton, faces)
        except MalformedInput:
            continue
        fits = _face_offsets(y2.face_word(gid), tuple(d.map.codomain.face_word(0)))
        for off, n in fits:
            fmap = dict(d.map.faces)
            fmap[gid] = (0, off, n)
            f2 = BranchedMap(y2, x, d.map.skeleton, fmap)
            if f2.alignment_error() is None and f2.link_clash() is None:
                return True
    return False


# -- complex files -------------------------------------------------------------------


def _step_token(e, s) -> str:
    t = _token(e)
    return t if s == 1 else "-" + t


def _parse_step(tok: str) -> tuple:
    """``id`` or ``-id``; edge ids in complex files are therefore never negative integers."""
    if tok.startswith("-"):
        return _parse_id(tok[1:]), -1
    return _parse_id(tok), 1


def complex_lines(y: TwoComplex) -> list[str]:
    lines = graph_lines(y.skeleton)
    for g, p in y.faces.items():
        lines.append(f"face {_token(g)} " + " ".join(_step_token(e, s) for e, s in p))
    return lines


def complex_to_text(y: TwoComplex) -> str:
    return "\n".join(complex_lines(y)) + "\n"


def parse_complex_lines(lines: Iterable[str]) -> TwoComplex:
    glines, faces = [], {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "face":
            if len(parts) < 3:
                raise MalformedInput(f"line {lineno}: a face needs an id and a path")
            fid = _parse_id(parts[1])
            if fid in faces:
                raise MalformedInput(f"line {lineno}: duplicate face id {fid!r}")
            faces[fid] = tuple(_parse_step(t) for t in parts[2:])
        else:
            glines.append(line)
    return TwoComplex(parse_graph_lines(glines), faces)


def complex_from_text(text: str) -> TwoComplex:
    return parse_complex_lines(text.splitlines())


def map_to_text(f: BranchedMap) -> str:
    """``complex Y`` and ``complex X`` blocks, then ``map`` lines for vertices, edges and faces."""
    lines = ["complex Y"] + ["  " + ln for ln in complex_lines(f.domain)]
    lines += ["complex X"] + ["  " + ln for ln in complex_lines(f.codomain)]
    for v in f.domain.skeleton.vertices:
        lines.append(f"map v {_token(v)} -> {_token(f.skeleton.vmap[v])}")
    for e in f.domain.skeleton.edges:
        lines.append(f"map e {_token(e)} -> {_token(f.skeleton.emap[e])}")
    for g, (t, off, n) in f.faces.items():
        lines.append(f"map f {_token(g)} -> {_token(t)} {off} {n}")
    return "\n".join(lines) + "\n"


def map_from_text(text: str) -> BranchedMap:
    """Parse a map file; missing ``map`` lines are inferred from labels when X lies over a rose."""
    blocks: dict = {}
    vm, em, fm = {}, {}, {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "complex":
            if len(parts) != 2 or parts[1] not in ("Y", "X"):
                raise MalformedInput(f"line {lineno}: expected 'complex Y' or 'complex X'")
            current = parts[1]
            blocks[current] = []
        elif parts[0] == "map":
            current = None
            if len(parts) >= 5 and parts[1] in ("v", "e") and parts[3] == "->" and len(parts) == 5:
                (vm if parts[1] == "v" else em)[_parse_id(parts[2])] = _parse_id(parts[4])
            elif len(parts) == 7 and parts[1] == "f" and parts[3] == "->":
                fm[_parse_id(parts[2])] = (_parse_id(parts[4]), int(parts[5]), int(parts[6]))
            else:
                raise MalformedInput(f"line {lineno}: cannot parse {raw.strip()!r}")
        elif current is not None:
            blocks[current].append(line)
        else:
            raise MalformedInput(f"line {lineno}: {raw.strip()!r} outside any block")
    if set(blocks) != {"Y", "X"}:
        raise MalformedInput("a map file needs a 'complex Y' and a 'complex X' block")
    y = parse_complex_lines(blocks["Y"])
    x = parse_complex_lines(blocks["X"])
    if not vm and not em and not fm:
        return infer_map(y, x)
    f = BranchedMap(y, x, GraphMorphism(y.skeleton, x.skeleton, vm, em), fm)
    err = f.alignment_error()
    if err:
        raise MalformedInput(err)
    return f


def word_complex(text: str, rank: int | None = None) -> TwoComplex:
    """The presentation complex of a relator given in ASCII."""
    return presentation_complex([parse_word(text)], rank)


# -- exhaustive small instances ---------------------------------------------------------


def _degree_tuples(max_faces: int, budget: int, L: int) -> Iterable[tuple]:
    """Non-increasing degree tuples with at most ``max_faces`` entries and total length at most ``budget``."""
    def rec(prefix, cap, room):
        if prefix:
            yield tuple(prefix)
        if len(prefix) == max_faces:
            return
        for n in range(min(cap, room // L), 0, -1):
            yield from rec(prefix + [n], n, room - n * L)
    yield from rec([], budget, budget)


def small_branched_maps(word: Sequence[int], rank: int | None = None, max_faces: int = 3, max_edges: int = 6,
                        max_circle_edges: int = 8) -> Iterable[BranchedMap]:
    """Every connected branched map to ``<rank | word>`` obtained from disjoint face circles
    by identifying edges, with at most ``max_edges`` edges left.

    Quotients with two components are also joined at every pair of vertices.
    Identical results (same cells and face data) are produced once.
    """
    word = tuple(word)
    x = presentation_complex([word], rank)
    L = len(word)
    seen = set()
    for degrees in _degree_tuples(max_faces, max_circle_edges, L):
        y0 = disjoint_faces(word, degrees)
        f0 = _offset_map(y0, x)
        sk = y0.skeleton
        for ep in _rgs(list(sk.edges), lambda a, b: sk.label(a) == sk.label(b)):
            nblocks = len(set(ep.values()))
            if nblocks > max_edges:
                continue
            rep: dict = {}
            pairs = [(rep.setdefault(b, e), e) for e, b in ep.items() if rep.get(b, e) != e]
            y = quotient_complex(y0, edge_pairs=pairs)
            comps = components(y.skeleton)
            if len(comps) > 2 or _offset_map(y, x, f0.faces).link_clash() is not None:
                continue
            cands = [y] if len(comps) == 1 else [quotient_complex(y, vertex_pairs=[(u, v)])
                                                  for u in comps[0] for v in comps[1]]
            for yc in cands:
                f = _offset_map(yc, x, f0.faces)
                if f.link_clash() is not None:
                    continue
                key = (tuple(sorted(yc.skeleton.vertices, key=repr)),
                       tuple(sorted(yc.skeleton.edges.items(), key=repr)), tuple(sorted(yc.faces.items(), key=repr)))
                if key in seen:
                    continue
                seen.add(key)
                yield f


# -- fuzz drivers --------------------------------------------------------------------

FUZZ_RELATORS = ((1, 2, -1, -2), (1, 1, 2), (1, 2, 1, -2), (1, 1, 2, 2, -1, -2), (1, 2, 2, 1, -2, -2),
                 (1, 1, 2, 2, 3, 3))


@dataclass
class PushoutFuzzSummary:
    trials: int
    asserted: int
    violations: list
    equality: int


def fuzz_pushout(seed: int, trials: int, relators: Sequence[Sequence[int]] = FUZZ_RELATORS) -> PushoutFuzzSummary:
    """Run :func:`pushout_inequality` on random branched maps; trial ``t`` is seeded by ``(seed, t)``."""
    asserted, eq, bad = 0, 0, []
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        w = tuple(rng.choice(relators))
        try:
            rep = pushout_inequality(random_branched_map(rng, w, max(abs(c) for c in w)))
        except InvariantViolation:
            bad.append(t)
            continue
        if rep.asserted:
            asserted += 1
            eq += rep.lhs == rep.chi_y_hat
    return PushoutFuzzSummary(trials, asserted, bad, eq)


@dataclass
class ReductionFuzzSummary:
    trials: int
    nonnegative: int
    with_faces: int
    reduced: int
    failures: list


def fuzz_reduction(seed: int, trials: int, word: Sequence[int], rank: int, max_faces: int = 4) -> ReductionFuzzSummary:
    """Random immersions into ``<rank | word>``: count those with ``chi >= 0`` that Nielsen reduce to graphs."""
    nonneg = faces = ok = 0
    bad = []
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        f = random_immersed_complex(rng, word, rank, max_faces=max_faces, collapse_free=False)
        y = f.domain
        if not f.is_immersion():
            raise InvariantViolation(f"trial {t}: the harness produced a non-immersion")
        if y.euler_characteristic() < 0:
            continue
        nonneg += 1
        faces += bool(y.faces)
        if nielsen_reduces_to_graph(y):
            ok += 1
        else:
            bad.append(t)
    return ReductionFuzzSummary(trials, nonneg, faces, ok, bad)
