"""Directed graphs, morphisms, Stallings folding and fibre products.

A :class:`LabeledGraph` carries an optional label per edge.  When the labels
are generator indices ``1..n`` the graph comes with an implicit morphism to
the rose with ``n`` petals, which is the situation for subgroup graphs.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .words import MalformedInput, Word, letter_name, reduce

Vertex = Hashable
EdgeId = Hashable


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class LabeledGraph:
    """Finite directed graph ``(V, E, iota, tau)`` with optional edge labels.

    ``edges`` maps an edge id to ``(src, dst, label)``.  Instances are treated
    as immutable; every operation returns a new graph.
    """

    __slots__ = ("vertices", "edges", "base", "_inc")

    def __init__(self, vertices: Iterable[Vertex], edges: Mapping[EdgeId, tuple] | Iterable = (),
                 base: Vertex | None = None):
        self.vertices = tuple(vertices)
        if isinstance(edges, Mapping):
            items = edges.items()
        else:
            items = enumerate(edges)
        self.edges = {}
        for e, spec in items:
            if len(spec) == 2:
                spec = (spec[0], spec[1], None)
            self.edges[e] = tuple(spec)
        self.base = base
        self._inc = None
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise MalformedInput("duplicate vertex ids")
        for e, (s, d, _) in self.edges.items():
            if s not in vset or d not in vset:
                raise MalformedInput(f"edge {e!r} has an endpoint outside the vertex set")
        if base is not None and base not in vset:
            raise MalformedInput(f"basepoint {base!r} is not a vertex")

    def __repr__(self):
        return f"LabeledGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, base={self.base!r})"

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices) and self.edges == other.edges
                and self.base == other.base)

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(self.edges.items()), self.base))

    def src(self, e):
        return self.edges[e][0]

    def dst(self, e):
        return self.edges[e][1]

    def label(self, e):
        return self.edges[e][2]

    def incidence(self) -> dict:
        """Vertex -> list of ``(edge, end)`` with end ``+1`` at the source, ``-1`` at the target."""
        if self._inc is None:
            inc = {v: [] for v in self.vertices}
            for e, (s, d, _) in self.edges.items():
                inc[s].append((e, 1))
                inc[d].append((e, -1))
            self._inc = inc
        return self._inc

    def valence(self, v) -> int:
        return len(self.incidence()[v])

    def with_base(self, base) -> "LabeledGraph":
        return LabeledGraph(self.vertices, self.edges, base)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def is_immersed(self) -> bool:
        return immersion_clash(self) is None

    def relabel(self, vmap: Mapping, emap: Mapping | None = None) -> "LabeledGraph":
        emap = emap or {e: e for e in self.edges}
        return LabeledGraph((vmap[v] for v in self.vertices),
                            {emap[e]: (vmap[s], vmap[d], lab) for e, (s, d, lab) in self.edges.items()},
                            None if self.base is None else vmap[self.base])

    def subgraph(self, vertices: Iterable, edges: Iterable) -> "LabeledGraph":
        vs = set(vertices)
        base = self.base if self.base in vs else None
        return LabeledGraph([v for v in self.vertices if v in vs],
                            {e: self.edges[e] for e in self.edges if e in set(edges)}, base)

    def disjoint_union(self, other: "LabeledGraph", tags=(0, 1)) -> "LabeledGraph":
        a, b = tags
        vs = [(a, v) for v in self.vertices] + [(b, v) for v in other.vertices]
        es = {(a, e): ((a, s), (a, d), lab) for e, (s, d, lab) in self.edges.items()}
        es.update({(b, e): ((b, s), (b, d), lab) for e, (s, d, lab) in other.edges.items()})
        return LabeledGraph(vs, es)


@dataclass
class GraphMorphism:
    """Cell map between graphs commuting with the incidence maps."""

    domain: LabeledGraph
    codomain: LabeledGraph
    vmap: dict
    emap: dict

    def check(self) -> None:
        for v in self.domain.vertices:
            if self.vmap.get(v) not in set(self.codomain.vertices):
                raise MalformedInput(f"vertex {v!r} has no image in the codomain")
        for e, (s, d, _) in self.domain.edges.items():
            f = self.emap.get(e)
            if f not in self.codomain.edges:
                raise MalformedInput(f"edge {e!r} has no image in the codomain")
            fs, fd, _ = self.codomain.edges[f]
            if self.vmap[s] != fs or self.vmap[d] != fd:
                raise MalformedInput(f"edge {e!r}: map does not commute with iota/tau")
        if self.domain.base is not None and self.codomain.base is not None:
            if self.vmap[self.domain.base] != self.codomain.base:
                raise MalformedInput("basepoint not preserved")

    def __call__(self, cell):
        kind, x = cell
        return (kind, self.vmap[x] if kind == "v" else self.emap[x])

    def compose(self, after: "GraphMorphism") -> "GraphMorphism":
        """``after o self``."""
        return GraphMorphism(self.domain, after.codomain,
                             {v: after.vmap[x] for v, x in self.vmap.items()},
                             {e: after.emap[x] for e, x in self.emap.items()})

    def is_immersion(self) -> bool:
        return morphism_clash(self) is None

    def is_surjective(self) -> bool:
        return (set(self.vmap.values()) >= set(self.codomain.vertices)
                and set(self.emap.values()) >= set(self.codomain.edges))

    def as_labeled(self) -> LabeledGraph:
        """The domain, labelled by the image edges."""
        d = self.domain
        return LabeledGraph(d.vertices, {e: (s, t, self.emap[e]) for e, (s, t, _) in d.edges.items()}, d.base)


def identity(g: LabeledGraph) -> GraphMorphism:
    return GraphMorphism(g, g, {v: v for v in g.vertices}, {e: e for e in g.edges})


def rose(rank: int) -> LabeledGraph:
    return LabeledGraph([0], {k: (0, 0, k) for k in range(1, rank + 1)}, base=0)


def to_rose(g: LabeledGraph, rank: int | None = None) -> GraphMorphism:
    labels = [lab for _, _, lab in g.edges.values()]
    if any(not isinstance(lab, int) or lab < 1 for lab in labels):
        raise MalformedInput("rose labels must be positive generator indices")
    rank = rank or max(labels, default=1)
    return GraphMorphism(g, rose(rank), {v: 0 for v in g.vertices}, {e: g.label(e) for e in g.edges})


def immersion_clash(g: LabeledGraph):
    """A pair of distinct edges sharing a label and an endpoint role, or ``None``."""
    seen = {}
    for e, (s, d, lab) in g.edges.items():
        for key in ((s, lab, 1), (d, lab, -1)):
            if key in seen:
                return seen[key], e
            seen[key] = e
    return None


def morphism_clash(f: GraphMorphism):
    seen = {}
    for e, (s, d, _) in f.domain.edges.items():
        for key in ((s, f.emap[e], 1), (d, f.emap[e], -1)):
            if key in seen:
                return seen[key], e
            seen[key] = e
    return None


# -- folding -------------------------------------------------------------


def fold(g: LabeledGraph | GraphMorphism) -> tuple:
    """Stallings-fold ``g`` to an immersion.

    Accepts a labelled graph (labels name target edges) or a morphism.
    Returns ``(folded, quotient)``: for a labelled graph ``folded`` is a
    labelled graph, for a morphism it is the folded morphism.  ``quotient``
    is the surjection from the input graph onto the folded one.
    """
    if isinstance(g, GraphMorphism):
        lab = g.as_labeled()
        folded, q = fold(lab)
        down = GraphMorphism(folded, g.codomain,
                             {q.vmap[v]: g.vmap[v] for v in lab.vertices},
                             {q.emap[e]: g.emap[e] for e in lab.edges})
        q = GraphMorphism(g.domain, folded, q.vmap, q.emap)
        return down, q

    vuf = UnionFind(g.vertices)
    euf = UnionFind(g.edges)
    adj = {v: list(inc) for v, inc in g.incidence().items()}
    pending = deque(g.vertices)
    while pending:
        r = vuf.find(pending.popleft())
        while True:
            r = vuf.find(r)
            slots = {}
            merged = False
            for e, end in adj[r]:
                e = euf.find(e)
                s, d, lab = g.edges[e]
                if end == 1 and vuf.find(s) != r or end == -1 and vuf.find(d) != r:
                    continue
                key = (lab, end)
                f = slots.get(key)
                if f is None:
                    slots[key] = e
                    continue
                if f == e:
                    continue
                euf.union(f, e)
                other_f = vuf.find(g.edges[f][1] if end == 1 else g.edges[f][0])
                other_e = vuf.find(d if end == 1 else s)
                if other_f != other_e:
                    vuf.union(other_f, other_e)   # other_f stays the root
                    adj[other_f] = adj[other_f] + adj.pop(other_e)
                    pending.append(other_f)
                merged = True
                break
            if not merged:
                break
            # compact the adjacency of r after a merge
            adj[vuf.find(r)] = _dedup_adj(adj[vuf.find(r)], euf)
    return _quotient(g, vuf, euf)


def _dedup_adj(lst, euf):
    seen = set()
    out = []
    for e, end in lst:
        key = (euf.find(e), end)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _quotient(g: LabeledGraph, vuf: UnionFind, euf: UnionFind):
    vrep = {}
    for v in g.vertices:
        vrep.setdefault(vuf.find(v), v)
    erep = {}
    for e in g.edges:
        erep.setdefault(euf.find(e), e)
    vmap = {v: vrep[vuf.find(v)] for v in g.vertices}
    emap = {e: erep[euf.find(e)] for e in g.edges}
    edges = {}
    for e in g.edges:
        if emap[e] == e:
            s, d, lab = g.edges[e]
            edges[e] = (vmap[s], vmap[d], lab)
    verts = [v for v in g.vertices if vmap[v] == v]
    base = None if g.base is None else vmap[g.base]
    folded = LabeledGraph(verts, edges, base)
    return folded, GraphMorphism(g, folded, vmap, emap)


def quotient(g: LabeledGraph, vertex_pairs: Iterable = (), edge_pairs: Iterable = ()):
    """Identify the given vertex and edge pairs (no folding beyond that)."""
    vuf = UnionFind(g.vertices)
    euf = UnionFind(g.edges)
    for a, b in vertex_pairs:
        vuf.union(a, b)
    for a, b in edge_pairs:
        euf.union(a, b)
        vuf.union(g.src(a), g.src(b))
        vuf.union(g.dst(a), g.dst(b))
    return _quotient(g, vuf, euf)


def fold_naive(g: LabeledGraph) -> LabeledGraph:
    """Repeated pairwise scan; slow but obviously a fixpoint of single folds."""
    while True:
        clash = None
        items = list(g.edges.items())
        for i, (e, (s, d, lab)) in enumerate(items):
            for f, (s2, d2, lab2) in items[i + 1:]:
                if lab == lab2 and (s == s2 or d == d2):
                    clash = (e, f)
                    break
            if clash:
                break
        if clash is None:
            return g
        g, _ = quotient(g, edge_pairs=[clash])


# -- invariants ------------------------------------------------------------


def components(g: LabeledGraph) -> list[list]:
    uf = UnionFind(g.vertices)
    for s, d, _ in g.edges.values():
        uf.union(s, d)
    return list(uf.classes().values())


def betti_euler(g: LabeledGraph) -> tuple[int, int, int]:
    """``(components, b1, chi)`` with ``b1 = components - chi``."""
    c = len(components(g))
    chi = g.euler_characteristic()
    return c, c - chi, chi


def b1(g: LabeledGraph) -> int:
    return betti_euler(g)[1]


def core(g: LabeledGraph) -> LabeledGraph:
    """Strip hanging trees: repeatedly delete non-base vertices of valence <= 1."""
    val = {v: 0 for v in g.vertices}
    for s, d, _ in g.edges.values():
        val[s] += 1
        val[d] += 1
    inc = g.incidence()
    alive_e = set(g.edges)
    alive_v = set(g.vertices)
    stack = [v for v in g.vertices if val[v] <= 1 and v != g.base]
    while stack:
        v = stack.pop()
        if v not in alive_v or val[v] > 1:
            continue
        alive_v.discard(v)
        for e, _ in inc[v]:
            if e in alive_e:
                alive_e.discard(e)
                s, d, _ = g.edges[e]
                for u in (s, d):
                    if u != v or s == d:
                        val[u] -= 1
                    if u != v and u in alive_v and val[u] <= 1 and u != g.base:
                        stack.append(u)
    return g.subgraph(alive_v, alive_e)


def is_core(g: LabeledGraph) -> bool:
    return all(g.valence(v) >= 2 or v == g.base for v in g.vertices)


# -- canonical forms -------------------------------------------------------


def _label_key(lab):
    return (0, lab) if isinstance(lab, int) else (1, str(lab))


def canonical_order(g: LabeledGraph, base=None) -> tuple[dict, dict]:
    """BFS numbering of vertices and edges from ``base``.

    Edges at each vertex are visited by ``(label, direction)``; for an
    immersion this order is independent of the vertex ids, so the
    numbering is canonical.
    """
    base = g.base if base is None else base
    inc = g.incidence()
    vnum = {base: 0}
    enum = {}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        order = sorted(inc[v], key=lambda t: (_label_key(g.label(t[0])), -t[1]))
        for e, end in order:
            if e in enum:
                continue
            enum[e] = len(enum)
            s, d, _ = g.edges[e]
            other = d if end == 1 else s
            if other not in vnum:
                vnum[other] = len(vnum)
                queue.append(other)
    return vnum, enum


def canonical_form(g: LabeledGraph, base=None) -> tuple:
    """Hashable invariant of the based component; complete for based immersions."""
    vnum, enum = canonical_order(g, base)
    edges = sorted((enum[e], vnum[s], vnum[d], _label_key(lab))
                   for e, (s, d, lab) in g.edges.items() if e in enum)
    return len(vnum), tuple(edges)


def canonical_graph(g: LabeledGraph, base=None) -> LabeledGraph:
    """The based component renumbered ``0..`` in canonical order."""
    vnum, enum = canonical_order(g, base)
    verts = sorted(vnum.values())
    edges = {enum[e]: (vnum[s], vnum[d], lab) for e, (s, d, lab) in g.edges.items() if e in enum}
    return LabeledGraph(verts, dict(sorted(edges.items())), 0)


# -- paths, lifts and bases ------------------------------------------------


class NotLiftable(Exception):
    """The loop does not lift to the graph at the basepoint."""

    def __init__(self, position: int):
        super().__init__(f"lift fails at letter {position}")
        self.position = position


class OpenLift(NotLiftable):
    """The loop lifts but the lift does not close up."""

    def __init__(self, end):
        Exception.__init__(self, f"lift ends at {end!r}, not at the basepoint")
        self.end = end


def lift_table(g: LabeledGraph) -> dict:
    """``(vertex, letter) -> (edge, sign, next vertex)`` for a rose-labelled graph."""
    table = {}
    for e, (s, d, lab) in g.edges.items():
        table[(s, lab)] = (e, 1, d)
        table[(d, -lab)] = (e, -1, s)
    return table


def lift_word(g: LabeledGraph, word: Sequence[int], start=None, table=None):
    """Follow ``word`` from ``start``; returns ``(path, end)`` or raises :class:`NotLiftable`."""
    table = table if table is not None else lift_table(g)
    v = g.base if start is None else start
    path = []
    for i, x in enumerate(word):
        step = table.get((v, x))
        if step is None:
            raise NotLiftable(i)
        e, sign, v = step
        path.append((e, sign))
    return path, v


@dataclass
class Basis:
    """Spanning tree of the based component and one generator per other edge."""

    tree: frozenset
    edges: tuple                   # non-tree edges, generator k is edges[k-1]
    words: tuple                   # each generator read in the rose alphabet
    index: dict = field(repr=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.edges)


def spanning_tree_basis(g: LabeledGraph, base=None) -> Basis:
    base = g.base if base is None else base
    inc = g.incidence()
    parent = {base: None}          # vertex -> (edge, sign) reaching it from its parent
    queue = deque([base])
    tree = set()
    while queue:
        v = queue.popleft()
        for e, end in sorted(inc[v], key=lambda t: (_label_key(g.label(t[0])), -t[1], str(t[0]))):
            s, d, _ = g.edges[e]
            other = d if end == 1 else s
            if other not in parent:
                parent[other] = (e, end)
                tree.add(e)
                queue.append(other)

    def to_vertex(v) -> list:
        out = []
        while parent[v] is not None:
            e, sign = parent[v]
            out.append((e, sign))
            s, d, _ = g.edges[e]
            v = s if sign == 1 else d
        return out[::-1]

    def read(path) -> Word:
        return tuple(g.label(e) * sign for e, sign in path)

    gens = [e for e in g.edges if e not in tree and g.src(e) in parent]
    gens.sort(key=lambda e: canonical_sort_key(g, e, parent))
    words = []
    for e in gens:
        s, d, lab = g.edges[e]
        back = [(f, -sign) for f, sign in reversed(to_vertex(d))]
        if all(isinstance(g.label(f), int) for f, _ in to_vertex(s) + back) and isinstance(lab, int):
            words.append(reduce(read(to_vertex(s) + [(e, 1)] + back)))
        else:
            words.append(None)
    basis = Basis(frozenset(tree), tuple(gens), tuple(words))
    basis.index = {e: k + 1 for k, e in enumerate(gens)}
    return basis


def canonical_sort_key(g, e, parent):
    return (_label_key(g.label(e)), str(e))


def path_in_basis(basis: Basis, path: Iterable[tuple]) -> Word:
    """Rewrite an edge path as a word in the basis generators (signed indices)."""
    return reduce(basis.index[e] * sign for e, sign in path if e in basis.index)


def express_in_basis(g: LabeledGraph, loop: Sequence[int], basis: Basis | None = None) -> Word:
    """Lift ``loop`` at the basepoint and rewrite it in the spanning-tree basis.

    Raises :class:`NotLiftable` if some letter has no lift and
    :class:`OpenLift` if the lift does not return to the basepoint.
    """
    path, end = lift_word(g, loop)
    if end != g.base:
        raise OpenLift(end)
    basis = basis or spanning_tree_basis(g)
    return path_in_basis(basis, path)


def evaluate_in_basis(basis: Basis, word: Sequence[int]) -> Word:
    out = []
    for x in word:
        w = basis.words[abs(x) - 1]
        out.extend(w if x > 0 else tuple(-y for y in reversed(w)))
    return reduce(out)


# -- fibre products ----------------------------------------------------------


@dataclass
class FiberProduct:
    graph: LabeledGraph
    left: GraphMorphism
    right: GraphMorphism


def fiber_product(h: GraphMorphism | LabeledGraph, w: GraphMorphism | LabeledGraph) -> FiberProduct:
    """``Gamma x_Omega S``: all cell pairs with equal image; iota, tau coordinatewise."""
    if isinstance(h, LabeledGraph):
        h = to_rose(h, _rank_hint(h, w))
    if isinstance(w, LabeledGraph):
        w = to_rose(w, _rank_hint(h.domain, w))
    a, b = h.domain, w.domain
    by_image_v: dict = {}
    for y in b.vertices:
        by_image_v.setdefault(w.vmap[y], []).append(y)
    by_image_e: dict = {}
    for f in b.edges:
        by_image_e.setdefault(w.emap[f], []).append(f)
    verts = [(x, y) for x in a.vertices for y in by_image_v.get(h.vmap[x], ())]
    edges = {}
    for e, (s, d, _) in a.edges.items():
        img = h.emap[e]
        for f in by_image_e.get(img, ()):
            s2, d2, _ = b.edges[f]
            edges[(e, f)] = ((s, s2), (d, d2), img)
    base = None
    if a.base is not None and b.base is not None and h.vmap[a.base] == w.vmap[b.base]:
        base = (a.base, b.base)
    g = LabeledGraph(verts, edges, base)
    left = GraphMorphism(g, a, {v: v[0] for v in verts}, {e: e[0] for e in edges})
    right = GraphMorphism(g, b, {v: v[1] for v in verts}, {e: e[1] for e in edges})
    return FiberProduct(g, left, right)


def _rank_hint(*graphs) -> int:
    labs = [lab for g in graphs if isinstance(g, LabeledGraph) for *_, lab in g.edges.values()]
    return max([lab for lab in labs if isinstance(lab, int)], default=1)


def find_morphism(src: LabeledGraph, dst: LabeledGraph) -> GraphMorphism | None:
    """The based label-preserving morphism ``src -> dst`` into an immersion, if any."""
    if src.base is None or dst.base is None:
        raise MalformedInput("both graphs must be based")
    table = lift_table(dst)
    vmap = {src.base: dst.base}
    emap = {}
    queue = deque([src.base])
    inc = src.incidence()
    while queue:
        v = queue.popleft()
        for e, end in inc[v]:
            s, d, lab = src.edges[e]
            step = table.get((vmap[v], lab if end == 1 else -lab))
            if step is None:
                return None
            f, sign, u = step
            if e in emap and emap[e] != f:
                return None
            emap[e] = f
            other = d if end == 1 else s
            if other in vmap:
                if vmap[other] != u:
                    return None
            else:
                vmap[other] = u
                queue.append(other)
    if len(vmap) != len(src.vertices):
        return None
    return GraphMorphism(src, dst, vmap, emap)


# -- text format -------------------------------------------------------------

_INT = re.compile(r"-?\d+$")


def _token(x) -> str:
    s = str(x)
    if not s or any(ch.isspace() for ch in s) or s.startswith("#"):
        raise MalformedInput(f"id {x!r} cannot be written as a token")
    return s


def _parse_id(tok: str):
    return int(tok) if _INT.match(tok) else tok


def format_label(lab) -> str:
    if lab is None:
        return "-"
    if isinstance(lab, int) and 1 <= lab <= 26:
        return letter_name(lab)
    return _token(lab)


def parse_label(tok: str):
    if tok == "-":
        return None
    if len(tok) == 1 and "a" <= tok <= "z":
        return ord(tok) - ord("a") + 1
    return _parse_id(tok)


def graph_lines(g: LabeledGraph) -> list[str]:
    lines = [f"v {_token(v)}" for v in g.vertices]
    lines += [f"e {_token(e)} {_token(s)} {_token(d)} {format_label(lab)}"
              for e, (s, d, lab) in g.edges.items()]
    if g.base is not None:
        lines.append(f"base {_token(g.base)}")
    return lines


def to_text(g: LabeledGraph) -> str:
    return "\n".join(graph_lines(g)) + "\n"


def parse_graph_lines(lines: Iterable[str]) -> LabeledGraph:
    verts, edges, base = [], {}, None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v" and len(parts) == 2:
            verts.append(_parse_id(parts[1]))
        elif kind == "e" and len(parts) in (4, 5):
            lab = parse_label(parts[4]) if len(parts) == 5 else None
            eid = _parse_id(parts[1])
            if eid in edges:
                raise MalformedInput(f"line {lineno}: duplicate edge id {eid!r}")
            edges[eid] = (_parse_id(parts[2]), _parse_id(parts[3]), lab)
        elif kind == "base" and len(parts) == 2:
            base = _parse_id(parts[1])
        else:
            raise MalformedInput(f"line {lineno}: cannot parse {raw.strip()!r}")
    return LabeledGraph(verts, edges, base)


def from_text(text: str) -> LabeledGraph:
    return parse_graph_lines(text.splitlines())


def iter_cells(g: LabeledGraph) -> Iterator[tuple]:
    for v in g.vertices:
        yield ("v", v)
    for e in g.edges:
        yield ("e", e)
