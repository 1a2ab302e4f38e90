"""Adjunction spaces of graphs over a common target, and their fibres.

The input is a commuting square of graph morphisms

    P --sigma--> S
    |            |
   lam           w
    v            v
    Gamma --h--> Omega

where ``S`` is usually a circle and ``P`` a disjoint union of circles.
Gluing ``P x [-1, 1]`` to ``Gamma`` and ``S`` gives a square complex ``W``;
its vertical structure is recorded here combinatorially.  The vertical
vertex graphs are the components of the bipartite graph on
``V_Gamma + V_S`` with one edge per vertex of ``P``, and likewise for edges.
Those components are the cells of the pushout ``Gamma_u`` of ``Gamma`` and
``S`` along ``P``; the component over a cell ``x`` is the fibre ``W_x``.

All homology is of graphs, so every dimension below is a Betti number
``|E| - |V| + components`` and everything is exact integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import (GraphMorphism, LabeledGraph, UnionFind, b1, components, fold,
                    graph_lines, lift_table, lift_word, NotLiftable, morphism_clash, parse_graph_lines,
                    _parse_id, rose)
from .words import DomainError, MalformedInput, Word, is_cyclically_reduced, maximal_root


class MalformedInstance(MalformedInput):
    """The four graphs and four maps do not form a commuting square."""


class InvariantViolation(AssertionError):
    """An identity or inequality that the theory guarantees has failed."""


# -- instances ------------------------------------------------------------------


@dataclass
class AdjunctionInstance:
    omega: LabeledGraph
    gamma: LabeledGraph
    s: LabeledGraph
    p: LabeledGraph
    h: GraphMorphism        # gamma -> omega
    w: GraphMorphism        # s -> omega
    lam: GraphMorphism      # p -> gamma
    sigma: GraphMorphism    # p -> s

    def check(self) -> None:
        pairs = (("h", self.h, self.gamma, self.omega), ("w", self.w, self.s, self.omega),
                 ("lam", self.lam, self.p, self.gamma), ("sigma", self.sigma, self.p, self.s))
        for name, f, dom, cod in pairs:
            if f.domain is not dom or f.codomain is not cod:
                if f.domain != dom or f.codomain != cod:
                    raise MalformedInstance(f"map {name} has the wrong domain or codomain")
            try:
                f.check()
            except MalformedInput as exc:
                raise MalformedInstance(f"map {name}: {exc}") from None
        for q in self.p.vertices:
            if self.h.vmap[self.lam.vmap[q]] != self.w.vmap[self.sigma.vmap[q]]:
                raise MalformedInstance(f"square does not commute at vertex {q!r} of P")
        for q in self.p.edges:
            if self.h.emap[self.lam.emap[q]] != self.w.emap[self.sigma.emap[q]]:
                raise MalformedInstance(f"square does not commute at edge {q!r} of P")

    def rho_collision(self):
        """Two edges of P with the same image in ``E_Gamma x E_S``, or ``None``."""
        seen = {}
        for q in self.p.edges:
            key = (self.lam.emap[q], self.sigma.emap[q])
            if key in seen:
                return seen[key], q
            seen[key] = q
        return None

    def chi(self) -> int:
        """The characteristic ``chi(Gamma) + chi(S) - chi(P)``."""
        return (self.gamma.euler_characteristic() + self.s.euler_characteristic()
                - self.p.euler_characteristic())


def covering_degrees(f: GraphMorphism) -> list[int] | None:
    """Degrees of ``f`` on the components of its domain if ``f`` is a covering map.

    ``None`` unless ``f`` maps the star of every vertex bijectively onto the
    star of its image and hits every cell.  The degree of a component is
    its number of edges over the edge count of the codomain (the walk
    length ratio for circles).
    """
    dom, cod = f.domain, f.codomain
    if not cod.edges and not cod.vertices:
        return None
    cinc = cod.incidence()
    for v, star in dom.incidence().items():
        image = sorted((repr(f.emap[e]), end) for e, end in star)
        target = sorted((repr(e), end) for e, end in cinc[f.vmap[v]])
        if image != target:
            return None
    if not f.is_surjective():
        return None
    degrees = []
    for comp in components(dom):
        cs = set(comp)
        ne = sum(1 for e, (s, _, _) in dom.edges.items() if s in cs)
        if cod.edges:
            if ne % len(cod.edges):
                return None
            degrees.append(ne // len(cod.edges))
        else:
            degrees.append(len(comp) // len(cod.vertices))
    return degrees


def circle_walk(g: LabeledGraph) -> list[tuple] | None:
    """The edges of ``g`` in cyclic order as ``(edge, sign)`` if ``g`` is a circle, else ``None``."""
    if not g.edges or len(g.vertices) != len(g.edges):
        return None
    inc = g.incidence()
    if any(len(star) != 2 for star in inc.values()):
        return None
    start = g.vertices[0]
    v, walk, used = start, [], set()
    prev = None
    while True:
        nxt = [(e, end) for e, end in inc[v] if (e, end) != prev]
        e, end = nxt[0]
        if e in used:
            break
        used.add(e)
        walk.append((e, end))
        v = g.dst(e) if end == 1 else g.src(e)
        prev = (e, -end)
        if v == start:
            break
    return walk if len(walk) == len(g.edges) else None


def is_indivisible_loop(w: GraphMorphism) -> bool:
    """Whether the circle ``w.domain`` maps as a loop that is not a proper power."""
    walk = circle_walk(w.domain)
    if walk is None:
        return False
    seq = [(w.emap[e], sign) for e, sign in walk]
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and seq[d:] + seq[:d] == seq:
            return False
    return True


# -- resolving ----------------------------------------------------------------------


@dataclass
class Fiber:
    """The bipartite graph ``W_x`` over a cell ``x`` of ``Gamma_u``.

    ``gamma_side`` and ``s_side`` hold cell ids of Gamma and S (all of the
    cell kind of ``x``); ``ends[q] = (lam(q), sigma(q))`` for each cell q of P
    in the fibre.
    """

    cell: tuple
    gamma_side: tuple
    s_side: tuple
    ends: dict

    @property
    def kind(self) -> str:
        return self.cell[0]

    def valence(self, side: str, x) -> int:
        k = 0 if side == "G" else 1
        return sum(1 for pair in self.ends.values() if pair[k] == x)

    def betti(self) -> int:
        nv = len(self.gamma_side) + len(self.s_side)
        return len(self.ends) - nv + _count_components(self.gamma_side, self.s_side, self.ends.values())

    def chi(self) -> int:
        return len(self.gamma_side) + len(self.s_side) - len(self.ends)

    def is_simple(self) -> bool:
        return len(set(self.ends.values())) == len(self.ends)

    def bipartite(self, s_order: Sequence | None = None) -> "Bipartite":
        return Bipartite(self.gamma_side, tuple(s_order if s_order is not None else self.s_side),
                         tuple(self.ends.values()))


def _count_components(us, cs, edges) -> int:
    uf = UnionFind([("G", u) for u in us] + [("S", c) for c in cs])
    for u, c in edges:
        uf.union(("G", u), ("S", c))
    return len(uf.classes())


@dataclass
class ResolvedSpace:
    instance: AdjunctionInstance
    gamma_u: LabeledGraph          # labels are the image edges in omega
    l: GraphMorphism               # gamma_u -> omega
    gamma_u_I: LabeledGraph
    fold_map: GraphMorphism        # gamma_u -> gamma_u_I
    m: dict                        # ("G"|"S"|"P", ("v"|"e", id)) -> cell of gamma_u
    fibers: dict                   # cell of gamma_u -> Fiber
    boundary: frozenset            # edges of Gamma hit exactly once by lam

    def chi_w(self) -> int:
        return self.instance.chi()

    def chi_w_fibres(self) -> int:
        return (sum(f.chi() for c, f in self.fibers.items() if c[0] == "v")
                - sum(f.chi() for c, f in self.fibers.items() if c[0] == "e"))

    def chi_c(self) -> int:
        """``sum_v b1(W_v) - sum_e b1(W_e)``."""
        return (sum(f.betti() for c, f in self.fibers.items() if c[0] == "v")
                - sum(f.betti() for c, f in self.fibers.items() if c[0] == "e"))

    def s_image_edges(self) -> list:
        """The edges ``w(E_S)`` of Gamma_u, in a deterministic order."""
        seen = []
        for e in self.instance.s.edges:
            x = self.m[("S", ("e", e))]
            if x not in seen:
                seen.append(x)
        return seen


def build(inst: AdjunctionInstance) -> ResolvedSpace:
    """Resolve ``W -> Gamma_u -> Omega``: pushout, fibres and boundary."""
    inst.check()
    uf = UnionFind()
    for kind, g in (("G", inst.gamma), ("S", inst.s)):
        for v in g.vertices:
            uf.add((kind, ("v", v)))
        for e in g.edges:
            uf.add((kind, ("e", e)))
    for q in inst.p.vertices:
        uf.union(("G", ("v", inst.lam.vmap[q])), ("S", ("v", inst.sigma.vmap[q])))
    for q in inst.p.edges:
        uf.union(("G", ("e", inst.lam.emap[q])), ("S", ("e", inst.sigma.emap[q])))

    # number the classes in order of first appearance: Gamma cells, then S cells
    ids: dict = {}
    counters = {"v": 0, "e": 0}
    m: dict = {}
    for kind, g in (("G", inst.gamma), ("S", inst.s)):
        for c in [("v", v) for v in g.vertices] + [("e", e) for e in g.edges]:
            r = uf.find((kind, c))
            if r not in ids:
                ids[r] = (c[0], counters[c[0]])
                counters[c[0]] += 1
            m[(kind, c)] = ids[r]
    for q in inst.p.vertices:
        m[("P", ("v", q))] = m[("G", ("v", inst.lam.vmap[q]))]
    for q in inst.p.edges:
        m[("P", ("e", q))] = m[("G", ("e", inst.lam.emap[q]))]

    verts = list(range(counters["v"]))
    edges = {}
    omega_edge = {}
    for kind, g, f in (("G", inst.gamma, inst.h), ("S", inst.s, inst.w)):
        for e, (s, d, _) in g.edges.items():
            x = m[(kind, ("e", e))][1]
            spec = (m[(kind, ("v", s))][1], m[(kind, ("v", d))][1], f.emap[e])
            if x in edges and edges[x] != spec:
                raise MalformedInstance("pushout is not well defined; the square does not commute")
            edges[x] = spec
            omega_edge[x] = f.emap[e]
    edges = dict(sorted(edges.items()))
    gamma_u = LabeledGraph(verts, edges)
    vimg = {}
    for kind, g, f in (("G", inst.gamma, inst.h), ("S", inst.s, inst.w)):
        for v in g.vertices:
            vimg[m[(kind, ("v", v))][1]] = f.vmap[v]
    l = GraphMorphism(gamma_u, inst.omega, vimg, omega_edge)
    down, q = fold(l)

    fibers: dict = {}
    for (kind, c), x in m.items():
        fib = fibers.get(x)
        if fib is None:
            fib = fibers[x] = Fiber(x, (), (), {})
        if kind == "G":
            fib.gamma_side += (c[1],)
        elif kind == "S":
            fib.s_side += (c[1],)
    for p_cell in [("v", v) for v in inst.p.vertices] + [("e", e) for e in inst.p.edges]:
        lam_c = inst.lam.vmap[p_cell[1]] if p_cell[0] == "v" else inst.lam.emap[p_cell[1]]
        sig_c = inst.sigma.vmap[p_cell[1]] if p_cell[0] == "v" else inst.sigma.emap[p_cell[1]]
        fibers[m[("P", p_cell)]].ends[p_cell[1]] = (lam_c, sig_c)
    fibers = dict(sorted(fibers.items(), key=lambda kv: (kv[0][0] != "v", kv[0][1])))

    hits: dict = {}
    for pe in inst.p.edges:
        e = inst.lam.emap[pe]
        hits[e] = hits.get(e, 0) + 1
    boundary = frozenset(e for e in inst.gamma.edges if hits.get(e, 0) == 1)
    return ResolvedSpace(inst, gamma_u, l, down.domain, q, m, fibers, boundary)


# -- hypotheses and classification --------------------------------------------------


@dataclass
class IrreducibilityCheck:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def check_diagrammatic_irreducibility(inst: AdjunctionInstance, space: ResolvedSpace | None = None
                                      ) -> IrreducibilityCheck:
    """Edges of P embed in ``E_Gamma x E_S``, and sigma and w are immersions."""
    pair = inst.rho_collision()
    if pair is not None:
        e = pair[0]
        return IrreducibilityCheck(False, "two edges of P over the same (Gamma-edge, S-edge) pair",
                                   (pair, (inst.lam.emap[e], inst.sigma.emap[e])))
    clash = morphism_clash(inst.sigma)
    if clash is not None:
        return IrreducibilityCheck(False, "sigma is not an immersion", clash)
    clash = morphism_clash(inst.w)
    if clash is not None:
        return IrreducibilityCheck(False, "w is not an immersion", clash)
    space = space or build(inst)
    for x, fib in space.fibers.items():
        if x[0] == "e" and not fib.is_simple():
            raise InvariantViolation(f"edge fibre over {x} is not simple although P embeds")
    return IrreducibilityCheck(True)


@dataclass
class Classification:
    independent: bool
    strongly_independent: bool
    boundary_counts: dict           # edge of Gamma_u in w(E_S) -> |boundary meet W_e|
    witness: tuple | None = None    # an edge fibre meeting the boundary fewer than twice

    @property
    def labels(self) -> tuple[str, str]:
        return ("independent" if self.independent else "dependent",
                "strongly independent" if self.strongly_independent else "weakly dependent")

    @property
    def weakly_dependent(self) -> bool:
        return not self.strongly_independent

    def __str__(self):
        return ", ".join(self.labels)


def classify_dependence(space: ResolvedSpace) -> Classification:
    counts = {}
    witness = None
    for x in space.s_image_edges():
        n = sum(1 for e in space.fibers[x].gamma_side if e in space.boundary)
        counts[x] = n
        if n < 2 and witness is None:
            witness = x
    return Classification(bool(space.boundary), witness is None, counts, witness)


def check_fibre_maps(space: ResolvedSpace) -> list[str]:
    """Incidence maps ``W_e -> W_{iota(e)}, W_{tau(e)}`` must be injective on S-cells and P-edges.

    Returns a list of failures (empty when diagrammatic irreducibility holds).
    """
    inst = space.instance
    bad = []
    for x, fib in space.fibers.items():
        if x[0] != "e":
            continue
        for name, sp, pp in (("iota", inst.s.src, inst.p.src), ("tau", inst.s.dst, inst.p.dst)):
            if len({sp(t) for t in fib.s_side}) != len(fib.s_side):
                bad.append(f"{name} not injective on S-cells of the fibre over {x}")
            if len({pp(q) for q in fib.ends}) != len(fib.ends):
                bad.append(f"{name} not injective on P-edges of the fibre over {x}")
    return bad


# -- filtrations ----------------------------------------------------------------------


@dataclass
class Bipartite:
    """A bipartite graph with sides ``u`` and ``c``; ``c`` is listed bottom to top."""

    u: tuple
    c: tuple
    edges: tuple        # (u, c) pairs, repeats allowed

    def valence(self, side: str, x) -> int:
        k = 0 if side == "U" else 1
        return sum(1 for pair in self.edges if pair[k] == x)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def is_connected(self) -> bool:
        return _count_components(self.u, self.c, self.edges) == 1


def sublevel_increments(b: Bipartite) -> tuple[list[int], list[int]]:
    """``dim A^+(c)`` and ``dim A^-(c)`` for each ``c`` in order.

    ``B^+(c)`` is U with every ``c' <= c`` and its edges; ``A^+(c)`` is the
    first Betti number gained passing from ``B^+(c - 1)`` to ``B^+(c)``.
    ``B^-`` is the same from the top down.
    """
    by_c: dict = {c: [] for c in b.c}
    for u, c in b.edges:
        by_c[c].append(u)

    def sweep(order):
        uf = UnionFind([("U", u) for u in b.u])
        out = []
        for c in order:
            uf.add(("C", c))
            merged = sum(1 for u in by_c[c] if uf.union(("U", u), ("C", c)))
            # one vertex and len(by_c[c]) edges added; each merging edge kills a component
            out.append(len(by_c[c]) - merged)
        return out

    plus = sweep(b.c)
    minus = list(reversed(sweep(list(reversed(b.c)))))
    return plus, minus


def good_vertices(b: Bipartite, increments: tuple | None = None) -> list[tuple]:
    """Vertices of ``b`` that are good for the order on the C side.

    A C-vertex is good when ``max dim A^+-(c) = valence(c) - 1``; a U-vertex
    is good when it has valence one.  Returned as ``("C", c)`` / ``("U", u)``.
    """
    plus, minus = increments or sublevel_increments(b)
    good = []
    for i, c in enumerate(b.c):
        if max(plus[i], minus[i]) == b.valence("C", c) - 1:
            good.append(("C", c))
    for u in b.u:
        if b.valence("U", u) == 1:
            good.append(("U", u))
    return good


def updown_check(b: Bipartite) -> list[tuple]:
    """All good vertices of a simple connected non-point bipartite graph; at least two exist."""
    if len(b.u) + len(b.c) < 2:
        raise DomainError("the graph is a point")
    if not b.is_simple():
        raise DomainError("the graph has repeated edges")
    if not b.is_connected():
        raise DomainError("the graph is disconnected")
    good = good_vertices(b)
    if len(good) < 2:
        raise InvariantViolation(f"only {len(good)} good vertices: {good}")
    return good


def random_bipartite(rng: random.Random, max_u: int = 12, max_c: int = 12) -> Bipartite:
    """A random simple connected bipartite graph with a random order on the C side."""
    while True:
        nu, nc = rng.randint(1, max_u), rng.randint(1, max_c)
        if nu + nc >= 2:
            break
    us = list(range(nu))
    cs = list(range(nc))
    # random spanning tree: after a first U-C edge, each vertex hangs off a placed vertex of the other side
    rest = [("U", u) for u in us[1:]] + [("C", c) for c in cs[1:]]
    rng.shuffle(rest)
    edges = {(us[0], cs[0])}
    placed = {"U": [us[0]], "C": [cs[0]]}
    for side, x in rest:
        y = rng.choice(placed["C" if side == "U" else "U"])
        edges.add((x, y) if side == "U" else (y, x))
        placed[side].append(x)
    extra = rng.randint(0, nu * nc - len(edges))
    for _ in range(extra):
        edges.add((rng.choice(us), rng.choice(cs)))
    rng.shuffle(cs)
    return Bipartite(tuple(us), tuple(cs), tuple(sorted(edges)))


@dataclass
class UpDownSummary:
    trials: int
    passed: int
    min_good: int
    failures: list


def fuzz_updown(seed: int, trials: int, max_u: int = 12, max_c: int = 12) -> UpDownSummary:
    """Count the good vertices of ``trials`` random bipartite graphs with random C orders."""
    passed, least, failures = 0, None, []
    for t in range(trials):
        b = random_bipartite(random.Random(f"{seed}:{t}"), max_u, max_c)
        try:
            good = updown_check(b)
        except InvariantViolation:
            failures.append(t)
            continue
        passed += 1
        least = len(good) if least is None else min(least, len(good))
    return UpDownSummary(trials, passed, least or 0, failures)


def filtration_example() -> Bipartite:
    """Six U and six C vertices, eighteen edges, ``chi = -6``, ``b1 = 7``; increments 0, 0, 2, 2, 1, 2."""
    nbrs = {1: (1, 2, 3), 2: (3, 4, 5), 3: (1, 2, 4), 4: (1, 3, 5), 5: (2, 5, 6), 6: (3, 4, 6)}
    edges = tuple((u, c) for c, us in nbrs.items() for u in us)
    return Bipartite(tuple(range(1, 7)), tuple(range(1, 7)), edges)


@dataclass
class FiberFiltration:
    cell: tuple
    order: tuple            # S-side of the fibre, bottom to top
    plus: tuple
    minus: tuple
    betti: int
    good: list


@dataclass
class FiltrationReport:
    fibers: dict                    # cell of Gamma_u -> FiberFiltration
    a_plus: dict                    # ("v"|"e", S-cell id) -> dim A^+
    a_minus: dict
    chi_c: int
    chi_c_plus: int
    chi_c_minus: int
    max_increment: int
    s_is_circle: bool

    def to_json(self) -> dict:
        return {
            "chi_C": self.chi_c, "chi_C_plus": self.chi_c_plus, "chi_C_minus": self.chi_c_minus,
            "max_dim_A": self.max_increment,
            "fibers": [{"cell": list(x), "order": list(f.order), "A_plus": list(f.plus),
                        "A_minus": list(f.minus), "b1": f.betti,
                        "good": [list(g) for g in f.good]} for x, f in self.fibers.items()],
        }


def pulled_back_positions(inst: AdjunctionInstance, st) -> dict:
    """Position of each S-cell in the stacking order over its image in omega."""
    from .stacking import verify_stacking
    try:
        ok = verify_stacking(inst.w, st)
    except MalformedInput as exc:
        raise DomainError(f"invalid stacking: {exc}") from None
    if not ok:
        raise DomainError("invalid stacking: the orders are not compatible along edges")
    pos = {}
    for (kind, _), order in st.orders.items():
        for i, c in enumerate(order):
            pos[(kind, c)] = i
    return pos


def filtration(space: ResolvedSpace, st) -> FiltrationReport:
    """Sublevel filtrations of every fibre by a stacking of ``w``, with the invariants they satisfy."""
    inst = space.instance
    if not check_diagrammatic_irreducibility(inst, space):
        raise DomainError("filtrations need a diagrammatically irreducible space")
    pos = pulled_back_positions(inst, st)
    fibres = {}
    a_plus, a_minus = {}, {}
    for x, fib in space.fibers.items():
        order = tuple(sorted(fib.s_side, key=lambda t: pos[(x[0], t)]))
        b = fib.bipartite(order)
        plus, minus = sublevel_increments(b)
        betti = fib.betti()
        if min(plus + minus, default=0) < 0:
            raise InvariantViolation(f"negative filtration increment in the fibre over {x}")
        if sum(plus) != betti or sum(minus) != betti:
            raise InvariantViolation(f"increments over {x} do not sum to b1 = {betti}")
        for t, a, bm in zip(order, plus, minus):
            a_plus[(x[0], t)] = a
            a_minus[(x[0], t)] = bm
        fibres[x] = FiberFiltration(x, order, tuple(plus), tuple(minus), betti,
                                    good_vertices(b, (plus, minus)) if order else [])
    chi_c = space.chi_c()

    def chi_of(a):
        return (sum(a[("v", v)] for v in inst.s.vertices) - sum(a[("e", e)] for e in inst.s.edges))

    chi_plus, chi_minus = chi_of(a_plus), chi_of(a_minus)
    if not chi_c == chi_plus == chi_minus:
        raise InvariantViolation(f"chi(C) = {chi_c} but chi(C+) = {chi_plus}, chi(C-) = {chi_minus}")
    top = max(list(a_plus.values()) + list(a_minus.values()), default=0)
    circle = circle_walk(inst.s) is not None
    if circle and top > chi_c:
        raise InvariantViolation(f"max dim A = {top} exceeds chi(C) = {chi_c}")
    return FiltrationReport(fibres, a_plus, a_minus, chi_c, chi_plus, chi_minus, top, circle)


# -- the dependence inequality -------------------------------------------------------


@dataclass
class DependenceReport:
    hypotheses: dict
    classification: Classification | None = None
    chi_gamma: int = 0
    deg_sigma: int = 0
    chi_gamma_u: int = 0
    chi_gamma_u_I: int = 0
    chi_c: int | None = None
    asserted: bool = False
    holds: bool | None = None
    equality: bool = False
    w_cycles: bool | None = None
    free_rank_bound: int | None = None
    gamma_u_I_rank: int | None = None
    checks: dict = field(default_factory=dict)

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def lhs(self) -> int:
        return self.chi_gamma + self.deg_sigma - 1

    @property
    def rhs(self) -> int:
        return self.chi_gamma_u

    def summary(self) -> str:
        if not self.hypotheses_ok:
            failed = [k for k, v in self.hypotheses.items() if not v]
            return "hypothesis failure: " + ", ".join(failed)
        cls = self.classification
        rel = f"{self.lhs} <= {self.rhs}"
        if not self.asserted:
            return f"{cls.labels[1]}: inequality not asserted ({cls})"
        return f"{cls.labels[1]}: {rel} {'OK' if self.holds else 'VIOLATED'}"

    def to_json(self) -> dict:
        return {
            "hypotheses": dict(self.hypotheses),
            "classification": None if self.classification is None else list(self.classification.labels),
            "chi_gamma": self.chi_gamma, "deg_sigma": self.deg_sigma,
            "lhs": self.lhs, "rhs": self.chi_gamma_u, "chi_gamma_u_I": self.chi_gamma_u_I,
            "chi_C": self.chi_c, "asserted": self.asserted, "holds": self.holds,
            "equality": self.equality, "w_cycles": self.w_cycles,
            "free_rank_bound": self.free_rank_bound, "gamma_u_I_rank": self.gamma_u_I_rank, "checks": dict(self.checks),
        }


def hypothesis_checklist(inst: AdjunctionInstance, space: ResolvedSpace | None = None) -> dict:
    return {
        "diagrammatically irreducible": bool(check_diagrammatic_irreducibility(inst, space)),
        "S is a circle": circle_walk(inst.s) is not None,
        "w indivisible": is_indivisible_loop(inst.w),
        "sigma a covering": covering_degrees(inst.sigma) is not None,
    }


def verify_dependence_theorem(inst: AdjunctionInstance, st=None) -> DependenceReport:
    """Both sides of ``chi(Gamma) + deg(sigma) - 1 <= chi(Gamma_u)`` and the checks around it.

    The inequality is asserted only when the space is weakly dependent and
    all hypotheses hold.  A failed hypothesis is reported, not raised.
    Raises :class:`InvariantViolation` if anything the theory guarantees fails.
    """
    inst.check()
    space = build(inst)
    report = DependenceReport(hypothesis_checklist(inst, space))
    degrees = covering_degrees(inst.sigma)
    report.chi_gamma = inst.gamma.euler_characteristic()
    report.deg_sigma = sum(degrees) if degrees else 0
    report.chi_gamma_u = space.gamma_u.euler_characteristic()
    report.chi_gamma_u_I = space.gamma_u_I.euler_characteristic()
    report.classification = cls = classify_dependence(space)
    if report.chi_gamma_u_I < report.chi_gamma_u:
        raise InvariantViolation("folding Gamma_u decreased the Euler characteristic")
    if space.chi_w() != space.chi_w_fibres():
        raise InvariantViolation("the two formulas for chi(W) disagree")
    report.checks["chi(W) two ways"] = True
    if not report.hypotheses_ok:
        return report

    for x, fib in space.fibers.items():
        for t in fib.s_side:
            if fib.valence("S", t) != report.deg_sigma:
                raise InvariantViolation(f"S-cell {t!r} over {x} has valence {fib.valence('S', t)}, "
                                         f"not deg(sigma) = {report.deg_sigma}")
    report.checks["circle valence"] = True
    bad = check_fibre_maps(space)
    if bad:
        raise InvariantViolation("; ".join(bad))
    report.checks["fibre maps injective"] = True

    report.chi_c = space.chi_c()
    if space.chi_w() != report.chi_gamma_u - report.chi_c:
        raise InvariantViolation("chi(W) != chi(Gamma_u) - chi(C)")
    report.checks["chi(W) = chi(Gamma_u) - chi(C)"] = True

    if st is None:
        from .stacking import search_stacking
        st = search_stacking(inst.w)
        if st is None:
            raise InvariantViolation("an indivisible immersed circle has no stacking")
    filt = filtration(space, st)
    report.checks["filtration"] = True
    for x in space.s_image_edges():
        b = space.fibers[x].bipartite(filt.fibers[x].order)
        updown_check(b)
    report.checks["two good vertices over w(E_S)"] = True

    if cls.weakly_dependent:
        report.asserted = True
        report.holds = report.lhs <= report.rhs
        report.equality = report.lhs == report.rhs
        if not report.holds:
            raise InvariantViolation(f"dependence inequality fails: {report.lhs} > {report.rhs}")
        if report.chi_gamma_u <= -1:
            report.w_cycles = report.chi_gamma + report.deg_sigma <= 0
            if not report.w_cycles:
                raise InvariantViolation("chi(Gamma) + deg(sigma) > 0 with chi(Gamma_u) <= -1")
    elif report.lhs > report.rhs:
        # contrapositive: a violated inequality forces strong independence
        report.checks["contrapositive"] = True
    report.gamma_u_I_rank = b1(space.gamma_u_I)
    if cls.weakly_dependent:
        # a free image through which the map factors has rank at most 1 - chi(Gamma_u) <= 1 - lhs
        report.free_rank_bound = 1 - report.lhs
    return report


# -- constructors -------------------------------------------------------------------


def circles_over_word(gamma: LabeledGraph, w: Sequence[int], starts: Iterable[tuple],
                      rank: int | None = None) -> AdjunctionInstance:
    """An instance whose P lifts powers of ``w`` into a rose-labelled ``gamma``.

    Each ``(vertex, degree)`` in ``starts`` contributes a circle of P reading
    ``w**degree`` from that vertex of ``gamma``; the lift must close up.
    ``gamma`` must have a deterministic lift (labels as generator indices);
    ``S`` is the cycle of ``w`` and Omega the rose.
    """
    from .words import word_to_cycle
    w = tuple(w)
    rank = rank or max([abs(x) for x in w] + [lab for _, _, lab in gamma.edges.values()])
    omega = rose(rank)
    s = word_to_cycle(w)
    n = len(w)
    table = lift_table(gamma)
    pv, pe, lam_v, lam_e, sig_v, sig_e = [], {}, {}, {}, {}, {}
    offset = 0
    for start, deg in starts:
        path, end = lift_word(gamma, w * deg, start, table)
        if end != start:
            raise DomainError(f"w^{deg} does not close up at vertex {start!r}")
        k = n * deg
        v = start
        for i in range(k):
            q = offset + i
            pv.append(q)
            lam_v[q] = v
            sig_v[q] = i % n
            e, sign = path[i]
            a, b = q, offset + (i + 1) % k
            pe[q] = (a, b, None) if sign == 1 else (b, a, None)
            lam_e[q] = e
            sig_e[q] = i % n
            v = gamma.dst(e) if sign == 1 else gamma.src(e)
        offset += k
    p = LabeledGraph(pv, pe)
    h = GraphMorphism(gamma, omega, {v: 0 for v in gamma.vertices}, {e: gamma.label(e) for e in gamma.edges})
    wm = GraphMorphism(s, omega, {v: 0 for v in s.vertices}, {e: s.label(e) for e in s.edges})
    inst = AdjunctionInstance(omega, gamma, s, p, h, wm,
                              GraphMorphism(p, gamma, lam_v, lam_e), GraphMorphism(p, s, sig_v, sig_e))
    inst.check()
    return inst


def borromean_instance() -> AdjunctionInstance:
    """The threefold cyclic cover of the once-punctured torus, with its three boundary circles.

    Gamma is the cover of the rose on ``a, b`` where ``a`` moves ``i -> i+1 mod 3``
    and ``b`` fixes every vertex; each boundary circle reads ``abAB`` once.
    """
    edges = {}
    for i in range(3):
        edges[f"a{i}"] = (i, (i + 1) % 3, 1)
        edges[f"b{i}"] = (i, i, 2)
    gamma = LabeledGraph(range(3), edges)
    return circles_over_word(gamma, (1, 2, -1, -2), [(i, 1) for i in range(3)], rank=2)


def collapse_vertices(inst: AdjunctionInstance, pairs: Iterable[tuple]) -> AdjunctionInstance:
    """Identify vertices of Gamma (keeping its edges), composing lam and h with the quotient."""
    from .graph import quotient
    g2, q = quotient(inst.gamma, vertex_pairs=pairs)
    if any(inst.h.vmap[a] != inst.h.vmap[b] for a, b in _pairs_list(q.vmap)):
        raise DomainError("vertices with different images in omega cannot be identified")
    h = GraphMorphism(g2, inst.omega, {q.vmap[v]: inst.h.vmap[v] for v in inst.gamma.vertices},
                      {q.emap[e]: inst.h.emap[e] for e in inst.gamma.edges})
    lam = GraphMorphism(inst.p, g2, {x: q.vmap[v] for x, v in inst.lam.vmap.items()},
                        {x: q.emap[e] for x, e in inst.lam.emap.items()})
    out = AdjunctionInstance(inst.omega, g2, inst.s, inst.p, h, inst.w, lam, inst.sigma)
    out.check()
    return out


def _pairs_list(vmap: Mapping) -> list:
    rep: dict = {}
    out = []
    for v, r in vmap.items():
        if r in rep:
            out.append((rep[r], v))
        else:
            rep[r] = v
    return out


def random_word(rng: random.Random, length: int, rank: int) -> Word:
    """A random cyclically reduced word of the given length."""
    while True:
        w = [rng.choice([1, -1]) * rng.randint(1, rank)]
        while len(w) < length:
            x = rng.choice([1, -1]) * rng.randint(1, rank)
            if x != -w[-1]:
                w.append(x)
        w = tuple(w)
        if is_cyclically_reduced(w):
            return w


def random_instance(rng: random.Random, max_s: int = 8, max_gamma: int = 12, max_deg: int = 4,
                    max_rank: int = 3) -> AdjunctionInstance | None:
    """A random diagrammatically irreducible instance, or ``None`` if the draw is degenerate.

    Gamma starts as a random partial cover of the rose (each generator acts by
    a partial injection of its vertices), so lifts are deterministic.  P is a
    random set of distinct closed lifts of powers of a random indivisible
    ``w`` with total degree at most ``max_deg``.  Sometimes a few vertices of
    Gamma are then identified, so that Gamma need not immerse.
    """
    rank = rng.randint(2, max_rank)
    w = random_word(rng, rng.randint(1, max_s), rank)
    if maximal_root(w).exponent > 1:
        return None
    nv = rng.randint(1, max(1, max_gamma // rank))
    density = rng.choice([0.6, 0.8, 1.0])
    edges = {}
    for g in range(1, rank + 1):
        targets = list(range(nv))
        rng.shuffle(targets)
        for v in range(nv):
            if rng.random() < density:
                edges[len(edges)] = (v, targets[v], g)
    if len(edges) > max_gamma:
        keep = sorted(rng.sample(sorted(edges), max_gamma))
        edges = {i: edges[e] for i, e in enumerate(keep)}
    gamma = LabeledGraph(range(nv), edges)
    table = lift_table(gamma)
    step = {}
    for v in range(nv):
        try:
            _, end = lift_word(gamma, w, v, table)
        except NotLiftable:
            continue
        step[v] = end
    cycles, seen = [], set()
    for v in sorted(step):
        if v in seen:
            continue
        orbit, x = [], v
        while x in step and x not in orbit:
            orbit.append(x)
            x = step[x]
        if x == v:
            cycles.append(orbit)
        seen.update(orbit)
    cycles = [c for c in cycles if len(c) <= max_deg]
    if not cycles:
        return None
    rng.shuffle(cycles)
    chosen, total = [], 0
    for c in cycles:
        if total + len(c) <= max_deg and (not chosen or rng.random() < 0.8):
            chosen.append(c)
            total += len(c)
    inst = circles_over_word(gamma, w, [(c[0], len(c)) for c in chosen], rank=rank)
    if nv > 1 and rng.random() < 0.25:
        a, b = rng.sample(range(nv), 2)
        inst = collapse_vertices(inst, [(a, b)])
    return inst


def random_weakly_dependent(rng: random.Random, **kw) -> AdjunctionInstance:
    """Draw until the instance is diagrammatically irreducible, weakly dependent and meets the hypotheses."""
    while True:
        inst = random_instance(rng, **kw)
        if inst is None:
            continue
        if len(inst.p.edges) == len(inst.s.edges) and rng.random() < 0.75:
            continue        # degree one is always weakly dependent; keep it from dominating
        space = build(inst)
        if not check_diagrammatic_irreducibility(inst, space):
            continue
        if classify_dependence(space).strongly_independent:
            continue
        if all(hypothesis_checklist(inst, space).values()):
            return inst


@dataclass
class FuzzSummary:
    trials: int
    weakly_dependent: int
    violations: int
    equality_cases: list


def fuzz_dependence(seed: int, trials: int, **kw) -> FuzzSummary:
    """Verify the inequality on ``trials`` random weakly dependent instances.

    Each trial draws from its own generator seeded from ``(seed, trial)``,
    so any single trial can be replayed.  Equality cases are recorded.
    """
    eq = []
    violations = 0
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        inst = random_weakly_dependent(rng, **kw)
        try:
            rep = verify_dependence_theorem(inst)
        except InvariantViolation:
            violations += 1
            continue
        if rep.equality:
            eq.append(t)
    return FuzzSummary(trials, trials, violations, eq)


# -- instance files --------------------------------------------------------------------

_BLOCKS = ("omega", "gamma", "s", "p")
_MAPS = {"h": ("gamma", "omega"), "w": ("s", "omega"), "lam": ("p", "gamma"), "sigma": ("p", "s")}


def instance_to_text(inst: AdjunctionInstance) -> str:
    """Four graph blocks followed by ``map`` lines for h, w, lam and sigma."""
    from .graph import _token
    lines = []
    for name in _BLOCKS:
        lines.append(f"graph {name}")
        lines += ["  " + ln for ln in graph_lines(getattr(inst, name))]
    for name in _MAPS:
        f = getattr(inst, name)
        for v in f.domain.vertices:
            lines.append(f"map {name} v {_token(v)} -> {_token(f.vmap[v])}")
        for e in f.domain.edges:
            lines.append(f"map {name} e {_token(e)} -> {_token(f.emap[e])}")
    return "\n".join(lines) + "\n"


def instance_from_text(text: str) -> AdjunctionInstance:
    """Parse the instance format.

    ``h`` and ``w`` may be omitted when omega has a single vertex; they are
    then read off the edge labels of gamma and s.
    """
    blocks: dict = {}
    maps: dict = {name: ({}, {}) for name in _MAPS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "graph":
            if len(parts) != 2 or parts[1] not in _BLOCKS:
                raise MalformedInput(f"line {lineno}: unknown graph block {raw.strip()!r}")
            current = parts[1]
            if current in blocks:
                raise MalformedInput(f"line {lineno}: graph {current} given twice")
            blocks[current] = []
        elif parts[0] == "map":
            if len(parts) != 6 or parts[1] not in _MAPS or parts[2] not in ("v", "e") or parts[4] != "->":
                raise MalformedInput(f"line {lineno}: cannot parse {raw.strip()!r}")
            vm, em = maps[parts[1]]
            (vm if parts[2] == "v" else em)[_parse_id(parts[3])] = _parse_id(parts[5])
            current = None
        elif current is not None:
            blocks[current].append(line)
        else:
            raise MalformedInput(f"line {lineno}: {raw.strip()!r} outside any block")
    missing = [b for b in _BLOCKS if b not in blocks]
    if missing:
        raise MalformedInput(f"missing graph blocks: {', '.join(missing)}")
    graphs = {name: parse_graph_lines(lines) for name, lines in blocks.items()}
    omega = graphs["omega"]
    morphisms = {}
    for name, (dom, cod) in _MAPS.items():
        vm, em = maps[name]
        g = graphs[dom]
        if not vm and not em and name in ("h", "w") and len(omega.vertices) == 1:
            vm = {v: omega.vertices[0] for v in g.vertices}
            em = {e: g.label(e) for e in g.edges}
        morphisms[name] = GraphMorphism(g, graphs[cod], vm, em)
    inst = AdjunctionInstance(omega, graphs["gamma"], graphs["s"], graphs["p"], morphisms["h"],
                              morphisms["w"], morphisms["lam"], morphisms["sigma"])
    inst.check()
    return inst


def load_instance(path: str) -> AdjunctionInstance:
    with open(path) as fh:
        return instance_from_text(fh.read())
