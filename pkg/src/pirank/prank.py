"""Primitivity rank and w-subgroups.

Candidates are the based immersed images of the ``w``-cycle: quotients of
its vertex set, folded.  They are enumerated by lifting ``w`` letter by
letter into a growing immersed graph; a letter whose lift is not yet
defined branches over every existing vertex and one fresh vertex.  This
visits each folded quotient exactly once, since the vertex numbering is
forced by first visits along ``w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import (LabeledGraph, canonical_form, canonical_graph, find_morphism, fold, path_in_basis,
                    quotient, spanning_tree_basis, lift_word)
from .whitehead import is_primitive, is_primitive_rank2
from .words import (Alphabet, DomainError, Word, cyclic_reduce, format_word, infer_rank, maximal_root,
                    reduce, word_to_cycle)

INF = math.inf


class BudgetExceeded(RuntimeError):
    def __init__(self, explored: int, partial=None):
        super().__init__(f"search budget exhausted after {explored} nodes")
        self.explored = explored
        self.partial = partial


class Candidate:
    """A based immersed image of the w-cycle together with the lift of w.

    ``tree_word`` is w written in the basis dual to the non-tree edges of
    the first-visit spanning tree, numbered in creation order.
    """

    __slots__ = ("nv", "edges", "path", "rank", "tree_word", "_graph")

    def __init__(self, nv, edges, path, rank, tree_word):
        self.nv = nv
        self.edges = edges
        self.path = path
        self.rank = rank
        self.tree_word = tree_word
        self._graph = None

    @property
    def graph(self) -> LabeledGraph:
        if self._graph is None:
            self._graph = LabeledGraph(range(self.nv), self.edges, base=0)
        return self._graph

    def w_in_basis(self) -> Word:
        return path_in_basis(spanning_tree_basis(self.graph), self.path)


@dataclass
class WSubgroup:
    graph: LabeledGraph
    rank: int
    w_in_basis: Word
    basis_words: tuple

    @property
    def presentation(self) -> tuple[int, Word]:
        return self.rank, self.w_in_basis

    def generators_text(self) -> str:
        return "<" + ", ".join(format_word(g) for g in self.basis_words) + ">"

    def presentation_text(self) -> str:
        names = "".join(format_word((k,)) for k in range(1, self.rank + 1))
        return f"<{names} | {format_word(self.w_in_basis)}>"


@dataclass
class PrimitivityRankReport:
    word: Word
    core: Word
    conjugator: Word
    rank: int
    pi: float
    w_subgroups: list
    is_trivial: bool
    is_primitive: bool
    is_proper_power: bool
    candidates_explored: int = 0

    @property
    def verdict(self) -> str:
        return negative_immersions_verdict_from_pi(self.pi)

    def pi_text(self) -> str:
        return "inf" if self.pi == INF else str(int(self.pi))


def negative_immersions_verdict_from_pi(pi) -> str:
    if pi == INF or pi == 0:
        return "primitive/trivial"
    if pi == 1:
        return "torsion"
    if pi == 2:
        return "nonpositive-only"
    return "negative"


def _imprimitive_in(word: Word, rank: int) -> bool:
    if rank == 0:
        return bool(word)
    if rank == 1:
        return len(cyclic_reduce(word)[0]) != 1
    if rank == 2:
        return not is_primitive_rank2(word)
    return not is_primitive(word, rank)


def _validate(w: Sequence[int], rank: int | None) -> tuple[Word, int]:
    w = reduce(w)
    rank = rank or infer_rank(w)
    alphabet = Alphabet(rank)
    for x in w:
        if x not in alphabet:
            raise DomainError(f"letter {format_word((x,))} exceeds rank {rank}")
    return w, rank


def _lift_images(w: Word, *, max_edges: int | None, min_hits: int, max_rank: int | None,
                 budget: int | None = None, visit=None) -> list:
    """Enumerate based immersed images of the cyclically reduced ``w``.

    ``max_edges``, ``min_hits`` and ``max_rank`` filter the output and also
    prune the search: the coverage deficit must fit in the letters left, and
    b1 only grows as the lift adds edges.  ``visit(candidate)`` may return a
    new (smaller) rank limit; without it the candidates are collected.
    """
    n = len(w)
    table: dict = {}            # (vertex, letter) -> next vertex
    hits: dict = {}             # edge key (src, generator) -> traversal count
    gen_of: dict = {}           # edge key -> index among non-tree edges, 0 for tree edges
    steps: list = []            # (edge key, sign)
    gens: list = []             # signed non-tree indices along the lift
    limit = [n if max_rank is None else max_rank]
    out: list = []
    st = [1, 0, 0, 0]           # vertices, edges, coverage deficit, nodes

    def emit(rank_now):
        edges = {key: (key[0], table[key], key[1]) for key in sorted(hits)}
        c = Candidate(st[0], edges, tuple(steps), rank_now, reduce(gens))
        if visit is None:
            out.append(c)
        else:
            new = visit(c)
            if new is not None:
                limit[0] = min(limit[0], new)

    def rec(i: int, v: int, rank_now: int):
        st[3] += 1
        if budget is not None and st[3] > budget:
            raise BudgetExceeded(st[3])
        if st[2] > n - i:
            return
        if i == n:
            if v == 0:
                emit(rank_now)
            return
        x = w[i]
        sign = 1 if x > 0 else -1
        u = table.get((v, x))
        if u is not None:
            key = (v, x) if x > 0 else (u, -x)
            c = hits[key]
            short = c < min_hits
            st[2] -= short
            hits[key] = c + 1
            steps.append((key, sign))
            g = gen_of[key]
            if g:
                gens.append(g * sign)
            rec(i + 1, u, rank_now)
            if g:
                gens.pop()
            steps.pop()
            hits[key] = c
            st[2] += short
            return
        if max_edges is not None and st[1] >= max_edges:
            return
        nv = st[0]
        deficit = max(0, min_hits - 1)
        for target in ((0,) if i == n - 1 else range(nv + 1)):
            fresh = target == nv
            if not fresh and (target, -x) in table:
                continue
            new_rank = rank_now + (0 if fresh else 1)
            if new_rank > limit[0]:
                continue
            key = (v, x) if x > 0 else (target, -x)
            table[(v, x)] = target
            table[(target, -x)] = v
            hits[key] = 1
            g = 0 if fresh else new_rank
            gen_of[key] = g
            st[0] += fresh
            st[1] += 1
            st[2] += deficit
            steps.append((key, sign))
            if g:
                gens.append(g * sign)
            rec(i + 1, target, new_rank)
            if g:
                gens.pop()
            steps.pop()
            st[0] -= fresh
            st[1] -= 1
            st[2] -= deficit
            del hits[key]
            del gen_of[key]
            del table[(v, x)]
            del table[(target, -x)]

    rec(0, 0, 0)
    return out


def enumerate_quotients(w: Sequence[int], rank: int | None = None, max_rank: int | None = None,
                        budget: int | None = None) -> Iterator[LabeledGraph]:
    """Folded quotients of the based w-cycle with at most ``|w|//2`` edges, each hit twice."""
    core = _core_word(w, rank)
    for cand in _lift_images(core, max_edges=len(core) // 2, min_hits=2, max_rank=max_rank, budget=budget):
        yield cand.graph


def _core_word(w, rank) -> Word:
    w, rank = _validate(w, rank)
    core = cyclic_reduce(w)[0]
    if not core:
        raise DomainError("the trivial word has no cycle")
    return core


def _maximal(cands: list[Candidate]) -> list[Candidate]:
    """Candidates that do not strictly factor through another candidate."""
    keys = [canonical_form(c.graph) for c in cands]
    out = []
    for i, c in enumerate(cands):
        dominated = False
        for j, d in enumerate(cands):
            if i == j or keys[i] == keys[j]:
                continue
            if find_morphism(c.graph, d.graph) is not None:
                dominated = True
                break
        if not dominated:
            out.append(c)
    return out


def _to_wsubgroup(c: Candidate) -> WSubgroup:
    basis = spanning_tree_basis(c.graph)
    return WSubgroup(canonical_graph(c.graph), c.rank, path_in_basis(basis, c.path), basis.words)


def primitivity_rank(w: Sequence[int], rank: int | None = None, budget: int | None = None) -> PrimitivityRankReport:
    """``pi(w)`` and the w-subgroups, for ``w`` in ``F_rank``."""
    w, rank = _validate(w, rank)
    core, conj = cyclic_reduce(w)
    if not core:
        return PrimitivityRankReport(w, core, conj, rank, 0, [], True, False, False)
    if is_primitive(core, rank):
        return PrimitivityRankReport(w, core, conj, rank, INF, [], False, True, False)
    used = len({abs(x) for x in core})
    found: dict[int, list] = {}
    explored = [0]

    def visit(cand):
        explored[0] += 1
        if _imprimitive_in(cand.tree_word, cand.rank):
            found.setdefault(cand.rank, []).append(cand)
            return cand.rank
        return None

    try:
        _lift_images(core, max_edges=len(core) // 2, min_hits=2, max_rank=used, budget=budget, visit=visit)
    except BudgetExceeded as exc:
        exc.partial = {"explored": explored[0], "best_rank_so_far": min(found, default=None)}
        raise
    explored = explored[0]
    pi = min(found)
    subgroups = [_to_wsubgroup(c) for c in _maximal(found[pi])]
    return PrimitivityRankReport(w, core, conj, rank, pi, subgroups, False, False,
                                 maximal_root(core).exponent > 1, explored)


def peripheral_subgroup(w: Sequence[int], rank: int | None = None,
                        report: PrimitivityRankReport | None = None) -> WSubgroup | None:
    """The unique w-subgroup when ``pi(w) = 2``, else ``None``."""
    report = report or primitivity_rank(w, rank)
    if report.pi != 2:
        return None
    if len(report.w_subgroups) != 1:
        raise AssertionError(f"{len(report.w_subgroups)} maximal rank-two candidates for "
                             f"{format_word(report.core)}; expected exactly one")
    return report.w_subgroups[0]


def negative_immersions_verdict(w: Sequence[int], rank: int | None = None) -> str:
    return primitivity_rank(w, rank).verdict


# -- oracles -----------------------------------------------------------------


def restricted_growth_strings(n: int) -> Iterator[tuple]:
    """All set partitions of ``range(n)`` as restricted growth strings."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(a)
            return
        for b in range(m + 2):
            a[i] = b
            yield from rec(i + 1, max(m, b))

    yield from rec(1, 0)


def _image_rank_and_word(folded: LabeledGraph, core: Word) -> tuple[int, Word]:
    path, end = lift_word(folded, core)
    assert end == folded.base
    basis = spanning_tree_basis(folded)
    return basis.rank, path_in_basis(basis, path)


def bruteforce_primitivity_rank(w: Sequence[int], rank: int | None = None) -> float:
    """Minimum rank over ALL vertex partitions of the w-cycle, folded.

    No edge bound and no coverage filter; imprimitivity is decided by
    Whitehead's algorithm.  Bell(|w|) partitions, so keep ``|w|`` small.
    """
    w, rank = _validate(w, rank)
    core = cyclic_reduce(w)[0]
    if not core:
        return 0
    if is_primitive(core, rank):
        return INF
    cycle = word_to_cycle(core)
    seen = {}
    for rgs in restricted_growth_strings(len(core)):
        firsts = {}
        pairs = []
        for v, b in enumerate(rgs):
            if b in firsts:
                pairs.append((firsts[b], v))
            else:
                firsts[b] = v
        q, _ = quotient(cycle, vertex_pairs=pairs)
        folded, _ = fold(q)
        key = canonical_form(folded)
        if key in seen:
            continue
        r, ww = _image_rank_and_word(folded, core)
        seen[key] = r if (r and not is_primitive(ww, r)) else None
    ranks = [r for r in seen.values() if r is not None]
    return min(ranks)


def exhaustive_primitivity_rank(w: Sequence[int], rank: int | None = None) -> float:
    """Minimum over every folded quotient of the w-cycle, without the size or coverage filters.

    Each folded quotient is generated once, directly as an immersed image
    of the cycle.  The only cut is branch-and-bound on b1: images of rank at
    least the number of letters used cannot beat the bound given by the
    sub-rose.  Imprimitivity is decided by Whitehead's algorithm.
    """
    w, rank = _validate(w, rank)
    core = cyclic_reduce(w)[0]
    if not core:
        return 0
    if is_primitive(core, rank):
        return INF
    used = len({abs(x) for x in core})
    best = [used]

    def visit(cand):
        if cand.rank < best[0] and cand.rank and not is_primitive(cand.tree_word, cand.rank):
            best[0] = cand.rank
            return cand.rank - 1
        return None

    _lift_images(core, max_edges=None, min_hits=0, max_rank=used - 1, visit=visit)
    return best[0]


def all_images(w: Sequence[int], rank: int | None = None) -> list[LabeledGraph]:
    """Every folded quotient of the based w-cycle (no filters)."""
    core = _core_word(w, rank)
    return [c.graph for c in _lift_images(core, max_edges=None, min_hits=0, max_rank=None)]
