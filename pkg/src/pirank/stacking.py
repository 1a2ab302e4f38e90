"""Stackings of immersions, found by exact search.

A stacking of ``f: S -> Omega`` is a total order on every fibre of ``f``
such that, for edges ``e, e'`` over the same edge of Omega,
``e < e'`` iff ``iota(e) < iota(e')`` iff ``tau(e) < tau(e')``.  The edge
orders are then determined by the vertex orders, so the search runs over
pairs of vertices sharing a fibre: each pair is a boolean "s below t",
same-image edge pairs tie two such booleans together, and transitivity
inside a fibre does the rest.  The solver is a complete backtracking
search with propagation, so a ``None`` answer is a proof that no stacking
exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

import numpy as np
from numba import njit

from .graph import GraphMorphism, format_label, to_rose
from .prank import BudgetExceeded
from .words import DomainError, MalformedInput, Word, format_word, maximal_root, reduce, word_to_cycle


class StackingError(RuntimeError):
    """The search found no stacking where the theory guarantees one."""


@dataclass
class Stacking:
    """``orders[cell]`` lists the fibre over an image cell, bottom to top.

    Cells are ``("v", id)`` or ``("e", id)``.
    """

    orders: dict

    def reversed(self) -> "Stacking":
        return Stacking({k: tuple(reversed(v)) for k, v in self.orders.items()})

    def position(self) -> dict:
        pos = {}
        for order in self.orders.values():
            for i, cell in enumerate(order):
                pos[cell] = i
        return pos


# -- the solver ----------------------------------------------------------------


@njit(cache=True)
def _solve(n, fib, link_ptr, link_idx, max_nodes):
    """Complete search for a consistent family of fibre orders.

    Ordered pairs ``(s, t)`` are coded ``s * n + t``; ``link_idx`` lists,
    for each ordered pair, the ordered pairs whose truth it forces.
    Returns ``(status, rel)`` with status 1 = found, 0 = none exists,
    -1 = node budget exhausted; ``rel[s, t] == 1`` means ``s`` below ``t``.
    """
    rel = -np.ones((n, n), dtype=np.int8)
    trail = np.empty(n * n, dtype=np.int64)
    queue = np.empty(n * n, dtype=np.int64)
    top = 0
    dec_pair = np.empty(n * n, dtype=np.int64)
    dec_mark = np.empty(n * n, dtype=np.int64)
    dec_flip = np.zeros(n * n, dtype=np.int8)
    depth = 0
    nodes = 0
    pending = -1         # ordered pair to assert next, -1 to pick a fresh variable
    while True:
        if pending < 0:
            # choose the first undecided pair
            found = -1
            for s in range(n):
                for t in range(s + 1, n):
                    if fib[s] == fib[t] and rel[s, t] < 0:
                        found = s * n + t
                        break
                if found >= 0:
                    break
            if found < 0:
                return 1, rel
            dec_pair[depth] = found
            dec_mark[depth] = top
            dec_flip[depth] = 0
            depth += 1
            pending = found
        nodes += 1
        if max_nodes > 0 and nodes > max_nodes:
            return -1, rel
        # propagate "pending is true"; pairs are assigned when queued, so each enters once
        ok = True
        qh = 0
        qt = 0
        a = pending // n
        b = pending % n
        if rel[a, b] == 0:
            ok = False
        elif rel[a, b] < 0:
            rel[a, b] = 1
            rel[b, a] = 0
            trail[top] = pending
            top += 1
            queue[qt] = pending
            qt += 1
        while qh < qt and ok:
            p = queue[qh]
            qh += 1
            a = p // n
            b = p % n
            for k in range(link_ptr[p], link_ptr[p + 1]):
                q = link_idx[k]
                c = q // n
                d = q % n
                if rel[c, d] == 0:
                    ok = False
                    break
                if rel[c, d] < 0:
                    rel[c, d] = 1
                    rel[d, c] = 0
                    trail[top] = q
                    top += 1
                    queue[qt] = q
                    qt += 1
            if not ok:
                break
            for r in range(n):
                if fib[r] != fib[a] or r == a or r == b:
                    continue
                # a < b and b < r force a < r; r < a and a < b force r < b
                for side in range(2):
                    if side == 0:
                        if rel[b, r] != 1:
                            continue
                        c = a
                        d = r
                    else:
                        if rel[r, a] != 1:
                            continue
                        c = r
                        d = b
                    if rel[c, d] == 0:
                        ok = False
                        break
                    if rel[c, d] < 0:
                        rel[c, d] = 1
                        rel[d, c] = 0
                        q = c * n + d
                        trail[top] = q
                        top += 1
                        queue[qt] = q
                        qt += 1
                if not ok:
                    break
        if ok:
            pending = -1
            continue
        # conflict: undo to the latest decision with an untried branch
        while True:
            if depth == 0:
                while top > 0:
                    top -= 1
                    p = trail[top]
                    rel[p // n, p % n] = -1
                    rel[p % n, p // n] = -1
                return 0, rel
            d = depth - 1
            while top > dec_mark[d]:
                top -= 1
                p = trail[top]
                rel[p // n, p % n] = -1
                rel[p % n, p // n] = -1
            if dec_flip[d] == 0:
                dec_flip[d] = 1
                p = dec_pair[d]
                pending = (p % n) * n + p // n
                break
            depth -= 1


@njit(cache=True)
def _word_links(w):
    """Link table for the cycle of a cyclically reduced word over the rose."""
    n = w.shape[0]
    src = np.empty(n, dtype=np.int64)
    dst = np.empty(n, dtype=np.int64)
    lab = np.empty(n, dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        if w[i] > 0:
            src[i] = i
            dst[i] = j
            lab[i] = w[i]
        else:
            src[i] = j
            dst[i] = i
            lab[i] = -w[i]
    return _links_from_edges(n, src, dst, lab)


@njit(cache=True)
def _links_from_edges(n, src, dst, lab):
    m = src.shape[0]
    count = np.zeros(n * n + 1, dtype=np.int64)
    for e in range(m):
        for f in range(m):
            if e != f and lab[e] == lab[f]:
                count[src[e] * n + src[f] + 1] += 1
                count[dst[e] * n + dst[f] + 1] += 1
    for k in range(n * n):
        count[k + 1] += count[k]
    ptr = count.copy()
    idx = np.empty(ptr[n * n], dtype=np.int64)
    fill = ptr[:-1].copy()
    for e in range(m):
        for f in range(m):
            if e != f and lab[e] == lab[f]:
                p = src[e] * n + src[f]
                q = dst[e] * n + dst[f]
                idx[fill[p]] = q
                fill[p] += 1
                idx[fill[q]] = p
                fill[q] += 1
    return ptr, idx


@njit(cache=True)
def _stack_word(w, max_nodes):
    n = w.shape[0]
    ptr, idx = _word_links(w)
    fib = np.zeros(n, dtype=np.int64)
    return _solve(n, fib, ptr, idx, max_nodes)


@njit(cache=True)
def _rank_array(rel, fib):
    n = rel.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for s in range(n):
        for t in range(n):
            if t != s and fib[t] == fib[s] and rel[t, s] == 1:
                out[s] += 1
    return out


def _ranks(rel: np.ndarray, vertices: Sequence, fib) -> dict:
    """Vertex -> position within its fibre, read from the pair relation."""
    ranks = _rank_array(rel, np.asarray(fib, dtype=np.int64))
    return dict(zip(vertices, ranks.tolist()))


def _orders_from_ranks(f: GraphMorphism, vrank: dict) -> Stacking:
    orders: dict = {}
    for v in f.domain.vertices:
        orders.setdefault(("v", f.vmap[v]), []).append(v)
    for e in f.domain.edges:
        orders.setdefault(("e", f.emap[e]), []).append(e)
    src = f.domain.src
    for (kind, x), cells in orders.items():
        if kind == "v":
            cells.sort(key=lambda v: vrank[v])
        else:
            cells.sort(key=lambda e: vrank[src(e)])
    return Stacking({k: tuple(v) for k, v in sorted(orders.items(), key=lambda kv: _cell_key(kv[0]))})


def _cell_key(cell):
    kind, x = cell
    return (kind != "v", (0, x) if isinstance(x, int) else (1, str(x)))


def search_stacking(f: GraphMorphism, max_nodes: int = 0) -> Stacking | None:
    """Complete search for a stacking of ``f``; ``None`` if none exists.

    ``f`` must be an immersion.  Raises ``BudgetExceeded`` if ``max_nodes``
    (when positive) is exhausted.
    """
    if not f.is_immersion():
        raise DomainError("stackings are searched for immersions only")
    dom = f.domain
    verts = list(dom.vertices)
    index = {v: i for i, v in enumerate(verts)}
    fibre_ids: dict = {}
    fib = np.array([fibre_ids.setdefault(f.vmap[v], len(fibre_ids)) for v in verts], dtype=np.int64)
    edges = list(dom.edges)
    img_ids: dict = {}
    src = np.array([index[dom.src(e)] for e in edges], dtype=np.int64)
    dst = np.array([index[dom.dst(e)] for e in edges], dtype=np.int64)
    lab = np.array([img_ids.setdefault(f.emap[e], len(img_ids)) for e in edges], dtype=np.int64)
    ptr, idx = _links_from_edges(len(verts), src, dst, lab)
    status, rel = _solve(len(verts), fib, ptr, idx, max_nodes)
    if status < 0:
        raise BudgetExceeded(max_nodes)
    if status == 0:
        return None
    return _orders_from_ranks(f, _ranks(rel, verts, fib))


def word_morphism(w: Sequence[int], rank: int | None = None) -> GraphMorphism:
    cycle = word_to_cycle(w)
    return to_rose(cycle, rank or max(abs(x) for x in w))


def _check_word(w: Sequence[int]) -> Word:
    w = tuple(w)
    if not w:
        raise DomainError("the trivial word has no stacking problem")
    if reduce(w) != w or (len(w) > 1 and w[0] == -w[-1]):
        raise DomainError(f"{format_word(w)} is not cyclically reduced")
    return w


def stack_word_raw(w: Sequence[int], max_nodes: int = 0) -> Stacking | None:
    """Search for a stacking of the cycle of ``w`` over the rose, powers allowed."""
    w = _check_word(w)
    status, rel = _stack_word(np.array(w, dtype=np.int64), max_nodes)
    if status < 0:
        raise BudgetExceeded(max_nodes)
    if status == 0:
        return None
    n = len(w)
    vrank = _ranks(rel, list(range(n)), [0] * n)
    return _word_stacking(w, vrank)


def _word_stacking(w: Word, vrank: dict) -> Stacking:
    n = len(w)
    orders = {("v", 0): tuple(sorted(range(n), key=lambda v: vrank[v]))}
    by_label: dict = {}
    for i, x in enumerate(w):
        by_label.setdefault(abs(x), []).append(i)
    for lab in sorted(by_label):
        es = by_label[lab]
        orders[("e", lab)] = tuple(sorted(es, key=lambda i: vrank[i if w[i] > 0 else (i + 1) % n]))
    return Stacking(orders)


def find_stacking(w: Sequence[int], rank: int | None = None, max_nodes: int = 0) -> Stacking:
    """A stacking of the indivisible cyclically reduced loop ``w`` over the rose."""
    w = _check_word(w)
    root = maximal_root(w)
    if root.exponent > 1:
        raise DomainError(f"{format_word(w)} = ({format_word(root.root)})^{root.exponent} is divisible; "
                          "stackings are only guaranteed for indivisible loops")
    if rank is not None and max(abs(x) for x in w) > rank:
        raise DomainError(f"{format_word(w)} exceeds rank {rank}")
    st = stack_word_raw(w, max_nodes)
    if st is None:
        raise StackingError(f"no stacking found for the indivisible word {format_word(w)}")
    return st


def verify_stacking(f: GraphMorphism | Sequence[int], st: Stacking) -> bool:
    """The pullback condition on every edge fibre."""
    if not isinstance(f, GraphMorphism):
        return _verify_word(_check_word(f), st)
    fibres: dict = {}
    for v in f.domain.vertices:
        fibres.setdefault(("v", f.vmap[v]), set()).add(v)
    for e in f.domain.edges:
        fibres.setdefault(("e", f.emap[e]), set()).add(e)
    if set(st.orders) != set(fibres):
        raise MalformedInput("stacking is not keyed by the image cells")
    for cell, order in st.orders.items():
        if len(order) != len(set(order)) or set(order) != fibres[cell]:
            raise MalformedInput(f"order over {cell!r} is not a permutation of its fibre")
    pos = {}
    for (kind, _), order in st.orders.items():
        for i, c in enumerate(order):
            pos[(kind, c)] = i
    dom = f.domain
    for (kind, _), order in st.orders.items():
        if kind != "e":
            continue
        for i in range(len(order) - 1):
            e, e2 = order[i], order[i + 1]
            if not pos[("v", dom.src(e))] < pos[("v", dom.src(e2))]:
                return False
            if not pos[("v", dom.dst(e))] < pos[("v", dom.dst(e2))]:
                return False
    return True


def _verify_word(w: Word, st: Stacking) -> bool:
    """``verify_stacking`` for the cycle of ``w`` over the rose, without building graphs."""
    n = len(w)
    labels = sorted({abs(x) for x in w})
    expected = [("v", 0)] + [("e", lab) for lab in labels]
    if sorted(st.orders, key=_cell_key) != expected:
        raise MalformedInput("stacking is not keyed by the image cells")
    vorder = st.orders[("v", 0)]
    if sorted(vorder) != list(range(n)):
        raise MalformedInput("vertex order is not a permutation of the fibre")
    pos = [0] * n
    for i, v in enumerate(vorder):
        pos[v] = i
    for lab in labels:
        order = st.orders[("e", lab)]
        if sorted(order) != [i for i, x in enumerate(w) if abs(x) == lab]:
            raise MalformedInput(f"order over edge {lab} is not a permutation of its fibre")
        ends = [(i, (i + 1) % n) if w[i] > 0 else ((i + 1) % n, i) for i in order]
        for (s1, d1), (s2, d2) in zip(ends, ends[1:]):
            if not (pos[s1] < pos[s2] and pos[d1] < pos[d2]):
                return False
    return True


def brute_force_stackable(f: GraphMorphism) -> bool:
    """Try every family of fibre orders; only for tiny fibres."""
    fibres: dict = {}
    for v in f.domain.vertices:
        fibres.setdefault(f.vmap[v], []).append(v)
    keys = list(fibres)
    dom = f.domain
    edges = list(dom.edges)
    for choice in product(*(permutations(fibres[k]) for k in keys)):
        pos = {}
        for order in choice:
            for i, v in enumerate(order):
                pos[v] = i
        good = True
        for a in range(len(edges)):
            for b in range(a + 1, len(edges)):
                e, e2 = edges[a], edges[b]
                if f.emap[e] != f.emap[e2]:
                    continue
                if (pos[dom.src(e)] < pos[dom.src(e2)]) != (pos[dom.dst(e)] < pos[dom.dst(e2)]):
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


def format_stacking(st: Stacking) -> str:
    """One line per image cell: the fibre's cells, bottom to top."""
    lines = []
    for (kind, x), order in st.orders.items():
        name = format_label(x) if kind == "e" else str(x)
        lines.append(f"{kind} {name}: " + " ".join(str(c) for c in order))
    return "\n".join(lines) + "\n"


def parse_stacking(text: str) -> Stacking:
    from .graph import parse_label, _parse_id
    orders = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, body = line.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] not in ("v", "e"):
            raise MalformedInput(f"cannot parse stacking line {raw!r}")
        cell = (parts[0], parse_label(parts[1]) if parts[0] == "e" else _parse_id(parts[1]))
        orders[cell] = tuple(_parse_id(t) for t in body.split())
    return Stacking(orders)
