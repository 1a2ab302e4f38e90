"""Whitehead's algorithm on tuples of cyclic words.

A type-II move ``(A, a)`` with ``a in A`` and ``a^-1 not in A`` sends a
letter ``x != a^{+-1}`` to ``x a`` if only ``x`` is in ``A``, to ``a^-1 x`` if
only ``x^-1`` is in ``A``, to ``a^-1 x a`` if both are, and fixes it otherwise.
Permutation-inversion moves relabel letters.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import gcd
from typing import Iterable, Sequence

from .words import Word, cyclic_canonical, cyclic_reduce, format_word, inverse, reduce


@dataclass(frozen=True)
class WhiteheadMove:
    """Either a type-II move ``(subset, multiplier)`` or a signed permutation."""

    multiplier: int = 0
    subset: frozenset = frozenset()
    perm: tuple = ()            # perm[k-1] = image of generator k (signed); used when multiplier == 0

    @property
    def is_permutation(self) -> bool:
        return self.multiplier == 0

    def letter_image(self, x: int) -> Word:
        if self.is_permutation:
            y = self.perm[abs(x) - 1]
            return (y if x > 0 else -y,)
        a = self.multiplier
        if x == a or x == -a:
            return (x,)
        inside, inv_inside = x in self.subset, -x in self.subset
        if inside and inv_inside:
            return (-a, x, a)
        if inside:
            return (x, a)
        if inv_inside:
            return (-a, x)
        return (x,)

    def inverse(self) -> "WhiteheadMove":
        if self.is_permutation:
            inv = [0] * len(self.perm)
            for k, y in enumerate(self.perm, 1):
                inv[abs(y) - 1] = k if y > 0 else -k
            return WhiteheadMove(perm=tuple(inv))
        a = self.multiplier
        return WhiteheadMove(-a, frozenset(self.subset - {a} | {-a}))

    def __str__(self):
        if self.is_permutation:
            return "perm(" + ",".join(format_word((y,)) for y in self.perm) + ")"
        letters = "".join(format_word((x,)) for x in sorted(self.subset, key=lambda y: (abs(y), -y)))
        return f"({{{letters}}}, {format_word((self.multiplier,))})"


def apply_move(move: WhiteheadMove, w: Sequence[int]) -> Word:
    """Image of the cyclic word ``w``, cyclically reduced."""
    img = reduce(y for x in w for y in move.letter_image(x))
    return cyclic_reduce(img)[0]


def apply_to_element(move: WhiteheadMove, w: Sequence[int]) -> Word:
    return reduce(y for x in w for y in move.letter_image(x))


@lru_cache(maxsize=None)
def type_two_moves(rank: int) -> tuple[WhiteheadMove, ...]:
    """All ``2n * 2^(2n-2)`` moves ``(A, a)`` for rank ``n``."""
    letters = [k for k in range(1, rank + 1)] + [-k for k in range(1, rank + 1)]
    out = []
    for a in letters:
        rest = [x for x in letters if x not in (a, -a)]
        for bits in product((False, True), repeat=len(rest)):
            subset = frozenset([a] + [x for x, b in zip(rest, bits) if b])
            out.append(WhiteheadMove(a, subset))
    return tuple(out)


@lru_cache(maxsize=None)
def _move_tables(rank: int) -> tuple:
    """Per move, a dict letter -> image, for fast application."""
    tables = []
    letters = [k for k in range(1, rank + 1)] + [-k for k in range(1, rank + 1)]
    for m in type_two_moves(rank):
        tables.append({x: m.letter_image(x) for x in letters})
    return tuple(tables)


def signed_permutations(rank: int) -> Iterable[WhiteheadMove]:
    for p in permutations(range(1, rank + 1)):
        for signs in product((1, -1), repeat=rank):
            yield WhiteheadMove(perm=tuple(s * k for s, k in zip(signs, p)))


def _image(table: dict, w: Word) -> Word:
    out: list[int] = []
    for x in w:
        for y in table[x]:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    i, j = 0, len(out) - 1
    while i < j and out[i] == -out[j]:
        i += 1
        j -= 1
    return tuple(out[i:j + 1])


def _prepare(words: Iterable[Sequence[int]]) -> tuple[Word, ...]:
    return tuple(cyclic_reduce(w)[0] for w in words)


def _total(ws: Sequence[Word]) -> int:
    return sum(len(w) for w in ws)


@dataclass
class MinimizationTrace:
    start: tuple
    moves: list = field(default_factory=list)
    steps: list = field(default_factory=list)    # tuple after each move
    end: tuple = ()

    @property
    def length(self) -> int:
        return _total(self.end)


def _letter_index(x: int) -> int:
    return (abs(x) - 1) * 2 + (x < 0)


@lru_cache(maxsize=None)
def _cut_tables(rank: int) -> tuple:
    """Per move, the flat indices ``(i, j)`` with ``i in A``, ``j`` not in ``A``, and the multiplier index."""
    size = 2 * rank
    out = []
    for m in type_two_moves(rank):
        inside = {_letter_index(x) for x in m.subset}
        pairs = tuple(i * size + j for i in inside for j in range(size) if j not in inside)
        out.append((pairs, _letter_index(m.multiplier)))
    return tuple(out)


def whitehead_graph(ws: Sequence[Word], rank: int) -> list[int]:
    """Flat ``2n x 2n`` adjacency counts: one edge ``{x, y^-1}`` per cyclic adjacency ``x y``."""
    size = 2 * rank
    m = [0] * (size * size)
    for w in ws:
        n = len(w)
        for i in range(n):
            a = _letter_index(w[i])
            b = _letter_index(-w[(i + 1) % n])
            m[a * size + b] += 1
            m[b * size + a] += 1
    return m


def length_change(move_index: int, graph: list[int], rank: int) -> int:
    """``|phi(w)| - |w|`` for the move: edges cut by ``A`` minus the degree of ``a``."""
    pairs, a = _cut_tables(rank)[move_index]
    size = 2 * rank
    return sum(graph[k] for k in pairs) - sum(graph[a * size:(a + 1) * size])


def whitehead_minimize(words: Sequence[Sequence[int]], rank: int) -> MinimizationTrace:
    """Greedy descent by type-II moves to minimal total cyclic length.

    Each step takes the first strictly shortening move, found from the
    Whitehead graph without applying the moves; by peak reduction a tuple
    admitting no shortening move is of minimal length in its orbit.
    """
    cur = _prepare(words)
    trace = MinimizationTrace(start=cur)
    moves = type_two_moves(rank)
    tables = _move_tables(rank)
    cuts = _cut_tables(rank)
    size = 2 * rank
    length = _total(cur)
    while length > len(cur):
        g = whitehead_graph(cur, rank)
        degree = [sum(g[a * size:(a + 1) * size]) for a in range(size)]
        for k, (pairs, a) in enumerate(cuts):
            if degree[a] == 0:
                continue
            if sum(g[p] for p in pairs) < degree[a]:
                nxt = tuple(_image(tables[k], w) for w in cur)
                trace.moves.append(moves[k])
                trace.steps.append(nxt)
                cur, length = nxt, _total(nxt)
                break
        else:
            break
    trace.end = cur
    return trace


def minimal_length(words: Sequence[Sequence[int]], rank: int) -> int:
    return whitehead_minimize(words, rank).length


def primitivity_status(w: Sequence[int], rank: int) -> str:
    """``'trivial'``, ``'primitive'`` or ``'imprimitive'``."""
    return _status(cyclic_reduce(w)[0], rank)


@lru_cache(maxsize=1 << 16)
def _status(core: Word, rank: int) -> str:
    if not core:
        return "trivial"
    return "primitive" if minimal_length([core], rank) == 1 else "imprimitive"


def is_primitive(w: Sequence[int], rank: int) -> bool:
    """Primitivity of the conjugacy class of ``w``; the trivial word is not primitive."""
    return primitivity_status(w, rank) == "primitive"


def _key(ws: Sequence[Word]) -> tuple:
    return tuple(cyclic_canonical(w) for w in ws)


def minimal_level_set(words: Sequence[Sequence[int]], rank: int, limit: int | None = None):
    """All tuples reachable from a minimal representative by length-preserving moves.

    Tuples are kept up to rotation of each word.  ``limit`` caps the number of
    states; exceeding it raises ``RuntimeError``.
    """
    start = whitehead_minimize(words, rank).end
    length = _total(start)
    tables = _move_tables(rank)
    seen = {_key(start)}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        yield cur
        for table in tables:
            nxt = tuple(_image(table, w) for w in cur)
            if _total(nxt) != length:
                continue
            k = _key(nxt)
            if k not in seen:
                seen.add(k)
                if limit is not None and len(seen) > limit:
                    raise RuntimeError("minimal level set exceeds the state limit")
                queue.append(nxt)


def _letters_used(ws: Sequence[Word]) -> set:
    return {abs(x) for w in ws for x in w}


def in_proper_free_factor(w: Sequence[int], rank: int) -> bool:
    """Whether ``w`` is conjugate into a proper free factor of ``F_rank``.

    True iff some minimal representative omits a generator.  Signed
    permutations do not affect this, so exploring type-II moves suffices.
    """
    core = cyclic_reduce(w)[0]
    if not core:
        return True
    for rep in minimal_level_set([core], rank):
        if len(_letters_used(rep)) < rank:
            return True
    return False


def is_sub_basis(words: Sequence[Sequence[int]], rank: int) -> bool:
    """Whether the conjugacy classes extend, after one automorphism, to a basis."""
    ws = _prepare(words)
    if len(ws) > rank:
        return False
    if any(not w for w in ws):
        return False
    end = whitehead_minimize(ws, rank).end
    if any(len(w) != 1 for w in end):
        return False
    gens = [abs(w[0]) for w in end]
    return len(set(gens)) == len(gens)


def replay(trace: MinimizationTrace) -> bool:
    """Check every step: the move maps the previous tuple to the next and its inverse maps back."""
    prev = trace.start
    for m, nxt in zip(trace.moves, trace.steps):
        if _key(tuple(apply_move(m, w) for w in prev)) != _key(nxt):
            return False
        if _key(tuple(apply_move(m.inverse(), w) for w in nxt)) != _key(prev):
            return False
        if _total(nxt) >= _total(prev):
            return False
        prev = nxt
    return _key(prev) == _key(trace.end)


def canonical_orbit_key(ws: Sequence[Word], rank: int) -> tuple:
    """Representative of a tuple up to rotation and signed permutations."""
    best = None
    for p in signed_permutations(rank):
        img = tuple(cyclic_canonical(apply_move(p, w)) for w in ws)
        if best is None or img < best:
            best = img
    return best


def automorphism_images(basis_images: Sequence[Word], w: Sequence[int]) -> Word:
    """Apply the endomorphism ``x_k -> basis_images[k-1]`` to ``w``."""
    return reduce(y for x in w for y in (basis_images[abs(x) - 1] if x > 0 else inverse(basis_images[abs(x) - 1])))


def is_primitive_rank2(w: Sequence[int]) -> bool:
    """Closed-form primitivity test in ``F(a, b)``.

    Primitive conjugacy classes of a rank-two free group correspond to
    primitive vectors ``(p, q)`` of its abelianization; the class for
    ``(p, q)`` is spelled by a balanced (Christoffel) cyclic word of length
    ``|p| + |q|`` with no letter occurring with both signs.
    """
    core = cyclic_reduce(w)[0]
    if not core:
        return False
    if any(abs(x) > 2 for x in core):
        raise ValueError("is_primitive_rank2 expects letters a, b only")
    p = sum(1 if x == 1 else -1 for x in core if abs(x) == 1)
    q = sum(1 if x == 2 else -1 for x in core if abs(x) == 2)
    if gcd(abs(p), abs(q)) != 1 or len(core) != abs(p) + abs(q):
        return False
    bits = [1 if abs(x) == 1 else 0 for x in core]
    n = len(bits)
    doubled = bits + bits
    for width in range(1, n):
        window = sum(doubled[:width])
        lo = hi = window
        for start in range(1, n):
            window += doubled[start + width - 1] - doubled[start - 1]
            lo, hi = min(lo, window), max(hi, window)
        if hi - lo > 1:
            return False
    return True
