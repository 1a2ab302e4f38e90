"""Words in a free group of finite rank.

Letters are signed generator indices: ``k`` is the k-th generator and ``-k``
its inverse, for ``1 <= k <= rank``.  A word is a plain tuple of letters.
The ASCII form writes generators as ``a..z`` and inverses as ``A..Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Word = tuple[int, ...]

MAX_RANK = 26


class MalformedInput(ValueError):
    """Raised when textual or structural input cannot be interpreted."""


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if not 1 <= self.rank <= MAX_RANK:
            raise MalformedInput(f"rank must be in 1..{MAX_RANK}, got {self.rank}")

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1)) + tuple(-k for k in range(1, self.rank + 1))

    def __contains__(self, letter: int) -> bool:
        return letter != 0 and abs(letter) <= self.rank

    def name(self, letter: int) -> str:
        if letter not in self:
            raise MalformedInput(f"letter {letter} is not in the rank-{self.rank} alphabet")
        return letter_name(letter)

    def parse(self, text: str) -> Word:
        w = parse_word(text)
        for x in w:
            if x not in self:
                raise MalformedInput(f"letter {letter_name(x)!r} exceeds rank {self.rank}")
        return w


def letter_name(letter: int) -> str:
    c = chr(ord("a") + abs(letter) - 1)
    return c if letter > 0 else c.upper()


def parse_letters(text: str) -> Word:
    """Read ASCII letters without reducing."""
    out = []
    for ch in text.strip():
        if "a" <= ch <= "z":
            out.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            out.append(-(ord(ch) - ord("A") + 1))
        else:
            raise MalformedInput(f"unknown letter {ch!r} in {text!r}")
    return tuple(out)


def parse_word(text: str) -> Word:
    return reduce(parse_letters(text))


def format_word(w: Iterable[int]) -> str:
    return "".join(letter_name(x) for x in w)


def infer_rank(*words: Iterable[int]) -> int:
    return max((abs(x) for w in words for x in w), default=1)


def reduce(raw: Iterable[int]) -> Word:
    """Free reduction: cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in raw:
        if x == 0:
            raise MalformedInput("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    return reduce(x for w in words for x in w)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    return reduce(tuple(w) * k)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != -w[-1])


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``conjugator * core * conjugator^-1 == w``."""
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1], w[:i]


def rotate(w: Sequence[int], k: int) -> Word:
    if not w:
        return ()
    k %= len(w)
    return tuple(w[k:]) + tuple(w[:k])


def cyclic_rotations(w: Sequence[int]) -> list[Word]:
    return [rotate(w, k) for k in range(len(w))] or [()]


def cyclic_canonical(w: Sequence[int]) -> Word:
    """Least rotation; a representative of the cyclic word."""
    return min(cyclic_rotations(w))


@dataclass(frozen=True)
class RootDecomposition:
    root: Word
    exponent: int


def maximal_root(w: Sequence[int]) -> RootDecomposition:
    """Indivisible ``root`` and maximal ``exponent`` with ``root**exponent == w``."""
    w = tuple(w)
    if not w:
        raise DomainError("the trivial word has no root")
    if not is_cyclically_reduced(w):
        raise DomainError(f"{format_word(w)} is not cyclically reduced")
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[d:] + w[:d] == w:
            return RootDecomposition(w[:d], n // d)
    raise AssertionError("unreachable: d = n always succeeds")


def is_proper_power(w: Sequence[int]) -> bool:
    core, _ = cyclic_reduce(w)
    return bool(core) and maximal_root(core).exponent > 1


def word_to_cycle(w: Sequence[int], alphabet: Alphabet | int | None = None):
    """The based cycle graph spelling ``w``, labelled over the rose.

    Vertex ``i`` sits before letter ``i``; edge ``i`` carries letter ``w[i]``
    and is oriented along the rose petal, so it runs ``i -> i+1`` for a
    generator and ``i+1 -> i`` for an inverse.
    """
    from .graph import LabeledGraph

    w = tuple(w)
    if isinstance(alphabet, int):
        alphabet = Alphabet(alphabet)
    if alphabet is not None:
        for x in w:
            if x not in alphabet:
                raise MalformedInput(f"letter {x} exceeds rank {alphabet.rank}")
    if not w:
        raise DomainError("the trivial word has no cycle")
    if not is_cyclically_reduced(w):
        raise DomainError(f"{format_word(w)} is not cyclically reduced; its cycle does not immerse")
    n = len(w)
    edges = {}
    for i, x in enumerate(w):
        a, b = i, (i + 1) % n
        edges[i] = (a, b, x) if x > 0 else (b, a, -x)
    return LabeledGraph(range(n), edges, base=0)


def exponent_sums(w: Sequence[int], rank: int) -> list[int]:
    row = [0] * rank
    for x in w:
        row[abs(x) - 1] += 1 if x > 0 else -1
    return row


def matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over the rationals."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def abelianization_kernel_rank(images: Sequence[Sequence[int]], ambient: Alphabet | int) -> int:
    """Rank of the kernel of ``H_1(H) -> H_1(F)`` for ``H`` free on ``images``."""
    rank = ambient.rank if isinstance(ambient, Alphabet) else ambient
    rows = [exponent_sums(reduce(w), rank) for w in images]
    return len(rows) - matrix_rank(rows)
