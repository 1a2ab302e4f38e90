"""Orderly generation of cyclic words up to symmetry.

Two cyclically reduced words are treated as equivalent when one is obtained
from the other by rotation, inversion, and a signed permutation of the
generators.  Primitivity rank and stackability are invariant under all
three, so sweeping one representative per class covers every word.

A representative is the least word in its class, where letters are ordered
``a < A < b < B < ...`` and a word is first relabelled so that generators
appear in order of first occurrence, each first occurring positively.
Generation is orderly: a prefix is abandoned as soon as one of its
rotations or inverted segments relabels to something smaller.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .words import Word


@njit(cache=True)
def _key(x):
    return (abs(x) - 1) * 2 + (1 if x < 0 else 0)


@njit(cache=True)
def _cmp_relabel(w, start, step, length, n, gmap):
    """Compare relabel(seq) with w[:length]; seq[t] = sign * w[(start + step*t) % n].

    ``step`` is +1 for a rotation and -1 for a reversed (inverted) read.
    """
    for k in range(gmap.shape[0]):
        gmap[k] = 0
    nid = 1
    for t in range(length):
        x = w[(start + step * t) % n]
        if step < 0:
            x = -x
        g = abs(x)
        if gmap[g] == 0:
            gmap[g] = nid if x > 0 else -nid
            nid += 1
        y = gmap[g] if x > 0 else -gmap[g]
        ky = _key(y)
        kw = _key(w[t])
        if ky != kw:
            return -1 if ky < kw else 1
    return 0


@njit(cache=True)
def _prefix_ok(w, m, gmap):
    for k in range(1, m):
        if _cmp_relabel(w, k, 1, m - k, 1 << 30, gmap) < 0:
            return False
    for j in range(m):
        if _cmp_relabel(w, m - 1, -1, m - j, 1 << 30, gmap) < 0:
            return False
    return True


@njit(cache=True)
def _full_ok(w, n, gmap):
    for k in range(1, n):
        if _cmp_relabel(w, k, 1, n, n, gmap) < 0:
            return False
    for s in range(n):
        if _cmp_relabel(w, s, -1, n, n, gmap) < 0:
            return False
    return True


@njit(cache=True)
def _generate(n, rank):
    cap = 1024
    out = np.zeros((cap, n), dtype=np.int8)
    count = 0
    w = np.zeros(n, dtype=np.int64)
    gmap = np.zeros(rank + 1, dtype=np.int64)
    choice = np.zeros(n + 1, dtype=np.int64)     # index into the letter list at each depth
    used = np.zeros(n + 1, dtype=np.int64)       # generators used by the prefix of each length
    letters = np.zeros(2 * rank + 1, dtype=np.int64)
    m = 0
    choice[0] = 0
    while m >= 0:
        # letters allowed at depth m: +-g for used generators, then the next new generator
        u = used[m]
        nl = 0
        for g in range(1, u + 1):
            letters[nl] = g
            letters[nl + 1] = -g
            nl += 2
        if u < rank:
            letters[nl] = u + 1
            nl += 1
        if m == n or choice[m] >= nl:
            if m == n:
                if not (n > 1 and w[0] == -w[n - 1]) and _full_ok(w, n, gmap):
                    if count == cap:
                        bigger = np.zeros((cap * 2, n), dtype=np.int8)
                        bigger[:cap] = out
                        out = bigger
                        cap *= 2
                    for t in range(n):
                        out[count, t] = w[t]
                    count += 1
            m -= 1
            if m >= 0:
                choice[m] += 1
            continue
        x = letters[choice[m]]
        if m > 0 and w[m - 1] == -x:
            choice[m] += 1
            continue
        w[m] = x
        if _prefix_ok(w, m + 1, gmap):
            used[m + 1] = u + 1 if x == u + 1 else u
            choice[m + 1] = 0
            m += 1
        else:
            choice[m] += 1
    return out[:count]


def word_classes(length: int, rank: int) -> list[Word]:
    """One representative per symmetry class of cyclically reduced words."""
    if length <= 0:
        return []
    arr = _generate(length, rank)
    return [tuple(int(x) for x in row) for row in arr]


def word_classes_upto(max_length: int, rank: int) -> list[Word]:
    out: list[Word] = []
    for n in range(1, max_length + 1):
        out.extend(word_classes(n, rank))
    return out


def class_key(w: Word) -> Word:
    """The class representative of a cyclically reduced word (pure Python)."""
    n = len(w)
    best = None
    for seq in _symmetric_reads(w):
        cand = _relabel(seq)
        k = tuple((abs(x) - 1) * 2 + (x < 0) for x in cand)
        if best is None or k < best[0]:
            best = (k, cand)
    return best[1] if n else ()


def _symmetric_reads(w: Word):
    n = len(w)
    inv = tuple(-x for x in reversed(w))
    for k in range(n):
        yield w[k:] + w[:k]
        yield inv[k:] + inv[:k]


def _relabel(seq) -> Word:
    gmap: dict = {}
    out = []
    for x in seq:
        g = abs(x)
        if g not in gmap:
            gmap[g] = (len(gmap) + 1) * (1 if x > 0 else -1)
        y = gmap[g]
        out.append(y if x > 0 else -y)
    return tuple(out)
