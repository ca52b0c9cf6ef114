"""Permutations of positions, reduced words and braid-move navigation.

A permutation is stored as the tuple ``t`` with ``(w . m)[k] = m[t[k]]``
for a word ``m``; generator ``s_j`` (1-based) exchanges positions ``j-1`` and
``j`` of ``t``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable

Perm = tuple[int, ...]
RWord = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


@lru_cache(maxsize=None)
def perm_of_word(word: RWord, n: int) -> Perm:
    t = list(range(n))
    for j in reversed(word):
        t[j - 1], t[j] = t[j], t[j - 1]
    return tuple(t)


def act(t: Perm, m: tuple) -> tuple:
    return tuple(m[k] for k in t)


def length(t: Perm) -> int:
    n = len(t)
    return sum(1 for a in range(n) for b in range(a + 1, n) if t[a] > t[b])


def is_reduced(word: RWord, n: int) -> bool:
    return len(word) == length(perm_of_word(word, n))


@lru_cache(maxsize=None)
def lexmin_word(t: Perm) -> RWord:
    """Lexicographically smallest reduced word (generators ordered 1 < 2 < ...)."""
    t = list(t)
    out = []
    while True:
        for j in range(1, len(t)):
            if t[j - 1] > t[j]:
                out.append(j)
                t[j - 1], t[j] = t[j], t[j - 1]
                break
        else:
            return tuple(out)


def all_perms(n: int) -> list[Perm]:
    return sorted(permutations(range(n)))


def braid_neighbours(word: RWord):
    """Words one commutation or braid move away, with the move's position and kind."""
    w = list(word)
    for p in range(len(w) - 1):
        a, b = w[p], w[p + 1]
        if abs(a - b) > 1:
            yield p, "commute", tuple(w[:p] + [b, a] + w[p + 2:])
    for p in range(len(w) - 2):
        a, b, c = w[p], w[p + 1], w[p + 2]
        if a == c and abs(a - b) == 1:
            yield p, "braid", tuple(w[:p] + [b, a, b] + w[p + 3:])


@lru_cache(maxsize=None)
def _distances(target: RWord) -> dict:
    dist = {target: 0}
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for _, _, v in braid_neighbours(w):
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def next_move(word: RWord, target: RWord):
    """First braid or commutation move bringing the reduced ``word`` closer to ``target``."""
    dist = _distances(target)
    d = dist[word]
    for p, kind, v in braid_neighbours(word):
        if dist[v] == d - 1:
            return p, kind, v
    raise AssertionError(f"no move from {word} towards {target}")


def shuffles(n1: int, n2: int) -> list[Perm]:
    """Minimal length representatives ``w`` with ``w . (m1 + m2)`` a shuffle of ``m1`` and ``m2``.

    Sorted by length, then lexicographically by the positions taken by ``m1``.
    """
    n = n1 + n2
    out = []
    for first in combinations(range(n), n1):
        t = [0] * n
        second = [k for k in range(n) if k not in first]
        for idx, k in enumerate(first):
            t[k] = idx
        for idx, k in enumerate(second):
            t[k] = n1 + idx
        out.append(tuple(t))
    out.sort(key=lambda t: (length(t), t))
    return out


def parabolic_split(t: Perm, n1: int) -> tuple[Perm, Perm]:
    """Write ``t = w y`` with ``w`` a shuffle and ``y`` in S_n1 x S_n2 (``y`` acting first)."""
    n = len(t)
    first = [k for k in range(n) if t[k] < n1]
    second = [k for k in range(n) if t[k] >= n1]
    w = [0] * n
    for idx, k in enumerate(first):
        w[k] = idx
    for idx, k in enumerate(second):
        w[k] = n1 + idx
    y = [0] * n
    for k in range(n):
        y[w[k]] = t[k]
    return tuple(w), tuple(y)


def parabolic_chooser(n1: int) -> Callable[[Perm], RWord]:
    @lru_cache(maxsize=None)
    def choose(t: Perm) -> RWord:
        w, y = parabolic_split(t, n1)
        return lexmin_word(w) + lexmin_word(y)

    return choose
