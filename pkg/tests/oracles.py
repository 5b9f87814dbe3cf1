"""Slow, obviously-correct reference implementations used to cross-check the package."""
from __future__ import annotations

import itertools
import math
import re
from typing import List, Sequence, Set, Tuple

_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}
_CUBE = re.compile(r"(.+)\1\1")


def inverse(w: str) -> str:
    return "".join(_INV[c] for c in reversed(w))


def free_reduce(w: str) -> str:
    """Delete cancelling pairs until none is left."""
    while True:
        for pair in ("aA", "Aa", "bB", "Bb"):
            if pair in w:
                w = w.replace(pair, "", 1)
                break
        else:
            return w


def cyclic_reduce(w: str) -> str:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == _INV[w[-1]]:
        w = w[1:-1]
    return w


def rotations(w: str) -> List[str]:
    return [w[i:] + w[:i] for i in range(len(w))] or [""]


def has_cube(w: str) -> bool:
    """O(n^3): try every start and period."""
    n = len(w)
    for i in range(n):
        for p in range(1, (n - i) // 3 + 1):
            if w[i:i + p] == w[i + p:i + 2 * p] == w[i + 2 * p:i + 3 * p]:
                return True
    return False


def has_power(w: str, s: int) -> bool:
    return re.search(r"(.+)\1{%d}" % (s - 1), w) is not None


def occurrences(pattern: str, text: str) -> List[int]:
    return [i for i in range(len(text) - len(pattern) + 1) if text[i:i + len(pattern)] == pattern]


def cube_free_words(n: int) -> List[str]:
    """All positive cube-free words of length n, by brute force over {a,b}^n."""
    return [w for w in ("".join(t) for t in itertools.product("ab", repeat=n))
            if not _CUBE.search(w)]


def family(max_len: int) -> List[str]:
    out = []
    for n in range(1, max_len + 1):
        out.extend(w for w in cube_free_words(n) if w[0] == "b" and w[-1] == "b")
    return out


def star_passes(words: Sequence[str], lam) -> bool:
    """Every subword of W of length >= lam|W| occurs once in W and in no other word."""
    for h, W in enumerate(words):
        L = max(1, math.ceil(lam * len(W)))
        for p in range(len(W) - L + 1):
            for M in range(L, len(W) - p + 1):
                V = W[p:p + M]
                count = sum(len(occurrences(V, U)) for U in words)
                if count != 1:
                    return False
    return True


def is_periodic_with(w: str, A: str) -> bool:
    reps = len(w) // len(A) + 2
    return w in A * reps


def longest_periodic(V: str, A: str) -> int:
    best = 0
    for i in range(len(V)):
        for j in range(i + 1, len(V) + 1):
            if j - i > best and is_periodic_with(V[i:j], A):
                best = j - i
    return best


def abstract_relator_classes(G, k: int) -> Set[Tuple[Tuple[int, int], ...]]:
    """Canonical classes of cyclically reduced syllable words of length <= k vanishing in G."""
    letters = [(g, s) for g in range(G.order) if g != G.identity for s in (1, -1)]
    classes = set()
    for m in range(1, k + 1):
        for seq in itertools.product(letters, repeat=m):
            if any(seq[i] == (seq[(i + 1) % m][0], -seq[(i + 1) % m][1]) for i in range(m)) and m > 1:
                continue
            x = G.identity
            for g, s in seq:
                x = G.mul[x][g if s > 0 else G.inv[g]]
            if x != G.identity:
                continue
            inv = tuple((g, -s) for g, s in reversed(seq))
            classes.add(min(min(t[i:] + t[:i] for i in range(m)) for t in (seq, inv)))
    return classes


def greedy_codes(lengths: Sequence[Tuple[int, int]], ywords: Sequence[str]) -> dict:
    """Reference greedy assignment: (element, l) pairs in order -> first unused Y-word long enough."""
    used = set()
    out = {}
    for g, l in sorted(lengths, key=lambda t: (t[1], t[0])):
        j = next(j for j, y in enumerate(ywords) if j not in used and len(y) >= l)
        used.add(j)
        out[g] = ywords[j]
    return out
