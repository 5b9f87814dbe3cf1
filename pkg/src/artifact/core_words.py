"""Free-group words over {a, b}.

Words are plain strings: ``a``, ``b`` are generators, ``A`` = a^-1, ``B`` = b^-1,
and the empty string is the identity.

>>> free_reduce("baAb")
'bb'
>>> cyclic_reduce("abA")
(CyclicWord(letters='b'), 'a')
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

ALPHABET = "aAbB"
_INV = str.maketrans("aAbB", "AaBb")
_CANCEL = re.compile("aA|Aa|bB|Bb")
# a < A < b < B, mapped onto ordinary characters so that str comparison works
_ORDER = str.maketrans("aAbB", "0123")


@dataclass(frozen=True)
class Letter:
    base: str
    sign: int

    def __post_init__(self):
        if self.base not in ("a", "b") or self.sign not in (1, -1):
            raise ValueError(f"bad letter {self.base}^{self.sign}")

    @classmethod
    def parse(cls, ch: str) -> "Letter":
        if ch not in ALPHABET:
            raise ValueError(f"not a letter: {ch!r}")
        return cls(ch.lower(), 1 if ch.islower() else -1)

    def inverse(self) -> "Letter":
        return Letter(self.base, -self.sign)

    def __str__(self):
        return self.base if self.sign == 1 else self.base.upper()


def check_word(w: str) -> str:
    bad = set(w) - set(ALPHABET)
    if bad:
        raise ValueError(f"letters outside {{a,A,b,B}}: {sorted(bad)}")
    return w


def inverse(w: str) -> str:
    return w[::-1].translate(_INV)


def inv_letter(ch: str) -> str:
    return ch.swapcase()


def is_reduced(w: str) -> bool:
    return all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def free_reduce(raw: str) -> str:
    if not _CANCEL.search(raw):
        return raw
    # split into reduced pieces and cancel piece against piece
    # a cancelling pair overlapping a matched one sits at i+1 and is caught below
    cuts = [0]
    for m in _CANCEL.finditer(raw):
        i = m.start() + 1
        cuts.append(i)
        if i + 2 <= len(raw) and raw[i] == raw[i + 1].swapcase():
            cuts.append(i + 1)
    cuts.append(len(raw))
    out: List[str] = []
    for lo, hi in zip(cuts, cuts[1:]):
        p = raw[lo:hi]
        while p and out:
            c = cancellation(out[-1], p)
            if c == 0:
                break
            p = p[c:]
            if c == len(out[-1]):
                out.pop()
            else:
                out[-1] = out[-1][:-c]
        if p:
            out.append(p)
    return "".join(out)


def reduction_pairs(u: str, cyclic: bool = False) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Survivor indices and cancelled index pairs, in the order they cancel.

    Each pair is (first, second) in cyclic reading order. In cyclic mode the
    survivors are read starting from the first one, which is how
    :func:`cyclic_core` lays out its result.
    """
    stack: List[int] = []
    pairs: List[Tuple[int, int]] = []
    for i, ch in enumerate(u):
        if stack and u[stack[-1]] == ch.swapcase():
            pairs.append((stack.pop(), i))
        else:
            stack.append(i)
    if cyclic:
        lo, hi = 0, len(stack) - 1
        while hi > lo and u[stack[lo]] == u[stack[hi]].swapcase():
            pairs.append((stack[hi], stack[lo]))
            lo += 1
            hi -= 1
        stack = stack[lo:hi + 1]
    return stack, pairs


def cyclic_core(w: str) -> str:
    """Cyclically reduced core of w, without rotating it."""
    w = free_reduce(w)
    i, n = 0, len(w)
    while n - 2 * i >= 2 and w[i] == w[n - 1 - i].swapcase():
        i += 1
    return w[i:n - i]


def least_rotation(w: str) -> int:
    """Start index of the least rotation (Booth), in the a < A < b < B order."""
    s = w.translate(_ORDER)
    s2 = s + s
    f = [-1] * len(s2)
    k = 0
    for j in range(1, len(s2)):
        c = s2[j]
        i = f[j - k - 1]
        while i != -1 and c != s2[k + i + 1]:
            if c < s2[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if c != s2[k + i + 1]:
            if c < s2[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % len(w) if w else 0


def rotate(w: str, r: int) -> str:
    if not w:
        return w
    r %= len(w)
    return w[r:] + w[:r]


@dataclass(frozen=True)
class CyclicWord:
    """Cyclically reduced word stored in its least rotation."""
    letters: str

    @classmethod
    def of(cls, w: str) -> "CyclicWord":
        core = cyclic_core(w)
        return cls(rotate(core, least_rotation(core)))

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord.of(inverse(self.letters))

    def key(self) -> str:
        """Class key identifying a cyclic word with its inverse."""
        return min(self.letters.translate(_ORDER), self.inverse().letters.translate(_ORDER))


def cyclic_reduce(w: str) -> Tuple[CyclicWord, str]:
    """Return (core, conjugator) with w = conjugator . core . conjugator^-1."""
    w = free_reduce(w)
    i, n = 0, len(w)
    while n - 2 * i >= 2 and w[i] == w[n - 1 - i].swapcase():
        i += 1
    raw = w[i:n - i]
    r = least_rotation(raw)
    return CyclicWord(rotate(raw, r)), w[:i] + raw[:r]


def order_key(w: str) -> Tuple[int, str]:
    return len(w), w.translate(_ORDER)


def _longest_true_run(mask: np.ndarray) -> int:
    if not mask.any():
        return 0
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    d = np.diff(padded)
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return int((ends - starts).max())


def _codes(w: str) -> np.ndarray:
    return np.frombuffer(w.encode("ascii"), dtype=np.uint8)


def is_s_aperiodic(w: str, s: int) -> bool:
    """True iff no Y^s (Y nonempty) occurs as a subword of w.

    For each period p we look for a run of w[i] == w[i+p] of length (s-1)p,
    which is exactly an occurrence of a p-periodic window of length s*p.
    """
    if s < 1:
        raise ValueError("s must be positive")
    n = len(w)
    if s == 1:
        return n == 0
    arr = _codes(w)
    for p in range(1, n // s + 1):
        need = (s - 1) * p
        eq = arr[p:] == arr[:-p]
        if int(eq.sum()) < need:
            continue
        if _longest_true_run(eq) >= need:
            return False
    return True


def occurrences(pattern: str, text: str) -> List[int]:
    if not pattern:
        raise ValueError("empty pattern")
    out = []
    i = text.find(pattern)
    while i != -1:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def is_periodic_with(w: str, A: str) -> bool:
    if not A:
        raise ValueError("empty period word")
    return w in A * (len(w) // len(A) + 2)


def longest_periodic_subword(V: str, A: str) -> Tuple[int, int]:
    """(start, length) of a longest subword of V that is a subword of some A^t."""
    if not A:
        raise ValueError("empty period word")
    n, p = len(V), len(A)
    if n == 0:
        return 0, 0
    v = _codes(V)
    a = _codes(A)
    idx = np.arange(n)
    best = (0, 0)
    for s in range(p):
        mask = v == a[(idx + s) % p]
        if not mask.any():
            continue
        padded = np.concatenate(([False], mask, [False])).astype(np.int8)
        d = np.diff(padded)
        starts = np.flatnonzero(d == 1)
        lens = np.flatnonzero(d == -1) - starts
        k = int(lens.argmax())
        cand = (int(lens[k]), -int(starts[k]))
        if cand > (best[1], -best[0]):
            best = (int(starts[k]), int(lens[k]))
    return best


def common_prefix(a: str, i: int, b: str, j: int, cap: int) -> int:
    """Length of the longest common prefix of a[i:] and b[j:], at most cap."""
    cap = min(cap, len(a) - i, len(b) - j)
    if cap <= 0:
        return 0
    if a[i:i + cap] == b[j:j + cap]:
        return cap
    lo, hi = 0, cap  # a[i:i+lo] matches, a[i:i+hi] does not
    step = 16
    while step < hi and a[i:i + step] == b[j:j + step]:
        lo = step
        step *= 4
    hi = min(hi, step)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[i + lo:i + mid] == b[j + lo:j + mid]:
            lo = mid
        else:
            hi = mid
    return lo


def common_suffix(a: str, i: int, b: str, j: int, cap: int) -> int:
    """Length of the longest common suffix of a[:i] and b[:j], at most cap."""
    cap = min(cap, i, j)
    if cap <= 0:
        return 0
    if a[i - cap:i] == b[j - cap:j]:
        return cap
    lo, hi = 0, cap
    step = 16
    while step < hi and a[i - step:i] == b[j - step:j]:
        lo = step
        step *= 4
    hi = min(hi, step)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[i - mid:i - lo] == b[j - mid:j - lo]:
            lo = mid
        else:
            hi = mid
    return lo


def cancellation(x: str, y: str) -> int:
    """Number of letters cancelled at the junction of x.y."""
    m = min(len(x), len(y))
    return common_suffix(x, len(x), inverse(y[:m]), m, m)


def reduced_words(length: int) -> Iterator[str]:
    """All freely reduced words of the given length, in a < A < b < B order."""
    if length == 0:
        yield ""
        return
    stack = [(ch,) for ch in reversed(ALPHABET)]
    while stack:
        w = stack.pop()
        if len(w) == length:
            yield "".join(w)
            continue
        for ch in reversed(ALPHABET):
            if ch != w[-1].swapcase():
                stack.append(w + (ch,))


def random_reduced_word(rng, length: int) -> str:
    out: List[str] = []
    while len(out) < length:
        ch = ALPHABET[rng.integers(4)] if hasattr(rng, "integers") else rng.choice(ALPHABET)
        if out and out[-1] == ch.swapcase():
            continue
        out.append(ch)
    return "".join(out)


def word_from_letters(letters: Sequence[Letter]) -> str:
    return "".join(str(x) for x in letters)
