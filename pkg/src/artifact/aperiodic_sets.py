"""Cube-free code family and the separator-assembled set of Y-words."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core_words import is_s_aperiodic

LAMBDA = Fraction(1, 100)
DEFAULT_N0 = 200
SEPARATOR = "a" * 6


class FamilyExhausted(Exception):
    pass


class StarFailure(Exception):
    pass


def has_cube_suffix(w: str) -> bool:
    n = len(w)
    for p in range(1, n // 3 + 1):
        if w[n - p:] == w[n - 2 * p:n - p] == w[n - 3 * p:n - 2 * p]:
            return True
    return False


def cube_free_levels(max_len: int):
    """Yield (length, sorted list of all positive cube-free words of that length)."""
    level = [""]
    for n in range(1, max_len + 1):
        nxt = []
        for w in level:
            for ch in "ab":
                u = w + ch
                if not has_cube_suffix(u):
                    nxt.append(u)
        level = nxt  # stays sorted: parents sorted, a < b appended
        yield n, level


def count_cube_free(max_len: int) -> List[int]:
    return [len(lv) for _, lv in cube_free_levels(max_len)]


@dataclass(frozen=True)
class AperiodicFamily:
    words: Tuple[str, ...]
    max_len: int

    def __len__(self):
        return len(self.words)

    def __getitem__(self, i):
        return self.words[i]


def enumerate_family(max_len: int) -> AperiodicFamily:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    words = []
    for _, level in cube_free_levels(max_len):
        words.extend(w for w in level if w[0] == "b" and w[-1] == "b")
    return AperiodicFamily(tuple(words), max_len)


def family_with_at_least(count: int) -> AperiodicFamily:
    words: List[str] = []
    n = 0
    for n, level in cube_free_levels(10 ** 6):
        words.extend(w for w in level if w[0] == "b" and w[-1] == "b")
        if len(words) >= count:
            break
    return AperiodicFamily(tuple(words), n)


def check_double_star(w: str) -> bool:
    return is_s_aperiodic(w, 7)


@dataclass
class YSet:
    n0: int
    family: AperiodicFamily
    lam: Fraction = LAMBDA
    _words: Dict[int, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n0 < 1:
            raise ValueError("N0 must be positive")

    @classmethod
    def generate(cls, n0: int = DEFAULT_N0, count: int = 8) -> "YSet":
        return cls(n0, family_with_at_least(n0 * count))

    @property
    def capacity(self) -> int:
        return len(self.family) // self.n0

    def __getitem__(self, j: int) -> str:
        """Y_j, 1-based."""
        if j not in self._words:
            w = build_Y(j, self)
            if not check_double_star(w):
                raise AssertionError(f"Y_{j} is not 7-aperiodic")
            self._words[j] = w
        return self._words[j]

    def prefix(self, count: int) -> List[str]:
        return [self[j] for j in range(1, count + 1)]


def build_Y(j: int, yset: YSet) -> str:
    if j < 1:
        raise ValueError("Y-words are indexed from 1")
    lo, hi = (j - 1) * yset.n0, j * yset.n0
    if hi > len(yset.family):
        raise FamilyExhausted(
            f"Y_{j} needs family words {lo + 1}..{hi} but only {len(yset.family)} "
            "are enumerated; extend the family (raise max_len)")
    return "".join(SEPARATOR + yset.family[i] for i in range(lo, hi))


@dataclass(frozen=True)
class StarViolation:
    word: str
    host1: int
    host2: int
    pos1: int
    pos2: int

    @property
    def same_host(self) -> bool:
        return self.host1 == self.host2


@dataclass
class StarReport:
    passed: bool
    violations: List[StarViolation]
    lam: Fraction

    def to_json(self) -> dict:
        return {"passed": self.passed, "lambda": str(self.lam),
                "violations": [{"word": v.word, "host1": v.host1, "host2": v.host2,
                                "pos1": v.pos1, "pos2": v.pos2, "same_host": v.same_host}
                               for v in self.violations]}


def star_threshold(n: int, lam: Fraction) -> int:
    """Smallest subword length covered by (*) for a host of length n."""
    return max(1, math.ceil(Fraction(lam) * n))


def check_star(words: Sequence[str], lam=LAMBDA) -> StarReport:
    """Check that every subword V of W with |V| >= lam|W| is unique in W and absent elsewhere.

    Only subwords of the threshold length need checking: a repeat of a longer
    subword implies a repeat of its prefix of threshold length.
    """
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    if len(set(words)) != len(words):
        raise ValueError("words must be pairwise distinct")
    by_len: Dict[int, List[int]] = {}
    for i, w in enumerate(words):
        by_len.setdefault(star_threshold(len(w), lam), []).append(i)
    hits: Dict[Tuple[int, int, int], List[int]] = {}  # (host, other, diagonal) -> host positions
    for L, hosts in sorted(by_len.items()):
        index: Dict[str, List[Tuple[int, int]]] = {}
        for u, U in enumerate(words):
            for q in range(len(U) - L + 1):
                index.setdefault(U[q:q + L], []).append((u, q))
        for h in hosts:
            W = words[h]
            for p in range(len(W) - L + 1):
                occ = index[W[p:p + L]]
                if len(occ) == 1:
                    continue
                for u, q in occ:
                    if u == h and q <= p:
                        continue
                    hits.setdefault((h, u, q - p), []).append(p)
    violations = []
    for (h, u, diag), ps in sorted(hits.items()):
        L = star_threshold(len(words[h]), lam)
        start = prev = ps[0]
        for p in ps[1:] + [None]:
            if p is not None and p == prev + 1:
                prev = p
                continue
            violations.append(StarViolation(words[h][start:prev + L], h, u, start, start + diag))
            if p is not None:
                start = prev = p
    return StarReport(not violations, violations, lam)


def require_star(words: Sequence[str], lam=LAMBDA, n0: Optional[int] = None) -> None:
    rep = check_star(words, lam)
    if not rep.passed:
        hint = f" (N0={n0})" if n0 is not None else ""
        raise StarFailure(f"property (*) fails on {len(rep.violations)} subwords{hint}; "
                          "increase N0 so that each Y-word carries more code blocks")


@dataclass
class GrowthEstimate:
    counts: List[Tuple[int, int]]
    c: float
    tail_rate: float
    exponential: bool


def growth_estimate(words: Iterable[str], i_max: int, C: Optional[int] = None,
                    min_rate: float = 1.2) -> GrowthEstimate:
    """Cumulative counts card{|X| <= i} and the fitted base c = min_{i>=C} count(i)^(1/i).

    A family is flagged as exponential only if c > 1 and the tail growth rate
    (count(i_max)/count(C))^(1/(i_max-C)) exceeds ``min_rate``; polynomial
    families have c > 1 at finite range but a tail rate drifting to 1.
    """
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    lengths = [len(w) for w in (words.words if isinstance(words, AperiodicFamily) else words)]
    if not lengths:
        raise ValueError("empty family")
    if C is None:
        C = max(1, (i_max + 1) // 2)
    counts = [(i, sum(1 for x in lengths if x <= i)) for i in range(1, i_max + 1)]
    tail = [(i, k) for i, k in counts if i >= C]
    c = min((k ** (1.0 / i) if k else 0.0) for i, k in tail)
    (i0, k0), (i1, k1) = tail[0], tail[-1]
    rate = (k1 / k0) ** (1.0 / (i1 - i0)) if i1 > i0 and k0 > 0 else 1.0
    return GrowthEstimate(counts, c, rate, c > 1 and rate > min_rate)
