"""Finite groups with length functions, code assignment g -> X_g, and G-words."""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .aperiodic_sets import LAMBDA, YSet, FamilyExhausted
from .core_words import cancellation, common_prefix, free_reduce, inverse

Factor = Tuple[int, int]  # (group element index, sign)


class DataIntegrityError(Exception):
    """A junction cancelled more than the (*) property allows."""


@dataclass(frozen=True)
class FiniteGroup:
    mul: Tuple[Tuple[int, ...], ...]
    identity: int
    inv: Tuple[int, ...]
    names: Tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.mul)

    def check(self, assoc_bound: int = 64) -> List[str]:
        n, e = self.order, self.identity
        errs = []
        for g in range(n):
            if self.mul[e][g] != g or self.mul[g][e] != g:
                errs.append(f"identity law fails at {self.names[g]}")
            if self.mul[g][self.inv[g]] != e or self.mul[self.inv[g]][g] != e:
                errs.append(f"inverse law fails at {self.names[g]}")
        if n <= assoc_bound:
            for x, y, z in itertools.product(range(n), repeat=3):
                if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]]:
                    errs.append(f"associativity fails at {x},{y},{z}")
                    break
        return errs

    def power(self, g: int, sign: int) -> int:
        return g if sign > 0 else self.inv[g]

    def nonidentity(self) -> List[int]:
        return [g for g in range(self.order) if g != self.identity]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def to_json(self) -> dict:
        return {"order": self.order, "names": list(self.names),
                "mul": [list(r) for r in self.mul], "inverse": list(self.inv),
                "identity": self.identity}

    @classmethod
    def from_json(cls, d: dict) -> "FiniteGroup":
        n = d["order"]
        names = tuple(d.get("names") or [str(i) for i in range(n)])
        mul = tuple(tuple(r) for r in d["mul"])
        if len(mul) != n or any(len(r) != n for r in mul):
            raise ValueError("multiplication table must be order x order")
        g = cls(mul, d["identity"], tuple(d["inverse"]), names)
        errs = g.check()
        if errs:
            raise ValueError("; ".join(errs))
        return g

    @classmethod
    def from_elements(cls, elems: Sequence, op, names: Sequence[str]) -> "FiniteGroup":
        pos = {x: i for i, x in enumerate(elems)}
        mul = tuple(tuple(pos[op(x, y)] for y in elems) for x in elems)
        e = next(i for i in range(len(elems)) if all(mul[i][j] == j for j in range(len(elems))))
        inv = tuple(next(j for j in range(len(elems)) if mul[i][j] == e) for i in range(len(elems)))
        return cls(mul, e, inv, tuple(names))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_elements(list(range(n)), lambda x, y: (x + y) % n,
                                     ["e"] + [f"g{i}" for i in range(1, n)])


def klein_four() -> FiniteGroup:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return FiniteGroup.from_elements(elems, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2),
                                     ["e", "s", "t", "st"])


def symmetric3() -> FiniteGroup:
    # permutations of {0,1,2}; s, t are the transpositions (01), (12)
    elems = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)]
    names = ["e", "s", "t", "st", "ts", "sts"]
    return FiniteGroup.from_elements(elems, lambda p, q: tuple(p[q[i]] for i in range(3)), names)


@dataclass(frozen=True)
class LengthFunction:
    values: Tuple[int, ...]
    c: Fraction

    def __call__(self, g: int) -> int:
        return self.values[g]

    def to_json(self) -> dict:
        return {"values": list(self.values), "c": str(self.c)}

    @classmethod
    def from_json(cls, d: dict) -> "LengthFunction":
        return cls(tuple(int(v) for v in d["values"]), Fraction(str(d["c"])))


def word_length(G: FiniteGroup, gens: Sequence[int], c) -> LengthFunction:
    """Word length with respect to a symmetric closure of gens."""
    step = set(gens) | {G.inv[g] for g in gens}
    dist = {G.identity: 0}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in sorted(step):
                y = G.mul[x][s]
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    if len(dist) != G.order:
        raise ValueError("generators do not generate the group")
    return LengthFunction(tuple(dist[g] for g in range(G.order)), Fraction(c))


@dataclass
class LengthReport:
    violations: List[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_length_function(G: FiniteGroup, lf: LengthFunction) -> LengthReport:
    rep = LengthReport()
    v = lf.values
    if len(v) != G.order:
        rep.violations.append(("size", len(v), G.order))
        return rep
    for g in range(G.order):
        if v[g] < 0:
            rep.violations.append(("nonnegative", g))
        if (v[g] == 0) != (g == G.identity):
            rep.violations.append(("zero-iff-identity", g))
        if v[g] != v[G.inv[g]]:
            rep.violations.append(("symmetry", g, G.inv[g]))
    for g, h in itertools.product(range(G.order), repeat=2):
        if v[G.mul[g][h]] > v[g] + v[h]:
            rep.violations.append(("subadditivity", g, h))
    if lf.c <= 0:
        rep.violations.append(("growth-constant", lf.c))
    else:
        for r in range(max(v) + 1):
            ball = sum(1 for x in v if x <= r)
            if ball > lf.c ** r:
                rep.violations.append(("ball-growth", r, ball))
    return rep


@dataclass(frozen=True)
class EmbeddingMap:
    group: FiniteGroup
    length: LengthFunction
    codes: Dict[int, str]
    d: Fraction
    n0: int = 0
    lam: Fraction = LAMBDA

    def block(self, g: int, sign: int) -> str:
        x = self.codes[g]
        return x if sign > 0 else inverse(x)

    @cached_property
    def min_block(self) -> int:
        return min((len(x) for x in self.codes.values()), default=0)

    @cached_property
    def max_block(self) -> int:
        return max((len(x) for x in self.codes.values()), default=0)

    @cached_property
    def oriented(self) -> List[Factor]:
        return [(g, s) for g in sorted(self.codes) for s in (1, -1)]

    def render(self, factors: Sequence[Factor]) -> str:
        return "".join(self.block(g, s) for g, s in factors)

    def check(self) -> List[str]:
        errs = []
        if len(set(self.codes.values())) != len(self.codes):
            errs.append("codes are not pairwise distinct")
        for g, x in self.codes.items():
            l = self.length(g)
            if not (l <= len(x) < self.d * l):
                errs.append(f"code length inequality fails at {self.group.names[g]}")
        return errs

    def to_json(self) -> dict:
        names = self.group.names
        return {"group": self.group.to_json(), "length": self.length.to_json(),
                "n0": self.n0, "lambda": str(self.lam), "d": str(self.d),
                "codes": {names[g]: self.codes[g] for g in sorted(self.codes)}}

    @classmethod
    def from_json(cls, d: dict) -> "EmbeddingMap":
        G = FiniteGroup.from_json(d["group"])
        lf = LengthFunction.from_json(d["length"])
        codes = {G.index(k): v for k, v in d["codes"].items()}
        return cls(G, lf, codes, Fraction(d["d"]), int(d.get("n0", 0)),
                   Fraction(d.get("lambda", "1/100")))


def assign_codes(G: FiniteGroup, lf: LengthFunction, yset: YSet) -> EmbeddingMap:
    """Greedy: by increasing l(g), take the first unused Y-word of length >= l(g)."""
    rep = validate_length_function(G, lf)
    if not rep.ok:
        raise ValueError(f"invalid length function: {rep.violations[:5]}")
    used = set()
    codes: Dict[int, str] = {}
    order = sorted(G.nonidentity(), key=lambda g: (lf(g), g))
    j = 1
    for g in order:
        while True:
            try:
                y = yset[j]
            except FamilyExhausted as exc:
                raise FamilyExhausted(f"Y-set exhausted while coding {G.names[g]}: {exc}") from exc
            if j not in used and len(y) >= lf(g):
                break
            j += 1
        used.add(j)
        codes[g] = y
    if codes:
        d = max(Fraction(len(x), lf(g)) for g, x in codes.items()) + 1
    else:
        d = Fraction(1)
    return EmbeddingMap(G, lf, codes, d, yset.n0, yset.lam)


def evaluate_in_G(factors: Sequence[Factor], G: FiniteGroup) -> int:
    x = G.identity
    for g, s in factors:
        x = G.mul[x][G.power(g, s)]
    return x


def invert_factors(factors: Sequence[Factor]) -> Tuple[Factor, ...]:
    return tuple((g, -s) for g, s in reversed(factors))


def reduce_factors(factors: Sequence[Factor], cyclic: bool = False) -> Tuple[Factor, ...]:
    out: List[Factor] = []
    for f in factors:
        if out and out[-1] == (f[0], -f[1]):
            out.pop()
        else:
            out.append(f)
    if cyclic:
        while len(out) >= 2 and out[0] == (out[-1][0], -out[-1][1]):
            out = out[1:-1]
    return tuple(out)


@dataclass(frozen=True)
class GWord:
    factors: Tuple[Factor, ...]
    rendered: str
    entire_positions: Tuple[int, ...]


def gword(factors: Sequence[Factor], emb: EmbeddingMap) -> GWord:
    pos = [0]
    parts = []
    for g, s in factors:
        if g == emb.group.identity:
            raise ValueError("the identity has no code block")
        parts.append(emb.block(g, s))
        pos.append(pos[-1] + len(parts[-1]))
    return GWord(tuple(factors), "".join(parts), tuple(pos))


@dataclass(frozen=True)
class ReducedGWord:
    core: str
    factors: Tuple[Factor, ...]
    entire: Tuple[int, ...]  # start of each trimmed block B_i in core
    losses: Tuple[int, ...]  # cancellation at the junction before block i
    cyclic: bool


def junction_losses(blocks: Sequence[str], cyclic: bool, lam=LAMBDA) -> List[int]:
    k = len(blocks)
    losses = [0] * k
    for i in range(k):
        if i == 0 and not cyclic:
            continue
        prev = blocks[i - 1]
        c = cancellation(prev, blocks[i])
        for b in (prev, blocks[i]):
            if c > lam * len(b):
                raise DataIntegrityError(
                    f"junction {i} cancels {c} letters, more than {lam} of a block of length {len(b)}")
        losses[i] = c
    return losses


def reduce_gword(gw: GWord, emb: EmbeddingMap, cyclic: bool = False) -> ReducedGWord:
    factors = reduce_factors(gw.factors, cyclic)
    blocks = [emb.block(g, s) for g, s in factors]
    k = len(blocks)
    if k == 0:
        return ReducedGWord("", (), (), (), cyclic)
    losses = junction_losses(blocks, cyclic, emb.lam)
    parts, entire, pos = [], [], 0
    for i, b in enumerate(blocks):
        right = losses[(i + 1) % k] if (cyclic or i + 1 < k) else 0
        piece = b[losses[i]:len(b) - right]
        if not piece:
            raise DataIntegrityError(f"block {i} cancelled completely")
        entire.append(pos)
        parts.append(piece)
        pos += len(piece)
    core = "".join(parts)
    if cyclic and k == 1 and cancellation(blocks[0], blocks[0]):
        raise DataIntegrityError("single block is not cyclically reduced")
    expect = free_reduce(gw.rendered) if not cyclic else None
    if expect is not None and factors == tuple(gw.factors) and core != expect:
        raise DataIntegrityError("trimmed blocks disagree with free reduction")
    return ReducedGWord(core, factors, tuple(entire), tuple(losses), cyclic)


def parse_gword(word: str, emb: EmbeddingMap) -> Optional[Tuple[Factor, ...]]:
    """A reduced factor sequence whose freely reduced rendering is ``word``, or None.

    Blocks are matched left to right; the trim at each junction is the exact
    cancellation between neighbouring blocks, so the choice of the next block
    fixes how much of the current one must be present.
    """
    word = free_reduce(word)
    if not word:
        return ()
    blocks = {f: emb.block(*f) for f in emb.oriented}
    order = emb.oriented
    n = len(word)
    memo: Dict[Tuple[int, Optional[Factor], Optional[Factor]], Optional[Tuple[Factor, ...]]] = {}

    def options(prev: Optional[Factor]):
        return [f for f in order if prev is None or f != (prev[0], -prev[1])]

    def go(pos: int, prev: Optional[Factor], forced: Optional[Factor]):
        key = (pos, prev, forced)
        if key in memo:
            return memo[key]
        memo[key] = None
        cands = [forced] if forced is not None else options(prev)
        for A in cands:
            a = blocks[A]
            c = cancellation(blocks[prev], a) if prev is not None else 0
            if c >= len(a) or word[pos] != a[c]:
                continue
            m = common_prefix(word, pos, a, c, len(a) - c)
            # the block may end here (end of word) or continue into a neighbour
            if pos + len(a) - c == n and m == len(a) - c:
                memo[key] = (A,)
                return memo[key]
            for N in options(A):
                cr = cancellation(a, blocks[N])
                L = len(a) - c - cr
                if L <= 0 or m < L or pos + L >= n:
                    continue
                rest = go(pos + L, A, N)
                if rest is not None:
                    memo[key] = (A,) + rest
                    return memo[key]
        return None

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n // max(1, emb.min_block) + 1000))
    try:
        return go(0, None, None)
    finally:
        sys.setrecursionlimit(limit)
