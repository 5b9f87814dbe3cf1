"""Overlap classification and a Dehn-style word-problem solver.

Two matchers find relator arcs in a word:

* the explicit matcher scans every relator of a materialized RelatorSet;
* the lazy matcher never materializes relators: it finds runs of code blocks
  in the word, chains consecutive runs, and completes each chain to the
  shortest vanishing syllable sequence.

Both return the same kind of candidate arc and share the selection rule.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core_words import (cancellation, check_word, common_prefix, common_suffix,
                         cyclic_core, free_reduce, inverse, reduced_words)
from .embedding import (EmbeddingMap, Factor, evaluate_in_G, invert_factors, parse_gword,
                        reduce_factors)
from .relators import AbstractRelator, RelatorSet, RWord, render_relator


@dataclass(frozen=True)
class SCConstants:
    lambda_star: Fraction = Fraction(1, 100)
    piece_bound: Fraction = Fraction(5, 100)
    greendlinger: Fraction = Fraction(85, 100)
    inner_fraction: Fraction = Fraction(15, 100)
    arc_bound: Fraction = Fraction(55, 100)
    quasi: Fraction = Fraction(25, 100)

    def __post_init__(self):
        assert 1 - 3 * self.piece_bound == self.greendlinger


SC = SCConstants()


class UnderGenerated(Exception):
    """The presentation's syllable bound is too small for the requested word."""


def required_syllable_bound(word_len: int, emb: EmbeddingMap) -> int:
    if word_len < 1:
        raise ValueError("word_len must be >= 1")
    denom = Fraction(85, 100) * Fraction(98, 100) * emb.min_block
    return math.ceil(Fraction(word_len) / denom) + 1


class BlockIndex:
    """Oriented code blocks, junction cancellations, and a unique-seed index."""

    def __init__(self, emb: EmbeddingMap):
        self.emb = emb
        self.factors: List[Factor] = list(emb.oriented)
        self.id = {f: i for i, f in enumerate(self.factors)}
        self.blocks = [emb.block(*f) for f in self.factors]
        self.inv = [self.id[(g, -s)] for g, s in self.factors]
        self.elem = [emb.group.power(g, s) for g, s in self.factors]
        nb = len(self.blocks)
        self.cancel = [[cancellation(self.blocks[i], self.blocks[j]) for j in range(nb)]
                       for i in range(nb)]
        self.seed_len = self._seed_length()
        self.seeds: Dict[str, Tuple[int, int]] = {}
        S = self.seed_len
        for i, b in enumerate(self.blocks):
            for o in range(len(b) - S + 1):
                self.seeds[b[o:o + S]] = (i, o)

    def _unique(self, S: int) -> bool:
        seen = set()
        for b in self.blocks:
            for o in range(len(b) - S + 1):
                w = b[o:o + S]
                if w in seen:
                    return False
                seen.add(w)
        return True

    def _seed_length(self) -> int:
        if not self.blocks:
            return 1
        hi = 8
        while not self._unique(hi):
            hi *= 2
            if hi > max(len(b) for b in self.blocks):
                raise ValueError("code blocks do not have unique seeds")
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._unique(mid):
                hi = mid
            else:
                lo = mid
        return hi


@dataclass(frozen=True)
class Run:
    block: int
    vstart: int  # text position of offset 0 of the block
    start: int
    end: int


@dataclass(frozen=True)
class Arc:
    position: int
    length: int
    relator: RWord
    rotation: int  # offset in relator.rendered where the arc starts

    def replacement(self) -> str:
        R = self.relator.rendered
        rot = R[self.rotation:] + R[:self.rotation]
        return inverse(rot[self.length:])

    def key(self):
        v = self.replacement()
        return (self.position, -self.length, len(v), v, self.relator.syllables)


class Presentation:
    """Truncated presentation: all relators with at most ``syllable_bound`` syllables.

    With ``relators`` given, arcs are matched against that explicit set; otherwise
    relators are generated on demand from block chains found in the word.
    """

    def __init__(self, emb: EmbeddingMap, syllable_bound: int,
                 relators: Optional[RelatorSet] = None, constants: SCConstants = SC):
        self.emb = emb
        self.k = syllable_bound
        self.relators = relators
        self.constants = constants
        self.index = BlockIndex(emb)
        self._rwords: Dict[Tuple[Factor, ...], RWord] = {}
        self._completions: Dict[tuple, Optional[Tuple[int, ...]]] = {}
        self._layer_cache: Dict[int, list] = {}
        if relators is not None:
            if relators.k != syllable_bound:
                raise ValueError("syllable bound differs from the relator set's")
            self._explicit = []
            for rw in relators:
                self._explicit.append(rw)
                self._explicit.append(self.rword(invert_factors(rw.syllables)))
            self.min_relator = min((len(rw) for rw in relators), default=0)
        else:
            self.min_relator = 2 * emb.min_block * 98 // 100

    @classmethod
    def from_relator_set(cls, rs: RelatorSet, emb: EmbeddingMap) -> "Presentation":
        return cls(emb, rs.k, rs)

    @property
    def lazy(self) -> bool:
        return self.relators is None

    def rword(self, syllables: Sequence[Factor]) -> RWord:
        syllables = tuple(syllables)
        rw = self._rwords.get(syllables)
        if rw is None:
            rw = render_relator(AbstractRelator(syllables), self.emb)
            if len(self._rwords) > 4096:
                self._rwords.clear()
            self._rwords[syllables] = rw
        return rw

    def check_bound(self, word_len: int) -> None:
        if word_len == 0 or not self.emb.codes:
            return
        need = required_syllable_bound(word_len, self.emb)
        if self.k < need:
            raise UnderGenerated(f"words of length {word_len} need syllable bound {need}, "
                                 f"presentation has {self.k}")

    def admits(self, syllables: Sequence[Factor]) -> bool:
        if self.relators is None:
            return len(syllables) <= self.k
        return self.relators.contains_class(syllables)

    # -- arc search -----------------------------------------------------

    def _accept(self, m: int, R: int) -> bool:
        return m * self.constants.greendlinger.denominator > self.constants.greendlinger.numerator * R

    def _extend(self, text: str, n: int, cyclic: bool, anchor: int, P0: int, rw: RWord) -> Optional[Arc]:
        R = rw.rendered
        L = len(R)
        R2 = R + R
        i0 = (anchor - P0) % L
        right = common_prefix(text, anchor, R2, i0, L)
        left = common_suffix(text, anchor, R2, i0 + L, L)
        total = left + right
        start = anchor - left
        m = min(total, L, n) if cyclic else min(total, L)
        if not self._accept(m, L):
            return None
        span = total - m + 1
        if cyclic:
            t = -(-start // n) * n
            x_text = t if t <= start + span - 1 else start
            pos = x_text % n
        else:
            x_text = pos = start
        return Arc(pos, m, rw, (x_text - P0) % L)

    def _runs(self, text: str, lo: int = 0, hi: Optional[int] = None) -> List[Run]:
        idx = self.index
        S = idx.seed_len
        step = max(1, S // 2)
        hi = len(text) if hi is None else hi
        runs: List[Run] = []
        covered: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        seeds = idx.seeds
        for p in range(lo, min(hi, len(text) - S + 1), step):
            hit = seeds.get(text[p:p + S])
            if hit is None:
                continue
            bid, off = hit
            v = p - off
            spans = covered.setdefault((bid, v), [])
            if any(s <= p and p + S <= e for s, e in spans):
                continue
            blk = idx.blocks[bid]
            right = common_prefix(text, p, blk, off, len(blk) - off)
            left = common_suffix(text, p, blk, off, off)
            spans.append((p - left, p + right))
            runs.append(Run(bid, v, p - left, p + right))
        return runs

    def _layers(self, last: int) -> List[Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]]]:
        """Cheapest block paths following ``last``, by depth, keyed by (product, final block)."""
        layers = self._layer_cache.get(last)
        if layers is not None:
            return layers
        idx = self.index
        G = self.emb.group
        nb = len(idx.blocks)
        layer: Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]] = {}
        for c in range(nb):
            if c == idx.inv[last]:
                continue
            layer[(idx.elem[c], c)] = (len(idx.blocks[c]) - 2 * idx.cancel[last][c], (c,))
        layers = [layer]
        for _ in range(2, self.k):
            nxt: Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]] = {}
            for (x, c), (cost, path) in layer.items():
                for d in range(nb):
                    if d == idx.inv[c]:
                        continue
                    cand = (cost + len(idx.blocks[d]) - 2 * idx.cancel[c][d], path + (d,))
                    st = (G.mul[x][idx.elem[d]], d)
                    if st not in nxt or cand < nxt[st]:
                        nxt[st] = cand
            layer = nxt
            layers.append(layer)
        self._layer_cache[last] = layers
        return layers

    def _complete(self, first: int, last: int, elem: int, used: int) -> Optional[Tuple[int, ...]]:
        """Cheapest block sequence C closing S (first..last, product elem) into a relator."""
        key = (first, last, elem, used)
        if key in self._completions:
            return self._completions[key]
        idx = self.index
        G = self.emb.group
        target = G.inv[elem]
        best: Optional[Tuple[int, Tuple[int, ...]]] = None
        if elem == G.identity and used >= 2 and last != idx.inv[first]:
            best = (-2 * idx.cancel[last][first], ())
        if used < self.k:
            for layer in self._layers(last)[:self.k - used]:
                for (x, c), (cost, path) in layer.items():
                    if x == target and c != idx.inv[first]:
                        cand = (cost - 2 * idx.cancel[c][first], path)
                        if best is None or cand < best:
                            best = cand
        res = None if best is None else best[1]
        self._completions[key] = res
        return res

    def _lazy_arcs(self, text: str, n: int, cyclic: bool) -> List[Arc]:
        idx = self.index
        G = self.emb.group
        runs = self._runs(text)
        if not runs:
            return []
        by_key: Dict[Tuple[int, int], List[Run]] = {}
        for r in runs:
            by_key.setdefault((r.block, r.vstart), []).append(r)
        nb = len(idx.blocks)
        succ: Dict[Run, List[Run]] = {}
        for r in runs:
            out = []
            L = len(idx.blocks[r.block])
            for N in range(nb):
                if N == idx.inv[r.block]:
                    continue
                c = idx.cancel[r.block][N]
                q = r.vstart + L - c
                if r.end < q:
                    continue
                for r2 in by_key.get((N, q - c), ()):
                    if r2.start <= q:
                        out.append(r2)
            succ[r] = out
        tiny = idx.seed_len + max(1, idx.seed_len // 2)
        arcs: Dict[tuple, Arc] = {}
        k = self.k

        def left_options(r: Run) -> List[Optional[int]]:
            opts: List[Optional[int]] = [None]
            for N in range(nb):
                if N == idx.inv[r.block]:
                    continue
                c = idx.cancel[N][r.block]
                q0 = r.vstart + c
                blkN = idx.blocks[N]
                if r.start <= q0 and q0 >= 1 and text[q0 - 1] == blkN[len(blkN) - c - 1]:
                    opts.append(N)
            return opts

        def right_options(r: Run) -> List[Optional[int]]:
            opts: List[Optional[int]] = [None]
            L = len(idx.blocks[r.block])
            for N in range(nb):
                if N == idx.inv[r.block]:
                    continue
                c = idx.cancel[r.block][N]
                q = r.vstart + L - c
                if r.end >= q and q < len(text) and text[q] == idx.blocks[N][c]:
                    opts.append(N)
            return opts

        lopts = {r: left_options(r) for r in runs}
        ropts = {r: right_options(r) for r in runs}

        def consider(path: List[Run]):
            span = path[-1].end - path[0].start + 2 * tiny
            if cyclic:
                span = min(span, n)
            for lN in lopts[path[0]]:
                for rN in ropts[path[-1]]:
                    S = ([lN] if lN is not None else []) + [r.block for r in path] + \
                        ([rN] if rN is not None else [])
                    if len(S) > k:
                        continue
                    elem = G.identity
                    for b in S:
                        elem = G.mul[elem][idx.elem[b]]
                    C = self._complete(S[0], S[-1], elem, len(S))
                    if C is None:
                        continue
                    Q = S + list(C)
                    est = sum(len(idx.blocks[b]) for b in Q) - 2 * sum(
                        idx.cancel[Q[i - 1]][Q[i]] for i in range(len(Q)))
                    if not self._accept(span, est):
                        continue
                    rw = self.rword([idx.factors[b] for b in Q])
                    a = 1 if lN is not None else 0
                    r0 = path[0]
                    P0 = r0.vstart + rw.trims[a] - rw.junctions[a]
                    # anchor inside the part of the block that survives in the relator
                    lo = max(r0.start, r0.vstart + rw.trims[a])
                    hi = min(r0.end, r0.vstart + len(idx.blocks[r0.block]) - rw.trims[(a + 1) % len(Q)])
                    if lo >= hi:
                        continue
                    arc = self._extend(text, n, cyclic, (lo + hi) // 2, P0, rw)
                    if arc is not None:
                        key = (arc.position, arc.length, arc.rotation, rw.syllables)
                        arcs.setdefault(key, arc)

        for r in runs:
            stack = [[r]]
            while stack:
                path = stack.pop()
                consider(path)
                if len(path) < k:
                    for r2 in succ[path[-1]]:
                        stack.append(path + [r2])
        return list(arcs.values())

    def _explicit_arcs(self, text: str, n: int, cyclic: bool) -> List[Arc]:
        out: Dict[tuple, Arc] = {}
        num, den = self.constants.greendlinger.numerator, self.constants.greendlinger.denominator
        for rw in self._explicit:
            L = len(rw)
            mmin = num * L // den + 1
            if mmin > (n if cyclic else len(text)):
                continue
            delta = -(-L // 4)
            sigma = mmin - delta + 1
            R2 = rw.rendered * 2
            for cp in range(0, L, delta):
                pat = R2[cp:cp + sigma]
                t = text.find(pat)
                while t != -1:
                    arc = self._extend(text, n, cyclic, t, t - cp, rw)
                    if arc is not None:
                        out.setdefault((arc.position, arc.length, arc.rotation, rw.syllables), arc)
                    t = text.find(pat, t + 1)
        return list(out.values())

    def find_arc(self, w: str, cyclic: bool = False) -> Optional[Arc]:
        """Leftmost-longest arc covering more than the Greendlinger fraction of a relator."""
        n = len(w)
        if n == 0 or not self._accept(n, self.min_relator):
            return None
        text = w * 3 if cyclic else w
        arcs = self._lazy_arcs(text, n, cyclic) if self.lazy else self._explicit_arcs(text, n, cyclic)
        if not arcs:
            return None
        return min(arcs, key=Arc.key)


@dataclass(frozen=True)
class DehnStep:
    word: str
    position: int
    arc_length: int
    replacement: str
    relator: Optional[RWord]
    rotation: int
    result: str

    def to_json(self, emb: EmbeddingMap) -> dict:
        rel = None if self.relator is None else self.relator.abstract.to_json(emb.group)
        return {"position": self.position, "arc_length": self.arc_length,
                "replacement": self.replacement, "relator": rel, "rotation": self.rotation,
                "length_before": len(self.word), "length_after": len(self.result)}


@dataclass
class DehnTrace:
    initial: str
    steps: List[DehnStep]
    final: str
    cyclic: bool

    def to_json(self, emb: EmbeddingMap, words: bool = False) -> dict:
        d = {"initial_length": len(self.initial), "cyclic": self.cyclic, "final": self.final,
             "steps": [s.to_json(emb) for s in self.steps]}
        if words:
            d["initial"] = self.initial
            for s, js in zip(self.steps, d["steps"]):
                js["word"] = s.word
        return d


def apply_arc(w: str, arc: Arc, cyclic: bool) -> str:
    x, m, v = arc.position, arc.length, arc.replacement()
    if cyclic:
        rot = w[x:] + w[:x]
        return cyclic_core(v + rot[m:])
    return free_reduce(w[:x] + v + w[x + m:])


def dehn_reduce(w: str, p: Presentation, cyclic: bool = False,
                max_steps: Optional[int] = None) -> Tuple[str, DehnTrace]:
    check_word(w)
    start = cyclic_core(w) if cyclic else free_reduce(w)
    p.check_bound(len(free_reduce(w)))
    steps: List[DehnStep] = []
    if start != w:
        steps.append(DehnStep(w, 0, 0, "", None, 0, start))
    cur = start
    while max_steps is None or len(steps) < max_steps:
        arc = p.find_arc(cur, cyclic)
        if arc is None:
            break
        nxt = apply_arc(cur, arc, cyclic)
        assert len(nxt) < len(cur), "Dehn step did not shorten the word"
        steps.append(DehnStep(cur, arc.position, arc.length, arc.replacement(), arc.relator,
                              arc.rotation, nxt))
        cur = nxt
    return cur, DehnTrace(w, steps, cur, cyclic)


def is_trivial(w: str, p: Presentation) -> bool:
    """Word problem in H, decided on the cyclic word (triviality is conjugation invariant)."""
    final, _ = dehn_reduce(w, p, cyclic=True)
    return final == ""


@dataclass
class GeodesicBounds:
    lower: int
    upper: int
    truncated: bool
    witness: str


def geodesic_bounds(w: str, p: Presentation, horizon: int = 4,
                    max_checks: Optional[int] = None) -> GeodesicBounds:
    """Bracket the length of a shortest word equal to w in H.

    ``upper`` is the length of the Dehn fixed point; ``lower`` is the first
    length L (up to ``horizon``) at which a word of length L equal to w was
    found, or one past the last length searched exhaustively.
    """
    best, _ = dehn_reduce(w, p)
    upper = len(best)
    checks = 0
    for L in range(0, upper + 1):
        if L == upper:
            return GeodesicBounds(upper, upper, False, best)
        if L > horizon:
            return GeodesicBounds(L, upper, True, best)
        p.check_bound(len(w) + L)
        for c in reduced_words(L):
            checks += 1
            if max_checks is not None and checks > max_checks:
                return GeodesicBounds(L, upper, True, best)
            if is_trivial(free_reduce(w + inverse(c)), p):
                return GeodesicBounds(L, L, False, c)
    return GeodesicBounds(upper, upper, False, best)


# -- overlaps -----------------------------------------------------------------

@dataclass(frozen=True)
class OverlapSource:
    """A cyclic word with declared entire vertices, analysed for overlaps."""
    rendered: str
    junctions: Tuple[int, ...]
    blocks: Tuple[str, ...]  # full blocks A_i, aligned so that B_i starts at junctions[i]
    trims: Tuple[int, ...]
    syllables: Optional[Tuple[Factor, ...]]

    @classmethod
    def of(cls, rw: RWord, emb: EmbeddingMap) -> "OverlapSource":
        return cls(rw.rendered, rw.junctions, tuple(emb.block(*f) for f in rw.syllables),
                   rw.trims, rw.syllables)

    @classmethod
    def foreign(cls, word: str) -> "OverlapSource":
        """A word with a single entire vertex at position 0."""
        return cls(word, (0,), (word,), (0,), None)

    def inverse(self) -> "OverlapSource":
        n = len(self.rendered)
        k = len(self.junctions)
        # the inverse reads B_{k-1}^-1 ... B_0^-1
        ends = [self.junctions[i + 1] if i + 1 < k else n for i in range(k)]
        junctions, blocks, trims = [], [], []
        for i in reversed(range(k)):
            junctions.append(n - ends[i])
            blocks.append(inverse(self.blocks[i]))
            trims.append(self.trims[(i + 1) % k] if self.syllables is not None else 0)
        syl = invert_factors(self.syllables) if self.syllables is not None else None
        return OverlapSource(inverse(self.rendered), tuple(junctions), tuple(blocks),
                             tuple(trims), syl)

    def locate(self, pos: int) -> Tuple[int, int]:
        pos %= len(self.rendered)
        i = bisect.bisect_right(self.junctions, pos) - 1
        return i, pos - self.junctions[i] + self.trims[i]

    def rotated_syllables(self, i: int) -> Tuple[Factor, ...]:
        s = self.syllables
        return s[i:] + s[:i]


@dataclass(frozen=True)
class Overlap:
    i: int
    j: int
    inverted: bool
    pos_i: int
    pos_j: int
    length: int
    classification: str  # small-piece | compatible | VIOLATION
    label: str = ""
    witness: Optional[Tuple[Factor, ...]] = None
    amalgamated: Optional[Tuple[Factor, ...]] = None

    def to_json(self, G) -> dict:
        d = {"i": self.i, "j": self.j, "inverted": self.inverted, "pos_i": self.pos_i,
             "pos_j": self.pos_j, "length": self.length, "classification": self.classification}
        if self.witness is not None:
            d["witness"] = [[G.names[g], s] for g, s in self.witness]
        if self.amalgamated is not None:
            d["amalgamated"] = [[G.names[g], s] for g, s in self.amalgamated]
        return d


@dataclass
class OverlapReport:
    pairs: List[Overlap]
    threshold: Fraction
    certified_unaligned_below: int
    exhaustive_pairs: int = 0

    @property
    def violations(self) -> List[Overlap]:
        return [o for o in self.pairs if o.classification == "VIOLATION"]

    def to_json(self, G) -> dict:
        return {"threshold": str(self.threshold),
                "certified_unaligned_below": self.certified_unaligned_below,
                "violations": len(self.violations),
                "pairs": [o.to_json(G) for o in self.pairs]}


def connecting_label(src_i: OverlapSource, pos_i: int, src_j: OverlapSource, pos_j: int) -> str:
    """Label from the entire vertex before pos_i to the one before pos_j through the shared point."""
    bi, ui = src_i.locate(pos_i)
    bj, uj = src_j.locate(pos_j)
    x, y = src_i.blocks[bi][:ui], inverse(src_j.blocks[bj][:uj])
    c = cancellation(x, y)
    return x[:len(x) - c] + y[c:]


def classify_overlap(src_i: OverlapSource, pos_i: int, src_j: OverlapSource, pos_j: int,
                     length: int, threshold_len: int, emb: EmbeddingMap):
    """Return (classification, label, witness, amalgamated syllables)."""
    if length < threshold_len:
        return "small-piece", "", None, None
    # anchor inside the overlap, at its midpoint
    z = length // 2
    label = connecting_label(src_i, pos_i + z, src_j, pos_j + z)
    witness = parse_gword(label, emb)
    if witness is None:
        return "VIOLATION", label, None, None
    amalg = None
    if src_i.syllables is not None and src_j.syllables is not None:
        bi, _ = src_i.locate(pos_i + z)
        bj, _ = src_j.locate(pos_j + z)
        seq = src_i.rotated_syllables(bi) + witness + invert_factors(src_j.rotated_syllables(bj)) \
            + invert_factors(witness)
        amalg = reduce_factors(seq, cyclic=True)
        if evaluate_in_G(amalg, emb.group) != emb.group.identity:
            return "VIOLATION", label, witness, amalg
    return "compatible", label, witness, amalg


def _maximal_common(a: str, pa: int, b: str, pb: int, cap: int) -> Tuple[int, int, int]:
    """Maximal common run of cyclic words a, b through (pa, pb); returns (start_a, start_b, length)."""
    A2, B2 = a + a, b + b
    la, lb = len(a), len(b)
    right = common_prefix(A2, pa % la, B2, pb % lb, cap)
    left = common_suffix(A2, pa % la + la, B2, pb % lb + lb, cap)
    total = min(left + right, cap)
    left = min(left, total)
    return (pa - left) % la, (pb - left) % lb, total


def _exhaustive_pair(a: str, b: str, T: int, same: bool) -> List[Tuple[int, int, int]]:
    """All maximal common runs of length >= T between cyclic words a and b (seeded search)."""
    la, lb = len(a), len(b)
    cap = min(la, lb)
    if T > cap:
        return []
    delta = max(1, (T + 1) // 2)
    sigma = T - delta + 1
    A2, B2 = a + a, b + b
    found: Dict[Tuple[int, int], Tuple[int, int, int]] = {}
    for cp in range(0, la, delta):
        pat = A2[cp:cp + sigma]
        t = B2.find(pat)
        while t != -1 and t < lb:
            diag = (t - cp) % lb
            if not (same and diag == 0 and la == lb):
                sa, sb, L = _maximal_common(a, cp, b, t, cap)
                if L >= T:
                    found.setdefault((diag, sa), (sa, sb, L))
            t = B2.find(pat, t + 1)
    return sorted(set(found.values()))


def analyze_overlaps(p: Presentation, extra: Sequence[str] = (),
                     relators: Optional[Sequence[RWord]] = None) -> OverlapReport:
    """Large overlaps between relators (and their inverses), classified.

    For generated relators every common subword of length >= 3*seed_len
    contains a seed inside one block of each relator, and seeds are unique
    across blocks, so such overlaps are block-aligned: they are found from
    pairs of equal oriented blocks. Foreign words in ``extra`` have no block
    structure and are compared by an exhaustive seeded search.
    """
    emb = p.emb
    rws = list(relators if relators is not None else (p.relators or []))
    if not rws and not extra:
        raise ValueError("relator set is empty")
    srcs = [OverlapSource.of(rw, emb) for rw in rws] + [OverlapSource.foreign(w) for w in extra]
    inv_srcs = [s.inverse() for s in srcs]
    ngen = len(rws)
    pb = p.constants.piece_bound
    certified = 3 * p.index.seed_len
    pairs: List[Overlap] = []
    exhaustive = 0
    for i in range(len(srcs)):
        for j in range(i, len(srcs)):
            for inverted in (False, True):
                a = srcs[i]
                bsrc = inv_srcs[j] if inverted else srcs[j]
                T = math.ceil(pb * min(len(a.rendered), len(bsrc.rendered)))
                if i < ngen and j < ngen and T >= certified:
                    runs = set()
                    for bi, f in enumerate(a.syllables):
                        for bj, g in enumerate(bsrc.syllables):
                            if f != g:
                                continue
                            pa = a.junctions[bi] - a.trims[bi]
                            pbp = bsrc.junctions[bj] - bsrc.trims[bj]
                            if i == j and not inverted and bi == bj:
                                continue
                            # anchor at a point inside both trimmed blocks
                            mid = len(a.blocks[bi]) // 2
                            sa, sb, L = _maximal_common(a.rendered, pa + mid, bsrc.rendered, pbp + mid,
                                                        min(len(a.rendered), len(bsrc.rendered)))
                            if i == j and not inverted and sa == sb:
                                continue
                            runs.add((sa, sb, L))
                else:
                    exhaustive += 1
                    runs = set(_exhaustive_pair(a.rendered, bsrc.rendered, T, i == j and not inverted))
                for sa, sb, L in sorted(runs):
                    cls, label, wit, amalg = classify_overlap(a, sa, bsrc, sb, L, T, emb)
                    pairs.append(Overlap(i, j, inverted, sa, sb, L, cls, label, wit, amalg))
    return OverlapReport(pairs, pb, certified, exhaustive)
