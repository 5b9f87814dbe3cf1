"""Abstract relators over the free basis {x_g} and their rendered R-words."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .core_words import CyclicWord, inverse
from .embedding import (DataIntegrityError, EmbeddingMap, Factor, FiniteGroup,
                        evaluate_in_G, invert_factors, junction_losses)


def _inv(f: Factor) -> Factor:
    return (f[0], -f[1])


def is_cyclically_reduced(syl: Sequence[Factor]) -> bool:
    k = len(syl)
    if k == 0:
        return False
    return all(syl[i] != _inv(syl[(i + 1) % k]) for i in range(k)) if k > 1 else True


def canonical_syllables(syl: Sequence[Factor]) -> Tuple[Factor, ...]:
    """Least rotation of the sequence or of its inverse (tuple order)."""
    best = None
    for seq in (tuple(syl), invert_factors(syl)):
        for r in range(len(seq)):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class AbstractRelator:
    syllables: Tuple[Factor, ...]

    def __post_init__(self):
        if not is_cyclically_reduced(self.syllables):
            raise ValueError("abstract relator must be a nonempty cyclically reduced word")

    def __len__(self):
        return len(self.syllables)

    def inverse(self) -> "AbstractRelator":
        return AbstractRelator(invert_factors(self.syllables))

    def rotate(self, r: int) -> "AbstractRelator":
        r %= len(self.syllables)
        return AbstractRelator(self.syllables[r:] + self.syllables[:r])

    def canonical(self) -> "AbstractRelator":
        return AbstractRelator(canonical_syllables(self.syllables))

    def vanishes(self, G: FiniteGroup) -> bool:
        return evaluate_in_G(self.syllables, G) == G.identity

    def to_json(self, G: FiniteGroup) -> list:
        return [[G.names[g], s] for g, s in self.syllables]

    @classmethod
    def from_json(cls, data, G: FiniteGroup) -> "AbstractRelator":
        return cls(tuple((G.index(n), int(s)) for n, s in data))


def enumerate_abstract_relators(G: FiniteGroup, k: int) -> List[AbstractRelator]:
    """One canonical representative per rotation/inversion class, up to k syllables."""
    if k < 1:
        raise ValueError("k must be >= 1")
    letters = [(g, s) for g in G.nonidentity() for s in (1, -1)]
    out = []
    for m in range(1, k + 1):
        # depth-first over freely reduced sequences, tracking the product
        stack: List[Tuple[Tuple[Factor, ...], int]] = [((), G.identity)]
        while stack:
            seq, x = stack.pop()
            if len(seq) == m:
                if x == G.identity and is_cyclically_reduced(seq) and canonical_syllables(seq) == seq:
                    out.append(AbstractRelator(seq))
                continue
            for f in reversed(letters):
                if seq and f == _inv(seq[-1]):
                    continue
                stack.append((seq + (f,), G.mul[x][G.power(*f)]))
    out.sort(key=lambda r: (len(r), r.syllables))
    return out


@dataclass(frozen=True)
class RWord:
    """Cyclically reduced rendering of an abstract relator.

    ``rendered`` starts at the first junction: it is B_0 B_1 ... B_{k-1}
    where B_i is block A_i with ``trims[i]`` letters cut at its left end and
    ``trims[i+1]`` at its right end.
    """
    abstract: AbstractRelator
    rendered: str
    junctions: Tuple[int, ...]
    trims: Tuple[int, ...]
    block_lengths: Tuple[int, ...]

    def __len__(self):
        return len(self.rendered)

    @property
    def syllables(self) -> Tuple[Factor, ...]:
        return self.abstract.syllables

    @property
    def unreduced_length(self) -> int:
        return sum(self.block_lengths)

    def cyclic(self) -> CyclicWord:
        return CyclicWord.of(self.rendered)

    def key(self) -> str:
        return self.cyclic().key()

    def locate(self, pos: int) -> Tuple[int, int]:
        """(syllable index, offset inside its full block A_i) of a rendered position."""
        pos %= len(self.rendered)
        i = bisect.bisect_right(self.junctions, pos) - 1
        return i, pos - self.junctions[i] + self.trims[i]


def render_relator(r: AbstractRelator, emb: EmbeddingMap) -> RWord:
    blocks = [emb.block(g, s) for g, s in r.syllables]
    k = len(blocks)
    trims = junction_losses(blocks, True, emb.lam) if k > 1 else [0]
    if k == 1:
        raise DataIntegrityError("a single code block never vanishes")
    parts, junctions, pos = [], [], 0
    for i, b in enumerate(blocks):
        piece = b[trims[i]:len(b) - trims[(i + 1) % k]]
        if not piece:
            raise DataIntegrityError(f"block {i} of relator cancelled completely")
        junctions.append(pos)
        parts.append(piece)
        pos += len(piece)
    rendered = "".join(parts)
    total = sum(len(b) for b in blocks)
    if 100 * len(rendered) < 98 * total:
        raise DataIntegrityError("rendered relator shorter than 0.98 of its blocks")
    return RWord(r, rendered, tuple(junctions), tuple(trims), tuple(len(b) for b in blocks))


@dataclass
class RelatorSet:
    rwords: List[RWord]
    k: int
    provenance: Dict[str, AbstractRelator] = field(default_factory=dict)

    def __len__(self):
        return len(self.rwords)

    def __iter__(self):
        return iter(self.rwords)

    def contains_class(self, syllables: Sequence[Factor]) -> bool:
        canon = canonical_syllables(syllables)
        return any(rw.syllables == canon for rw in self.rwords)

    @classmethod
    def from_json(cls, d: dict, emb: EmbeddingMap) -> "RelatorSet":
        rws = []
        for item in d["relators"]:
            rw = render_relator(AbstractRelator.from_json(item["abstract"], emb.group), emb)
            if item.get("rendered") not in (None, rw.rendered):
                raise DataIntegrityError("stored rendering disagrees with the embedding")
            rws.append(rw)
        return cls(rws, int(d["syllable_bound"]), {rw.rendered: rw.abstract for rw in rws})

    def to_json(self, emb: EmbeddingMap) -> dict:
        G = emb.group
        return {"embedding": emb.to_json(), "syllable_bound": self.k,
                "relators": [{"abstract": rw.abstract.to_json(G), "rendered": rw.rendered,
                              "length": len(rw)} for rw in self.rwords]}

    def summary_rows(self) -> List[Tuple[int, int, int, int]]:
        rows = []
        for m in sorted({len(rw.syllables) for rw in self.rwords}):
            ls = [len(rw) for rw in self.rwords if len(rw.syllables) == m]
            rows.append((m, len(ls), min(ls), max(ls)))
        return rows


def build_relator_set(G: FiniteGroup, emb: EmbeddingMap, k: int) -> RelatorSet:
    """Render every abstract relator class with at most k syllables.

    Classes are already distinct as abstract words; we additionally confirm
    that no two renderings coincide up to rotation and inversion.
    """
    rws = [render_relator(r, emb) for r in enumerate_abstract_relators(G, k)]
    by_len: Dict[int, List[RWord]] = {}
    for rw in rws:
        for other in by_len.get(len(rw), ()):
            doubled = other.rendered * 2
            if rw.rendered in doubled or inverse(rw.rendered) in doubled:
                raise DataIntegrityError("two abstract relators render to the same cyclic word")
        by_len.setdefault(len(rw), []).append(rw)
    rws.sort(key=lambda rw: (len(rw), rw.syllables))
    return RelatorSet(rws, k, {rw.rendered: rw.abstract for rw in rws})
