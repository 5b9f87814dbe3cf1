"""Shared, cached test inputs (built once per process)."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import List, Tuple

from artifact.aperiodic_sets import DEFAULT_N0, YSet
from artifact.core_words import free_reduce, inverse, random_reduced_word
from artifact.embedding import EmbeddingMap, Factor, evaluate_in_G
from artifact.experiments import FIXTURES, fixture_embedding, random_gword
from artifact.relators import RelatorSet, build_relator_set
from artifact.small_cancellation import Presentation

FIXTURE_NAMES = tuple(FIXTURES)
FIXTURE_COUNT = 8  # Y-words generated for the fixtures


@lru_cache(maxsize=None)
def yset() -> YSet:
    return YSet.generate(DEFAULT_N0, FIXTURE_COUNT)


@lru_cache(maxsize=None)
def embedding(name: str) -> EmbeddingMap:
    return fixture_embedding(name, yset())


@lru_cache(maxsize=None)
def relator_set(name: str, k: int = 4) -> RelatorSet:
    emb = embedding(name)
    return build_relator_set(emb.group, emb, k)


@lru_cache(maxsize=None)
def explicit(name: str, k: int = 4) -> Presentation:
    return Presentation.from_relator_set(relator_set(name, k), embedding(name))


def conjugated_product(name: str, rng: random.Random, max_factors: int = 3) -> str:
    """Freely reduced product of 1..max_factors conjugates u R^{+-1} u^-1 of generated relators."""
    emb = embedding(name)
    rels = relator_set(name).rwords
    w = ""
    for _ in range(rng.randint(1, max_factors)):
        r = rng.choice(rels).rendered
        if rng.random() < 0.5:
            r = inverse(r)
        u = random_reduced_word(rng, rng.randint(0, 4))
        if rng.random() < 0.25:
            g = rng.choice(sorted(emb.codes))
            u = free_reduce(emb.block(g, rng.choice((1, -1))) + u)
        w = free_reduce(w + u + r + inverse(u))
    return w


def products(name: str, count: int, seed: int) -> List[str]:
    rng = random.Random(seed)
    return [conjugated_product(name, rng) for _ in range(count)]


def distinct_quotients(name: str, count: int, seed: int) -> List[Tuple[Tuple[Factor, ...], Tuple[Factor, ...], str]]:
    """G-words U, V representing different elements, with the reduced word U V^-1."""
    emb = embedding(name)
    G = emb.group
    rng = random.Random(seed)
    out = []
    # every pair X_g X_h^-1 first, then random G-words
    for g in sorted(emb.codes):
        for h in sorted(emb.codes):
            if g != h and len(out) < count:
                out.append((((g, 1),), ((h, 1),), free_reduce(emb.codes[g] + inverse(emb.codes[h]))))
    while len(out) < count:
        U, u = random_gword(emb, rng, 1, 3)
        V, v = random_gword(emb, rng, 1, 3)
        if evaluate_in_G(U, G) == evaluate_in_G(V, G):
            continue
        out.append((U, V, free_reduce(u + inverse(v))))
    return out
