"""Embedding a finite group with a length function into a two-generated group.

Modules, bottom up: core_words, aperiodic_sets, embedding, relators,
small_cancellation, diagrams, experiments (plus the cli).
"""
from .core_words import CyclicWord, cyclic_reduce, free_reduce, inverse
from .aperiodic_sets import YSet, check_star, enumerate_family
from .embedding import EmbeddingMap, FiniteGroup, LengthFunction, assign_codes
from .relators import RelatorSet, build_relator_set
from .small_cancellation import Presentation, dehn_reduce, is_trivial

__version__ = "0.1.0"
