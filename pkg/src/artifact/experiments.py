"""Bounded experiments on the embedding and on H.

Everything here is evidence at a finite horizon. A verdict is
``verified-at-bound`` when the search found nothing, ``refuted`` when it
found a witness (which is replayed through a fresh solver), and
``inconclusive`` when a budget ran out.
"""
from __future__ import annotations

import csv
import io
import json
import os
import random
from collections import deque
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .aperiodic_sets import DEFAULT_N0, YSet, check_star
from .core_words import (cyclic_core, free_reduce, inverse, longest_periodic_subword,
                         reduced_words)
from .embedding import (EmbeddingMap, Factor, FiniteGroup, LengthFunction, assign_codes,
                        cyclic_group, klein_four, reduce_factors, symmetric3, word_length)
from .relators import build_relator_set
from .small_cancellation import (Presentation, analyze_overlaps, dehn_reduce, geodesic_bounds,
                                 is_trivial, required_syllable_bound)

PROBE_WORDS = ("a", "ab", "abAB")
BALL_BUDGET_ENV = "ARTIFACT_BALL_BUDGET"
DEFAULT_BALL_BUDGET = 200_000

# name -> (group builder, generators, growth constant c)
FIXTURES = {
    "Z2": (lambda: cyclic_group(2), (1,), 2),
    "Z3": (lambda: cyclic_group(3), (1,), 3),
    "Z4": (lambda: cyclic_group(4), (1,), 3),
    "Z2xZ2": (klein_four, (1, 2), 3),
    "S3": (symmetric3, (1, 2), 3),
}


def fixture(name: str) -> Tuple[FiniteGroup, LengthFunction]:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
    build, gens, c = FIXTURES[name]
    G = build()
    return G, word_length(G, gens, c)


def fixture_embedding(name: str, yset: Optional[YSet] = None) -> EmbeddingMap:
    G, lf = fixture(name)
    return assign_codes(G, lf, yset or YSet.generate(DEFAULT_N0, 8))


def solver_for(emb: EmbeddingMap, max_len: int) -> Presentation:
    """Lazily generated presentation large enough for words up to ``max_len``."""
    return Presentation(emb, required_syllable_bound(max(1, max_len), emb))


@dataclass
class BoundedVerdict:
    claim: str
    status: str  # verified-at-bound | refuted | inconclusive
    horizon: int
    witness: Optional[dict] = None
    checked: int = 0

    def to_json(self) -> dict:
        return asdict(self)


# -- injectivity and distortion ------------------------------------------------

def injectivity_check(emb: EmbeddingMap, p: Optional[Presentation] = None,
                      horizon: int = 0) -> BoundedVerdict:
    """X_g X_h^-1 must be nontrivial in H for all g != h."""
    G = emb.group
    elems = sorted(emb.codes)
    checked = 0
    for g in elems:
        for h in elems:
            if g == h:
                continue
            w = free_reduce(emb.codes[g] + inverse(emb.codes[h]))
            checked += 1
            # equal codes cancel freely; no solver (whose index needs distinct blocks) is involved
            if w and p is None:
                p = solver_for(emb, 2 * emb.max_block)
            if not w or is_trivial(w, p):
                if w:
                    # replay through a fresh solver before reporting
                    assert is_trivial(w, solver_for(emb, len(w)))
                return BoundedVerdict("injectivity", "refuted", horizon,
                                      {"g": G.names[g], "h": G.names[h], "word": w}, checked)
    return BoundedVerdict("injectivity", "verified-at-bound", horizon, None, checked)


@dataclass
class DistortionRow:
    element: str
    length: int
    code_length: int
    lower: int
    upper: int
    truncated: bool

    @property
    def upper_ratio(self) -> Fraction:
        return Fraction(self.upper, self.length)

    @property
    def lower_ratio(self) -> Fraction:
        return Fraction(self.lower, self.length)


def distortion_report(emb: EmbeddingMap, p: Optional[Presentation] = None,
                      horizon: int = 2) -> List[DistortionRow]:
    rows = []
    p = p or solver_for(emb, emb.max_block + horizon)
    for g in sorted(emb.codes):
        l = emb.length(g)
        X = emb.codes[g]
        gb = geodesic_bounds(X, p, horizon)
        assert gb.lower <= gb.upper <= len(X)
        assert gb.upper < emb.d * l
        rows.append(DistortionRow(emb.group.names[g], l, len(X), gb.lower, gb.upper, gb.truncated))
    return rows


# -- power growth -------------------------------------------------------------------

@dataclass
class PowerRow:
    n: int
    lower: int
    upper: int
    truncated: bool
    ratio: Fraction  # lower / (n |A|)
    flagged: bool  # upper < quasi * n |A|


def power_growth(A: str, p: Presentation, n_max: int, horizon: int) -> List[PowerRow]:
    A = free_reduce(A)
    if not A:
        raise ValueError("A must be a nonempty reduced word")
    rows = []
    for n in range(1, n_max + 1):
        w = free_reduce(A * n)
        gb = geodesic_bounds(w, p, horizon)
        base = n * len(A)
        rows.append(PowerRow(n, gb.lower, gb.upper, gb.truncated, Fraction(gb.lower, base),
                             gb.upper < p.constants.quasi * base))
    return rows


# -- ball avoidance ------------------------------------------------------------------

@dataclass
class BallResult:
    n: int
    theta: Fraction
    removed_radius: int  # elements with |g| < removed_radius are removed
    radius: int
    path_length: Optional[int]
    status: str  # found | unreachable | inconclusive
    visited: int
    note: str = ""

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.path_length is None:
            return None
        return Fraction(self.path_length, self.n * self.n)


def ball_budget() -> int:
    raw = os.environ.get(BALL_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BALL_BUDGET


def ball_avoidance(A: str, p: Presentation, n: int, theta, budget: Optional[int] = None) -> BallResult:
    """Shortest path from A^n to A^-n in the Cayley graph avoiding {g : |g| < floor(theta n)}.

    The search stays inside the ball of radius (2n+1)|A| around 1. Vertices are
    reduced words; that is exact while no relator arc fits into a product of
    two such words, which the function checks before searching.
    """
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    A = free_reduce(A)
    budget = ball_budget() if budget is None else budget
    R = (2 * n + 1) * len(A)
    removed = int(theta * n)  # floor
    src, dst = free_reduce(A * n), free_reduce(inverse(A) * n)
    greendlinger = p.constants.greendlinger
    if 2 * R > greendlinger * p.min_relator:
        # distinct reduced words of length <= R might be equal in H
        return BallResult(n, theta, removed, R, None, "inconclusive", 0,
                          "radius large enough for relators to identify vertices")
    if len(src) < removed or len(dst) < removed:
        return BallResult(n, theta, removed, R, None, "unreachable", 0, "endpoint inside removed ball")
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            return BallResult(n, theta, removed, R, dist[v], "found", len(dist))
        for x in "aAbB":
            u = v[:-1] if v and v[-1] == inverse(x) else v + x
            if u in dist or len(u) > R or len(u) < removed:
                continue
            if len(dist) >= budget:
                return BallResult(n, theta, removed, R, None, "inconclusive", len(dist),
                                  "vertex budget exhausted")
            dist[u] = dist[v] + 1
            queue.append(u)
    return BallResult(n, theta, removed, R, None, "unreachable", len(dist))


# -- free elements and periodic subwords ----------------------------------------------

def gwords_up_to(emb: EmbeddingMap, max_len: int) -> Iterator[Tuple[Tuple[Factor, ...], str]]:
    """Reduced factor sequences whose rendering has length <= max_len, the empty one included."""
    lo = emb.min_block * 98 // 100  # a block keeps at least this many letters
    stack: List[Tuple[Tuple[Factor, ...], str]] = [((), "")]
    while stack:
        seq, word = stack.pop()
        if len(word) <= max_len:
            yield seq, word
        if (len(seq) + 1) * lo > max_len:
            continue
        for f in reversed(emb.oriented):
            if seq and f == (seq[-1][0], -seq[-1][1]):
                continue
            stack.append((seq + (f,), free_reduce(word + emb.block(*f))))


def free_element_probe(w: str, emb: EmbeddingMap, p: Optional[Presentation] = None,
                       conj_horizon: int = 1) -> BoundedVerdict:
    """Search u, v with u w u^-1 = v in H, v a G-word, |u| <= conj_horizon."""
    w = free_reduce(w)
    bound = len(w) + 2 * conj_horizon
    gws = list(gwords_up_to(emb, bound))
    p = p or solver_for(emb, 2 * bound)
    checked = 0
    for L in range(conj_horizon + 1):
        for u in reduced_words(L):
            conj = free_reduce(u + w + inverse(u))
            for seq, v in gws:
                checked += 1
                if is_trivial(free_reduce(conj + inverse(v)), p):
                    G = emb.group
                    return BoundedVerdict("free", "refuted", conj_horizon,
                                          {"u": u, "v": [[G.names[g], s] for g, s in seq]}, checked)
    return BoundedVerdict("free", "verified-at-bound", conj_horizon, None, checked)


def minimality_probe(A: str, p: Presentation, horizon: int) -> bool:
    """No word shorter than A equals a conjugate of A by a word of length <= horizon (bounded)."""
    A = free_reduce(A)
    for L in range(len(A)):
        for c in reduced_words(L):
            for k in range(horizon + 1):
                for u in reduced_words(k):
                    if is_trivial(free_reduce(u + A + inverse(u) + inverse(c)), p):
                        return False
    return True


def random_gword(emb: EmbeddingMap, rng: random.Random, min_syl: int = 1,
                 max_syl: int = 6) -> Tuple[Tuple[Factor, ...], str]:
    """Random reduced, cyclically reduced factor sequence and its reduced rendering."""
    opts = emb.oriented
    while True:
        k = rng.randint(min_syl, max_syl)
        seq: List[Factor] = []
        for _ in range(k):
            choices = [f for f in opts if not seq or f != (seq[-1][0], -seq[-1][1])]
            seq.append(rng.choice(choices))
        if len(seq) > 1 and seq[0] == (seq[-1][0], -seq[-1][1]):
            continue
        return tuple(seq), free_reduce(emb.render(seq))


@dataclass
class PeriodicAudit:
    A: str
    samples: int
    seed: int
    max_ratio: Fraction  # max |W| / |A|
    max_cover: Fraction  # max |W| / |V|
    violations: List[dict] = field(default_factory=list)
    precondition: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def periodic_subword_audit(A: str, emb: EmbeddingMap, sample_size: int, seed: int = 0,
                           max_syl: int = 6, precondition: Optional[Dict[str, bool]] = None) -> PeriodicAudit:
    A = free_reduce(A)
    rng = random.Random(seed)
    max_ratio, max_cover = Fraction(0), Fraction(0)
    bad = []
    for i in range(sample_size):
        seq, V = random_gword(emb, rng, 1, max_syl)
        start, W = longest_periodic_subword(V, A)
        ratio = Fraction(W, len(A))
        cover = Fraction(W, len(V)) if V else Fraction(0)
        max_ratio, max_cover = max(max_ratio, ratio), max(max_cover, cover)
        if W >= 16 * len(A):
            bad.append({"sample": i, "rule": "W < 16|A|", "W": W, "V": len(V)})
        if 100 * W >= 55 * len(V) and 10 * W >= 11 * len(A):
            bad.append({"sample": i, "rule": "W < 1.1|A| when W >= 0.55|V|", "W": W, "V": len(V)})
    return PeriodicAudit(A, sample_size, seed, max_ratio, max_cover, bad, dict(precondition or {}))


# -- centralizers --------------------------------------------------------------------

def _root(w: str) -> str:
    n = len(w)
    for k in range(1, n + 1):
        if n % k == 0 and w[:k] * (n // k) == w:
            return w[:k]
    return w


@dataclass
class CentralizerReport:
    W: str
    horizon: int
    commuting: List[str]
    common_root: Dict[str, bool]


def centralizer_probe(W: str, p: Presentation, horizon: int) -> CentralizerReport:
    W = free_reduce(W)
    found = []
    for L in range(horizon + 1):
        for V in reduced_words(L):
            comm = free_reduce(W + V + inverse(W) + inverse(V))
            if is_trivial(comm, p):
                found.append(V)
    rw = _root(cyclic_core(W)) if W else ""
    roots = {}
    for V in found:
        rv = _root(V) if V else ""
        roots[V] = not V or rv == rw or rv == inverse(rw)
    return CentralizerReport(W, horizon, found, roots)


# -- experiment runner ---------------------------------------------------------------

@dataclass
class ExperimentConfig:
    fixture: Optional[str] = None
    group_file: Optional[str] = None
    length_file: Optional[str] = None
    n0: int = DEFAULT_N0
    syllable_bound: int = 4
    horizon: int = 2
    n_max: int = 4
    theta: str = "1/2"
    seed: int = 0
    sample_size: int = 100
    conj_horizon: int = 1
    probe_words: Tuple[str, ...] = PROBE_WORDS
    output_dir: str = "out"

    def __post_init__(self):
        if (self.fixture is None) == (self.group_file is None):
            raise ValueError("give exactly one of fixture or group_file")
        if self.group_file is not None and self.length_file is None:
            raise ValueError("group_file needs a length_file")
        t = Fraction(self.theta)
        if not 0 < t < 1:
            raise ValueError("theta must lie in (0, 1)")
        for name in ("n0", "syllable_bound", "sample_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("horizon", "n_max", "conj_horizon"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        self.probe_words = tuple(self.probe_words)

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    def load_group(self) -> Tuple[FiniteGroup, LengthFunction]:
        if self.fixture is not None:
            return fixture(self.fixture)
        G = FiniteGroup.from_json(json.loads(Path(self.group_file).read_text()))
        lf = LengthFunction.from_json(json.loads(Path(self.length_file).read_text()))
        return G, lf


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([str(x) for x in r])
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def run_experiment(cfg: ExperimentConfig, out: Optional[Path] = None) -> Dict[str, str]:
    """Run every experiment for one group and write CSV/JSON files. Returns name -> content."""
    G, lf = cfg.load_group()
    yset = YSet.generate(cfg.n0, max(1, G.order - 1))
    emb = assign_codes(G, lf, yset)
    files: Dict[str, str] = {}
    used = sorted({len(x) for x in emb.codes.values()})
    star = check_star(yset.prefix(max(1, G.order - 1)))
    files["embedding.json"] = _dump(emb.to_json())
    files["star.json"] = _dump(star.to_json())

    rs = build_relator_set(G, emb, cfg.syllable_bound)
    pres = Presentation(emb, cfg.syllable_bound, rs)
    if len(rs):
        rep = analyze_overlaps(pres)
        files["overlaps.json"] = _dump({"relators": len(rs), "pairs": len(rep.pairs),
                                        "violations": len(rep.violations),
                                        "compatible": sum(o.classification == "compatible" for o in rep.pairs),
                                        "certified_unaligned_below": rep.certified_unaligned_below})

    files["injectivity.json"] = _dump(injectivity_check(emb, horizon=cfg.horizon).to_json())
    rows = distortion_report(emb, horizon=cfg.horizon)
    files["distortion.csv"] = _csv(
        [(r.element, r.length, r.code_length, r.lower, r.upper, r.truncated, r.lower_ratio, r.upper_ratio)
         for r in rows],
        ["element", "length", "code_length", "lower", "upper", "truncated", "lower_ratio", "upper_ratio"])

    small = solver_for(emb, 2 * cfg.n_max * max(len(a) for a in cfg.probe_words) + 2 * cfg.horizon + 2)
    growth, ball, periodic, verdicts, central = [], [], [], [], {}
    for A in cfg.probe_words:
        free = free_element_probe(A, emb, small, cfg.conj_horizon)
        minimal = minimality_probe(A, small, cfg.conj_horizon)
        verdicts.append({"A": A, "free": free.to_json(), "minimal": minimal})
        for r in power_growth(A, small, cfg.n_max, cfg.horizon):
            growth.append((A, r.n, r.lower, r.upper, r.truncated, r.ratio, r.flagged))
        for n in range(1, cfg.n_max + 1):
            b = ball_avoidance(A, small, n, Fraction(cfg.theta))
            ball.append((A, n, b.theta, b.removed_radius, b.radius, b.status,
                         "" if b.path_length is None else b.path_length,
                         "" if b.ratio is None else b.ratio, b.visited))
        pa = periodic_subword_audit(A, emb, cfg.sample_size, cfg.seed,
                                    precondition={"free": free.status == "verified-at-bound",
                                                  "minimal": minimal})
        periodic.append((A, pa.samples, pa.seed, pa.max_ratio, pa.max_cover, len(pa.violations)))
        cr = centralizer_probe(A, small, min(cfg.horizon, 3))
        central[A] = {"horizon": cr.horizon, "commuting": cr.commuting,
                      "common_root": cr.common_root}
    files["power_growth.csv"] = _csv(growth, ["A", "n", "lower", "upper", "truncated", "ratio", "flagged"])
    files["ball_avoidance.csv"] = _csv(
        ball, ["A", "n", "theta", "removed_radius", "radius", "status", "path_length", "ratio", "visited"])
    files["periodic.csv"] = _csv(periodic, ["A", "samples", "seed", "max_W_over_A", "max_W_over_V", "violations"])
    files["probes.json"] = _dump(verdicts)
    files["centralizers.json"] = _dump(central)
    files["summary.json"] = _dump({
        "group_order": G.order, "n0": cfg.n0, "code_lengths": used, "d": str(emb.d),
        "star_passed": star.passed, "relators": len(rs),
        "power_growth_flags": sum(1 for g in growth if g[-1]),
        "periodic_violations": sum(p[-1] for p in periodic),
    })
    out = Path(out or cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, content in sorted(files.items()):
        (out / name).write_text(content)
    return files
