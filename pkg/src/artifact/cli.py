"""Command-line entry point: ``artifact <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .aperiodic_sets import DEFAULT_N0, YSet, check_star, enumerate_family, growth_estimate
from .core_words import check_word
from .diagrams import (AmalgamationRefused, Diagram, diagram_from_trace, greendlinger_audit,
                       reduce_diagram)
from .embedding import EmbeddingMap, FiniteGroup, LengthFunction, assign_codes
from .experiments import ExperimentConfig, fixture, run_experiment
from .relators import RelatorSet, build_relator_set
from .small_cancellation import Presentation, UnderGenerated, analyze_overlaps, dehn_reduce


def _read_json(path: str):
    return json.loads(Path(path).read_text())


def _emit(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str, header: List[str], rows) -> None:
    lines = [",".join(header)] + [",".join(str(x) for x in r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def _presentation(args) -> Presentation:
    data = _read_json(args.presentation)
    if "relators" in data:
        emb = EmbeddingMap.from_json(data["embedding"])
        rs = RelatorSet.from_json(data, emb)
        if args.lazy_bound:
            return Presentation(emb, args.lazy_bound)
        return Presentation.from_relator_set(rs, emb)
    emb = EmbeddingMap.from_json(data)
    if not args.lazy_bound:
        raise SystemExit("an embedding file needs --lazy-bound")
    return Presentation(emb, args.lazy_bound)


def cmd_gen_aperiodic(args) -> int:
    fam = enumerate_family(args.max_len)
    _emit({"max_len": fam.max_len, "count": len(fam), "words": list(fam.words)}, args.out)
    if args.csv:
        est = growth_estimate(fam.words, args.max_len)
        _write_csv(args.csv, ["length", "cumulative_count"], est.counts)
    return 0


def cmd_gen_y(args) -> int:
    ys = YSet.generate(args.n0, args.count)
    words = ys.prefix(args.count)
    _emit({"n0": args.n0, "count": args.count, "family_max_len": ys.family.max_len,
           "lengths": [len(w) for w in words], "words": words}, args.out)
    return 0


def cmd_check_star(args) -> int:
    if args.words:
        data = _read_json(args.words)
        words = data["words"] if isinstance(data, dict) else data
    else:
        words = YSet.generate(args.n0, args.count).prefix(args.count)
    rep = check_star(words, Fraction(args.lam))
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


def cmd_build_embedding(args) -> int:
    if args.fixture:
        G, lf = fixture(args.fixture)
    else:
        if not (args.group and args.length):
            raise SystemExit("give --fixture or both --group and --length")
        G = FiniteGroup.from_json(_read_json(args.group))
        lf = LengthFunction.from_json(_read_json(args.length))
    errs = G.check()
    if errs:
        raise SystemExit("; ".join(errs))
    emb = assign_codes(G, lf, YSet.generate(args.n0, max(1, G.order - 1)))
    _emit(emb.to_json(), args.out)
    return 0


def cmd_gen_relators(args) -> int:
    emb = EmbeddingMap.from_json(_read_json(args.embedding))
    rs = build_relator_set(emb.group, emb, args.syllables)
    _emit(rs.to_json(emb), args.out)
    if args.csv:
        _write_csv(args.csv, ["syllables", "count", "min_length", "max_length"], rs.summary_rows())
    return 0


def cmd_check_smallcancel(args) -> int:
    data = _read_json(args.relators)
    emb = EmbeddingMap.from_json(data["embedding"])
    rs = RelatorSet.from_json(data, emb)
    rep = analyze_overlaps(Presentation.from_relator_set(rs, emb))
    _emit(rep.to_json(emb.group), args.out)
    return 1 if rep.violations else 0


def cmd_solve_word(args) -> int:
    p = _presentation(args)
    w = check_word(args.word)
    try:
        final, trace = dehn_reduce(w, p, cyclic=True)
    except UnderGenerated as exc:
        _emit({"verdict": "refused", "reason": str(exc)}, args.out)
        return 2
    trivial = final == ""
    _emit({"verdict": "trivial" if trivial else "nontrivial", "route": "lazy" if p.lazy else "explicit",
           "syllable_bound": p.k, "trace": trace.to_json(p.emb)}, args.out)
    if args.diagram and trivial:
        Path(args.diagram).write_text(json.dumps(diagram_from_trace(w, trace, p.emb).to_json()) + "\n")
    return 0 if trivial else 1


def cmd_reduce_diagram(args) -> int:
    data = _read_json(args.relators)
    emb = EmbeddingMap.from_json(data["embedding"])
    rs = RelatorSet.from_json(data, emb)
    p = Presentation.from_relator_set(rs, emb)
    d = Diagram.from_json(_read_json(args.inp), emb)
    try:
        r = reduce_diagram(d, p)
    except AmalgamationRefused as exc:
        _emit({"status": "refused", "reason": str(exc)}, args.out)
        return 2
    audit = greendlinger_audit(r)
    _emit({"status": "reduced", "cells_before": len(d.r_cells()), "cells_after": len(r.r_cells()),
           "audit": audit.to_json(), "diagram": r.to_json()}, args.out)
    if args.dot:
        Path(args.dot).write_text(r.to_dot())
    return 0 if audit.passed else 1


def cmd_run_experiment(args) -> int:
    cfg = ExperimentConfig.from_json(_read_json(args.config))
    files = run_experiment(cfg, Path(args.out) if args.out else None)
    sys.stdout.write("\n".join(sorted(files)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artifact", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-aperiodic", help="cube-free family b...b up to a length")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--csv", help="growth table")
    s.set_defaults(func=cmd_gen_aperiodic)

    s = sub.add_parser("gen-y", help="assemble Y-words")
    s.add_argument("--n0", type=int, default=DEFAULT_N0)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen_y)

    s = sub.add_parser("check-star", help="check the unique-occurrence property")
    s.add_argument("--lambda", dest="lam", default="1/100")
    s.add_argument("--n0", type=int, default=DEFAULT_N0)
    s.add_argument("--count", type=int, default=8)
    s.add_argument("--words", help="JSON list of words (or gen-y output)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_star)

    s = sub.add_parser("build-embedding", help="assign code words to group elements")
    s.add_argument("--group")
    s.add_argument("--length")
    s.add_argument("--fixture")
    s.add_argument("--n0", type=int, default=DEFAULT_N0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_build_embedding)

    s = sub.add_parser("gen-relators", help="render all relators up to a syllable bound")
    s.add_argument("--embedding", required=True)
    s.add_argument("--syllables", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_gen_relators)

    s = sub.add_parser("check-smallcancel", help="classify relator overlaps")
    s.add_argument("--relators", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_smallcancel)

    s = sub.add_parser("solve-word", help="word problem: exit 0 trivial, 1 nontrivial, 2 refused")
    s.add_argument("--word", required=True)
    s.add_argument("--presentation", required=True, help="relator set or embedding JSON")
    s.add_argument("--lazy-bound", type=int, default=0,
                   help="generate relators on demand up to this many syllables")
    s.add_argument("--diagram", help="write a van Kampen diagram here when trivial")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve_word)

    s = sub.add_parser("reduce-diagram", help="amalgamate compatible cells and audit")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--relators", required=True)
    s.add_argument("--dot")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce_diagram)

    s = sub.add_parser("run-experiment", help="run the bounded experiments for one group")
    s.add_argument("--config", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_run_experiment)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
