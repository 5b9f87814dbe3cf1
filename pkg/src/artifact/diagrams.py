"""Van Kampen disc diagrams with 0-cells, stored as combinatorial maps.

Every edge is a pair of darts ``d`` and ``d ^ 1``. A dart carries the letter
read when traversing it ('' for a 0-edge, whose twin is also ''). ``nxt[d]``
is the dart following ``d`` around its face; vertices are the orbits of
``d -> nxt[twin(d)]``, so a dart's orbit collects the darts leaving its origin.
Face ids live on darts: 0 is the outer face, positive ids are cells.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .core_words import (check_word, cyclic_core, free_reduce, inv_letter, inverse,
                         reduction_pairs)
from .embedding import EmbeddingMap, Factor, evaluate_in_G, invert_factors, parse_gword, reduce_factors
from .relators import AbstractRelator, RWord, render_relator
from .small_cancellation import SC, DehnTrace, Presentation

OUTER = 0


class DiagramError(Exception):
    pass


class AmalgamationRefused(DiagramError):
    """The amalgamated relator lies outside the generated presentation."""


def twin(d: int) -> int:
    return d ^ 1


@dataclass
class Cell:
    kind: str  # "R" or "0"
    relator: Optional[RWord] = None  # in face orientation
    junctions: Tuple[int, ...] = ()  # dart starting each trimmed block


class Diagram:
    def __init__(self, emb: EmbeddingMap):
        self.emb = emb
        self.label: List[str] = []
        self.nxt: List[int] = []
        self.prv: List[int] = []
        self.face: List[int] = []
        self.cells: Dict[int, Cell] = {}
        self.base: Optional[int] = None  # first dart of the boundary walk
        self._next_cell = 1

    # -- construction primitives -----------------------------------------

    def copy(self) -> "Diagram":
        d = Diagram(self.emb)
        d.label = list(self.label)
        d.nxt = list(self.nxt)
        d.prv = list(self.prv)
        d.face = list(self.face)
        d.cells = {k: Cell(c.kind, c.relator, tuple(c.junctions)) for k, c in self.cells.items()}
        d.base = self.base
        d._next_cell = self._next_cell
        return d

    def new_edge(self, letter: str) -> int:
        d = len(self.label)
        self.label += [letter, inv_letter(letter) if letter else ""]
        self.nxt += [d, d + 1]
        self.prv += [d, d + 1]
        self.face += [OUTER, OUTER]
        return d

    def link(self, a: int, b: int) -> None:
        self.nxt[a] = b
        self.prv[b] = a

    def new_cell(self, cell: Cell) -> int:
        cid = self._next_cell
        self._next_cell += 1
        self.cells[cid] = cell
        return cid

    def orbit(self, d: int) -> List[int]:
        out = [d]
        e = self.nxt[d]
        while e != d:
            out.append(e)
            e = self.nxt[e]
        return out

    def assign(self, start: int, cid: int) -> None:
        for d in self.orbit(start):
            self.face[d] = cid

    # -- queries -----------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self.label)

    def boundary_darts(self) -> List[int]:
        return [] if self.base is None else self.orbit(self.base)

    def boundary_word(self) -> str:
        return "".join(self.label[d] for d in self.boundary_darts())

    def face_darts(self, cid: int) -> List[int]:
        if cid == OUTER:
            return self.boundary_darts()
        c = self.cells[cid]
        if c.junctions:
            return self.orbit(c.junctions[0])
        return self.orbit(self.face.index(cid))

    def face_word(self, cid: int) -> str:
        return "".join(self.label[d] for d in self.face_darts(cid))

    def r_cells(self) -> List[int]:
        return sorted(k for k, c in self.cells.items() if c.kind == "R")

    def zero_cells(self) -> List[int]:
        return sorted(k for k, c in self.cells.items() if c.kind == "0")

    def vertices(self) -> List[int]:
        """Vertex id of each dart's origin."""
        n = self.num_darts
        vert = [-1] * n
        k = 0
        for d in range(n):
            if vert[d] >= 0:
                continue
            e = d
            while vert[e] < 0:
                vert[e] = k
                e = self.nxt[twin(e)]
            k += 1
        return vert

    def euler(self) -> Tuple[int, int, int]:
        if self.num_darts == 0:
            return 1, 0, 1
        V = max(self.vertices()) + 1
        E = self.num_darts // 2
        seen = [False] * self.num_darts
        F = 0
        for d in range(self.num_darts):
            if not seen[d]:
                F += 1
                for e in self.orbit(d):
                    seen[e] = True
        return V, E, F

    def check(self) -> List[str]:
        """Structural problems; empty when the diagram is a valid disc diagram."""
        errs: List[str] = []
        n = self.num_darts
        for d in range(n):
            if self.prv[self.nxt[d]] != d:
                errs.append(f"nxt/prv mismatch at dart {d}")
            if self.label[twin(d)] != (inv_letter(self.label[d]) if self.label[d] else ""):
                errs.append(f"twin label mismatch at dart {d}")
        if errs:
            return errs
        V, E, F = self.euler()
        if V - E + F != 2:
            errs.append(f"Euler characteristic {V - E + F}")
        if n and self._components() != 1:
            errs.append("diagram is disconnected")
        if (self.base is None) != (n == 0):
            errs.append("base point inconsistent with the edge set")
        faces: Dict[int, int] = {}
        seen = [False] * n
        for d in range(n):
            if seen[d]:
                continue
            orb = self.orbit(d)
            ids = {self.face[e] for e in orb}
            for e in orb:
                seen[e] = True
            if len(ids) != 1:
                errs.append(f"face orbit of dart {d} carries ids {sorted(ids)}")
                continue
            fid = ids.pop()
            faces[fid] = faces.get(fid, 0) + 1
        if n and faces.get(OUTER) != 1:
            errs.append("outer face is not a single orbit")
        for cid, c in self.cells.items():
            if faces.get(cid) != 1:
                errs.append(f"cell {cid} is not a single face")
                continue
            word = self.face_word(cid)
            if c.kind == "0":
                if len(word) != 2 or word[0] != inv_letter(word[1]):
                    errs.append(f"0-cell {cid} reads {word!r}")
            else:
                if c.relator is None or not _is_rotation(word, c.relator.rendered):
                    errs.append(f"cell {cid} does not read its relator")
                elif any(self.face[j] != cid for j in c.junctions):
                    errs.append(f"cell {cid} has foreign junction darts")
        if set(faces) - set(self.cells) - {OUTER}:
            errs.append("face ids without a cell record")
        return errs

    def _components(self) -> int:
        vert = self.vertices()
        nv = max(vert) + 1
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(0, self.num_darts, 2):
            a, b = find(vert[d]), find(vert[d + 1])
            if a != b:
                parent[a] = b
        return len({find(v) for v in range(nv)})

    # -- cell registration ---------------------------------------------------

    def register(self, cid: int, rel: RWord) -> None:
        """Attach relator metadata to cell ``cid`` in whichever orientation it reads."""
        start = self.face.index(cid)
        darts = [e for e in self.orbit(start) if self.label[e]]
        word = "".join(self.label[e] for e in darts)
        for cand in (rel, render_relator(AbstractRelator(invert_factors(rel.syllables)), self.emb)):
            rho = (cand.rendered * 2).find(word) if len(word) == len(cand.rendered) else -1
            if rho >= 0:
                n = len(word)
                s = (n - rho) % n
                self.cells[cid] = Cell("R", cand, tuple(darts[(s + j) % n] for j in cand.junctions))
                return
        raise DiagramError(f"cell {cid} does not read a rotation of its relator")

    def to_json(self) -> dict:
        G = self.emb.group
        return {
            "base": self.base,
            "darts": [{"label": self.label[d], "next": self.nxt[d], "face": self.face[d]}
                      for d in range(self.num_darts)],
            "cells": [{"id": cid, "kind": c.kind,
                       "relator": None if c.relator is None else c.relator.abstract.to_json(G),
                       "junctions": list(c.junctions)}
                      for cid, c in sorted(self.cells.items())],
        }

    @classmethod
    def from_json(cls, data: dict, emb: EmbeddingMap) -> "Diagram":
        d = cls(emb)
        for e in data["darts"]:
            d.label.append(e["label"])
            d.nxt.append(e["next"])
            d.face.append(e["face"])
        d.prv = [0] * len(d.nxt)
        for a, b in enumerate(d.nxt):
            d.prv[b] = a
        d.base = data["base"]
        for c in data["cells"]:
            rel = None
            if c["relator"] is not None:
                rel = render_relator(AbstractRelator.from_json(c["relator"], emb.group), emb)
            d.cells[c["id"]] = Cell(c["kind"], rel, tuple(c["junctions"]))
        d._next_cell = max(d.cells, default=0) + 1
        errs = d.check()
        if errs:
            raise DiagramError("; ".join(errs[:5]))
        return d

    def to_dot(self) -> str:
        vert = self.vertices() if self.num_darts else []
        lines = ["digraph diagram {", "  node [shape=point];"]
        for d in range(0, self.num_darts, 2):
            lab = self.label[d] or "0"
            style = ' style=dashed' if not self.label[d] else ""
            lines.append(f'  v{vert[d]} -> v{vert[d + 1]} [label="{lab}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _is_rotation(word: str, rendered: str) -> bool:
    if len(word) != len(rendered):
        return False
    return word in rendered * 2 or word in inverse(rendered) * 2


# -- construction from Dehn traces ----------------------------------------------

def _insert_digon(D: Diagram, pred: Optional[int], letter: str) -> Tuple[int, int]:
    """Put a cancelling pair letter.letter^-1 into the boundary after dart ``pred``.

    Returns the two new boundary darts; the region between them is a 0-cell.
    """
    d1 = D.new_edge(letter)
    d2 = D.new_edge(letter)
    t1, t2 = twin(d1), twin(d2)
    if pred is None:
        D.link(d1, t2)
        D.link(t2, d1)
    else:
        q = D.nxt[pred]
        D.link(pred, d1)
        D.link(d1, t2)
        D.link(t2, q)
    D.link(d2, t1)
    D.link(t1, d2)
    cid = D.new_cell(Cell("0"))
    D.face[d2] = D.face[t1] = cid
    return d1, t2


def _unreduce(D: Diagram, bdry: List[int], u: str, cyclic: bool) -> List[int]:
    """Boundary dart list reading ``u``, given ``bdry`` reading its reduction."""
    survivors, pairs = reduction_pairs(u, cyclic)
    if len(survivors) != len(bdry):
        raise DiagramError("trace does not match the diagram boundary")
    at: Dict[int, int] = dict(zip(survivors, bdry))
    n = len(u)
    present = sorted(at)
    for i, j in reversed(pairs):
        if present:
            k = bisect.bisect_left(present, i)
            pred = at[present[k - 1]] if k > 0 else at[present[-1]]
        else:
            pred = None
        di, dj = _insert_digon(D, pred, u[i])
        at[i], at[j] = di, dj
        bisect.insort(present, i)
        bisect.insort(present, j)
    assert len(present) == n
    return [at[i] for i in range(n)]


def _attach_cell(D: Diagram, bdry: List[int], x: int, mv: int, U: str, rel: RWord) -> List[int]:
    """Glue a cell along bdry[x:x+mv] (reading V); the boundary then reads U there."""
    n = len(bdry)
    path = [D.new_edge(ch) for ch in U]
    for a, b in zip(path, path[1:]):
        D.link(a, b)
    seg = bdry[x:x + mv]
    if mv == n and n > 0:
        D.link(path[-1], path[0])
    elif n == 0:
        D.link(path[-1], path[0])
    else:
        before = bdry[x - 1] if x > 0 else bdry[-1]
        after = bdry[(x + mv) % n]
        D.link(before, path[0])
        D.link(path[-1], after)
    # the cell: V forward, then U backward
    inner = seg + [twin(e) for e in reversed(path)]
    for a, b in zip(inner, inner[1:] + inner[:1]):
        D.link(a, b)
    cid = D.new_cell(Cell("R"))
    for e in inner:
        D.face[e] = cid
    for e in path:
        D.face[e] = OUTER
    D.register(cid, rel)
    return bdry[:x] + path + bdry[x + mv:]


def diagram_from_trace(w: str, trace: DehnTrace, emb: EmbeddingMap) -> Diagram:
    """Disc diagram with boundary label ``w`` from a trace ending at the empty word."""
    check_word(w)
    if trace.initial != w:
        raise DiagramError("trace was computed for a different word")
    if trace.final != "":
        raise DiagramError("trace does not reduce the word to the empty word")
    D = Diagram(emb)
    bdry: List[int] = []
    for step in reversed(trace.steps):
        if step.relator is None:
            bdry = _unreduce(D, bdry, step.word, trace.cyclic)
        else:
            x, m, V = step.position, step.arc_length, step.replacement
            R = step.relator.rendered
            rot = R[step.rotation:] + R[:step.rotation]
            U = rot[:m]
            if trace.cyclic:
                wr = step.word[x:] + step.word[:x]
                if wr[:m] != U:
                    raise DiagramError("step arc does not match the word")
                bdry = _unreduce(D, bdry, V + wr[m:], True)
                bdry = _attach_cell(D, bdry, 0, len(V), U, step.relator)
                k = len(step.word) - x
                bdry = bdry[k:] + bdry[:k]
            else:
                if step.word[x:x + m] != U:
                    raise DiagramError("step arc does not match the word")
                u = step.word[:x] + V + step.word[x + m:]
                bdry = _unreduce(D, bdry, u, False)
                bdry = _attach_cell(D, bdry, x, len(V), U, step.relator)
        D.base = bdry[0] if bdry else None
        for e in bdry:
            D.face[e] = OUTER
    if trace.steps and trace.steps[0].word != w:
        raise DiagramError("trace does not start at the word")
    D.base = bdry[0] if bdry else None
    if D.boundary_word() != w:
        raise DiagramError("constructed boundary does not read the word")
    return D


# -- views ------------------------------------------------------------------------

@dataclass
class CellView:
    cell: int
    contour: str  # unreduced: the full blocks A_0 ... A_{k-1}
    reduced_contour: str
    entire_vertices: Tuple[int, ...]  # darts leaving the junction vertices
    junction_losses: Tuple[int, ...]


def cell_view(D: Diagram, cid: int) -> CellView:
    c = D.cells[cid]
    if c.kind != "R":
        raise DiagramError(f"cell {cid} is a 0-cell")
    rel = c.relator
    full = D.emb.render(rel.syllables)
    word = "".join(D.label[e] for e in D.orbit(c.junctions[0]) if D.label[e])
    return CellView(cid, full, word, c.junctions, rel.trims)


# -- compatible pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class CompatiblePair:
    cell1: int
    cell2: int
    path: Tuple[int, ...]  # darts from the junction-0 vertex of cell1 to that of cell2
    label: str
    witness: Tuple[Factor, ...]


def _hair(D: Diagram, cid: int) -> str:
    rel = D.cells[cid].relator
    g, s = rel.syllables[0]
    return D.emb.block(g, s)[:rel.trims[0]]


def _compressed_edges(D: Diagram, keep: set, vert: List[int]) -> Dict[int, List[Tuple[int, Tuple[int, ...], str]]]:
    deg: Dict[int, int] = {}
    for d in range(D.num_darts):
        deg[vert[d]] = deg.get(vert[d], 0) + 1
    nodes = {v for v, k in deg.items() if k != 2} | keep
    out: Dict[int, List[Tuple[int, Tuple[int, ...], str]]] = {}
    for d in range(D.num_darts):
        if vert[d] not in nodes:
            continue
        darts = [d]
        e = d
        while vert[twin(e)] not in nodes:
            # the other dart leaving this degree-2 vertex
            f = D.nxt[e]
            darts.append(f)
            e = f
        end = vert[twin(e)]
        if end == vert[d]:
            continue
        lab = "".join(D.label[x] for x in darts)
        out.setdefault(vert[d], []).append((end, tuple(darts), lab))
    for v in out:
        uniq: Dict[Tuple[int, str], Tuple[int, Tuple[int, ...], str]] = {}
        for end, darts, lab in out[v]:
            key = (end, free_reduce(lab))
            if key not in uniq or darts < uniq[key][1]:
                uniq[key] = (end, darts, lab)
        out[v] = sorted(uniq.values(), key=lambda t: (t[0], t[1]))
    return out


def _paths(adj, src: int, dst: int, cap: int) -> Iterator[List[Tuple[int, Tuple[int, ...], str]]]:
    """Simple paths from src to dst, depth first; at most ``cap`` partial paths are expanded."""
    if src == dst:
        yield []
        return
    stack = [(src, [], {src})]
    expanded = 0
    while stack and expanded < cap:
        v, path, seen = stack.pop()
        expanded += 1
        for edge in reversed(adj.get(v, [])):
            end = edge[0]
            if end in seen:
                continue
            if end == dst:
                yield path + [edge]
            else:
                stack.append((end, path + [edge], seen | {end}))


def find_compatible_pairs(D: Diagram, path_cap: int = 20000) -> List[CompatiblePair]:
    """Pairs of distinct cells joined by a simple path between entire vertices whose label is a G-word."""
    cells = D.r_cells()
    if len(cells) < 2:
        return []
    vert = D.vertices()
    anchors = {cid: vert[D.cells[cid].junctions[0]] for cid in cells}
    adj = _compressed_edges(D, set(anchors.values()), vert)
    out: List[CompatiblePair] = []
    for i, c1 in enumerate(cells):
        for c2 in cells[i + 1:]:
            h1, h2 = _hair(D, c1), _hair(D, c2)
            for path in _paths(adj, anchors[c1], anchors[c2], path_cap):
                lab = "".join(e[2] for e in path)
                C = free_reduce(h1 + lab + inverse(h2))
                wit = parse_gword(C, D.emb)
                if wit is not None:
                    darts = tuple(x for e in path for x in e[1])
                    out.append(CompatiblePair(c1, c2, darts, lab, wit))
                    break
    return out


# -- amalgamation --------------------------------------------------------------------

def _split_cancellations(D: Diagram, cid: int, start: int) -> None:
    """Cut cancelling letter pairs of face ``cid`` off into 0-cells."""
    walk = D.orbit(start)
    letters = [e for e in walk if D.label[e]]
    word = "".join(D.label[e] for e in letters)
    _, pairs = reduction_pairs(word, cyclic=True)
    for i, j in pairs:
        p, q = letters[i], letters[j]
        seg = [p]
        e = p
        while e != q:
            e = D.nxt[e]
            seg.append(e)
        rest_start, rest_end = D.nxt[q], D.prv[p]
        rest_letters = False
        if rest_start != p:
            e = rest_start
            while True:
                if D.label[e]:
                    rest_letters = True
                    break
                if e == rest_end:
                    break
                e = D.nxt[e]
        zc = D.new_cell(Cell("0"))
        if not rest_letters:
            # nothing but 0-edges remain: the whole face is the 0-cell
            D.assign(p, zc)
            continue
        z = D.new_edge("")
        D.link(rest_end, z)
        D.link(z, rest_start)
        D.link(q, twin(z))
        D.link(twin(z), p)
        D.face[z] = cid
        for e in seg + [twin(z)]:
            D.face[e] = zc
    if cid not in D.face:
        del D.cells[cid]


def amalgamate(D: Diagram, pair: CompatiblePair, p: Presentation) -> Diagram:
    """Replace the two cells of ``pair`` and the strip along its path by one cell (or none)."""
    c1, c2 = pair.cell1, pair.cell2
    if c1 == c2 or D.cells.get(c1, Cell("0")).kind != "R" or D.cells.get(c2, Cell("0")).kind != "R":
        raise DiagramError("pair must name two distinct relator cells")
    vert = D.vertices()
    j1, j2 = D.cells[c1].junctions[0], D.cells[c2].junctions[0]
    path = list(pair.path)
    if path:
        if vert[path[0]] != vert[j1] or vert[twin(path[-1])] != vert[j2]:
            raise DiagramError("path does not join the junction vertices")
        if any(vert[twin(a)] != vert[b] for a, b in zip(path, path[1:])):
            raise DiagramError("path is not connected")
        vs = [vert[e] for e in path] + [vert[twin(path[-1])]]
        if len(set(vs)) != len(vs):
            raise DiagramError("path is not simple")
    elif vert[j1] != vert[j2]:
        raise DiagramError("empty path between distinct vertices")
    label = "".join(D.label[e] for e in path)
    C = free_reduce(_hair(D, c1) + label + inverse(_hair(D, c2)))
    wit = parse_gword(C, D.emb)
    if wit is None:
        raise DiagramError("connecting label is not a G-word")
    G = D.emb.group
    S1, S2 = D.cells[c1].relator.syllables, D.cells[c2].relator.syllables
    amalg = reduce_factors(tuple(S1) + wit + tuple(S2) + invert_factors(wit), cyclic=True)
    if evaluate_in_G(amalg, G) != G.identity:
        raise DiagramError("amalgamated relator does not vanish in G")
    if amalg and not p.admits(amalg):
        raise AmalgamationRefused(f"amalgamated relator with {len(amalg)} syllables is not generated")

    E = D.copy()
    ys: List[int] = []
    remap: Dict[int, int] = {}
    for x in path:
        ax = twin(x)
        y = E.new_edge(E.label[x])
        yb = twin(y)
        pa, sa = E.prv[ax], E.nxt[ax]
        fa = E.face[ax]
        if pa == ax:
            raise DiagramError("degenerate face along the path")
        E.link(pa, yb)
        E.link(yb, sa)
        E.face[yb] = fa
        E.link(ax, y)
        E.link(y, ax)
        remap[ax] = yb
        ys.append(y)
    for cid, c in E.cells.items():
        if c.junctions:
            E.cells[cid] = Cell(c.kind, c.relator, tuple(remap.get(j, j) for j in c.junctions))
    if E.base is not None:
        E.base = remap.get(E.base, E.base)
    jd1, jd2 = E.cells[c1].junctions[0], E.cells[c2].junctions[0]
    if path:
        axs = [twin(x) for x in path]
        for i in range(len(path) - 1):
            E.link(ys[i], ys[i + 1])
            E.link(axs[i + 1], axs[i])
        a1, a2 = E.prv[jd1], E.prv[jd2]
        E.link(a1, ys[0])
        E.link(axs[0], jd1)
        E.link(a2, axs[-1])
        E.link(ys[-1], jd2)
    else:
        a1, a2 = E.prv[jd1], E.prv[jd2]
        E.link(a1, jd2)
        E.link(a2, jd1)
    merged = E.new_cell(Cell("R"))
    del E.cells[c1]
    del E.cells[c2]
    E.assign(jd1, merged)
    _split_cancellations(E, merged, jd1)
    if merged in E.cells:
        E.register(merged, render_relator(AbstractRelator(amalg), D.emb))
    errs = E.check()
    if errs:
        raise DiagramError("amalgamation broke the diagram: " + "; ".join(errs[:3]))
    if free_reduce(E.boundary_word()) != free_reduce(D.boundary_word()):
        raise DiagramError("amalgamation changed the boundary label")
    return E


def reduce_diagram(D: Diagram, p: Presentation, path_cap: int = 20000) -> Diagram:
    while True:
        pairs = find_compatible_pairs(D, path_cap)
        if not pairs:
            return D
        before = len(D.r_cells())
        D = amalgamate(D, pairs[0], p)
        assert len(D.r_cells()) < before


# -- Greendlinger audit -----------------------------------------------------------------

class _DartClasses:
    """Letter darts identified across 0-cells (0-edges contracted)."""

    def __init__(self, D: Diagram):
        self.parent = list(range(D.num_darts))
        for cid in D.zero_cells():
            ls = [e for e in D.face_darts(cid) if D.label[e]]
            if len(ls) == 2:
                p, q = ls
                self.union(p, twin(q))
                self.union(twin(p), q)

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _reduced_outer(D: Diagram, cls: _DartClasses) -> List[int]:
    darts = [e for e in D.boundary_darts() if D.label[e]]
    word = "".join(D.label[e] for e in darts)
    survivors, _ = reduction_pairs(word, cyclic=True)
    return [darts[i] for i in survivors]


def _longest_shared_run(a: List[int], b: List[int], cls: _DartClasses) -> int:
    """Longest run read forward along a and backward along b over the same edges."""
    if not a or not b:
        return 0
    pos: Dict[int, List[int]] = {}
    for j, e in enumerate(b):
        pos.setdefault(cls.find(twin(e)), []).append(j)
    na, nb = len(a), len(b)
    cap = min(na, nb)
    matches = [set(pos.get(cls.find(e), ())) for e in a]
    best = 0
    for i in range(na):
        for j in matches[i]:
            if (j + 1) % nb in matches[i - 1]:
                continue  # not the start of a run
            length, ii, jj = 1, i, j
            while length < cap and (jj - 1) % nb in matches[(ii + 1) % na]:
                length += 1
                ii, jj = (ii + 1) % na, (jj - 1) % nb
            best = max(best, length)
    if best == 0 and any(matches):
        best = cap  # every match continues backwards: the run closes up
    return best


@dataclass
class GreendlingerAudit:
    cell: Optional[int]
    arc_length: int
    fraction: Fraction
    inner_edges: int
    perimeter: int
    flags: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.flags

    def to_json(self) -> dict:
        return {"cell": self.cell, "arc_length": self.arc_length, "fraction": str(self.fraction),
                "inner_edges": self.inner_edges, "perimeter": self.perimeter, "flags": self.flags,
                "passed": self.passed}


def _cell_letters(D: Diagram, cid: int) -> List[int]:
    return [e for e in D.face_darts(cid) if D.label[e]]


def greendlinger_audit(D: Diagram, constants=SC) -> GreendlingerAudit:
    cells = D.r_cells()
    if not cells:
        return GreendlingerAudit(None, 0, Fraction(0), 0, 0)
    cls = _DartClasses(D)
    outer = _reduced_outer(D, cls)
    best: Tuple[Fraction, int, int] = (Fraction(-1), 0, 0)
    sigma = 0
    counts: Dict[int, int] = {}
    for cid in cells:
        ls = _cell_letters(D, cid)
        sigma += len(ls)
        for e in ls:
            k = min(cls.find(e), cls.find(twin(e)))
            counts[k] = counts.get(k, 0) + 1
        arc = _longest_shared_run(ls, outer, cls)
        frac = Fraction(arc, len(ls))
        if (frac, -cid) > (best[0], -best[1]):
            best = (frac, cid, arc)
    inner = sum(1 for v in counts.values() if v >= 2)
    flags = []
    if best[0] <= constants.greendlinger:
        flags.append(f"THEOREM-VIOLATION: best outer arc fraction {best[0]} <= {constants.greendlinger}")
    if inner >= constants.inner_fraction * sigma:
        flags.append(f"THEOREM-VIOLATION: {inner} inner edges >= {constants.inner_fraction} of {sigma}")
    return GreendlingerAudit(best[1], best[2], best[0], inner, sigma, flags)


def shared_arcs(D: Diagram, constants=SC) -> List[Tuple[int, int, int]]:
    """Pairs of distinct cells sharing a run of at least piece_bound of the first cell's reduced contour."""
    cells = D.r_cells()
    cls = _DartClasses(D)
    letters = {cid: _cell_letters(D, cid) for cid in cells}
    out = []
    for c1 in cells:
        for c2 in cells:
            if c1 == c2:
                continue
            run = _longest_shared_run(letters[c1], letters[c2], cls)
            if run >= constants.piece_bound * len(letters[c1]):
                out.append((c1, c2, run))
    return out
