"""Symmetry group computation and realization for level-set graphs.

``compute_group`` reads the symmetry group of a field off its enhanced
level-set graph: descending from the root boundary vertex, each saddle
contributes direct factors for its rotation-invariant children and a
cyclic-top wreath for each maximal orbit of interchangeable cyclic
children.  ``realize_reeb`` inverts the process, building a disk graph
whose computed group is exactly a requested normalized word, so the two
directions witness each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .reeb import (
    BOUNDARY,
    DISK,
    MAX,
    MIN,
    SADDLE,
    Atom,
    EnhancedReebGraph,
    ReebGraph,
    ReebVertex,
    canonical_code,
    cyclic_symmetry,
    validate_reeb,
)
from .words import UNIT, GroupExpr, Prod, Unit, Wr, normalize, prod_of

log = logging.getLogger(__name__)


class InvalidGraph(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class UnsupportedAtom(ValueError):
    """A saddle stores more than two axial slots."""


@dataclass(frozen=True)
class DecompositionInput:
    """Disjoint disk/cylinder pieces of a larger surface."""

    pieces: tuple[EnhancedReebGraph, ...]


class PieceError(ValueError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"piece {index}: {cause}")
        self.index = index
        self.cause = cause


# === Decomposition direction ===

def compute_group(g: EnhancedReebGraph) -> GroupExpr:
    """Symmetry group of the field as a normalized admissible word."""
    violations = validate_reeb(g)
    if violations:
        raise InvalidGraph(violations)
    return _Engine(g).run()


class _Engine:
    def __init__(self, g: EnhancedReebGraph):
        self.g = g
        self.gr = g.graph
        self.cyc_vertices, self.cyc_edges = self.gr.cycle()
        # edges whose far side contains the cycle are pinned: a graph
        # symmetry maps the unique cycle to itself, so the branch holding it
        # can never trade places with a sibling
        self.fixed_edges = set(self.cyc_edges) | self._path_to_cycle()

    def _path_to_cycle(self) -> set[str]:
        if not self.cyc_vertices:
            return set()
        parent: dict[str, tuple[str, str]] = {}
        seen = {self.g.root}
        frontier = [self.g.root]
        while frontier:
            nxt = []
            for v in frontier:
                if v in self.cyc_vertices:
                    path = set()
                    while v != self.g.root:
                        eid, v = parent[v]
                        path.add(eid)
                    return path
                for eid in self.gr.incident(v):
                    if eid in self.cyc_edges:
                        continue
                    w = self.gr.other_end(eid, v)
                    if w not in seen:
                        seen.add(w)
                        parent[w] = (eid, v)
                        nxt.append(w)
            frontier = nxt
        raise AssertionError("cycle unreachable from root")  # disconnected

    def run(self) -> GroupExpr:
        root_edge = self.gr.incident(self.g.root)[0]
        child = self.gr.other_end(root_edge, self.g.root)
        return normalize(self._descend(root_edge, child))

    def _descend(self, eid: str, v: str) -> GroupExpr:
        if v in self.cyc_vertices:
            return self._spine(v, eid)
        if self.gr.vertices[v].kind != SADDLE:
            return UNIT
        return self._saddle(v, {eid})

    def _spine(self, first: str, outer_eid: str) -> GroupExpr:
        """Process every cycle vertex once; the whole cycle is pointwise
        fixed, so each cycle saddle contributes independently."""
        ordered = self._walk_cycle(first)
        factors = []
        for v in ordered:
            parents = {e for e in self.gr.incident(v) if e in self.cyc_edges}
            if v == first:
                parents.add(outer_eid)
            factors.append(self._saddle(v, parents))
        return prod_of(factors)

    def _walk_cycle(self, start: str) -> list[str]:
        order = [start]
        prev_edge = None
        v = start
        while True:
            nxt = sorted(e for e in self.gr.incident(v)
                         if e in self.cyc_edges and e != prev_edge)
            eid = nxt[0]
            w = self.gr.other_end(eid, v)
            if w == start:
                break
            order.append(w)
            prev_edge = eid
            v = w
        return order

    def _saddle(self, v: str, parent_eids: set[str]) -> GroupExpr:
        atom = self.g.atoms[v]
        if len(atom.axial) > 2:
            raise UnsupportedAtom(
                f"saddle {v!r} has {len(atom.axial)} axial slots")
        axial = [e for e in atom.axial
                 if e not in parent_eids and e not in self.cyc_edges]
        cyclic = [e for e in atom.cyclic if e not in parent_eids]
        # edges pinned by the cycle behave as axial wherever they are stored
        axial += [e for e in cyclic if e in self.fixed_edges]
        cyclic = [e for e in cyclic if e not in self.fixed_edges]

        factors = [self._descend(e, self.gr.other_end(e, v)) for e in axial]
        if cyclic:
            codes = [canonical_code(self.g, e, self.gr.other_end(e, v))
                     for e in cyclic]
            sym = cyclic_symmetry(codes)
            if sym.m == 1:
                factors += [self._descend(e, self.gr.other_end(e, v))
                            for e in cyclic]
            else:
                period = len(cyclic) // sym.m
                reps = [self._descend(e, self.gr.other_end(e, v))
                        for e in cyclic[:period]]
                factors.append(Wr(prod_of(reps), sym.m))
        return normalize(prod_of(factors))


def combine_decomposition(inp: DecompositionInput) -> GroupExpr:
    """Group of a field on a surface split into disk/cylinder pieces: the
    direct product of the per-piece groups."""
    if not inp.pieces:
        raise ValueError("decomposition needs at least one piece")
    factors = []
    for idx, piece in enumerate(inp.pieces):
        try:
            factors.append(compute_group(piece))
        except Exception as exc:
            raise PieceError(idx, exc) from exc
    return normalize(prod_of(factors))


# === Construction direction ===

def realize_reeb(expr: GroupExpr) -> EnhancedReebGraph:
    """Disk graph whose computed group is the normalized input word.

    A wreath becomes a flower saddle: n byte-identical petal copies at
    identical levels (so the rotation symmetry is exactly n) plus one axial
    inner disk holding a single minimum.  A product becomes one saddle whose
    petals carry the factors at pairwise level offsets, so even isomorphic
    factors get distinct subtree codes and nothing can rotate.
    """
    b = _Builder()
    root = b.vertex(BOUNDARY, Fraction(0), 0)
    b.grow(normalize(expr), root, Fraction(0), Fraction(1))
    graph = ReebGraph(b.vertices, b.edges)
    return EnhancedReebGraph(graph, DISK, root, b.atoms)


class _Builder:
    def __init__(self):
        self.vertices: list[ReebVertex] = []
        self.edges: list[tuple[str, str, str]] = []
        self.atoms: dict[str, Atom] = {}

    def vertex(self, kind: str, level: Fraction, crit: int) -> str:
        vid = f"v{len(self.vertices)}"
        self.vertices.append(ReebVertex(vid, kind, level, crit))
        return vid

    def edge(self, a: str, b: str) -> str:
        eid = f"e{len(self.edges)}"
        self.edges.append((eid, a, b))
        return eid

    def grow(self, expr: GroupExpr, parent: str, lo: Fraction,
             hi: Fraction) -> str:
        """Build the subtree for a normalized expression in the level band
        (lo, hi], hanging below ``parent``; returns the attaching edge."""
        span = hi - lo
        if isinstance(expr, Unit):
            leaf = self.vertex(MAX, hi, 1)
            return self.edge(parent, leaf)
        mid = lo + span / 2
        if isinstance(expr, Wr):
            saddle = self.vertex(SADDLE, mid, expr.n)
            pe = self.edge(parent, saddle)
            inner = self.vertex(MIN, lo + span / 4, 1)
            ie = self.edge(saddle, inner)
            petals = tuple(self.grow(expr.base, saddle, mid, hi)
                           for _ in range(expr.n))
            self.atoms[saddle] = Atom((pe, ie), petals)
            return pe
        if isinstance(expr, Prod):
            k = len(expr.factors)
            saddle = self.vertex(SADDLE, mid, k - 1)
            pe = self.edge(parent, saddle)
            slots = []
            for i, f in enumerate(expr.factors):
                offset = Fraction(i, k + 1) * span / 4
                f_lo = mid + offset
                slots.append(self.grow(f, saddle, f_lo, f_lo + span / 4))
            self.atoms[saddle] = Atom((pe,), tuple(slots))
            return pe
        raise TypeError(f"not an admissible expression: {expr!r}")


def round_trip_check(expr: GroupExpr) -> bool:
    """Realize the word as a graph, recompute the group, compare."""
    want = normalize(expr)
    got = compute_group(realize_reeb(expr))
    if got != want:
        from .words import print_word
        log.warning("round trip mismatch: expected %s, computed %s",
                    print_word(want), print_word(got))
        return False
    return True
