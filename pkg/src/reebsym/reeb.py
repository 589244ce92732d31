"""Level-set graph (Kronrod-Reeb graph) data model.

Vertices are critical components or boundary circles of a scalar field on a
surface; edges are families of regular level circles.  Levels are exact
rationals compared for equality: a symmetry must preserve the field value,
so two subtrees are interchangeable only if corresponding levels are EQUAL,
never merely close.

The enhanced form adds the data a graph alone cannot carry: which surface
piece it came from (disk or cylinder), a root boundary vertex, and for each
saddle the arrangement of incident edges into rotation-invariant (axial)
slots and a cyclically ordered slot list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MIN = "min"
MAX = "max"
SADDLE = "saddle"
BOUNDARY = "boundary"
KINDS = (MIN, MAX, SADDLE, BOUNDARY)

DISK = "disk"
CYLINDER = "cylinder"


class ReebError(ValueError):
    """Base for structural errors raised by graph operations."""


class CycleBelow(ReebError):
    """A subtree code was requested below an edge that leads into a cycle."""


class ReebFormatError(ReebError):
    """Malformed graph text."""


@dataclass(frozen=True)
class ReebVertex:
    id: str
    kind: str
    level: Fraction
    crit_points: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ReebError(f"unknown vertex kind {self.kind!r}")


@dataclass(frozen=True)
class Atom:
    """Slot arrangement of the edges incident to one saddle."""

    axial: tuple[str, ...]
    cyclic: tuple[str, ...]


class ReebGraph:
    """Undirected multigraph with identified edges (parallel edges allowed)."""

    def __init__(self, vertices, edges):
        self.vertices: dict[str, ReebVertex] = {}
        for v in vertices:
            if v.id in self.vertices:
                raise ReebError(f"duplicate vertex id {v.id!r}")
            self.vertices[v.id] = v
        self.edges: dict[str, tuple[str, str]] = {}
        self._incident: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid, a, b in edges:
            if eid in self.edges:
                raise ReebError(f"duplicate edge id {eid!r}")
            if a not in self.vertices or b not in self.vertices:
                raise ReebError(f"edge {eid!r} references unknown vertex")
            self.edges[eid] = (a, b)
            self._incident[a].append(eid)
            if b != a:
                self._incident[b].append(eid)

    def incident(self, vid: str) -> tuple[str, ...]:
        return tuple(self._incident[vid])

    def degree(self, vid: str) -> int:
        return len(self._incident[vid])

    def other_end(self, eid: str, vid: str) -> str:
        a, b = self.edges[eid]
        return b if vid == a else a

    def level(self, vid: str) -> Fraction:
        return self.vertices[vid].level

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = next(iter(self.vertices))
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for eid in self._incident[v]:
                w = self.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def cycle(self) -> tuple[set[str], set[str]]:
        """Vertices and edges of the unique cycle (empty sets for a tree).

        Found by stripping degree-one vertices until nothing changes; valid
        graphs here have first Betti number at most 1, so what remains is
        the cycle itself.
        """
        deg = {v: self.degree(v) for v in self.vertices}
        alive_v = set(self.vertices)
        alive_e = set(self.edges)
        changed = True
        while changed:
            changed = False
            for v in sorted(alive_v):
                if deg[v] <= 1:
                    alive_v.discard(v)
                    for eid in self._incident[v]:
                        if eid in alive_e:
                            alive_e.discard(eid)
                            w = self.other_end(eid, v)
                            if w in alive_v:
                                deg[w] -= 1
                    changed = True
        return alive_v, alive_e


class EnhancedReebGraph:
    def __init__(self, graph: ReebGraph, surface: str, root: str,
                 atoms: dict[str, Atom]):
        if surface not in (DISK, CYLINDER):
            raise ReebError(f"unknown surface kind {surface!r}")
        self.graph = graph
        self.surface = surface
        self.root = root
        self.atoms = dict(atoms)


# === Validation ===

def validate_reeb(g: EnhancedReebGraph) -> list[str]:
    """Return one message per violated structural constraint; empty = valid.

    Violations are data, not exceptions, so broken inputs can be reported in
    full rather than dying at the first problem.
    """
    out: list[str] = []
    gr = g.graph
    if not gr.vertices:
        return ["empty graph"]
    if g.root not in gr.vertices:
        out.append(f"root {g.root!r} is not a vertex")
    elif gr.vertices[g.root].kind != BOUNDARY:
        out.append(f"root {g.root!r} is not a boundary vertex")
    elif gr.degree(g.root) != 1:
        out.append(f"root {g.root!r} must have degree 1")

    n_boundary = sum(1 for v in gr.vertices.values() if v.kind == BOUNDARY)
    want = 1 if g.surface == DISK else 2
    if n_boundary != want:
        out.append(f"{g.surface} needs {want} boundary vertices, "
                   f"found {n_boundary}")

    if not gr.is_connected():
        out.append("graph is not connected")
        return out  # traversal-based checks below assume connectivity

    for eid, (a, b) in sorted(gr.edges.items()):
        if gr.level(a) == gr.level(b):
            out.append(f"non-monotone edge {eid!r}: equal endpoint levels")

    for vid in sorted(gr.vertices):
        v = gr.vertices[vid]
        d = gr.degree(vid)
        if v.kind in (MIN, MAX, BOUNDARY) and d != 1:
            out.append(f"{v.kind} vertex {vid!r} has degree {d}, expected 1")
        if v.kind == SADDLE and d < 3:
            out.append(f"saddle {vid!r} has degree {d}, expected >= 3")
        if v.kind in (MIN, MAX) and v.crit_points != 1:
            out.append(f"{v.kind} vertex {vid!r} must carry 1 critical point")
        if v.kind == SADDLE and v.crit_points < 1:
            out.append(f"saddle {vid!r} must carry >= 1 critical points")
        if v.kind == BOUNDARY and v.crit_points != 0:
            out.append(f"boundary vertex {vid!r} must carry 0 critical points")
        if v.kind == SADDLE and d != v.crit_points + 2:
            out.append(f"saddle {vid!r}: degree {d} != crit_points "
                       f"{v.crit_points} + 2")

    b1 = gr.betti()
    allowed = 0 if g.surface == DISK else 1
    if b1 > allowed:
        out.append(f"Betti bound violated: beta1 = {b1} > {allowed} "
                   f"for {g.surface}")
        return out  # cycle-aware checks below assume the bound

    cyc_vertices, cyc_edges = gr.cycle()
    parent_edge = _parent_edges(gr, g.root) if g.root in gr.vertices else {}
    for vid in sorted(gr.vertices):
        if gr.vertices[vid].kind != SADDLE:
            continue
        atom = g.atoms.get(vid)
        if atom is None:
            out.append(f"saddle {vid!r} has no atom slot arrangement")
            continue
        inc = set(gr.incident(vid))
        listed = list(atom.axial) + list(atom.cyclic)
        if len(set(listed)) != len(listed):
            out.append(f"atom of {vid!r} lists an edge twice")
        if set(listed) != inc:
            out.append(f"atom of {vid!r} does not partition incident edges")
        if len(atom.axial) > 2:
            out.append(f"atom of {vid!r} has {len(atom.axial)} axial slots, "
                       f"at most 2 allowed")
        pe = parent_edge.get(vid)
        if pe is not None and pe not in atom.axial and pe not in cyc_edges:
            out.append(f"atom of {vid!r}: edge toward root {pe!r} is not axial")
    return out


def _parent_edges(gr: ReebGraph, root: str) -> dict[str, str]:
    """First edge on each vertex's path back to the root (BFS tree)."""
    parent: dict[str, str] = {}
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for eid in gr.incident(v):
                w = gr.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    parent[w] = eid
                    nxt.append(w)
        frontier = nxt
    return parent


# === Classification ===

@dataclass(frozen=True)
class FunctionClass:
    c0: int
    c1: int
    c2: int
    is_generic: bool
    is_simple: bool


def classify_function(g: EnhancedReebGraph) -> FunctionClass:
    """Critical-point counts and the simple/generic flags of the field the
    graph came from.

    Simple: every saddle component carries a single critical point.
    Generic: simple, and no two critical components share a level.
    """
    c0 = c1 = c2 = 0
    simple = True
    levels = []
    for v in g.graph.vertices.values():
        if v.kind == MIN:
            c0 += 1
        elif v.kind == MAX:
            c2 += 1
        elif v.kind == SADDLE:
            c1 += v.crit_points
            if v.crit_points != 1:
                simple = False
        if v.kind != BOUNDARY:
            levels.append(v.level)
    generic = simple and len(levels) == len(set(levels))
    return FunctionClass(c0, c1, c2, generic, simple)


def morse_equality_check(c0: int, c1: int, c2: int, surface) -> bool:
    """Alternating critical-point sum against the Euler characteristic."""
    if surface == DISK:
        chi = 1
    elif surface == CYLINDER:
        chi = 0
    else:
        chi = int(surface)
    return c0 - c1 + c2 == chi


# === Canonical subtree codes ===

def canonical_code(g: EnhancedReebGraph, eid: str, child: str) -> bytes:
    """Code of the subtree hanging below the directed edge (parent -> child).

    Equal codes mean the rooted, level-labeled subtrees are related by an
    isomorphism that preserves levels exactly, maps axial slots to axial
    slots, and preserves the cyclic slot order up to rotation.
    """
    return _code(g, eid, child, set())


def _code(g: EnhancedReebGraph, eid: str, v: str, on_path: set[str]) -> bytes:
    if v in on_path:
        raise CycleBelow(f"cycle through vertex {v!r}")
    vert = g.graph.vertices[v]
    if vert.kind != SADDLE:
        tag = {MIN: b"m", MAX: b"M", BOUNDARY: b"b"}[vert.kind]
        return tag + b"@" + str(vert.level).encode()
    atom = g.atoms[v]
    on_path = on_path | {v}
    axial = sorted(
        _code(g, e, g.graph.other_end(e, v), on_path)
        for e in atom.axial if e != eid
    )
    cyc = [
        _code(g, e, g.graph.other_end(e, v), on_path)
        for e in atom.cyclic if e != eid
    ]
    head = b"s@%s#%d" % (str(vert.level).encode(), vert.crit_points)
    return head + b"[" + b",".join(axial) + b"|" + b",".join(_min_rotation(cyc)) + b"]"


def _min_rotation(word: list[bytes]) -> list[bytes]:
    if len(word) <= 1:
        return word
    return min((word[i:] + word[:i] for i in range(len(word))), key=tuple)


@dataclass(frozen=True)
class CyclicSymmetry:
    m: int
    orbits: tuple[tuple[int, ...], ...]


def cyclic_symmetry(word: list[bytes]) -> CyclicSymmetry:
    """Rotation symmetry of a cyclic word.

    m is the largest order of a rotation fixing the word; the orbits list
    the index classes such a maximal rotation permutes together.  The
    smallest period always divides the length, so only divisors are tried.
    """
    d = len(word)
    if d < 1:
        raise ValueError("cyclic word must be nonempty")
    for p in range(1, d + 1):
        if d % p:
            continue
        if all(word[i] == word[(i + p) % d] for i in range(d)):
            m = d // p
            orbits = tuple(tuple(range(i, d, p)) for i in range(p))
            return CyclicSymmetry(m, orbits)
    raise AssertionError("period 1 rotation always matches")  # unreachable


# === DOT export ===

def to_dot(g: ReebGraph) -> str:
    """DOT digraph, edges directed upward in level, byte-deterministic."""
    lines = ["digraph reeb {"]
    for vid in sorted(g.vertices):
        v = g.vertices[vid]
        lines.append(f'  "{vid}" [label="{v.kind}@{v.level}({v.crit_points})"];')
    for eid in sorted(g.edges):
        a, b = g.edges[eid]
        if (g.level(a), a) > (g.level(b), b):
            a, b = b, a
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# === Text format ===

def parse_reeb(text: str) -> EnhancedReebGraph:
    """Read the line-oriented graph format.

    SURFACE disk|cylinder
    VERTEX <id> min|max|saddle|boundary <level> <crit_points>
    EDGE <eid> <vid> <vid>
    ATOM <vid> AXIAL <eid>... CYCLIC <eid>...
    ROOT <vid>

    Levels are exact rationals ("7/2", "3", "3.5"); '#' starts a comment.
    """
    surface = None
    root = None
    vertices: list[ReebVertex] = []
    edges: list[tuple[str, str, str]] = []
    atoms: dict[str, Atom] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].upper()
        try:
            if key == "SURFACE":
                (surface,) = parts[1:]
                surface = surface.lower()
            elif key == "VERTEX":
                vid, kind, level, crit = parts[1:]
                vertices.append(ReebVertex(vid, kind.lower(),
                                           Fraction(level), int(crit)))
            elif key == "EDGE":
                eid, a, b = parts[1:]
                edges.append((eid, a, b))
            elif key == "ATOM":
                vid = parts[1]
                if parts[2].upper() != "AXIAL":
                    raise ValueError("expected AXIAL")
                split = [i for i, p in enumerate(parts)
                         if p.upper() == "CYCLIC"]
                if len(split) != 1:
                    raise ValueError("expected exactly one CYCLIC section")
                atoms[vid] = Atom(tuple(parts[3:split[0]]),
                                  tuple(parts[split[0] + 1:]))
            elif key == "ROOT":
                (root,) = parts[1:]
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except (ValueError, ReebError) as exc:
            raise ReebFormatError(f"line {lineno}: {exc}") from exc
    if surface is None:
        raise ReebFormatError("missing SURFACE line")
    if root is None:
        raise ReebFormatError("missing ROOT line")
    try:
        return EnhancedReebGraph(ReebGraph(vertices, edges), surface, root, atoms)
    except ReebError as exc:
        raise ReebFormatError(str(exc)) from exc


def format_reeb(g: EnhancedReebGraph) -> str:
    lines = [f"SURFACE {g.surface}"]
    for v in g.graph.vertices.values():
        lines.append(f"VERTEX {v.id} {v.kind} {v.level} {v.crit_points}")
    for eid, (a, b) in g.graph.edges.items():
        lines.append(f"EDGE {eid} {a} {b}")
    for vid, atom in g.atoms.items():
        lines.append("ATOM %s AXIAL %s CYCLIC %s" % (
            vid, " ".join(atom.axial), " ".join(atom.cyclic)))
    lines.append(f"ROOT {g.root}")
    return "\n".join(lines) + "\n"
