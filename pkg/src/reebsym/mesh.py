"""Level-set graph extraction from triangulated surfaces.

A mesh carries one exact rational value per vertex.  Interior vertices are
classified by counting lower-link components (ties broken by vertex index,
so every comparison is strict); the level-set graph is then built by a
sweep: thin bands around each critical value are connected up with a
union-find, and the regular regions in between act as wires joining the
level circles they carry.  Bands use true values, not tie-broken ones, so
critical vertices sharing a value and a level component merge into a single
graph vertex carrying all their multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .reeb import (
    BOUNDARY,
    CYLINDER,
    DISK,
    MAX,
    MIN,
    SADDLE,
    Atom,
    EnhancedReebGraph,
    ReebGraph,
    ReebVertex,
)
from .symmetry import compute_group
from .words import GroupExpr


class MeshError(ValueError):
    """Base class for mesh ingestion and extraction failures."""


class ParseError(MeshError):
    pass


class NonOrientable(MeshError):
    pass


class NonManifoldEdge(MeshError):
    pass


class CountMismatch(MeshError):
    pass


class ExtractionError(MeshError):
    """The field is too degenerate for the sweep to produce a graph."""


# === Mesh ===

class Mesh:
    def __init__(self, positions, triangles):
        self.positions = positions
        self.triangles = [tuple(t) for t in triangles]
        self.n_vertices = len(positions)
        self._validate()

    def _validate(self) -> None:
        self.edge_triangles: dict[tuple[int, int], list[int]] = {}
        for ti, tri in enumerate(self.triangles):
            if len(set(tri)) != 3:
                raise ParseError(f"triangle {ti} repeats a vertex")
            for v in tri:
                if not (0 <= v < self.n_vertices):
                    raise ParseError(f"triangle {ti} references vertex {v}")
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (a, b) if a < b else (b, a)
                self.edge_triangles.setdefault(key, []).append(ti)
        for key, tris in self.edge_triangles.items():
            if len(tris) > 2:
                raise NonManifoldEdge(
                    f"edge {key} lies in {len(tris)} triangles")
        used = {v for tri in self.triangles for v in tri}
        if used != set(range(self.n_vertices)):
            raise ParseError("every vertex must belong to a triangle")
        self._check_connected()
        self._check_orientable()
        self.boundary_edges = sorted(
            k for k, tris in self.edge_triangles.items() if len(tris) == 1)
        self.boundary_vertices = sorted({v for e in self.boundary_edges for v in e})
        self.boundary_cycles = self._boundary_cycles()

    def _check_connected(self) -> None:
        if not self.triangles:
            raise ParseError("mesh has no triangles")
        seen = {0}
        frontier = [0]
        while frontier:
            ti = frontier.pop()
            tri = self.triangles[ti]
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (a, b) if a < b else (b, a)
                for tj in self.edge_triangles[key]:
                    if tj not in seen:
                        seen.add(tj)
                        frontier.append(tj)
        if len(seen) != len(self.triangles):
            raise ParseError("surface is not connected")

    def _check_orientable(self) -> None:
        # two triangles induce opposite directions on a shared edge exactly
        # when their given winding orders are compatible
        flip = {0: False}
        frontier = [0]
        directed = []
        for tri in self.triangles:
            directed.append({(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])})
        while frontier:
            ti = frontier.pop()
            tri = self.triangles[ti]
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (a, b) if a < b else (b, a)
                for tj in self.edge_triangles[key]:
                    if tj == ti:
                        continue
                    same_dir = ((a, b) in directed[tj]) == ((a, b) in directed[ti])
                    want = flip[ti] if not same_dir else not flip[ti]
                    if tj in flip:
                        if flip[tj] != want:
                            raise NonOrientable(
                                "no consistent orientation exists")
                    else:
                        flip[tj] = want
                        frontier.append(tj)

    def _boundary_cycles(self) -> list[list[int]]:
        nbrs: dict[int, list[int]] = {}
        for a, b in self.boundary_edges:
            nbrs.setdefault(a, []).append(b)
            nbrs.setdefault(b, []).append(a)
        for v, ws in nbrs.items():
            if len(ws) != 2:
                raise ParseError(
                    f"boundary vertex {v} lies on {len(ws)} boundary edges")
        cycles = []
        unvisited = set(nbrs)
        while unvisited:
            start = min(unvisited)
            cyc = [start]
            unvisited.discard(start)
            prev, cur = None, start
            while True:
                nxt = [w for w in nbrs[cur] if w != prev]
                step = nxt[0] if nxt else prev
                if step == start:
                    break
                cyc.append(step)
                unvisited.discard(step)
                prev, cur = cur, step
            cycles.append(cyc)
        return cycles

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edge_triangles) + len(self.triangles)

    def vertex_link(self, v: int) -> list[int]:
        """Neighbors of an interior vertex in cyclic order around it."""
        opposite = []
        for ti in range(len(self.triangles)):
            tri = self.triangles[ti]
            if v in tri:
                rest = [u for u in tri if u != v]
                opposite.append((rest[0], rest[1]))
        nbrs: dict[int, list[int]] = {}
        for a, b in opposite:
            nbrs.setdefault(a, []).append(b)
            nbrs.setdefault(b, []).append(a)
        start = min(nbrs)
        cycle = [start]
        prev, cur = None, start
        while True:
            step = [w for w in nbrs[cur] if w != prev]
            if not step:
                raise ParseError(f"vertex {v} has a broken link")
            if step[0] == start:
                break
            cycle.append(step[0])
            prev, cur = cur, step[0]
        if len(cycle) != len(nbrs):
            raise ParseError(f"vertex {v} has a disconnected link")
        return cycle


def load_mesh(off_text: str) -> Mesh:
    """Parse ASCII OFF (triangles only)."""
    tokens = []
    for raw in off_text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens or tokens[0] != "OFF":
        raise ParseError("missing OFF header")
    it = iter(tokens[1:])

    def take(what: str) -> str:
        try:
            return next(it)
        except StopIteration:
            raise ParseError(f"unexpected end of file, wanted {what}") from None

    try:
        nv = int(take("vertex count"))
        nf = int(take("face count"))
        int(take("edge count"))
    except ValueError as exc:
        raise ParseError(f"bad counts line: {exc}") from exc
    positions = []
    for i in range(nv):
        try:
            positions.append(tuple(Fraction(take("coordinate"))
                                   for _ in range(3)))
        except ValueError as exc:
            raise ParseError(f"bad coordinate for vertex {i}: {exc}") from exc
    triangles = []
    for i in range(nf):
        try:
            k = int(take("face size"))
        except ValueError as exc:
            raise ParseError(f"bad face size for face {i}: {exc}") from exc
        if k != 3:
            raise ParseError(f"face {i} has {k} sides; only triangles allowed")
        try:
            triangles.append(tuple(int(take("face index")) for _ in range(3)))
        except ValueError as exc:
            raise ParseError(f"bad index in face {i}: {exc}") from exc
    return Mesh(positions, triangles)


# === Scalar field ===

class ScalarField:
    """One exact rational per mesh vertex; comparisons tie-break by index."""

    def __init__(self, values, mesh: Mesh):
        if len(values) != mesh.n_vertices:
            raise CountMismatch(
                f"{len(values)} values for {mesh.n_vertices} vertices")
        self.values = tuple(Fraction(v) for v in values)
        for cyc in mesh.boundary_cycles:
            vals = {self.values[v] for v in cyc}
            if len(vals) != 1:
                raise MeshError(
                    "field is not constant on a boundary component")

    def key(self, v: int) -> tuple[Fraction, int]:
        return (self.values[v], v)


def load_values(vals_text: str, mesh: Mesh) -> ScalarField:
    values = []
    for lineno, raw in enumerate(vals_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(Fraction(line))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad rational {line!r}") from exc
    return ScalarField(values, mesh)


# === PL critical points ===

@dataclass(frozen=True)
class CriticalReport:
    """Per-vertex classification plus index-wise totals.

    ``per_vertex`` maps index -> (kind, weight) where weight is the vertex's
    contribution to its total: 1 for extrema, the multiplicity for saddles
    (one less than the lower-link component count), 0 otherwise.
    """

    per_vertex: dict[int, tuple[str, int]]
    c0: int
    c1: int
    c2: int


def classify_vertices(mesh: Mesh, field: ScalarField) -> CriticalReport:
    per: dict[int, tuple[str, int]] = {}
    boundary = set(mesh.boundary_vertices)
    c0 = c1 = c2 = 0
    for v in range(mesh.n_vertices):
        if v in boundary:
            per[v] = ("boundary", 0)
            continue
        link = mesh.vertex_link(v)
        lower = [field.key(u) < field.key(v) for u in link]
        if not any(lower):
            per[v] = ("min", 1)
            c0 += 1
        elif all(lower):
            per[v] = ("max", 1)
            c2 += 1
        else:
            k = _circular_runs(lower)
            if k == 1:
                per[v] = ("regular", 0)
            else:
                per[v] = ("saddle", k - 1)
                c1 += k - 1
    return CriticalReport(per, c0, c1, c2)


def _circular_runs(flags: list[bool]) -> int:
    """Number of maximal runs of True around a cycle."""
    runs = sum(1 for i, f in enumerate(flags)
               if f and not flags[i - 1])
    return runs


# === Sweep extraction ===

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        self.add(x)
        self.add(y)
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def groups(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {min(members): sorted(members) for members in out.values()}


def extract_reeb(mesh: Mesh, field: ScalarField,
                 report: CriticalReport | None = None) -> ReebGraph:
    """Sweep the field in increasing value and assemble the level-set graph."""
    if report is None:
        report = classify_vertices(mesh, field)
    builder = _Sweep(mesh, field, report)
    return builder.run()


class _Sweep:
    def __init__(self, mesh: Mesh, field: ScalarField, report: CriticalReport):
        self.mesh = mesh
        self.field = field
        self.report = report
        self.cycle_of = {}
        for ci, cyc in enumerate(mesh.boundary_cycles):
            for v in cyc:
                self.cycle_of[v] = ci

    def run(self) -> ReebGraph:
        mesh, field = self.mesh, self.field
        event_values = sorted(
            {field.values[v] for v, (kind, _) in self.report.per_vertex.items()
             if kind in ("min", "max", "saddle")}
            | {field.values[cyc[0]] for cyc in mesh.boundary_cycles})
        if not event_values:
            raise ExtractionError("field has no critical points or boundary")
        slices = self._slices(event_values)
        value_of = field.values

        # per-slice connected components of the crossing level circles
        slice_uf = [_UnionFind() for _ in slices]
        for si, s in enumerate(slices):
            for tri in mesh.triangles:
                crossing = [e for e in _tri_edges(tri)
                            if self._crosses(e, s)]
                for e in crossing:
                    slice_uf[si].add(e)
                for a, b in zip(crossing, crossing[1:]):
                    slice_uf[si].union(a, b)

        # per-region components over in-band vertices and crossing edges
        wires = _UnionFind()  # slice comp keys joined through regular regions
        events: list[dict] = []
        for ri in range(len(slices) - 1):
            lo_s, hi_s = slices[ri], slices[ri + 1]
            uf = _UnionFind()
            for tri in mesh.triangles:
                els = []
                for v in tri:
                    if lo_s < value_of[v] < hi_s:
                        els.append(("v", v))
                for e in _tri_edges(tri):
                    if self._crosses(e, lo_s):
                        els.append(("lo", e))
                    if self._crosses(e, hi_s):
                        els.append(("hi", e))
                for x in els:
                    uf.add(x)
                for x, y in zip(els, els[1:]):
                    uf.union(x, y)
            for members in uf.groups().values():
                self._assemble(ri, members, slice_uf, wires, events)

        return self._emit(events, wires)

    def _slices(self, event_values: list[Fraction]) -> list[Fraction]:
        all_values = sorted({v for v in self.field.values})
        pos = {v: i for i, v in enumerate(all_values)}
        cuts = set()
        for c in event_values:
            j = pos[c]
            cuts.add(all_values[j - 1] / 2 + c / 2 if j > 0 else c - 1)
            cuts.add(c / 2 + all_values[j + 1] / 2
                     if j + 1 < len(all_values) else c + 1)
        return sorted(cuts)

    def _crosses(self, e: tuple[int, int], s: Fraction) -> bool:
        a, b = self.field.values[e[0]], self.field.values[e[1]]
        return min(a, b) < s < max(a, b)

    def _assemble(self, ri, members, slice_uf, wires, events) -> None:
        crit = []
        cycles = set()
        for tag, x in members:
            if tag != "v":
                continue
            kind, weight = self.report.per_vertex[x]
            if kind in ("min", "max", "saddle"):
                crit.append((x, kind, weight))
            elif kind == "boundary":
                cycles.add(self.cycle_of[x])
        lo_comps = sorted({(ri, slice_uf[ri].find(x))
                           for tag, x in members if tag == "lo"})
        hi_comps = sorted({(ri + 1, slice_uf[ri + 1].find(x))
                           for tag, x in members if tag == "hi"})
        if not crit and not cycles:
            if len(lo_comps) != 1 or len(hi_comps) != 1:
                raise ExtractionError(
                    "regular sheet with unexpected attachments; "
                    "the field is degenerate")
            wires.union(lo_comps[0], hi_comps[0])
            return
        if cycles and crit:
            raise ExtractionError(
                "critical component touches the boundary")
        if len(cycles) > 1:
            raise ExtractionError(
                "two boundary components share a level component")
        level = (self.field.values[crit[0][0]] if crit
                 else self.field.values[self.mesh.boundary_cycles[min(cycles)][0]])
        events.append({
            "level": level,
            "crit": sorted(crit),
            "cycle": min(cycles) if cycles else None,
            "lo": lo_comps,
            "hi": hi_comps,
        })

    def _emit(self, events, wires) -> ReebGraph:
        def event_key(ev):
            anchor = (ev["crit"][0][0] if ev["crit"]
                      else -1 - ev["cycle"])
            return (ev["level"], anchor)

        events.sort(key=event_key)
        vertices = []
        for i, ev in enumerate(events):
            vid = f"n{i}"
            ev["vid"] = vid
            if ev["cycle"] is not None:
                kind, crit = BOUNDARY, 0
            else:
                kinds = {k for _, k, _ in ev["crit"]}
                total = sum(w for _, _, w in ev["crit"])
                if kinds == {"min"} and len(ev["crit"]) == 1:
                    kind, crit = MIN, 1
                elif kinds == {"max"} and len(ev["crit"]) == 1:
                    kind, crit = MAX, 1
                else:
                    kind, crit = SADDLE, total
            vertices.append(ReebVertex(vid, kind, ev["level"], crit))

        # group slice comps into wire classes and read off their endpoints
        for ev in events:
            for sck in ev["lo"]:
                wires.add(sck)
            for sck in ev["hi"]:
                wires.add(sck)
        top_at: dict = {}
        bottom_at: dict = {}
        for ev in events:
            for sck in ev["lo"]:
                root = wires.find(sck)
                if root in top_at:
                    raise ExtractionError("level circle with two upper ends")
                top_at[root] = ev["vid"]
            for sck in ev["hi"]:
                root = wires.find(sck)
                if root in bottom_at:
                    raise ExtractionError("level circle with two lower ends")
                bottom_at[root] = ev["vid"]
        classes = wires.groups()
        edge_specs = []
        for root, members in classes.items():
            r = wires.find(root)
            lo_v = bottom_at.get(r)
            hi_v = top_at.get(r)
            if lo_v is None or hi_v is None:
                raise ExtractionError("level circle runs off the surface")
            edge_specs.append((lo_v, hi_v, members[0]))
        edge_specs.sort()
        edges = [(f"e{i}", lo, hi) for i, (lo, hi, _) in enumerate(edge_specs)]
        return ReebGraph(vertices, edges)


def _tri_edges(tri):
    return ((tri[0], tri[1]) if tri[0] < tri[1] else (tri[1], tri[0]),
            (tri[1], tri[2]) if tri[1] < tri[2] else (tri[2], tri[1]),
            (tri[0], tri[2]) if tri[0] < tri[2] else (tri[2], tri[0]))


# === End-to-end pipeline ===

@dataclass(frozen=True)
class PipelineResult:
    reeb: ReebGraph
    classification: CriticalReport
    chi: int
    morse_ok: bool
    betti_reeb: int
    betti_bound: int
    betti_ok: bool
    generic: bool
    simple: bool
    group: GroupExpr | None
    skipped: str | None


def mesh_pipeline(mesh: Mesh, field: ScalarField) -> PipelineResult:
    """Classification, extraction, structural checks, and (for simple fields
    on disk or cylinder pieces) the symmetry group."""
    report = classify_vertices(mesh, field)
    reeb = extract_reeb(mesh, field, report)
    chi = mesh.euler_characteristic
    b = len(mesh.boundary_cycles)
    morse_ok = report.c0 - report.c1 + report.c2 == chi
    betti_reeb = reeb.betti()
    genus2 = 2 - b - chi  # = 2g for an orientable surface
    betti_bound = max(genus2, 0) + max(0, b - 1)
    betti_ok = betti_reeb <= betti_bound

    crit_levels = [v.level for v in reeb.vertices.values()
                   if v.kind != BOUNDARY]
    simple = all(v.crit_points == 1 for v in reeb.vertices.values()
                 if v.kind == SADDLE)
    generic = simple and len(crit_levels) == len(set(crit_levels))

    group = None
    skipped = None
    if (chi, b) == (1, 1):
        surface = DISK
    elif (chi, b) == (0, 2):
        surface = CYLINDER
    else:
        surface = None
        skipped = "unsupported surface"
    if surface is not None and not simple:
        skipped = "non-simple function: supply .reeb with atom data"
    if surface is not None and skipped is None:
        enhanced = _enhance(reeb, surface)
        group = compute_group(enhanced)
    return PipelineResult(reeb, report, chi, morse_ok, betti_reeb,
                          betti_bound, betti_ok, generic, simple,
                          group, skipped)


def _enhance(reeb: ReebGraph, surface: str) -> EnhancedReebGraph:
    """Root at the lowest boundary vertex and derive slot arrangements:
    the edge toward the root is axial, everything else cyclic (simple
    saddles have exactly two non-parent edges, so the order is immaterial)."""
    boundary = sorted((v.level, v.id) for v in reeb.vertices.values()
                      if v.kind == BOUNDARY)
    root = boundary[0][1]
    parent: dict[str, str] = {}
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for eid in sorted(reeb.incident(v)):
                w = reeb.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    parent[w] = eid
                    nxt.append(w)
        frontier = nxt
    atoms = {}
    for vid, v in reeb.vertices.items():
        if v.kind != SADDLE:
            continue
        pe = parent.get(vid)
        others = tuple(e for e in sorted(reeb.incident(vid)) if e != pe)
        atoms[vid] = Atom((pe,) if pe else (), others)
    return EnhancedReebGraph(reeb, surface, root, atoms)
