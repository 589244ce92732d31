"""Automorphism groups of finite trees.

``aut_tree`` returns the full automorphism group as a word over direct
products and symmetric-top wreaths: rooting the tree at its center, the
children of a vertex split into classes of pairwise-isomorphic subtrees,
and a class of n copies with per-copy group A contributes A wr_{X_n} S_n.
A brute-force bijection counter serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import UNIT, SymExpr, WrSym, normalize, prod_of

BRUTE_FORCE_LIMIT = 10


class SizeCap(ValueError):
    """Tree too large for the exhaustive oracle."""


@dataclass(frozen=True)
class Tree:
    """Finite unrooted tree: connected, acyclic."""

    vertices: tuple
    edges: tuple

    def __post_init__(self) -> None:
        verts = set(self.vertices)
        if not verts:
            raise ValueError("tree must be nonempty")
        if len(verts) != len(self.vertices):
            raise ValueError("duplicate vertices")
        if len(self.edges) != len(verts) - 1:
            raise ValueError(
                f"a tree on {len(verts)} vertices has {len(verts) - 1} edges, "
                f"got {len(self.edges)}")
        adj = self.adjacency()
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) != len(verts):
            raise ValueError("tree must be connected")

    def adjacency(self) -> dict:
        adj: dict = {v: [] for v in self.vertices}
        for a, b in self.edges:
            if a not in adj or b not in adj or a == b:
                raise ValueError(f"bad edge ({a!r}, {b!r})")
            adj[a].append(b)
            adj[b].append(a)
        return adj


def parse_edge_list(text: str) -> Tree:
    """Tree from ``EDGE a b`` lines ('#' comments allowed)."""
    edges = []
    verts: list = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0].upper() != "EDGE" or len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'EDGE a b'")
        _, a, b = parts
        edges.append((a, b))
        for v in (a, b):
            if v not in seen:
                seen.add(v)
                verts.append(v)
    return Tree(tuple(verts), tuple(edges))


def tree_center(t: Tree) -> list:
    """The 1 or 2 middle vertices, by iterated leaf stripping."""
    adj = t.adjacency()
    alive = set(t.vertices)
    deg = {v: len(adj[v]) for v in alive}
    while len(alive) > 2:
        leaves = [v for v in alive if deg[v] <= 1]
        for v in leaves:
            alive.discard(v)
            for w in adj[v]:
                if w in alive:
                    deg[w] -= 1
    return sorted(alive, key=str)


# === Automorphism group as a word ===

def aut_tree(t: Tree) -> SymExpr:
    """Automorphism group of the tree as a normalized symmetric-top word."""
    adj = t.adjacency()
    centers = tree_center(t)
    if len(centers) == 1:
        root = centers[0]
    else:
        # subdividing the central edge with a virtual midpoint preserves the
        # automorphism group and turns the edge-flip case into the ordinary
        # rooted case
        a, b = centers
        root = ("__mid__",)
        adj[root] = [a, b]
        adj[a] = [root if w == b else w for w in adj[a]]
        adj[b] = [root if w == a else w for w in adj[b]]
    return _aut_rooted(adj, root, None)


def _aut_rooted(adj: dict, v, parent) -> SymExpr:
    children = [w for w in adj[v] if w != parent]
    if not children:
        return UNIT
    classes: dict[str, list] = {}
    for c in children:
        classes.setdefault(_shape(adj, c, v), []).append(c)
    factors = []
    for code in sorted(classes):
        members = classes[code]
        inner = _aut_rooted(adj, members[0], v)
        factors.append(WrSym(inner, len(members)))
    return normalize(prod_of(factors))


def _shape(adj: dict, v, parent) -> str:
    """Canonical form of the rooted subtree (sorted child forms)."""
    child_codes = sorted(_shape(adj, w, v) for w in adj[v] if w != parent)
    return "(" + "".join(child_codes) + ")"


# === Brute-force oracle ===

def brute_force_automorphisms(t: Tree) -> list[dict]:
    """All adjacency-preserving vertex bijections, by backtracking with
    degree pruning."""
    if len(t.vertices) > BRUTE_FORCE_LIMIT:
        raise SizeCap(
            f"{len(t.vertices)} vertices exceeds the oracle limit "
            f"{BRUTE_FORCE_LIMIT}")
    adj = {v: set(ws) for v, ws in t.adjacency().items()}
    order = _bfs_order(adj, t.vertices[0])
    by_degree: dict[int, list] = {}
    for v in t.vertices:
        by_degree.setdefault(len(adj[v]), []).append(v)
    found: list[dict] = []

    def place(i: int, image: dict, used: set) -> None:
        if i == len(order):
            found.append(dict(image))
            return
        v = order[i]
        for w in by_degree[len(adj[v])]:
            if w in used:
                continue
            ok = True
            for u, fu in image.items():
                if (u in adj[v]) != (fu in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used.add(w)
                place(i + 1, image, used)
                used.discard(w)
                del image[v]

    place(0, {}, set())
    return found


def brute_force_aut_count(t: Tree) -> int:
    return len(brute_force_automorphisms(t))


def _bfs_order(adj: dict, start) -> list:
    order = [start]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    return order
