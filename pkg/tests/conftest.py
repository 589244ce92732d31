import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from reebsym.reeb import Atom, EnhancedReebGraph, ReebGraph, ReebVertex
from reebsym.trees import Tree

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


def all_small_trees(max_vertices: int) -> list[Tree]:
    """Every unlabeled tree with up to the given vertex count, via the
    networkx enumerator (independent of the tree code under test)."""
    import networkx as nx

    out = [Tree(("0",), ())]
    for n in range(2, max_vertices + 1):
        for g in nx.nonisomorphic_trees(n):
            verts = tuple(str(v) for v in sorted(g.nodes))
            edges = tuple((str(a), str(b)) for a, b in sorted(g.edges))
            out.append(Tree(verts, edges))
    return out


def random_generic_disk(rng: random.Random,
                        max_saddles: int = 6) -> EnhancedReebGraph:
    """Random valid disk graph of a generic field: every saddle is simple
    (degree 3) and all critical levels are pairwise distinct."""
    used_levels = {Fraction(0)}
    counter = itertools.count()

    def fresh_level(near: Fraction, up: bool) -> Fraction:
        while True:
            step = Fraction(rng.randint(1, 9999), 10007)
            lvl = near + step if up else near - step
            if lvl not in used_levels:
                used_levels.add(lvl)
                return lvl

    vertices = [ReebVertex("u", "boundary", Fraction(0), 0)]
    edges = []
    atoms = {}
    budget = [rng.randint(0, max_saddles)]

    def grow(parent_vid: str, parent_level: Fraction) -> None:
        vid = f"v{next(counter)}"
        eid = f"e{len(edges)}"
        if budget[0] > 0 and rng.random() < 0.7:
            budget[0] -= 1
            level = fresh_level(parent_level, up=True)
            vertices.append(ReebVertex(vid, "saddle", level, 1))
            edges.append((eid, parent_vid, vid))
            second = f"e{len(edges)}"
            grow(vid, level)
            third = f"e{len(edges)}"
            grow(vid, level)
            atoms[vid] = Atom((eid,), (second, third))
        elif rng.random() < 0.15:
            level = fresh_level(parent_level, up=False)
            vertices.append(ReebVertex(vid, "min", level, 1))
            edges.append((eid, parent_vid, vid))
        else:
            level = fresh_level(parent_level, up=True)
            vertices.append(ReebVertex(vid, "max", level, 1))
            edges.append((eid, parent_vid, vid))

    grow("u", Fraction(0))
    return EnhancedReebGraph(ReebGraph(vertices, edges), "disk", "u", atoms)
