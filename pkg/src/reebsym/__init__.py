"""Symmetry groups of level-set graphs of scalar fields on surfaces.

The package computes, for a field on a compact orientable surface piece,
the group of level-set graph symmetries induced by deformations of the
surface, and provides the word calculus (direct products and wreath
products from the top) that these groups live in, with brute-force group
oracles, tree automorphism groups, and mesh-based extraction.
"""

from .words import (
    UNIT,
    GroupExpr,
    Prod,
    SymExpr,
    Unit,
    WordSyntaxError,
    Wr,
    WrSym,
    enumerate_exprs,
    expr_order,
    is_simple_class,
    normalize,
    parse_word,
    print_word,
)
from .groups import (
    AbelianGroup,
    CapExceeded,
    ConcreteGroup,
    MembershipVerdict,
    are_isomorphic,
    has_unique_nth_roots,
    make_cyclic,
    product_group,
    realize_concrete,
    wreath_cyclic,
    wreath_membership,
    wreath_sym,
)
from .reeb import (
    Atom,
    EnhancedReebGraph,
    ReebGraph,
    ReebVertex,
    canonical_code,
    classify_function,
    cyclic_symmetry,
    morse_equality_check,
    parse_reeb,
    format_reeb,
    to_dot,
    validate_reeb,
)
from .symmetry import (
    DecompositionInput,
    InvalidGraph,
    combine_decomposition,
    compute_group,
    realize_reeb,
    round_trip_check,
)
from .trees import Tree, aut_tree, brute_force_aut_count, tree_center
from .mesh import (
    CriticalReport,
    Mesh,
    ScalarField,
    classify_vertices,
    extract_reeb,
    load_mesh,
    load_values,
    mesh_pipeline,
)

__all__ = [name for name in dir() if not name.startswith("_")]
