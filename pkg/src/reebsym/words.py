"""Group words: an AST for finite groups built from the trivial group by
direct products and wreath products from the top.

Two word families share the node types here:

* admissible words -- ``Unit``, ``Prod``, ``Wr`` (wreath with a cyclic top
  group), written in ASCII as ``1``, ``(A)x(B)``, ``(A)wrZn``;
* symmetric-top words -- ``Unit``, ``Prod``, ``WrSym`` (wreath with the full
  permutation group acting on n points), written as ``(A)SnX``.

Expressions are immutable and compared structurally.  ``normalize`` puts an
expression into a canonical structural form; structural equality of normal
forms is deliberately NOT an isomorphism test (that lives in ``groups``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Union


# === AST ===

@dataclass(frozen=True)
class Unit:
    """The trivial group."""

    def __repr__(self) -> str:
        return "Unit"


@dataclass(frozen=True)
class Prod:
    """Direct product of two or more factors."""

    factors: tuple["GroupExpr", ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise ValueError("Prod needs at least 2 factors")

    def __repr__(self) -> str:
        return f"Prod{list(self.factors)}"


@dataclass(frozen=True)
class Wr:
    """Wreath product of the base with a cyclic top group of order n."""

    base: "GroupExpr"
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("wreath exponent must be >= 1")

    def __repr__(self) -> str:
        return f"Wr({self.base!r},{self.n})"


@dataclass(frozen=True)
class WrSym:
    """Wreath product of the base with the symmetric group on n points."""

    base: "GroupExpr"
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("wreath exponent must be >= 1")

    def __repr__(self) -> str:
        return f"WrSym({self.base!r},{self.n})"


GroupExpr = Union[Unit, Prod, Wr, WrSym]
SymExpr = GroupExpr  # same node pool; SymExpr values use WrSym instead of Wr

UNIT = Unit()

WREATH_EXPONENTS = (2, 3, 4, 5)  # exponent pool used by the enumerator


# === Parsing ===

class WordSyntaxError(ValueError):
    """Raised for text not generated by the word grammar.

    ``offset`` is the byte offset into the original text where the problem
    was detected (``len(text)`` for premature end of input).
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


_TOK_INT = "int"
_TOK_LP = "("
_TOK_RP = ")"
_TOK_X = "x"
_TOK_WRZ = "wrZ"
_TOK_EOF = "eof"


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    """Return (kind, value, offset) tokens; value is 0 except for ints."""
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "(":
            toks.append((_TOK_LP, 0, i))
            i += 1
        elif c == ")":
            toks.append((_TOK_RP, 0, i))
            i += 1
        elif c == "x":
            toks.append((_TOK_X, 0, i))
            i += 1
        elif text.startswith("wrZ", i):
            toks.append((_TOK_WRZ, 0, i))
            i += 3
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append((_TOK_INT, int(text[i:j]), i))
            i = j
        else:
            raise WordSyntaxError(f"unexpected character {c!r}", i)
    toks.append((_TOK_EOF, 0, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, int, int]:
        return self.toks[self.pos]

    def take(self) -> tuple[str, int, int]:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, int, int]:
        tok = self.take()
        if tok[0] != kind:
            raise WordSyntaxError(f"expected {kind!r}", tok[2])
        return tok

    def word(self) -> GroupExpr:
        kind, value, off = self.peek()
        if kind == _TOK_INT:
            # bare "1" is the unit word; it cannot head a product or wreath
            self.take()
            if value != 1:
                raise WordSyntaxError("expected word", off)
            return UNIT
        if kind != _TOK_LP:
            raise WordSyntaxError("expected word", off)
        first = self.group()
        kind, _, off = self.peek()
        if kind == _TOK_WRZ:
            self.take()
            ik, iv, ioff = self.take()
            if ik != _TOK_INT:
                raise WordSyntaxError("expected wreath exponent", ioff)
            if iv < 1:
                raise WordSyntaxError("wreath exponent must be >= 1", ioff)
            # a top group of order 1 acts trivially: collapse to the base
            return first if iv == 1 else Wr(first, iv)
        if kind == _TOK_X:
            factors = [first]
            while self.peek()[0] == _TOK_X:
                self.take()
                factors.append(self.group())
            return Prod(tuple(factors))
        return first

    def group(self) -> GroupExpr:
        self.expect(_TOK_LP)
        inner = self.word()
        self.expect(_TOK_RP)
        return inner


def parse_word(text: str) -> GroupExpr:
    """Parse an ASCII word into the AST that mirrors its structure.

    Redundant parentheses are dropped; ``wrZ1`` collapses to its base.  No
    other rewriting happens: products keep their written factor order.
    """
    p = _Parser(text)
    expr = p.word()
    kind, _, off = p.peek()
    if kind != _TOK_EOF:
        raise WordSyntaxError("trailing input", off)
    return expr


def print_word(expr: GroupExpr) -> str:
    """Render an expression as word text; inverse of ``parse_word``.

    ``WrSym`` nodes use the ``SnX`` token of the symmetric-top family, which
    ``parse_word`` does not read back.
    """
    if isinstance(expr, Unit):
        return "1"
    if isinstance(expr, Prod):
        return "x".join(f"({print_word(f)})" for f in expr.factors)
    if isinstance(expr, Wr):
        return f"({print_word(expr.base)})wrZ{expr.n}"
    if isinstance(expr, WrSym):
        return f"({print_word(expr.base)})S{expr.n}X"
    raise TypeError(f"not a group expression: {expr!r}")


# === Normal form ===

def normalize(expr: GroupExpr) -> GroupExpr:
    """Canonical structural form.

    Unit factors are dropped, nested products flattened, single-factor
    products collapsed, wreaths with a trivial top collapsed, and product
    factors sorted by their printed form.  Idempotent.
    """
    if isinstance(expr, Unit):
        return UNIT
    if isinstance(expr, (Wr, WrSym)):
        base = normalize(expr.base)
        if expr.n == 1:
            return base
        return type(expr)(base, expr.n)
    if isinstance(expr, Prod):
        flat: list[GroupExpr] = []
        for f in expr.factors:
            nf = normalize(f)
            if isinstance(nf, Unit):
                continue
            if isinstance(nf, Prod):
                flat.extend(nf.factors)
            else:
                flat.append(nf)
        if not flat:
            return UNIT
        if len(flat) == 1:
            return flat[0]
        flat.sort(key=print_word)
        return Prod(tuple(flat))
    raise TypeError(f"not a group expression: {expr!r}")


def prod_of(factors: list[GroupExpr]) -> GroupExpr:
    """Product of an arbitrary-length factor list, collapsing 0/1 cases."""
    if not factors:
        return UNIT
    if len(factors) == 1:
        return factors[0]
    return Prod(tuple(factors))


# === Measures ===

def expr_order(expr: GroupExpr) -> int:
    """Order of the denoted group, as an exact integer.

    |1| = 1, |A x B| = |A|*|B|, |A wr Z_n| = |A|^n * n, and for the
    symmetric top |A wr_{X_n} S_n| = |A|^n * n!.
    """
    if isinstance(expr, Unit):
        return 1
    if isinstance(expr, Prod):
        out = 1
        for f in expr.factors:
            out *= expr_order(f)
        return out
    if isinstance(expr, Wr):
        return expr_order(expr.base) ** expr.n * expr.n
    if isinstance(expr, WrSym):
        return expr_order(expr.base) ** expr.n * math.factorial(expr.n)
    raise TypeError(f"not a group expression: {expr!r}")


def is_simple_class(expr: GroupExpr) -> bool:
    """True iff every cyclic-top wreath in the expression has exponent 2.

    Words over the restricted alphabet (no wrZn with n >= 3) are exactly the
    classes realizable by functions whose critical level-set components each
    carry a single critical point.
    """
    if isinstance(expr, Unit):
        return True
    if isinstance(expr, Prod):
        return all(is_simple_class(f) for f in expr.factors)
    if isinstance(expr, Wr):
        return expr.n == 2 and is_simple_class(expr.base)
    raise TypeError(f"not an admissible expression: {expr!r}")


def wreath_node_count(expr: GroupExpr) -> int:
    """Number of wreath-product nodes in the expression."""
    if isinstance(expr, Unit):
        return 0
    if isinstance(expr, Prod):
        return sum(wreath_node_count(f) for f in expr.factors)
    if isinstance(expr, (Wr, WrSym)):
        return 1 + wreath_node_count(expr.base)
    raise TypeError(f"not a group expression: {expr!r}")


# === Enumeration ===

def enumerate_exprs(max_wr_prod_nodes: int) -> list[GroupExpr]:
    """All normalized admissible expressions with at most the given number of
    wreath-product nodes, exponents drawn from {2,3,4,5}.

    Deterministic: ordered by node count, then by printed form.  Direct
    products carry no node cost of their own; their factors do.
    """
    if max_wr_prod_nodes < 0:
        raise ValueError("node budget must be >= 0")
    size_of: dict[int, list[GroupExpr]] = {0: [UNIT]}
    wr_rooted: dict[int, list[GroupExpr]] = {}
    for j in range(1, max_wr_prod_nodes + 1):
        # the wreath node consumes one unit; its base consumes the rest
        wrs = [Wr(base, n) for base in size_of[j - 1] for n in WREATH_EXPONENTS]
        wr_rooted[j] = wrs
        prods = _products_of_total(wr_rooted, j)
        size_of[j] = sorted(wrs + prods, key=print_word)
    out: list[GroupExpr] = []
    for j in range(max_wr_prod_nodes + 1):
        out.extend(size_of[j])
    return out


def _products_of_total(wr_rooted: dict[int, list[GroupExpr]], total: int) -> list[GroupExpr]:
    """Normalized products (>= 2 wreath-rooted factors) with the given total
    node count, one per factor multiset."""
    pool: list[tuple[int, GroupExpr]] = []
    for j in sorted(wr_rooted):
        if j < total:
            pool.extend((j, e) for e in sorted(wr_rooted[j], key=print_word))
    results: list[GroupExpr] = []

    def extend(start: int, remaining: int, chosen: list[GroupExpr]) -> None:
        if remaining == 0:
            if len(chosen) >= 2:
                results.append(Prod(tuple(sorted(chosen, key=print_word))))
            return
        for idx in range(start, len(pool)):
            j, e = pool[idx]
            if j > remaining:
                continue
            chosen.append(e)
            extend(idx, remaining - j, chosen)
            chosen.pop()

    extend(0, total, [])
    return results


def random_expr(rng: random.Random, max_nodes: int, max_leaves: int = 600) -> GroupExpr:
    """A random normalized admissible expression with at most ``max_nodes``
    wreath nodes.

    ``max_leaves`` bounds the product of wreath exponents along any build,
    which keeps the graph realization of the expression at desk scale (the
    node count alone does not).
    """

    def build(budget: int, breadth: int) -> GroupExpr:
        if budget <= 0 or breadth <= 1:
            return UNIT
        roll = rng.random()
        if roll < 0.15:
            return UNIT
        if roll < 0.70 or budget < 2:
            n = rng.choice([n for n in (2, 2, 2, 3, 3, 4, 5) if n <= breadth])
            return Wr(build(budget - 1, breadth // n), n)
        k = rng.choice((2, 2, 3))
        k = min(k, budget)
        cuts = sorted(rng.sample(range(1, budget), k - 1)) if budget > 1 else []
        shares = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        return prod_of([build(s, breadth // k) for s in shares])

    for _ in range(64):
        expr = normalize(build(max_nodes, max_leaves))
        if not isinstance(expr, Unit):
            return expr
    return Wr(UNIT, 2)
