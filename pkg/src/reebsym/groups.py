"""Concrete finite-group arithmetic and brute-force oracles.

Groups are represented by an identity element, a generator list, and
multiplication/inversion callables over canonically serialized elements
(nested tuples and residues).  Everything is enumerated by closure, so all
constructions here are strictly desk scale; ``DEFAULT_CAP`` bounds the cost
and operations fail loudly when it would be exceeded.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

from .words import GroupExpr, Prod, Unit, Wr, WrSym, expr_order

DEFAULT_CAP = 20000


class CapExceeded(RuntimeError):
    """Requested construction or enumeration is larger than the cap."""


# === Core representation ===

class ConcreteGroup:
    """A finite group given by explicit element arithmetic.

    Elements are hashable serialized values: the unit group's element is
    ``()``, cyclic elements are residues, product elements are pairs, wreath
    elements are ``(coords, shift)`` or ``(coords, permutation)`` tuples.
    Element enumeration closes the generators under multiplication and is
    memoized behind a lock, so instances are safe to share across threads.
    """

    def __init__(self, identity, generators, multiply: Callable, invert: Callable,
                 name: str = ""):
        self.identity = identity
        self.generators = tuple(generators)
        self.multiply = multiply
        self.invert = invert
        self.name = name
        self._elements: tuple | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"ConcreteGroup({self.name or 'unnamed'})"

    def elements(self, cap: int = DEFAULT_CAP) -> tuple:
        with self._lock:
            if self._elements is None:
                self._elements = self._close(cap)
            return self._elements

    def _close(self, cap: int) -> tuple:
        seen = {self.identity}
        order = [self.identity]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceeded(
                                f"group exceeds enumeration cap {cap}")
            frontier = nxt
        return tuple(order)

    def order(self, cap: int = DEFAULT_CAP) -> int:
        return len(self.elements(cap))

    def element_order(self, x) -> int:
        n = 1
        y = x
        while y != self.identity:
            y = self.multiply(y, x)
            n += 1
        return n

    def is_abelian(self, cap: int = DEFAULT_CAP) -> bool:
        elems = self.elements(cap)
        for a in elems:
            for b in elems:
                if self.multiply(a, b) != self.multiply(b, a):
                    return False
        return True


# === Constructions ===

def trivial_group() -> ConcreteGroup:
    return ConcreteGroup((), [], lambda a, b: (), lambda a: (), name="1")


def make_cyclic(n: int) -> ConcreteGroup:
    """Residues mod n under addition."""
    if n <= 0:
        raise ValueError(f"cyclic order must be positive, got {n}")
    return ConcreteGroup(
        0, [1 % n],
        lambda a, b: (a + b) % n,
        lambda a: (-a) % n,
        name=f"Z{n}",
    )


def product_group(g: ConcreteGroup, h: ConcreteGroup) -> ConcreteGroup:
    """Componentwise multiplication on pairs."""
    gens = [(a, h.identity) for a in g.generators]
    gens += [(g.identity, b) for b in h.generators]
    return ConcreteGroup(
        (g.identity, h.identity), gens,
        lambda x, y: (g.multiply(x[0], y[0]), h.multiply(x[1], y[1])),
        lambda x: (g.invert(x[0]), h.invert(x[1])),
        name=f"({g.name})x({h.name})",
    )


def wreath_cyclic(a: ConcreteGroup, n: int) -> ConcreteGroup:
    """Wreath product with a cyclic top group of order n.

    Elements are (coords, k) with coords a length-n tuple over the base and
    k a residue mod n; the product of (a_0..a_{n-1}; k) and (b_0..b_{n-1}; l)
    is (a_l b_0, a_{l+1} b_1, ..., a_{l-1} b_{n-1}; k+l), indexes mod n.
    """
    if n < 1:
        raise ValueError(f"top order must be positive, got {n}")
    ids = (a.identity,) * n

    def mul(x, y):
        ca, k = x
        cb, l = y
        return (tuple(a.multiply(ca[(l + i) % n], cb[i]) for i in range(n)),
                (k + l) % n)

    def inv(x):
        ca, k = x
        l = (-k) % n
        return (tuple(a.invert(ca[(l + i) % n]) for i in range(n)), l)

    gens = [(( (g,) + ids[1:]), 0) for g in a.generators]
    gens.append((ids, 1 % n))
    return ConcreteGroup((ids, 0), gens, mul, inv, name=f"({a.name})wrZ{n}")


def wreath_sym(a: ConcreteGroup, n: int) -> ConcreteGroup:
    """Wreath product with the symmetric group acting on n points.

    Elements are (coords, h) with h a permutation stored as a tuple of
    images on 0..n-1; (c1, h1)(c2, h2) = (c1 composed with h2 times c2,
    h1 after h2).
    """
    if n < 1:
        raise ValueError(f"top degree must be positive, got {n}")
    ids = (a.identity,) * n
    idp = tuple(range(n))

    def mul(x, y):
        c1, h1 = x
        c2, h2 = y
        return (tuple(a.multiply(c1[h2[i]], c2[i]) for i in range(n)),
                tuple(h1[h2[i]] for i in range(n)))

    def inv(x):
        c, h = x
        hinv = [0] * n
        for i, hi in enumerate(h):
            hinv[hi] = i
        return (tuple(a.invert(c[hinv[i]]) for i in range(n)), tuple(hinv))

    gens = [(((g,) + ids[1:]), idp) for g in a.generators]
    if n >= 2:
        gens.append((ids, (1, 0) + tuple(range(2, n))))
    if n >= 3:
        gens.append((ids, tuple(range(1, n)) + (0,)))
    return ConcreteGroup((ids, idp), gens, mul, inv, name=f"({a.name})S{n}X")


def perm_group(perms) -> ConcreteGroup:
    """Group generated by permutations given as tuples of images on 0..n-1."""
    perms = [tuple(p) for p in perms]
    if not perms:
        raise ValueError("need at least one permutation to fix the degree")
    n = len(perms[0])
    idp = tuple(range(n))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    def inv(p):
        out = [0] * n
        for i, pi in enumerate(p):
            out[pi] = i
        return tuple(out)

    return ConcreteGroup(idp, perms, mul, inv, name=f"perm({n})")


def realize_concrete(expr: GroupExpr, cap: int = DEFAULT_CAP) -> ConcreteGroup:
    """Build the finite group denoted by a word, verifying the size cap
    against the predicted order first."""
    predicted = expr_order(expr)
    if predicted > cap:
        raise CapExceeded(f"order {predicted} exceeds cap {cap}")
    return _realize(expr)


def _realize(expr: GroupExpr) -> ConcreteGroup:
    if isinstance(expr, Unit):
        return trivial_group()
    if isinstance(expr, Prod):
        out = _realize(expr.factors[0])
        for f in expr.factors[1:]:
            out = product_group(out, _realize(f))
        return out
    if isinstance(expr, Wr):
        return wreath_cyclic(_realize(expr.base), expr.n)
    if isinstance(expr, WrSym):
        return wreath_sym(_realize(expr.base), expr.n)
    raise TypeError(f"not a group expression: {expr!r}")


# === Isomorphism oracle ===

def _profiles(g: ConcreteGroup, elems: tuple) -> list:
    """Per-element isomorphism-invariant fingerprints.

    Always includes the element order; for modest groups also the size of
    the element's centralizer (a conjugacy-class proxy that is cheap and
    exact enough for pruning).
    """
    orders = [g.element_order(x) for x in elems]
    if len(elems) <= 1500:
        cent = []
        for x in elems:
            cent.append(sum(1 for y in elems
                            if g.multiply(x, y) == g.multiply(y, x)))
        return list(zip(orders, cent))
    return [(o, 0) for o in orders]


def _generating_sequence(g: ConcreteGroup, elems: tuple) -> list:
    """Small generating sequence found greedily, favoring high-order
    elements so the backtracking tree stays shallow."""
    by_order = sorted(elems, key=g.element_order, reverse=True)
    gens: list = []
    span = {g.identity}
    for x in by_order:
        if len(span) == len(elems):
            break
        if x in span:
            continue
        gens.append(x)
        span = _span(g, gens)
    return gens


def _span(g: ConcreteGroup, gens: list) -> set:
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _extend_iso(g: ConcreteGroup, h: ConcreteGroup, gen_pairs: list) -> bool:
    """Check that mapping the chosen generators to their images extends to
    an injective homomorphism on the subgroup they generate."""
    phi = {g.identity: h.identity}
    used = {h.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            y = phi[x]
            for a, b in gen_pairs:
                xa = g.multiply(x, a)
                yb = h.multiply(y, b)
                if xa in phi:
                    if phi[xa] != yb:
                        return False
                else:
                    if yb in used:
                        return False
                    phi[xa] = yb
                    used.add(yb)
                    nxt.append(xa)
        frontier = nxt
    return True


def are_isomorphic(g: ConcreteGroup, h: ConcreteGroup,
                   cap: int = DEFAULT_CAP) -> bool:
    """Brute-force group isomorphism by backtracking over generator images.

    Candidate images are restricted to elements with a matching
    (order, centralizer-size) fingerprint; each partial assignment is closed
    into a full injective homomorphism check, so a positive answer is a
    verified isomorphism.
    """
    ge = g.elements(cap)
    he = h.elements(cap)
    if len(ge) != len(he):
        return False
    gp = _profiles(g, ge)
    hp = _profiles(h, he)
    if sorted(gp) != sorted(hp):
        return False
    gens = _generating_sequence(g, ge)
    if not gens:
        return True  # both trivial
    prof_of = dict(zip(ge, gp))
    by_prof: dict = {}
    for y, p in zip(he, hp):
        by_prof.setdefault(p, []).append(y)

    def search(i: int, pairs: list) -> bool:
        if i == len(gens):
            return True
        x = gens[i]
        for y in by_prof.get(prof_of[x], ()):
            pairs.append((x, y))
            if _extend_iso(g, h, pairs) and search(i + 1, pairs):
                return True
            pairs.pop()
        return False

    return search(0, [])


# === Abelian groups and wreath-product membership ===

@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group by invariant factors d1 | d2 | ... | dk.

    The empty factor list is the trivial group.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError(
                    f"invariant factors must form a divisibility chain, "
                    f"got {self.invariant_factors}")
            prev = d

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def to_concrete(self) -> ConcreteGroup:
        out = trivial_group()
        for d in self.invariant_factors:
            out = product_group(out, make_cyclic(d))
        return out


def has_unique_nth_roots(c: AbelianGroup, n: int) -> bool:
    """True iff x -> x^n is a bijection on the group; for a finite abelian
    group this is gcd(n, |C|) == 1, cross-checked by exhaustion when small."""
    if n < 1:
        raise ValueError(f"root degree must be positive, got {n}")
    fast = math.gcd(n, c.order) == 1
    if c.order <= 1000:
        elems = _abelian_elements(c)
        image = {tuple((n * x) % d for x, d in zip(e, c.invariant_factors))
                 for e in elems}
        brute = len(image) == len(elems)
        if brute != fast:  # cannot happen; guards the fast path
            raise AssertionError("root-counting disagrees with gcd criterion")
    return fast


def _abelian_elements(c: AbelianGroup) -> list[tuple[int, ...]]:
    elems = [()]
    for d in c.invariant_factors:
        elems = [e + (r,) for e in elems for r in range(d)]
    return elems


REASON_NO_ROOTS = "no-unique-roots-factor"
REASON_TOP_NOT_CYCLIC = "top-not-cyclic"

MEMBER = "Member"
NON_MEMBER = "NonMember"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MembershipVerdict:
    status: str
    reasons: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.reasons:
            return f"{self.status}: {', '.join(self.reasons)}"
        return self.status


def wreath_membership(base: AbelianGroup, top: AbelianGroup) -> MembershipVerdict:
    """Decide whether base wr top lies in the family generated from the
    trivial group by direct products and cyclic-top wreath products.

    Cyclic tops are members outright (abelian groups of that shape are in
    the family, which is closed under such wreaths).  For a non-cyclic top
    the wreath is directly indecomposable exactly when the base has no
    nontrivial direct factor with unique |top|-th roots, i.e. when every
    prime of |base| divides |top|; combined with the top not being cyclic
    this rules out both generating operations, hence NonMember.  Any other
    configuration is left Unknown rather than guessed.
    """
    if base.is_trivial:
        raise ValueError("base group must be nontrivial")
    if top.is_trivial:
        raise ValueError("top group must be nontrivial")
    if top.is_cyclic:
        return MembershipVerdict(MEMBER)
    n = top.order
    if any(n % p for p in _prime_factors(base.order)):
        # a Sylow factor coprime to n exists, so the wreath decomposes as a
        # direct product; neither case of the argument closes
        return MembershipVerdict(
            UNKNOWN, ("base-has-coprime-factor-so-wreath-decomposes",))
    return MembershipVerdict(NON_MEMBER, (REASON_NO_ROOTS, REASON_TOP_NOT_CYCLIC))


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
