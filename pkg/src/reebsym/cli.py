"""Command-line interface.

Every subcommand is a thin adapter over the library: parse arguments, call
one operation, format the result.  Exit codes: 0 success, 1 domain error
(reported as a single ``ERROR <code>: <detail>`` line on stderr), 2 usage
error (argparse).
"""

from __future__ import annotations

import argparse
import sys

from . import groups, mesh, reeb, symmetry, trees, words


class _DomainError(Exception):
    def __init__(self, code: str, detail: str):
        super().__init__(detail)
        self.code = code
        self.detail = detail


def _parse_word(text: str) -> words.GroupExpr:
    try:
        return words.parse_word(text)
    except words.WordSyntaxError as exc:
        raise _DomainError("parse", str(exc)) from exc


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise _DomainError("io", str(exc)) from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise _DomainError("io", str(exc)) from exc


def _invariant_factors(text: str) -> groups.AbelianGroup:
    try:
        factors = tuple(int(p) for p in text.split(",") if p)
        return groups.AbelianGroup(factors)
    except ValueError as exc:
        raise _DomainError("format", str(exc)) from exc


# === Subcommands ===

def _cmd_word(args) -> int:
    expr = _parse_word(args.word)
    if args.action == "normalize":
        print(words.print_word(words.normalize(expr)))
    elif args.action == "order":
        print(words.expr_order(expr))
    else:
        print("true" if words.is_simple_class(expr) else "false")
    return 0


def _cmd_group_of(args) -> int:
    try:
        g = reeb.parse_reeb(_read(args.file))
    except reeb.ReebFormatError as exc:
        raise _DomainError("format", str(exc)) from exc
    try:
        expr = symmetry.compute_group(g)
    except symmetry.InvalidGraph as exc:
        raise _DomainError("validation", str(exc)) from exc
    except (symmetry.UnsupportedAtom, reeb.ReebError) as exc:
        raise _DomainError("validation", str(exc)) from exc
    print(words.print_word(expr))
    if args.dot:
        _write(args.dot, reeb.to_dot(g.graph))
    return 0


def _cmd_realize(args) -> int:
    expr = _parse_word(args.word)
    g = symmetry.realize_reeb(expr)
    _write(args.output, reeb.format_reeb(g))
    return 0


def _cmd_roundtrip(args) -> int:
    if args.exhaustive is not None:
        exprs = words.enumerate_exprs(args.exhaustive)
    else:
        exprs = [_parse_word(args.word)]
    failed = 0
    for e in exprs:
        ok = symmetry.round_trip_check(e)
        print(f"{'OK' if ok else 'FAIL'} {words.print_word(words.normalize(e))}")
        failed += 0 if ok else 1
    return 1 if failed else 0


def _cmd_aut_tree(args) -> int:
    try:
        t = trees.parse_edge_list(_read(args.file))
    except ValueError as exc:
        raise _DomainError("format", str(exc)) from exc
    expr = trees.aut_tree(t)
    print(words.print_word(expr))
    print(words.expr_order(expr))
    return 0


def _cmd_extract(args) -> int:
    try:
        m = mesh.load_mesh(_read(args.mesh))
        field = mesh.load_values(_read(args.values), m)
        result = mesh.mesh_pipeline(m, field)
    except mesh.MeshError as exc:
        raise _DomainError(type(exc).__name__.lower(), str(exc)) from exc
    rep = result.classification
    print(f"c0 {rep.c0}")
    print(f"c1 {rep.c1}")
    print(f"c2 {rep.c2}")
    print(f"chi {result.chi}")
    print(f"morse-equality {'ok' if result.morse_ok else 'violated'}")
    print(f"betti {result.betti_reeb} <= {result.betti_bound} "
          f"{'ok' if result.betti_ok else 'violated'}")
    print(f"generic {'true' if result.generic else 'false'}")
    print(f"simple {'true' if result.simple else 'false'}")
    if args.pipeline:
        if result.skipped is not None:
            print(f"group SKIPPED {result.skipped}")
        else:
            print(f"group {words.print_word(result.group)}")
    return 0


def _cmd_member(args) -> int:
    base = _invariant_factors(args.base)
    top = _invariant_factors(args.top)
    try:
        verdict = groups.wreath_membership(base, top)
    except ValueError as exc:
        raise _DomainError("validation", str(exc)) from exc
    print(str(verdict))
    return 0


def _cmd_oracle(args) -> int:
    e1 = _parse_word(args.word1)
    e2 = _parse_word(args.word2)
    try:
        g1 = groups.realize_concrete(e1, cap=args.cap)
        g2 = groups.realize_concrete(e2, cap=args.cap)
        same = groups.are_isomorphic(g1, g2, cap=args.cap)
    except groups.CapExceeded as exc:
        raise _DomainError("cap", str(exc)) from exc
    print("true" if same else "false")
    return 0


# === Dispatch ===

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="reebsym",
        description="Level-set graph symmetry calculus")
    ap.add_argument("--cap", type=int, default=groups.DEFAULT_CAP,
                    help="element enumeration cap for concrete groups")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", help="normalize, measure, or classify a word")
    p.add_argument("action", choices=["normalize", "order", "simple"])
    p.add_argument("word")
    p.set_defaults(fn=_cmd_word)

    p = sub.add_parser("group-of", help="symmetry group of a .reeb graph")
    p.add_argument("file")
    p.add_argument("--dot", help="also write a DOT rendering here")
    p.set_defaults(fn=_cmd_group_of)

    p = sub.add_parser("realize", help="build a .reeb graph for a word")
    p.add_argument("word")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("roundtrip",
                       help="realize a word and recompute its group")
    p.add_argument("word", nargs="?")
    p.add_argument("--exhaustive", type=int, metavar="N",
                   help="check every word with at most N wreath nodes")
    p.set_defaults(fn=_cmd_roundtrip)

    p = sub.add_parser("aut-tree", help="automorphism group of a tree")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_aut_tree)

    p = sub.add_parser("extract", help="critical report for a mesh field")
    p.add_argument("mesh")
    p.add_argument("values")
    p.add_argument("--pipeline", action="store_true",
                   help="also compute the symmetry group")
    p.set_defaults(fn=_cmd_extract)

    p = sub.add_parser("member",
                       help="wreath-product family membership for abelian "
                            "base and top (comma-separated invariant factors)")
    p.add_argument("base")
    p.add_argument("top")
    p.set_defaults(fn=_cmd_member)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("iso", help="isomorphism of two word groups")
    q.add_argument("word1")
    q.add_argument("word2")
    q.set_defaults(fn=_cmd_oracle)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "command", None) == "roundtrip":
        if args.exhaustive is None and args.word is None:
            ap.error("roundtrip needs a word or --exhaustive N")
    try:
        return args.fn(args)
    except _DomainError as exc:
        print(f"ERROR {exc.code}: {exc.detail}", file=sys.stderr)
        return 1
    except (words.WordSyntaxError, reeb.ReebError, mesh.MeshError,
            groups.CapExceeded, ValueError) as exc:
        print(f"ERROR domain: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
