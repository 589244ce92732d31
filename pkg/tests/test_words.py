import random

import pytest

from reebsym.words import (
    UNIT,
    Prod,
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
    random_expr,
    wreath_node_count,
)

Z2 = Wr(UNIT, 2)
Z3 = Wr(UNIT, 3)
Z5 = Wr(UNIT, 5)


# === Parsing ===

def test_parse_unit():
    assert parse_word("1") == UNIT


def test_parse_product_of_wreaths():
    assert parse_word("((1)wrZ5)x((1)wrZ2)") == Prod((Z5, Z2))


def test_parse_unbalanced_paren_offset():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("(1)x(1")
    assert err.value.offset == 6


def test_parse_redundant_parens():
    assert parse_word("((1))") == UNIT
    assert parse_word("(((1))wrZ2)") == Z2


def test_parse_wrz1_collapses():
    assert parse_word("(1)wrZ1") == UNIT
    assert parse_word("(((1)wrZ3)wrZ1)") == Z3


def test_parse_wrz0_rejected():
    with pytest.raises(WordSyntaxError):
        parse_word("(1)wrZ0")


def test_parse_whitespace_insensitive():
    assert parse_word(" ( 1 ) wrZ 2 ") == Z2


def test_parse_nary_chain_is_flat():
    assert parse_word("(1)x(1)x(1)") == Prod((UNIT, UNIT, UNIT))
    assert parse_word("((1)x(1))x(1)") == Prod((Prod((UNIT, UNIT)), UNIT))


@pytest.mark.parametrize("bad", [
    "", "()", "2", "x", "(1", "1)", "(1)x", "1x(1)", "(1)wrZ",
    "(1)wrZ2wrZ3", "(1)x(1)wrZ2", "(1)(1)", "1wrZ2", "(1)y(1)",
])
def test_parse_rejects(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad)


# === Printing ===

def test_print_examples():
    assert print_word(UNIT) == "1"
    assert print_word(Z2) == "(1)wrZ2"
    assert print_word(Prod((Z2, UNIT))) == "((1)wrZ2)x(1)"


def test_print_sym_token():
    assert print_word(WrSym(UNIT, 3)) == "(1)S3X"


def test_print_parse_identity_enumerated():
    for e in enumerate_exprs(2):
        assert parse_word(print_word(e)) == e


def test_print_parse_identity_unnormalized():
    rng = random.Random(7)
    for _ in range(50):
        e = random_expr(rng, 6)
        # also throw in raw unnormalized shapes
        raw = Prod((e, UNIT))
        assert parse_word(print_word(raw)) == raw


# === Normalization ===

def test_normalize_unit_law():
    assert normalize(Prod((UNIT, Z5))) == Z5


def test_normalize_flattens_and_sorts():
    a, b, c = Z2, Z3, Wr(Z2, 2)
    out = normalize(Prod((Prod((a, b)), c)))
    assert isinstance(out, Prod)
    assert sorted(out.factors, key=print_word) == list(out.factors)
    assert set(out.factors) == {a, b, c}


def test_normalize_wr1_collapse():
    assert normalize(Wr(Wr(UNIT, 3), 1)) == Z3


def test_normalize_idempotent():
    rng = random.Random(11)
    for _ in range(200):
        e = random_expr(rng, 8)
        n = normalize(e)
        assert normalize(n) == n


def test_normalize_preserves_order():
    rng = random.Random(13)
    for _ in range(100):
        e = Prod((random_expr(rng, 4), UNIT, Wr(random_expr(rng, 3), 1)))
        assert expr_order(normalize(e)) == expr_order(e)


# === Order ===

def test_order_examples():
    assert expr_order(Wr(UNIT, 6)) == 6
    assert expr_order(Wr(Z2, 2)) == 8
    assert expr_order(Prod((Z3, Wr(Z3, 2)))) == 54


def test_order_is_multiplicative():
    rng = random.Random(17)
    for _ in range(50):
        a, b = random_expr(rng, 3), random_expr(rng, 3)
        assert expr_order(Prod((a, b))) == expr_order(a) * expr_order(b)
        n = rng.randint(2, 5)
        assert expr_order(Wr(a, n)) == expr_order(a) ** n * n


def test_order_exact_bigint():
    deep = UNIT
    for _ in range(12):
        deep = Wr(deep, 5)
    assert expr_order(deep) > 10 ** 40  # no overflow, exact arithmetic


def test_order_wrsym():
    assert expr_order(WrSym(UNIT, 3)) == 6
    assert expr_order(WrSym(Z2, 3)) == 2 ** 3 * 6


# === Simple-class test ===

def test_simple_class_examples():
    assert is_simple_class(Z2) is True
    assert is_simple_class(Z3) is False
    assert is_simple_class(Prod((Wr(Z2, 2), UNIT))) is True


def test_simple_class_invariant_under_normalize():
    rng = random.Random(19)
    for _ in range(100):
        e = random_expr(rng, 6)
        assert is_simple_class(e) == is_simple_class(normalize(e))


# === Enumeration ===

def test_enumerate_zero():
    assert enumerate_exprs(0) == [UNIT]


def test_enumerate_one():
    assert enumerate_exprs(1) == [UNIT, Z2, Z3, Wr(UNIT, 4), Z5]


def test_enumerate_two_contains_expected():
    out = enumerate_exprs(2)
    assert Wr(Z2, 2) in out
    assert Prod((Z2, Z2)) in out


def test_enumerate_normalized_and_unique():
    out = enumerate_exprs(3)
    assert len(out) == len(set(out))
    for e in out:
        assert normalize(e) == e
        assert wreath_node_count(e) <= 3


def test_enumerate_deterministic():
    assert enumerate_exprs(2) == enumerate_exprs(2)
