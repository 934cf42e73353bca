from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import gen_plain_exp
from xdt.growlang import (
    Arrow,
    DEFAULT_HANDLERS,
    GlParseError,
    IntTy,
    PLAIN,
    PrintError,
    PrintHandlers,
    Prod,
    abs_,
    ann,
    app,
    let,
    lit,
    parse_dec,
    parse_exp,
    parse_ty,
    print_dec,
    print_exp,
    print_ty,
    prj,
    strip,
    tup,
    val,
    validate_node,
    var,
)


# --------------------------------------------------------------------------
# Parsing


def test_parse_lambda_ascii():
    assert parse_exp("\\x. x") == abs_("x", var("x"))


def test_parse_lambda_unicode():
    assert parse_exp("λx.x") == abs_("x", var("x"))


def test_parse_let_binding():
    assert parse_exp("let x := 1 in x") == let(val("x", lit(1)), var("x"))


def test_parse_tuple_goes_to_extension_constructor():
    tree = parse_exp("(1, 2)")
    assert tree == tup(lit(1), lit(2))
    assert tree.ctor == "Tup"
    validate_node(tree, PLAIN)


def test_parse_projection_binding():
    assert parse_exp("let (x, y) := (1, 2) in y") == let(
        prj("x", "y", tup(lit(1), lit(2))), var("y")
    )


def test_parse_application_left_associative():
    assert parse_exp("f x y") == app(app(var("f"), var("x")), var("y"))


def test_parse_annotation_on_application():
    assert parse_exp("f x :: Int") == ann(app(var("f"), var("x")), IntTy())


def test_parse_lambda_body_extends_right():
    assert parse_exp("\\x. x :: Int") == abs_("x", ann(var("x"), IntTy()))


def test_parse_types():
    assert parse_ty("Int") == IntTy()
    assert parse_ty("Int -> Int") == Arrow(IntTy(), IntTy())
    assert parse_ty("Int → Int") == Arrow(IntTy(), IntTy())
    assert parse_ty("Int * Int") == Prod(IntTy(), IntTy())
    assert parse_ty("Int × Int") == Prod(IntTy(), IntTy())
    assert parse_ty("Int -> Int -> Int") == Arrow(IntTy(), Arrow(IntTy(), IntTy()))
    assert parse_ty("(Int -> Int) -> Int") == Arrow(Arrow(IntTy(), IntTy()), IntTy())


def test_parse_dec_forms():
    assert parse_dec("x := 1") == val("x", lit(1))
    assert parse_dec("(x, y) := z") == prj("x", "y", var("z"))


def test_parse_error_positions():
    with pytest.raises(GlParseError) as exc:
        parse_exp("let x := in x")
    diag = exc.value.diagnostics[0]
    assert diag.location is not None and diag.location.line == 1


def test_parse_rejects_unknown_uppercase():
    with pytest.raises(GlParseError):
        parse_exp("Foo")


def test_parse_rejects_trailing_input():
    with pytest.raises(GlParseError):
        parse_exp("1 )")


# --------------------------------------------------------------------------
# Printing (golden strings hand-evaluated from the printing equations)


def test_print_types():
    assert print_ty(IntTy(), DEFAULT_HANDLERS) == "Int"
    assert print_ty(Arrow(IntTy(), IntTy()), DEFAULT_HANDLERS) == "(Int) → Int"
    assert print_ty(Prod(IntTy(), IntTy()), DEFAULT_HANDLERS) == "(Int) × Int"
    assert (
        print_ty(Arrow(Prod(IntTy(), IntTy()), IntTy()), DEFAULT_HANDLERS)
        == "((Int) × Int) → Int"
    )


def test_print_expressions():
    assert print_exp(lit(42), DEFAULT_HANDLERS) == "42"
    assert print_exp(var("x"), DEFAULT_HANDLERS) == "x"
    assert print_exp(abs_("x", var("x")), DEFAULT_HANDLERS) == "λx.x"
    assert print_exp(app(var("f"), var("x")), DEFAULT_HANDLERS) == "(f) (x)"
    assert print_exp(tup(lit(1), lit(2)), DEFAULT_HANDLERS) == "(1 , 2)"
    assert (
        print_exp(ann(lit(1), IntTy()), DEFAULT_HANDLERS) == "(1) :: (Int)"
    )
    assert (
        print_exp(let(val("x", lit(1)), var("x")), DEFAULT_HANDLERS)
        == "let x := 1 in x"
    )


def test_print_declarations():
    assert print_dec(val("x", lit(1)), DEFAULT_HANDLERS) == "x := 1"
    assert (
        print_dec(prj("x", "y", tup(lit(1), lit(2))), DEFAULT_HANDLERS)
        == "(x , y) := (1 , 2)"
    )


def test_print_ignores_decorations():
    decorated = app(var("f"), lit(1), ext=IntTy())
    plain = app(var("f"), lit(1))
    assert print_exp(decorated, DEFAULT_HANDLERS) == print_exp(plain, DEFAULT_HANDLERS)


def test_print_decoration_obliviousness_via_strip():
    decorated = let(
        val("x", lit(1)),
        app(var("f"), var("x"), ext=IntTy()),
        ext=[("x", IntTy())],
    )
    assert print_exp(strip(decorated), DEFAULT_HANDLERS) == print_exp(
        decorated, DEFAULT_HANDLERS
    )


def test_handlers_must_be_total():
    broken = PrintHandlers(
        exp_ext=lambda n, h: (_ for _ in ()).throw(PrintError("no")),
        dec_ext=DEFAULT_HANDLERS.dec_ext,
        ty_ext=DEFAULT_HANDLERS.ty_ext,
    )
    with pytest.raises(PrintError):
        print_exp(tup(lit(1), lit(2)), broken)


def test_custom_handler_receives_new_constructor_values():
    seen = []

    def spy(n, h):
        seen.append(n.ctor)
        return "<tuple>"

    handlers = PrintHandlers(spy, DEFAULT_HANDLERS.dec_ext, DEFAULT_HANDLERS.ty_ext)
    out = print_exp(app(tup(lit(1), lit(2)), lit(3)), handlers)
    assert out == "(<tuple>) (3)"
    assert seen == ["Tup"]


# --------------------------------------------------------------------------
# Round trips


@pytest.mark.parametrize("seed", range(40))
def test_parse_print_round_trip_seeded(seed):
    tree = gen_plain_exp(random.Random(seed), depth=5)
    printed = print_exp(tree, DEFAULT_HANDLERS)
    assert parse_exp(printed) == tree


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=2, max_value=6))
def test_parse_print_round_trip_property(seed, depth):
    tree = gen_plain_exp(random.Random(seed), depth=depth)
    assert parse_exp(print_exp(tree, DEFAULT_HANDLERS)) == tree


def test_round_trip_accepts_ascii_aliases():
    tree = parse_exp("(\\x. x) :: Int -> Int")
    printed = print_exp(tree, DEFAULT_HANDLERS)
    assert "λ" in printed and "→" in printed
    assert parse_exp(printed) == tree
