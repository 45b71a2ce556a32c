import pytest
from hypothesis import given, strategies as st

from sequent_ir.fun.parser import (
    parse_program, parse_term, parse_type, pretty_program, pretty_term,
)
from sequent_ir.fun.syntax import (
    App, BinOp, Call, Covar, Dtor, IfZ, Label, Lam, Lit, Var, alpha_eq_program, alpha_eq_term,
)
from sequent_ir.generator import LIBRARY, LIBRARY_SOURCE, gen_type, gen_typed_term
from sequent_ir.lexer import ParseError
from sequent_ir.types import Arrow, Int, ListT, PairT, StreamT


def test_precedence_and_associativity():
    assert parse_term("1 + 2 * 3") == BinOp("+", Lit(1), BinOp("*", Lit(2), Lit(3)))
    assert parse_term("1 - 2 - 3") == BinOp("-", BinOp("-", Lit(1), Lit(2)), Lit(3))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse_term("s.tl.hd") == Dtor(Dtor(Var("s"), "tl"), "hd")


def test_calls_and_labels():
    assert parse_term("mult'(xs; a)") == Call("mult'", (Var("xs"),), (Covar("a"),))
    assert parse_term("f(1, 2)") == Call("f", (Lit(1), Lit(2)))
    assert parse_term("label a { goto(0; a) }") == Label("a", parse_term("goto(0; a)"))
    assert isinstance(parse_term("ifz(0, 1, 2)"), IfZ)


def test_lambda_forms():
    assert parse_term(r"\x => x") == Lam("x", Var("x"))
    assert parse_term(r"\x : Int => x") == Lam("x", Var("x"), Int)
    assert parse_term(r"(\x => x) 2") == App(Lam("x", Var("x")), Lit(2))


def test_types():
    assert parse_type("Int -> Int -> Int") == Arrow(Int, Arrow(Int, Int))
    assert parse_type("(Int -> Int) -> Int") == Arrow(Arrow(Int, Int), Int)
    assert parse_type("Pair(List(Int), Stream(Int))") == PairT(ListT(Int), StreamT(Int))


def test_negative_literal_round_trip():
    t = App(Var("f"), Lit(-3))
    assert parse_term(pretty_term(t)) == t
    assert parse_term("1 - -2") == BinOp("-", Lit(1), Lit(-2))


def test_program_main_term_starts_a_line():
    P = parse_program("def f(x: Int;) : Int := x + 1\n\nf(2;)\n")
    assert [d.name for d in P.definitions] == ["f"]
    assert P.main == Call("f", (Lit(2),))
    assert parse_program("def f(x: Int;) : Int := x\n  + 1").main is None


def test_comments_and_whitespace():
    P = parse_program("-- header\ndef f(;) : Int := 1 -- trailing\n\nf(;)")
    assert P.main == Call("f", ())


def test_library_round_trip():
    assert alpha_eq_program(parse_program(pretty_program(LIBRARY)), LIBRARY)
    assert alpha_eq_program(parse_program(LIBRARY_SOURCE), LIBRARY)


def test_program_files_round_trip(programs):
    for path in sorted(programs.glob("*.fun")):
        P = parse_program(path.read_text())
        assert alpha_eq_program(parse_program(pretty_program(P)), P), path.name


@pytest.mark.parametrize("text, line, col", [
    ("1 +", 1, 4),
    ("case x of { Nil => 1", 1, 21),
    ("def f(x Int;) : Int := x", 1, 9),
    ("let x = 1\nin in", 2, 4),
])
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_program(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_parse_error_message_names_expected_token():
    with pytest.raises(ParseError, match="expected"):
        parse_term("ifz(1, 2")


def test_deep_nesting_is_a_parse_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_term("(" * 100_000 + "1" + ")" * 100_000)


@given(st.integers(0, 10_000), st.integers(0, 4))
def test_generated_terms_round_trip(seed, depth):
    t = gen_typed_term(seed, ty=gen_type(seed), depth=depth)
    assert alpha_eq_term(parse_term(pretty_term(t)), t)


@given(st.text(alphabet="()[]{};,.:=>\\-+*x1 \nabcdefghijklmnopqrstuvwxyzNCT'", max_size=60))
def test_parser_is_total(text):
    try:
        parse_program(text)
    except ParseError:
        pass
