import pytest
from hypothesis import given, strategies as st

from sequent_ir.core.parser import (
    parse_consumer, parse_core, parse_core_program, parse_producer, parse_statement, pretty_core,
)
from sequent_ir.core.syntax import (
    CBN, CBV, Call, Case, Cocase, CoreProgram, Covar, Ctor, Cut, Dtor, Lit, Mu, MuTilde, Op, Var,
    alpha_eq, alpha_eq_program, free_covars, free_vars, is_value, subst,
)
from sequent_ir.generator import LIBRARY, gen_type, gen_typed_term
from sequent_ir.lexer import ParseError
from sequent_ir.translate import translate_closed, translate_program


def test_parse_statements():
    assert parse_statement("< 1 | star >") == Cut(Lit(1), Covar("star"))
    assert parse_statement("*(2, 3; a)") == Op("*", Lit(2), Lit(3), Covar("a"))
    assert parse_statement("f(x; a, mu~ y. < y | b >)") == Call(
        "f", (Var("x"),), (Covar("a"), MuTilde("y", Cut(Var("y"), Covar("b")))))
    assert parse_statement("f(x)") == Call("f", (Var("x"),))


def test_constructor_and_destructor_arguments_split_by_arity():
    assert parse_producer("Cons(1, Nil)") == Ctor("Cons", (Lit(1), Ctor("Nil")))
    assert parse_consumer("ap(2; a)") == Dtor("ap", (Lit(2),), (Covar("a"),))
    assert parse_consumer("hd(star)") == Dtor("hd", (), (Covar("star"),))


def test_clauses():
    c = parse_consumer("case { Nil => < 0 | a >, Cons(x, xs) => < x | a > }")
    assert isinstance(c, Case) and [cl.name for cl in c.clauses] == ["Nil", "Cons"]
    p = parse_producer("cocase { ap(x; b) => < x | b > }")
    assert isinstance(p, Cocase) and p.clauses[0].covars == ("b",)


def test_program_with_trailing_producer_runs_against_star():
    P = parse_core_program("def f(x; a) := < x | a >\n\nmu a. f(1; a)")
    assert P.main == Cut(Mu("a", Call("f", (Lit(1),), (Covar("a"),))), Covar("star"))
    assert isinstance(parse_core("< 1 | star >"), Cut)
    assert isinstance(parse_core("def f(; a) := < 1 | a >"), CoreProgram)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_statement("< 1 | >")
    with pytest.raises(ParseError):
        parse_producer("Cons(1)")


def test_values_per_strategy():
    mu = parse_producer("mu a. < 1 | a >")
    assert not is_value(mu, CBV) and is_value(mu, CBN)
    assert is_value(parse_producer("Cons(1, Nil)"), CBV)
    assert not is_value(Ctor("Cons", (mu, Ctor("Nil"))), CBV)
    assert is_value(parse_producer("cocase { hd(a) => *(2, 3; a) }"), CBV)


def test_free_names():
    s = parse_statement("< mu a. < x | b > | mu~ y. < y | a > >")
    assert free_vars(s) == {"x"} and free_covars(s) == {"b", "a"}


def test_subst_is_capture_avoiding():
    s = parse_statement("< mu b. < x | a > | b >")
    out = subst(s, cmap={"a": Covar("b")})
    assert alpha_eq(out, parse_statement("< mu c. < x | b > | b >"))
    out = subst(parse_statement("< cocase { ap(y; k) => < x | k > } | a >"), {"x": Var("y")})
    assert alpha_eq(out, parse_statement("< cocase { ap(z; k) => < y | k > } | a >"))


def test_alpha_equivalence():
    assert alpha_eq(parse_producer("mu a. < 1 | a >"), parse_producer("mu b. < 1 | b >"))
    assert not alpha_eq(parse_producer("mu a. < 1 | a >"), parse_producer("mu b. < 1 | a >"))
    assert not alpha_eq(parse_statement("< x | a >"), parse_statement("< y | a >"))


def test_pretty_forms():
    assert pretty_core(parse_statement("<mu b.*(2,4;b)|mu~ x.+(x,5;a)>")) == \
        "< mu b. *(2, 4; b) | mu~ x. +(x, 5; a) >"
    assert pretty_core(parse_producer("-3")) == "-3"


def test_program_round_trip():
    C = translate_program(LIBRARY)
    assert alpha_eq_program(parse_core_program(pretty_core(C)), C)


def test_program_files_round_trip(programs):
    for path in sorted(programs.glob("*.core")):
        C = parse_core_program(path.read_text())
        assert alpha_eq_program(parse_core_program(pretty_core(C)), C), path.name


@given(st.integers(0, 5000))
def test_translated_terms_round_trip(seed):
    _, p = translate_closed(LIBRARY, gen_typed_term(seed, ty=gen_type(seed), depth=3))
    assert alpha_eq(parse_producer(pretty_core(p)), p)
