import pytest
from hypothesis import given, strategies as st

from sequent_ir.core.parser import parse_core_program, parse_producer, parse_statement
from sequent_ir.core.syntax import alpha_eq, alpha_eq_program, free_covars
from sequent_ir.core.eval import eval_stmt, result_value
from sequent_ir.focusing import focus_program, simplify, simplify_program
from sequent_ir.fun.parser import parse_program, parse_term
from sequent_ir.generator import LIBRARY, gen_type, gen_typed_term
from sequent_ir.names import FreshSupply
from sequent_ir.translate import translate_closed, translate_program, translate_term

MULT = parse_program("""
def mult(l: List(Int);) : Int := label a { mult'(l; a) }
def mult'(l: List(Int); a: Int) : Int :=
  case l of { Nil => 1, Cons(x, xs) => ifz(x, goto(0; a), x * mult'(xs; a)) }
""")

# translated and simplified, before focusing
MULT_SIMPLIFIED = parse_core_program("""
def mult(l; a) := mult'(l; a, a)
def mult'(l; a, b) :=
  < l | case { Nil => < 1 | b >,
               Cons(x, xs) => ifz(x, < 0 | a >, *(x, mu g. mult'(xs; a, g); b)) } >
""")


def tr(src: str):
    t = parse_term(src)
    return translate_term(t, FreshSupply())


@pytest.mark.parametrize("fun, core", [
    ("2 * 3", "mu a. *(2, 3; a)"),
    ("ifz(2, 5, 10)", "mu a. ifz(2, < 5 | a >, < 10 | a >)"),
    ("let x = 2 * 2 in x * x", "mu a. < mu b. *(2, 2; b) | mu~ x. < mu g. *(x, x; g) | a > >"),
    ("(2 * 4) + 5", "mu a. +(mu b. *(2, 4; b), 5; a)"),
    ("Cons(1, Nil)", "Cons(1, Nil)"),
    ("case l of { Nil => 0, Cons(y, ys) => y }",
     "mu a. < l | case { Nil => < 0 | a >, Cons(y, ys) => < y | a > } >"),
    ("cocase { fst => 1, snd => 2 }", "cocase { fst(a) => < 1 | a >, snd(a) => < 2 | a > }"),
    ("p.snd", "mu a. < p | snd(a) >"),
    (r"\x => x * x", "cocase { ap(x; b) => < mu g. *(x, x; g) | b > }"),
    ("f 2", "mu a. < f | ap(2; a) >"),
    ("label k { goto(1; k) }", "mu k. < mu b. < 1 | k > | k >"),
    ("g(1; k)", "mu a. g(1; k, a)"),
])
def test_term_translation(fun, core):
    assert alpha_eq(tr(fun), parse_producer(core))


def test_definition_gets_extra_continuation():
    C = translate_program(parse_program("def f(x: Int; k: Int) : Int := x"))
    d = C.definitions[0]
    assert [a for a, _ in d.params] == ["x"]
    assert len(d.coparams) == 2 and d.coparams[0][0] == "k"
    assert alpha_eq(d.body, parse_statement(f"< x | {d.coparams[1][0]} >"))


def test_main_runs_against_star():
    C = translate_program(parse_program("1 + 2"))
    assert alpha_eq(C.main, parse_statement("< mu a. +(1, 2; a) | star >"))


def test_mult_translation_simplifies_to_unfocused_form():
    assert alpha_eq_program(simplify_program(translate_program(MULT)), MULT_SIMPLIFIED, types=False)


def test_fresh_names_avoid_program_names():
    P = parse_program("def a0(x0: Int; a1: Int) : Int := goto(x0; a1)\n\nlabel k { a0(1; k) }")
    C = translate_program(P)
    for d in C.definitions:
        assert len({n for n, _ in d.params} | {n for n, _ in d.coparams}) == 3


@given(st.integers(0, 5000))
def test_translation_is_closed_except_star(seed):
    _, p = translate_closed(LIBRARY, gen_typed_term(seed, ty=gen_type(seed), depth=3))
    assert free_covars(p) == set()


def test_simplification_preserves_program_results(programs):
    for path in sorted(programs.glob("*.fun")):
        C = focus_program(translate_program(parse_program(path.read_text())))
        before = result_value(eval_stmt(C, C.main))
        after = result_value(eval_stmt(C, simplify(C.main)))
        assert before is not None and alpha_eq(before, after), path.name
