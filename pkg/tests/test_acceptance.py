"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import pytest

from sequent_ir.core.eval import eval_stmt, result_value, step_stmt, Stepped
from sequent_ir.core.parser import parse_core_program, parse_producer, parse_statement
from sequent_ir.core.syntax import CBN, CBV, CoreProgram, Covar, Cut, Lit, alpha_eq, alpha_eq_program
from sequent_ir.focusing import focus_program, focus_statement, simplify, simplify_program
from sequent_ir.fun.eval import evaluate
from sequent_ir.fun.parser import parse_program, parse_term, pretty_term
from sequent_ir.fun.syntax import Lit as FunLit
from sequent_ir.generator import LIBRARY, gen_type, gen_typed_term
from sequent_ir.names import STAR, FreshSupply
from sequent_ir.properties import (
    PropertyViolation, check_agreement, check_core_soundness, check_fun_soundness,
    check_translation_typing, compile_closed,
)
from sequent_ir.translate import translate_program, translate_term
from sequent_ir.types import Int

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

GOLDEN_SECONDS = 1.0  # per golden evaluation
SUITE_TERMS = 1000
SUITE_MAX_DEPTH = 4
SUITE_SECONDS = 60.0
SUITE_REQUIRED_RATE = 1.0
AGREEMENT_TERMS = 500
AGREEMENT_FUEL = 10**5
AGREEMENT_REQUIRED_RATE = 1.0

RESULTS: dict[int, tuple[bool, str]] = {}


@dataclass
class Report:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{n}: {d}" for n, ok, d in self.checks if not ok]

    def summary(self) -> str:
        passed = sum(ok for _, ok, _ in self.checks)
        return f"{passed}/{len(self.checks)} checks"


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def core_run(P: CoreProgram, src: str, strategy: str = CBV):
    return eval_stmt(P, parse_statement(src), strategy, trace=True)


def core_golden(rep: Report, name: str, P: CoreProgram, src: str, value: str, check=None):
    r, dt = timed(lambda: core_run(P, src))
    v = result_value(r)
    ok = r.ok and v is not None and alpha_eq(v, parse_producer(value)) and dt < GOLDEN_SECONDS
    if ok and check is not None:
        ok = check(r)
    rep.add(name, ok, f"status={r.status} final={r.final} time={dt:.3f}s")


# -- criterion 1 -----------------------------------------------------------------------

FAC = parse_core_program(
    "def fac(n; a) := ifz(n, < 1 | a >, -(n, 1; mu~ x. fac(x; mu~ r. *(n, r; a))))")
SWAP = parse_core_program("def swap(x; a) := < x | case { Tup(y, z) => < Tup(z, y) | a > } >")
SWAP_LAZY = parse_core_program(
    "def swap_lazy(x; a) := < cocase { fst(b) => < x | snd(b) >, snd(b) => < x | fst(b) > } | a >")
FAC_RULES = ["call", "ifz", "binop", "mutilde", "call", "ifz", "mutilde", "binop"]


def criterion_1() -> Report:
    rep = Report()
    empty = CoreProgram()
    core_golden(rep, "2*3", empty, "< mu a. *(2, 3; a) | star >", "6")
    core_golden(rep, "ifz", empty, "< mu a. ifz(2, < 5 | a >, < 10 | a >) | star >", "10")
    core_golden(
        rep, "let shares 2*2", empty,
        "< mu a. < mu b. *(2, 2; b) | mu~ x. < mu g. *(x, x; g) | a > > | star >", "16",
        lambda r: sum(s.term.startswith("*(2, 2;") for s in r.trace) == 1)
    core_golden(rep, "fac(1)", FAC, "fac(1; star)", "1", lambda r: r.rules() == FAC_RULES)
    core_golden(rep, "swap", SWAP, "swap(Tup(2, 3); star)", "Tup(3, 2)")
    core_golden(
        rep, "swap_lazy", SWAP_LAZY,
        "swap_lazy(cocase { fst(a) => < 1 | a >, snd(a) => *(2, 3; a) }; snd(star))", "1",
        lambda r: not any(s.term.startswith("*(2, 3;") for s in r.trace))
    core_golden(rep, "lambda", empty,
                "< cocase { ap(x; b) => < mu g. *(x, x; g) | b > } | ap(2; star) >", "4")
    core_golden(rep, "focused sum", empty,
                "< mu a. < mu b. *(2, 4; b) | mu~ x. +(x, 5; a) > | star >", "13")

    t = parse_term("(2 * 3) * 4")
    r, dt = timed(lambda: evaluate(LIBRARY, t))
    rep.add("(2*3)*4 in Fun", r.ok and r.final == FunLit(24) and dt < GOLDEN_SECONDS, pretty_term(r.final))
    fresh = FreshSupply()
    s = focus_statement(Cut(translate_term(t, fresh), Covar(STAR)), fresh)
    r, dt = timed(lambda: eval_stmt(CoreProgram(), s))
    rep.add("(2*3)*4 in Core", result_value(r) == Lit(24) and dt < GOLDEN_SECONDS, str(r.final))
    return rep


# -- criterion 2 -----------------------------------------------------------------------

MULT_FINAL = parse_core_program("""
def mult(l; a) := mult'(l; a, a)
def mult'(l; a, b) :=
  < l | case { Nil => < 1 | b >, Cons(x, xs) => ifz(x, < 0 | a >, mult'(xs; a, mu~ z. *(x, z; b))) } >
""")
MULT_BODY = ("< l | case { Nil => < 1 | b >, "
             "Cons(x, xs) => ifz(x, < 0 | a >, *(x, mu g. mult'(xs; a, g); b)) } >")
MULT_BODY_FOCUSED = ("< l | case { Nil => < 1 | b >, Cons(x, xs) => ifz(x, < 0 | a >, "
                     "< mu g. mult'(xs; a, g) | mu~ z. *(x, z; b) >) } >")


def criterion_2() -> Report:
    rep = Report()
    P = parse_program((PROGRAMS / "mult.fun").read_text())
    C = simplify_program(focus_program(translate_program(P)))
    C = CoreProgram(C.definitions, None)
    rep.add("compile --focus --simplify mult", alpha_eq_program(C, MULT_FINAL, types=False))
    focused = focus_statement(parse_statement(MULT_BODY))
    rep.add("focused mult' body", alpha_eq(focused, parse_statement(MULT_BODY_FOCUSED)))
    final = MULT_FINAL.lookup("mult'").body
    rep.add("focused then simplified mult' body", alpha_eq(simplify(focused), final))
    return rep


# -- criteria 3 and 4 ------------------------------------------------------------------


def suite(check, count: int) -> tuple[int, list[str]]:
    passed, failures = 0, []
    for seed in range(count):
        try:
            check(seed)
            passed += 1
        except PropertyViolation as e:
            failures.append(f"seed {seed}: {e}")
    return passed, failures


def rate_check(rep: Report, name: str, passed: int, total: int, failures, required: float):
    rep.add(name, passed / total >= required, f"{passed}/{total}" + (f"; {failures[0]}" if failures else ""))


def criterion_3() -> Report:
    rep = Report()
    t0 = time.perf_counter()
    types = [gen_type(s) for s in range(SUITE_TERMS)]
    terms = [(ty, gen_typed_term(s, ty=ty, depth=SUITE_MAX_DEPTH)) for s, ty in enumerate(types)]

    def fun_sound(i):
        run = check_fun_soundness(LIBRARY, terms[i][1])
        stats["fun_steps"] += run.steps

    def translation(i):
        ty, t = terms[i]
        check_translation_typing(LIBRARY, t, ty)

    def core_sound(i):
        ty, t = terms[i]
        c = compile_closed(LIBRARY, t)
        stats["core_steps"] += check_core_soundness(c.program, c.producer, ty).steps

    stats = {"fun_steps": 0, "core_steps": 0}
    p, f = suite(fun_sound, SUITE_TERMS)
    rate_check(rep, "Fun progress and weak preservation", p, SUITE_TERMS, f, SUITE_REQUIRED_RATE)
    p, f = suite(translation, SUITE_TERMS)
    rate_check(rep, "translation typechecks at source type", p, SUITE_TERMS, f, SUITE_REQUIRED_RATE)
    p, f = suite(core_sound, SUITE_TERMS)
    rate_check(rep, "focused Core progress and preservation", p, SUITE_TERMS, f, SUITE_REQUIRED_RATE)
    dt = time.perf_counter() - t0
    rep.add("suite time", dt < SUITE_SECONDS,
            f"{dt:.1f}s, {stats['fun_steps']} Fun steps, {stats['core_steps']} Core steps")
    return rep


def criterion_4() -> Report:
    rep = Report()
    # seeds offset from criterion 3 so the two samples are independent
    p, f = suite(lambda s: check_agreement(
        LIBRARY, gen_typed_term(10**6 + s, ty=Int, depth=SUITE_MAX_DEPTH), AGREEMENT_FUEL),
        AGREEMENT_TERMS)
    rate_check(rep, "Fun and Core agree", p, AGREEMENT_TERMS, f, AGREEMENT_REQUIRED_RATE)
    return rep


# -- criterion 5 -----------------------------------------------------------------------

CASE_OF_CASE = ("case (case e1 of { Nil => e2, Cons(u, us) => e3 }) of "
                "{ Nil => e4, Cons(w, ws) => e5 }")
CASE_DISTRIBUTED = ("case e1 of { Nil => case e2 of { Nil => e4, Cons(w, ws) => e5 }, "
                    "Cons(u, us) => case e3 of { Nil => e4, Cons(w, ws) => e5 } }")
CASE_OF_CASE_CORE = ("mu a. < mu b. < e1 | case { Nil => < e2 | b >, Cons(u, us) => < e3 | b > } > "
                     "| case { Nil => < e4 | a >, Cons(w, ws) => < e5 | a > } >")


def criterion_5() -> Report:
    rep = Report()
    p1 = translate_term(parse_term(CASE_OF_CASE), FreshSupply())
    p2 = translate_term(parse_term(CASE_DISTRIBUTED), FreshSupply())
    rep.add("translation matches", alpha_eq(p1, parse_producer(CASE_OF_CASE_CORE)))
    s1, s2 = simplify(Cut(p1, Covar(STAR))), simplify(Cut(p2, Covar(STAR)))
    rep.add("simplified statements alpha-equal", alpha_eq(s1, s2), f"{s1} vs {s2}")
    return rep


# -- criterion 6 -----------------------------------------------------------------------

S1 = "+(1, 2; b)"  # mentions neither x nor a
S2 = "< x | star >"
CRITICAL = f"< mu b. {S1} | mu~ x. {S2} >"
ETA_FN = f"cocase {{ ap(x; a) => < mu b. {S1} | ap(x; a) > }}"
ETA = f"< {ETA_FN} | mu~ x. {S2} >"
EXPECTED = [
    (CRITICAL, CBV, "mu", f"+(1, 2; mu~ x. {S2})"),
    (CRITICAL, CBN, "mutilde", f"< mu b. {S1} | star >"),
    (ETA, CBV, "mutilde", f"< {ETA_FN} | star >"),
    (ETA, CBN, "mutilde", f"< {ETA_FN} | star >"),
]


def criterion_6() -> Report:
    rep = Report()
    for src, strategy, rule, expected in EXPECTED:
        out = step_stmt(CoreProgram(), parse_statement(src), strategy)
        ok = isinstance(out, Stepped) and out.rule == rule and alpha_eq(out.stmt, parse_statement(expected))
        label = "critical pair" if src == CRITICAL else "eta"
        rep.add(f"{label} {strategy}", ok, str(out))
    return rep


# -- criterion 7 -----------------------------------------------------------------------


def criterion_7() -> Report:
    rep = Report()
    r = evaluate(LIBRARY, parse_term("label a { 5 }"))
    rep.add("label a {5}", r.final == FunLit(5), pretty_term(r.final))
    r = evaluate(LIBRARY, parse_term("label a { goto(3; a) + 1 }"))
    rep.add("label a { goto(3;a) + 1 }", r.final == FunLit(3), pretty_term(r.final))
    P = parse_program((PROGRAMS / "mult.fun").read_text())
    r = evaluate(P, P.main, trace=True)
    rules = r.rules()
    zero = next((i for i, s in enumerate(r.trace) if s.rule == "ifz" and s.term.startswith("1 * goto(0;")), None)
    ok = r.final == FunLit(0) and zero is not None and "binop" not in rules[zero:]
    rep.add("mult([1,0,5]) short-circuits", ok, " ".join(rules))
    return rep


CRITERIA = {
    1: ("golden evaluations", criterion_1),
    2: ("translation goldens", criterion_2),
    3: ("theorem suites", criterion_3),
    4: ("semantic agreement", criterion_4),
    5: ("case-of-case", criterion_5),
    6: ("cbv/cbn strategy split", criterion_6),
    7: ("label/goto semantics", criterion_7),
}


def run_criterion(n: int) -> Report:
    title, fn = CRITERIA[n]
    rep = fn()
    detail = rep.summary() if rep.ok else "; ".join(rep.failures())
    RESULTS[n] = (rep.ok, f"criterion {n} ({title}): {detail}")
    return rep


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    rep = run_criterion(n)
    assert rep.ok, rep.failures()


def result_lines() -> list[str]:
    return [f"{'PASS' if ok else 'FAIL'}  {text}" for _, (ok, text) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        run_criterion(n)
        print(result_lines()[-1])
