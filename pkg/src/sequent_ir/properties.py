"""Executable forms of the metatheory, checked on concrete terms.

Each ``check_*`` function raises ``PropertyViolation`` with a readable
message when the property fails for the given input, and otherwise returns
a small summary that callers can aggregate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import eval as core_eval
from .core.parser import pretty_core
from .core.syntax import (
    CoreProgram, Covar, Cut, Lit as CoreLit, Producer, Statement, all_names, program_names,
)
from .core.typing import check_producer, check_statement, star_context
from .focusing import focus_producer, focus_program, is_focused, simplify, simplify_program
from .fun import eval as fun_eval
from .fun.parser import pretty_term
from .fun.syntax import Lit, Program, Term
from .fun.typing import infer
from .names import STAR, FreshSupply
from .translate import translate_closed
from .types import EMPTY, Type, TypeCheckError


class PropertyViolation(AssertionError):
    pass


@dataclass
class FunRun:
    steps: int
    value: Term
    rules: list[str]


def check_fun_soundness(P: Program, t: Term, max_steps: int = 100_000) -> FunRun:
    """Progress and weak preservation along the whole reduction of ``t``."""
    try:
        infer(EMPTY, P, t, default_unresolved=True)
    except TypeCheckError as e:
        raise PropertyViolation(f"input is ill-typed: {e}")
    rules = []
    for i in range(max_steps):
        out = fun_eval.step(P, t)
        match out:
            case fun_eval.IsValue():
                return FunRun(i, t, rules)
            case fun_eval.Stuck(reason, _):
                raise PropertyViolation(f"progress fails after {i} steps ({reason}): {pretty_term(t)}")
        t = out.term
        rules.append(out.rule)
        try:
            infer(EMPTY, P, t, default_unresolved=True)
        except TypeCheckError as e:
            raise PropertyViolation(f"preservation fails after rule {out.rule}: {e}: {pretty_term(t)}")
    raise PropertyViolation(f"no value within {max_steps} steps")


@dataclass
class Compiled:
    program: CoreProgram
    producer: Producer


def compile_closed(P: Program, t: Term, focus: bool = True, simplified: bool = False) -> Compiled:
    prog, p = translate_closed(P, t)
    if focus:
        fresh = FreshSupply()
        fresh.reserve(program_names(prog) | all_names(p))
        prog = focus_program(prog, fresh)
        p = focus_producer(p, fresh)
    if simplified:
        prog = simplify_program(prog)
    return Compiled(prog, p)


def check_translation_typing(P: Program, t: Term, ty: Type) -> Compiled:
    """The translation of a term of type ``ty`` is a producer of type ``ty``."""
    c = compile_closed(P, t, focus=False)
    try:
        check_producer(EMPTY, c.program, c.producer, ty)
    except TypeCheckError as e:
        raise PropertyViolation(f"translation is ill-typed at {ty}: {e}: {pretty_core(c.producer)}")
    return c


@dataclass
class CoreRun:
    steps: int
    final: Statement


def check_core_soundness(prog: CoreProgram, p: Producer, ty: Type,
                         max_steps: int = 100_000) -> CoreRun:
    """Progress and preservation for ``< p | star >`` with ``p`` focused."""
    s: Statement = Cut(p, Covar(STAR))
    if not is_focused(s):
        raise PropertyViolation("input statement is not focused")
    ctx = star_context(ty)
    try:
        check_statement(ctx, prog, s)
    except TypeCheckError as e:
        raise PropertyViolation(f"input statement is ill-typed: {e}")
    for i in range(max_steps):
        out = core_eval.step_stmt(prog, s)
        match out:
            case core_eval.Terminal():
                return CoreRun(i, s)
            case core_eval.Stuck(reason, _):
                raise PropertyViolation(f"progress fails after {i} steps ({reason}): {pretty_core(s)}")
        s = out.stmt
        try:
            check_statement(ctx, prog, s)
        except TypeCheckError as e:
            raise PropertyViolation(f"preservation fails after rule {out.rule}: {e}: {pretty_core(s)}")
    raise PropertyViolation(f"no terminal statement within {max_steps} steps")


@dataclass
class Agreement:
    fun_value: int
    core_value: int
    fun_steps: int
    core_steps: int


def check_agreement(P: Program, t: Term, fuel: int = 100_000) -> Agreement:
    """An Int-typed term and its focused, simplified translation compute the same number."""
    fr = fun_eval.evaluate(P, t, fuel)
    if not fr.ok or not isinstance(fr.final, Lit):
        raise PropertyViolation(f"Fun run ended with {fr.status} ({fr.reason}): {pretty_term(fr.final)}")
    c = compile_closed(P, t, focus=True, simplified=True)
    s = simplify(Cut(c.producer, Covar(STAR)))
    cr = core_eval.eval_stmt(c.program, s, fuel=fuel)
    v = core_eval.result_value(cr)
    if not isinstance(v, CoreLit):
        raise PropertyViolation(f"Core run ended with {cr.status} ({cr.reason}): {pretty_core(cr.final)}")
    if v.value != fr.final.value:
        raise PropertyViolation(f"Fun gives {fr.final.value} but Core gives {v.value}")
    return Agreement(fr.final.value, v.value, fr.steps, cr.steps)
