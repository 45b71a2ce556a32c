"""Small-step statement machine for Core, call-by-value or call-by-name."""

from __future__ import annotations

from dataclasses import dataclass

from ..names import STAR
from ..trace import FUEL, OK, STUCK, RunResult, TraceStep
from ..types import Type
from .syntax import (
    CBN, CBV, Call, Case, Cocase, CoreProgram, Covar, Ctor, Cut, Dtor, IfZ, Lit, Mu,
    MuTilde, Op, Producer, Statement, Var, free_covars, is_covalue, is_value, subst,
)


@dataclass(frozen=True)
class Stepped:
    stmt: Statement
    rule: str


@dataclass(frozen=True)
class Terminal:
    value: Producer


@dataclass(frozen=True)
class Stuck:
    reason: str
    stmt: Statement | None = None


CoreOutcome = Stepped | Terminal | Stuck

UNFOCUSED = "unfocused argument"


def _arith(op: str, a: int, b: int) -> int:
    match op:
        case "+":
            return a + b
        case "-":
            return a - b
        case "*":
            return a * b
    raise ValueError(op)


def _select(clauses, name: str, nv: int, nc: int):
    for cl in clauses:
        if cl.name == name and len(cl.vars) == nv and len(cl.covars) == nc:
            return cl
    return None


def _not_int(p: Producer, where: str, s: Statement) -> Stuck:
    match p:
        case Var(x):
            return Stuck(f"free variable {x} in {where}", s)
        case Mu():
            return Stuck(f"{UNFOCUSED} in {where}", s)
    return Stuck(f"ill-typed: {where} needs an integer", s)


def _cut(P: CoreProgram, s: Cut, strategy: str, star: str) -> CoreOutcome:
    p, c = s.producer, s.consumer
    if strategy == CBN and isinstance(c, MuTilde):
        return Stepped(subst(c.body, {c.var: p}), "mutilde")
    if isinstance(p, Mu) and is_covalue(c, strategy):
        return Stepped(subst(p.body, cmap={p.covar: c}), "mu")
    if isinstance(c, MuTilde):
        if is_value(p, strategy):
            return Stepped(subst(c.body, {c.var: p}), "mutilde")
        return Stuck(f"{UNFOCUSED} in constructor on the left of a mu~", s)
    match p, c:
        case Ctor(k, ps, cs), Case(clauses):
            if not all(is_value(a, strategy) for a in ps):
                return Stuck(f"{UNFOCUSED} in constructor {k}", s)
            cl = _select(clauses, k, len(ps), len(cs))
            if cl is None:
                return Stuck(f"no clause for constructor {k}", s)
            return Stepped(subst(cl.body, dict(zip(cl.vars, ps)), dict(zip(cl.covars, cs))), "case")
        case Cocase(clauses), Dtor(d, ps, cs):
            if not all(is_value(a, strategy) for a in ps):
                return Stuck(f"{UNFOCUSED} in destructor {d}", s)
            cl = _select(clauses, d, len(ps), len(cs))
            if cl is None:
                return Stuck(f"no clause for destructor {d}", s)
            return Stepped(subst(cl.body, dict(zip(cl.vars, ps)), dict(zip(cl.covars, cs))), "cocase")
        case _, Covar(a) if a == star:
            if not is_value(p, strategy):
                return Stuck(f"{UNFOCUSED} in final result", s)
            if star in free_covars(p):
                return Stuck(f"result value still mentions {star}", s)
            return Terminal(p)
        case _, Covar(a):
            return Stuck(f"free covariable {a}", s)
        case Var(x), _:
            return Stuck(f"free variable {x}", s)
    return Stuck(f"ill-typed cut of {type(p).__name__} against {type(c).__name__}", s)


def step_stmt(P: CoreProgram, s: Statement, strategy: str = CBV, star: str = STAR) -> CoreOutcome:
    if strategy not in (CBV, CBN):
        raise ValueError(f"unknown strategy {strategy!r}")
    match s:
        case Cut():
            return _cut(P, s, strategy, star)
        case Op(op, Lit(a), Lit(b), c):
            return Stepped(Cut(Lit(_arith(op, a, b)), c), "binop")
        case Op(op, Lit(), b, _):
            return _not_int(b, f"operand of {op}", s)
        case Op(op, a, _, _):
            return _not_int(a, f"operand of {op}", s)
        case IfZ(Lit(n), s1, s2):
            return Stepped(s1 if n == 0 else s2, "ifz")
        case IfZ(p, _, _):
            return _not_int(p, "ifz condition", s)
        case Call(f, ps, cs):
            d = P.lookup(f)
            if d is None:
                return Stuck(f"call to undefined definition {f}", s)
            if len(ps) != len(d.params) or len(cs) != len(d.coparams):
                return Stuck(f"arity mismatch in call to {f}", s)
            if not all(is_value(p, strategy) for p in ps):
                return Stuck(f"{UNFOCUSED} in call to {f}", s)
            vmap = {x: p for (x, _), p in zip(d.params, ps)}
            cmap = {a: c for (a, _), c in zip(d.coparams, cs)}
            return Stepped(subst(d.body, vmap, cmap), "call")
    raise TypeError(f"not a statement: {s!r}")


def eval_stmt(P: CoreProgram, s: Statement, strategy: str = CBV, fuel: int = 100_000,
              trace: bool = False, star: str = STAR) -> RunResult:
    """Run ``s`` until it is terminal, stuck, or ``fuel`` steps have been taken.

    On success ``final`` is the terminal statement ``< v | star >``.
    """
    from .parser import pretty_core

    log: list[TraceStep] = []
    for i in range(fuel + 1):
        out = step_stmt(P, s, strategy, star)
        match out:
            case Terminal():
                return RunResult(OK, s, i, log)
            case Stuck(reason, _):
                return RunResult(STUCK, s, i, log, reason)
        if i == fuel:
            break
        s = out.stmt
        if trace:
            log.append(TraceStep(i, out.rule, pretty_core(s)))
    return RunResult(FUEL, s, fuel, log, "fuel exhausted")


def run_producer(P: CoreProgram, p: Producer, ty: Type | None = None, strategy: str = CBV,
                 fuel: int = 100_000, trace: bool = False, star: str = STAR) -> RunResult:
    """Evaluate ``< p | star >``; when ``ty`` is given the statement is typechecked first."""
    if star in free_covars(p):
        raise ValueError(f"{star} must not occur free in the producer")
    s = Cut(p, Covar(star))
    if ty is not None:
        from .typing import check_statement, star_context

        check_statement(star_context(ty, star), P, s)
    return eval_stmt(P, s, strategy, fuel, trace, star)


def result_value(r: RunResult) -> Producer | None:
    if r.ok and isinstance(r.final, Cut):
        return r.final.producer
    return None
