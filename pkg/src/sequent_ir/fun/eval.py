"""Small-step call-by-value evaluation of Fun via evaluation contexts.

``label`` reduces as soon as it surfaces, capturing the surrounding context
as a ``Reified`` target; ``goto`` to a reified context discards the current
context and plugs the value into the captured one.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..trace import FUEL, OK, STUCK, RunResult, TraceStep
from .syntax import (
    App, AppL, AppR, Ascribe, BinOp, BinOpL, BinOpR, Call, CallCC, CallFrame, Case,
    CaseFrame, Cocase, Covar, Ctor, CtorFrame, Dtor, DtorFrame, EvalContext, FelleisenC,
    Goto, GotoFrame, IfZ, IfZFrame, Label, LabelC, Lam, Let, LetCC, LetFrame, Lit, Program,
    Reified, Term, Var, is_value, plug, subst,
)


@dataclass(frozen=True)
class Stepped:
    term: Term
    rule: str


@dataclass(frozen=True)
class IsValue:
    pass


@dataclass(frozen=True)
class Stuck:
    reason: str
    term: Term | None = None


StepOutcome = Stepped | IsValue | Stuck


def _first_non_value(args) -> int | None:
    for i, a in enumerate(args):
        if not is_value(a):
            return i
    return None


def decompose(t: Term) -> tuple[EvalContext, Term] | None:
    """Split ``t`` into (context, redex); ``None`` when ``t`` is a value.

    The redex is the innermost non-value in evaluation position whose own
    evaluation positions all hold values. It need not be reducible: a free
    variable or an ill-typed redex comes back as is and ``step`` reports it.
    """
    if is_value(t):
        return None
    frames: list = []
    while True:
        match t:
            case BinOp(op, l, r) if not is_value(l):
                frames.append(BinOpL(op, r))
                t = l
            case BinOp(op, l, r) if not is_value(r):
                frames.append(BinOpR(l, op))
                t = r
            case IfZ(c, a, b) if not is_value(c):
                frames.append(IfZFrame(a, b))
                t = c
            case Let(x, bound, body, annot) if not is_value(bound):
                frames.append(LetFrame(x, body, annot))
                t = bound
            case Call(f, args, coargs) if (i := _first_non_value(args)) is not None:
                frames.append(CallFrame(f, args[:i], args[i + 1:], coargs))
                t = args[i]
            case Ctor(k, args) if (i := _first_non_value(args)) is not None:
                frames.append(CtorFrame(k, args[:i], args[i + 1:]))
                t = args[i]
            case Case(scr, clauses) if not is_value(scr):
                frames.append(CaseFrame(clauses))
                t = scr
            case Dtor(scr, d) if not is_value(scr):
                frames.append(DtorFrame(d))
                t = scr
            case App(f, a) if not is_value(f):
                frames.append(AppL(a))
                t = f
            case App(f, a) if not is_value(a):
                frames.append(AppR(f))
                t = a
            case Goto(arg, k) if not is_value(arg):
                frames.append(GotoFrame(k))
                t = arg
            case _:
                return tuple(frames), t


def _arith(op: str, a: int, b: int) -> int:
    match op:
        case "+":
            return a + b
        case "-":
            return a - b
        case "*":
            return a * b
    raise ValueError(op)


def _contract(P: Program, frames: EvalContext, r: Term) -> StepOutcome:
    def here(new: Term, rule: str) -> Stepped:
        return Stepped(plug(frames, new), rule)

    match r:
        case BinOp(op, Lit(a), Lit(b)):
            return here(Lit(_arith(op, a, b)), "binop")
        case IfZ(Lit(n), then, else_):
            return here(then if n == 0 else else_, "ifz")
        case Let(x, v, body, _):
            return here(subst(body, {x: v}), "let")
        case Call(f, args, coargs):
            d = P.lookup(f)
            if d is None:
                return Stuck(f"call to undefined function {f}", r)
            if len(args) != len(d.params) or len(coargs) != len(d.coparams):
                return Stuck(f"arity mismatch in call to {f}", r)
            vmap = {x: a for (x, _), a in zip(d.params, args)}
            cmap = {a: k for (a, _), k in zip(d.coparams, coargs)}
            return here(subst(d.body, vmap, cmap), "call")
        case Case(Ctor(k, args), clauses):
            for cl in clauses:
                if cl.ctor == k and len(cl.binders) == len(args):
                    return here(subst(cl.body, dict(zip(cl.binders, args))), "case")
            return Stuck(f"no clause for constructor {k}", r)
        case Dtor(Cocase(clauses), d):
            for cl in clauses:
                if cl.dtor == d:
                    return here(cl.body, "cocase")
            return Stuck(f"no clause for destructor {d}", r)
        case App(Lam(x, body, _), v):
            return here(subst(body, {x: v}), "beta")
        case Label(a, body):
            return here(subst(body, cmap={a: Reified(frames)}), "label")
        case Goto(v, Reified(target)):
            return Stepped(plug(target, v), "goto")
        case Goto(_, Covar(a)):
            return Stuck(f"goto to unbound label {a}", r)
        case Ascribe(inner, _):
            return here(inner, "ascribe")
        case Var(x):
            return Stuck(f"free variable {x}", r)
        case LetCC() | CallCC() | FelleisenC() | LabelC():
            return Stuck(f"{type(r).__name__} has no Fun reduction rule", r)
    return Stuck("ill-typed redex", r)


def step(P: Program, t: Term) -> StepOutcome:
    d = decompose(t)
    if d is None:
        return IsValue()
    return _contract(P, *d)


def evaluate(P: Program, t: Term, fuel: int = 100_000, trace: bool = False) -> RunResult:
    """Iterate ``step`` at most ``fuel`` times."""
    from .parser import pretty_term

    log: list[TraceStep] = []
    for i in range(fuel + 1):
        out = step(P, t)
        match out:
            case IsValue():
                return RunResult(OK, t, i, log)
            case Stuck(reason, _):
                return RunResult(STUCK, t, i, log, reason)
        if i == fuel:
            break
        t = out.term
        if trace:
            log.append(TraceStep(i, out.rule, pretty_term(t)))
    return RunResult(FUEL, t, fuel, log, "fuel exhausted")


eval = evaluate  # noqa: A001  (the public name mirrors the operation it performs)
