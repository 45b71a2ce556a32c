"""Static focusing of Core and the administrative-redex simplifier.

Focusing lifts every non-value argument (leftmost first) out of constructor,
destructor, operator, ``ifz`` and call positions by binding it with a
``mu~``. The simplifier then statically contracts the ``mu``/``mu~`` redexes
that the translation and focusing leave behind.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core.syntax import (
    CBV, Call, Case, Clause, Cocase, Consumer, CoreDefinition, CoreProgram, Covar, Ctor,
    Cut, Dtor, IfZ, Lit, Mu, MuTilde, Node, Op, Producer, Statement, Var, all_names,
    children, is_value, program_names, subst,
)
from .names import FreshSupply


def _first_non_value(ps) -> int | None:
    for i, p in enumerate(ps):
        if not is_value(p, CBV):
            return i
    return None


class _Focus:
    def __init__(self, fresh: FreshSupply):
        self.fresh = fresh

    def clause(self, cl: Clause) -> Clause:
        return Clause(cl.name, cl.vars, cl.covars, self.stmt(cl.body))

    def prd(self, p: Producer) -> Producer:
        match p:
            case Lit() | Var():
                return p
            case Mu(a, s):
                return Mu(a, self.stmt(s))
            case Ctor(k, ps, cs):
                i = _first_non_value(ps)
                if i is None:
                    return Ctor(k, tuple(self.prd(q) for q in ps), tuple(self.cns(c) for c in cs))
                a, x = self.fresh.covar(), self.fresh.var()
                rest = Ctor(k, ps[:i] + (Var(x),) + ps[i + 1:], cs)
                return Mu(a, Cut(self.prd(ps[i]), MuTilde(x, Cut(self.prd(rest), Covar(a)))))
            case Cocase(cls):
                return Cocase(tuple(self.clause(cl) for cl in cls))
        raise TypeError(f"not a producer: {p!r}")

    def cns(self, c: Consumer) -> Consumer:
        match c:
            case Covar():
                return c
            case MuTilde(x, s):
                return MuTilde(x, self.stmt(s))
            case Case(cls):
                return Case(tuple(self.clause(cl) for cl in cls))
            case Dtor(d, ps, cs):
                i = _first_non_value(ps)
                if i is None:
                    return Dtor(d, tuple(self.prd(q) for q in ps), tuple(self.cns(k) for k in cs))
                y, x = self.fresh.var(), self.fresh.var()
                rest = Dtor(d, ps[:i] + (Var(x),) + ps[i + 1:], cs)
                return MuTilde(y, Cut(self.prd(ps[i]), MuTilde(x, Cut(Var(y), self.cns(rest)))))
        raise TypeError(f"not a consumer: {c!r}")

    def lift(self, p: Producer, rebuild) -> Statement:
        """``< F(p) | mu~ x. F(rebuild(x)) >``."""
        x = self.fresh.var()
        return Cut(self.prd(p), MuTilde(x, self.stmt(rebuild(Var(x)))))

    def stmt(self, s: Statement) -> Statement:
        match s:
            case Cut(p, c):
                return Cut(self.prd(p), self.cns(c))
            case Op(op, a, b, c):
                if not is_value(a, CBV):
                    return self.lift(a, lambda x: Op(op, x, b, c))
                if not is_value(b, CBV):
                    return self.lift(b, lambda x: Op(op, a, x, c))
                return Op(op, self.prd(a), self.prd(b), self.cns(c))
            case IfZ(p, s1, s2):
                if not is_value(p, CBV):
                    return self.lift(p, lambda x: IfZ(x, s1, s2))
                return IfZ(self.prd(p), self.stmt(s1), self.stmt(s2))
            case Call(f, ps, cs):
                i = _first_non_value(ps)
                if i is not None:
                    return self.lift(ps[i], lambda x: Call(f, ps[:i] + (x,) + ps[i + 1:], cs))
                return Call(f, tuple(self.prd(q) for q in ps), tuple(self.cns(c) for c in cs))
        raise TypeError(f"not a statement: {s!r}")


def _supply(n: Node, fresh: FreshSupply | None) -> FreshSupply:
    return fresh if fresh is not None else FreshSupply(all_names(n))


def focus_statement(s: Statement, fresh: FreshSupply | None = None) -> Statement:
    return _Focus(_supply(s, fresh)).stmt(s)


def focus_producer(p: Producer, fresh: FreshSupply | None = None) -> Producer:
    return _Focus(_supply(p, fresh)).prd(p)


def focus_consumer(c: Consumer, fresh: FreshSupply | None = None) -> Consumer:
    return _Focus(_supply(c, fresh)).cns(c)


def focus(n: Node, fresh: FreshSupply | None = None) -> Node:
    f = _Focus(_supply(n, fresh))
    match n:
        case Producer():
            return f.prd(n)
        case Consumer():
            return f.cns(n)
    return f.stmt(n)


def focus_program(P: CoreProgram, fresh: FreshSupply | None = None) -> CoreProgram:
    f = _Focus(fresh if fresh is not None else FreshSupply(program_names(P)))
    defs = tuple(CoreDefinition(d.name, d.params, d.coparams, f.stmt(d.body)) for d in P.definitions)
    return CoreProgram(defs, f.stmt(P.main) if P.main is not None else None)


def is_focused(n: Node) -> bool:
    """Every argument position that evaluation requires to be a value holds a value."""
    match n:
        case Ctor(_, ps, _) | Dtor(_, ps, _) | Call(_, ps, _):
            if not all(is_value(p, CBV) for p in ps):
                return False
        case Op(_, a, b, _):
            if not (is_value(a, CBV) and is_value(b, CBV)):
                return False
        case IfZ(p, _, _):
            if not is_value(p, CBV):
                return False
    return all(is_focused(k) for k in children(n))


def is_focused_program(P: CoreProgram) -> bool:
    return all(is_focused(d.body) for d in P.definitions) and (P.main is None or is_focused(P.main))


# -- simplification ----------------------------------------------------------------


@dataclass
class SimplifyReport:
    reductions: int = 0
    exhausted: bool = False


def _is_redex(s: Statement) -> bool:
    match s:
        case Cut(Mu(), _):
            return True
        case Cut(p, MuTilde()):
            return is_value(p, CBV)
    return False


class _Simplifier:
    def __init__(self, fuel: int):
        self.fuel = fuel
        self.report = SimplifyReport()

    def _spend(self) -> bool:
        if self.report.reductions >= self.fuel:
            self.report.exhausted = True
            return False
        self.report.reductions += 1
        return True

    def clause(self, cl: Clause) -> Clause:
        return Clause(cl.name, cl.vars, cl.covars, self.stmt(cl.body))

    def prd(self, p: Producer) -> Producer:
        match p:
            case Mu(a, s):
                return Mu(a, self.stmt(s))
            case Ctor(k, ps, cs):
                return Ctor(k, tuple(self.prd(q) for q in ps), tuple(self.cns(c) for c in cs))
            case Cocase(cls):
                return Cocase(tuple(self.clause(cl) for cl in cls))
        return p

    def cns(self, c: Consumer) -> Consumer:
        match c:
            case MuTilde(x, s):
                return MuTilde(x, self.stmt(s))
            case Dtor(d, ps, cs):
                return Dtor(d, tuple(self.prd(q) for q in ps), tuple(self.cns(k) for k in cs))
            case Case(cls):
                return Case(tuple(self.clause(cl) for cl in cls))
        return c

    def top(self, s: Statement) -> Statement:
        """Contract administrative redexes at the root until none is left."""
        while isinstance(s, Cut):
            match s:
                case Cut(Mu(a, body), c):
                    if not self._spend():
                        return s
                    s = subst(body, cmap={a: c})
                case Cut(p, MuTilde(x, body)) if is_value(p, CBV):
                    if not self._spend():
                        return s
                    s = subst(body, {x: p})
                case _:
                    return s
        return s

    def stmt(self, s: Statement) -> Statement:
        while True:
            s = self.top(s)
            if self.report.exhausted:
                return s
            match s:
                case Cut(p, c):
                    out = Cut(self.prd(p), self.cns(c))
                case Op(op, a, b, c):
                    out = Op(op, self.prd(a), self.prd(b), self.cns(c))
                case IfZ(p, s1, s2):
                    out = IfZ(self.prd(p), self.stmt(s1), self.stmt(s2))
                case Call(f, ps, cs):
                    out = Call(f, tuple(self.prd(q) for q in ps), tuple(self.cns(c) for c in cs))
                case _:
                    raise TypeError(f"not a statement: {s!r}")
            if self.report.exhausted or not _is_redex(out):
                return out
            s = out


class SimplifyFuelWarning(UserWarning):
    pass


def simplify_report(s: Statement, fuel: int = 10_000) -> tuple[Statement, SimplifyReport]:
    simp = _Simplifier(fuel)
    return simp.stmt(s), simp.report


def simplify(s: Statement, fuel: int = 10_000) -> Statement:
    """Contract administrative redexes everywhere.

    ``< mu a. s | c >`` becomes ``s[c/a]`` and ``< v | mu~ x. s >`` becomes
    ``s[v/x]``, mu first. If ``fuel`` reductions are not enough the partially
    simplified statement is returned and a ``SimplifyFuelWarning`` is issued.
    """
    out, report = simplify_report(s, fuel)
    if report.exhausted:
        warnings.warn(f"simplification stopped after {fuel} reductions", SimplifyFuelWarning,
                      stacklevel=2)
    return out


def simplify_program(P: CoreProgram, fuel: int = 10_000) -> CoreProgram:
    defs = tuple(CoreDefinition(d.name, d.params, d.coparams, simplify(d.body, fuel))
                 for d in P.definitions)
    return CoreProgram(defs, simplify(P.main, fuel) if P.main is not None else None)
