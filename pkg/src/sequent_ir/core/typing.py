"""Typechecking Core producers, consumers, statements and programs.

Producers and consumers are checked against a given type. A cut
``< p | c >`` needs some type shared by both sides; it is found by
unification, as are the types of unannotated definition parameters.
"""

from __future__ import annotations

from ..names import STAR
from ..types import (
    CNS, EMPTY, PRD, Arrow, Int, LPairT, ListT, PairT, StreamT, Type, TypeCheckError,
    TypingContext, Unifier,
)
from .syntax import (
    Call, Case, Clause, Cocase, Consumer, CoreDefinition, CoreProgram, Covar, Ctor, Cut,
    Dtor, IfZ, Lit, Mu, MuTilde, Op, Producer, Statement, Var,
)

LIST_CTORS = frozenset({"Nil", "Cons"})
PAIR_CTORS = frozenset({"Tup"})
STREAM_DTORS = frozenset({"hd", "tl"})
LPAIR_DTORS = frozenset({"fst", "snd"})
FUN_DTORS = frozenset({"ap"})


class _Checker:
    def __init__(self, P: CoreProgram):
        self.P = P
        self.u = Unifier()
        self.sigs: dict[str, tuple[tuple[Type, ...], tuple[Type, ...]]] = {}
        for d in P.definitions:
            self.sigs[d.name] = (
                tuple(ty if ty is not None else self.u.fresh() for _, ty in d.params),
                tuple(ty if ty is not None else self.u.fresh() for _, ty in d.coparams),
            )

    def unify(self, expected: Type, found: Type, n) -> None:
        self.u.unify(expected, found, n)

    def _clauses(self, n, clauses: tuple[Clause, ...], shapes, what: str):
        names = frozenset(cl.name for cl in clauses)
        if len(names) != len(clauses) or names not in shapes:
            allowed = " or ".join("{" + ", ".join(sorted(s)) + "}" for s in shapes)
            raise TypeCheckError("mismatch", f"{what} needs exactly the clauses {allowed}", n)
        return names

    def _bind(self, ctx: TypingContext, cl: Clause, vtys, ctys, n) -> TypingContext:
        if len(cl.vars) != len(vtys) or len(cl.covars) != len(ctys):
            raise TypeCheckError(
                "arity", f"clause {cl.name} binds {len(vtys)} variable(s) and "
                f"{len(ctys)} covariable(s)", n)
        for x, ty in zip(cl.vars, vtys):
            ctx = ctx.prd(x, ty)
        for a, ty in zip(cl.covars, ctys):
            ctx = ctx.cns(a, ty)
        return ctx

    def producer(self, ctx: TypingContext, p: Producer, ty: Type) -> None:
        u = self.u
        match p:
            case Var(x):
                found = ctx.lookup(x, PRD)
                if found is None:
                    raise TypeCheckError("unbound", f"unbound variable {x}", p)
                self.unify(ty, found, p)
            case Lit():
                self.unify(ty, Int, p)
            case Mu(a, s):
                self.statement(ctx.cns(a, ty), s)
            case Ctor("Nil", (), ()):
                self.unify(ty, ListT(u.fresh()), p)
            case Ctor("Cons", (h, t), ()):
                elem = u.fresh()
                self.unify(ty, ListT(elem), p)
                self.producer(ctx, h, elem)
                self.producer(ctx, t, ListT(elem))
            case Ctor("Tup", (a, b), ()):
                l, r = u.fresh(), u.fresh()
                self.unify(ty, PairT(l, r), p)
                self.producer(ctx, a, l)
                self.producer(ctx, b, r)
            case Ctor(k, ps, cs):
                raise TypeCheckError("arity", f"constructor {k} with {len(ps)};{len(cs)} arguments", p)
            case Cocase(clauses):
                names = self._clauses(p, clauses, (STREAM_DTORS, LPAIR_DTORS, FUN_DTORS), "cocase")
                if names == STREAM_DTORS:
                    elem = u.fresh()
                    self.unify(ty, StreamT(elem), p)
                    shape = {"hd": ((), (elem,)), "tl": ((), (StreamT(elem),))}
                elif names == LPAIR_DTORS:
                    a, b = u.fresh(), u.fresh()
                    self.unify(ty, LPairT(a, b), p)
                    shape = {"fst": ((), (a,)), "snd": ((), (b,))}
                else:
                    a, b = u.fresh(), u.fresh()
                    self.unify(ty, Arrow(a, b), p)
                    shape = {"ap": ((a,), (b,))}
                for cl in clauses:
                    self.statement(self._bind(ctx, cl, *shape[cl.name], p), cl.body)
            case _:
                raise TypeError(f"not a producer: {p!r}")

    def consumer(self, ctx: TypingContext, c: Consumer, ty: Type) -> None:
        u = self.u
        match c:
            case Covar(a):
                found = ctx.lookup(a, CNS)
                if found is None:
                    raise TypeCheckError("unbound", f"unbound covariable {a}", c)
                self.unify(ty, found, c)
            case MuTilde(x, s):
                self.statement(ctx.prd(x, ty), s)
            case Case(clauses):
                names = self._clauses(c, clauses, (LIST_CTORS, PAIR_CTORS), "case")
                if names == LIST_CTORS:
                    elem = u.fresh()
                    self.unify(ty, ListT(elem), c)
                    shape = {"Nil": ((), ()), "Cons": ((elem, ListT(elem)), ())}
                else:
                    a, b = u.fresh(), u.fresh()
                    self.unify(ty, PairT(a, b), c)
                    shape = {"Tup": ((a, b), ())}
                for cl in clauses:
                    self.statement(self._bind(ctx, cl, *shape[cl.name], c), cl.body)
            case Dtor("hd" | "tl" as d, (), (k,)):
                elem = u.fresh()
                self.unify(ty, StreamT(elem), c)
                self.consumer(ctx, k, elem if d == "hd" else StreamT(elem))
            case Dtor("fst" | "snd" as d, (), (k,)):
                a, b = u.fresh(), u.fresh()
                self.unify(ty, LPairT(a, b), c)
                self.consumer(ctx, k, a if d == "fst" else b)
            case Dtor("ap", (arg,), (k,)):
                a, b = u.fresh(), u.fresh()
                self.unify(ty, Arrow(a, b), c)
                self.producer(ctx, arg, a)
                self.consumer(ctx, k, b)
            case Dtor(d, ps, cs):
                raise TypeCheckError("arity", f"destructor {d} with {len(ps)};{len(cs)} arguments", c)
            case _:
                raise TypeError(f"not a consumer: {c!r}")

    def statement(self, ctx: TypingContext, s: Statement) -> None:
        match s:
            case Cut(p, c):
                ty = self.u.fresh()
                self.producer(ctx, p, ty)
                self.consumer(ctx, c, ty)
            case Op(_, a, b, c):
                self.producer(ctx, a, Int)
                self.producer(ctx, b, Int)
                self.consumer(ctx, c, Int)
            case IfZ(p, s1, s2):
                self.producer(ctx, p, Int)
                self.statement(ctx, s1)
                self.statement(ctx, s2)
            case Call(f, ps, cs):
                if f not in self.sigs:
                    raise TypeCheckError("unbound", f"undefined definition {f}", s)
                ptys, ctys = self.sigs[f]
                if len(ps) != len(ptys) or len(cs) != len(ctys):
                    raise TypeCheckError(
                        "arity", f"{f} expects {len(ptys)} argument(s) and {len(ctys)} "
                        f"covariable(s), got {len(ps)} and {len(cs)}", s)
                for p, ty in zip(ps, ptys):
                    self.producer(ctx, p, ty)
                for c, ty in zip(cs, ctys):
                    self.consumer(ctx, c, ty)
            case _:
                raise TypeError(f"not a statement: {s!r}")

    def definition(self, d: CoreDefinition) -> None:
        ptys, ctys = self.sigs[d.name]
        ctx = EMPTY
        for (x, _), ty in zip(d.params, ptys):
            ctx = ctx.prd(x, ty)
        for (a, _), ty in zip(d.coparams, ctys):
            ctx = ctx.cns(a, ty)
        try:
            self.statement(ctx, d.body)
        except TypeCheckError as e:
            raise e.in_definition(d.name)


_NO_DEFS = CoreProgram()


def check_producer(ctx: TypingContext, P: CoreProgram | None, p: Producer, ty: Type) -> None:
    _Checker(P or _NO_DEFS).producer(ctx, p, ty)


def check_consumer(ctx: TypingContext, P: CoreProgram | None, c: Consumer, ty: Type) -> None:
    _Checker(P or _NO_DEFS).consumer(ctx, c, ty)


def check_statement(ctx: TypingContext, P: CoreProgram | None, s: Statement) -> None:
    _Checker(P or _NO_DEFS).statement(ctx, s)


def check_core_program(P: CoreProgram, star_type: Type | None = None) -> None:
    """Check all definitions; main (if any) is checked with ``star`` bound as a consumer."""
    c = _Checker(P)
    for d in P.definitions:
        c.definition(d)
    if P.main is not None:
        ctx = EMPTY.cns(STAR, star_type if star_type is not None else c.u.fresh())
        c.statement(ctx, P.main)


def star_context(ty: Type, star: str = STAR) -> TypingContext:
    return EMPTY.cns(star, ty)
