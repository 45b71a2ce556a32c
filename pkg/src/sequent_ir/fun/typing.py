"""Typechecking Fun terms and programs.

Types are reconstructed by first-order unification: unannotated binders,
bare ``Nil`` and the free result type of ``goto`` get metavariables that
later constraints solve. ``infer`` refuses to guess, so a type that is
still underdetermined at the end is reported as ``cannot-infer`` unless
the caller asks for leftover metavariables to be defaulted to ``Int``.
"""

from __future__ import annotations

from ..types import (
    CNS, EMPTY, PRD, Arrow, Int, LPairT, ListT, PairT, StreamT, Type, TypeCheckError,
    TypingContext, Unifier, is_ground,
)
from .syntax import (
    HOLE, App, Ascribe, BinOp, Call, CallCC, Case, Cocase, CoTarget, Covar, Ctor,
    Definition, Dtor, EvalContext, FelleisenC, Goto, IfZ, Label, LabelC, Lam, Let, LetCC,
    Lit, Program, Reified, Term, Var, plug,
)

LIST_CTORS = frozenset({"Nil", "Cons"})
PAIR_CTORS = frozenset({"Tup"})
STREAM_DTORS = frozenset({"hd", "tl"})
LPAIR_DTORS = frozenset({"fst", "snd"})


class _Checker:
    def __init__(self, P: Program):
        self.P = P
        self.u = Unifier()

    def unify(self, expected: Type, found: Type, t: Term) -> None:
        self.u.unify(expected, found, t)

    def check(self, ctx: TypingContext, t: Term, ty: Type) -> None:
        self.unify(ty, self.synth(ctx, t), t)

    def target(self, ctx: TypingContext, k: CoTarget, ty: Type, t: Term) -> None:
        """``k`` must accept values of type ``ty``."""
        match k:
            case Covar(a):
                found = ctx.lookup(a, CNS)
                if found is None:
                    raise TypeCheckError("unbound", f"unbound covariable {a}", t)
                self.unify(found, ty, t)
            case Reified(frames):
                self.synth(ctx.prd(HOLE, ty), plug(frames, Var(HOLE)))

    def synth(self, ctx: TypingContext, t: Term) -> Type:
        u = self.u
        match t:
            case Var(x):
                ty = ctx.lookup(x, PRD)
                if ty is None:
                    raise TypeCheckError("unbound", f"unbound variable {x}", t)
                return ty
            case Lit():
                return Int
            case BinOp(_, l, r):
                self.check(ctx, l, Int)
                self.check(ctx, r, Int)
                return Int
            case IfZ(c, a, b):
                self.check(ctx, c, Int)
                ty = self.synth(ctx, a)
                self.check(ctx, b, ty)
                return ty
            case Let(x, bound, body, annot):
                ty = self.synth(ctx, bound)
                if annot is not None:
                    self.unify(annot, ty, bound)
                return self.synth(ctx.prd(x, ty), body)
            case Call(f, args, coargs):
                d = self.P.lookup(f)
                if d is None:
                    raise TypeCheckError("unbound", f"undefined function {f}", t)
                if len(args) != len(d.params) or len(coargs) != len(d.coparams):
                    raise TypeCheckError(
                        "arity",
                        f"{f} expects {len(d.params)} argument(s) and {len(d.coparams)} "
                        f"covariable(s), got {len(args)} and {len(coargs)}", t)
                for a, (_, ty) in zip(args, d.params):
                    self.check(ctx, a, ty)
                for k, (_, ty) in zip(coargs, d.coparams):
                    self.target(ctx, k, ty, t)
                return d.ret
            case Ctor("Nil", ()):
                return ListT(u.fresh())
            case Ctor("Cons", (h, tl)):
                ty = self.synth(ctx, h)
                self.check(ctx, tl, ListT(ty))
                return ListT(ty)
            case Ctor("Tup", (a, b)):
                return PairT(self.synth(ctx, a), self.synth(ctx, b))
            case Ctor(k, args):
                raise TypeCheckError("arity", f"constructor {k} applied to {len(args)} argument(s)", t)
            case Case(scr, clauses):
                return self.case(ctx, t, scr, clauses)
            case Dtor(scr, d):
                ty = self.synth(ctx, scr)
                if d in STREAM_DTORS:
                    elem = u.fresh()
                    self.unify(StreamT(elem), ty, scr)
                    return elem if d == "hd" else StreamT(elem)
                a, b = u.fresh(), u.fresh()
                self.unify(LPairT(a, b), ty, scr)
                return a if d == "fst" else b
            case Cocase(clauses):
                return self.cocase(ctx, t, clauses)
            case Lam(x, body, annot):
                dom = annot if annot is not None else u.fresh()
                return Arrow(dom, self.synth(ctx.prd(x, dom), body))
            case App(f, a):
                fty = self.synth(ctx, f)
                dom, cod = u.fresh(), u.fresh()
                self.unify(Arrow(dom, cod), fty, f)
                self.check(ctx, a, dom)
                return cod
            case Label(a, body):
                ty = u.fresh()
                self.check(ctx.cns(a, ty), body, ty)
                return ty
            case Goto(arg, k):
                self.target(ctx, k, self.synth(ctx, arg), t)
                return u.fresh()
            case Ascribe(inner, ty):
                self.check(ctx, inner, ty)
                return ty
            case LetCC() | CallCC() | FelleisenC() | LabelC():
                raise TypeCheckError("unsupported-construct",
                                     f"{type(t).__name__} has no typing rule", t)
        raise TypeError(f"not a term: {t!r}")

    def case(self, ctx, t, scr, clauses) -> Type:
        u = self.u
        ctors = frozenset(cl.ctor for cl in clauses)
        if len(ctors) != len(clauses) or ctors not in (LIST_CTORS, PAIR_CTORS):
            raise TypeCheckError(
                "mismatch", "case needs exactly the clauses {Nil, Cons} or {Tup}", t)
        if ctors == LIST_CTORS:
            elem = u.fresh()
            self.unify(ListT(elem), self.synth(ctx, scr), scr)
            binder_types = {"Nil": (), "Cons": (elem, ListT(elem))}
        else:
            a, b = u.fresh(), u.fresh()
            self.unify(PairT(a, b), self.synth(ctx, scr), scr)
            binder_types = {"Tup": (a, b)}
        result = u.fresh()
        for cl in clauses:
            tys = binder_types[cl.ctor]
            if len(cl.binders) != len(tys):
                raise TypeCheckError("arity", f"pattern {cl.ctor} binds {len(tys)} variable(s)", t)
            inner = ctx
            for x, ty in zip(cl.binders, tys):
                inner = inner.prd(x, ty)
            self.check(inner, cl.body, result)
        return result

    def cocase(self, ctx, t, clauses) -> Type:
        u = self.u
        dtors = frozenset(cl.dtor for cl in clauses)
        if len(dtors) != len(clauses) or dtors not in (STREAM_DTORS, LPAIR_DTORS):
            raise TypeCheckError(
                "mismatch", "cocase needs exactly the clauses {hd, tl} or {fst, snd}", t)
        if dtors == STREAM_DTORS:
            elem = u.fresh()
            ty = StreamT(elem)
            expect = {"hd": elem, "tl": ty}
        else:
            a, b = u.fresh(), u.fresh()
            ty = LPairT(a, b)
            expect = {"fst": a, "snd": b}
        for cl in clauses:
            self.check(ctx, cl.body, expect[cl.dtor])
        return ty

    def finish(self, ty: Type, t: Term, default_unresolved: bool) -> Type:
        if default_unresolved:
            return self.u.default(ty)
        ty = self.u.zonk(ty)
        if not is_ground(ty):
            raise TypeCheckError(
                "cannot-infer", f"type of {type(t).__name__} is underdetermined ({ty}); "
                "add an annotation or ascription", t, found=ty)
        return ty


def infer(ctx: TypingContext, P: Program, t: Term, default_unresolved: bool = False) -> Type:
    c = _Checker(P)
    return c.finish(c.synth(ctx, t), t, default_unresolved)


def check(ctx: TypingContext, P: Program, t: Term, ty: Type) -> None:
    _Checker(P).check(ctx, t, ty)


def definition_context(d: Definition) -> TypingContext:
    ctx = EMPTY
    for x, ty in d.params:
        ctx = ctx.prd(x, ty)
    for a, ty in d.coparams:
        ctx = ctx.cns(a, ty)
    return ctx


def check_definition(P: Program, d: Definition) -> None:
    try:
        _Checker(P).check(definition_context(d), d.body, d.ret)
    except TypeCheckError as e:
        raise e.in_definition(d.name)


def check_program(P: Program) -> Type | None:
    """Check every definition (all mutually visible); return main's type if present.

    Leftover metavariables in main's type are defaulted to ``Int``.
    """
    for d in P.definitions:
        check_definition(P, d)
    if P.main is None:
        return None
    return infer(EMPTY, P, P.main, default_unresolved=True)


def type_reified_context(P: Program, frames: EvalContext, ty: Type) -> Type:
    """Type of ``E[x]`` for a fresh ``x`` of type ``ty``; raises if there is none."""
    hole = plug(frames, Var(HOLE))
    return infer(EMPTY.prd(HOLE, ty), P, hole, default_unresolved=True)
