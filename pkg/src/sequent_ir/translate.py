"""Compositional translation of Fun terms and programs into Core.

Every Fun term becomes a Core producer. Each fresh covariable is drawn from
a ``FreshSupply`` that reserves all source names, so translated binders never
capture. Label names are kept as they are in the source.
"""

from __future__ import annotations

from .core import syntax as C
from .fun import syntax as F
from .names import STAR, FreshSupply


def _ap_discarding(fresh: FreshSupply, alpha: str) -> C.Cocase:
    """``cocase { ap(x; b) => < x | alpha > }``: a continuation reified as a function."""
    x, beta = fresh.var(), fresh.covar()
    return C.Cocase((C.Clause("ap", (x,), (beta,), C.Cut(C.Var(x), C.Covar(alpha))),))


def translate_term(t: F.Term, fresh: FreshSupply) -> C.Producer:
    tr = lambda u: translate_term(u, fresh)  # noqa: E731
    match t:
        case F.Var(x):
            return C.Var(x)
        case F.Lit(n):
            return C.Lit(n)
        case F.BinOp(op, l, r):
            a = fresh.covar()
            return C.Mu(a, C.Op(op, tr(l), tr(r), C.Covar(a)))
        case F.IfZ(c, then, else_):
            a = fresh.covar()
            return C.Mu(a, C.IfZ(tr(c), C.Cut(tr(then), C.Covar(a)), C.Cut(tr(else_), C.Covar(a))))
        case F.Let(x, bound, body, _):
            a = fresh.covar()
            return C.Mu(a, C.Cut(tr(bound), C.MuTilde(x, C.Cut(tr(body), C.Covar(a)))))
        case F.Call(f, args, coargs):
            a = fresh.covar()
            cs = tuple(C.Covar(_covar_name(k)) for k in coargs)
            return C.Mu(a, C.Call(f, tuple(tr(u) for u in args), cs + (C.Covar(a),)))
        case F.Ctor(k, args):
            return C.Ctor(k, tuple(tr(u) for u in args))
        case F.Case(scr, clauses):
            a = fresh.covar()
            cls = tuple(C.Clause(cl.ctor, cl.binders, (), C.Cut(tr(cl.body), C.Covar(a)))
                        for cl in clauses)
            return C.Mu(a, C.Cut(tr(scr), C.Case(cls)))
        case F.Dtor(scr, d):
            a = fresh.covar()
            return C.Mu(a, C.Cut(tr(scr), C.Dtor(d, (), (C.Covar(a),))))
        case F.Cocase(clauses):
            cls = []
            for cl in clauses:
                a = fresh.covar()
                cls.append(C.Clause(cl.dtor, (), (a,), C.Cut(tr(cl.body), C.Covar(a))))
            return C.Cocase(tuple(cls))
        case F.Lam(x, body, _):
            a = fresh.covar()
            return C.Cocase((C.Clause("ap", (x,), (a,), C.Cut(tr(body), C.Covar(a))),))
        case F.App(f, arg):
            a = fresh.covar()
            return C.Mu(a, C.Cut(tr(f), C.Dtor("ap", (tr(arg),), (C.Covar(a),))))
        case F.Label(a, body):
            return C.Mu(a, C.Cut(tr(body), C.Covar(a)))
        case F.Goto(arg, k):
            b = fresh.covar()
            return C.Mu(b, C.Cut(tr(arg), C.Covar(_covar_name(k))))
        case F.LetCC(k, body):
            a = fresh.covar()
            return C.Mu(a, C.Cut(_ap_discarding(fresh, a), C.MuTilde(k, C.Cut(tr(body), C.Covar(a)))))
        case F.CallCC(f):
            a = fresh.covar()
            k = _ap_discarding(fresh, a)
            return C.Mu(a, C.Cut(tr(f), C.Dtor("ap", (k,), (C.Covar(a),))))
        case F.FelleisenC(f):
            a = fresh.covar()
            k = _ap_discarding(fresh, a)
            return C.Mu(a, C.Cut(tr(f), C.Dtor("ap", (k,), (C.Covar(STAR),))))
        case F.LabelC(a, body):
            return C.Mu(a, C.Cut(tr(body), C.Covar(STAR)))
        case F.Ascribe(inner, _):
            return tr(inner)
    raise TypeError(f"not a Fun term: {t!r}")


def _covar_name(k: F.CoTarget) -> str:
    if isinstance(k, F.Covar):
        return k.name
    raise ValueError("reified evaluation contexts only arise at run time and cannot be translated")


def translate_def(d: F.Definition, fresh: FreshSupply) -> C.CoreDefinition:
    a = fresh.covar()
    body = C.Cut(translate_term(d.body, fresh), C.Covar(a))
    return C.CoreDefinition(d.name, d.params, d.coparams + ((a, d.ret),), body)


def supply_for(P: F.Program) -> FreshSupply:
    return FreshSupply(P.names())


def translate_program(P: F.Program, fresh: FreshSupply | None = None) -> C.CoreProgram:
    """Translate every definition; main becomes ``< [[main]] | star >``."""
    fresh = fresh or supply_for(P)
    defs = tuple(translate_def(d, fresh) for d in P.definitions)
    main = None
    if P.main is not None:
        main = C.Cut(translate_term(P.main, fresh), C.Covar(STAR))
    return C.CoreProgram(defs, main)


def translate_closed(P: F.Program, t: F.Term) -> tuple[C.CoreProgram, C.Producer]:
    """Translate a program together with a separate term, sharing one supply."""
    fresh = FreshSupply(P.names() | F.all_names(t))
    prog = translate_program(F.Program(P.definitions), fresh)
    return prog, translate_term(t, fresh)
