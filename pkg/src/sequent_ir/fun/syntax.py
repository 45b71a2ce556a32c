"""Abstract syntax of Fun.

Terms are immutable dataclasses. Evaluation-context frames live here too,
because a reified context (a runtime value substituted for a label's
covariable) is itself part of the term language.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from ..names import fresh_like
from ..types import Type

CTORS = {"Nil": 0, "Cons": 2, "Tup": 2}
DTORS = ("hd", "tl", "fst", "snd")
OPS = ("*", "+", "-")


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lit(Term):
    value: int


@dataclass(frozen=True)
class BinOp(Term):
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class IfZ(Term):
    cond: Term
    then: Term
    else_: Term


@dataclass(frozen=True)
class Let(Term):
    var: str
    bound: Term
    body: Term
    annot: Type | None = None


@dataclass(frozen=True)
class Call(Term):
    name: str
    args: tuple[Term, ...]
    coargs: tuple["CoTarget", ...] = ()


@dataclass(frozen=True)
class Ctor(Term):
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Clause:
    ctor: str
    binders: tuple[str, ...]
    body: Term


@dataclass(frozen=True)
class Case(Term):
    scrutinee: Term
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class Dtor(Term):
    scrutinee: Term
    name: str


@dataclass(frozen=True)
class CoClause:
    dtor: str
    body: Term


@dataclass(frozen=True)
class Cocase(Term):
    clauses: tuple[CoClause, ...]


@dataclass(frozen=True)
class Lam(Term):
    var: str
    body: Term
    annot: Type | None = None


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Label(Term):
    covar: str
    body: Term


@dataclass(frozen=True)
class Goto(Term):
    arg: Term
    target: "CoTarget"


@dataclass(frozen=True)
class LetCC(Term):
    var: str
    body: Term


@dataclass(frozen=True)
class CallCC(Term):
    fn: Term


@dataclass(frozen=True)
class FelleisenC(Term):
    fn: Term


@dataclass(frozen=True)
class LabelC(Term):
    covar: str
    body: Term


@dataclass(frozen=True)
class Ascribe(Term):
    term: Term
    type: Type


# -- covariable targets ------------------------------------------------------


@dataclass(frozen=True)
class Covar:
    name: str


@dataclass(frozen=True)
class Reified:
    """An evaluation context promoted to a runtime value (never in source)."""

    frames: tuple["Frame", ...]


CoTarget = Union[Covar, Reified]


# -- evaluation-context frames (outermost first) -----------------------------


class Frame:
    __slots__ = ()


@dataclass(frozen=True)
class BinOpL(Frame):
    op: str
    right: Term


@dataclass(frozen=True)
class BinOpR(Frame):
    left: Term
    op: str


@dataclass(frozen=True)
class IfZFrame(Frame):
    then: Term
    else_: Term


@dataclass(frozen=True)
class LetFrame(Frame):
    var: str
    body: Term
    annot: Type | None = None


@dataclass(frozen=True)
class CallFrame(Frame):
    name: str
    done: tuple[Term, ...]
    pending: tuple[Term, ...]
    coargs: tuple[CoTarget, ...]


@dataclass(frozen=True)
class CtorFrame(Frame):
    name: str
    done: tuple[Term, ...]
    pending: tuple[Term, ...]


@dataclass(frozen=True)
class CaseFrame(Frame):
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class AppL(Frame):
    arg: Term


@dataclass(frozen=True)
class AppR(Frame):
    fn: Term


@dataclass(frozen=True)
class DtorFrame(Frame):
    name: str


@dataclass(frozen=True)
class GotoFrame(Frame):
    target: CoTarget


EvalContext = tuple[Frame, ...]

HOLE = "□"


def plug_frame(frame: Frame, t: Term) -> Term:
    match frame:
        case BinOpL(op, right):
            return BinOp(op, t, right)
        case BinOpR(left, op):
            return BinOp(op, left, t)
        case IfZFrame(then, else_):
            return IfZ(t, then, else_)
        case LetFrame(var, body, annot):
            return Let(var, t, body, annot)
        case CallFrame(name, done, pending, coargs):
            return Call(name, done + (t,) + pending, coargs)
        case CtorFrame(name, done, pending):
            return Ctor(name, done + (t,) + pending)
        case CaseFrame(clauses):
            return Case(t, clauses)
        case AppL(arg):
            return App(t, arg)
        case AppR(fn):
            return App(fn, t)
        case DtorFrame(name):
            return Dtor(t, name)
        case GotoFrame(target):
            return Goto(t, target)
    raise TypeError(f"not a frame: {frame!r}")


def plug(ctx: Iterable[Frame], t: Term) -> Term:
    for frame in reversed(tuple(ctx)):
        t = plug_frame(frame, t)
    return t


# -- values ------------------------------------------------------------------


def is_value(t: Term) -> bool:
    """Literals, constructors of values, cocases and lambdas.

    Variables are not values: evaluation only ever meets closed terms.
    """
    match t:
        case Lit() | Cocase() | Lam():
            return True
        case Ctor(_, args):
            return all(is_value(a) for a in args)
    return False


# -- free names ----------------------------------------------------------------


def _free(t: Term, fv: set, fcv: set, bv: frozenset, bcv: frozenset) -> None:
    match t:
        case Var(x):
            if x not in bv:
                fv.add(x)
        case Lit():
            pass
        case BinOp(_, l, r):
            _free(l, fv, fcv, bv, bcv)
            _free(r, fv, fcv, bv, bcv)
        case IfZ(c, a, b):
            for s in (c, a, b):
                _free(s, fv, fcv, bv, bcv)
        case Let(x, bound, body, _):
            _free(bound, fv, fcv, bv, bcv)
            _free(body, fv, fcv, bv | {x}, bcv)
        case Call(_, args, coargs):
            for a in args:
                _free(a, fv, fcv, bv, bcv)
            for k in coargs:
                _free_target(k, fv, fcv, bv, bcv)
        case Ctor(_, args):
            for a in args:
                _free(a, fv, fcv, bv, bcv)
        case Case(scr, clauses):
            _free(scr, fv, fcv, bv, bcv)
            for cl in clauses:
                _free(cl.body, fv, fcv, bv | set(cl.binders), bcv)
        case Dtor(scr, _):
            _free(scr, fv, fcv, bv, bcv)
        case Cocase(clauses):
            for cl in clauses:
                _free(cl.body, fv, fcv, bv, bcv)
        case Lam(x, body, _) | LetCC(x, body):
            _free(body, fv, fcv, bv | {x}, bcv)
        case App(f, a):
            _free(f, fv, fcv, bv, bcv)
            _free(a, fv, fcv, bv, bcv)
        case Label(a, body) | LabelC(a, body):
            _free(body, fv, fcv, bv, bcv | {a})
        case Goto(arg, target):
            _free(arg, fv, fcv, bv, bcv)
            _free_target(target, fv, fcv, bv, bcv)
        case CallCC(f) | FelleisenC(f):
            _free(f, fv, fcv, bv, bcv)
        case Ascribe(inner, _):
            _free(inner, fv, fcv, bv, bcv)
        case _:
            raise TypeError(f"not a term: {t!r}")


def _free_target(k: CoTarget, fv, fcv, bv, bcv) -> None:
    if isinstance(k, Covar):
        if k.name not in bcv:
            fcv.add(k.name)
    else:
        _free(plug(k.frames, Var(HOLE)), fv, fcv, bv | {HOLE}, bcv)


def free_names(t: Term) -> tuple[set[str], set[str]]:
    fv: set[str] = set()
    fcv: set[str] = set()
    _free(t, fv, fcv, frozenset(), frozenset())
    return fv, fcv


def free_vars(t: Term) -> set[str]:
    return free_names(t)[0]


def free_covars(t: Term) -> set[str]:
    return free_names(t)[1]


def all_names(t: Term) -> set[str]:
    """Every name occurring in ``t``, bound or free (for freshness)."""
    out: set[str] = set()

    def go(t):
        match t:
            case Var(x):
                out.add(x)
            case Let(x, _, _, _) | Lam(x, _, _) | LetCC(x, _):
                out.add(x)
            case Label(a, _) | LabelC(a, _):
                out.add(a)
            case Call(f, _, coargs):
                out.add(f)
                out.update(k.name for k in coargs if isinstance(k, Covar))
            case Goto(_, Covar(a)):
                out.add(a)
            case Case(_, clauses):
                for cl in clauses:
                    out.update(cl.binders)
        for child in subterms(t):
            go(child)

    go(t)
    return out


def subterms(t: Term) -> tuple[Term, ...]:
    match t:
        case BinOp(_, l, r) | App(l, r):
            return (l, r)
        case IfZ(c, a, b):
            return (c, a, b)
        case Let(_, bound, body, _):
            return (bound, body)
        case Call(_, args, _) | Ctor(_, args):
            return tuple(args)
        case Case(scr, clauses):
            return (scr,) + tuple(cl.body for cl in clauses)
        case Dtor(scr, _):
            return (scr,)
        case Cocase(clauses):
            return tuple(cl.body for cl in clauses)
        case Lam(_, body, _) | LetCC(_, body) | Label(_, body) | LabelC(_, body):
            return (body,)
        case Goto(arg, _):
            return (arg,)
        case CallCC(f) | FelleisenC(f):
            return (f,)
        case Ascribe(inner, _):
            return (inner,)
    return ()


# -- substitution --------------------------------------------------------------


class _Subst:
    """Simultaneous capture-avoiding substitution of terms and co-targets."""

    def __init__(self, vmap: Mapping[str, Term], cmap: Mapping[str, CoTarget]):
        self.vmap = dict(vmap)
        self.cmap = dict(cmap)
        fv: set[str] = set()
        fcv: set[str] = set()
        for v in self.vmap.values():
            a, b = free_names(v)
            fv |= a
            fcv |= b
        for k in self.cmap.values():
            _free_target(k, fv, fcv, frozenset(), frozenset())
        self.range_fv = fv
        self.range_fcv = fcv

    def _restrict(self, drop_v=(), drop_c=()):
        if not any(x in self.vmap for x in drop_v) and not any(a in self.cmap for a in drop_c):
            return self
        s = _Subst.__new__(_Subst)
        s.vmap = {k: v for k, v in self.vmap.items() if k not in drop_v}
        s.cmap = {k: v for k, v in self.cmap.items() if k not in drop_c}
        s.range_fv, s.range_fcv = self.range_fv, self.range_fcv
        return s

    def _bind_vars(self, xs: tuple[str, ...], bodies: tuple[Term, ...]):
        """Rename binders that would capture; returns (new names, substitution)."""
        inner = self._restrict(drop_v=xs)
        if not inner.vmap and not inner.cmap:
            return xs, inner
        if not any(x in self.range_fv for x in xs):
            return xs, inner
        avoid = set(self.range_fv) | set(xs)
        for b in bodies:
            avoid |= free_vars(b)
        new = []
        ren = {}
        for x in xs:
            if x in self.range_fv:
                y = fresh_like(x, avoid)
                avoid.add(y)
                ren[x] = Var(y)
                new.append(y)
            else:
                new.append(x)
        s = _Subst.__new__(_Subst)
        s.vmap = {**inner.vmap, **ren}
        s.cmap = inner.cmap
        s.range_fv = self.range_fv | {v.name for v in ren.values()}
        s.range_fcv = self.range_fcv
        return tuple(new), s

    def _bind_covar(self, a: str, body: Term):
        inner = self._restrict(drop_c=(a,))
        if (not inner.vmap and not inner.cmap) or a not in self.range_fcv:
            return a, inner
        avoid = set(self.range_fcv) | free_covars(body) | {a}
        b = fresh_like(a, avoid)
        s = _Subst.__new__(_Subst)
        s.vmap = inner.vmap
        s.cmap = {**inner.cmap, a: Covar(b)}
        s.range_fv = self.range_fv
        s.range_fcv = self.range_fcv | {b}
        return b, s

    def target(self, k: CoTarget) -> CoTarget:
        if isinstance(k, Covar):
            return self.cmap.get(k.name, k)
        # Reified contexts are closed during evaluation; handle the general
        # case by plugging a hole, substituting, and taking the term apart.
        hole_term = plug(k.frames, Var(HOLE))
        fv, fcv = free_names(hole_term)
        fv.discard(HOLE)
        if not (fv & self.vmap.keys()) and not (fcv & self.cmap.keys()):
            return k
        from .eval import decompose  # local: eval depends on syntax

        frames, _ = decompose(self.term(hole_term))
        return Reified(frames)

    def term(self, t: Term) -> Term:
        match t:
            case Var(x):
                return self.vmap.get(x, t)
            case Lit():
                return t
            case BinOp(op, l, r):
                return BinOp(op, self.term(l), self.term(r))
            case IfZ(c, a, b):
                return IfZ(self.term(c), self.term(a), self.term(b))
            case Let(x, bound, body, annot):
                (y,), s = self._bind_vars((x,), (body,))
                return Let(y, self.term(bound), s.term(body), annot)
            case Call(f, args, coargs):
                return Call(f, tuple(self.term(a) for a in args),
                            tuple(self.target(k) for k in coargs))
            case Ctor(k, args):
                return Ctor(k, tuple(self.term(a) for a in args))
            case Case(scr, clauses):
                new = []
                for cl in clauses:
                    ys, s = self._bind_vars(cl.binders, (cl.body,))
                    new.append(Clause(cl.ctor, ys, s.term(cl.body)))
                return Case(self.term(scr), tuple(new))
            case Dtor(scr, d):
                return Dtor(self.term(scr), d)
            case Cocase(clauses):
                return Cocase(tuple(CoClause(cl.dtor, self.term(cl.body)) for cl in clauses))
            case Lam(x, body, annot):
                (y,), s = self._bind_vars((x,), (body,))
                return Lam(y, s.term(body), annot)
            case LetCC(x, body):
                (y,), s = self._bind_vars((x,), (body,))
                return LetCC(y, s.term(body))
            case App(f, a):
                return App(self.term(f), self.term(a))
            case Label(a, body):
                b, s = self._bind_covar(a, body)
                return Label(b, s.term(body))
            case LabelC(a, body):
                b, s = self._bind_covar(a, body)
                return LabelC(b, s.term(body))
            case Goto(arg, target):
                return Goto(self.term(arg), self.target(target))
            case CallCC(f):
                return CallCC(self.term(f))
            case FelleisenC(f):
                return FelleisenC(self.term(f))
            case Ascribe(inner, ty):
                return Ascribe(self.term(inner), ty)
        raise TypeError(f"not a term: {t!r}")


def subst(t: Term, vmap: Mapping[str, Term] = {}, cmap: Mapping[str, CoTarget] = {}) -> Term:
    if not vmap and not cmap:
        return t
    return _Subst(vmap, cmap).term(t)


def subst_var(t: Term, x: str, v: Term) -> Term:
    return subst(t, {x: v})


def subst_covar(t: Term, a: str, target: CoTarget | str) -> Term:
    if isinstance(target, str):
        target = Covar(target)
    return subst(t, cmap={a: target})


# -- alpha-equivalence -----------------------------------------------------------


def nameless(t: Term):
    """Nested tuples with bound names replaced by binder depth.

    Two terms are alpha-equivalent iff their nameless forms are equal.
    """
    return _nl(t, {}, {}, 0)


def _nl(t, venv, cenv, depth):
    def bvar(x):
        return ("b", venv[x]) if x in venv else ("f", x)

    def target(k):
        if isinstance(k, Covar):
            return ("cb", cenv[k.name]) if k.name in cenv else ("cf", k.name)
        return ("ctx", _nl(plug(k.frames, Var(HOLE)), venv, cenv, depth))

    match t:
        case Var(x):
            return ("var", bvar(x))
        case Lit(n):
            return ("lit", n)
        case BinOp(op, l, r):
            return ("op", op, _nl(l, venv, cenv, depth), _nl(r, venv, cenv, depth))
        case IfZ(c, a, b):
            return ("ifz",) + tuple(_nl(s, venv, cenv, depth) for s in (c, a, b))
        case Let(x, bound, body, annot):
            return ("let", annot, _nl(bound, venv, cenv, depth),
                    _nl(body, {**venv, x: depth}, cenv, depth + 1))
        case Call(f, args, coargs):
            return ("call", f, tuple(_nl(a, venv, cenv, depth) for a in args),
                    tuple(target(k) for k in coargs))
        case Ctor(k, args):
            return ("ctor", k, tuple(_nl(a, venv, cenv, depth) for a in args))
        case Case(scr, clauses):
            cls = []
            for cl in clauses:
                env = dict(venv)
                for i, x in enumerate(cl.binders):
                    env[x] = depth + i
                cls.append((cl.ctor, len(cl.binders),
                            _nl(cl.body, env, cenv, depth + len(cl.binders))))
            return ("case", _nl(scr, venv, cenv, depth), tuple(cls))
        case Dtor(scr, d):
            return ("dtor", d, _nl(scr, venv, cenv, depth))
        case Cocase(clauses):
            return ("cocase", tuple((cl.dtor, _nl(cl.body, venv, cenv, depth)) for cl in clauses))
        case Lam(x, body, annot):
            return ("lam", annot, _nl(body, {**venv, x: depth}, cenv, depth + 1))
        case LetCC(x, body):
            return ("letcc", _nl(body, {**venv, x: depth}, cenv, depth + 1))
        case App(f, a):
            return ("app", _nl(f, venv, cenv, depth), _nl(a, venv, cenv, depth))
        case Label(a, body):
            return ("label", _nl(body, venv, {**cenv, a: depth}, depth + 1))
        case LabelC(a, body):
            return ("labelC", _nl(body, venv, {**cenv, a: depth}, depth + 1))
        case Goto(arg, k):
            return ("goto", _nl(arg, venv, cenv, depth), target(k))
        case CallCC(f):
            return ("callcc", _nl(f, venv, cenv, depth))
        case FelleisenC(f):
            return ("C", _nl(f, venv, cenv, depth))
        case Ascribe(inner, ty):
            return ("asc", ty, _nl(inner, venv, cenv, depth))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq_term(a: Term, b: Term) -> bool:
    return nameless(a) == nameless(b)


# -- programs --------------------------------------------------------------------


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple[tuple[str, Type], ...]
    coparams: tuple[tuple[str, Type], ...]
    ret: Type
    body: Term


@dataclass(frozen=True)
class Program:
    definitions: tuple[Definition, ...] = ()
    main: Term | None = None

    def lookup(self, name: str) -> Definition | None:
        for d in self.definitions:
            if d.name == name:
                return d
        return None

    def names(self) -> set[str]:
        out = set()
        for d in self.definitions:
            out.add(d.name)
            out.update(n for n, _ in d.params + d.coparams)
            out |= all_names(d.body)
        if self.main is not None:
            out |= all_names(self.main)
        return out


def alpha_eq_definition(a: Definition, b: Definition) -> bool:
    if (a.name, len(a.params), len(a.coparams), a.ret) != (b.name, len(b.params), len(b.coparams), b.ret):
        return False
    if [t for _, t in a.params + a.coparams] != [t for _, t in b.params + b.coparams]:
        return False
    return _def_body_nl(a) == _def_body_nl(b)


def _def_body_nl(d: Definition):
    venv = {x: i for i, (x, _) in enumerate(d.params)}
    n = len(d.params)
    cenv = {a: n + i for i, (a, _) in enumerate(d.coparams)}
    return _nl(d.body, venv, cenv, n + len(d.coparams))


def alpha_eq_program(a: Program, b: Program) -> bool:
    if len(a.definitions) != len(b.definitions):
        return False
    if not all(alpha_eq_definition(x, y) for x, y in zip(a.definitions, b.definitions)):
        return False
    if (a.main is None) != (b.main is None):
        return False
    return a.main is None or alpha_eq_term(a.main, b.main)
