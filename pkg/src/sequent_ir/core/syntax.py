"""Abstract syntax of Core: producers, consumers and statements."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from ..names import fresh_like
from ..types import Type

CBV = "cbv"
CBN = "cbn"
STRATEGIES = (CBV, CBN)

# (producer arity, consumer arity)
CTOR_ARITY = {"Nil": (0, 0), "Cons": (2, 0), "Tup": (2, 0)}
DTOR_ARITY = {"hd": (0, 1), "tl": (0, 1), "fst": (0, 1), "snd": (0, 1), "ap": (1, 1)}


class Producer:
    __slots__ = ()


class Consumer:
    __slots__ = ()


class Statement:
    __slots__ = ()


@dataclass(frozen=True)
class Clause:
    """A case clause ``K(xs; as) => s`` or a cocase clause ``D(xs; as) => s``."""

    name: str
    vars: tuple[str, ...]
    covars: tuple[str, ...]
    body: "Statement"


# -- producers -------------------------------------------------------------------


@dataclass(frozen=True)
class Var(Producer):
    name: str


@dataclass(frozen=True)
class Lit(Producer):
    value: int


@dataclass(frozen=True)
class Mu(Producer):
    covar: str
    body: Statement


@dataclass(frozen=True)
class Ctor(Producer):
    name: str
    pargs: tuple[Producer, ...] = ()
    cargs: tuple[Consumer, ...] = ()


@dataclass(frozen=True)
class Cocase(Producer):
    clauses: tuple[Clause, ...]


# -- consumers -------------------------------------------------------------------


@dataclass(frozen=True)
class Covar(Consumer):
    name: str


@dataclass(frozen=True)
class MuTilde(Consumer):
    var: str
    body: Statement


@dataclass(frozen=True)
class Case(Consumer):
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class Dtor(Consumer):
    name: str
    pargs: tuple[Producer, ...] = ()
    cargs: tuple[Consumer, ...] = ()


# -- statements ------------------------------------------------------------------


@dataclass(frozen=True)
class Cut(Statement):
    producer: Producer
    consumer: Consumer


@dataclass(frozen=True)
class Op(Statement):
    op: str
    left: Producer
    right: Producer
    consumer: Consumer


@dataclass(frozen=True)
class IfZ(Statement):
    cond: Producer
    then: Statement
    else_: Statement


@dataclass(frozen=True)
class Call(Statement):
    name: str
    pargs: tuple[Producer, ...] = ()
    cargs: tuple[Consumer, ...] = ()


Node = Union[Producer, Consumer, Statement]


# -- programs --------------------------------------------------------------------


@dataclass(frozen=True)
class CoreDefinition:
    name: str
    params: tuple[tuple[str, Type | None], ...]
    coparams: tuple[tuple[str, Type | None], ...]
    body: Statement


@dataclass(frozen=True)
class CoreProgram:
    definitions: tuple[CoreDefinition, ...] = ()
    main: Statement | None = None

    def lookup(self, name: str) -> CoreDefinition | None:
        for d in self.definitions:
            if d.name == name:
                return d
        return None


# -- values ------------------------------------------------------------------------


def is_value(p: Producer, strategy: str = CBV) -> bool:
    """cbv: literals, variables, cocases and constructors of values; cbn: everything."""
    if strategy == CBN:
        return True
    match p:
        case Lit() | Var() | Cocase():
            return True
        case Ctor(_, pargs, _):
            return all(is_value(a, strategy) for a in pargs)
    return False


def is_covalue(c: Consumer, strategy: str = CBV) -> bool:
    if strategy == CBV:
        return True
    return not isinstance(c, MuTilde)


# -- traversal ---------------------------------------------------------------------


def children(n: Node) -> tuple[Node, ...]:
    match n:
        case Mu(_, s) | MuTilde(_, s):
            return (s,)
        case Ctor(_, ps, cs) | Dtor(_, ps, cs) | Call(_, ps, cs):
            return tuple(ps) + tuple(cs)
        case Cocase(cls) | Case(cls):
            return tuple(cl.body for cl in cls)
        case Cut(p, c):
            return (p, c)
        case Op(_, a, b, c):
            return (a, b, c)
        case IfZ(p, s1, s2):
            return (p, s1, s2)
    return ()


def size(n: Node) -> int:
    return 1 + sum(size(k) for k in children(n))


def nodes(n: Node):
    yield n
    for k in children(n):
        yield from nodes(k)


# -- free names --------------------------------------------------------------------


def _free(n: Node, fv: set, fcv: set, bv: frozenset, bcv: frozenset) -> None:
    match n:
        case Var(x):
            if x not in bv:
                fv.add(x)
        case Covar(a):
            if a not in bcv:
                fcv.add(a)
        case Mu(a, s):
            _free(s, fv, fcv, bv, bcv | {a})
        case MuTilde(x, s):
            _free(s, fv, fcv, bv | {x}, bcv)
        case Cocase(cls) | Case(cls):
            for cl in cls:
                _free(cl.body, fv, fcv, bv | set(cl.vars), bcv | set(cl.covars))
        case _:
            for k in children(n):
                _free(k, fv, fcv, bv, bcv)


def free_names(n: Node) -> tuple[set[str], set[str]]:
    fv: set[str] = set()
    fcv: set[str] = set()
    _free(n, fv, fcv, frozenset(), frozenset())
    return fv, fcv


def free_vars(n: Node) -> set[str]:
    return free_names(n)[0]


def free_covars(n: Node) -> set[str]:
    return free_names(n)[1]


def all_names(n: Node) -> set[str]:
    out: set[str] = set()
    for m in nodes(n):
        match m:
            case Var(x) | Covar(x) | Mu(x, _) | MuTilde(x, _):
                out.add(x)
            case Call(f, _, _):
                out.add(f)
            case Cocase(cls) | Case(cls):
                for cl in cls:
                    out.update(cl.vars)
                    out.update(cl.covars)
    return out


def program_names(P: CoreProgram) -> set[str]:
    out: set[str] = set()
    for d in P.definitions:
        out.add(d.name)
        out.update(x for x, _ in d.params + d.coparams)
        out |= all_names(d.body)
    if P.main is not None:
        out |= all_names(P.main)
    return out


# -- substitution ------------------------------------------------------------------


class _Subst:
    def __init__(self, vmap, cmap, range_fv, range_fcv):
        self.vmap = vmap
        self.cmap = cmap
        self.range_fv = range_fv
        self.range_fcv = range_fcv

    @classmethod
    def make(cls, vmap: Mapping[str, Producer], cmap: Mapping[str, Consumer]) -> "_Subst":
        fv: set[str] = set()
        fcv: set[str] = set()
        for p in list(vmap.values()) + list(cmap.values()):
            a, b = free_names(p)
            fv |= a
            fcv |= b
        return cls(dict(vmap), dict(cmap), fv, fcv)

    def under(self, xs: tuple[str, ...], as_: tuple[str, ...], body: Node):
        """Enter binders ``xs`` (variables) and ``as_`` (covariables)."""
        vmap = {k: v for k, v in self.vmap.items() if k not in xs}
        cmap = {k: v for k, v in self.cmap.items() if k not in as_}
        if not vmap and not cmap:
            return xs, as_, None
        clash_v = [x for x in xs if x in self.range_fv]
        clash_c = [a for a in as_ if a in self.range_fcv]
        if not clash_v and not clash_c:
            return xs, as_, _Subst(vmap, cmap, self.range_fv, self.range_fcv)
        body_fv, body_fcv = free_names(body)
        avoid_v = self.range_fv | body_fv | set(xs) | set(vmap)
        avoid_c = self.range_fcv | body_fcv | set(as_) | set(cmap)
        new_xs, new_as = [], []
        range_fv, range_fcv = set(self.range_fv), set(self.range_fcv)
        for x in xs:
            if x in clash_v:
                y = fresh_like(x, avoid_v)
                avoid_v.add(y)
                vmap[x] = Var(y)
                range_fv.add(y)
                new_xs.append(y)
            else:
                new_xs.append(x)
        for a in as_:
            if a in clash_c:
                b = fresh_like(a, avoid_c)
                avoid_c.add(b)
                cmap[a] = Covar(b)
                range_fcv.add(b)
                new_as.append(b)
            else:
                new_as.append(a)
        return tuple(new_xs), tuple(new_as), _Subst(vmap, cmap, range_fv, range_fcv)

    def clause(self, cl: Clause) -> Clause:
        xs, as_, s = self.under(cl.vars, cl.covars, cl.body)
        return Clause(cl.name, xs, as_, s.go(cl.body) if s else cl.body)

    def go(self, n: Node) -> Node:
        match n:
            case Var(x):
                return self.vmap.get(x, n)
            case Covar(a):
                return self.cmap.get(a, n)
            case Lit():
                return n
            case Mu(a, body):
                _, (b,), s = self.under((), (a,), body)
                return Mu(b, s.go(body) if s else body)
            case MuTilde(x, body):
                (y,), _, s = self.under((x,), (), body)
                return MuTilde(y, s.go(body) if s else body)
            case Ctor(k, ps, cs):
                return Ctor(k, tuple(self.go(p) for p in ps), tuple(self.go(c) for c in cs))
            case Dtor(d, ps, cs):
                return Dtor(d, tuple(self.go(p) for p in ps), tuple(self.go(c) for c in cs))
            case Call(f, ps, cs):
                return Call(f, tuple(self.go(p) for p in ps), tuple(self.go(c) for c in cs))
            case Cocase(cls):
                return Cocase(tuple(self.clause(cl) for cl in cls))
            case Case(cls):
                return Case(tuple(self.clause(cl) for cl in cls))
            case Cut(p, c):
                return Cut(self.go(p), self.go(c))
            case Op(op, a, b, c):
                return Op(op, self.go(a), self.go(b), self.go(c))
            case IfZ(p, s1, s2):
                return IfZ(self.go(p), self.go(s1), self.go(s2))
        raise TypeError(f"not a Core node: {n!r}")


def subst(n: Node, vmap: Mapping[str, Producer] = {}, cmap: Mapping[str, Consumer] = {}) -> Node:
    """Simultaneous capture-avoiding substitution."""
    if not vmap and not cmap:
        return n
    return _Subst.make(vmap, cmap).go(n)


# -- alpha-equivalence ---------------------------------------------------------------


def nameless(n: Node, venv: Mapping[str, int] | None = None,
             cenv: Mapping[str, int] | None = None, depth: int = 0):
    venv = dict(venv or {})
    cenv = dict(cenv or {})

    def go(n, venv, cenv, depth):
        match n:
            case Var(x):
                return ("var", ("b", venv[x]) if x in venv else ("f", x))
            case Covar(a):
                return ("covar", ("b", cenv[a]) if a in cenv else ("f", a))
            case Lit(v):
                return ("lit", v)
            case Mu(a, s):
                return ("mu", go(s, venv, {**cenv, a: depth}, depth + 1))
            case MuTilde(x, s):
                return ("mutilde", go(s, {**venv, x: depth}, cenv, depth + 1))
            case Ctor(k, ps, cs) | Dtor(k, ps, cs) | Call(k, ps, cs):
                return (type(n).__name__, k, tuple(go(p, venv, cenv, depth) for p in ps),
                        tuple(go(c, venv, cenv, depth) for c in cs))
            case Cocase(cls) | Case(cls):
                out = []
                for cl in cls:
                    v2, c2, d = dict(venv), dict(cenv), depth
                    for x in cl.vars:
                        v2[x] = d
                        d += 1
                    for a in cl.covars:
                        c2[a] = d
                        d += 1
                    out.append((cl.name, len(cl.vars), len(cl.covars), go(cl.body, v2, c2, d)))
                return (type(n).__name__, tuple(out))
            case Cut(p, c):
                return ("cut", go(p, venv, cenv, depth), go(c, venv, cenv, depth))
            case Op(op, a, b, c):
                return ("op", op, go(a, venv, cenv, depth), go(b, venv, cenv, depth),
                        go(c, venv, cenv, depth))
            case IfZ(p, s1, s2):
                return ("ifz", go(p, venv, cenv, depth), go(s1, venv, cenv, depth),
                        go(s2, venv, cenv, depth))
        raise TypeError(f"not a Core node: {n!r}")

    return go(n, venv, cenv, depth)


def alpha_eq(a: Node, b: Node) -> bool:
    return nameless(a) == nameless(b)


def _def_nameless(d: CoreDefinition):
    venv = {x: i for i, (x, _) in enumerate(d.params)}
    n = len(d.params)
    cenv = {a: n + i for i, (a, _) in enumerate(d.coparams)}
    return nameless(d.body, venv, cenv, n + len(d.coparams))


def alpha_eq_definition(a: CoreDefinition, b: CoreDefinition, types: bool = True) -> bool:
    if (a.name, len(a.params), len(a.coparams)) != (b.name, len(b.params), len(b.coparams)):
        return False
    if types and [t for _, t in a.params + a.coparams] != [t for _, t in b.params + b.coparams]:
        return False
    return _def_nameless(a) == _def_nameless(b)


def alpha_eq_program(a: CoreProgram, b: CoreProgram, types: bool = True) -> bool:
    if len(a.definitions) != len(b.definitions):
        return False
    if not all(alpha_eq_definition(x, y, types) for x, y in zip(a.definitions, b.definitions)):
        return False
    if (a.main is None) != (b.main is None):
        return False
    return a.main is None or alpha_eq(a.main, b.main)


def rename_free_covar(n: Node, old: str, new: str) -> Node:
    return subst(n, cmap={old: Covar(new)})


def map_definitions(P: CoreProgram, fn) -> CoreProgram:
    """Apply ``fn`` to every definition body and to main."""
    defs = tuple(CoreDefinition(d.name, d.params, d.coparams, fn(d.body)) for d in P.definitions)
    return CoreProgram(defs, fn(P.main) if P.main is not None else None)


def iter_statements(P: CoreProgram) -> Iterable[Statement]:
    for d in P.definitions:
        yield d.body
    if P.main is not None:
        yield P.main
