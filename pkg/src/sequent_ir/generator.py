"""Seeded generation of closed, well-typed Fun terms.

Terms are built type-directed over a small finite universe of types. Calls
go only to the fixed ``LIBRARY`` program, whose only recursive definitions
either consume a finite list or build a stream lazily, so every generated
term terminates. ``goto`` targets only labels whose body it is not hidden
inside a lambda or cocase of, so a jump can never be delayed past the
label's extent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fun.parser import parse_program
from .fun.syntax import (
    App, Ascribe, BinOp, Call, Case, Clause, CoClause, Cocase, Covar, Ctor, Dtor, Goto,
    IfZ, Label, Lam, Let, Lit, Program, Term, Var,
)
from .fun.typing import check
from .types import EMPTY, PRD, Arrow, Int, LPairT, ListT, PairT, StreamT, Type, TypingContext

LIBRARY_SOURCE = """\
def add1(x: Int;) : Int := x + 1
def swap(p: Pair(Int, Int);) : Pair(Int, Int) := case p of { Tup(x, y) => Tup(y, x) }
def repeat(x: Int;) : Stream(Int) := cocase { hd => x, tl => repeat(x;) }
def mult(l: List(Int);) : Int := label a { mult'(l; a) }
def mult'(l: List(Int); a: Int) : Int :=
  case l of { Nil => 1, Cons(x, xs) => ifz(x, goto(0; a), x * mult'(xs; a)) }
def escape(x: Int; k: Int) : Int := goto(x; k)
"""

LIBRARY: Program = parse_program(LIBRARY_SOURCE)

LIST_INT = ListT(Int)
PAIR_II = PairT(Int, Int)
STREAM_INT = StreamT(Int)
LPAIR_II = LPairT(Int, Int)

TYPE_UNIVERSE: tuple[Type, ...] = (
    Int, LIST_INT, PAIR_II, PairT(Int, LIST_INT), STREAM_INT, LPAIR_II,
    Arrow(Int, Int), Arrow(Int, LIST_INT),
)

# share of choices spent on label/goto when they are available
CONTROL_WEIGHT = 0.15


def canonical_inhabitant(ty: Type) -> Term:
    """A small closed value of ``ty`` (streams lean on ``LIBRARY``'s ``repeat``)."""
    match ty:
        case _ if ty == Int:
            return Lit(0)
        case ListT():
            return Ctor("Nil")
        case PairT(a, b):
            return Ctor("Tup", (canonical_inhabitant(a), canonical_inhabitant(b)))
        case StreamT(elem) if elem == Int:
            return Cocase((CoClause("hd", Lit(0)), CoClause("tl", Call("repeat", (Lit(0),)))))
        case LPairT(a, b):
            return Cocase((CoClause("fst", canonical_inhabitant(a)),
                           CoClause("snd", canonical_inhabitant(b))))
        case Arrow(a, b):
            return Lam("_", canonical_inhabitant(b), a)
    raise ValueError(f"no canonical inhabitant for {ty}")


@dataclass
class _Scope:
    vars: tuple[tuple[str, Type], ...] = ()
    labels: tuple[tuple[str, Type], ...] = ()  # reachable by goto

    def with_var(self, x: str, ty: Type) -> "_Scope":
        return _Scope(self.vars + ((x, ty),), self.labels)

    def with_label(self, a: str, ty: Type) -> "_Scope":
        return _Scope(self.vars, self.labels + ((a, ty),))

    def delayed(self) -> "_Scope":
        return _Scope(self.vars, ())


@dataclass
class _Gen:
    rng: random.Random
    counter: dict = field(default_factory=lambda: {"v": 0, "k": 0})

    def name(self, kind: str) -> str:
        n = self.counter[kind]
        self.counter[kind] = n + 1
        return f"{kind}{n}"

    def leaf(self, ty: Type, scope: _Scope) -> Term:
        options = [Var(x) for x, t in scope.vars if t == ty]
        if ty == Int:
            options += [Lit(self.rng.randint(-3, 9))] * 2
        elif ty == LIST_INT:
            options += [Ctor("Nil"), Ascribe(Ctor("Nil"), LIST_INT)]
        if not options:
            return canonical_inhabitant(ty)
        return self.rng.choice(options)

    def term(self, ty: Type, depth: int, scope: _Scope) -> Term:
        if depth <= 0:
            return self.leaf(ty, scope)
        rng = self.rng
        if rng.random() < CONTROL_WEIGHT:
            t = self.control(ty, depth, scope)
            if t is not None:
                return t
        choices = self.productions(ty)
        weights = [w for w, _ in choices]
        _, make = rng.choices(choices, weights=weights)[0]
        return make(ty, depth - 1, scope)

    # productions ----------------------------------------------------------------

    def productions(self, ty: Type):
        out = [(1.0, lambda ty, d, s: self.leaf(ty, s)),
               (1.0, self.ifz), (1.0, self.let), (1.0, self.case_list), (0.6, self.case_pair),
               (0.7, self.app)]
        match ty:
            case _ if ty == Int:
                out += [(3.0, self.binop), (1.0, self.dtor_int), (0.8, self.call_int)]
            case ListT():
                out += [(2.5, self.cons)]
            case PairT():
                out += [(2.5, self.tup)]
                if ty == PAIR_II:
                    out += [(0.5, lambda ty, d, s: Call("swap", (self.term(PAIR_II, d, s),)))]
            case StreamT():
                out += [(2.5, self.stream), (0.7, self.tail),
                        (0.7, lambda ty, d, s: Call("repeat", (self.term(Int, d, s),)))]
            case LPairT():
                out += [(2.5, self.lpair)]
            case Arrow():
                out += [(2.5, self.lam)]
        return out

    def binop(self, ty, d, s):
        op = self.rng.choice(("+", "-", "*"))
        return BinOp(op, self.term(Int, d, s), self.term(Int, d, s))

    def ifz(self, ty, d, s):
        return IfZ(self.term(Int, d, s), self.term(ty, d, s), self.term(ty, d, s))

    def let(self, ty, d, s):
        sigma = self.rng.choice(TYPE_UNIVERSE)
        x = self.name("v")
        annot = sigma if self.rng.random() < 0.3 else None
        return Let(x, self.term(sigma, d, s), self.term(ty, d, s.with_var(x, sigma)), annot)

    def case_list(self, ty, d, s):
        x, xs = self.name("v"), self.name("v")
        return Case(self.term(LIST_INT, d, s), (
            Clause("Nil", (), self.term(ty, d, s)),
            Clause("Cons", (x, xs), self.term(ty, d, s.with_var(x, Int).with_var(xs, LIST_INT))),
        ))

    def case_pair(self, ty, d, s):
        pty = self.rng.choice((PAIR_II, PairT(Int, LIST_INT)))
        x, y = self.name("v"), self.name("v")
        body = self.term(ty, d, s.with_var(x, pty.left).with_var(y, pty.right))
        return Case(self.term(pty, d, s), (Clause("Tup", (x, y), body),))

    def app(self, ty, d, s):
        return App(self.term(Arrow(Int, ty), d, s), self.term(Int, d, s))

    def dtor_int(self, ty, d, s):
        if self.rng.random() < 0.5:
            return Dtor(self.term(STREAM_INT, d, s), "hd")
        return Dtor(self.term(LPAIR_II, d, s), self.rng.choice(("fst", "snd")))

    def call_int(self, ty, d, s):
        match self.rng.randrange(3):
            case 0:
                return Call("add1", (self.term(Int, d, s),))
            case 1:
                return Call("mult", (self.term(LIST_INT, d, s),))
        labels = [a for a, t in s.labels if t == Int]
        if not labels:
            return Call("add1", (self.term(Int, d, s),))
        return Call("escape", (self.term(Int, d, s),), (Covar(self.rng.choice(labels)),))

    def cons(self, ty, d, s):
        return Ctor("Cons", (self.term(ty.elem, d, s), self.term(ty, d, s)))

    def tup(self, ty, d, s):
        return Ctor("Tup", (self.term(ty.left, d, s), self.term(ty.right, d, s)))

    def stream(self, ty, d, s):
        inner = s.delayed()
        return Cocase((CoClause("hd", self.term(ty.elem, d, inner)),
                       CoClause("tl", self.term(ty, d, inner))))

    def tail(self, ty, d, s):
        return Dtor(self.term(ty, d, s), "tl")

    def lpair(self, ty, d, s):
        inner = s.delayed()
        return Cocase((CoClause("fst", self.term(ty.left, d, inner)),
                       CoClause("snd", self.term(ty.right, d, inner))))

    def lam(self, ty, d, s):
        x = self.name("v")
        annot = ty.dom if self.rng.random() < 0.5 else None
        return Lam(x, self.term(ty.cod, d, s.delayed().with_var(x, ty.dom)), annot)

    def control(self, ty: Type, depth: int, scope: _Scope) -> Term | None:
        targets = scope.labels
        if targets and self.rng.random() < 0.5:
            a, aty = self.rng.choice(targets)
            return Goto(self.term(aty, depth - 1, scope), Covar(a))
        a = self.name("k")
        return Label(a, self.term(ty, depth - 1, scope.with_label(a, ty)))


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def gen_typed_term(seed, ctx: TypingContext = EMPTY, ty: Type = Int, depth: int = 4,
                   verify: bool = True) -> Term:
    """A term of type ``ty`` in ``ctx`` (under ``LIBRARY``), deterministic in ``seed``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    scope = _Scope(tuple((n, t) for n, m, t in ctx.bindings if m == PRD))
    t = _Gen(_rng(seed)).term(ty, depth, scope)
    if verify:
        check(ctx, LIBRARY, t, ty)
    return t


def gen_program(seed, ty: Type = Int, depth: int = 4) -> Program:
    """``LIBRARY`` with a generated closed main term of type ``ty``."""
    return Program(LIBRARY.definitions, gen_typed_term(seed, EMPTY, ty, depth))


def gen_type(seed) -> Type:
    return _rng(seed).choice(TYPE_UNIVERSE)
