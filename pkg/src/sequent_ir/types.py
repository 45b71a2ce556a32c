"""Types, typing contexts and the small unifier shared by both typecheckers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator


class Type:
    """Base class for types. Structural equality is type equality."""

    __slots__ = ()


@dataclass(frozen=True)
class IntT(Type):
    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True)
class ListT(Type):
    elem: Type

    def __str__(self) -> str:
        return f"List({self.elem})"


@dataclass(frozen=True)
class PairT(Type):
    left: Type
    right: Type

    def __str__(self) -> str:
        return f"Pair({self.left}, {self.right})"


@dataclass(frozen=True)
class StreamT(Type):
    elem: Type

    def __str__(self) -> str:
        return f"Stream({self.elem})"


@dataclass(frozen=True)
class LPairT(Type):
    left: Type
    right: Type

    def __str__(self) -> str:
        return f"LPair({self.left}, {self.right})"


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type

    def __str__(self) -> str:
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{dom} -> {self.cod}"


@dataclass(frozen=True)
class Meta(Type):
    """Unification variable; never appears in user-written annotations."""

    id: int

    def __str__(self) -> str:
        return f"?{self.id}"


Int = IntT()


def children(ty: Type) -> tuple[Type, ...]:
    match ty:
        case ListT(e) | StreamT(e):
            return (e,)
        case PairT(a, b) | LPairT(a, b) | Arrow(a, b):
            return (a, b)
    return ()


def rebuild(ty: Type, kids: tuple[Type, ...]) -> Type:
    return type(ty)(*kids) if kids else ty


def metas(ty: Type) -> Iterator[int]:
    if isinstance(ty, Meta):
        yield ty.id
    for k in children(ty):
        yield from metas(k)


def is_ground(ty: Type) -> bool:
    return next(metas(ty), None) is None


# ---------------------------------------------------------------------------
# Errors


class TypeCheckError(Exception):
    """A typing failure.

    ``kind`` is one of ``mismatch``, ``unbound``, ``cannot-infer``, ``arity``,
    ``unsupported-construct``.
    """

    KINDS = ("mismatch", "unbound", "cannot-infer", "arity", "unsupported-construct")

    def __init__(self, kind: str, message: str, term=None, expected=None, found=None,
                 definition: str | None = None):
        assert kind in self.KINDS, kind
        self.kind = kind
        self.term = term
        self.expected = expected
        self.found = found
        self.definition = definition
        super().__init__(message)

    def in_definition(self, name: str) -> "TypeCheckError":
        self.definition = name
        self.args = (f"in definition {name}: {self.args[0]}",)
        return self


# ---------------------------------------------------------------------------
# Typing contexts

PRD = "prd"
CNS = "cns"


@dataclass(frozen=True)
class TypingContext:
    """Ordered bindings ``(name, mode, type)``; lookups see the rightmost one."""

    bindings: tuple[tuple[str, str, Type], ...] = ()

    def extend(self, name: str, mode: str, ty: Type) -> "TypingContext":
        return TypingContext(self.bindings + ((name, mode, ty),))

    def prd(self, name: str, ty: Type) -> "TypingContext":
        return self.extend(name, PRD, ty)

    def cns(self, name: str, ty: Type) -> "TypingContext":
        return self.extend(name, CNS, ty)

    def lookup(self, name: str, mode: str) -> Type | None:
        for n, m, ty in reversed(self.bindings):
            if n == name and m == mode:
                return ty
        return None

    def __str__(self) -> str:
        return ", ".join(f"{n} {m} {t}" for n, m, t in self.bindings) or "∅"


EMPTY = TypingContext()


# ---------------------------------------------------------------------------
# Unification


class Unifier:
    """First-order unification over types with metavariables."""

    def __init__(self) -> None:
        self.solution: dict[int, Type] = {}
        self._ids = itertools.count()

    def fresh(self) -> Meta:
        return Meta(next(self._ids))

    def resolve(self, ty: Type) -> Type:
        while isinstance(ty, Meta) and ty.id in self.solution:
            ty = self.solution[ty.id]
        return ty

    def zonk(self, ty: Type) -> Type:
        ty = self.resolve(ty)
        kids = children(ty)
        return rebuild(ty, tuple(self.zonk(k) for k in kids)) if kids else ty

    def default(self, ty: Type, to: Type = Int) -> Type:
        """Zonk, then replace every unsolved metavariable by ``to``.

        Sound because constraints are monomorphic: a solution with free
        metavariables stays a solution under any instantiation.
        """
        ty = self.zonk(ty)
        if isinstance(ty, Meta):
            return to
        kids = children(ty)
        return rebuild(ty, tuple(self.default(k, to) for k in kids)) if kids else ty

    def _occurs(self, mid: int, ty: Type) -> bool:
        return mid in metas(self.zonk(ty))

    def unify(self, expected: Type, found: Type, term=None) -> None:
        a, b = self.resolve(expected), self.resolve(found)
        if a == b:
            return
        if isinstance(a, Meta):
            self._bind(a, b, expected, found, term)
        elif isinstance(b, Meta):
            self._bind(b, a, expected, found, term)
        elif type(a) is type(b):
            for x, y in zip(children(a), children(b)):
                self.unify(x, y, term)
        else:
            raise self._mismatch(expected, found, term)

    def _bind(self, m: Meta, ty: Type, expected, found, term) -> None:
        if self._occurs(m.id, ty):
            raise self._mismatch(expected, found, term)
        self.solution[m.id] = ty

    def _mismatch(self, expected, found, term) -> TypeCheckError:
        e, f = self.zonk(expected), self.zonk(found)
        return TypeCheckError("mismatch", f"expected {e}, found {f}", term, e, f)
