"""Reader and printer for the ``.core`` text format.

Grammar::

    program   ::= def* (statement | producer)?     -- a producer p means < p | star >
    def       ::= "def" f "(" binders? [";" binders?] ")" ":=" statement
    binders   ::= x [":" type] ("," x [":" type])*
    statement ::= "<" producer "|" consumer ">"
                | ("*" | "+" | "-") "(" producer "," producer ";" consumer ")"
                | "ifz" "(" producer "," statement "," statement ")"
                | f "(" producers? [";" consumers?] ")"
    producer  ::= "mu" a "." statement | int | "-" int | x
                | K ["(" args ")"] | "cocase" "{" D(xs; as) "=>" statement, ... "}"
    consumer  ::= "mu~" x "." statement | a
                | "case" "{" K(xs; as) "=>" statement, ... "}" | D "(" args ")"

Constructor and destructor argument lists are split into producers and
consumers by the known arity, so the ``;`` may be written as ``,``.
"""

from __future__ import annotations

from ..fun.parser import parse_type_tokens
from ..lexer import ParseError, TokenStream
from ..names import STAR
from .syntax import (
    CTOR_ARITY, DTOR_ARITY, Call, Case, Clause, Cocase, Consumer, CoreDefinition,
    CoreProgram, Covar, Ctor, Cut, Dtor, IfZ, Lit, Mu, MuTilde, Node, Op, Producer,
    Statement, Var,
)

KEYWORDS = {"def", "mu", "mu~", "ifz", "case", "cocase"} | set(CTOR_ARITY)


class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def ident(self, what="an identifier") -> str:
        tok = self.ts.peek
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.ts.fail(what)
        return self.ts.next().text

    def program(self) -> CoreProgram:
        defs: list[CoreDefinition] = []
        seen: set[str] = set()
        while self.ts.at("def"):
            tok = self.ts.peek_at(1)
            d = self.definition()
            if d.name in seen:
                raise ParseError(tok.line, tok.col, "a fresh definition name",
                                 f"duplicate definition {d.name!r}")
            seen.add(d.name)
            defs.append(d)
        main = None
        if not self.ts.at_eof():
            main = self.statement() if self._at_statement() else Cut(self.producer(), Covar(STAR))
        if not self.ts.at_eof():
            self.ts.fail("end of input")
        return CoreProgram(tuple(defs), main)

    def definition(self) -> CoreDefinition:
        ts = self.ts
        ts.expect("def")
        name = self.ident("a definition name")
        ts.expect("(")
        names: set[str] = set()

        def binders():
            out = []
            while True:
                tok = ts.peek
                x = self.ident("a parameter name")
                if x in names:
                    raise ParseError(tok.line, tok.col, "distinct parameter names",
                                     f"duplicate parameter {x!r}")
                names.add(x)
                out.append((x, parse_type_tokens(ts) if ts.accept(":") else None))
                if not ts.accept(","):
                    return tuple(out)

        params = binders() if not ts.at(";") and not ts.at(")") else ()
        coparams = ()
        if ts.accept(";") and not ts.at(")"):
            coparams = binders()
        ts.expect(")")
        ts.expect(":=")
        return CoreDefinition(name, params, coparams, self.statement())

    def _at_statement(self) -> bool:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "sym":
            return tok.text in ("<", "*", "+") or (tok.text == "-" and ts.peek_at(1).text == "(")
        if tok.kind == "ident":
            return tok.text == "ifz" or (tok.text not in KEYWORDS and ts.peek_at(1).text == "(")
        return False

    # statements

    def statement(self) -> Statement:
        ts = self.ts
        tok = ts.peek
        if ts.accept("<"):
            p = self.producer()
            ts.expect("|")
            c = self.consumer()
            ts.expect(">")
            return Cut(p, c)
        if tok.kind == "sym" and tok.text in ("*", "+", "-"):
            ts.next()
            ts.expect("(")
            a = self.producer()
            ts.expect(",")
            b = self.producer()
            ts.expect(";")
            c = self.consumer()
            ts.expect(")")
            return Op(tok.text, a, b, c)
        if ts.accept("ifz"):
            ts.expect("(")
            p = self.producer()
            ts.expect(",")
            s1 = self.statement()
            ts.expect(",")
            s2 = self.statement()
            ts.expect(")")
            return IfZ(p, s1, s2)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            f = ts.next().text
            ts.expect("(")
            ps: list[Producer] = []
            cs: list[Consumer] = []
            if not ts.at(";") and not ts.at(")"):
                ps.append(self.producer())
                while ts.accept(","):
                    ps.append(self.producer())
            if ts.accept(";") and not ts.at(")"):
                cs.append(self.consumer())
                while ts.accept(","):
                    cs.append(self.consumer())
            ts.expect(")")
            return Call(f, tuple(ps), tuple(cs))
        ts.fail("a statement")

    def args(self, np: int, nc: int):
        """``(p1, ..., pn; c1, ..., cm)`` with ``;`` optional."""
        ts = self.ts
        ts.expect("(")
        ps = []
        for i in range(np):
            if i:
                ts.expect(",")
            ps.append(self.producer())
        cs = []
        if nc:
            if np:
                if not ts.accept(";"):
                    ts.expect(",")
            else:
                ts.accept(";")
            for i in range(nc):
                if i:
                    ts.expect(",")
                cs.append(self.consumer())
        else:
            ts.accept(";")
        ts.expect(")")
        return tuple(ps), tuple(cs)

    def binder_args(self, np: int, nc: int, names: set[str]):
        ts = self.ts

        def one():
            tok = ts.peek
            x = self.ident("a binder")
            if x in names:
                raise ParseError(tok.line, tok.col, "distinct binders", f"duplicate {x!r}")
            names.add(x)
            return x

        if np + nc == 0:
            if ts.at("(") and ts.peek.glued:
                ts.next()
                ts.accept(";")
                ts.expect(")")
            return (), ()
        ts.expect("(")
        xs = []
        for i in range(np):
            if i:
                ts.expect(",")
            xs.append(one())
        as_ = []
        if nc:
            if np:
                if not ts.accept(";"):
                    ts.expect(",")
            else:
                ts.accept(";")
            for i in range(nc):
                if i:
                    ts.expect(",")
                as_.append(one())
        ts.expect(")")
        return tuple(xs), tuple(as_)

    def clauses(self, arities: dict[str, tuple[int, int]], what: str):
        ts = self.ts
        ts.expect("{")
        out: list[Clause] = []
        while True:
            tok = ts.peek
            if tok.kind != "ident" or tok.text not in arities:
                ts.fail(what)
            name = ts.next().text
            if any(cl.name == name for cl in out):
                raise ParseError(tok.line, tok.col, "distinct clauses", f"duplicate clause {name!r}")
            xs, as_ = self.binder_args(*arities[name], set())
            ts.expect("=>")
            out.append(Clause(name, xs, as_, self.statement()))
            if not ts.accept(","):
                break
        ts.expect("}")
        return tuple(out)

    # producers and consumers

    def producer(self) -> Producer:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "int":
            return Lit(int(ts.next().text))
        if ts.at("-") and ts.peek_at(1).kind == "int":
            ts.next()
            return Lit(-int(ts.next().text))
        if ts.accept("("):
            p = self.producer()
            ts.expect(")")
            return p
        if ts.accept("mu"):
            a = self.ident("a covariable")
            ts.expect(".")
            return Mu(a, self.statement())
        if ts.accept("cocase"):
            return Cocase(self.clauses(DTOR_ARITY, "a destructor (hd, tl, fst, snd, ap)"))
        if tok.kind == "ident" and tok.text in CTOR_ARITY:
            k = ts.next().text
            np, nc = CTOR_ARITY[k]
            if np + nc == 0:
                if ts.at("(") and ts.peek.glued:
                    ts.next()
                    ts.accept(";")
                    ts.expect(")")
                return Ctor(k)
            ps, cs = self.args(np, nc)
            return Ctor(k, ps, cs)
        return Var(self.ident("a producer"))

    def consumer(self) -> Consumer:
        ts = self.ts
        tok = ts.peek
        if ts.accept("("):
            c = self.consumer()
            ts.expect(")")
            return c
        if ts.accept("mu~"):
            x = self.ident("a variable")
            ts.expect(".")
            return MuTilde(x, self.statement())
        if ts.accept("case"):
            return Case(self.clauses(CTOR_ARITY, "a constructor pattern (Nil, Cons, Tup)"))
        if tok.kind == "ident" and tok.text in DTOR_ARITY and ts.peek_at(1).text == "(" \
                and ts.peek_at(1).glued:
            d = ts.next().text
            ps, cs = self.args(*DTOR_ARITY[d])
            return Dtor(d, ps, cs)
        return Covar(self.ident("a consumer"))


def _guard(fn, text: str):
    try:
        return fn(_Parser(text))
    except RecursionError:
        raise ParseError(1, 1, "less deeply nested input", "nesting beyond the recursion limit")


def _whole(method: str):
    def run(p: _Parser):
        out = getattr(p, method)()
        if not p.ts.at_eof():
            p.ts.fail("end of input")
        return out

    return run


def parse_core_program(text: str) -> CoreProgram:
    return _guard(lambda p: p.program(), text)


def parse_core(text: str) -> CoreProgram | Statement:
    """A bare statement, or a program when the text has definitions."""
    prog = parse_core_program(text)
    if not prog.definitions and prog.main is not None:
        return prog.main
    return prog


def parse_statement(text: str) -> Statement:
    return _guard(_whole("statement"), text)


def parse_producer(text: str) -> Producer:
    return _guard(_whole("producer"), text)


def parse_consumer(text: str) -> Consumer:
    return _guard(_whole("consumer"), text)


# -- printing --------------------------------------------------------------------


def _args(ps, cs) -> str:
    p = ", ".join(pretty_core(x) for x in ps)
    c = ", ".join(pretty_core(x) for x in cs)
    if ps and cs:
        return f"({p}; {c})"
    if cs:
        return f"({c})"
    return f"({p})" if ps else ""


def _clause(cl: Clause) -> str:
    head = cl.name
    if cl.vars and cl.covars:
        head += f"({', '.join(cl.vars)}; {', '.join(cl.covars)})"
    elif cl.vars or cl.covars:
        head += f"({', '.join(cl.vars + cl.covars)})"
    return f"{head} => {pretty_core(cl.body)}"


def pretty_core(n: Node | CoreProgram | CoreDefinition) -> str:
    match n:
        case Var(x) | Covar(x):
            return x
        case Lit(v):
            return str(v)
        case Mu(a, s):
            return f"mu {a}. {pretty_core(s)}"
        case MuTilde(x, s):
            return f"mu~ {x}. {pretty_core(s)}"
        case Ctor(k, ps, cs) | Dtor(k, ps, cs):
            return k + _args(ps, cs)
        case Cocase(cls):
            return "cocase { " + ", ".join(_clause(cl) for cl in cls) + " }"
        case Case(cls):
            return "case { " + ", ".join(_clause(cl) for cl in cls) + " }"
        case Cut(p, c):
            return f"< {pretty_core(p)} | {pretty_core(c)} >"
        case Op(op, a, b, c):
            return f"{op}({pretty_core(a)}, {pretty_core(b)}; {pretty_core(c)})"
        case IfZ(p, s1, s2):
            return f"ifz({pretty_core(p)}, {pretty_core(s1)}, {pretty_core(s2)})"
        case Call(f, ps, cs):
            p = ", ".join(pretty_core(x) for x in ps)
            c = ", ".join(pretty_core(x) for x in cs)
            return f"{f}({p}; {c})" if cs else f"{f}({p})"
        case CoreDefinition(name, params, coparams, body):
            def binders(bs):
                return ", ".join(x if ty is None else f"{x}: {ty}" for x, ty in bs)
            sig = binders(params) + ("; " + binders(coparams) if coparams else "")
            return f"def {name}({sig}) := {pretty_core(body)}"
        case CoreProgram(defs, main):
            lines = [pretty_core(d) for d in defs]
            if main is not None:
                lines.append(pretty_core(main))
            return "\n".join(lines) + ("\n" if lines else "")
    raise TypeError(f"cannot print {n!r}")
