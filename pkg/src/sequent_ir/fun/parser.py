"""Reader and printer for the ``.fun`` text format.

Grammar (``--`` starts a comment)::

    program ::= def* term?                       -- the optional main term starts a line
    def     ::= "def" f "(" params? [";" params?] ")" ":" type ":=" term
    params  ::= x ":" type ("," x ":" type)*
    term    ::= "let" x [":" type] "=" term "in" term
              | "\\" x [":" type] "=>" term
              | sum
    sum     ::= prod (("+" | "-") prod)*
    prod    ::= app ("*" app)*
    app     ::= postfix postfix*                 -- application by juxtaposition
    postfix ::= atom ("." dtor)*
    atom    ::= int | "-" int | x | f(args [";" covars])   -- no space before "("
              | "Nil" | "Cons" "(" term "," term ")" | "Tup" "(" term "," term ")"
              | "ifz" "(" term "," term "," term ")"
              | "case" term "of" "{" K[(x, ...)] "=>" term, ... "}"
              | "cocase" "{" dtor "=>" term, ... "}"
              | "label" a "{" term "}" | "goto" "(" term ";" a ")"
              | "letcc" k "{" term "}" | "callcc" "(" term ")" | "cc" "(" term ")"
              | "labelC" a "{" term "}"
              | "(" term [":" type] ")"
"""

from __future__ import annotations

from ..lexer import ParseError, TokenStream
from ..types import Arrow, Int, LPairT, ListT, PairT, StreamT, Type
from .syntax import (
    CTORS, DTORS, HOLE, App, Ascribe, Call, CallCC, Case, Clause, CoClause, Cocase, Covar,
    Ctor, Definition, Dtor, FelleisenC, Goto, IfZ, Label, LabelC, Lam, Let, LetCC, Lit,
    BinOp, Program, Reified, Term, Var, plug,
)

KEYWORDS = {
    "def", "let", "in", "ifz", "case", "of", "cocase", "label", "goto", "letcc",
    "callcc", "cc", "labelC", "Nil", "Cons", "Tup",
}

_ATOM_KEYWORDS = {"ifz", "case", "cocase", "label", "goto", "letcc", "callcc", "cc",
                  "labelC", "Nil", "Cons", "Tup"}


# -- types ---------------------------------------------------------------------


def parse_type_tokens(ts: TokenStream) -> Type:
    dom = _btype(ts)
    if ts.accept("->"):
        return Arrow(dom, parse_type_tokens(ts))
    return dom


def _btype(ts: TokenStream) -> Type:
    tok = ts.peek
    if ts.accept("("):
        ty = parse_type_tokens(ts)
        ts.expect(")")
        return ty
    if tok.kind == "ident":
        if tok.text == "Int":
            ts.next()
            return Int
        if tok.text in ("List", "Stream"):
            ts.next()
            ts.expect("(")
            elem = parse_type_tokens(ts)
            ts.expect(")")
            return ListT(elem) if tok.text == "List" else StreamT(elem)
        if tok.text in ("Pair", "LPair"):
            ts.next()
            ts.expect("(")
            a = parse_type_tokens(ts)
            ts.expect(",")
            b = parse_type_tokens(ts)
            ts.expect(")")
            return PairT(a, b) if tok.text == "Pair" else LPairT(a, b)
    ts.fail("a type")


def parse_type(text: str) -> Type:
    ts = TokenStream(text)
    ty = parse_type_tokens(ts)
    if not ts.at_eof():
        ts.fail("end of input")
    return ty


# -- terms ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def ident(self, what="an identifier") -> str:
        tok = self.ts.peek
        if tok.kind != "ident" or tok.text in KEYWORDS or tok.text == "mu~":
            self.ts.fail(what)
        return self.ts.next().text

    def int_lit(self) -> int:
        tok = self.ts.peek
        if tok.kind != "int":
            self.ts.fail("an integer")
        return int(self.ts.next().text)

    # program

    def program(self) -> Program:
        defs: list[Definition] = []
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
            main = self.term()
        if not self.ts.at_eof():
            self.ts.fail("end of input")
        return Program(tuple(defs), main)

    def definition(self) -> Definition:
        self.ts.expect("def")
        name = self.ident("a definition name")
        self.ts.expect("(")
        params, coparams = [], []
        names: set[str] = set()

        def param_list(into):
            while True:
                tok = self.ts.peek
                x = self.ident("a parameter name")
                if x in names:
                    raise ParseError(tok.line, tok.col, "distinct parameter names",
                                     f"duplicate parameter {x!r}")
                names.add(x)
                self.ts.expect(":")
                into.append((x, parse_type_tokens(self.ts)))
                if not self.ts.accept(","):
                    break

        if not self.ts.at(";") and not self.ts.at(")"):
            param_list(params)
        if self.ts.accept(";") and not self.ts.at(")"):
            param_list(coparams)
        self.ts.expect(")")
        self.ts.expect(":")
        ret = parse_type_tokens(self.ts)
        self.ts.expect(":=")
        body = self.term()
        return Definition(name, tuple(params), tuple(coparams), ret, body)

    # terms

    def term(self) -> Term:
        ts = self.ts
        if ts.accept("let"):
            x = self.ident("a variable")
            annot = parse_type_tokens(ts) if ts.accept(":") else None
            ts.expect("=")
            bound = self.term()
            ts.expect("in")
            return Let(x, bound, self.term(), annot)
        if ts.accept("\\"):
            x = self.ident("a variable")
            annot = parse_type_tokens(ts) if ts.accept(":") else None
            ts.expect("=>")
            return Lam(x, self.term(), annot)
        return self.sum()

    def sum(self) -> Term:
        t = self.prod()
        while self.ts.at("+") or self.ts.at("-"):
            op = self.ts.next().text
            t = BinOp(op, t, self.prod())
        return t

    def prod(self) -> Term:
        t = self.app()
        while self.ts.accept("*"):
            t = BinOp("*", t, self.app())
        return t

    def _starts_arg(self) -> bool:
        tok = self.ts.peek
        if tok.col == 1:
            # a token at the start of a line never continues an application,
            # so a main term can follow the last definition
            return False
        if tok.kind == "int":
            return True
        if tok.kind == "ident":
            return tok.text not in KEYWORDS or tok.text in _ATOM_KEYWORDS
        return tok.kind == "sym" and tok.text == "("

    def app(self) -> Term:
        t = self.postfix()
        while self._starts_arg():
            t = App(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.atom()
        while self.ts.accept("."):
            tok = self.ts.peek
            if tok.kind != "ident" or tok.text not in DTORS:
                self.ts.fail("a destructor (hd, tl, fst, snd)")
            t = Dtor(t, self.ts.next().text)
        return t

    def atom(self) -> Term:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "int":
            return Lit(self.int_lit())
        if ts.at("-") and ts.peek_at(1).kind == "int":
            ts.next()
            return Lit(-self.int_lit())
        if ts.accept("("):
            t = self.term()
            if ts.accept(":"):
                t = Ascribe(t, parse_type_tokens(ts))
            ts.expect(")")
            return t
        if ts.at("\\") or ts.at("let"):
            return self.term()
        if tok.kind != "ident":
            ts.fail("a term")
        word = tok.text
        if word == "ifz":
            ts.next()
            ts.expect("(")
            c = self.term()
            ts.expect(",")
            a = self.term()
            ts.expect(",")
            b = self.term()
            ts.expect(")")
            return IfZ(c, a, b)
        if word == "case":
            ts.next()
            scr = self.term()
            ts.expect("of")
            return Case(scr, self.clauses())
        if word == "cocase":
            ts.next()
            return Cocase(self.coclauses())
        if word in ("label", "labelC", "letcc"):
            ts.next()
            name = self.ident("a label name" if word != "letcc" else "a variable")
            ts.expect("{")
            body = self.term()
            ts.expect("}")
            return {"label": Label, "labelC": LabelC, "letcc": LetCC}[word](name, body)
        if word == "goto":
            ts.next()
            ts.expect("(")
            arg = self.term()
            ts.expect(";")
            a = self.ident("a label name")
            ts.expect(")")
            return Goto(arg, Covar(a))
        if word in ("callcc", "cc"):
            ts.next()
            ts.expect("(")
            f = self.term()
            ts.expect(")")
            return CallCC(f) if word == "callcc" else FelleisenC(f)
        if word in CTORS:
            ts.next()
            arity = CTORS[word]
            args: list[Term] = []
            if arity:
                ts.expect("(")
                for i in range(arity):
                    if i:
                        ts.expect(",")
                    args.append(self.term())
                ts.expect(")")
            elif ts.at("(") and ts.peek.glued:
                ts.next()
                ts.expect(")")
            return Ctor(word, tuple(args))
        if word in KEYWORDS:
            ts.fail("a term")
        name = self.ident()
        if ts.at("(") and ts.peek.glued:
            return self.call(name)
        return Var(name)

    def call(self, name: str) -> Term:
        ts = self.ts
        ts.expect("(")
        args: list[Term] = []
        coargs: list[Covar] = []
        if not ts.at(";") and not ts.at(")"):
            args.append(self.term())
            while ts.accept(","):
                args.append(self.term())
        if ts.accept(";") and not ts.at(")"):
            coargs.append(Covar(self.ident("a covariable")))
            while ts.accept(","):
                coargs.append(Covar(self.ident("a covariable")))
        ts.expect(")")
        return Call(name, tuple(args), tuple(coargs))

    def clauses(self) -> tuple[Clause, ...]:
        ts = self.ts
        ts.expect("{")
        out: list[Clause] = []
        while True:
            tok = ts.peek
            if tok.kind != "ident" or tok.text not in CTORS:
                ts.fail("a constructor pattern (Nil, Cons, Tup)")
            k = ts.next().text
            if any(cl.ctor == k for cl in out):
                raise ParseError(tok.line, tok.col, "distinct constructors", f"duplicate clause {k!r}")
            binders: list[str] = []
            if CTORS[k]:
                ts.expect("(")
                for i in range(CTORS[k]):
                    if i:
                        ts.expect(",")
                    btok = ts.peek
                    x = self.ident("a pattern variable")
                    if x in binders:
                        raise ParseError(btok.line, btok.col, "distinct pattern variables",
                                         f"duplicate {x!r}")
                    binders.append(x)
                ts.expect(")")
            ts.expect("=>")
            out.append(Clause(k, tuple(binders), self.term()))
            if not ts.accept(","):
                break
        ts.expect("}")
        return tuple(out)

    def coclauses(self) -> tuple[CoClause, ...]:
        ts = self.ts
        ts.expect("{")
        out: list[CoClause] = []
        while True:
            tok = ts.peek
            if tok.kind != "ident" or tok.text not in DTORS:
                ts.fail("a destructor (hd, tl, fst, snd)")
            d = ts.next().text
            if any(cl.dtor == d for cl in out):
                raise ParseError(tok.line, tok.col, "distinct destructors", f"duplicate clause {d!r}")
            ts.expect("=>")
            out.append(CoClause(d, self.term()))
            if not ts.accept(","):
                break
        ts.expect("}")
        return tuple(out)


def _guard(fn, text: str):
    try:
        return fn(_Parser(text))
    except RecursionError:
        raise ParseError(1, 1, "less deeply nested input", "nesting beyond the recursion limit")


def parse_program(text: str) -> Program:
    return _guard(lambda p: p.program(), text)


def parse_term(text: str) -> Term:
    def go(p: _Parser):
        t = p.term()
        if not p.ts.at_eof():
            p.ts.fail("end of input")
        return t

    return _guard(go, text)


# -- printing --------------------------------------------------------------------

# precedence levels: 0 open (let, lambda), 1 sum, 2 product, 3 application,
# 4 postfix / atom
_TOP, _SUM, _PROD, _APP, _ATOM = range(5)


def _level(t: Term) -> int:
    match t:
        case Let() | Lam():
            return _TOP
        case BinOp(op):
            return _PROD if op == "*" else _SUM
        case App():
            return _APP
    return _ATOM


def _target(k) -> str:
    if isinstance(k, Covar):
        return k.name
    return "[" + pretty_term(plug(k.frames, Var(HOLE))) + "]"


def _pp(t: Term, prec: int) -> str:
    s = _pp_raw(t)
    return f"({s})" if _level(t) < prec else s


def _pp_raw(t: Term) -> str:
    match t:
        case Var(x):
            return x
        case Lit(n):
            return str(n)
        case BinOp(op, l, r):
            lvl = _PROD if op == "*" else _SUM
            return f"{_pp(l, lvl)} {op} {_pp(r, lvl + 1)}"
        case IfZ(c, a, b):
            return f"ifz({_pp(c, _TOP)}, {_pp(a, _TOP)}, {_pp(b, _TOP)})"
        case Let(x, bound, body, annot):
            ann = f" : {annot}" if annot is not None else ""
            return f"let {x}{ann} = {_pp(bound, _TOP)} in {_pp(body, _TOP)}"
        case Call(f, args, coargs):
            ps = ", ".join(_pp(a, _TOP) for a in args)
            cs = ", ".join(_target(k) for k in coargs)
            return f"{f}({ps}; {cs})" if cs else f"{f}({ps};)"
        case Ctor(k, args):
            if not args:
                return k
            return f"{k}({', '.join(_pp(a, _TOP) for a in args)})"
        case Case(scr, clauses):
            cls = ", ".join(
                (f"{cl.ctor}({', '.join(cl.binders)})" if cl.binders else cl.ctor)
                + f" => {_pp(cl.body, _TOP)}"
                for cl in clauses
            )
            return f"case {_pp(scr, _TOP)} of {{ {cls} }}"
        case Dtor(scr, d):
            return f"{_pp(scr, _ATOM)}.{d}"
        case Cocase(clauses):
            cls = ", ".join(f"{cl.dtor} => {_pp(cl.body, _TOP)}" for cl in clauses)
            return f"cocase {{ {cls} }}"
        case Lam(x, body, annot):
            ann = f" : {annot}" if annot is not None else ""
            return f"\\{x}{ann} => {_pp(body, _TOP)}"
        case App(f, a):
            arg = _pp(a, _ATOM)
            if isinstance(a, Lit) and a.value < 0:
                arg = f"({arg})"
            return f"{_pp(f, _APP)} {arg}"
        case Label(a, body):
            return f"label {a} {{ {_pp(body, _TOP)} }}"
        case LabelC(a, body):
            return f"labelC {a} {{ {_pp(body, _TOP)} }}"
        case LetCC(k, body):
            return f"letcc {k} {{ {_pp(body, _TOP)} }}"
        case Goto(arg, k):
            return f"goto({_pp(arg, _TOP)}; {_target(k)})"
        case CallCC(f):
            return f"callcc({_pp(f, _TOP)})"
        case FelleisenC(f):
            return f"cc({_pp(f, _TOP)})"
        case Ascribe(inner, ty):
            return f"({_pp(inner, _TOP)} : {ty})"
    raise TypeError(f"not a term: {t!r}")


def pretty_term(t: Term) -> str:
    return _pp(t, _TOP)


def pretty_definition(d: Definition) -> str:
    ps = ", ".join(f"{x}: {ty}" for x, ty in d.params)
    cs = ", ".join(f"{a}: {ty}" for a, ty in d.coparams)
    sig = f"{ps}; {cs}" if cs else f"{ps};"
    return f"def {d.name}({sig}) : {d.ret} := {pretty_term(d.body)}"


def pretty_program(p: Program) -> str:
    lines = [pretty_definition(d) for d in p.definitions]
    if p.main is not None:
        lines.append(pretty_term(p.main))
    return "\n".join(lines) + ("\n" if lines else "")
