"""Recursive-descent parser for the formula grammar.

    formula := quant | impl
    quant   := ("E" | "A") ident "." formula
    impl    := disj ["->" impl]
    disj    := conj {"|" conj}
    conj    := lit {"&" lit}
    lit     := ["!"] (atom | "true" | "false" | "(" formula ")" | quant)
    atom    := term ("=" | "!=") term
    term    := factor {("+" | "-") factor}
    factor  := "0" | ident | "-" factor | scalar "*" factor | "(" term ")"
    scalar  := integer | "[" integer {"," integer} "]"

A quantifier in literal position extends as far right as possible.  ``a - b``
is read as ``a + -b``.  A variable bound again on the same path is renamed
to a fresh name so every path binds each name at most once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError
from .syntax import (
    FALSE, TRUE, Add, And, Equation, Exists, Forall, Formula, Implies, Neg, Not,
    Or, Scale, Term, Var, Zero,
)

_TOKEN = re.compile(r"\s*(?:(->|!=|[()\[\],.=&|!+\-*])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")
KEYWORDS = {"E", "A", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "int", "ident", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(pos, "a token", text)
        start = m.start(m.lastindex)
        kind = {1: "sym", 2: "int", 3: "ident"}[m.lastindex]
        out.append(Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.names = {t.text for t in self.toks if t.kind == "ident"}
        self.bound: list[tuple[str, str]] = []  # (source name, internal name)
        self.counter = 0

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self) -> Token:
        return self.toks[min(self.i + 1, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def fail(self, what: str):
        raise FormulaSyntaxError(self.tok.pos, what, self.text)

    def fresh(self, name: str) -> str:
        while True:
            self.counter += 1
            cand = f"{name}_{self.counter}"
            if cand not in self.names:
                self.names.add(cand)
                return cand

    def lookup(self, name: str) -> str:
        for src, internal in reversed(self.bound):
            if src == name:
                return internal
        return name

    # formulas
    def formula(self) -> Formula:
        if self.is_quant():
            return self.quant()
        return self.impl()

    def is_quant(self) -> bool:
        nxt = self.peek()
        return self.tok.kind == "ident" and self.tok.text in ("E", "A") and nxt.kind == "ident"

    def quant(self) -> Formula:
        kind = self.tok.text
        self.i += 1
        name = self.tok.text
        if name in KEYWORDS:
            self.fail("a variable name")
        self.i += 1
        self.expect(".")
        internal = self.fresh(name) if any(src == name for src, _ in self.bound) else name
        self.bound.append((name, internal))
        body = self.formula()
        self.bound.pop()
        return (Exists if kind == "E" else Forall)(internal, body)

    def impl(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        args = [self.conj()]
        while self.at("|"):
            self.i += 1
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self) -> Formula:
        args = [self.lit()]
        while self.at("&"):
            self.i += 1
            args.append(self.lit())
        return args[0] if len(args) == 1 else And(tuple(args))

    def lit(self) -> Formula:
        if self.at("!") :
            self.i += 1
            return Not(self.lit_body())
        return self.lit_body()

    def lit_body(self) -> Formula:
        if self.is_quant():
            return self.quant()
        if self.at("true"):
            self.i += 1
            return TRUE
        if self.at("false"):
            self.i += 1
            return FALSE
        if self.at("("):
            # either a parenthesised formula or an atom starting with a term
            save = self.i
            try:
                return self.atom()
            except FormulaSyntaxError:
                self.i = save
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        lhs = self.term()
        if self.at("="):
            eq = True
        elif self.at("!="):
            eq = False
        else:
            self.fail("'=' or '!='")
        self.i += 1
        return Equation(lhs, self.term(), eq)

    # terms
    def term(self) -> Term:
        t = self.factor()
        while self.at("+") or self.at("-"):
            minus = self.at("-")
            self.i += 1
            f = self.factor()
            t = Add(t, Neg(f) if minus else f)
        return t

    def factor(self) -> Term:
        tok = self.tok
        if tok.kind == "int":
            if self.peek().text == "*":
                self.i += 2
                return Scale(int(tok.text), self.factor())
            if tok.text.strip("0") == "":
                self.i += 1
                return Zero()
            self.fail("'*' after a scalar")
        if self.at("["):
            self.i += 1
            coeffs = [self.integer()]
            while self.at(","):
                self.i += 1
                coeffs.append(self.integer())
            self.expect("]")
            self.expect("*")
            return Scale(tuple(coeffs), self.factor())
        if self.at("-"):
            self.i += 1
            return Neg(self.factor())
        if self.at("("):
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.i += 1
            return Var(self.lookup(tok.text))
        self.fail("a term")

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("an integer")
        v = int(self.tok.text)
        self.i += 1
        return v


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "end":
        p.fail("end of input")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "end":
        p.fail("end of input")
    return t
