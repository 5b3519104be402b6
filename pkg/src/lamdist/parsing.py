"""Text syntax for both calculi.

Pure terms::

    term ::= '\\' ident+ '.' term | atom+ ['\\' ...]
    atom ::= ident | '(' term ')'

Distributive terms and types::

    dterm ::= primary ('[' (dterm (',' dterm)*)? ']')*
    primary ::= ident '^' type | '\\' ident ['^' nat] '.' dterm | '(' dterm ')'
    type ::= ident '^' nat | '[' (type (',' type)*)? ']' '->^' nat type

``λ`` may be used in place of the backslash. Lambdas written without a label
receive fresh labels above the largest explicit one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from . import dist_core as dc
from . import lambda_core as lc
from .errors import ParseError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->\^)
  | (?P<nat>\d+)
  | (?P<ident>[^\W\dλ][^\Wλ]*'*)
  | (?P<sym>[\\λ.()\[\],^#])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", text, i)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            out.append(Token("sym" if kind == "sym" else kind, "\\" if tok == "λ" else tok, i))
        i = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("sym", "arrow") and tok.text == text

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.peek.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", self.text, tok.offset)

    def finish(self):
        if self.peek.kind != "eof":
            self.fail("unexpected trailing input")


# ---------------------------------------------------------------------------
# Pure terms


class _LamParser(_Parser):
    def __init__(self, text: str, defs: Mapping[str, lc.Term]):
        super().__init__(text)
        self.defs = defs
        self.scope: list[str] = []

    def term(self) -> lc.Term:
        if self.at("\\"):
            self.advance()
            names = [self.expect_kind("ident", "binder name").text]
            while self.peek.kind == "ident":
                names.append(self.advance().text)
            self.expect(".")
            self.scope.extend(names)
            body = self.term()
            del self.scope[-len(names):]
            for name in reversed(names):
                body = lc.lam(name, body)
            return body
        head = self.atom()
        while True:
            if self.peek.kind == "ident" or self.at("("):
                head = lc.App(head, self.atom())
            elif self.at("\\"):
                return lc.App(head, self.term())
            else:
                return head

    def atom(self) -> lc.Term:
        if self.at("("):
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        tok = self.expect_kind("ident", "a variable, '(' or a lambda")
        if tok.text not in self.scope and tok.text in self.defs:
            return self.defs[tok.text]
        return lc.Var(tok.text)


def parse_lambda(text: str, defs: Mapping[str, lc.Term] | None = None) -> lc.Term:
    """Parse a pure term; free identifiers found in ``defs`` are expanded."""
    p = _LamParser(text, defs or {})
    t = p.term()
    p.finish()
    return t


# ---------------------------------------------------------------------------
# Distributive terms


class _DistParser(_Parser):
    def __init__(self, text: str):
        super().__init__(text)
        self.max_label = 0
        self.unlabeled = 0

    def nat(self) -> int:
        n = int(self.expect_kind("nat", "a natural number label").text)
        return n

    def type(self) -> dc.DistType:
        if self.at("["):
            self.advance()
            dom = []
            if not self.at("]"):
                dom.append(self.type())
                while self.at(","):
                    self.advance()
                    dom.append(self.type())
            self.expect("]")
            self.expect_kind("arrow", "'->^'")
            label = self.nat()
            return dc.Arrow(tuple(dom), label, self.type())
        name = self.expect_kind("ident", "a type").text
        self.expect("^")
        return dc.Base(name, self.nat())

    def dterm(self) -> dc.DistTerm:
        t = self.primary()
        while self.at("["):
            self.advance()
            args = []
            if not self.at("]"):
                args.append(self.dterm())
                while self.at(","):
                    self.advance()
                    args.append(self.dterm())
            self.expect("]")
            t = dc.DApp(t, tuple(args))
        return t

    def primary(self) -> dc.DistTerm:
        if self.at("("):
            self.advance()
            t = self.dterm()
            self.expect(")")
            return t
        if self.at("\\"):
            self.advance()
            name = self.expect_kind("ident", "binder name").text
            if self.at("^"):
                self.advance()
                label = self.nat()
                self.max_label = max(self.max_label, label)
            else:
                self.unlabeled += 1
                label = -self.unlabeled
            self.expect(".")
            return dc.dlam(name, label, self.dterm())
        name = self.expect_kind("ident", "a variable, '(' or a lambda").text
        self.expect("^")
        return dc.DVar(name, self.type())


def _relabel(t: dc.DistTerm, base: int) -> dc.DistTerm:
    if isinstance(t, dc.DLam):
        label = base - t.label if t.label < 0 else t.label
        return dc.DLam(label, _relabel(t.body, base), t.hint)
    if isinstance(t, dc.DApp):
        return dc.DApp(_relabel(t.fun, base), tuple(_relabel(a, base) for a in t.args))
    return t


def parse_dist(text: str) -> dc.DistTerm:
    p = _DistParser(text)
    t = p.dterm()
    p.finish()
    if p.unlabeled:
        t = _relabel(t, p.max_label)
    return t


def parse_type(text: str) -> dc.DistType:
    p = _DistParser(text)
    ty = p.type()
    p.finish()
    return ty
