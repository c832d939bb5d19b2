"""Recursive-descent parser for the first-order interchange syntax.

Operator spellings, Unicode first with ASCII aliases:

    ∀ forall   ∃ exists   ¬ ~   ∧ &   ∨ |   ⊕ ^   → ->   ↔ <->

Precedence is ¬ above ∧ above {∨, ⊕} above {→, ↔}, left-associative within
a level, except that a chain mixing → and ↔ requires explicit parentheses.
A quantifier prefix binds the longest formula that follows it, so
``∀x P(x) ∧ Q(x)`` is ``∀x (P(x) ∧ Q(x))``; parenthesize the body to narrow
the scope. Negation directly before a quantifier is accepted and applies to
the whole quantified formula.

Identifiers are Unicode letters followed by letters/digits/underscores. In
term position, a name bound by an enclosing quantifier is a variable; a free
single letter in x, y, z, u, v, w (optionally digit-suffixed) is a variable;
anything else is a constant. Function applications in term position parse
into ``Func`` nodes (validation rejects them downstream).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from folsquare.errors import ParseError
from folsquare.fol.ast import (
    Atom,
    Binary,
    BinOp,
    Const,
    Formula,
    Func,
    Not,
    Quant,
    Quantified,
    Term,
    Var,
    is_binder_name,
    is_variable_name,
)

_SYMBOLS = {
    "∀": "FORALL",
    "∃": "EXISTS",
    "¬": "NOT",
    "~": "NOT",
    "∧": "AND",
    "&": "AND",
    "∨": "OR",
    "|": "OR",
    "⊕": "XOR",
    "^": "XOR",
    "→": "IMPLIES",
    "->": "IMPLIES",
    "↔": "IFF",
    "<->": "IFF",
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
}

_KEYWORDS = {"forall": "FORALL", "exists": "EXISTS"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|[∀∃¬~∧&∨|⊕^→↔(),])|(?P<ident>[^\W\d_][\w]*))",
    re.UNICODE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: tuple[int, int]


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stray = text[pos:].lstrip()
            if not stray:
                break
            at = len(text) - len(stray)
            raise ParseError(f"unexpected character {stray[0]!r}", (at, at + 1), check="Lexical")
        if m.group("op"):
            tokens.append(Token(_SYMBOLS[m.group("op")], m.group("op"), m.span("op")))
        else:
            name = m.group("ident")
            kind = _KEYWORDS.get(name, "IDENT")
            tokens.append(Token(kind, name, m.span("ident")))
        pos = m.end()
    return tokens


# Binding strength of binary operators; higher binds tighter.
_PRECEDENCE = {"AND": 3, "OR": 2, "XOR": 2, "IMPLIES": 1, "IFF": 1}
_BINOPS = {
    "AND": BinOp.AND,
    "OR": BinOp.OR,
    "XOR": BinOp.XOR,
    "IMPLIES": BinOp.IMPLIES,
    "IFF": BinOp.IFF,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.bound: list[str] = []  # quantifier scope stack

    def _end_span(self) -> tuple[int, int]:
        n = len(self.text)
        return (n, n + 1)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._end_span())
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.span)
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula(0)
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing {tok.text!r}", tok.span)
        return f

    def formula(self, min_prec: int) -> Formula:
        left = self.unary()
        prev_kind: str | None = None
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in _PRECEDENCE:
                return left
            prec = _PRECEDENCE[tok.kind]
            if prec < min_prec:
                return left
            if (
                prec == 1
                and prev_kind is not None
                and prev_kind != tok.kind
            ):
                raise ParseError(
                    "mixed → and ↔ chain needs explicit parentheses", tok.span
                )
            self.take()
            right = self.formula(prec + 1)
            left = Binary(_BINOPS[tok.kind], left, right)
            if prec == 1:
                prev_kind = tok.kind
            # tail of same-or-looser operators handled by this loop (left assoc)

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("missing operand", self._end_span())
        if tok.kind == "NOT":
            self.take()
            return Not(self.unary())
        if tok.kind in ("FORALL", "EXISTS"):
            return self.quantified()
        if tok.kind == "LPAREN":
            self.take()
            inner = self.formula(0)
            self.take("RPAREN")
            return inner
        if tok.kind == "IDENT":
            return self.atom()
        raise ParseError(f"operator {tok.text!r} is missing an operand", tok.span)

    def quantified(self) -> Formula:
        tok = self.take()
        quant = Quant.FORALL if tok.kind == "FORALL" else Quant.EXISTS
        var_tok = self.take("IDENT")
        if not is_binder_name(var_tok.text):
            raise ParseError(
                f"quantifier binder {var_tok.text!r} is not a variable",
                var_tok.span,
                check="QuantifierScope",
            )
        self.bound.append(var_tok.text)
        try:
            # Longest-scope convention: the body is a full formula.
            body = self.formula(0)
        finally:
            self.bound.pop()
        return Quantified(quant, var_tok.text, body)

    def atom(self) -> Formula:
        name_tok = self.take("IDENT")
        tok = self.peek()
        if tok is None or tok.kind != "LPAREN":
            span = tok.span if tok is not None else self._end_span()
            raise ParseError(
                f"predicate {name_tok.text!r} needs an argument list",
                span,
                check="PredicateStructure",
            )
        self.take("LPAREN")
        args = [self.term()]
        while self.peek() is not None and self.peek().kind == "COMMA":
            self.take()
            args.append(self.term())
        self.take("RPAREN")
        return Atom(name_tok.text, tuple(args))

    def term(self) -> Term:
        tok = self.take("IDENT")
        nxt = self.peek()
        if nxt is not None and nxt.kind == "LPAREN":
            self.take()
            args = [self.term()]
            while self.peek() is not None and self.peek().kind == "COMMA":
                self.take()
                args.append(self.term())
            self.take("RPAREN")
            return Func(tok.text, tuple(args))
        if tok.text in self.bound or is_variable_name(tok.text):
            return Var(tok.text)
        return Const(tok.text)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula AST; raises ParseError with a span."""
    if not text or not text.strip():
        raise ParseError("empty input", (0, max(1, len(text))), check="Lexical")
    return _Parser(text).parse()
