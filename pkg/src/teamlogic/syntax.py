"""Concrete syntax: a recursive-descent parser and the canonical printer.

Grammar, loosest binding first::

    imp     := gor ('->' imp)?
    gor     := disj ('gor' disj)*
    disj    := conj (('|' | 'or' | 'hor') conj)*
    conj    := unary (('&' | 'and' | 'hand') unary)*
    unary   := ('neg' | 'bneg' | 'dia' | 'box' | 'hdia') unary | primary
    primary := atom | 'bot' | 'top' | 'NE' | 'NEstar' | 'Botbar'
             | 'dep' '(' names? ';' name ')' | 'con' '(' name ')' | '(' imp ')'

The printer parenthesizes every binary node, so parse(to_text(f)) == f.
"""

from __future__ import annotations

import re

from .errors import ParseError, ProfileViolation
from .formula import (
    BOT,
    BOTBAR,
    NAME_RE,
    RESERVED,
    And,
    Bot,
    BoolNeg,
    Dep,
    Dia,
    DualNeg,
    Formula,
    GlobalOr,
    HSAnd,
    HSDia,
    HSOr,
    Implies,
    Logic,
    NE,
    NEStar,
    Or,
    PropAtom,
    botbar_star,
    validate,
)

_TOKEN_RE = re.compile(r"\s*(?:(->)|([A-Za-z][A-Za-z0-9_]*)|([()&|,;]))")
_PREFIX = {"neg", "bneg", "dia", "box", "hdia"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, logic: Logic):
        self.tokens = _tokenize(text)
        self.i = 0
        self.logic = logic
        hs = logic is Logic.HS
        self.and_cls = HSAnd if hs else And
        self.or_cls = HSOr if hs else Or

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        if self.peek() != "<end>":
            raise ParseError(f"unexpected token {self.peek()!r}", self.pos())
        return f

    def implication(self) -> Formula:
        left = self.global_or()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def global_or(self) -> Formula:
        f = self.disjunction()
        while self.peek() == "gor":
            self.take()
            f = GlobalOr(f, self.disjunction())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() in ("|", "or", "hor"):
            cls = HSOr if self.take() == "hor" else self.or_cls
            f = cls(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() in ("&", "and", "hand"):
            cls = HSAnd if self.take() == "hand" else self.and_cls
            f = cls(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok not in _PREFIX:
            return self.primary()
        self.take()
        body = self.unary()
        if tok == "neg":
            return Implies(body, BOT) if self.logic is Logic.InqB else DualNeg(body)
        if tok == "bneg":
            return BoolNeg(body)
        if tok == "dia":
            return Dia(body)
        if tok == "hdia":
            return HSDia(body)
        return DualNeg(Dia(DualNeg(body)))

    def name(self) -> str:
        tok, pos = self.tokens[self.i]
        if not NAME_RE.match(tok) or tok in RESERVED:
            raise ParseError(f"expected a proposition name, found {tok!r}", pos)
        self.i += 1
        return tok

    def primary(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.take()
            f = self.implication()
            self.take(")")
            return f
        if tok == "bot":
            self.take()
            return Bot()
        if tok == "top":
            self.take()
            return Implies(BOT, BOT) if self.logic is Logic.InqB else DualNeg(BOT)
        if tok == "NE":
            self.take()
            return NE()
        if tok == "NEstar":
            self.take()
            return NEStar()
        if tok == "Botbar":
            self.take()
            return botbar_star() if self.logic is Logic.PLNEStar_GD else BOTBAR
        if tok == "con":
            self.take()
            self.take("(")
            q = self.name()
            self.take(")")
            return Dep((), q)
        if tok == "dep":
            self.take()
            self.take("(")
            ants: list[str] = []
            if self.peek() != ";":
                ants.append(self.name())
                while self.peek() == ",":
                    self.take()
                    ants.append(self.name())
            self.take(";")
            q = self.name()
            self.take(")")
            if len(set(ants)) != len(ants):
                raise ParseError("repeated antecedent in dependence atom", pos)
            return Dep(tuple(ants), q)
        if NAME_RE.match(tok) and tok not in RESERVED:
            self.take()
            return PropAtom(tok)
        if tok == "<end>":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {tok!r}", pos)


def parse(text: str, logic: Logic | str) -> Formula:
    """Parse ``text`` and validate the result against ``logic``."""
    logic = Logic.lookup(logic)
    f = _Parser(text, logic).parse()
    try:
        return validate(f, logic)
    except ProfileViolation as exc:
        raise ProfileViolation(f"{exc} (in {text.strip()!r})") from None


_BINARY_OP = {And: "&", Or: "|", GlobalOr: "gor", HSAnd: "hand", HSOr: "hor", Implies: "->"}
_UNARY_OP = {DualNeg: "neg", BoolNeg: "bneg", Dia: "dia", HSDia: "hdia"}


def to_text(f: Formula) -> str:
    """Canonical concrete syntax of ``f``."""
    parts: list[str] = []
    _emit(f, parts)
    return "".join(parts)


def _emit(f: Formula, out: list[str]) -> None:
    t = type(f)
    if t is PropAtom:
        out.append(f.name)
    elif t is Bot:
        out.append("bot")
    elif t is NE:
        out.append("NE")
    elif t is NEStar:
        out.append("NEstar")
    elif t is Dep:
        if f.antecedents:
            out.append(f"dep({','.join(f.antecedents)}; {f.consequent})")
        else:
            out.append(f"con({f.consequent})")
    elif t in _UNARY_OP:
        out.append(_UNARY_OP[t] + " ")
        _emit(f.child, out)
    else:
        out.append("(")
        _emit(f.left, out)
        out.append(f" {_BINARY_OP[t]} ")
        _emit(f.right, out)
        out.append(")")
