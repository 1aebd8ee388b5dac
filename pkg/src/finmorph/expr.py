"""Polynomial expression grammar, pretty printer and the system file format.

Grammar (no implicit multiplication)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' INT)?
    atom    := RATIONAL | NAME | '(' expr ')' | '-' factor
    RATIONAL:= INT | INT '/' INT

System files::

    # comments and blank lines are ignored
    variables: x, y
    x + y
    x^2 + y^2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .polyring import Polynomial, Ring


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()])|(?P<bad>\S))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        col = m.start(kind) + 1
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", line, col)
        toks.append(_Tok(kind, m.group(kind), col))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.ring = ring
        self.line = line
        self.index = {name: i for i, name in enumerate(ring.names)}

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            tok = self.peek()
            if tok.kind in ("num", "name") or tok.text == "(":
                raise self.error("implicit multiplication is not allowed; use '*'")
            raise self.error(f"unexpected {tok.text!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        acc = self.term().scale(sign)
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek().text == "*" and self.peek().kind == "op":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.take()
            tok = self.take()
            if tok.kind != "num" or "/" in tok.text:
                raise self.error("exponent must be a non-negative integer", tok)
            base = base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        n = self.ring.nvars
        tok = self.take()
        if tok.kind == "num":
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise self.error("zero denominator", tok)
            return Polynomial.constant(n, Fraction(int(num), int(den or 1)))
        if tok.kind == "name":
            if tok.text not in self.index:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return Polynomial.variable(n, self.index[tok.text])
        if tok.text == "(":
            inner = self.expr()
            close = self.take()
            if close.text != ")":
                raise self.error("expected ')'", close)
            return inner
        if tok.text == "-":
            return -self.factor()
        if tok.kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {tok.text!r}", tok)


def parse_polynomial(text: str, ring: Ring | Sequence[str], line: int = 1) -> Polynomial:
    if not isinstance(ring, Ring):
        ring = Ring(tuple(ring))
    return _Parser(text, ring, line).parse()


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, names: Ring | Sequence[str]) -> str:
    """Render p in descending grevlex order, e.g. ``x^2 - 1/2*x*y + 3``."""
    if isinstance(names, Ring):
        names = names.names
    if p.is_zero():
        return "0"
    pieces = []
    for exps, coeff in p.sorted_terms():
        factors = [
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
        ]
        mag = abs(coeff)
        if not factors:
            body = format_scalar(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_scalar(mag)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(pieces)


# -- system files -------------------------------------------------------------


@dataclass(frozen=True)
class SystemFile:
    ring: Ring
    polys: tuple[Polynomial, ...]
    sources: tuple[str, ...]


def parse_system(text: str) -> SystemFile:
    ring = None
    polys: list[Polynomial] = []
    sources: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ring is None:
            key, sep, rest = line.partition(":")
            if not sep or key.strip() != "variables":
                raise ParseError("first entry must be 'variables: ...'", lineno, 1)
            names = [n for n in re.split(r"[\s,]+", rest.strip()) if n]
            try:
                ring = Ring(tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, len(key) + 2) from None
            continue
        polys.append(parse_polynomial(line, ring, line=lineno))
        sources.append(line.strip())
    if ring is None:
        raise ParseError("missing 'variables:' line", 1, 1)
    return SystemFile(ring, tuple(polys), tuple(sources))


def read_system(path: str | Path) -> SystemFile:
    return parse_system(Path(path).read_text(encoding="utf-8"))


def format_system(ring: Ring, polys: Sequence[Polynomial], comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append("variables: " + ", ".join(ring.names))
    lines.extend(format_polynomial(p, ring) for p in polys)
    return "\n".join(lines) + "\n"
