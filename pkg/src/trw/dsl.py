"""Recursive-descent parser for polynomial expressions and family documents.

Expression grammar::

    expr   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := ("-")? atom ("^" nat)?
    atom   := nat | "x" | identifier | "(" expr ")"

A leading minus binds looser than ``^``: ``-a^2`` is ``-(a^2)``.  There is no
implicit multiplication.  The result is a ParamXPoly in x over the declared
parameters.

A family document is line-oriented::

    name: <identifier>
    params: <id> (, <id>)*
    poly: <expr>
    range <id>: <int>..<int>

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import FamilySyntaxError
from .multipoly import MultiParamPoly, ParamXPoly

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^()])|(\S)")
MAX_PARAMS = 2


@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "ident", "op", "end"
    text: str
    column: int


def tokenize(text: str, *, line: Optional[int] = None, col_offset: int = 0) -> list[Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        col = m.start() + 1 + col_offset
        if m.group(1):
            tokens.append(Token("nat", m.group(1), col))
        elif m.group(2):
            tokens.append(Token("ident", m.group(2), col))
        elif m.group(3):
            tokens.append(Token("op", m.group(3), col))
        else:
            raise FamilySyntaxError(
                f"unexpected character {m.group(4)!r}", line, col,
                ("number", "identifier", "operator"),
            )
    tokens.append(Token("end", "", len(text) + 1 + col_offset))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], params: tuple[str, ...], line: Optional[int]):
        self.tokens = tokens
        self.pos = 0
        self.params = params
        self.line = line

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, expected=()):
        raise FamilySyntaxError(message, self.line, self.tok.column, expected)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.pos += 1
            return True
        return False

    def parse(self) -> ParamXPoly:
        result = self.expr()
        if self.tok.kind != "end":
            shown = self.tok.text
            self.error(f"unexpected {shown!r}", ('"+"', '"-"', '"*"', "end of expression"))
        return result

    def expr(self) -> ParamXPoly:
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> ParamXPoly:
        acc = self.factor()
        while self.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> ParamXPoly:
        negate = self.accept("-")
        base = self.atom()
        if self.accept("^"):
            if self.tok.kind != "nat":
                self.error("exponent must be a nonnegative integer", ("natural number",))
            base = base ** int(self.tok.text)
            self.pos += 1
        return -base if negate else base

    def atom(self) -> ParamXPoly:
        tok = self.tok
        if tok.kind == "nat":
            self.pos += 1
            return ParamXPoly(self.params, (int(tok.text),))
        if tok.kind == "ident":
            self.pos += 1
            if tok.text == "x":
                return ParamXPoly.x(self.params)
            if tok.text in self.params:
                return ParamXPoly(self.params, (MultiParamPoly.var(self.params, tok.text),))
            raise FamilySyntaxError(
                f"undeclared identifier {tok.text!r}", self.line, tok.column,
                ("x",) + tuple(repr(p) for p in self.params),
            )
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.error("unclosed parenthesis", ('")"',))
            return inner
        what = "end of expression" if tok.kind == "end" else repr(tok.text)
        self.error(f"unexpected {what}", ("number", "x", "identifier", '"("'))


def identifiers_in(text: str) -> list[str]:
    """Non-x identifiers in order of first appearance."""
    seen = []
    for tok in tokenize(text):
        if tok.kind == "ident" and tok.text != "x" and tok.text not in seen:
            seen.append(tok.text)
    return seen


def parse_expr(
    text: str,
    params: Sequence[str] = (),
    *,
    line: Optional[int] = None,
    col_offset: int = 0,
) -> ParamXPoly:
    params = tuple(params)
    if "x" in params:
        raise FamilySyntaxError("'x' is reserved for the polynomial variable", line)
    tokens = tokenize(text, line=line, col_offset=col_offset)
    return _Parser(tokens, params, line).parse()


@dataclass
class FamilyDocument:
    name: Optional[str] = None
    params: Optional[tuple[str, ...]] = None
    poly_text: Optional[str] = None
    poly_line: Optional[int] = None
    poly_col: int = 0
    ranges: dict[str, tuple[int, int]] = field(default_factory=dict)
    poly: Optional[ParamXPoly] = None


_RANGE_RE = re.compile(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*\Z")


def parse_range(text: str, line: Optional[int] = None) -> tuple[int, int]:
    m = _RANGE_RE.match(text)
    if not m:
        raise FamilySyntaxError(f"bad range {text.strip()!r}", line, None, ("<int>..<int>",))
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise FamilySyntaxError(f"empty range {lo}..{hi}", line)
    return lo, hi


def parse_document(text: str) -> FamilyDocument:
    """Split a family document into its fields and parse the polynomial.

    Only ``poly:`` is mandatory; a missing ``params:`` line means the
    parameters are the identifiers of the polynomial in order of appearance.
    """
    doc = FamilyDocument()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = raw.partition(":")
        if not sep:
            raise FamilySyntaxError(
                "expected 'key: value'", lineno, 1, ("name:", "params:", "poly:", "range <id>:")
            )
        key = key.strip()
        value_col = len(key) + 1 + (len(raw) - len(raw.lstrip()))
        if key == "name":
            if doc.name is not None:
                raise FamilySyntaxError("second 'name:' line; a document defines one family", lineno)
            name = value.strip()
            if not IDENT_RE.match(name):
                raise FamilySyntaxError(f"bad family name {name!r}", lineno, None, ("identifier",))
            doc.name = name
        elif key == "params":
            if doc.params is not None:
                raise FamilySyntaxError("duplicate 'params:' line", lineno)
            names = tuple(p.strip() for p in value.split(",")) if value.strip() else ()
            for p in names:
                if not IDENT_RE.match(p) or p == "x":
                    raise FamilySyntaxError(f"bad parameter name {p!r}", lineno, None, ("identifier other than x",))
            if len(set(names)) != len(names):
                raise FamilySyntaxError("repeated parameter name", lineno)
            if len(names) > MAX_PARAMS:
                raise FamilySyntaxError(f"at most {MAX_PARAMS} parameters allowed", lineno)
            doc.params = names
        elif key == "poly":
            if doc.poly_text is not None:
                raise FamilySyntaxError("second 'poly:' line; a document defines one family", lineno)
            doc.poly_text, doc.poly_line, doc.poly_col = value, lineno, value_col
        elif key.startswith("range"):
            pname = key[len("range"):].strip()
            if not IDENT_RE.match(pname):
                raise FamilySyntaxError(f"bad range key {key!r}", lineno, None, ("range <id>:",))
            if pname in doc.ranges:
                raise FamilySyntaxError(f"duplicate range for {pname!r}", lineno)
            doc.ranges[pname] = parse_range(value, lineno)
        else:
            raise FamilySyntaxError(
                f"unknown key {key!r}", lineno, 1, ("name", "params", "poly", "range <id>")
            )
    if doc.poly_text is None:
        raise FamilySyntaxError("missing 'poly:' line", None, None, ("poly: <expr>",))
    if doc.params is None:
        inferred = tuple(identifiers_in(doc.poly_text))
        if len(inferred) > MAX_PARAMS:
            raise FamilySyntaxError(f"at most {MAX_PARAMS} parameters allowed", doc.poly_line)
        doc.params = inferred
    for pname in doc.ranges:
        if pname not in doc.params:
            raise FamilySyntaxError(f"range given for undeclared parameter {pname!r}")
    doc.poly = parse_expr(doc.poly_text, doc.params, line=doc.poly_line, col_offset=doc.poly_col)
    return doc
