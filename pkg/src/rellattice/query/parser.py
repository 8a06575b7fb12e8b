"""Tokenizer, recursive-descent parser and printer for the query language.

Grammar::

    expr    := union
    union   := join { "|" join }
    join    := atom { "&" atom }
    atom    := NAME | builtin | "(" expr ")"
    builtin := "project" "[" attrs "]" "(" expr ")"
             | "select" "[" preds "]" "(" expr ")"
             | "rename" "[" NAME "->" NAME { "," NAME "->" NAME } "]" "(" expr ")"
             | "minus" "(" expr "," expr ")"
             | "minus_literal" "(" expr "," expr ")"
             | "tc" "[" NAME "," NAME "]" "(" expr ")"
             | "tensor" "(" expr "," expr ")"
             | "dee" | "dum" | "empty" "[" attrs "]"
             | "rel" "[" attrs "]" "{" [ row { "," row } ] "}"
    row     := "(" [ value { "," value } ] ")"
    pred    := NAME relop (NAME | INT | STRING)
    relop   := "<" | "<=" | ">" | ">=" | "=" | "!="

``&`` binds tighter than ``|``; both associate to the left.  ``#`` starts a
comment running to the end of the line.  Row values are integers, double
quoted strings, ``true`` or ``false``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, SameAttribute
from ..predicates import SymbolicRelation, cmp_rel, const_cmp_rel
from ..predicates import format_literal
from . import ast
from .ast import KEYWORDS

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>-?[0-9]+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op><=|>=|!=|[<>=&|()\[\]{},])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # name, int, string, op, arrow, eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "arrow") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def name(self, what: str = "name") -> str:
        if self.tok.kind != "name":
            raise self.error(f"expected {what}")
        return self.advance().text

    # expr := union
    def parse(self) -> ast.Expr:
        e = self.union()
        if self.tok.kind != "eof":
            raise self.error("expected '&', '|' or end of input")
        return e

    def union(self) -> ast.Expr:
        e = self.join()
        while self.at("|"):
            self.advance()
            e = ast.Union(e, self.join())
        return e

    def join(self) -> ast.Expr:
        e = self.atom()
        while self.at("&"):
            self.advance()
            e = ast.Join(e, self.atom())
        return e

    def atom(self) -> ast.Expr:
        tok = self.tok
        if self.at("("):
            self.advance()
            e = self.union()
            self.expect(")")
            return e
        if tok.kind != "name":
            raise self.error("expected a relation expression")
        if tok.text not in KEYWORDS:
            self.advance()
            return ast.Name(tok.text)
        self.advance()
        kw = tok.text
        if kw == "dee":
            return ast.Dee()
        if kw == "dum":
            return ast.Dum()
        if kw == "empty":
            return ast.Empty(self.bracket_attrs())
        if kw == "rel":
            attrs = self.bracket_attrs()
            return ast.Literal(attrs, self.rows(len(attrs)))
        if kw == "project":
            attrs = self.bracket_attrs()
            return ast.Project(self.paren_expr(), attrs)
        if kw == "select":
            self.expect("[")
            preds = [self.pred()]
            while self.at(","):
                self.advance()
                preds.append(self.pred())
            self.expect("]")
            return ast.Select(self.paren_expr(), tuple(preds))
        if kw == "rename":
            self.expect("[")
            pairs = [self.rename_pair()]
            while self.at(","):
                self.advance()
                pairs.append(self.rename_pair())
            self.expect("]")
            return ast.Rename(self.paren_expr(), tuple(pairs))
        if kw == "tc":
            self.expect("[")
            x = self.name("attribute name")
            self.expect(",")
            y_tok = self.tok
            y = self.name("attribute name")
            if x == y:
                raise self.error("tc needs two distinct attributes", y_tok)
            self.expect("]")
            return ast.Tc(self.paren_expr(), x, y)
        # binary call forms
        self.expect("(")
        left = self.union()
        self.expect(",")
        right = self.union()
        self.expect(")")
        return {"minus": ast.Minus, "minus_literal": ast.MinusLiteral, "tensor": ast.Tensor}[kw](left, right)

    def paren_expr(self) -> ast.Expr:
        self.expect("(")
        e = self.union()
        self.expect(")")
        return e

    def bracket_attrs(self) -> tuple[str, ...]:
        self.expect("[")
        attrs: list[str] = []
        if not self.at("]"):
            attrs.append(self.unique_attr(attrs))
            while self.at(","):
                self.advance()
                attrs.append(self.unique_attr(attrs))
        self.expect("]")
        return tuple(attrs)

    def unique_attr(self, seen: list[str]) -> str:
        tok = self.tok
        a = self.name("attribute name")
        if a in seen:
            raise self.error(f"duplicate attribute {a!r}", tok)
        return a

    def rename_pair(self) -> tuple[str, str]:
        old = self.name("attribute name")
        self.expect("->")
        return old, self.name("attribute name")

    def pred(self) -> SymbolicRelation:
        left_tok = self.tok
        left = self.name("attribute name")
        if self.tok.kind != "op" or self.tok.text not in ("<", "<=", ">", ">=", "=", "!="):
            raise self.error("expected comparison operator")
        op = self.advance().text
        tok = self.tok
        if tok.kind == "name":
            self.advance()
            try:
                return cmp_rel(left, op, tok.text)
            except SameAttribute:
                raise self.error(f"predicate compares {left!r} with itself", left_tok) from None
        if tok.kind in ("int", "string"):
            self.advance()
            return const_cmp_rel(left, op, self.value_of(tok))
        raise self.error("expected attribute name or literal")

    def value_of(self, tok: Token):
        if tok.kind == "int":
            return int(tok.text)
        if tok.kind == "string":
            return _unquote(tok.text)
        if tok.kind == "name" and tok.text in ("true", "false"):
            return tok.text == "true"
        raise self.error("expected a value", tok)

    def rows(self, width: int) -> tuple[tuple, ...]:
        self.expect("{")
        rows = []
        if not self.at("}"):
            rows.append(self.row(width))
            while self.at(","):
                self.advance()
                rows.append(self.row(width))
        self.expect("}")
        return tuple(rows)

    def row(self, width: int) -> tuple:
        start = self.expect("(")
        values = []
        if not self.at(")"):
            values.append(self.value_of(self.advance()))
            while self.at(","):
                self.advance()
                values.append(self.value_of(self.advance()))
        if len(values) != width:
            raise self.error(f"row has {len(values)} values for {width} attributes", start)
        self.expect(")")
        return tuple(values)


def parse(text: str) -> ast.Expr:
    return Parser(text).parse()


# -- printing ---------------------------------------------------------------


def to_text(e: ast.Expr) -> str:
    """Print ``e`` in the surface syntax; ``parse(to_text(e)) == e``."""
    if isinstance(e, ast.Union):
        right = to_text(e.right)
        if isinstance(e.right, ast.Union):
            right = f"({right})"
        return f"{to_text(e.left)} | {right}"
    if isinstance(e, ast.Join):
        left, right = to_text(e.left), to_text(e.right)
        if isinstance(e.left, ast.Union):
            left = f"({left})"
        if isinstance(e.right, (ast.Union, ast.Join)):
            right = f"({right})"
        return f"{left} & {right}"
    if isinstance(e, ast.Name):
        return e.name
    if isinstance(e, ast.Dee):
        return "dee"
    if isinstance(e, ast.Dum):
        return "dum"
    if isinstance(e, ast.Empty):
        return f"empty[{', '.join(e.attrs)}]"
    if isinstance(e, ast.Literal):
        rows = ", ".join("(" + ", ".join(format_literal(v) for v in r) + ")" for r in e.rows)
        return f"rel[{', '.join(e.attrs)}]{{{rows}}}"
    if isinstance(e, ast.Project):
        return f"project[{', '.join(e.attrs)}]({to_text(e.expr)})"
    if isinstance(e, ast.Select):
        return f"select[{', '.join(str(p) for p in e.preds)}]({to_text(e.expr)})"
    if isinstance(e, ast.Rename):
        pairs = ", ".join(f"{o} -> {n}" for o, n in e.pairs)
        return f"rename[{pairs}]({to_text(e.expr)})"
    if isinstance(e, ast.Tc):
        return f"tc[{e.x}, {e.y}]({to_text(e.expr)})"
    if isinstance(e, (ast.Minus, ast.MinusLiteral, ast.Tensor)):
        kw = {ast.Minus: "minus", ast.MinusLiteral: "minus_literal", ast.Tensor: "tensor"}[type(e)]
        return f"{kw}({to_text(e.left)}, {to_text(e.right)})"
    raise TypeError(f"not an expression node: {e!r}")
