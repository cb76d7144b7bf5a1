"""Small arithmetic-expression parser shared by the scalar and polynomial grammars.

The parser only builds a tuple AST; meaning is supplied by an evaluator object
with ``num``, ``name``, ``bracket``, ``add``, ``sub``, ``mul``, ``div``, ``neg``
and ``pow`` methods.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<bracket>\[[^\]]*\])|(?P<op>[-+*/^()]))"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    text = text.replace("−", "-").replace("**", "^")
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            expected = repr(value) if value else "a token"
            raise ParseError(f"expected {expected} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        node = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input {self.tokens[self.i][1]!r} in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] == "^":
            self.take()
            node = ("pow", node, self.exponent())
        return node

    def exponent(self) -> Fraction:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return Fraction(int(value))
        if value == "(":
            self.take()
            num = self.take()
            if num[0] != "num":
                raise ParseError(f"exponent must be a nonnegative integer or (p/q) in {self.text!r}")
            den = 1
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or int(d[1]) == 0:
                    raise ParseError(f"bad exponent denominator in {self.text!r}")
                den = int(d[1])
            self.take(")")
            return Fraction(int(num[1]), den)
        raise ParseError(f"exponent must be a nonnegative integer or (p/q) in {self.text!r}")

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return ("num", int(value))
        if kind == "name":
            self.take()
            return ("name", value)
        if kind == "bracket":
            self.take()
            return ("bracket", value[1:-1])
        if value == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")


def parse(text: str):
    return _Parser(text).parse()


def evaluate(node, ev):
    tag = node[0]
    if tag == "num":
        return ev.num(node[1])
    if tag == "name":
        return ev.name(node[1])
    if tag == "bracket":
        return ev.bracket(node[1])
    if tag == "neg":
        return ev.neg(evaluate(node[1], ev))
    if tag == "pow":
        return ev.pow(evaluate(node[1], ev), node[2])
    left = evaluate(node[1], ev)
    right = evaluate(node[2], ev)
    return getattr(ev, tag)(left, right)


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside any parentheses or brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts
