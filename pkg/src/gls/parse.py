"""Parser for the textual polynomial syntax.

Grammar (whitespace-insensitive):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)*
    atom   := '(' expr ')' | IDENT | INT ['/' INT]

Multiplication is always written with '*'; '/' only forms rational
literals.  Printing a polynomial and parsing it back is the identity.
"""

import re

from .poly import rational

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[-+*^()/])")


class ParseError(ValueError):
    pass


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError("unexpected character %r at position %d"
                                 % (text[pos:].strip()[0], pos))
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, tok):
        t = self.next()
        if t != tok:
            raise ParseError("expected %r, found %r" % (tok, t))

    def parse(self):
        e = self.expr()
        if self.peek() is not None:
            raise ParseError("trailing input at token %r" % self.peek())
        return e

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            out = out + self.term() * sign
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.next()
            out = out * self.factor()
        return out

    def factor(self):
        out = self.atom()
        while self.peek() == "^":
            self.next()
            t = self.next()
            if t is None or not t.isdigit():
                raise ParseError("exponent must be a nonnegative integer")
            out = out ** int(t)
        return out

    def atom(self):
        t = self.next()
        if t is None:
            raise ParseError("unexpected end of input")
        if t == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.isdigit():
            num = int(t)
            if self.peek() == "/":
                self.next()
                d = self.next()
                if d is None or not d.isdigit() or int(d) == 0:
                    raise ParseError("bad rational literal denominator")
                return self.ring.const(rational(num, int(d)))
            return self.ring.const(num)
        if t.isidentifier():
            if t not in self.ring.index:
                raise ParseError("unknown variable %r" % t)
            return self.ring.var(t)
        raise ParseError("unexpected token %r" % t)


def parse_polynomial(ring, text):
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    return _Parser(ring, toks).parse()
