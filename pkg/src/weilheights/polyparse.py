"""Recursive-descent parser and formatter for polynomial expressions.

Grammar (whitespace ignored, no implicit multiplication)::

    expr        := ['-'] term (('+' | '-') term)*
    term        := factor ('*' factor)*
    factor      := coefficient | variable ['^' nat] | '(' expr ')'
    coefficient := integer ['/' positive-integer]
    variable    := ('x' | 'y' | 'z') nat | 'x' nat '_' nat

``x<j>``, ``y<j>``, ``z<j>`` name coordinate j of blocks 0, 1, 2; ``x<b>_<j>``
names coordinate j of block b.  The optional leading '-' is accepted so that
formatted output always re-parses.
"""

import re
from fractions import Fraction

from .errors import NotHomogeneous, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])(\d+)(?:_(\d+))?|([-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            letter, a, b = m.group(2), int(m.group(3)), m.group(4)
            if b is not None:
                if letter != "x":
                    raise ParseError(f"canonical variables use 'x': {m.group(0).strip()!r}")
                out.append(("var", (a, int(b)), m.start(2)))
            else:
                out.append(("var", ("xyz".index(letter), a), m.start(2)))
        else:
            out.append((m.group(5), None, m.start(5)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, ambient):
        self.text = text
        self.ambient = ambient
        self.toks = _tokenize(text)
        self.i = 0
        self.n = ambient.nvars

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} at offset {tok[2]} in {self.text!r}, found {tok[0]!r}")
        self.i += 1
        return tok

    # polynomials here are plain dicts exponent-tuple -> Fraction
    def expr(self):
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = {e: -c for e, c in acc.items()}
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            for e, c in t.items():
                acc[e] = acc.get(e, 0) + (c if op == "+" else -c)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self):
        kind = self.peek()
        if kind == "int":
            num = self.take()[1]
            if self.peek() == "/":
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator in coefficient")
                return {(0,) * self.n: Fraction(num, den)}
            return {(0,) * self.n: Fraction(num)}
        if kind == "var":
            _, (block, j), off = self.take()
            try:
                idx = self.ambient.var_index(block, j)
            except KeyError as exc:
                raise ParseError(f"unknown variable at offset {off}: {exc.args[0]}") from None
            k = 1
            if self.peek() == "^":
                self.take()
                k = self.take("int")[1]
            e = [0] * self.n
            e[idx] = k
            return {tuple(e): Fraction(1)}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        tok = self.toks[self.i]
        raise ParseError(f"unexpected {tok[0]!r} at offset {tok[2]} in {self.text!r}")


def _mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


def parse_polynomial(text, ambient, multidegree=None):
    from .geometry import MultihomogPolynomial

    parser = _Parser(text, ambient)
    terms = parser.expr()
    parser.take("end")
    terms = {e: c for e, c in terms.items() if c}
    by_degree = {}
    for e in sorted(terms, reverse=True):
        by_degree.setdefault(ambient.multidegree(e), e)
    if len(by_degree) > 1:
        (d1, e1), (d2, e2) = list(by_degree.items())[:2]
        t1 = _format_term(Fraction(1), e1, ambient)
        t2 = _format_term(Fraction(1), e2, ambient)
        raise NotHomogeneous(
            f"not multihomogeneous: {t1!r} has degree {d1}, {t2!r} has degree {d2}", (t1, t2))
    return MultihomogPolynomial(ambient, terms, multidegree)


def _format_monomial(e, ambient):
    parts = []
    for idx, k in enumerate(e):
        if k:
            name = ambient.var_name(idx)
            parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _format_term(c, e, ambient):
    mono = _format_monomial(e, ambient)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def format_polynomial(poly):
    if not poly.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(poly.sorted_terms()):
        body = _format_term(abs(c), e, poly.ambient)
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)
