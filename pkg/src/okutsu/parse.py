"""Text input: field descriptors and polynomial expressions.

An input line is ``<descriptor>; <polynomial>``, for instance::

    Qp p=2; (x^2-2)^2+4*x
    laurent y coeff=ratfunc(t,F3); x^3-y^2*x-t
    puiseux y p=3 prec=6 coeff=F3; x^3-x-y^-1

Error offsets are 1-based columns into the whole input line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .basefields import BaseField, LaurentField, PuiseuxField, QpField
from .errors import PrecisionError
from .poly import Poly, format_poly
from .residue import GF


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: Tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        text = f"syntax error at offset {offset}: {message}"
        if expected:
            text += " (expected " + ", ".join(expected) + ")"
        super().__init__(text)


@dataclass
class InputSpec:
    field: BaseField
    poly: Poly
    text: str
    options: Dict[str, object] = field(default_factory=dict)

    def canonical(self) -> str:
        return f"{self.field.descriptor()}; {format_poly(self.poly)}"


# ---------------------------------------------------------------------------------
# field descriptors

_KV = re.compile(r"(\w+)=(\S+)")


def _prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def _finite_field_q(token: str, offset: int) -> int:
    m = re.fullmatch(r"F(\d+)", token)
    if not m:
        raise ParseError(f"bad coefficient field {token!r}", offset, ("F<q>",))
    q = int(m.group(1))
    try:
        GF(q)
    except ValueError:
        raise ParseError(f"{q} is not a prime power", offset) from None
    return q


def parse_field(text: str, base_offset: int = 1, prec: Optional[int] = None,
                p: Optional[int] = None) -> BaseField:
    """Parse a descriptor.  ``prec`` and ``p`` override values given in the text."""
    words = [(m.group(), m.start() + base_offset) for m in re.finditer(r"\S+", text)]
    if not words:
        raise ParseError("empty field descriptor", base_offset, ("Qp", "laurent", "puiseux"))
    kind, kpos = words[0]
    opts: Dict[str, Tuple[str, int]] = {}
    for w, pos in words[1:]:
        if w == "y":
            continue
        m = _KV.fullmatch(w)
        if not m:
            raise ParseError(f"unexpected token {w!r}", pos, ("key=value",))
        opts[m.group(1)] = (m.group(2), pos + len(m.group(1)) + 1)

    def integer(key, default=None):
        if key not in opts:
            if default is None:
                raise ParseError(f"missing {key}=", base_offset + len(text), (f"{key}=<int>",))
            return default
        val, pos = opts[key]
        if not val.isdigit():
            raise ParseError(f"{key} must be a positive integer", pos)
        return int(val)

    if kind in ("Qp", "Q"):
        pp = p if p is not None else integer("p")
        if not _prime(pp):
            raise ParseError(f"p = {pp} is not prime", opts.get("p", ("", kpos))[1])
        return QpField(pp)
    if kind == "laurent":
        val, pos = opts.get("coeff", ("ratfunc(t,F3)", kpos))
        m = re.fullmatch(r"ratfunc\(t,(F\d+)\)", val)
        if not m:
            raise ParseError(f"bad coefficient field {val!r}", pos, ("ratfunc(t,F<q>)",))
        return LaurentField(_finite_field_q(m.group(1), pos + 9))
    if kind == "puiseux":
        pp = p if p is not None else integer("p")
        if not _prime(pp):
            raise ParseError(f"p = {pp} is not prime", opts.get("p", ("", kpos))[1])
        k = prec if prec is not None else integer("prec", 6)
        val, pos = opts.get("coeff", (f"F{pp}", kpos))
        q = _finite_field_q(val, pos)
        if GF(q).char != pp:
            raise ParseError(f"F{q} does not have characteristic {pp}", pos)
        return PuiseuxField(pp, k, q)
    raise ParseError(f"unknown field kind {kind!r}", kpos, ("Qp", "laurent", "puiseux"))


# ---------------------------------------------------------------------------------
# polynomials

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int  # 1-based


def _tokenize(text: str, base: int) -> List[_Tok]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            break
        if m.group(1):
            out.append(_Tok("num", m.group(1), m.start(1) + base))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), m.start(2) + base))
        elif m.group(3):
            out.append(_Tok("op", m.group(3), m.start(3) + base))
        i = m.end()
    out.append(_Tok("end", "", len(text) + base))
    return out


_ATOM = ("number", "x", "y", "t", "'('")


class _Parser:
    def __init__(self, K: BaseField, text: str, base: int):
        self.K = K
        self.toks = _tokenize(text, base)
        self.i = 0
        self.x = Poly.x(K)
        names = {"x"}
        if K.kind in ("laurent", "puiseux"):
            names.add("y")
            if K.coeffs.size is not None and K.coeffs.degree > 1:
                names.add("a")
        if K.kind == "laurent":
            names.add("t")
        self.names = names

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        if self.tok.kind != "op" or self.tok.text != op:
            raise ParseError(f"unexpected {self._desc(self.tok)}", self.tok.pos, (repr(op),))
        self.take()

    @staticmethod
    def _desc(t: _Tok) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def parse(self) -> Poly:
        val = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._desc(self.tok)}", self.tok.pos,
                             ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return val

    def expr(self) -> Poly:
        acc = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take()
            rhs_tok = self.tok
            rhs = self.unary()
            if op.text == "*":
                acc = acc * rhs
            else:
                acc = self._divide(acc, rhs, rhs_tok.pos)
        return acc

    def _divide(self, a: Poly, b: Poly, pos: int) -> Poly:
        K = self.K
        if b.degree != 0:
            raise ParseError("division is only by nonzero constants", pos)
        c = b[0]
        if K.kind == "qp":
            return a * Poly(K, (1 / c,))
        if len(c.terms) != 1:
            raise ParseError("division is only by a single term of the series field", pos)
        return a * Poly(K, (K.inv(c),))

    def unary(self) -> Poly:
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self) -> Poly:
        start = self.tok
        base, is_y = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            epos = self.tok.pos
            e = self.exponent()
            if is_y:
                try:
                    return Poly(self.K, (self.K.monomial(e),))
                except PrecisionError as exc:
                    raise ParseError(str(exc), epos) from None
            if e.denominator != 1 or e < 0:
                raise ParseError(
                    f"exponent {e} is only allowed on y", epos, ("non-negative integer",))
            return base ** int(e)
        return base

    def exponent(self) -> Fraction:
        t = self.tok
        if t.kind == "num":
            return Fraction(int(self.take().text))
        if t.kind == "op" and t.text == "-":
            self.take()
            if self.tok.kind != "num":
                raise ParseError(f"unexpected {self._desc(self.tok)}", self.tok.pos, ("integer",))
            return -Fraction(int(self.take().text))
        if t.kind == "op" and t.text == "(":
            self.take()
            sign = 1
            if self.tok.kind == "op" and self.tok.text == "-":
                self.take()
                sign = -1
            if self.tok.kind != "num":
                raise ParseError(f"unexpected {self._desc(self.tok)}", self.tok.pos, ("integer",))
            num = int(self.take().text)
            den = 1
            if self.tok.kind == "op" and self.tok.text == "/":
                self.take()
                if self.tok.kind != "num":
                    raise ParseError(f"unexpected {self._desc(self.tok)}", self.tok.pos,
                                     ("integer",))
                den_tok = self.take()
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.pos)
            self.expect_op(")")
            return sign * Fraction(num, den)
        raise ParseError(f"unexpected {self._desc(t)}", t.pos, ("integer", "'-'", "'('"))

    def atom(self) -> Tuple[Poly, bool]:
        t = self.tok
        K = self.K
        if t.kind == "num":
            self.take()
            return Poly(K, (K.coerce(Fraction(int(t.text))),)), False
        if t.kind == "name":
            if t.text not in self.names:
                raise ParseError(f"unknown symbol {t.text!r} for a {K.kind} field", t.pos,
                                 tuple(sorted(self.names)))
            self.take()
            if t.text == "x":
                return self.x, False
            if t.text == "y":
                return Poly(K, (K.monomial(1),)), True
            if t.text == "t":
                return Poly(K, (K.t,)), False
            return Poly(K, (K.term(K.coeffs.gen),)), False
        if t.kind == "op" and t.text == "(":
            self.take()
            v = self.expr()
            self.expect_op(")")
            return v, False
        raise ParseError(f"unexpected {self._desc(t)}", t.pos,
                         tuple(a for a in _ATOM if a.strip("'") in self.names or a in ("number", "'('")))


def parse_poly(text: str, K: BaseField, base_offset: int = 1) -> Poly:
    return _Parser(K, text, base_offset).parse()


def parse_input(text: str, prec: Optional[int] = None, p: Optional[int] = None) -> InputSpec:
    """Parse ``<descriptor>; <polynomial>``."""
    if ";" not in text:
        raise ParseError("missing ';' between field and polynomial", len(text) + 1, ("';'",))
    head, _, body = text.partition(";")
    K = parse_field(head, 1, prec=prec, p=p)
    poly = parse_poly(body, K, base_offset=len(head) + 2)
    return InputSpec(K, poly, text, {"prec": prec, "p": p})
