"""The supported valued base fields (K, v).

Three kinds:

* ``QpField(p)``: Q with ord_p; elements are ``Fraction``.
* ``LaurentField(q)``: finite Laurent sums over F_q(t) with ord_y.
* ``PuiseuxField(p, prec, q)``: finite sums of y^e, e in Z[1/p], over F_q.
  Exponent denominators are capped at p^prec.

Series elements of the last two kinds share the class ``Series``: a sparse map
from scaled integer exponents to raw coefficients.  A Puiseux field stores the
exponent e as e * p^prec; a Laurent field uses a scale of 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .errors import PrecisionError
from .residue import GF, FieldElem, PrimeField, RationalFunctionField, ResidueField
from .values import INF, Value, ValueSubgroup


def ord_p(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class BaseField:
    kind: str
    char: int
    residue_field: ResidueField
    value_group: ValueSubgroup

    def valuation(self, a) -> Value:
        raise NotImplementedError

    def residue(self, a) -> FieldElem:
        raise NotImplementedError

    def lift(self, c):
        raise NotImplementedError

    def monomial(self, v):
        """An element of valuation v (a power of the uniformizer)."""
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        """True when a is invertible inside the element representation."""
        raise NotImplementedError

    def exquo(self, a, b):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)


class QpField(BaseField):
    """Q with the p-adic valuation.  Elements are plain ``Fraction`` objects."""

    kind = "qp"
    char = 0

    def __init__(self, p: int):
        self.p = p
        self.residue_field = PrimeField(p)
        self.value_group = ValueSubgroup(1)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, a) -> Fraction:
        if isinstance(a, FieldElem):
            return self.lift(a)
        return Fraction(a)

    def valuation(self, a) -> Value:
        if not a:
            return INF
        a = Fraction(a)
        return Fraction(ord_p(a.numerator, self.p) - ord_p(a.denominator, self.p))

    def residue(self, a) -> FieldElem:
        a = Fraction(a)
        if self.valuation(a) < 0:
            raise ValueError(f"residue of {a} is undefined: negative valuation")
        p = self.p
        return FieldElem(self.residue_field, a.numerator * pow(a.denominator, -1, p) % p)

    def lift(self, c) -> Fraction:
        c = self.residue_field.coerce(c)
        return Fraction(c)

    def monomial(self, v) -> Fraction:
        v = Fraction(v)
        if v.denominator != 1:
            raise ValueError(f"{v} is not in the value group Z")
        return Fraction(self.p) ** int(v)

    def is_unit(self, a) -> bool:
        return a != 0

    def exquo(self, a, b):
        return a / b

    def random(self, rng, height: int = 20, spread: int = 3) -> Fraction:
        num = rng.randint(-height, height)
        return Fraction(num) * Fraction(self.p) ** rng.randint(-1, spread)

    def descriptor(self) -> str:
        return f"Qp p={self.p}"

    def format(self, a) -> str:
        return str(Fraction(a))

    def __repr__(self):
        return f"QpField({self.p})"

    def __eq__(self, other):
        return isinstance(other, QpField) and other.p == self.p

    def __hash__(self):
        return hash(("qp", self.p))


class Series:
    """A finite sum of monomials c*y^(n/scale) in a ``SeriesField``."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: "SeriesField", terms: Dict[int, object]):
        self.field = field
        self.terms = terms  # never mutated after construction
        self._hash = None

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, b):
        if isinstance(b, Series):
            if b.field is not self.field:
                raise TypeError("series from different fields")
            return b
        if isinstance(b, (int, Fraction, FieldElem, tuple)):
            return self.field.coerce(b)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return Series(self.field, self._combine(b.terms, False))

    def _combine(self, other: Dict[int, object], subtract: bool) -> Dict[int, object]:
        C = self.field.coeffs
        out = dict(self.terms)
        if type(C) is PrimeField:
            p = C.p
            for e, c in other.items():
                s = (out.get(e, 0) - c if subtract else out.get(e, 0) + c) % p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            return out
        for e, c in other.items():
            if subtract:
                c = C.neg(c)
            if e in out:
                s = C.add(out[e], c)
                if C.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    __radd__ = __add__

    def __neg__(self):
        C = self.field.coeffs
        return Series(self.field, {e: C.neg(c) for e, c in self.terms.items()})

    def __sub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return Series(self.field, self._combine(b.terms, True))

    def __rsub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return b - self

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        C = self.field.coeffs
        if len(self.terms) < len(b.terms):
            x, y = self.terms, b.terms
        else:
            x, y = b.terms, self.terms
        out: Dict[int, object] = {}
        if type(C) is PrimeField:
            # plain integers, reduced once at the end
            get = out.get
            for e1, c1 in x.items():
                for e2, c2 in y.items():
                    e = e1 + e2
                    out[e] = get(e, 0) + c1 * c2
            p = C.p
            return Series(self.field, {e: r for e, c in out.items() if (r := c % p)})
        for e1, c1 in x.items():
            for e2, c2 in y.items():
                e = e1 + e2
                prod = C.mul(c1, c2)
                if e in out:
                    out[e] = C.add(out[e], prod)
                else:
                    out[e] = prod
        return Series(self.field, {e: c for e, c in out.items() if not C.is_zero(c)})

    __rmul__ = __mul__

    def frobenius(self) -> "Series":
        """self^p, computed termwise (char p)."""
        C, p = self.field.coeffs, self.field.char
        return Series(self.field, {p * e: C.pow(c, p) for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        result = self.field.one
        base = self
        p = self.field.char
        while n and n % p == 0:
            base = base.frobenius()
            n //= p
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self.field.exquo(self, b)

    def __rtruediv__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self.field.exquo(b, self)

    # -- comparison ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, b):
        if not isinstance(b, Series):
            try:
                b = self.field.coerce(b)
            except (TypeError, ValueError):
                return NotImplemented
        return b.field is self.field and self.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- inspection ----------------------------------------------------------
    def min_exponent(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    def exponents(self):
        s = self.field.scale
        return sorted(Fraction(e, s) for e in self.terms)

    def coefficient(self, e) -> FieldElem:
        n = self.field.scaled(e)
        C = self.field.coeffs
        return FieldElem(C, self.terms.get(n, C.zero))

    def __repr__(self):
        return self.field.format(self)


class SeriesField(BaseField):
    """Shared machinery of the Laurent and Puiseux kinds."""

    var = "y"
    scale = 1

    def _setup(self, coeffs: ResidueField):
        self._ready = True
        self.coeffs = coeffs
        self.char = coeffs.char
        self.residue_field = coeffs
        self.zero = Series(self, {})
        self.one = Series(self, {0: coeffs.one})

    def scaled(self, e) -> int:
        e = Fraction(e)
        n = e * self.scale
        if n.denominator != 1:
            raise PrecisionError(
                f"exponent {e} not representable: its denominator exceeds {self._cap()}")
        return int(n)

    def _cap(self) -> str:
        return "1"

    def term(self, c, e=0) -> Series:
        """The monomial c*y^e."""
        c = self.coeffs.coerce(c)
        if self.coeffs.is_zero(c):
            return self.zero
        return Series(self, {self.scaled(e): c})

    def coerce(self, a) -> Series:
        if isinstance(a, Series):
            if a.field is not self:
                raise TypeError("series from a different field")
            return a
        C = self.coeffs
        if isinstance(a, Fraction):
            if a.denominator % self.char == 0:
                raise ValueError(f"{a} has no image in characteristic {self.char}")
            c = C.mul(C.from_int(a.numerator), C.inv(C.from_int(a.denominator)))
            return self.term(c)
        return self.term(C.coerce(a))

    def from_terms(self, pairs) -> Series:
        """Build an element from (coefficient, exponent) pairs."""
        acc = self.zero
        for c, e in pairs:
            acc = acc + self.term(c, e)
        return acc

    def valuation(self, a) -> Value:
        a = self.coerce(a)
        if not a.terms:
            return INF
        return Fraction(min(a.terms), self.scale)

    def residue(self, a) -> FieldElem:
        a = self.coerce(a)
        if a.terms and min(a.terms) < 0:
            raise ValueError(f"residue of {self.format(a)} is undefined: negative valuation")
        C = self.coeffs
        return FieldElem(C, a.terms.get(0, C.zero))

    def lift(self, c) -> Series:
        return self.term(self.coeffs.coerce(c))

    def monomial(self, v) -> Series:
        return Series(self, {self.scaled(v): self.coeffs.one})

    def is_unit(self, a) -> bool:
        return len(a.terms) == 1

    def inv(self, a: Series) -> Series:
        if len(a.terms) != 1:
            raise ArithmeticError(f"{self.format(a)} has no finite-support inverse")
        (e, c), = a.terms.items()
        return Series(self, {-e: self.coeffs.inv(c)})

    def exquo(self, a: Series, b: Series) -> Series:
        """Exact quotient a/b in the ring of finite sums; error if inexact."""
        if not b.terms:
            raise ZeroDivisionError("division by zero series")
        if not a.terms:
            return self.zero
        if len(b.terms) == 1:
            return a * self.inv(b)
        C = self.coeffs
        rem = dict(a.terms)
        top_b = max(b.terms)
        inv_lead = C.inv(b.terms[top_b])
        floor = min(a.terms) - min(b.terms)  # lowest possible quotient exponent
        quo: Dict[int, object] = {}
        while rem:
            top = max(rem)
            shift = top - top_b
            if shift < floor:
                raise ArithmeticError("inexact series division")
            c = C.mul(rem[top], inv_lead)
            quo[shift] = c
            for e, cb in b.terms.items():
                k = e + shift
                v = C.sub(rem.get(k, C.zero), C.mul(c, cb))
                if C.is_zero(v):
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return Series(self, quo)

    def random(self, rng, terms: int = 2, span: int = 2, denom: int = 1) -> Series:
        acc = self.zero
        for _ in range(rng.randint(0, terms)):
            e = Fraction(rng.randint(-span * denom, span * denom), denom)
            acc = acc + self.term(self.coeffs.random(rng), e)
        return acc

    def format(self, a) -> str:
        a = self.coerce(a)
        if not a.terms:
            return "0"
        C = self.coeffs
        parts = []
        for n in sorted(a.terms):
            c = C.fmt(a.terms[n])
            e = Fraction(n, self.scale)
            if e == 0:
                parts.append(c)
                continue
            if any(ch in c for ch in " +-/"):
                c = "(" + c + ")"
            if e == 1:
                mono = self.var
            elif e.denominator == 1:
                mono = f"{self.var}^{e}"
            else:
                mono = f"{self.var}^({e})"
            parts.append(mono if c == "1" else f"{c}*{mono}")
        return " + ".join(parts)


class LaurentField(SeriesField):
    """F_q(t)((y)) restricted to finite sums, valued by ord_y."""

    kind = "laurent"

    _instances: Dict[int, "LaurentField"] = {}

    def __new__(cls, q: int):
        # one instance per descriptor, so that equal fields are identical
        if q not in cls._instances:
            cls._instances[q] = super().__new__(cls)
        return cls._instances[q]

    def __init__(self, q: int):
        if getattr(self, "_ready", False):
            return
        self.q = q
        self._setup(RationalFunctionField(GF(q), "t"))
        self.value_group = ValueSubgroup(1)

    @property
    def p(self) -> int:
        return self.char

    @property
    def t(self) -> Series:
        return self.term(self.coeffs.t)

    def descriptor(self) -> str:
        return f"laurent y coeff=ratfunc(t,F{self.q})"

    def random(self, rng, terms: int = 2, span: int = 2, denom: int = 1) -> Series:
        acc = self.zero
        for _ in range(rng.randint(0, terms)):
            c = self.coeffs.random(rng, degree=1)
            acc = acc + self.term(c, rng.randint(-span, span))
        return acc

    def __repr__(self):
        return f"LaurentField(F{self.q}(t))"


class PuiseuxField(SeriesField):
    """Finite-support Puiseux sums over F_q with exponents in (1/p^prec)Z."""

    kind = "puiseux"

    _instances: Dict[tuple, "PuiseuxField"] = {}

    def __new__(cls, p: int, prec: int, q: Optional[int] = None):
        key = (p, prec, p if q is None else q)
        if key not in cls._instances:
            cls._instances[key] = super().__new__(cls)
        return cls._instances[key]

    def __init__(self, p: int, prec: int, q: Optional[int] = None):
        if getattr(self, "_ready", False):
            return
        q = p if q is None else q
        if GF(q).char != p:
            raise ValueError(f"F{q} does not have characteristic {p}")
        if prec < 0:
            raise ValueError("precision must be non-negative")
        self.p = p
        self.prec = prec
        self.q = q
        self.scale = p ** prec
        self._setup(GF(q))
        self.value_group = ValueSubgroup(1, {p})

    def _cap(self) -> str:
        return f"p^prec = {self.p}^{self.prec}"

    def descriptor(self) -> str:
        return f"puiseux y p={self.p} prec={self.prec} coeff=F{self.q}"

    def random(self, rng, terms: int = 2, span: int = 2, denom: Optional[int] = None) -> Series:
        denom = self.p if denom is None else denom
        return SeriesField.random(self, rng, terms=terms, span=span, denom=denom)

    def __repr__(self):
        return f"PuiseuxField(p={self.p}, prec={self.prec}, F{self.q})"


def valuate(field: BaseField, a) -> Value:
    return field.valuation(a)
