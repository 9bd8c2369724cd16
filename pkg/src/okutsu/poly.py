"""Dense univariate polynomials over a base field."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, floor
from typing import List, Optional, Sequence

from .values import INF, Value


class Poly:
    """Immutable polynomial in x; coefficients run from degree 0 upwards."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs: Sequence = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, field, coeffs: tuple) -> "Poly":
        # coefficients already coerced; only trailing zeros need trimming
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = coeffs[:n]
        p._hash = None
        return p

    @classmethod
    def x(cls, field) -> "Poly":
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def const(cls, field, c) -> "Poly":
        return cls(field, (c,))

    # -- basic shape ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    deg = degree

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly(self.field, (other,))

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.field, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field.coerce(other)
            return Poly._raw(self.field, tuple(a * c for a in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(self.field, ())
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._raw(self.field, (self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        K = self.field
        db = other.degree
        lead = other.lc
        inv = None if lead == K.one else K.exquo(K.one, lead)
        rem = list(self.coeffs)
        if len(rem) <= db:
            return Poly._raw(K, ()), self
        quo = [K.zero] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            if inv is not None:
                c = c * inv
            quo[i - db] = c
            for j in range(db):
                if b[j]:
                    rem[i - db + j] = rem[i - db + j] - c * b[j]
            rem[i] = K.zero
        return Poly._raw(K, tuple(quo)), Poly._raw(K, tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        if self.lc == self.field.one:
            return self
        inv = self.field.exquo(self.field.one, self.lc)
        return self * inv

    def __call__(self, a):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly._raw(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> "Poly":
        return self.hasse(1)

    def hasse(self, i: int) -> "Poly":
        """The i-th Hasse derivative: x^n -> C(n, i) x^(n-i)."""
        cs = self.coeffs
        return Poly._raw(self.field, tuple(cs[n] * comb(n, i) for n in range(i, len(cs))))

    def hasse_derivatives(self) -> List["Poly"]:
        return [self.hasse(i) for i in range(max(len(self.coeffs), 1))]

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.field, [fn(c) for c in self.coeffs])

    # -- comparison and display -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return format_poly(self)


def _coeff_str(field, c):
    s = field.format(c)
    neg = False
    if s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
        neg, s = True, s[1:]
    return neg, s


def format_poly(f: Poly, var: str = "x") -> str:
    """Canonical text form, e.g. ``x^4 - 4*x^2 + 4*x + 4``.  Re-parsable."""
    if not f.coeffs:
        return "0"
    out = []
    for n in range(f.degree, -1, -1):
        c = f.coeffs[n]
        if not c:
            continue
        neg, s = _coeff_str(f.field, c)
        mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        if mono:
            if s == "1":
                term = mono
            else:
                if any(ch in s for ch in " +-"):
                    s = "(" + s + ")"
                term = f"{s}*{mono}"
        else:
            term = s
        if not out:
            out.append("-" + term if neg else term)
        else:
            out.append(("- " if neg else "+ ") + term)
    return " ".join(out)


@lru_cache(maxsize=1 << 16)
def phi_expansion(g: Poly, phi: Poly) -> tuple:
    """Coefficients a_0, a_1, ... with g = sum a_n phi^n and deg a_n < deg phi."""
    if phi.degree < 1 or not phi.is_monic():
        raise ValueError("phi must be monic of positive degree")
    out = []
    while g.degree >= phi.degree:
        g, r = divmod(g, phi)
        out.append(r)
    out.append(g)
    return tuple(out)


def recompose(coeffs: Sequence[Poly], phi: Poly) -> Poly:
    acc = Poly(phi.field, ())
    for a in reversed(coeffs):
        acc = acc * phi + a
    return acc


def hasse_derivatives(g: Poly) -> List[Poly]:
    return g.hasse_derivatives()


def epsilon(f: Poly) -> Value:
    """v(beta) for any root beta of the (irreducible, monic) polynomial f."""
    if not f:
        raise ValueError("epsilon of the zero polynomial")
    if f.degree < 1:
        raise ValueError("epsilon needs a nonconstant polynomial")
    v = f.field.valuation(f[0])
    return INF if v is INF else v / f.degree


def is_separable(f: Poly) -> bool:
    """Separability of an irreducible f: a nonzero derivative."""
    return bool(f.derivative())


def sep_approx(f: Poly, rho: Value, vF=None) -> Poly:
    """f + pi*x with v(pi) > m*rho - epsilon(f), separable with the same polygon.

    ``vF``, when given, is a root valuation v_F; pi then also satisfies
    v(pi) > v_F(f) - v_F(x).  pi is the smallest integral power of y allowed.
    """
    if is_separable(f):
        return f
    K = f.field
    if K.char == 0:
        raise ValueError("an inseparable polynomial over a characteristic-0 field")
    if rho is INF:
        raise ValueError("rho must be finite")
    m = f.degree
    # the bound only keeps the polygon when rho >= omega(f) >= epsilon(f);
    # a larger rho is harmless, so raise it first
    eps = epsilon(f)
    rho = max(Fraction(rho), eps)
    om = _inseparable_omega(f)
    if om is not None:
        rho = max(rho, om)
    bound = m * rho - eps
    if vF is not None:
        vf, vx = vF(f), vF(Poly.x(K))
        if vf is INF:
            raise ValueError("f vanishes at the root; there is no admissible pi")
        bound = max(bound, vf - vx)
    k = floor(bound) + 1
    return f + Poly.x(K) * K.monomial(k)


def _inseparable_omega(f: Poly) -> Optional[Value]:
    """max v(beta - beta') over distinct roots of an inseparable irreducible f.

    Writing f = g(x^(p^k)) with g separable, the roots satisfy
    (beta - beta')^(p^k) = gamma - gamma' for roots gamma of g, so
    omega(f) = omega(g)/p^k.  None when f has a single distinct root.
    """
    from .frames import krasner_constant
    from .vf import RootValuation

    p = f.field.char
    step = 1
    while all(not c for i, c in enumerate(f.coeffs) if i % (step * p)):
        step *= p
    g = Poly(f.field, tuple(f.coeffs[i] for i in range(0, f.degree + 1, step)))
    if g.degree < 2:
        return None
    return krasner_constant(RootValuation(g)) / step
