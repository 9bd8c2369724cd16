"""Residue fields: prime fields, simple extension towers and F_q(t).

Every field here works on *raw* element representations (ints, tuples) via
methods on the field object.  That keeps the inner loops of series
arithmetic cheap.  ``FieldElem`` wraps a raw element together with its field
for callers who prefer operators.

Univariate polynomials over such a field are tuples of raw coefficients,
lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Optional, Sequence


class ResidueField:
    """Interface shared by the concrete fields below."""

    char: int
    size: Optional[int]  # None for infinite fields
    zero = None
    one = None

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def __call__(self, raw):
        return FieldElem(self, self.coerce(raw))

    def coerce(self, x):
        if isinstance(x, FieldElem):
            if x.field is not self:
                return self.embed(x)
            return x.raw
        if isinstance(x, int):
            return self.from_int(x)
        return x

    def embed(self, x: "FieldElem"):
        raise TypeError(f"cannot coerce element of {x.field} into {self}")

    def tower(self) -> list:
        """Sequence of (field, modulus) pairs from the prime field upwards."""
        return []

    @property
    def degree(self) -> int:
        return 1


class PrimeField(ResidueField):
    def __init__(self, p: int):
        self.p = self.char = self.size = p
        self.zero, self.one = 0, 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def pth_root(self, a):
        return a

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


class ExtensionField(ResidueField):
    """base[z]/(modulus) for a monic irreducible modulus of degree >= 2."""

    def __init__(self, base: ResidueField, modulus: Sequence, name: str = "z"):
        modulus = p_trim(base, tuple(modulus))
        if len(modulus) < 3 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 2")
        self.base = base
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.name = name
        self.char = base.char
        self.size = None if base.size is None else base.size ** self.d
        self.zero = (base.zero,) * self.d
        self.one = (base.one,) + (base.zero,) * (self.d - 1)

    @property
    def degree(self) -> int:
        return self.d * self.base.degree

    @property
    def gen(self):
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.d - 2)

    def tower(self):
        return self.base.tower() + [(self.base, self.modulus)]

    def _pad(self, c: tuple):
        return c + (self.base.zero,) * (self.d - len(c))

    def from_base(self, c):
        return (c,) + (self.base.zero,) * (self.d - 1)

    def from_int(self, n: int):
        return self.from_base(self.base.from_int(n))

    def embed(self, x):
        # elements of the base (or of a field below it) embed as constants
        return self.from_base(self.base.coerce(x))

    def from_poly(self, c: tuple):
        """Reduce a polynomial over the base modulo the defining modulus."""
        return self._pad(p_mod(self.base, p_trim(self.base, tuple(c)), self.modulus))

    def to_poly(self, a) -> tuple:
        return p_trim(self.base, a)

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        return self.from_poly(p_mul(B, p_trim(B, a), p_trim(B, b)))

    def inv(self, a):
        B = self.base
        a_poly = p_trim(B, a)
        if not a_poly:
            raise ZeroDivisionError("inverse of 0")
        g, s, _ = p_xgcd(B, a_poly, self.modulus)
        # g is a nonzero constant since the modulus is irreducible
        if len(g) != 1:
            raise ArithmeticError("modulus is not irreducible")
        return self.from_poly(p_scale(B, s, B.inv(g[0])))

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a)

    def pth_root(self, a):
        if self.size is None:
            return None
        return self.pow(a, self.size // self.char)

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.d))

    def elements(self):
        for coeffs in product(list(self.base.elements()), repeat=self.d):
            yield tuple(coeffs)

    def fmt(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            cs = self.base.fmt(c)
            if any(ch in cs for ch in " +-"):
                cs = "(" + cs + ")"
            if i == 0:
                terms.append(cs)
            else:
                mono = self.name if i == 1 else f"{self.name}^{i}"
                terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({p_fmt(self.base, self.modulus, self.name)})"


class RationalFunctionField(ResidueField):
    """F_q(t).  Elements are (numerator, monic denominator), coprime."""

    def __init__(self, coeffs: ResidueField, var: str = "t"):
        if coeffs.size is None:
            raise ValueError("coefficients of F_q(t) must be finite")
        self.k = coeffs
        self.var = var
        self.char = coeffs.char
        self.size = None
        self.zero = ((), (coeffs.one,))
        self.one = ((coeffs.one,), (coeffs.one,))

    def make(self, num, den=None):
        k = self.k
        num = p_trim(k, tuple(num))
        den = (k.one,) if den is None else p_trim(k, tuple(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = p_gcd(k, num, den)
        if len(g) > 1:
            num = p_divmod(k, num, g)[0]
            den = p_divmod(k, den, g)[0]
        c = k.inv(den[-1])
        return (p_scale(k, num, c), p_scale(k, den, c))

    @property
    def t(self):
        return self.make((self.k.zero, self.k.one))

    def from_int(self, n: int):
        return self.make((self.k.from_int(n),))

    def embed(self, x):
        return self.make((self.k.coerce(x),))

    def add(self, a, b):
        k = self.k
        if a[1] == b[1]:
            return self.make(p_add(k, a[0], b[0]), a[1])
        return self.make(p_add(k, p_mul(k, a[0], b[1]), p_mul(k, b[0], a[1])),
                         p_mul(k, a[1], b[1]))

    def neg(self, a):
        return (p_neg(self.k, a[0]), a[1])

    def mul(self, a, b):
        k = self.k
        return self.make(p_mul(k, a[0], b[0]), p_mul(k, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of 0 in %r" % self)
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def pth_root(self, a):
        """p-th root if a is a p-th power (exponent analysis), else None."""
        p, k = self.char, self.k
        parts = []
        for poly in a:
            if any(not k.is_zero(c) and i % p for i, c in enumerate(poly)):
                return None
            parts.append(tuple(k.pth_root(c) for c in poly[::p]))
        return self.make(*parts)

    def random(self, rng, degree: int = 2):
        k = self.k
        num = tuple(k.random(rng) for _ in range(degree + 1))
        den = tuple(k.random(rng) for _ in range(rng.randrange(degree + 1))) + (k.one,)
        return self.make(num, den)

    def fmt(self, a) -> str:
        num = p_fmt(self.k, a[0], self.var)
        if a[1] == (self.k.one,):
            return num
        den = p_fmt(self.k, a[1], self.var)
        if len(a[0]) > 1 and any(not self.k.is_zero(c) for c in a[0][:-1]):
            num = "(" + num + ")"
        return f"{num}/({den})"

    def __repr__(self):
        return f"{self.k!r}({self.var})"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (other.k, other.var) == (self.k, self.var)

    def __hash__(self):
        return hash(("ratfunc", self.k, self.var))


class FieldElem:
    """A raw element bundled with its field, with the usual operators."""

    __slots__ = ("field", "raw")

    def __init__(self, field: ResidueField, raw):
        self.field = field
        self.raw = raw

    def _other(self, b):
        return self.field.coerce(b)

    def __add__(self, b):
        return FieldElem(self.field, self.field.add(self.raw, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElem(self.field, self.field.sub(self.raw, self._other(b)))

    def __rsub__(self, b):
        return FieldElem(self.field, self.field.sub(self._other(b), self.raw))

    def __mul__(self, b):
        return FieldElem(self.field, self.field.mul(self.raw, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElem(self.field, self.field.div(self.raw, self._other(b)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.pow(self.raw, n))

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __eq__(self, b):
        try:
            return self.raw == self._other(b)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        return self.field.fmt(self.raw)


# ---------------------------------------------------------------------------
# polynomials over a residue field (tuples, low degree first)


def p_trim(F, a: tuple) -> tuple:
    n = len(a)
    while n and F.is_zero(a[n - 1]):
        n -= 1
    return a[:n]


def p_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return p_trim(F, tuple(out))


def p_neg(F, a):
    return tuple(F.neg(c) for c in a)


def p_sub(F, a, b):
    return p_add(F, a, p_neg(F, b))


def p_scale(F, a, c):
    if F.is_zero(c):
        return ()
    return tuple(F.mul(x, c) for x in a)


def p_mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return p_trim(F, tuple(out))


def p_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    if len(a) <= db:
        return (), p_trim(F, tuple(a))
    q = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return p_trim(F, tuple(q)), p_trim(F, tuple(a[:db]))


def p_mod(F, a, b):
    return p_divmod(F, a, b)[1]


def p_monic(F, a):
    if not a:
        return a
    return p_scale(F, a, F.inv(a[-1]))


def p_gcd(F, a, b):
    a, b = p_trim(F, tuple(a)), p_trim(F, tuple(b))
    while b:
        a, b = b, p_mod(F, a, b)
    return p_monic(F, a)


def p_xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g (g not normalised)."""
    r0, r1 = a, b
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = p_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(F, s0, p_mul(F, q, s1))
        t0, t1 = t1, p_sub(F, t0, p_mul(F, q, t1))
    return r0, s0, t0


def p_deriv(F, a):
    return p_trim(F, tuple(F.mul(F.from_int(i), c) for i, c in enumerate(a))[1:])


def p_pow(F, a, n):
    result = (F.one,)
    while n:
        if n & 1:
            result = p_mul(F, result, a)
        a = p_mul(F, a, a)
        n >>= 1
    return result


def p_powmod(F, a, n, m):
    result = (F.one,)
    a = p_mod(F, a, m)
    while n:
        if n & 1:
            result = p_mod(F, p_mul(F, result, a), m)
        a = p_mod(F, p_mul(F, a, a), m)
        n >>= 1
    return result


def p_eval(F, a, z):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, z), c)
    return acc


def p_fmt(F, a, var="z") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        cs = F.fmt(c)
        if i and any(ch in cs.lstrip("-") for ch in " +-/"):
            cs = "(" + cs + ")"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def _prime_factors(n: int):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, a) -> Optional[bool]:
    """Rabin's test over a finite field; None when F is infinite and deg > 1."""
    a = p_monic(F, p_trim(F, tuple(a)))
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if F.size is None:
        return None
    q = F.size
    x = (F.zero, F.one)

    def frob(h, k):
        for _ in range(k):
            h = p_powmod(F, h, q, a)
        return h

    if p_sub(F, frob(x, n), x):
        return False
    for r in _prime_factors(n):
        h = p_sub(F, frob(x, n // r), x)
        if len(p_gcd(F, h, a)) > 1:
            return False
    return True


def power_of_irreducible(F, a):
    """Decide whether a = S^k with S monic irreducible.

    Returns (status, S, k) where status is "yes", "no" or "unknown"; S and k
    are meaningful whenever the decomposition a = S^k itself is known.
    """
    a = p_monic(F, p_trim(F, tuple(a)))
    n = len(a) - 1
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return "yes", a, 1
    p = F.char
    da = p_deriv(F, a)
    if not da:
        roots = [F.pth_root(c) for c in a[::p]]
        if all(r is not None for r in roots):
            status, S, k = power_of_irreducible(F, tuple(roots))
            return status, S, k * p
        # a is not a p-th power; only binomials z^(p^j) - c are certified
        nonzero = [i for i, c in enumerate(a) if not F.is_zero(c)]
        ppow = n
        while ppow % p == 0:
            ppow //= p
        if nonzero == [0, n] and ppow == 1:
            return "yes", a, 1
        return "unknown", a, 1
    g = p_gcd(F, a, da)
    S = p_divmod(F, a, g)[0]
    dS = len(S) - 1
    if n % dS or p_pow(F, S, n // dS) != a:
        return "no", None, None
    irr = is_irreducible(F, S)
    if irr is None:
        return "unknown", S, n // dS
    return ("yes" if irr else "no"), S, n // dS


def find_irreducible(F, degree: int):
    """First monic irreducible of the given degree in lexicographic order."""
    for coeffs in product(list(F.elements()), repeat=degree):
        cand = tuple(coeffs) + (F.one,)
        if F.is_zero(cand[0]):
            continue
        if is_irreducible(F, cand):
            return cand
    raise ArithmeticError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def GF(q: int, name: str = "a") -> ResidueField:
    """The finite field with q elements (q a prime power)."""
    ps = _prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    k, r = 0, q
    while r > 1:
        r //= p
        k += 1
    if k == 1:
        return PrimeField(p)
    Fp = PrimeField(p)
    return ExtensionField(Fp, find_irreducible(Fp, k), name=name)
