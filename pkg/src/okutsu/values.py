"""Values in Q ∪ {∞} and subgroups of Q of the form (1/D)·Z[S^-1]."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union


class _Infinity:
    """The absorbing top element.  Compares above every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, k):
        if k == 0:
            raise ValueError("0 * infinity is undefined")
        if k < 0:
            raise ValueError("negative multiple of infinity")
        return self

    __rmul__ = __mul__

    def __truediv__(self, k):
        if k <= 0:
            raise ValueError("infinity divided by a non-positive number")
        return self

    def __neg__(self):
        raise ValueError("-infinity is not a value")

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf is undefined")
        return self

    def __rsub__(self, other):
        raise ValueError("finite - inf is undefined")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("okutsu-infinity")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Value = Union[Fraction, _Infinity]


def is_inf(v) -> bool:
    return v is INF


def to_value(v) -> Value:
    """Coerce ints, Fractions, 'num/den' strings and 'inf' into a Value."""
    if v is INF:
        return INF
    if isinstance(v, str):
        s = v.strip()
        if s in ("inf", "oo", "∞"):
            return INF
        return Fraction(s)
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a value")


def fmt_value(v: Value) -> str:
    """Serialise a Value the way reports do: "num/den", plain integers, or "inf"."""
    if v is INF:
        return "inf"
    return str(Fraction(v))


def vmin(values: Iterable[Value]) -> Value:
    best = INF
    for v in values:
        if v < best:
            best = v
    return best


def _strip_primes(n: int, primes: Iterable[int]) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class ValueSubgroup:
    """The subgroup (1/D)·Z[S^-1] of Q.

    Only the S-free part of D matters, so D is normalised to be coprime to
    every prime of S.
    """

    __slots__ = ("D", "S")

    def __init__(self, D: int = 1, S: Iterable[int] = ()):
        S = frozenset(S)
        if D <= 0:
            raise ValueError("scale must be positive")
        self.S = S
        self.D = _strip_primes(D, S)

    def _free_denominator(self, gamma) -> int:
        gamma = Fraction(gamma)
        return _strip_primes(gamma.denominator, self.S)

    def __contains__(self, gamma) -> bool:
        if gamma is INF:
            return False
        return self.D % self._free_denominator(gamma) == 0

    def adjoin(self, gamma) -> "ValueSubgroup":
        """The subgroup generated by self and gamma."""
        if gamma is INF:
            raise ValueError("cannot adjoin infinity to a value group")
        return ValueSubgroup(_lcm(self.D, self._free_denominator(gamma)), self.S)

    def index_in(self, other: "ValueSubgroup") -> int:
        """(other : self), assuming self ⊆ other and equal inverted primes."""
        if self.S != other.S or other.D % self.D:
            raise ValueError("not a subgroup of finite index")
        return other.D // self.D

    def __le__(self, other: "ValueSubgroup") -> bool:
        return self.S <= other.S and other.D % _strip_primes(self.D, other.S) == 0

    def __eq__(self, other):
        return isinstance(other, ValueSubgroup) and (self.D, self.S) == (other.D, other.S)

    def __hash__(self):
        return hash((self.D, self.S))

    def __repr__(self):
        base = "Z" if not self.S else "Z[1/%s]" % ",".join(map(str, sorted(self.S)))
        return base if self.D == 1 else f"(1/{self.D}){base}"


def ram_index(gamma: Value, G: ValueSubgroup) -> int:
    """Smallest e >= 1 with e*gamma in G."""
    if gamma is INF:
        raise ValueError("ram_index is undefined for an infinite value")
    b = G._free_denominator(gamma)
    return b // gcd(b, G.D)
