"""Inductive valuations on K[x] built from ordinary and limit augmentations.

A valuation is a tuple of ``AugStep`` records.  Step 0 is the formal
augmentation [v; phi_0, gamma_0] of the base valuation by a monic linear
polynomial; step j > 0 is either ordinary, mu_j = [mu_{j-1}; phi_j, gamma_j],
or a limit step, mu_j = [A; phi_j, gamma_j] for a continuous family A whose
first valuation is mu_{j-1}.  Limit families are finite approximant prefixes
(see ``FamilyApprox``).

Residues
--------
For chains of ordinary steps the module also maintains the usual residue
tower.  At level j the value group is Gamma_j = Gamma_{j-1} + Z*gamma_j and
e_j = (Gamma_j : Gamma_{j-1}).  A *monomial* at level j is a formal product
pi^c * phi_0^b_0 ... phi_j^b_j, stored as ``(c, (b_0, ..., b_j))``; the
canonical monomial of a value V has 0 <= b_k < e_k.  With U_j the canonical
level-(j-1) monomial of value e_j*gamma_j, the residue of phi_j^e_j / U_j
is the variable xi_j.  Reducing a polynomial a against a monomial of value
mu_j(a) gives a Laurent polynomial in xi_j over kappa_j, the residue field of
mu_j's degree-zero part; kappa_{j+1} = kappa_j[z]/(psi_j) where psi_j is the
residual polynomial of phi_{j+1}.  Normalisations follow no canonical choice;
only degrees, irreducibility and multiplicities are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidAugmentation, NotCertified, UnstableAtPrecision
from .newton import NewtonPolygon
from .poly import Poly, phi_expansion
from .residue import ExtensionField, p_fmt, p_trim, power_of_irreducible
from .values import INF, Value, ValueSubgroup, fmt_value, ram_index

Monomial = Tuple[Fraction, Tuple[int, ...]]


@dataclass(frozen=True)
class FamilyRule:
    """Closed-form description of a registry family (for reports).

    ``member(m)`` builds the m-th polynomial (m >= 1); ``gamma(m)`` and
    ``distance(m)`` are the exact expected v_F and d values; the two
    suprema are the limits of those sequences.
    """

    description: str
    member: object
    gamma: object
    distance: object
    gamma_sup: Value
    distance_sup: Value
    provenance: str = ""


@dataclass(frozen=True, eq=False)
class FamilyApprox:
    """A finite prefix (rho_1, rho_2, ...) of a continuous family.

    ``members[i] = (chi_i, gamma_i)`` and rho_i = [base; chi_i, gamma_i] for
    i >= 1, while rho_0 = base itself, so ``members[0]`` must be the last
    key and value of ``base``.  ``limit_degree`` is the degree of the limit
    key polynomial; stable values are only asked for below it.
    """

    base: "InductiveValuation"
    members: Tuple[Tuple[Poly, Value], ...]
    limit_degree: Optional[int] = None
    min_run: int = 2
    rule: Optional[FamilyRule] = None
    _rhos: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if len(self.members) < 1:
            raise ValueError("a family needs at least one approximant")
        degs = {phi.degree for phi, _ in self.members}
        if len(degs) != 1:
            raise ValueError("all approximants of a family share one degree")
        gammas = [g for _, g in self.members]
        if any(a >= b for a, b in zip(gammas, gammas[1:])):
            raise ValueError("approximant values must strictly increase")
        if self.min_run < 2:
            raise ValueError("the agreement run must be at least 2")
        last_phi, last_gamma = self.base.last_phi, self.base.last_gamma
        if self.members[0] != (last_phi, last_gamma):
            raise ValueError("the first approximant must be the base valuation's last step")

    @property
    def degree(self) -> int:
        return self.members[0][0].degree

    @property
    def size(self) -> int:
        return len(self.members)

    def valuations(self) -> List["InductiveValuation"]:
        if not self._rhos:
            rhos = [self.base]
            for chi, gamma in self.members[1:]:
                rhos.append(self.base._extend("ordinary", chi, gamma))
            self._rhos.extend(rhos)
        return self._rhos

    def values(self, a: Poly) -> List[Value]:
        return [rho.eval(a) for rho in self.valuations()]

    def stable_value(self, a: Poly) -> Tuple[Value, int]:
        """(rho_A(a), first index of the constant run).

        The members are scanned from the front and the first run of
        ``min_run`` equal values decides.  For a nested family
        (base(chi_{i+1} - chi_i) >= gamma_i, see ``is_nested``) the values
        rho_i(a) increase until the first equality and stay constant after it,
        so this agrees with reading the tail of the stored prefix while
        touching only the cheap early members for most inputs.
        """
        if self.limit_degree is not None and a.degree >= self.limit_degree:
            raise ValueError(
                f"stable values are defined below the limit degree {self.limit_degree}")
        rhos = self.valuations()
        run = self.min_run
        vals: List[Value] = []
        for rho in rhos:
            vals.append(rho.eval(a))
            if len(vals) >= run and all(v == vals[-1] for v in vals[-run:]):
                return vals[-1], len(vals) - run
        tail = ", ".join(fmt_value(v) for v in vals[-2:])
        raise UnstableAtPrecision(
            f"unstable at precision: {a} has no stable value within "
            f"{len(rhos)} approximants (last values {tail})", vals[-2:])

    def stable(self, a: Poly) -> Value:
        return self.stable_value(a)[0]

    def is_nested(self) -> List[int]:
        """Indices i where base(chi_{i+1} - chi_i) >= gamma_i fails (empty when nested)."""
        bad = []
        for i in range(len(self.members) - 1):
            (c0, g0), (c1, _) = self.members[i], self.members[i + 1]
            if self.base.eval(c1 - c0) < g0:
                bad.append(i)
        return bad

    def is_unstable(self, phi: Poly) -> bool:
        """phi's values strictly increase along the stored prefix."""
        vals = self.values(phi)
        return all(a < b for a, b in zip(vals, vals[1:]))

    def to_json(self) -> list:
        from .poly import format_poly
        return [{"phi": format_poly(p), "gamma": fmt_value(g)} for p, g in self.members]


@dataclass(frozen=True)
class AugStep:
    kind: str  # "base" | "ordinary" | "limit"
    phi: Poly
    gamma: Value
    family: Optional[FamilyApprox] = None

    def to_json(self) -> dict:
        from .poly import format_poly
        out = {"kind": self.kind,
               "phi": [self.phi.field.format(c) for c in self.phi.coeffs],
               "phi_text": format_poly(self.phi),
               "gamma": fmt_value(self.gamma)}
        if self.family is not None:
            out["family"] = self.family.to_json()
        return out


class _Level:
    """Residue data of one ordinary level, filled lazily."""

    __slots__ = ("e", "group", "U", "kappa", "z_prev")

    def __init__(self):
        self.e = None
        self.group = None
        self.U = None
        self.kappa = None
        self.z_prev = None


class InductiveValuation:
    """mu_r after the steps ``steps[0..r]`` over the base field."""

    def __init__(self, field_, steps: Sequence[AugStep] = ()):
        self.field = field_
        self.steps = tuple(steps)
        self._memo: Dict[Tuple[int, Poly], Value] = {}
        self._levels: Dict[int, _Level] = {}
        self._psi: Dict[int, tuple] = {}

    # -- construction ------------------------------------------------------------
    @classmethod
    def gauss_base(cls, field_) -> "InductiveValuation":
        """The base valuation v, only evaluable on constants."""
        return cls(field_, ())

    def _extend(self, kind, phi, gamma, family=None) -> "InductiveValuation":
        if not self.steps:
            kind = "base"
        return InductiveValuation(self.field, self.steps + (AugStep(kind, phi, gamma, family),))

    def truncate(self, j: int) -> "InductiveValuation":
        """mu_j, the valuation after steps 0..j."""
        if not -1 <= j < len(self.steps):
            raise IndexError(j)
        return InductiveValuation(self.field, self.steps[: j + 1])

    # -- shape ---------------------------------------------------------------------
    @property
    def depth_index(self) -> int:
        return len(self.steps) - 1

    @property
    def last_phi(self) -> Optional[Poly]:
        return self.steps[-1].phi if self.steps else None

    @property
    def last_gamma(self) -> Optional[Value]:
        return self.steps[-1].gamma if self.steps else None

    @property
    def degree(self) -> int:
        """deg(mu): degree of the last key polynomial (0 for the base)."""
        return self.steps[-1].phi.degree if self.steps else 0

    @property
    def is_terminal(self) -> bool:
        return bool(self.steps) and self.steps[-1].gamma is INF

    @property
    def ordinary_prefix(self) -> int:
        """Number of leading steps that are not limit steps."""
        for j, st in enumerate(self.steps):
            if st.kind == "limit":
                return j
        return len(self.steps)

    # -- evaluation ----------------------------------------------------------------
    def eval(self, g: Poly) -> Value:
        if not isinstance(g, Poly):
            g = Poly(self.field, (g,))
        return self._eval(len(self.steps) - 1, g)

    __call__ = eval

    def eval_at(self, j: int, g: Poly) -> Value:
        """mu_j(g)."""
        return self._eval(j, g)

    def _eval(self, j: int, g: Poly) -> Value:
        if not g:
            return INF
        if j < 0:
            if g.degree > 0:
                raise ValueError("the base valuation is only defined on constants here")
            return self.field.valuation(g[0])
        key = (j, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        st = self.steps[j]
        if g.degree < st.phi.degree:
            val = self._lower(j, g)
        else:
            expn = phi_expansion(g, st.phi)
            if st.gamma is INF:
                val = self._lower(j, expn[0]) if expn[0] else INF
            else:
                val = INF
                for s, a in enumerate(expn):
                    if a:
                        v = self._lower(j, a) + s * st.gamma
                        if v < val:
                            val = v
        self._memo[key] = val
        return val

    def _lower(self, j: int, a: Poly) -> Value:
        """Value on polynomials of degree < deg phi_j under mu_{j-1} (or rho_A)."""
        st = self.steps[j]
        if st.kind == "limit":
            return st.family.stable(a)
        return self._eval(j - 1, a)

    def expansion_points(self, j: int, g: Poly) -> List[Tuple[int, Value]]:
        """Points (s, mu_{j-1}(a_s)) of the phi_j-expansion of g."""
        phi = self.steps[j].phi
        return [(s, self._lower(j, a)) for s, a in enumerate(phi_expansion(g, phi))]

    def newton_polygon(self, j: int, g: Poly) -> NewtonPolygon:
        return NewtonPolygon(self.expansion_points(j, g))

    # -- value groups ----------------------------------------------------------------
    def value_group(self, j: Optional[int] = None) -> ValueSubgroup:
        """Gamma_{mu_j}; the base group vK for j = -1."""
        if j is None:
            j = len(self.steps) - 1
        G = self.field.value_group
        for st in self.steps[: j + 1]:
            if st.family is not None:
                for _, g in st.family.members:
                    G = G.adjoin(g)
            if st.gamma is not INF:
                G = G.adjoin(st.gamma)
        return G

    def ram_index_at(self, j: int) -> int:
        """e_j = (Gamma_{mu_j} : Gamma_{mu_{j-1}})."""
        st = self.steps[j]
        if st.gamma is INF:
            return 1
        G = self.value_group(j - 1)
        if st.family is not None:
            for _, g in st.family.members:
                G = G.adjoin(g)
        return ram_index(st.gamma, G)

    # -- monomials -------------------------------------------------------------------
    def mono_value(self, mono: Monomial) -> Fraction:
        c, exps = mono
        return c + sum(b * self.steps[k].gamma for k, b in enumerate(exps))

    def canonical_monomial(self, j: int, V) -> Monomial:
        V = Fraction(V)
        if j < 0:
            if V not in self.field.value_group:
                raise ValueError(f"{V} is not in the value group of the base field")
            return (V, ())
        e = self._level(j).e
        gamma = self.steps[j].gamma
        G = self.value_group(j - 1)
        for b in range(e):
            if V - b * gamma in G:
                c, exps = self.canonical_monomial(j - 1, V - b * gamma)
                return (c, exps + (b,))
        raise ValueError(f"{V} is not in the value group of level {j}")

    @staticmethod
    def _mono_mul(a: Monomial, b: Monomial, k: int = 1) -> Monomial:
        """a * b^k, padding exponent vectors."""
        n = max(len(a[1]), len(b[1]))
        ea = a[1] + (0,) * (n - len(a[1]))
        eb = b[1] + (0,) * (n - len(b[1]))
        return (a[0] + k * b[0], tuple(x + k * y for x, y in zip(ea, eb)))

    # -- residue tower ---------------------------------------------------------------
    def _require_ordinary(self, j: int):
        if j >= self.ordinary_prefix:
            raise NotCertified(
                "residue computations above a limit step are not available")

    def _level(self, j: int) -> _Level:
        lv = self._levels.get(j)
        if lv is not None and lv.kappa is not None:
            return lv
        self._require_ordinary(j)
        lv = lv or _Level()
        self._levels[j] = lv
        st = self.steps[j]
        lv.group = self.value_group(j)
        lv.e = ram_index(st.gamma, self.value_group(j - 1)) if st.gamma is not INF else 1
        if st.gamma is not INF:
            lv.U = self.canonical_monomial(j - 1, lv.e * st.gamma)
        if j == 0:
            lv.kappa = self.field.residue_field
        else:
            psi = self.residual_of_next(j - 1)
            prev = self._level(j - 1).kappa
            if len(psi) == 2:
                lv.kappa = prev
                lv.z_prev = prev.neg(psi[0])
            else:
                lv.kappa = ExtensionField(prev, psi, name=f"z{j - 1}")
                lv.z_prev = lv.kappa.gen
        return lv

    def residue_field_at(self, j: int):
        """kappa_j: residue field of the degree-zero part at level j."""
        return self._level(j).kappa

    def residual_of_next(self, j: int) -> tuple:
        """psi_j: monic residual polynomial of phi_{j+1} with respect to mu_j."""
        if j in self._psi:
            return self._psi[j]
        phi = self.steps[j + 1].phi
        V = self._eval(j, phi)
        poly = self._red_poly(j, phi, self.canonical_monomial(j, V))
        kappa = self._level(j).kappa
        lo = min(poly)
        coeffs = tuple(poly.get(k, kappa.zero) for k in range(lo, max(poly) + 1))
        psi = _monic(kappa, coeffs)
        self._psi[j] = psi
        return psi

    def _specialize(self, j: int, poly: Dict[int, object]):
        """Evaluate a Laurent polynomial over kappa_j at xi_j = z_j in kappa_{j+1}."""
        lv_next = self._level(j + 1)
        kap, kap_next = self._level(j).kappa, lv_next.kappa
        z = lv_next.z_prev
        acc = kap_next.zero
        for k, c in poly.items():
            c_up = c if kap_next is kap else kap_next.from_base(c)
            acc = kap_next.add(acc, kap_next.mul(c_up, kap_next.pow(z, k)))
        return acc

    def _red_elem(self, j: int, a: Poly, mono: Monomial):
        """Residue of a / mono in kappa_{j+1}; needs deg a < m_{j+1}."""
        if j < 0:
            K = self.field
            c = a[0] if a else K.zero
            return K.residue(K.exquo(c, K.monomial(mono[0]))).raw
        return self._specialize(j, self._red_poly(j, a, mono))

    def _red_poly(self, j: int, a: Poly, mono: Monomial) -> Dict[int, object]:
        """Residue of a / mono as a Laurent polynomial in xi_j over kappa_j.

        Requires mu_j(a) >= value(mono); terms of larger value vanish.
        """
        lv = self._level(j)
        kap = lv.kappa
        c, exps = mono
        exps = exps + (0,) * (j + 1 - len(exps))
        low, b = (c, exps[:j]), exps[j]
        e, U = lv.e, lv.U
        out: Dict[int, object] = {}
        for s, a_s in enumerate(phi_expansion(a, self.steps[j].phi)):
            if not a_s or (s - b) % e:
                continue
            k = (s - b) // e
            r = self._red_elem(j - 1, a_s, self._mono_mul(low, U, -k))
            if not kap.is_zero(r):
                out[k] = r
        return out

    def reduce(self, a: Poly, V=None) -> Dict[int, object]:
        """Top-level residue of a as a Laurent polynomial in xi (dict k -> coeff)."""
        j = len(self.steps) - 1
        V = self._eval(j, a) if V is None else V
        return self._red_poly(j, a, self.canonical_monomial(j, V))

    def lift(self, j: int, c, mono: Monomial) -> Poly:
        """A polynomial A, deg A < m_{j+1}, whose residue against mono is c in kappa_{j+1}."""
        K = self.field
        if j < 0:
            return Poly(K, (K.lift(K.residue_field(c)) * K.monomial(mono[0]),))
        lv = self._level(j)
        lv_next = self._level(j + 1)
        kap, kap_next = lv.kappa, lv_next.kappa
        cst, exps = mono
        exps = exps + (0,) * (j + 1 - len(exps))
        low, b = (cst, exps[:j]), exps[j]
        e, U = lv.e, lv.U
        t = -(b // e)  # b + t*e in [0, e)
        b2 = b + t * e
        shifted = kap_next.mul(c, kap_next.pow(lv_next.z_prev, -t))
        coords = [shifted] if kap_next is kap else list(kap_next.to_poly(shifted))
        phi = self.steps[j].phi
        acc = Poly(K, ())
        for k, ck in enumerate(coords):
            if kap.is_zero(ck):
                continue
            A_k = self.lift(j - 1, ck, self._mono_mul(low, U, -(t + k)))
            acc = acc + A_k * phi ** (b2 + k * e)
        return acc

    def key_from_residual(self, psi: Sequence) -> Poly:
        """Lift a monic irreducible psi over kappa_top (psi(0) != 0) to a key polynomial."""
        j = len(self.steps) - 1
        lv = self._level(j)
        kap = lv.kappa
        psi = _monic(kap, tuple(psi))
        f = len(psi) - 1
        phi = self.steps[j].phi
        out = phi ** (lv.e * f)
        for i in range(f):
            if kap.is_zero(psi[i]):
                continue
            mono = self._mono_mul((Fraction(0), ()), lv.U, f - i)
            out = out + self.lift(j - 1, psi[i], mono) * phi ** (lv.e * i)
        return out

    # -- predicates ------------------------------------------------------------------
    def is_mu_minimal(self, f: Poly) -> bool:
        if f.degree < 1:
            raise ValueError("mu-minimality needs a nonconstant polynomial")
        if not self.steps or self.is_terminal:
            raise ValueError("mu-minimality needs a non-terminal inductive valuation")
        return self.eval(f) / f.degree == self.last_gamma / self.degree

    def residual_polynomial(self, g: Poly) -> "Residual":
        """Residual polynomial of g along the gamma-side at the top level."""
        j = len(self.steps) - 1
        kap = self._level(j).kappa
        red = self.reduce(g)
        lo, hi = min(red), max(red)
        coeffs = tuple(red.get(k, kap.zero) for k in range(lo, hi + 1))
        return Residual(kap, coeffs, shift=lo)

    def is_key_polynomial(self, phi: Poly) -> Optional[bool]:
        """True / False, or None when irreducibility cannot be certified."""
        if not phi.is_monic() or phi.degree < 1:
            return False
        if not self.steps or self.is_terminal:
            return False
        m = self.degree
        if phi.degree < m or not self.is_mu_minimal(phi):
            return False
        if phi.degree == m:
            return True
        j = len(self.steps) - 1
        e = self.ram_index_at(j)
        if phi.degree % (m * e):
            return False
        V = self.eval(phi)
        expn = phi_expansion(phi, self.steps[j].phi)
        # the constant term must sit on the principal side (xi does not divide R)
        if not expn[0] or self._lower(j, expn[0]) != V:
            return False
        if phi.degree == m * e:
            return True  # the residual polynomial is linear
        R = self.residual_polynomial(phi)
        if R.shift != 0 or R.degree != phi.degree // (m * e):
            return False
        status, _, mult = R.factor_shape()
        if status == "unknown":
            return None
        return status == "yes" and mult == 1

    # -- augmentation ------------------------------------------------------------------
    def augment(self, phi: Poly, gamma: Value, check: bool = True) -> "InductiveValuation":
        """Ordinary augmentation [self; phi, gamma] (or the base step from v)."""
        if not self.steps:
            if phi.degree != 1 or not phi.is_monic():
                raise InvalidAugmentation("the first key polynomial must be monic of degree 1")
            return self._extend("base", phi, gamma)
        if self.is_terminal:
            raise InvalidAugmentation("a terminal valuation cannot be augmented")
        if check:
            key = self.is_key_polynomial(phi)
            if key is None:
                raise InvalidAugmentation(f"{phi} is not certified as a key polynomial")
            if not key:
                raise InvalidAugmentation(f"{phi} is not a key polynomial")
            if not gamma > self.eval(phi):
                raise InvalidAugmentation(
                    f"gamma = {fmt_value(gamma)} must exceed mu(phi) = {fmt_value(self.eval(phi))}")
        return self._extend("ordinary", phi, gamma)

    def augment_limit(self, family: FamilyApprox, phi: Poly, gamma: Value,
                      check: bool = True) -> "InductiveValuation":
        """Limit augmentation [A; phi, gamma] with A's first valuation equal to self."""
        if family.base.steps != self.steps:
            raise InvalidAugmentation("the family must start at this valuation")
        if check:
            if not phi.is_monic() or phi.degree <= family.degree:
                raise InvalidAugmentation("a limit key polynomial must have larger degree")
            if family.limit_degree is not None and phi.degree != family.limit_degree:
                raise InvalidAugmentation("degree differs from the family's limit degree")
            vals = family.values(phi)
            if not all(a < b for a, b in zip(vals, vals[1:])):
                raise InvalidAugmentation(f"{phi} is stable along the family, not a limit key")
            if not all(v < gamma for v in vals):
                raise InvalidAugmentation("gamma must exceed every rho_i(phi)")
        return self._extend("limit", phi, gamma, family)

    def __repr__(self):
        parts = ["v"]
        for st in self.steps:
            tag = "lim " if st.kind == "limit" else ""
            parts.append(f"{tag}({st.phi}, {fmt_value(st.gamma)})")
        return " -> ".join(parts)


def _monic(F, coeffs: tuple) -> tuple:
    coeffs = p_trim(F, coeffs)
    inv = F.inv(coeffs[-1])
    return tuple(F.mul(c, inv) for c in coeffs)


@dataclass
class Residual:
    """A residual polynomial over a residue field, lowest coefficient first."""

    field: object
    coeffs: tuple
    shift: int = 0  # power of xi divided out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def factor_shape(self):
        """(status, S, k) for R = S^k with S irreducible; see power_of_irreducible."""
        return power_of_irreducible(self.field, self.coeffs)

    def certified_irreducible(self) -> Optional[bool]:
        status, _, k = self.factor_shape()
        if status == "unknown":
            return None
        return status == "yes" and k == 1

    def __repr__(self):
        return p_fmt(self.field, _monic(self.field, self.coeffs), "z")


# -- module-level operations ---------------------------------------------------------


def eval_valuation(mu: InductiveValuation, g: Poly) -> Value:
    return mu.eval(g)


def augment_ordinary(mu: InductiveValuation, phi: Poly, gamma: Value) -> InductiveValuation:
    return mu.augment(phi, gamma)


def augment_limit(mu, family, phi, gamma) -> InductiveValuation:
    return mu.augment_limit(family, phi, gamma)


def stable_value(fam: FamilyApprox, a: Poly) -> Tuple[Value, int]:
    return fam.stable_value(a)


def is_mu_minimal(mu: InductiveValuation, f: Poly) -> bool:
    return mu.is_mu_minimal(f)


def is_key_polynomial(mu: InductiveValuation, phi: Poly) -> Optional[bool]:
    return mu.is_key_polynomial(phi)


def residual_polynomial(mu_prev: InductiveValuation, phi: Poly, g: Poly, side) -> Residual:
    """Residual of g along a side of N_{mu_prev, phi}(g).

    The side's inclination gamma fixes mu = [mu_prev; phi, gamma]; the
    result has degree (side length)/e with e = ram_index(gamma, Gamma_mu_prev).
    """
    if mu_prev.steps:
        pts = [(s, mu_prev.eval(a)) for s, a in enumerate(phi_expansion(g, phi))]
    else:
        pts = [(s, mu_prev.field.valuation(a[0]) if a else INF)
               for s, a in enumerate(phi_expansion(g, phi))]
    poly = NewtonPolygon(pts)
    if side not in poly.sides:
        raise ValueError("the side does not belong to this Newton polygon")
    mu = mu_prev._extend("ordinary", phi, side.inclination)
    return mu.residual_polynomial(g)


def truncation_eval(vF, phi: Poly, g: Poly) -> Value:
    """min over the phi-expansion of vF(a_s phi^s); vF is any valuation callable."""
    vphi = vF(phi)
    best = INF
    for s, a in enumerate(phi_expansion(g, phi)):
        if not a:
            continue
        v = vF(a) + (s * vphi if s else 0)
        if v < best:
            best = v
    return best
