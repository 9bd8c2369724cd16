"""Built-in worked examples.

Each record knows how to build its base field, polynomial and MLV chain for
a given odd prime p and precision, and carries the expected outputs with a
provenance tag: [PAPER] values are stated in the source for the example,
[DERIVED] values were obtained from an independent oracle (root-distance
multisets or the ramification polygon) and then frozen here.

The defect examples C, D1, D2, E live over the perfect hull of F_p((y)).
Their MLV chains contain limit augmentations, so the chain is assembled
from explicit families of approximants whose closed forms are recorded as
FamilyRule objects; compute_chain is only used for the defectless ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Fr
from typing import Callable, Dict, List, Optional, Tuple

from .basefields import LaurentField, PuiseuxField, QpField
from .chains import MLVChain, compute_chain
from .errors import PrecisionError, UnstableAtPrecision
from .poly import Poly, phi_expansion
from .valuation import FamilyApprox, FamilyRule, InductiveValuation
from .values import INF, Value
from .vf import RootValuation

PAPER, DERIVED = "[PAPER]", "[DERIVED]"


@dataclass
class Instance:
    F: Poly
    chain: MLVChain
    vF: RootValuation
    p: Optional[int] = None
    prec: Optional[int] = None


@dataclass
class ExampleRecord:
    id: str
    summary: str
    field_text: Callable[[int, int], str]
    poly_text: Callable[[int], str]
    builder: Callable[[int, int], Instance]
    expected: Callable[[int], Dict[str, Tuple[object, str]]]
    defect: bool = False
    fixed_p: Optional[int] = None

    def build(self, p: int = 3, prec: int = 6) -> Instance:
        return self.builder(p, prec)

    def setup_text(self, p: int = 3, prec: int = 6) -> str:
        return f"{self.field_text(p, prec)}; {self.poly_text(p)}"


def _check_p(p: int):
    if p < 3 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"the defect examples need an odd prime p, got {p}")


# ---------------------------------------------------------------------------------
# defectless examples


def _a1(p, prec):
    K = QpField(2)
    x = Poly.x(K)
    F = (x ** 2 - 2) ** 2 + 4 * x
    return Instance(F, compute_chain(F), RootValuation(F))


def _a2(p, prec):
    K = QpField(2)
    x = Poly.x(K)
    F = x ** 4 - 2 * x - 2
    return Instance(F, compute_chain(F), RootValuation(F))


def _b(p, prec):
    _check_p(p)
    K = LaurentField(p)
    x = Poly.x(K)
    y = K.monomial(1)
    F = x ** p - y * y * x - K.t
    return Instance(F, compute_chain(F), RootValuation(F), p)


def _tame4(p, prec):
    K = QpField(5)
    x = Poly.x(K)
    F = x ** 4 - 5
    return Instance(F, compute_chain(F), RootValuation(F))


# ---------------------------------------------------------------------------------
# defect examples


def _ym(K, e) -> object:
    return K.monomial(Fr(e))


def _alpha(K, p, m):
    """alpha_m = y^(-1/p) + ... + y^(-1/p^m)."""
    return sum((_ym(K, Fr(-1, p ** i)) for i in range(2, m + 1)), _ym(K, Fr(-1, p)))


def _members(make, start: int, limit: int) -> List:
    """make(m) for m = start, start+1, ... until precision runs out (at most `limit`)."""
    out = []
    for m in range(start, limit + 1):
        try:
            out.append(make(m))
        except PrecisionError:
            break
    return out


def _rule_c(K, p):
    x = Poly.x(K)
    return FamilyRule(
        "x - alpha_m, alpha_m = sum_{i<=m} y^(-1/p^i)",
        member=lambda m: x - _alpha(K, p, m),
        gamma=lambda m: Fr(-1, p ** (m + 1)),
        distance=lambda m: Fr(-1, p ** (m + 1)),
        gamma_sup=Fr(0), distance_sup=Fr(0),
        provenance=f"{PAPER} family of partial sums alpha_m; {DERIVED} v(alpha - alpha_m) = -1/p^(m+1)")


def _limit_chain(F: Poly, base: InductiveValuation, rule: FamilyRule, prec: int,
                 limit_phi: Poly, limit_gamma: Value, start: int) -> InductiveValuation:
    def make(m):
        chi = rule.member(m)
        # rho_m = [base; chi, gamma] must be computable on the limit key's
        # chi-expansion; deeper members outrun the precision of lower families
        try:
            for a in (chi, *phi_expansion(limit_phi, chi)):
                if a:
                    base.eval(a)
        except UnstableAtPrecision as exc:
            raise PrecisionError(str(exc)) from exc
        return chi, rule.gamma(m)

    members = _members(make, start, prec)
    fam = FamilyApprox(base, tuple(members), limit_degree=limit_phi.degree, rule=rule)
    return base.augment_limit(fam, limit_phi, limit_gamma)


def _c(p, prec):
    _check_p(p)
    K = PuiseuxField(p, prec)
    x = Poly.x(K)
    F = x ** p - x - _ym(K, -1)
    rule = _rule_c(K, p)
    mu = InductiveValuation.gauss_base(K).augment(rule.member(1), rule.gamma(1))
    mu = _limit_chain(F, mu, rule, prec, F, INF, 1)
    return Instance(F, MLVChain(F, mu), RootValuation(F), p, prec)


def _d1(p, prec):
    _check_p(p)
    K = PuiseuxField(p, prec)
    x = Poly.x(K)
    h = (p - 1) // 2
    F = (x ** p - _ym(K, h) * x) ** 2 - _ym(K, p - 2)
    y = _ym(K, 1)
    rule = FamilyRule(
        "x^2 - y*alpha_m^2, minimal polynomial of y^(1/2)*alpha_m",
        member=lambda m: x ** 2 - y * _alpha(K, p, m) ** 2,
        gamma=lambda m: 1 - Fr(1, p) - Fr(1, p ** (m + 1)),
        distance=lambda m: Fr(1, 2) - Fr(1, p ** (m + 1)),
        gamma_sup=1 - Fr(1, p), distance_sup=Fr(1, 2),
        provenance=f"{PAPER} family y^(1/2)*alpha_m; {DERIVED} closed forms from root distances")
    mu = InductiveValuation.gauss_base(K).augment(x, Fr(1, 2) - Fr(1, p))
    mu = mu.augment(rule.member(1), rule.gamma(1))
    mu = _limit_chain(F, mu, rule, prec, F, INF, 1)
    return Instance(F, MLVChain(F, mu), RootValuation(F), p, prec)


def _d2(p, prec):
    _check_p(p)
    K = PuiseuxField(p, prec)
    x = Poly.x(K)
    h = (p - 1) // 2
    phi1 = x ** p - x - _ym(K, -1)
    G = phi1 ** 2 - _ym(K, 1) * (_ym(K, h) - 1) ** 2
    rule = _rule_c(K, p)
    mu = InductiveValuation.gauss_base(K).augment(rule.member(1), rule.gamma(1))
    mu = _limit_chain(G, mu, rule, prec, phi1, Fr(1, 2), 1)
    mu = mu.augment(G, INF)
    return Instance(G, MLVChain(G, mu), RootValuation(G), p, prec)


def _e(p, prec):
    _check_p(p)
    K = PuiseuxField(p, prec)
    x = Poly.x(K)
    yinv = _ym(K, -1)
    F = (x ** p - x) ** p - _ym(K, 1 - p) * (x ** p - x) - _ym(K, -1 - p)

    def beta(m):  # (y^-1 alpha_m)^(1/p)
        return sum((_ym(K, Fr(-1, p) - Fr(1, p ** (i + 1))) for i in range(1, m + 1)), K.zero)

    rule0 = FamilyRule(
        "x - beta_m, beta_m = (y^-1 alpha_m)^(1/p)",
        member=lambda m: x - beta(m),
        gamma=lambda m: -(1 + Fr(1, p ** (m + 1))) / p,
        distance=lambda m: -(1 + Fr(1, p ** (m + 1))) / p,
        gamma_sup=Fr(-1, p), distance_sup=Fr(-1, p),
        provenance=f"{PAPER} family (y^-1 alpha_m)^(1/p), delta_0 = -1/p; {DERIVED} closed forms")

    def chi(m):
        """Minimal polynomial of s_m = sum_{i<=m} (y^-1 alpha)^(1/p^i) over K.

        With a^(1/p^k) = a - alpha_k one gets s_m = alpha_m*alpha - B_m where
        B_m = sum_{j<=m} y^(-1/p^j) alpha_j, and the conjugates of s_m are
        s_m + c*alpha_m for c in F_p.
        """
        a = _alpha(K, p, m)
        B = sum((_ym(K, Fr(-1, p ** j)) * _alpha(K, p, j) for j in range(1, m + 1)), K.zero)
        ap = a ** (p - 1)
        return x ** p - ap * x + (B ** p - ap * B - a ** p * yinv)

    rule1 = FamilyRule(
        "minimal polynomials of s_m = sum_{i<=m} (y^-1 alpha)^(1/p^i)",
        member=chi,
        gamma=lambda m: -Fr(p - 1, p) - Fr(p + 1, p ** (m + 2)),
        distance=lambda m: -Fr(p + 1, p ** (m + 2)),
        gamma_sup=-Fr(p - 1, p), distance_sup=Fr(0),
        provenance=f"{PAPER} family of partial sums, delta_1 = 0; {DERIVED} closed forms")

    phi1 = chi(1)
    gamma1 = rule1.gamma(1)
    mu = InductiveValuation.gauss_base(K).augment(rule0.member(1), rule0.gamma(1))
    mu = _limit_chain(F, mu, rule0, prec, phi1, gamma1, 1)
    mu = _limit_chain(F, mu, rule1, prec, F, INF, 1)
    return Instance(F, MLVChain(F, mu), RootValuation(F), p, prec)


# ---------------------------------------------------------------------------------
# expected values


def _exp_a1(p):
    return {
        "degrees": ([1, 2, 4], PAPER), "gammas": (["1/2", "5/4", "inf"], PAPER),
        "kinds": (["ordinary", "ordinary"], PAPER),
        "steps": ([(2, 1, 1), (2, 1, 1)], PAPER),
        "depth": (2, PAPER), "e": (4, PAPER), "f": (1, PAPER), "d": (1, PAPER),
        "lambdas": (["1/2", "1/4"], DERIVED),
        "delta_seq": (["1/2", "5/8"], PAPER), "delta": ("5/8", PAPER),
        "omega": ("2/3", PAPER), "multiset": ([("2/3", 3)], PAPER),
        "tame": (False, DERIVED),
    }


def _exp_a2(p):
    return {
        "degrees": ([1, 4], PAPER), "gammas": (["1/4", "inf"], PAPER),
        "kinds": (["ordinary"], PAPER), "steps": ([(4, 1, 1)], PAPER),
        "depth": (1, PAPER), "e": (4, PAPER), "f": (1, PAPER), "d": (1, PAPER),
        "lambdas": (["1/4"], PAPER),
        "delta_seq": (["1/4"], PAPER), "delta": ("1/4", PAPER),
        "omega": ("1/3", PAPER), "multiset": ([("1/3", 3)], PAPER),
        "tame": (False, DERIVED),
    }


def _exp_b(p):
    return {
        "degrees": ([1, p], PAPER), "gammas": (["0", "inf"], PAPER),
        "kinds": (["ordinary"], PAPER), "steps": ([(1, p, 1)], PAPER),
        "depth": (1, PAPER), "e": (1, PAPER), "f": (p, PAPER), "d": (1, PAPER),
        "lambdas": (["0"], DERIVED),
        "delta_seq": (["0"], PAPER), "delta": ("0", PAPER),
        "omega": ("1", PAPER), "multiset": ([("1", p - 1)], PAPER),
        "tame": (False, PAPER),
    }


def _s(v) -> str:
    return str(Fr(v))


def _exp_c(p):
    return {
        "degrees": ([1, p], DERIVED), "kinds": (["limit"], PAPER),
        "depth": (1, PAPER), "e": (1, PAPER), "f": (1, PAPER), "d": (p, PAPER),
        "delta": ("0", PAPER), "omega": ("0", PAPER),
        "delta_seq": (["0"], PAPER), "attained": ([False], PAPER),
        "multiset": ([("0", p - 1)], PAPER),
    }


def _exp_d1(p):
    return {
        "degrees": ([1, 2, 2 * p], PAPER), "kinds": (["ordinary", "limit"], PAPER),
        "gamma0": (_s(Fr(1, 2) - Fr(1, p)), DERIVED),
        "depth": (2, PAPER), "e": (2, PAPER), "f": (1, DERIVED), "d": (p, PAPER),
        "delta_seq": ([_s(Fr(1, 2) - Fr(1, p)), "1/2"], DERIVED),
        "attained": ([True, False], PAPER),
        "delta": ("1/2", PAPER), "omega": ("1/2", PAPER),
        "multiset": ([("1/2", p - 1), (_s(Fr(1, 2) - Fr(1, p)), p)], DERIVED),
    }


def _exp_d2(p):
    return {
        "degrees": ([1, p, 2 * p], PAPER), "kinds": (["limit", "ordinary"], PAPER),
        "gamma1": ("1/2", DERIVED),
        "depth": (2, PAPER), "e": (2, PAPER), "f": (1, DERIVED), "d": (p, PAPER),
        "delta_seq": (["0", "1/2"], DERIVED), "attained": ([False, True], PAPER),
        "delta": ("1/2", PAPER), "omega": ("1/2", PAPER),
        "multiset": ([("1/2", 1), ("0", 2 * p - 2)], DERIVED),
    }


def _exp_e(p):
    return {
        "degrees": ([1, p, p * p], PAPER), "kinds": (["limit", "limit"], PAPER),
        "gamma1": (_s(-Fr(p - 1, p) - Fr(p + 1, p ** 3)), DERIVED),
        "depth": (2, PAPER), "e": (1, PAPER), "f": (1, PAPER), "d": (p * p, PAPER),
        "delta_seq": ([_s(Fr(-1, p)), "0"], PAPER), "attained": ([False, False], PAPER),
        "delta": ("0", PAPER), "omega": ("0", PAPER),
        "multiset": ([("0", p - 1), (_s(Fr(-1, p)), p * p - p)], DERIVED),
    }


def _exp_tame4(p):
    return {
        "degrees": ([1, 4], DERIVED), "gammas": (["1/4", "inf"], DERIVED),
        "kinds": (["ordinary"], DERIVED), "steps": ([(4, 1, 1)], DERIVED),
        "depth": (1, DERIVED), "e": (4, DERIVED), "f": (1, DERIVED), "d": (1, DERIVED),
        "lambdas": (["1/4"], DERIVED), "delta_seq": (["1/4"], DERIVED),
        "delta": ("1/4", DERIVED), "omega": ("1/4", DERIVED),
        "multiset": ([("1/4", 3)], DERIVED), "t": ([3], DERIVED),
        "tame": (True, DERIVED),
    }


def _yp(k: int) -> str:
    return "y" if k == 1 else f"y^{k}"


def _puiseux(p, prec):
    return f"puiseux y p={p} prec={prec} coeff=F{p}"


REGISTRY: Dict[str, ExampleRecord] = {r.id: r for r in [
    ExampleRecord("A1", "(x^2-2)^2+4x over Q with ord_2: depth 2, delta < omega",
                  lambda p, k: "Qp p=2", lambda p: "(x^2-2)^2+4*x", _a1, _exp_a1, fixed_p=2),
    ExampleRecord("A2", "x^4-2x-2 over Q with ord_2: depth 1, delta < omega",
                  lambda p, k: "Qp p=2", lambda p: "x^4-2*x-2", _a2, _exp_a2, fixed_p=2),
    ExampleRecord("B", "x^p - y^2 x - t over F_p(t)((y)): purely inseparable residue extension",
                  lambda p, k: f"laurent y coeff=ratfunc(t,F{p})", lambda p: f"x^{p}-y^2*x-t",
                  _b, _exp_b),
    ExampleRecord("C", "Artin-Schreier x^p - x - y^-1: one limit step, defect p",
                  _puiseux, lambda p: f"x^{p}-x-y^-1", _c, _exp_c, defect=True),
    ExampleRecord("D1", "theta = y^(1/2) alpha: ordinary then limit step",
                  _puiseux,
                  lambda p: f"(x^{p}-{_yp((p - 1) // 2)}*x)^2-{_yp(p - 2)}", _d1, _exp_d1, defect=True),
    ExampleRecord("D2", "eta = alpha + y^(1/2): limit then ordinary step",
                  _puiseux,
                  lambda p: f"(x^{p}-x-y^-1)^2-y*({_yp((p - 1) // 2)}-1)^2", _d2, _exp_d2, defect=True),
    ExampleRecord("E", "two stacked limit steps, defect p^2",
                  _puiseux,
                  lambda p: f"(x^{p}-x)^{p}-y^{1 - p}*(x^{p}-x)-y^{-1 - p}", _e, _exp_e, defect=True),
    ExampleRecord("TAME4", "x^4-5 over Q with ord_5: a tame instance (added example)",
                  lambda p, k: "Qp p=5", lambda p: "x^4-5", _tame4, _exp_tame4, fixed_p=5),
]}


def get(example_id: str) -> ExampleRecord:
    try:
        return REGISTRY[example_id.upper()]
    except KeyError:
        raise KeyError(f"unknown example {example_id!r}; valid ids: {', '.join(REGISTRY)}") from None
