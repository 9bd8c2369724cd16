"""MacLane-Vaquié chains of v_F: construction, verification and invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import BudgetExhausted, NotCertified, OkutsuError, ReducibleError
from .newton import NewtonPolygon
from .poly import Poly, format_poly, phi_expansion
from .residue import p_fmt
from .valuation import InductiveValuation
from .values import INF, Value, fmt_value
from .vf import RootValuation


@dataclass(frozen=True)
class LevelRecord:
    index: int
    m: int
    phi: Poly
    gamma: Value
    kind: Optional[str]  # kind of the step leaving this level; None at the top
    e: Optional[int]
    f: Optional[int]
    d: Optional[int]
    lam: Optional[Value]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "phi": format_poly(self.phi),
            "gamma": fmt_value(self.gamma),
            "lambda": None if self.lam is None else fmt_value(self.lam),
            "kind": self.kind,
            "e": self.e, "f": self.f, "d": self.d,
        }


@dataclass
class MLVChain:
    """An MLV chain v -> mu_0 -> ... -> mu_r = v_F, held as its terminal valuation."""

    F: Poly
    valuation: InductiveValuation
    refinements: int = 0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.valuation.is_terminal:
            raise ValueError("an MLV chain ends with an infinite value")

    @property
    def steps(self):
        return self.valuation.steps

    @property
    def depth(self) -> int:
        return len(self.steps) - 1

    @property
    def degrees(self) -> List[int]:
        return [st.phi.degree for st in self.steps]

    @property
    def gammas(self) -> List[Value]:
        return [st.gamma for st in self.steps]

    @property
    def keys(self) -> List[Poly]:
        return [st.phi for st in self.steps]

    def kinds(self) -> List[str]:
        """Kinds of the steps mu_i -> mu_{i+1}, i < r."""
        return [st.kind for st in self.steps[1:]]

    def mu(self, i: int) -> InductiveValuation:
        return self.valuation.truncate(i)

    def levels(self) -> List[LevelRecord]:
        out = []
        lams = secondary_slopes(self)
        for i, st in enumerate(self.steps):
            if i < self.depth:
                e, f, d = step_invariants(self, i)
                kind = self.steps[i + 1].kind
                out.append(LevelRecord(i, st.phi.degree, st.phi, st.gamma, kind, e, f, d, lams[i]))
            else:
                out.append(LevelRecord(i, st.phi.degree, st.phi, st.gamma, None, None, None, None, None))
        return out

    def to_json(self) -> dict:
        return {"F": format_poly(self.F),
                "field": self.F.field.descriptor(),
                "steps": [st.to_json() for st in self.steps]}

    def with_gamma(self, i: int, gamma: Value) -> "MLVChain":
        """A copy with one level value replaced (for negative tests)."""
        from .valuation import AugStep
        steps = list(self.steps)
        st = steps[i]
        steps[i] = AugStep(st.kind, st.phi, gamma, st.family)
        return MLVChain(self.F, InductiveValuation(self.F.field, steps), self.refinements)


# ---------------------------------------------------------------------------------
# construction


def compute_chain(F: Poly, budget: int = 64) -> MLVChain:
    """Montes-style iteration producing the MLV chain of v_F.

    Raises ``ReducibleError`` with a witness when F splits, ``NotCertified``
    when a residual's irreducibility cannot be decided, and
    ``BudgetExhausted`` after ``budget`` same-degree refinements.
    """
    K = F.field
    if F.degree < 1 or not F.is_monic():
        raise ValueError("F must be monic of positive degree")
    mu_prev = InductiveValuation.gauss_base(K)
    phi = Poly.x(K)
    refinements = 0
    while True:
        if phi == F:
            return MLVChain(F, mu_prev._extend("ordinary", F, INF), refinements)
        expn = phi_expansion(F, phi)
        if not expn[0]:
            raise ReducibleError("F is reducible", f"{format_poly(phi)} divides F")
        if mu_prev.steps:
            pts = [(s, mu_prev.eval(a)) for s, a in enumerate(expn)]
        else:
            pts = [(s, K.valuation(a[0]) if a else INF) for s, a in enumerate(expn)]
        N = NewtonPolygon(pts)
        if not N.one_sided:
            incl = ", ".join(fmt_value(s.inclination) for s in N.sides)
            raise ReducibleError(
                "F is reducible",
                f"Newton polygon with respect to {format_poly(phi)} has several sides "
                f"(inclinations {incl})")
        gamma = N.sides[0].inclination
        mu = mu_prev._extend("ordinary", phi, gamma)
        j = len(mu.steps) - 1
        R = mu.residual_polynomial(F)
        status, S, k = R.factor_shape()
        if status == "no":
            raise ReducibleError(
                "F is reducible",
                f"residual polynomial {R} with respect to {format_poly(phi)} "
                f"is not a power of an irreducible")
        if status == "unknown":
            raise NotCertified(
                f"irreducibility of the residual polynomial {R} is not certified")
        e = mu.ram_index_at(j)
        f = len(S) - 1
        if k == 1:
            if e * f == 1:
                # F itself has the degree of phi: it replaces phi
                return MLVChain(F, mu_prev._extend("ordinary", F, INF), refinements)
            return MLVChain(F, mu._extend("ordinary", F, INF), refinements)
        new_phi = mu.key_from_residual(S)
        if e * f == 1:
            refinements += 1
            if refinements > budget:
                raise BudgetExhausted(
                    f"refinement budget {budget} exhausted at degree {phi.degree}: "
                    "possible defect or insufficient precision")
            phi = new_phi
            continue
        mu_prev = mu
        phi = new_phi


# ---------------------------------------------------------------------------------
# invariants


def _principal_side(mu: InductiveValuation, i: int, g: Poly):
    """Side of N_{mu_i, phi_i}(g) whose inclination is gamma_i."""
    N = mu.newton_polygon(i, g)
    return N.side_with_inclination(mu.steps[i].gamma)


def step_invariants(chain: MLVChain, i: int) -> Tuple[int, int, int]:
    """(e_i, f_i, d_i) for the step mu_i -> mu_{i+1}."""
    if not 0 <= i < chain.depth:
        raise IndexError(f"step index {i} out of range 0..{chain.depth - 1}")
    mu = chain.valuation
    nxt = mu.steps[i + 1]
    m_i, m_next = mu.steps[i].phi.degree, nxt.phi.degree
    e = mu.ram_index_at(i)
    if nxt.kind == "limit":
        return e, 1, m_next // m_i
    f = residual_degree(chain, i)
    return e, f, 1


def residual_degree(chain: MLVChain, i: int) -> int:
    """Degree of the residual polynomial of phi_{i+1} with respect to mu_i."""
    mu = chain.valuation
    phi_next = mu.steps[i + 1].phi
    if i < mu.ordinary_prefix:
        return mu.truncate(i).residual_polynomial(phi_next).degree
    # above a limit step: degree of the principal side over e_i
    side = _principal_side(mu.truncate(i), i, phi_next)
    return side.length // mu.ram_index_at(i)


def secondary_slopes(chain: MLVChain) -> List[Optional[Value]]:
    mu = chain.valuation
    out: List[Optional[Value]] = []
    for i, st in enumerate(mu.steps):
        if i == chain.depth:
            out.append(None)
        elif i == 0:
            out.append(st.gamma)
        else:
            out.append(st.gamma - mu.eval_at(i - 1, st.phi))
    return out


def slopes_and_secondary(chain: MLVChain):
    """([(gamma_i, lambda_i)], identity_holds) over the levels i < r."""
    lams = secondary_slopes(chain)
    pairs = [(chain.gammas[i], lams[i]) for i in range(chain.depth)]
    degs = chain.degrees
    ok = True
    for i in range(chain.depth):
        lhs = chain.gammas[i] / degs[i]
        rhs = sum(lams[j] / degs[j] for j in range(i + 1))
        ok = ok and lhs == rhs
    return pairs, ok


def global_invariants(chain: MLVChain) -> Tuple[int, int, int, int]:
    e = f = d = 1
    for i in range(chain.depth):
        ei, fi, di = step_invariants(chain, i)
        e, f, d = e * ei, f * fi, d * di
    return e, f, d, chain.depth


# ---------------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "unknown" | "n/a"
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    def add(self, name, ok, witness=None):
        if ok is None:
            status = "unknown"
        elif ok == "n/a":
            status = "n/a"
        else:
            status = "pass" if ok else "fail"
        self.checks.append(Check(name, status, witness))

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "n/a") for c in self.checks)

    def status(self, name) -> Optional[str]:
        for c in self.checks:
            if c.name == name:
                return c.status
        return None

    def failed(self) -> List[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> list:
        return [c.to_json() for c in self.checks]


def verify_chain(chain: MLVChain, F: Optional[Poly] = None, vF: Optional[RootValuation] = None) -> Report:
    """Check the MLV conditions against an independent evaluation of v_F."""
    F = chain.F if F is None else F
    vF = RootValuation(F) if vF is None else vF
    mu = chain.valuation
    rep = Report()
    degs = chain.degrees
    r = chain.depth

    shape_ok = degs[0] == 1 and all(a < b for a, b in zip(degs, degs[1:]))
    shape_ok = shape_ok and mu.steps[-1].phi == F and mu.steps[-1].gamma is INF
    rep.add("degrees 1=m_0<...<m_r=n and (phi_r, gamma_r) = (F, inf)", shape_ok,
            None if shape_ok else f"degrees {degs}")

    bad = []
    for i in range(r):
        st = mu.steps[i]
        actual = vF(st.phi)
        if actual != st.gamma:
            bad.append(f"level {i}: v_F({format_poly(st.phi)}) = {fmt_value(actual)} "
                       f"but gamma = {fmt_value(st.gamma)}")
    rep.add("v_F(phi_i)=gamma_i", not bad, "; ".join(bad) or None)

    bad = []
    for i in range(r):
        try:
            N = mu.newton_polygon(i, F)
        except Exception as exc:  # unstable coefficient at a limit level
            bad.append(f"level {i}: {exc}")
            continue
        if not (N.one_sided and N.sides[0].inclination == mu.steps[i].gamma):
            incl = ", ".join(fmt_value(s.inclination) for s in N.sides)
            bad.append(f"level {i}: inclinations {incl} vs gamma {fmt_value(mu.steps[i].gamma)}")
    rep.add("N_{mu_i,phi_i}(F) one-sided of slope gamma_i", not bad, "; ".join(bad) or None)

    rep.add("phi_0 monic of degree 1", mu.steps[0].phi.degree == 1 and mu.steps[0].phi.is_monic())
    for i in range(1, r + 1):
        st = mu.steps[i]
        prev = mu.truncate(i - 1)
        if st.kind == "ordinary":
            try:
                key = prev.is_key_polynomial(st.phi)
            except NotCertified:
                key = None
            except Exception as exc:
                key = False
                rep.add(f"step {i}: phi_{i} key for mu_{i - 1}", False, str(exc))
                continue
            mv = prev.eval(st.phi)
            rep.add(f"step {i}: phi_{i} key for mu_{i - 1}", key,
                    None if key else f"{format_poly(st.phi)}")
            rep.add(f"step {i}: gamma_{i} > mu_{i - 1}(phi_{i})", st.gamma > mv,
                    f"mu_{i - 1}(phi_{i}) = {fmt_value(mv)}")
        else:
            rep.checks.extend(_check_limit_step(prev, st, vF, i))

    efd_bad = []
    for i in range(r):
        e, f, d = step_invariants(chain, i)
        if degs[i + 1] != e * f * d * degs[i]:
            note = " (no residual: gamma_i does not fit the polygon)" if f == 0 else ""
            efd_bad.append(f"level {i}: {degs[i + 1]} != {e}*{f}*{d}*{degs[i]}{note}")
        if chain.steps[i + 1].kind == "limit" and (e, f) != (1, 1):
            efd_bad.append(f"level {i}: limit step with e={e}, f={f}")
    rep.add("m_{i+1}=e_i f_i d_i m_i", not efd_bad, "; ".join(efd_bad) or None)
    return rep


def _check_limit_step(prev: InductiveValuation, st, vF, i: int) -> List[Check]:
    fam = st.family
    out = []
    ok = fam is not None and fam.base.steps == prev.steps
    out.append(Check(f"step {i}: family starts at mu_{i - 1}", "pass" if ok else "fail"))
    if fam is None:
        return out
    bad = [f"{format_poly(chi)}: v_F = {fmt_value(vF(chi))} vs {fmt_value(g)}"
           for chi, g in fam.members if vF(chi) != g]
    out.append(Check(f"step {i}: family values are v_F(chi)", "fail" if bad else "pass",
                     "; ".join(bad) or None))
    try:
        bad = fam.is_nested()
        nest_ok, nest_w = not bad, ("members " + ", ".join(map(str, bad))) if bad else None
    except OkutsuError as exc:
        nest_ok, nest_w = False, str(exc)
    out.append(Check(f"step {i}: family nested, base(chi_(j+1) - chi_j) >= gamma_j",
                     "pass" if nest_ok else "fail", nest_w))
    vals = fam.values(st.phi)
    unstable = all(a < b for a, b in zip(vals, vals[1:])) and all(v < st.gamma for v in vals)
    out.append(Check(f"step {i}: phi_{i} is a limit key (unstable, below gamma_{i})",
                     "pass" if unstable else "fail",
                     "rho_j(phi) = " + ", ".join(fmt_value(v) for v in vals)))
    deg_ok = st.phi.degree > fam.degree and (fam.limit_degree in (None, st.phi.degree))
    out.append(Check(f"step {i}: limit degree {st.phi.degree} > family degree {fam.degree}",
                     "pass" if deg_ok else "fail"))
    return out
