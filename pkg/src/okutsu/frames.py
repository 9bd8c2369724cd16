"""Okutsu frames and sequences, the ramification polygon, and tame-case checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .chains import Check, MLVChain, Report, global_invariants, secondary_slopes
from .errors import InseparableError, NotCertified
from .newton import NewtonPolygon
from .poly import Poly, format_poly, is_separable
from .residue import p_deriv
from .valuation import FamilyApprox, FamilyRule, InductiveValuation
from .values import INF, Value, fmt_value
from .vf import RootValuation


@dataclass(frozen=True)
class FrameLevel:
    polys: Tuple[Poly, ...]
    rule: Optional[FamilyRule] = None

    @property
    def degree(self) -> int:
        return self.polys[0].degree

    @property
    def is_singleton(self) -> bool:
        return len(self.polys) == 1


@dataclass(frozen=True)
class OkutsuFrame:
    F: Poly
    levels: Tuple[FrameLevel, ...]

    @property
    def degrees(self) -> List[int]:
        return [lv.degree for lv in self.levels]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def replace_level(self, i: int, polys: Sequence[Poly]) -> "OkutsuFrame":
        levels = list(self.levels)
        levels[i] = FrameLevel(tuple(polys))
        return OkutsuFrame(self.F, tuple(levels))

    def to_json(self) -> list:
        return [[format_poly(p) for p in lv.polys] for lv in self.levels]


@dataclass(frozen=True)
class SequenceEntry:
    phi: Poly
    delta: Value


@dataclass(frozen=True)
class SequenceLevel:
    entries: Tuple[SequenceEntry, ...]
    rule: Optional[FamilyRule] = None

    @property
    def degree(self) -> int:
        return self.entries[0].phi.degree


@dataclass(frozen=True)
class OkutsuSequence:
    F: Poly
    levels: Tuple[SequenceLevel, ...]

    def to_json(self) -> list:
        return [[[format_poly(e.phi), fmt_value(e.delta)] for e in lv.entries]
                for lv in self.levels]


# ---------------------------------------------------------------------------------
# translations


def frame_from_chain(chain: MLVChain) -> OkutsuFrame:
    if chain.F.degree < 2:
        raise ValueError("Okutsu frames are defined for deg F > 1")
    steps = chain.steps
    levels = []
    for i in range(chain.depth):
        nxt = steps[i + 1]
        if nxt.kind == "limit":
            fam = nxt.family
            levels.append(FrameLevel(tuple(chi for chi, _ in fam.members), fam.rule))
        else:
            levels.append(FrameLevel((steps[i].phi,)))
    levels.append(FrameLevel((chain.F,)))
    return OkutsuFrame(chain.F, tuple(levels))


def chain_from_frame(frame: OkutsuFrame, vF: Optional[RootValuation] = None,
                     min_run: int = 2) -> MLVChain:
    """The MLV chain whose valuations are the truncations of v_F by the frame's keys."""
    vF = RootValuation(frame.F) if vF is None else vF
    K = frame.F.field
    mu = InductiveValuation.gauss_base(K)
    first = frame.levels[0].polys[0]
    mu = mu.augment(first, vF(first))
    for ell in range(1, len(frame.levels)):
        prev, cur = frame.levels[ell - 1], frame.levels[ell]
        phi = cur.polys[0]
        gamma = vF(phi)
        if prev.is_singleton:
            mu = mu.augment(phi, gamma)
        else:
            members = tuple((chi, vF(chi)) for chi in prev.polys)
            fam = FamilyApprox(mu, members, limit_degree=cur.degree,
                               min_run=min_run, rule=prev.rule)
            mu = mu.augment_limit(fam, phi, gamma)
    return MLVChain(frame.F, mu)


def sequence_from_frame(frame: OkutsuFrame, vF: Optional[RootValuation] = None) -> OkutsuSequence:
    vF = RootValuation(frame.F) if vF is None else vF
    levels = []
    for lv in frame.levels:
        levels.append(SequenceLevel(tuple(SequenceEntry(p, vF.distance(p)) for p in lv.polys),
                                    lv.rule))
    return OkutsuSequence(frame.F, tuple(levels))


def frame_from_sequence(seq: OkutsuSequence) -> OkutsuFrame:
    return OkutsuFrame(seq.F, tuple(FrameLevel(tuple(e.phi for e in lv.entries), lv.rule)
                                    for lv in seq.levels))


# ---------------------------------------------------------------------------------
# sampling verifiers


def random_monic(K, degree: int, rng: random.Random, height: int = 2) -> Poly:
    coeffs = [K.random(rng) if K.kind != "qp" else K.random(rng, height=height)
              for _ in range(degree)]
    return Poly(K, coeffs + [K.one])


def _shape_checks(rep: Report, degrees: List[int], last: Poly, F: Poly):
    ok = degrees[0] == 1 and all(a < b for a, b in zip(degrees, degrees[1:]))
    rep.add("degrees 1=m_0<...<m_r", ok, None if ok else str(degrees))
    rep.add("last level is {F}", last == F)
    rep.add("deg F > 1", F.degree > 1)


def verify_frame(frame: OkutsuFrame, vF: Optional[RootValuation] = None, samples: int = 200,
                 height: int = 4, seed: int = 0, extra: Sequence[Poly] = (),
                 max_witnesses: int = 5) -> Report:
    vF = RootValuation(frame.F) if vF is None else vF
    rep = Report()
    levels = frame.levels
    rep.add("common degree within each level",
            all(len({p.degree for p in lv.polys}) == 1 for lv in levels))
    rep.add("members are monic", all(p.is_monic() for lv in levels for p in lv.polys))
    _shape_checks(rep, frame.degrees, levels[-1].polys[0], frame.F)
    weights = [[vF.weight(p) for p in lv.polys] for lv in levels]

    bad = [i for i, ws in enumerate(weights) if any(a >= b for a, b in zip(ws, ws[1:]))]
    rep.add("OF1/OF2 family weights strictly increase", not bad,
            None if not bad else f"levels {bad}")
    bad = [i for i in range(len(levels) - 1) if not max(weights[i]) < min(weights[i + 1])]
    rep.add("OF3 weights increase across levels", not bad,
            None if not bad else f"levels {bad}")

    rng = random.Random(seed)
    witnesses = []
    K = frame.F.field
    tested = 0
    for ell in range(len(levels) - 1):
        bound = levels[ell + 1].degree
        best = max(weights[ell])
        cands = [g for g in extra if 1 <= g.degree < bound]
        per_level = max(1, samples // (len(levels) - 1))
        for _ in range(per_level):
            cands.append(random_monic(K, rng.randint(1, bound - 1), rng, height))
        for g in cands:
            tested += 1
            w = vF.weight(g)
            if w > best:
                witnesses.append(f"level {ell}: g = {format_poly(g)} has w = {fmt_value(w)} "
                                 f"> {fmt_value(best)}")
    rep.add(f"OF0 sampled ({tested} monic g, height {height}, seed {seed})", not witnesses,
            "; ".join(witnesses[:max_witnesses]) or None)
    return rep


def verify_sequence(seq: OkutsuSequence, vF: Optional[RootValuation] = None, samples: int = 200,
                    height: int = 4, seed: int = 0, extra: Sequence[Poly] = ()) -> Report:
    vF = RootValuation(seq.F) if vF is None else vF
    rep = Report()
    lv = seq.levels
    _shape_checks(rep, [l.degree for l in lv], lv[-1].entries[0].phi, seq.F)
    bad = [format_poly(e.phi) for l in lv for e in l.entries if vF.distance(e.phi) != e.delta]
    rep.add("entry values are distances d(phi)", not bad, ", ".join(bad) or None)
    deltas = [[e.delta for e in l.entries] for l in lv]
    bad = [i for i, ds in enumerate(deltas) if any(a >= b for a, b in zip(ds, ds[1:]))]
    rep.add("OS1/OS2 family distances strictly increase", not bad, str(bad) if bad else None)
    bad = [i for i in range(len(lv) - 1) if not max(deltas[i]) < min(deltas[i + 1])]
    rep.add("OS3 distances increase across levels", not bad, str(bad) if bad else None)
    rng = random.Random(seed)
    K = seq.F.field
    witnesses = []
    tested = 0
    for ell in range(len(lv) - 1):
        bound = lv[ell + 1].degree
        best = max(deltas[ell])
        cands = [g for g in extra if 1 <= g.degree < bound]
        for _ in range(max(1, samples // (len(lv) - 1))):
            cands.append(random_monic(K, rng.randint(1, bound - 1), rng, height))
        for g in cands:
            tested += 1
            d = vF.distance(g)
            if d > best:
                witnesses.append(f"level {ell}: a root of {format_poly(g)} at distance {fmt_value(d)}")
    rep.add(f"OS0 sampled ({tested} candidates, height {height}, seed {seed})", not witnesses,
            "; ".join(witnesses[:5]) or None)
    return rep


# ---------------------------------------------------------------------------------
# delta and omega


@dataclass
class LevelDelta:
    index: int
    value: Optional[Value]  # attained maximum, or the supremum when known
    attained: bool
    prefix: List[Value]

    def to_json(self):
        return {"index": self.index,
                "value": None if self.value is None else fmt_value(self.value),
                "attained": self.attained,
                "prefix": [fmt_value(v) for v in self.prefix]}


def main_invariant(frame: OkutsuFrame, vF: Optional[RootValuation] = None):
    """(delta, [LevelDelta for levels 0..r-1]).

    A family level's distances strictly increase along the stored prefix, so
    the supremum is not attained; its value comes from the family's closed-form
    rule when one is attached, and is None otherwise.
    """
    vF = RootValuation(frame.F) if vF is None else vF
    out = []
    for i, lv in enumerate(frame.levels[:-1]):
        ds = [vF.distance(p) for p in lv.polys]
        if lv.is_singleton:
            out.append(LevelDelta(i, ds[0], True, ds))
        else:
            sup = lv.rule.distance_sup if lv.rule is not None else None
            out.append(LevelDelta(i, sup, False, ds))
    delta = out[-1].value if out else None
    return delta, out


@dataclass
class RamPolygonReport:
    polygon: NewtonPolygon
    multiset: List[Tuple[Value, int]]
    omega: Value
    derivative_value: Value

    def checks(self, n: int) -> Report:
        rep = Report()
        rep.add("multiplicities sum to n-1", sum(k for _, k in self.multiset) == n - 1)
        total = sum(v * k for v, k in self.multiset)
        rep.add("sum of value*mult equals v_F(F')", total == self.derivative_value,
                f"{fmt_value(total)} vs {fmt_value(self.derivative_value)}")
        rep.add("omega is the largest value", self.omega == max(v for v, _ in self.multiset))
        return rep

    def to_json(self) -> dict:
        return {"polygon": self.polygon.to_json(),
                "multiset": [[fmt_value(v), k] for v, k in self.multiset],
                "omega": fmt_value(self.omega)}


def ramification_polygon(vF: RootValuation, F: Optional[Poly] = None) -> RamPolygonReport:
    """Polygon of R_F(x) = theta^-n F(theta x + theta), divided by x."""
    F = vF.F if F is None else F
    n = F.degree
    if n < 2:
        raise ValueError("the ramification polygon needs deg F >= 2")
    if not is_separable(F):
        raise InseparableError("F is inseparable; replace it by sep_approx(F, rho) first")
    vx = vF(Poly.x(F.field))
    pts = []
    for i in range(1, n + 1):
        v = vF(F.hasse(i))
        pts.append((i - 1, v + (i - n) * vx if v is not INF else INF))
    poly = NewtonPolygon(pts)
    ms = [(incl + vx, k) for incl, k in poly.inclinations()]
    return RamPolygonReport(poly, ms, max(v for v, _ in ms), vF(F.hasse(1)))


def krasner_constant(vF: RootValuation) -> Value:
    return ramification_polygon(vF).omega


def wd_equivalence_check(vF: RootValuation, f: Poly, g: Poly) -> dict:
    df, dg = vF.distance(f), vF.distance(g)
    wf, wg = vF.weight(f), vF.weight(g)
    consistent = (df <= dg) == (wf <= wg) and (dg <= df) == (wg <= wf)
    return {"d": (df, dg), "w": (wf, wg), "consistent": consistent}


# ---------------------------------------------------------------------------------
# tameness


def residue_extension_separable(chain: MLVChain) -> Optional[bool]:
    mu = chain.valuation
    res = chain.F.field.residue_field
    if res.size is not None:
        return True  # finite residue fields are perfect
    if mu.ordinary_prefix < len(mu.steps):
        return None
    for i in range(chain.depth):
        psi = mu.residual_of_next(i)
        kap = mu.residue_field_at(i)
        if len(psi) > 2 and not p_deriv(kap, psi):
            return False
    return True


def is_tame(chain: MLVChain):
    """(tame?, reasons)."""
    e, f, d, _ = global_invariants(chain)
    K = chain.F.field
    p = K.residue_field.char
    reasons = []
    if d != 1:
        reasons.append(f"defect d = {d}")
    if e % p == 0:
        reasons.append(f"residue characteristic {p} divides e = {e}")
    sep = residue_extension_separable(chain)
    if sep is False:
        reasons.append("residue extension is inseparable")
    elif sep is None:
        reasons.append("residue extension separability not certified")
    if not is_separable(chain.F):
        reasons.append("F is inseparable")
    return not reasons, reasons


NON_TAME_NOTE = ("not applicable: the instance is not tame, and without tameness "
                 "delta = omega can fail (Example A2 is a counterexample)")


def tame_checks(chain: MLVChain, frame: Optional[OkutsuFrame] = None,
                vF: Optional[RootValuation] = None, force: bool = False) -> dict:
    tame, reasons = is_tame(chain)
    out = {"tame": tame, "reasons": reasons, "forced": bool(force and not tame)}
    if not tame and not force:
        rep = Report()
        rep.checks.append(Check("tame-case identities", "n/a", NON_TAME_NOTE))
        out["report"] = rep
        return out
    vF = RootValuation(chain.F) if vF is None else vF
    frame = frame_from_chain(chain) if frame is None else frame
    delta, deltas = main_invariant(frame, vF)
    ram = ramification_polygon(vF)
    rep = Report()
    if not tame:
        rep.checks.append(Check("tameness", "fail", NON_TAME_NOTE))
    rep.add("delta = omega", delta == ram.omega,
            f"delta = {fmt_value(delta)}, omega = {fmt_value(ram.omega)}")
    n = chain.F.degree
    m = chain.degrees
    expected = {}
    for i in range(chain.depth):
        t = n // m[i] - n // m[i + 1]
        if t:
            expected[deltas[i].value] = expected.get(deltas[i].value, 0) + t
    actual = dict(ram.multiset)
    rep.add("ramification multiset = {delta_i ^ t_i}", actual == expected,
            f"expected {_fmt_ms(expected)}, got {_fmt_ms(actual)}")
    lams = secondary_slopes(chain)
    bad = []
    for i in range(1, chain.depth):
        lhs = deltas[i].value - deltas[i - 1].value
        rhs = m[i] * (vF.weight(chain.keys[i]) - vF.weight(chain.keys[i - 1]))
        if lhs != rhs:
            bad.append(f"i={i}: {fmt_value(lhs)} vs {fmt_value(rhs)}")
    rep.add("d(phi_i)-d(phi_{i-1}) = m_i(w(phi_i)-w(phi_{i-1}))",
            "n/a" if chain.depth < 2 else not bad, "; ".join(bad) or None)
    bad = []
    for i in range(chain.depth):
        total = sum(lams[: i + 1])
        if deltas[i].value != total:
            bad.append(f"i={i}: delta_i = {fmt_value(deltas[i].value)}, sum = {fmt_value(total)}")
    rep.add("delta_i = lambda_0+...+lambda_i", not bad, "; ".join(bad) or None)
    out.update(report=rep, delta=delta, omega=ram.omega,
               t=[n // m[i] - n // m[i + 1] for i in range(chain.depth)],
               multiset=ram.multiset)
    return out


def _fmt_ms(ms: dict) -> str:
    return "{" + ", ".join(f"{fmt_value(v)} x{k}" for v, k in sorted(ms.items())) + "}"


def conjecture_probe(chain: MLVChain, frame: Optional[OkutsuFrame] = None,
                     vF: Optional[RootValuation] = None) -> dict:
    """Compare delta and omega on one instance with the conjecture's hypotheses."""
    vF = RootValuation(chain.F) if vF is None else vF
    e, _, _, _ = global_invariants(chain)
    p = chain.F.field.residue_field.char
    hyp = []
    if not is_separable(chain.F):
        hyp.append("F inseparable")
    sep = residue_extension_separable(chain)
    if sep is not True:
        hyp.append("residue extension not known to be separable")
    if e % p == 0:
        hyp.append(f"residue characteristic divides e = {e}")
    frame = frame_from_chain(chain) if frame is None else frame
    delta, _ = main_invariant(frame, vF)
    omega = ramification_polygon(vF).omega if is_separable(chain.F) else None
    if delta is None or omega is None:
        status = "unknown"
    else:
        status = "consistent" if delta == omega else "delta < omega"
    return {"hypotheses_hold": not hyp, "failed_hypotheses": hyp,
            "delta": delta, "omega": omega, "status": status}
