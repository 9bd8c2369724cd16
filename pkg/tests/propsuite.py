"""Seeded property checks shared by test_properties and the acceptance suite.

Each check runs once per session (memoised) and returns a ``Result`` with the
number of cases, the violations found and the time spent.  Sizes are the
acceptance sizes times OKUTSU_SAMPLE_SCALE.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction as Fr
from functools import lru_cache
from typing import List

from okutsu.basefields import QpField
from okutsu.chains import compute_chain, slopes_and_secondary, step_invariants
from okutsu.errors import BudgetExhausted, OkutsuError, ReducibleError
from okutsu.frames import (chain_from_frame, frame_from_chain, frame_from_sequence,
                           main_invariant, sequence_from_frame, wd_equivalence_check)
from okutsu.newton import newton_polygon
from okutsu.parse import parse_poly
from okutsu.poly import Poly, format_poly, is_separable, sep_approx
from okutsu.values import INF
from okutsu.vf import RootValuation

from conftest import instance, random_poly, samples

EXAMPLES = ("A1", "A2", "B", "C", "D1", "D2", "E", "TAME4")


@dataclass
class Result:
    name: str
    cases: int = 0
    violations: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, msg: str):
        self.violations.append(msg)

    @property
    def ok(self) -> bool:
        return not self.violations and self.cases > 0

    def summary(self) -> str:
        head = f"{self.name}: {self.cases} cases, {len(self.violations)} violations, {self.seconds:.1f}s"
        if self.violations:
            head += " (" + "; ".join(self.violations[:3]) + ")"
        return head


def _timed(fn):
    @lru_cache(maxsize=None)
    def wrapper():
        t0 = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    return wrapper


# ---------------------------------------------------------------------------------


@_timed
def valuation_axioms() -> Result:
    """mu(gh) = mu(g) + mu(h) and mu(g+h) >= min for every mu_j of every chain."""
    res = Result("valuation axioms")
    n_each = samples(500)
    for eid in EXAMPLES:
        inst = instance(eid)
        K, n = inst.F.field, inst.F.degree
        for j in range(len(inst.chain.steps)):
            mu = inst.chain.mu(j)
            rng = random.Random(1000 * j + len(eid))
            for _ in range(n_each):
                g = random_poly(K, rng, rng.randint(0, n - 1))
                h = random_poly(K, rng, rng.randint(0, n - 1))
                a, b = mu(g), mu(h)
                res.cases += 1
                if mu(g * h) != a + b:
                    res.fail(f"{eid} mu_{j}: mu(gh) != mu(g)+mu(h) for g={format_poly(g)}")
                if mu(g + h) < min(a, b):
                    res.fail(f"{eid} mu_{j}: ultrametric fails for g={format_poly(g)}")
    return res


def _monic_factor(K, rng, deg):
    return random_poly(K, rng, deg, monic=True)


@_timed
def weight_distance_product() -> Result:
    """w(f) <= d(f), d(f1 f2) = max d(fi), w(f1 f2) <= max w(fi)."""
    res = Result("w <= d and product lemma")
    total = samples(300)
    pool = ("A1", "A2", "TAME4", "B", "D1")
    for k in range(total):
        inst = instance(pool[k % len(pool)])
        vF, K = inst.vF, inst.F.field
        rng = random.Random(k)
        f1 = _monic_factor(K, rng, rng.randint(1, 3))
        f2 = _monic_factor(K, rng, rng.randint(1, 3))
        f = f1 * f2
        res.cases += 1
        for h in (f1, f2, f):
            if not vF.weight(h) <= vF.distance(h):
                res.fail(f"w > d for {format_poly(h)}")
        if vF.distance(f) != max(vF.distance(f1), vF.distance(f2)):
            res.fail(f"d(f1 f2) != max for {format_poly(f1)}, {format_poly(f2)}")
        if not vF.weight(f) <= max(vF.weight(f1), vF.weight(f2)):
            res.fail(f"w(f1 f2) > max for {format_poly(f1)}, {format_poly(f2)}")
    return res


def _irreducible(f) -> bool:
    """Certified irreducible: the Montes loop closes on f."""
    try:
        compute_chain(f)
    except (ReducibleError, BudgetExhausted):
        # an exhausted budget means a p-adic root was being approximated
        return False
    return True


@_timed
def ftal_equivalence() -> Result:
    """d(f) <= d(g) iff w(f) <= w(g) for irreducible separable f, g."""
    res = Result("d/w order equivalence")
    bases = [("Qp p=2", "(x^2-2)^2+4*x"), ("Qp p=3", "x^3+3*x+3")]
    per_base = samples(200) // len(bases) or 1
    for b, (field_text, F_text) in enumerate(bases):
        K = QpField(int(field_text.split("=")[1]))
        vF = RootValuation(parse_poly(F_text, K))
        rng = random.Random(77 + b)
        pairs = 0
        while pairs < per_base:
            f, g = (Poly(K, [Fr(rng.randint(-12, 12)) * K.monomial(rng.randint(0, 2))
                             for _ in range(d)] + [K.one])
                    for d in (rng.randint(2, 3), rng.randint(2, 3)))
            if not (_irreducible(f) and _irreducible(g)):
                continue
            pairs += 1
            res.cases += 1
            r = wd_equivalence_check(vF, f, g)
            # oracle: both orders straight from the Taylor-polygon distance multisets
            df = vF.distance_multiset(f)[0][0]
            dg = vF.distance_multiset(g)[0][0]
            if r["d"] != (df, dg) or not r["consistent"]:
                res.fail(f"{format_poly(f)} vs {format_poly(g)}: d={r['d']}, w={r['w']}")
    return res


def _random_irreducible_chains(count):
    rng = random.Random(5)
    out = []
    while len(out) < count:
        p = rng.choice([2, 3])
        K = QpField(p)
        n = rng.choice([2, 3, 4, 6])
        x = Poly.x(K)
        # perturbations of (x^a - p)^b keep the Montes loop interesting
        a = rng.choice([d for d in (1, 2, 3) if n % d == 0])
        base = (x ** a - p) ** (n // a)
        noise = Poly(K, [Fr(rng.randint(-3, 3)) * p ** rng.randint(1, 4) for _ in range(n)])
        F = base + noise
        try:
            out.append(compute_chain(F))
        except OkutsuError:
            continue
    return out


@_timed
def efd_and_lambdas() -> Result:
    """m_{i+1} = e_i f_i d_i m_i, the divisibility ladder and the lambda identity."""
    res = Result("efd ladder and lambda identity")
    chains = [instance(e).chain for e in EXAMPLES] + _random_irreducible_chains(samples(40))
    for ch in chains:
        res.cases += 1
        m = ch.degrees
        for i in range(ch.depth):
            e, f, d = step_invariants(ch, i)
            if m[i + 1] != e * f * d * m[i] or m[i + 1] % m[i]:
                res.fail(f"{format_poly(ch.F)} level {i}: {m} with {(e, f, d)}")
        if m[-1] != ch.F.degree:
            res.fail(f"{format_poly(ch.F)}: last degree {m[-1]}")
        pairs, ok = slopes_and_secondary(ch)
        if not ok:
            res.fail(f"{format_poly(ch.F)}: lambda identity")
        for i, (gamma, _) in enumerate(pairs):
            if gamma / m[i] != sum(lam / m[k] for k, (_, lam) in enumerate(pairs[: i + 1])):
                res.fail(f"{format_poly(ch.F)}: gamma_{i}/m_{i}")
    return res


@_timed
def round_trips() -> Result:
    """frame -> chain -> frame and frame -> sequence -> frame keep degrees, gamma, delta."""
    res = Result("frame/chain/sequence round trips")
    for eid in EXAMPLES:
        inst = instance(eid)
        ch, vF = inst.chain, inst.vF
        frame = frame_from_chain(ch)
        back = chain_from_frame(frame, vF)
        seq = sequence_from_frame(frame, vF)
        again = frame_from_sequence(seq)
        res.cases += 1
        if (back.degrees, back.gammas) != (ch.degrees, ch.gammas):
            res.fail(f"{eid}: chain_from_frame changed degrees/gamma")
        if [lv.polys for lv in again.levels] != [lv.polys for lv in frame.levels]:
            res.fail(f"{eid}: frame_from_sequence changed the frame")
        d0 = [lv.value for lv in main_invariant(frame, vF)[1]]
        d1 = [lv.value for lv in main_invariant(frame_from_chain(back), vF)[1]]
        d2 = [lv.value for lv in main_invariant(again, vF)[1]]
        if not d0 == d1 == d2:
            res.fail(f"{eid}: delta sequence changed ({d0}, {d1}, {d2})")
    return res


def _np(f):
    K = f.field
    return newton_polygon([(i, K.valuation(c)) for i, c in enumerate(f.coeffs)]).vertices


@_timed
def sep_approx_corpus() -> Result:
    """sep_approx keeps degree, polygon, weight and distance (char 3, theta from B)."""
    res = Result("sep_approx on a char-3 corpus")
    inst = instance("B")
    K, vF = inst.F.field, inst.vF
    rng = random.Random(3)
    corpus = ["t", "t*y", "y", "t+1", "t*y^2", "y^-1", "t^2*y^-2", "(t^2+1)*y^3", "t*y^-3"]
    while len(corpus) < samples(30):
        c = rng.choice(["t", "t+1", "t^2+2", "2*t^2+t+1", "1"])
        corpus.append(f"({c})*y^{rng.randint(-4, 4)}")
    for a in corpus:
        for deg in (3, 9):
            f = parse_poly(f"x^{deg}-({a})", K)
            if not _irreducible(f):
                continue
            for rho in (vF.distance(f), vF.distance(f) + 1, Fr(5, 2)):
                if rho is INF:
                    continue
                res.cases += 1
                g = sep_approx(f, rho, vF)
                if not is_separable(g) or g.degree != f.degree:
                    res.fail(f"{format_poly(f)}: output {format_poly(g)} not separable of degree {deg}")
                if _np(g) != _np(f):
                    res.fail(f"{format_poly(f)}: polygon changed ({format_poly(g)})")
                if vF.weight(g) != vF.weight(f) or vF.distance(g) != vF.distance(f):
                    res.fail(f"{format_poly(f)}: w/d changed ({format_poly(g)})")
    return res


@_timed
def truncation_is_mu() -> Result:
    """v_F truncated at phi_l equals mu_l (200 samples per level)."""
    res = Result("truncation equals mu_l")
    n_each = samples(200)
    for eid in EXAMPLES:
        inst = instance(eid)
        K, n = inst.F.field, inst.F.degree
        for ell in range(inst.chain.depth):
            mu, phi = inst.chain.mu(ell), inst.chain.keys[ell]
            rng = random.Random(ell * 31 + len(eid))
            for _ in range(n_each):
                g = random_poly(K, rng, rng.randint(0, n))
                res.cases += 1
                if inst.vF.truncation(phi, g) != mu(g):
                    res.fail(f"{eid} level {ell}: g = {format_poly(g)}")
    return res


@_timed
def stable_scan_agreement() -> Result:
    """The forward scan of stable_value agrees with the full member sequence."""
    res = Result("stable-value scan agreement")
    n_each = samples(40)
    for eid in EXAMPLES:
        inst = instance(eid)
        K = inst.F.field
        for j, st in enumerate(inst.chain.steps):
            fam = st.family
            if fam is None:
                continue
            rng = random.Random(j + 17 * len(eid))
            for _ in range(n_each):
                a = random_poly(K, rng, rng.randint(0, fam.limit_degree - 1))
                vals = fam.values(a)
                res.cases += 1
                if any(u > v for u, v in zip(vals, vals[1:])):
                    res.fail(f"{eid} step {j}: values decrease for {format_poly(a)}")
                first = next((i for i in range(len(vals) - 1) if vals[i] == vals[i + 1]), None)
                if first is None:
                    res.fail(f"{eid} step {j}: no stable value for {format_poly(a)}")
                    continue
                if any(v != vals[first] for v in vals[first:]):
                    res.fail(f"{eid} step {j}: value moves after the first equality")
                if fam.stable_value(a) != (vals[-1], first):
                    res.fail(f"{eid} step {j}: scan gives {fam.stable_value(a)}")
    return res


ALL_CHECKS = (valuation_axioms, weight_distance_product, ftal_equivalence, efd_and_lambdas,
              round_trips, sep_approx_corpus, truncation_is_mu, stable_scan_agreement)
