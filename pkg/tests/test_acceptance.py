"""Acceptance criteria 1-7, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import os
import sys
import time
from fractions import Fraction as Fr

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

import propsuite  # noqa: E402
from conftest import ACCEPTANCE_LINES  # noqa: E402
from okutsu.chains import compute_chain, global_invariants, slopes_and_secondary, step_invariants, verify_chain  # noqa: E402
from okutsu.errors import ReducibleError, UnstableAtPrecision  # noqa: E402
from okutsu.frames import frame_from_chain, main_invariant, ramification_polygon, tame_checks  # noqa: E402
from okutsu.parse import parse_input, parse_poly  # noqa: E402
from okutsu.registry import REGISTRY  # noqa: E402
from okutsu.valuation import FamilyApprox  # noqa: E402
from okutsu.values import INF, fmt_value  # noqa: E402
from okutsu.vf import RootValuation  # noqa: E402


class Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.items = []
        self.t0 = time.perf_counter()

    def check(self, name, ok, got=None):
        self.items.append((name, bool(ok), got))

    def finish(self, seconds=None):
        seconds = time.perf_counter() - self.t0 if seconds is None else seconds
        self.check(f"runtime < {self.limit:g} s", seconds < self.limit, f"{seconds:.2f} s")
        failed = [(n, g) for n, ok, g in self.items if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {self.number} {status}: {self.title} ({len(self.items)} checks, {seconds:.2f} s)"
        if failed:
            line += " -- failed: " + "; ".join(f"{n} [got {g}]" for n, g in failed)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return not failed, line


def _delta_omega(F, chain, vF):
    delta, per = main_invariant(frame_from_chain(chain), vF)
    return delta, per, ramification_polygon(vF)


def criterion_1():
    c = Criterion(1, "A1 chain, distance and ramification polygon", 1.0)
    F = parse_input("Qp p=2; (x^2-2)^2+4*x").poly
    ch = compute_chain(F)
    vF = RootValuation(F)
    c.check("degrees (1,2,4)", ch.degrees == [1, 2, 4], ch.degrees)
    c.check("gamma (1/2,5/4,inf)", ch.gammas == [Fr(1, 2), Fr(5, 4), INF],
            [fmt_value(g) for g in ch.gammas])
    steps = [step_invariants(ch, i) for i in range(ch.depth)]
    c.check("step invariants (2,1,1),(2,1,1)", steps == [(2, 1, 1), (2, 1, 1)], steps)
    c.check("depth 2, e=4, f=1, d=1", global_invariants(ch) == (4, 1, 1, 2), global_invariants(ch))
    d = vF.distance(parse_poly("x^2-2", F.field))
    c.check("distance(x^2-2) = 5/8", d == Fr(5, 8), d)
    ram = ramification_polygon(vF)
    sides = ram.polygon.sides
    c.check("ramification polygon one-sided, inclination 1/6",
            len(sides) == 1 and sides[0].inclination == Fr(1, 6), ram.polygon)
    c.check("omega = 2/3", ram.omega == Fr(2, 3), ram.omega)
    c.check("verify_chain passes", verify_chain(ch, vF=vF).passed)
    return c.finish()


def criterion_2():
    c = Criterion(2, "A2 depth 1, delta < omega, forced tame check", 1.0)
    F = parse_input("Qp p=2; x^4-2*x-2").poly
    ch = compute_chain(F)
    vF = RootValuation(F)
    c.check("depth 1", ch.depth == 1, ch.depth)
    e0, f0, _ = step_invariants(ch, 0)
    c.check("e_0 = 4, f_0 = 1", (e0, f0) == (4, 1), (e0, f0))
    delta, _, ram = _delta_omega(F, ch, vF)
    c.check("delta = 1/4", delta == Fr(1, 4), delta)
    c.check("omega = 1/3", ram.omega == Fr(1, 3), ram.omega)
    t = tame_checks(ch, vF=vF, force=True)
    c.check("forced run reports non-tame", t["forced"] and not t["tame"], t["reasons"])
    c.check("forced run exhibits delta != omega", t["report"].status("delta = omega") == "fail"
            and t["delta"] != t["omega"], (t.get("delta"), t.get("omega")))
    return c.finish()


def criterion_3():
    c = Criterion(3, "B inseparable residue extension, omega > delta", 1.0)
    F = parse_input("laurent y coeff=ratfunc(t,F3); x^3-y^2*x-t").poly
    ch = compute_chain(F)
    vF = RootValuation(F)
    c.check("depth 1", ch.depth == 1, ch.depth)
    c.check("f = 3", global_invariants(ch)[1] == 3, global_invariants(ch))
    R = ch.mu(0).residual_polynomial(F)
    c.check("certified residual z^3 - t", repr(R) == "z^3 + 2*t" and R.certified_irreducible(), R)
    delta, _, ram = _delta_omega(F, ch, vF)
    c.check("delta = 0", delta == 0, delta)
    c.check("omega = 1", ram.omega == 1, ram.omega)
    c.check("ramification multiset {1 x2}", ram.multiset == [(Fr(1), 2)], ram.multiset)
    return c.finish()


def criterion_4():
    c = Criterion(4, "defect examples C, D1, D2, E at p = 3, precision 6", 5.0)
    want = {
        "C": (["limit"], None, 3, (0, 0)),
        "D1": (["ordinary", "limit"], 2, 3, (Fr(1, 2), Fr(1, 2))),
        "D2": (["limit", "ordinary"], 3, 3, (Fr(1, 2), Fr(1, 2))),
        "E": (["limit", "limit"], 3, 9, (0, 0)),
    }
    for eid, (kinds, m1, defect, (dw, ow)) in want.items():
        inst = REGISTRY[eid].build(3, 6)
        ch = inst.chain
        c.check(f"{eid} kinds {'+'.join(kinds)}", ch.kinds() == kinds, ch.kinds())
        if m1 is not None:
            c.check(f"{eid} m_1 = {m1}", ch.degrees[1] == m1, ch.degrees)
        c.check(f"{eid} defect {defect}", global_invariants(ch)[2] == defect, global_invariants(ch))
        delta, per, ram = _delta_omega(inst.F, ch, inst.vF)
        c.check(f"{eid} (delta, omega) = ({fmt_value(dw)}, {fmt_value(ow)})",
                (delta, ram.omega) == (dw, ow), (delta, ram.omega))
        c.check(f"{eid} verify_chain passes", verify_chain(ch, vF=inst.vF).passed)
        if eid == "E":
            c.check("E delta_0 = -1/3", per[0].value == Fr(-1, 3), per[0].value)
    return c.finish()


def criterion_5():
    c = Criterion(5, "TAME4 tame identities", 1.0)
    F = parse_input("Qp p=5; x^4-5").poly
    ch = compute_chain(F)
    vF = RootValuation(F)
    t = tame_checks(ch, vF=vF)
    c.check("tame", t["tame"], t["reasons"])
    c.check("delta = omega = 1/4", t["delta"] == t["omega"] == Fr(1, 4), (t["delta"], t["omega"]))
    c.check("multiset {1/4 x3}", t["multiset"] == [(Fr(1, 4), 3)], t["multiset"])
    c.check("t_0 = 3", t["t"] == [3], t["t"])
    lam0 = slopes_and_secondary(ch)[0][0][1]
    _, per = main_invariant(frame_from_chain(ch), vF)
    c.check("delta_0 = lambda_0", per[0].value == lam0 == Fr(1, 4), (per[0].value, lam0))
    rep = t["report"]
    c.check("w-w identity vacuous at depth 1",
            rep.status("d(phi_i)-d(phi_{i-1}) = m_i(w(phi_i)-w(phi_{i-1}))") == "n/a")
    c.check("all applicable tame checks pass", rep.passed)
    return c.finish()


CRITERION_6_CHECKS = (propsuite.valuation_axioms, propsuite.weight_distance_product,
                      propsuite.ftal_equivalence, propsuite.efd_and_lambdas,
                      propsuite.round_trips, propsuite.sep_approx_corpus,
                      propsuite.truncation_is_mu)


def criterion_6():
    c = Criterion(6, "property suites, zero violations", 20.0)
    total = 0.0
    for chk in CRITERION_6_CHECKS:
        res = chk()
        total += res.seconds
        c.check(res.summary(), res.ok, res.violations[:3])
    scale = propsuite.samples(1000) / 1000
    if scale != 1:
        c.check("acceptance sizes (OKUTSU_SAMPLE_SCALE = 1)", False, f"scale {scale}")
    return c.finish(total)


def criterion_7():
    c = Criterion(7, "negative paths", 2.0)
    F = parse_input("Qp p=2; x^2-1").poly
    try:
        compute_chain(F)
        c.check("x^2-1 rejected as reducible", False, "no error")
    except ReducibleError as exc:
        c.check("x^2-1 rejected as reducible with witness", bool(exc.witness), exc.witness)
    inst = REGISTRY["A1"].build()
    bad = verify_chain(inst.chain.with_gamma(1, Fr(3, 2)), vF=inst.vF)
    c.check('tampered A1 fails "v_F(phi_i)=gamma_i"', bad.status("v_F(phi_i)=gamma_i") == "fail")
    C = REGISTRY["C"].build(3, 6)
    step = C.chain.steps[1]
    fam = step.family
    short = FamilyApprox(fam.base, fam.members[:2], limit_degree=step.phi.degree)
    mu = fam.base.augment_limit(short, step.phi, INF)
    try:
        val = mu(fam.members[-1][0])
        c.check('unstable family reports "unstable at precision"', False, f"value {val}")
    except UnstableAtPrecision as exc:
        c.check('unstable family reports "unstable at precision"',
                "unstable at precision" in str(exc), str(exc))
    return c.finish()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    ok, line = criterion()
    assert ok, line


if __name__ == "__main__":
    results = [crit()[0] for crit in CRITERIA]
    sys.exit(0 if all(results) else 1)
