from fractions import Fraction as Fr

import pytest

from okutsu.basefields import QpField
from okutsu.chains import (compute_chain, global_invariants, slopes_and_secondary,
                           step_invariants, verify_chain)
from okutsu.errors import BudgetExhausted, PrecisionError, ReducibleError
from okutsu.parse import parse_input
from okutsu.poly import format_poly
from okutsu.values import INF

from conftest import instance

ALL = ["A1", "A2", "B", "C", "D1", "D2", "E", "TAME4"]


def chain_of(text):
    return compute_chain(parse_input(text).poly)


class TestComputeChain:
    def test_a1(self):
        ch = chain_of("Qp p=2; (x^2-2)^2+4*x")
        assert ch.degrees == [1, 2, 4]
        assert ch.gammas == [Fr(1, 2), Fr(5, 4), INF]
        assert [step_invariants(ch, i) for i in range(2)] == [(2, 1, 1), (2, 1, 1)]
        assert global_invariants(ch) == (4, 1, 1, 2)

    def test_a2(self):
        ch = chain_of("Qp p=2; x^4-2*x-2")
        assert ch.degrees == [1, 4] and ch.gammas[0] == Fr(1, 4)
        assert step_invariants(ch, 0) == (4, 1, 1)

    def test_b_residual(self):
        ch = instance("B").chain
        R = ch.mu(0).residual_polynomial(ch.F)
        assert repr(R) == "z^3 + 2*t"   # z^3 - t over F_3(t)
        assert R.certified_irreducible()
        assert step_invariants(ch, 0) == (1, 3, 1)

    def test_linear_input(self):
        ch = chain_of("Qp p=5; x-5")
        assert ch.depth == 0 and ch.gammas == [INF]

    def test_reducible_with_witness(self):
        with pytest.raises(ReducibleError) as err:
            chain_of("Qp p=2; x^2-1")
        assert err.value.witness == "x + 1 divides F"

    def test_reducible_two_sided(self):
        with pytest.raises(ReducibleError) as err:
            chain_of("Qp p=2; x^2-3*x+2")
        assert err.value.witness

    def test_defect_input_exhausts(self):
        F = parse_input("puiseux y p=3 prec=6 coeff=F3; x^3-x-y^-1").poly
        with pytest.raises((BudgetExhausted, PrecisionError)):
            compute_chain(F, budget=8)


@pytest.mark.parametrize("eid", ALL)
def test_registry_chains_verify(eid):
    inst = instance(eid)
    rep = verify_chain(inst.chain, vF=inst.vF)
    assert rep.passed, [c.to_json() for c in rep.failed()]


@pytest.mark.parametrize("eid", ALL)
def test_efd_identity_and_ladder(eid):
    ch = instance(eid).chain
    m = ch.degrees
    for i in range(ch.depth):
        e, f, d = step_invariants(ch, i)
        assert m[i + 1] == e * f * d * m[i]
        assert m[i + 1] % m[i] == 0
        if ch.kinds()[i] == "limit":
            assert (e, f) == (1, 1)


@pytest.mark.parametrize("eid", ALL)
def test_lambda_identity(eid):
    ch = instance(eid).chain
    pairs, ok = slopes_and_secondary(ch)
    assert ok
    m = ch.degrees
    for i, (gamma, _) in enumerate(pairs):
        assert gamma / m[i] == sum(lam / m[k] for k, (_, lam) in enumerate(pairs[: i + 1]))


def test_tampered_chain_fails_value_check():
    ch = instance("A1").chain
    bad = ch.with_gamma(1, Fr(3, 2))
    rep = verify_chain(bad)
    assert rep.status("v_F(phi_i)=gamma_i") == "fail"
    assert "5/4" in next(c for c in rep.checks if c.name == "v_F(phi_i)=gamma_i").witness


def test_chain_json():
    js = instance("A1").chain.to_json()
    assert js["field"] == "Qp p=2"
    assert [s["gamma"] for s in js["steps"]] == ["1/2", "5/4", "inf"]
    assert format_poly(instance("A1").F) == js["F"]
