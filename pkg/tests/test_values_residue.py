from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from okutsu.residue import (GF, PrimeField, RationalFunctionField, is_irreducible,
                            p_divmod, p_mul, power_of_irreducible)
from okutsu.values import INF, ValueSubgroup, fmt_value, ram_index, to_value, vmin


class TestInfinity:
    def test_absorbs_addition(self):
        assert INF + Fr(3) is INF
        assert Fr(3) + INF is INF

    def test_order(self):
        assert Fr(10 ** 9) < INF
        assert not INF < INF
        assert INF == INF

    def test_helpers(self):
        assert vmin([Fr(1), INF, Fr(-2)]) == -2
        assert vmin([]) is INF
        assert fmt_value(INF) == "inf"
        assert fmt_value(Fr(-5, 8)) == "-5/8"
        assert to_value("inf") is INF
        assert to_value("3/4") == Fr(3, 4)


class TestValueSubgroup:
    def test_membership(self):
        G = ValueSubgroup(2)
        assert Fr(1, 2) in G and Fr(3) in G
        assert Fr(1, 4) not in G

    def test_inverted_primes(self):
        G = ValueSubgroup(1, S=[3])
        assert Fr(-1, 9) in G
        assert Fr(1, 2) not in G
        assert ram_index(Fr(-1, 9), G) == 1
        assert ram_index(Fr(1, 6), G) == 2

    def test_adjoin_and_index(self):
        G = ValueSubgroup(1)
        H = G.adjoin(Fr(5, 4))
        assert H == ValueSubgroup(4)
        assert G.index_in(H) == 4
        assert G <= H and not H <= G

    def test_ram_index_of_inf(self):
        with pytest.raises(ValueError):
            ram_index(INF, ValueSubgroup())


# -- finite fields ------------------------------------------------------------------

FIELDS = [GF(2), GF(3), GF(4), GF(8), GF(9)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.size}")
def test_field_axioms_exhaustive(F):
    els = list(F.elements())
    assert len(els) == F.size
    for a in els:
        assert F.add(a, F.neg(a)) == F.zero
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one
            assert F.pow(a, F.size - 1) == F.one
    for a in els[:5]:
        for b in els:
            for c in els[:4]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.size}")
def test_pth_root_is_frobenius_inverse(F):
    for a in F.elements():
        assert F.pth_root(F.pow(a, F.char)) == a


def test_gf_rejects_non_prime_power():
    with pytest.raises(ValueError):
        GF(6)


def test_irreducibility_over_f3():
    F3 = PrimeField(3)
    assert is_irreducible(F3, (1, 0, 1))          # z^2 + 1
    assert not is_irreducible(F3, (2, 0, 1))      # z^2 - 1
    assert is_irreducible(F3, (1, 2, 0, 1))       # z^3 - z + 1


def test_power_of_irreducible():
    F2 = PrimeField(2)
    sq = p_mul(F2, (1, 1), (1, 1))                # (z+1)^2 = z^2 + 1 over F_2
    status, S, k = power_of_irreducible(F2, sq)
    assert (status, S, k) == ("yes", (1, 1), 2)
    status, _, _ = power_of_irreducible(F2, (0, 1, 1))  # z(z+1)
    assert status == "no"


class TestRationalFunctions:
    K = RationalFunctionField(PrimeField(3))

    def test_normal_form(self):
        K = self.K
        a = K.make((2, 2), (1, 1))                # (2 + 2t)/(1 + t) = 2
        assert a == K.make((2,))

    def test_pth_root(self):
        K = self.K
        t = K.t
        assert K.pth_root(K.pow(t, 3)) == t
        assert K.pth_root(t) is None

    @settings(max_examples=60, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_field_laws(self, r):
        K = self.K
        a, b, c = K.random(r), K.random(r), K.random(r)
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        if not K.is_zero(a):
            assert K.mul(a, K.inv(a)) == K.one


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=6),
       st.lists(st.integers(0, 2), min_size=2, max_size=4))
def test_poly_divmod_over_f3(a, b):
    F3 = PrimeField(3)
    from okutsu.residue import p_add, p_trim
    b = p_trim(F3, tuple(b))
    if len(b) < 1:
        return
    q, r = p_divmod(F3, tuple(a), b)
    assert len(r) < len(b)
    assert p_add(F3, p_mul(F3, q, b), r) == p_trim(F3, tuple(a))
