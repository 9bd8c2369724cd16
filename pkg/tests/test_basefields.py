import random
from fractions import Fraction as Fr

import pytest

from okutsu.basefields import LaurentField, PuiseuxField, QpField, ord_p
from okutsu.errors import PrecisionError
from okutsu.values import INF


def test_ord_p():
    assert ord_p(48, 2) == 4
    assert ord_p(7, 3) == 0


class TestQp:
    K = QpField(2)

    def test_valuation(self):
        K = self.K
        assert K.valuation(Fr(12)) == 2
        assert K.valuation(Fr(3, 8)) == -3
        assert K.valuation(Fr(0)) is INF

    def test_residue(self):
        K = self.K
        assert K.residue(Fr(5, 3)).raw == 1
        with pytest.raises(ValueError):
            K.residue(Fr(1, 2))

    def test_monomial_only_integral(self):
        assert self.K.monomial(3) == 8
        with pytest.raises(ValueError):
            self.K.monomial(Fr(1, 2))

    def test_canonical_instance(self):
        assert QpField(2) == QpField(2)
        assert hash(QpField(2)) == hash(QpField(2))
        assert QpField(2) != QpField(3)


class TestPuiseux:
    K = PuiseuxField(3, 2)

    def test_cached_instances(self):
        assert PuiseuxField(3, 2) is self.K
        assert PuiseuxField(3, 3) is not self.K

    def test_valuation_and_terms(self):
        K = self.K
        a = K.monomial(Fr(-1, 3)) + K.monomial(Fr(2, 9))
        assert K.valuation(a) == Fr(-1, 3)
        assert K.valuation(a - a) is INF

    def test_precision_cap(self):
        with pytest.raises(PrecisionError):
            self.K.monomial(Fr(1, 27))

    def test_frobenius_power(self):
        K = self.K
        a = K.monomial(Fr(-1, 3)) + K.one
        # (a + 1)^3 = a^3 + 1 in characteristic 3
        assert a ** 3 == K.monomial(-1) + K.one
        assert a ** 3 == a * a * a

    def test_exact_division(self):
        K = self.K
        a = K.monomial(1) + K.one
        b = K.monomial(Fr(1, 3)) + K.one
        assert (a * b) / b == a
        with pytest.raises(ArithmeticError):
            K.one / b

    def test_random_ring_laws(self):
        K = self.K
        rng = random.Random(5)
        for _ in range(150):
            a, b, c = (K.random(rng) for _ in range(3))
            assert a * (b + c) == a * b + a * c
            assert (a - b) + b == a
            if a and b:
                assert K.valuation(a * b) == K.valuation(a) + K.valuation(b)
            assert K.valuation(a + b) >= min(K.valuation(a), K.valuation(b))

    def test_descriptor(self):
        assert self.K.descriptor() == "puiseux y p=3 prec=2 coeff=F3"


class TestLaurent:
    K = LaurentField(3)

    def test_t_is_a_unit_of_the_residue_field(self):
        K = self.K
        assert K.valuation(K.t) == 0
        assert K.residue(K.t) is not None

    def test_integral_exponents(self):
        with pytest.raises(PrecisionError):
            self.K.monomial(Fr(1, 3))

    def test_ring_laws(self):
        K = self.K
        rng = random.Random(11)
        for _ in range(60):
            a, b = K.random(rng), K.random(rng)
            assert (a + b) * (a - b) == a * a - b * b
