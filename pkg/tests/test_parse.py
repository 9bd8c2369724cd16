from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from okutsu.basefields import LaurentField, PuiseuxField, QpField
from okutsu.parse import ParseError, parse_field, parse_input, parse_poly
from okutsu.poly import Poly, format_poly


class TestFields:
    def test_qp(self):
        assert parse_field("Qp p=2") == QpField(2)
        assert parse_field("Q p=7") == QpField(7)

    def test_laurent(self):
        assert parse_field("laurent y coeff=ratfunc(t,F3)") is LaurentField(3)

    def test_puiseux_defaults_and_overrides(self):
        assert parse_field("puiseux y p=3 coeff=F3") is PuiseuxField(3, 6, 3)
        assert parse_field("puiseux y p=3 prec=2 coeff=F3", prec=4) is PuiseuxField(3, 4, 3)
        assert parse_field("puiseux y p=3 prec=2 coeff=F9").q == 9

    @pytest.mark.parametrize("text, offset", [
        ("Qp p=4", 6),           # not prime
        ("Zp p=2", 1),           # unknown kind
        ("puiseux y p=3 coeff=F4", 21),
        ("laurent y coeff=F3", 17),
    ])
    def test_errors(self, text, offset):
        with pytest.raises(ParseError) as err:
            parse_field(text)
        assert err.value.offset == offset

    def test_missing_p(self):
        with pytest.raises(ParseError, match="missing p="):
            parse_field("Qp")


class TestPolys:
    def test_a1_expansion(self):
        K = QpField(2)
        f = parse_poly("(x^2-2)^2+4*x", K)
        assert format_poly(f) == "x^4 - 4*x^2 + 4*x + 4"

    def test_rational_coefficients(self):
        K = QpField(3)
        assert parse_poly("x/2 + 1/4", K) == Poly(K, (Fr(1, 4), Fr(1, 2)))

    def test_fractional_y_exponents(self):
        K = PuiseuxField(3, 2)
        f = parse_poly("x^2 - y^(1/3)*x + y^(-2/9)", K)
        assert K.valuation(f[0]) == Fr(-2, 9)
        assert K.valuation(f[1]) == Fr(1, 3)

    def test_generator_symbol(self):
        K = PuiseuxField(3, 2, 9)
        f = parse_poly("x - a", K)
        assert f.degree == 1

    def test_laurent_t(self):
        K = LaurentField(3)
        f = parse_poly("x^3 - y^2*x - t", K)
        assert f[0] == -K.t

    def test_division_by_series_term(self):
        K = PuiseuxField(3, 2)
        assert parse_poly("x/y", K) == parse_poly("y^-1*x", K)


class TestErrors:
    def test_trailing_operator(self):
        with pytest.raises(ParseError) as err:
            parse_input("Qp p=2; x^2 -")
        assert err.value.offset == 14
        assert "offset 14" in str(err.value)

    def test_unknown_symbol(self):
        with pytest.raises(ParseError, match="unknown symbol 'z'") as err:
            parse_input("Qp p=2; x^2 + z")
        assert err.value.offset == 15

    def test_y_over_qp(self):
        with pytest.raises(ParseError, match="unknown symbol 'y'"):
            parse_input("Qp p=2; x + y")

    def test_precision_cap(self):
        with pytest.raises(ParseError, match="denominator") as err:
            parse_input("puiseux y p=3 prec=1 coeff=F3; x - y^(1/9)")
        assert err.value.offset == 38   # the exponent starts at "("

    def test_fractional_exponent_on_x(self):
        with pytest.raises(ParseError, match="only allowed on y"):
            parse_input("puiseux y p=3 coeff=F3; x^(1/3)")

    def test_division_by_polynomial(self):
        with pytest.raises(ParseError, match="division"):
            parse_input("Qp p=2; 1/x")

    def test_missing_semicolon(self):
        with pytest.raises(ParseError, match="';'"):
            parse_input("Qp p=2 x^2")

    def test_unbalanced(self):
        with pytest.raises(ParseError, match="expected"):
            parse_input("Qp p=2; (x+1")


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
def test_canonical_form_round_trips(coeffs):
    K = QpField(5)
    f = Poly(K, [Fr(c) for c in coeffs])
    text = format_poly(f)
    assert parse_poly(text, K) == f


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(-9, 9)), min_size=0, max_size=4),
       st.integers(1, 4))
def test_puiseux_round_trip(terms, deg):
    K = PuiseuxField(3, 2)
    c = K.from_terms((a, Fr(e, 9)) for a, e in terms)
    x = Poly.x(K)
    f = x ** deg + Poly(K, (c,)) * x
    spec = parse_input(f"{K.descriptor()}; {format_poly(f)}")
    assert spec.poly == f
    assert parse_input(spec.canonical()).poly == f
