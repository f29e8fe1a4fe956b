"""Unit and property tests for the exact arithmetic substrate."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from biwkit.errors import NonzeroRemainder
from biwkit.exact import (
    ComplexRational,
    Polynomial,
    fraction_from_str,
    fraction_to_str,
    parse_complex_rational,
)

# -- scalar strategies -------------------------------------------------------

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=12),
)
scalars = st.builds(ComplexRational, small_fractions, small_fractions)
nonzero_scalars = scalars.filter(lambda c: not c.is_zero())
polys = st.lists(scalars, min_size=0, max_size=6).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


class TestComplexRational:
    def test_field_axioms_spot(self):
        a = ComplexRational(Fraction(1, 2), Fraction(-3, 4))
        b = ComplexRational(Fraction(2, 3), Fraction(5))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * a == a * a + b * a
        assert a / a == ComplexRational(1)

    def test_i_squared(self):
        i = ComplexRational(0, 1)
        assert i * i == ComplexRational(-1)

    def test_conjugate_norm(self):
        a = ComplexRational(Fraction(3, 5), Fraction(4, 5))
        assert a * a.conjugate() == ComplexRational(a.norm_squared())
        assert a.norm_squared() == 1

    def test_pow(self):
        i = ComplexRational(0, 1)
        assert i ** 4 == ComplexRational(1)
        assert i ** -1 == -i
        a = ComplexRational(2, 1)
        assert a ** 3 == a * a * a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ComplexRational(1) / ComplexRational(0)

    def test_immutability(self):
        a = ComplexRational(1, 2)
        with pytest.raises(AttributeError):
            a.re = Fraction(5)

    @given(scalars, nonzero_scalars)
    def test_division_roundtrip(self, a, b):
        assert (a / b) * b == a

    @given(scalars)
    def test_json_roundtrip(self, a):
        assert ComplexRational.from_json(a.to_json()) == a

    @given(scalars)
    def test_str_parse_roundtrip(self, a):
        assert parse_complex_rational(str(a)) == a


class TestParsing:
    @pytest.mark.parametrize("text,expected", [
        ("3/2", ComplexRational(Fraction(3, 2))),
        ("-0.25", ComplexRational(Fraction(-1, 4))),
        ("1/2+1/3i", ComplexRational(Fraction(1, 2), Fraction(1, 3))),
        ("-i", ComplexRational(0, -1)),
        ("2i", ComplexRational(0, 2)),
        ("0", ComplexRational(0)),
        ("1/2-2i", ComplexRational(Fraction(1, 2), -2)),
    ])
    def test_parse(self, text, expected):
        assert parse_complex_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "x", "1/2+", "i2", "1//2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_complex_rational(text)

    def test_decimal_is_exact(self):
        assert parse_complex_rational("0.5") == ComplexRational(Fraction(1, 2))

    def test_fraction_str_roundtrip(self):
        for q in (Fraction(-3, 2), Fraction(7), Fraction(0)):
            assert fraction_from_str(fraction_to_str(q)) == q


class TestPolynomial:
    def test_canonical_zero(self):
        assert Polynomial([0, 0, 0]).coeffs == ()
        assert Polynomial().degree == -1
        assert (Polynomial([1, 2]) - Polynomial([1, 2])).is_zero()

    def test_degree_and_leading(self):
        p = Polynomial([1, 0, Fraction(2, 3)])
        assert p.degree == 2
        assert p.leading_coefficient == ComplexRational(Fraction(2, 3))

    def test_arithmetic_spot(self):
        x = Polynomial.x()
        assert (x + 1) * (x - 1) == x * x - 1
        assert 2 * x == x + x

    def test_exact_div_remainder(self):
        x = Polynomial.x()
        with pytest.raises(NonzeroRemainder) as exc:
            (x * x + 1).exact_div(x)
        assert not exc.value.remainder.is_zero()

    def test_call(self):
        p = Polynomial([1, 2, 1])  # (x+1)^2
        assert p(ComplexRational(0, 1)) == ComplexRational(0, 2)  # (i+1)^2 = 2i

    @given(polys, nonzero_polys)
    def test_exact_div_roundtrip(self, p, d):
        assert (p * d).exact_div(d) == p

    @given(polys, nonzero_scalars, scalars)
    def test_affine_substitute_inverse(self, p, s, t):
        q = p.affine_substitute(s, t)
        back = q.affine_substitute(1 / s, -t / s)
        assert back == p

    @given(polys, polys, scalars)
    def test_evaluation_is_ring_hom(self, p, q, z):
        assert (p * q)(z) == p(z) * q(z)
        assert (p + q)(z) == p(z) + q(z)

    @given(polys)
    def test_json_roundtrip(self, p):
        assert Polynomial.from_json(p.to_json()) == p
