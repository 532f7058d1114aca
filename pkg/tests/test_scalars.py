#!/usr/bin/env python3
"""
Tests for exact scalars, Params validation and Pochhammer products
"""

from fractions import Fraction
from math import pi, sqrt

import pytest

from src.errors import InvalidParameterError, NonGenericParameterError, NotRepresentableError
from src.scalars import (ExactScalar, LinearFactorProduct, Params, format_rational,
                         gamma_half_integer, parse_rational, pochhammer, rational_sqrt)


def random_scalar(rng, omega):
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        key = (int(rng.integers(-2, 3)), int(rng.integers(0, 2)))
        terms[key] = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))
    return ExactScalar(terms, omega)


# ============================================
# Parsing and Formatting
# ============================================

class TestRationalParsing:
    """Tests for parse_rational and format_rational"""

    def test_parses_fraction_strings(self):
        """'p/q' strings become Fractions"""
        assert parse_rational("2/5") == Fraction(2, 5)
        assert parse_rational(" 3 ") == Fraction(3)
        assert parse_rational(4) == Fraction(4)

    def test_rejects_floats_and_garbage(self):
        """Floats and unparsable text raise InvalidParameterError"""
        with pytest.raises(InvalidParameterError):
            parse_rational(0.5)
        with pytest.raises(InvalidParameterError):
            parse_rational("one half")
        with pytest.raises(InvalidParameterError):
            parse_rational("1/0")

    def test_format_drops_unit_denominator(self):
        """Integers print without a denominator"""
        assert format_rational(Fraction(6, 2)) == "3"
        assert format_rational(Fraction(-1, 2)) == "-1/2"

    def test_rational_sqrt(self):
        """Perfect squares have exact roots, others return None"""
        assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert rational_sqrt(Fraction(2)) is None
        assert rational_sqrt(Fraction(-1)) is None


# ============================================
# Params
# ============================================

class TestParams:
    """Tests for Params validation"""

    def test_normalizes_couplings(self):
        """String couplings are parsed and the family is upper-cased"""
        params = Params('b', 2, "1/2", "3/2", "2/5")
        assert params.family == 'B'
        assert params.g0 == Fraction(1, 2)
        assert params.omega == Fraction(2, 5)
        assert params.even

    def test_family_a_ignores_g1(self):
        """g1 has no meaning for family A and is reset to zero"""
        assert Params('A', 2, 1, 3).g1 == 0

    @pytest.mark.parametrize("kwargs", [
        dict(family='C', n=1),
        dict(family='A', n=0),
        dict(family='A', n=9),
        dict(family='A', n=1, g0=-1),
        dict(family='B', n=1, g1=-1),
        dict(family='A', n=1, omega=0),
    ])
    def test_invalid_params(self, kwargs):
        """Out-of-range values raise InvalidParameterError"""
        with pytest.raises(InvalidParameterError):
            Params(**kwargs)

    def test_integer_couplings(self):
        """integer_couplings looks at g0 and g1 only"""
        assert Params('B', 2, 1, 2, "2/5").integer_couplings
        assert not Params('B', 2, "1/2", 0).integer_couplings
        with pytest.raises(InvalidParameterError):
            Params('A', 2, "1/2").require_integer_couplings("test")

    def test_couplings_are_strings(self):
        """couplings() serializes exactly"""
        assert Params('B', 1, 0, "1/2", 3).couplings() == {'g0': '0', 'g1': '1/2', 'omega': '3'}


# ============================================
# Pochhammer and Gamma
# ============================================

class TestPochhammer:
    """Tests for the rising factorial"""

    def test_empty_product(self):
        """[a]_0 = 1 for any a"""
        assert pochhammer(Fraction(-7, 3), 0) == 1

    def test_values(self):
        """Small hand-computed values"""
        assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
        assert pochhammer(-2, 3) == 0
        assert pochhammer(1, 5) == 120

    def test_negative_length(self):
        """Negative lengths are invalid"""
        with pytest.raises(InvalidParameterError):
            pochhammer(1, -1)


class TestGammaHalfInteger:
    """Tests for Gamma at positive half-integers"""

    def test_integer_argument(self):
        """Gamma(4) = 3!"""
        assert gamma_half_integer(4) == ExactScalar.rational(6)

    def test_half_integer_arguments(self):
        """Gamma(1/2) = sqrt(pi) and Gamma(5/2) = (3/4) sqrt(pi)"""
        assert gamma_half_integer(Fraction(1, 2)) == ExactScalar.pi_power(1)
        assert gamma_half_integer(Fraction(5, 2)) == ExactScalar.pi_power(1) * Fraction(3, 4)
        assert gamma_half_integer(Fraction(5, 2)).to_float() == pytest.approx(0.75 * sqrt(pi))

    def test_outside_ring(self):
        """Thirds and non-positive arguments are not representable"""
        with pytest.raises(NotRepresentableError):
            gamma_half_integer(Fraction(1, 3))
        with pytest.raises(NotRepresentableError):
            gamma_half_integer(0)


# ============================================
# ExactScalar Arithmetic
# ============================================

class TestExactScalar:
    """Tests for arithmetic in Q[sqrt(omega)] with half-integer pi powers"""

    def test_pi_powers_add(self):
        """pi^(1/2) * pi^(1/2) = pi"""
        root_pi = ExactScalar.pi_power(1)
        assert root_pi * root_pi == ExactScalar.pi_power(2)

    def test_sqrt_omega_reduces(self):
        """sqrt(omega)^2 folds back to omega"""
        root = ExactScalar({(0, 1): 1}, omega=Fraction(2))
        assert root * root == ExactScalar.rational(2)

    def test_perfect_square_omega_is_rational(self):
        """omega = 4 makes sqrt(omega) rational on construction"""
        assert ExactScalar.omega_power(Fraction(-1, 2), 4) == ExactScalar.rational(Fraction(1, 2))

    def test_division(self):
        """(3 pi^(1/2)) / pi^(1/2) = 3"""
        root_pi = ExactScalar.pi_power(1)
        assert (root_pi * 3) / root_pi == ExactScalar.rational(3)

    def test_quadratic_inverse(self):
        """(1 + sqrt 2)^-1 * (1 + sqrt 2) = 1"""
        value = ExactScalar({(0, 0): 1, (0, 1): 1}, omega=Fraction(2))
        assert value * value.inverse() == ExactScalar.rational(1)

    def test_mixed_grades_not_invertible(self):
        """1 + pi is outside the invertible part of the ring"""
        value = ExactScalar({(0, 0): 1, (2, 0): 1})
        with pytest.raises(NotRepresentableError):
            value.inverse()

    def test_omega_power_rejects_quarters(self):
        """Only Z/2 exponents are allowed"""
        with pytest.raises(NotRepresentableError):
            ExactScalar.omega_power(Fraction(1, 4), 2)

    def test_ring_axioms_on_random_inputs(self, rng):
        """Associativity, commutativity and distributivity on seeded random scalars"""
        omega = Fraction(3)
        for _ in range(25):
            a, b, c = (random_scalar(rng, omega) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a + b) - b == a

    def test_to_json(self):
        """Terms serialize sorted with exact coefficients"""
        value = ExactScalar.pi_power(1, Fraction(2)) * Fraction(1, 2)
        assert value.to_json() == [{'halfPiExp': 1, 'sqrtOmega': 0, 'coeff': '1/2'}]


# ============================================
# LinearFactorProduct
# ============================================

class TestLinearFactorProduct:
    """Tests for the limit rule at vanishing factors"""

    def test_plain_product(self):
        """Nonvanishing factors multiply"""
        prod = LinearFactorProduct(Fraction(1))
        prod.mul(1, 1).div(2, 1).scale(3)
        assert prod.result() == Fraction(2 * 3, 3)

    def test_equal_orders_take_the_limit(self):
        """[g0]_1 / [2 g0]_1 at g0 = 0 is the limit 1/2"""
        prod = LinearFactorProduct(Fraction(0))
        prod.mul_pochhammer(0, 1, 1).div_pochhammer(0, 2, 1)
        assert prod.result() == Fraction(1, 2)

    def test_excess_zero(self):
        """More vanishing numerator factors give zero"""
        prod = LinearFactorProduct(Fraction(0))
        prod.mul(0, 1).mul(0, 3).div(0, 2)
        assert prod.result() == 0

    def test_pole_is_non_generic(self):
        """More vanishing denominator factors raise"""
        prod = LinearFactorProduct(Fraction(0))
        prod.div(0, 1)
        with pytest.raises(NonGenericParameterError):
            prod.result()
