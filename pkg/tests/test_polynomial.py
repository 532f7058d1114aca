#!/usr/bin/env python3
"""
Tests for sparse polynomials, symmetric polynomials and divided differences
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import AsymmetricPolynomialError, InexactDivisionError, InvalidParameterError
from src.polynomial import Polynomial
from src.scalars import Params
from src.sympoly import (SymPoly, divided_diff_ops, elementary_sym, expand_in_msym, from_msym,
                         inv_x, minus_pair, msym, plus_pair)


def x(n, j):
    return Polynomial.variable(n, j)


# ============================================
# Polynomial
# ============================================

class TestPolynomial:
    """Tests for the sparse polynomial core"""

    def test_arithmetic(self):
        """(x1 + x2)^2 expands with exact coefficients"""
        s = x(2, 0) + x(2, 1)
        assert s ** 2 == Polynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert (s - s).is_zero()
        assert (s * Fraction(1, 2)).coefficient((1, 0)) == Fraction(1, 2)

    def test_degree_and_parts(self):
        """Degree, top part and homogeneous parts"""
        p = Polynomial(2, {(2, 1): 3, (1, 0): 1, (0, 0): -2})
        assert p.degree() == 3
        assert p.top_part() == Polynomial(2, {(2, 1): 3})
        assert set(p.homogeneous_parts()) == {0, 1, 3}
        assert Polynomial.zero(2).degree() == -1

    def test_derivative(self):
        """d/dx1 of x1^3 x2 is 3 x1^2 x2"""
        p = Polynomial(2, {(3, 1): 1})
        assert p.derivative(0) == Polynomial(2, {(2, 1): 3})
        assert p.derivative(0, 4).is_zero()
        assert p.laplacian() == Polynomial(2, {(1, 1): 6})

    def test_divide_linear(self):
        """Exact quotients by x1 - x2, x1 + x2 and x1"""
        difference = Polynomial(2, {(2, 0): 1, (0, 2): -1})
        assert difference.divide_linear(0, 1, 1) == x(2, 0) + x(2, 1)
        assert difference.divide_linear(0, 1, -1) == x(2, 0) - x(2, 1)
        assert Polynomial(2, {(3, 1): 2}).divide_linear(0) == Polynomial(2, {(2, 1): 2})

    def test_divide_linear_inexact(self):
        """A nonzero remainder raises"""
        with pytest.raises(InexactDivisionError):
            (x(2, 0) + 1).divide_linear(0, 1, 1)
        with pytest.raises(InexactDivisionError):
            Polynomial.constant(1, 1).divide_linear(0)

    def test_evaluate(self):
        """Exact and float evaluation agree"""
        p = Polynomial(2, {(2, 0): 1, (0, 1): Fraction(-1, 3)})
        assert p.evaluate([Fraction(1, 2), 3]) == Fraction(1, 4) - 1
        points = np.array([[0.5, 3.0], [1.0, 0.0]])
        assert np.allclose(p.evaluate_float(points), [-0.75, 1.0])
        assert p.evaluate_float([0.5, 3.0]) == pytest.approx(-0.75)
        with pytest.raises(InvalidParameterError):
            p.evaluate([1])

    def test_square_variables_round_trip(self):
        """halve_exponents undoes square_variables"""
        p = Polynomial(2, {(1, 2): 5, (0, 0): 1})
        assert p.square_variables().halve_exponents() == p
        with pytest.raises(InvalidParameterError):
            p.halve_exponents()

    def test_to_json(self):
        """Terms serialize in descending exponent order"""
        p = Polynomial(1, {(2,): 1, (0,): Fraction(-1, 2)})
        assert p.to_json() == [{'exp': [2], 'coeff': '1'}, {'exp': [0], 'coeff': '-1/2'}]


# ============================================
# Symmetric polynomials
# ============================================

class TestMonomialSymmetric:
    """Tests for msym, expand_in_msym and from_msym"""

    def test_msym(self):
        """Orbit sums of partitions"""
        assert msym((0, 0)) == Polynomial.constant(2, 1)
        assert msym((2, 0)) == Polynomial(2, {(2, 0): 1, (0, 2): 1})
        assert msym((1, 1), even=True) == Polynomial(2, {(2, 2): 1})

    def test_expand(self):
        """Coefficients in the monomial symmetric basis"""
        p = msym((2, 0)) + msym((1, 1))
        assert expand_in_msym(p) == {(2, 0): 1, (1, 1): 1}
        assert expand_in_msym(SymPoly.constant(2, 1)) == {(0, 0): 1}
        even = msym((1, 1), even=True) + SymPoly.constant(2, 3, even=True)
        assert expand_in_msym(even, even=True) == {(1, 1): 1, (0, 0): 3}

    def test_round_trip_on_small_partitions(self):
        """expand_in_msym(msym(mu)) = {mu: 1}"""
        for mu in [(0, 0, 0), (1, 0, 0), (2, 1, 0), (1, 1, 1), (3, 2, 1), (2, 2, 0)]:
            assert expand_in_msym(msym(mu)) == {mu: 1}
            assert from_msym({mu: 1}, 3) == msym(mu)

    def test_asymmetric_input_raises(self):
        """A term map that is not closed under permutations is rejected"""
        with pytest.raises(AsymmetricPolynomialError):
            SymPoly(2, {(1, 0): 1})
        with pytest.raises(AsymmetricPolynomialError):
            SymPoly(2, {(1, 0): 1, (0, 1): 2})
        with pytest.raises(AsymmetricPolynomialError):
            SymPoly(1, {(1,): 1}, even=True)

    def test_arithmetic_keeps_type(self):
        """Sums and products of symmetric polynomials stay SymPoly"""
        p = msym((1, 0)) * msym((1, 0)) + 1
        assert isinstance(p, SymPoly)
        assert expand_in_msym(p) == {(2, 0): 1, (1, 1): 2, (0, 0): 1}


class TestElementarySymmetric:
    """Tests for the Pieri multipliers E_r"""

    def test_family_a(self):
        """e_1 and e_2 in two variables"""
        params = Params('A', 2)
        assert elementary_sym(1, params) == x(2, 0) + x(2, 1)
        assert elementary_sym(2, params) == x(2, 0) * x(2, 1)

    def test_family_b(self):
        """(-omega)^r e_r(x^2)"""
        params = Params('B', 1, omega="2/5")
        assert elementary_sym(1, params) == Polynomial(1, {(2,): Fraction(-2, 5)})

    def test_range(self):
        """r must lie in 1..n"""
        with pytest.raises(InvalidParameterError):
            elementary_sym(3, Params('A', 2))


class TestDividedDifferences:
    """Tests for the divided-difference operators"""

    def test_minus_pair(self):
        """(d1 - d2)(x1^2 + x2^2 + x1 x2)/(x1 - x2) = 1"""
        p = msym((2, 0)) + msym((1, 1))
        assert minus_pair(p, 0, 1) == Polynomial.constant(2, 1)
        assert minus_pair(SymPoly.constant(2, 1), 0, 1).is_zero()

    def test_plus_pair(self):
        """(d1 + d2)(x1^2 + x2^2)/(x1 + x2) = 2"""
        assert plus_pair(msym((1, 0), even=True), 0, 1) == Polynomial.constant(2, 2)

    def test_inv_x(self):
        """d1(x1^2 x2^2)/x1 = 2 x2^2"""
        assert inv_x(msym((1, 1), even=True), 0) == Polynomial(2, {(0, 2): 2})

    def test_dispatch(self):
        """divided_diff_ops routes by name and validates indices"""
        p = msym((2, 0))
        assert divided_diff_ops(p, 'minus_pair', 0, 1) == minus_pair(p, 0, 1)
        with pytest.raises(InvalidParameterError):
            divided_diff_ops(p, 'minus_pair', 0, 0)
        with pytest.raises(InvalidParameterError):
            divided_diff_ops(p, 'sideways', 0, 1)
