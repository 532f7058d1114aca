#!/usr/bin/env python3
"""
Tests for exact Gaussian moments, Gram inner products and exact solves
"""

from fractions import Fraction

import pytest

from src.errors import InconsistentSystemError, InvalidParameterError, SingularSystemError
from src.linalg import solve_exact, solve_unique
from src.moments import gaussian_moment, gram_inner, gram_matrix, weight_polynomial
from src.partitions import Partition
from src.polynomial import Polynomial
from src.scalars import ExactScalar, Params
from src.sympoly import SymPoly, msym


def pi_times(q, half_exponent=2):
    return ExactScalar.pi_power(half_exponent) * Fraction(q)


class TestWeightPolynomial:
    """Tests for the polynomial part of the weight"""

    def test_family_a(self, hermite_2):
        """(x1 - x2)^2 at g0 = 1"""
        assert weight_polynomial(hermite_2) == Polynomial(2, {(2, 0): 1, (1, 1): -2, (0, 2): 1})

    def test_family_b(self):
        """(x1^2 - x2^2)^2 (x1 x2)^2 at g0 = g1 = 1"""
        params = Params('B', 2, g0=1, g1=1)
        expected = Polynomial(2, {(6, 2): 1, (4, 4): -2, (2, 6): 1})
        assert weight_polynomial(params) == expected

    def test_needs_integer_couplings(self):
        """Half-integer couplings have no polynomial weight"""
        with pytest.raises(InvalidParameterError):
            weight_polynomial(Params('A', 2, g0="1/2"))


class TestGaussianMoment:
    """Tests for exact integrals against the weight"""

    def test_one_variable(self, hermite_1):
        """int exp(-x^2) = sqrt(pi)"""
        assert gaussian_moment(SymPoly.constant(1, 1), hermite_1) == ExactScalar.pi_power(1)

    def test_one_variable_scaled(self):
        """int exp(-4 x^2) = sqrt(pi)/2"""
        params = Params('A', 1, omega=4)
        assert gaussian_moment(SymPoly.constant(1, 1), params) == ExactScalar.pi_power(1) * Fraction(1, 2)

    def test_mehta_two_variables(self, hermite_2):
        """int (x1 - x2)^2 exp(-|x|^2) = pi"""
        assert gaussian_moment(SymPoly.constant(2, 1), hermite_2) == pi_times(1)
        assert gaussian_moment(SymPoly.constant(2, 1), Params('A', 2, g0=1, omega=2)) == pi_times(Fraction(1, 4))

    def test_second_moment(self, hermite_2):
        """<x1^2 + x2^2, 1> = 2 pi omega^-3"""
        assert gaussian_moment(msym((2, 0)), hermite_2) == pi_times(2)

    def test_family_b(self, laguerre_1):
        """int x^2 exp(-x^2) = sqrt(pi)/2"""
        assert gaussian_moment(SymPoly.constant(1, 1), laguerre_1) == ExactScalar.pi_power(1) * Fraction(1, 2)


class TestGramInner:
    """Tests for inner products of symmetric polynomials"""

    def test_linear_norm(self, hermite_2):
        """<m10, m10> = pi omega^-3"""
        m10 = msym((1, 0))
        assert gram_inner(m10, m10, hermite_2) == pi_times(1)
        assert gram_inner(m10, m10, Params('A', 2, g0=1, omega=2)) == pi_times(Fraction(1, 8))

    def test_odd_integrand(self, hermite_2):
        """<m10, 1> = 0"""
        assert gram_inner(msym((1, 0)), SymPoly.constant(2, 1), hermite_2).is_zero()

    def test_gram_matrix_is_symmetric(self, hermite_2):
        """The reduced Gram matrix of m_mu is symmetric"""
        basis = [Partition(mu) for mu in [(0, 0), (1, 0), (2, 0), (1, 1)]]
        matrix = gram_matrix(basis, hermite_2)
        for i in range(len(basis)):
            for j in range(len(basis)):
                assert matrix[i][j] == matrix[j][i]
        assert matrix[0][1] == 0


class TestExactSolves:
    """Tests for the sympy-backed exact solvers"""

    def test_square_solve(self):
        """2a + b = 3, a - b = 0"""
        assert solve_exact([[2, 1], [1, -1]], [3, 0]) == [1, 1]

    def test_singular(self):
        """Dependent rows raise"""
        with pytest.raises(SingularSystemError):
            solve_exact([[1, 2], [2, 4]], [1, 2])

    def test_overdetermined_unique(self):
        """Consistent extra rows are accepted"""
        assert solve_unique([[1, 0], [0, 1], [1, 1]], [Fraction(1, 2), 2, Fraction(5, 2)]) == [Fraction(1, 2), 2]

    def test_inconsistent(self):
        """Contradicting rows raise"""
        with pytest.raises(InconsistentSystemError):
            solve_unique([[1], [1]], [1, 2])

    def test_underdetermined(self):
        """Free parameters raise"""
        with pytest.raises(SingularSystemError):
            solve_unique([[1, 1]], [1])
