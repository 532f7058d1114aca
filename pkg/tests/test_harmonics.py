#!/usr/bin/env python3
"""
Tests for the Laplace-type operator L, radial polynomials and the
spherical-harmonic decomposition
"""

from fractions import Fraction

import pytest

from src.construct import construct_monic
from src.errors import InvalidParameterError
from src.harmonics import (apply_L, decompose_harmonic, decomposition_check, dunkl_projection,
                           harmonic_dimension, kummer_radial_poly, radial_in_x, radial_poly)
from src.partitions import partitions_up_to
from src.polynomial import Polynomial
from src.scalars import Params
from src.sympoly import SymPoly, msym


# ============================================
# Operator L and radial polynomials
# ============================================

class TestApplyL:
    """Tests for the generalized Laplacian"""

    def test_one_variable(self, hermite_1):
        """L x^2 = 2"""
        assert apply_L(Polynomial(1, {(2,): 1}), hermite_1) == SymPoly.constant(1, 2)

    def test_two_variable_harmonic(self, hermite_2):
        """(1/4) m_20 + m_11 is harmonic at g0 = 1"""
        y = msym((2, 0)).scale(Fraction(1, 4)) + msym((1, 1))
        assert apply_L(y, hermite_2).is_zero()

    def test_wall_term(self, laguerre_1):
        """L x^2 = 2 + 2 g1 * 2 for one variable of family B"""
        assert apply_L(msym((1,), 1, even=True), laguerre_1) == SymPoly.constant(1, 6, even=True)


class TestRadialPoly:
    """Tests for R_m(t)"""

    def test_values(self, hermite_1, hermite_2):
        """R_1 = t - 1/2 for one variable, t - 2/omega for two at g0 = 1"""
        assert radial_poly(1, 0, hermite_1) == [Fraction(-1, 2), 1]
        assert radial_poly(1, 0, hermite_2) == [-2, 1]
        assert radial_poly(0, 3, hermite_2) == [1]

    @pytest.mark.parametrize("params", [
        Params('A', 2, 1), Params('A', 3, "1/2", 0, "2/5"), Params('B', 2, "3/2", "1/2", 3),
    ])
    def test_recursion_matches_kummer(self, params):
        """The recursion equals the confluent hypergeometric closed form"""
        for m in range(4):
            for l in range(3):
                assert radial_poly(m, l, params) == kummer_radial_poly(m, l, params)

    def test_radial_in_x(self):
        """R(r^2) expands in the variables"""
        assert radial_in_x([-2, 1], 2) == msym((1, 0), 2, even=True) - 2

    def test_rejects_negative(self, hermite_2):
        """m and l are nonnegative"""
        with pytest.raises(InvalidParameterError):
            radial_poly(-1, 0, hermite_2)


class TestHarmonicDimension:
    """Tests for dimensions of symmetric harmonic spaces"""

    def test_values(self):
        """Differences of partition counts"""
        assert harmonic_dimension(0, 1, 'A') == 1
        assert harmonic_dimension(2, 1, 'A') == 0
        assert harmonic_dimension(2, 2, 'A') == 1
        assert harmonic_dimension(1, 2, 'B') == 0
        assert harmonic_dimension(-1, 2, 'B') == 0


# ============================================
# Decomposition
# ============================================

class TestDecomposition:
    """Tests for p_lambda = sum R_m(r) Y_m"""

    def test_two_variable_example(self, hermite_2):
        """p_(2,0) = Y_2 + (r^2 - 2/omega) * 3/4 at g0 = 1"""
        decomposition = decompose_harmonic((2, 0), hermite_2)
        by_m = {t.m: t for t in decomposition.terms}
        assert sorted(by_m) == [0, 1]
        assert by_m[0].harmonic == msym((2, 0)).scale(Fraction(1, 4)) + msym((1, 1))
        assert by_m[1].harmonic == SymPoly.constant(2, Fraction(3, 4))
        assert by_m[1].radial == [-2, 1]
        assert decomposition.reconstruct() == construct_monic((2, 0), hermite_2).poly

    def test_trivial_partitions(self, hermite_2):
        """lambda = 0 and lambda = (1,0) are already harmonic"""
        zero = decompose_harmonic((0, 0), hermite_2)
        assert len(zero.terms) == 1
        assert zero.terms[0].harmonic == SymPoly.constant(2, 1)
        one = decompose_harmonic((1, 0), hermite_2)
        assert [t.m for t in one.terms] == [0]
        assert one.terms[0].harmonic == msym((1, 0))

    def test_json_shape(self, laguerre_2):
        """Terms serialize with exact radial coefficients"""
        record = decompose_harmonic((1, 0), laguerre_2).to_json()
        assert record['family'] == 'B'
        assert record['lambda'] == [1, 0]
        assert all(isinstance(c, str) for term in record['terms'] for c in term['radial'])

    def test_wrong_length(self, hermite_2):
        """Partition length must match n"""
        with pytest.raises(InvalidParameterError):
            decompose_harmonic((2, 0, 0), hermite_2)

    def test_dunkl_projection(self, hermite_2):
        """The projection formula gives the same harmonic parts"""
        assert dunkl_projection((2, 0), 1, hermite_2) == SymPoly.constant(2, Fraction(3, 4))
        assert dunkl_projection((2, 0), 0, hermite_2) == msym((2, 0)).scale(Fraction(1, 4)) + msym((1, 1))
        with pytest.raises(InvalidParameterError):
            dunkl_projection((2, 0), 2, hermite_2)

    @pytest.mark.parametrize("params", [
        Params('A', 2, 1), Params('A', 3, 2, 0, "2/5"), Params('B', 2, 1, 1), Params('B', 2, "1/2", "3/2"),
    ])
    def test_full_check(self, params):
        """Harmonicity, leading part, dimensions, radial form and Dunkl agreement"""
        for lam in partitions_up_to(3, params.n):
            result = decomposition_check(lam, params)
            assert result.passed, (lam, result.details)
