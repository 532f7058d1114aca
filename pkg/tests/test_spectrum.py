#!/usr/bin/env python3
"""
Tests for ground-state energies, wavefunction evaluation and the
finite-difference Hamiltonian residual
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import InvalidParameterError, SingularPointError
from src.scalars import Params
from src.spectrum import (ground_energy, ground_energy_symbolic, hamiltonian_residual, log_weight,
                          sample_points, spectrum_check, wavefunction_eval, weight_value)


# ============================================
# Ground energies
# ============================================

class TestGroundEnergy:
    """Tests for E_0"""

    def test_closed_form_values(self, hermite_2):
        """E_0 = omega n (1 + g0 (n-1)) for A; the B form adds the wall"""
        assert ground_energy(hermite_2) == 6
        assert ground_energy(Params('B', 2, 1, 1, 2)) == 2 * 2 * (1 + 2 + 2)

    @pytest.mark.parametrize("params", [
        Params('A', 1), Params('A', 2, 1), Params('A', 3, "1/2", 0, "2/5"), Params('B', 2, 1, "3/2"),
    ])
    def test_symbolic_matches_closed_form(self, params):
        """sympy reduces (-Laplacian + V) sqrt(Delta) / sqrt(Delta) to the closed form"""
        assert ground_energy_symbolic(params) == ground_energy(params)


# ============================================
# Wavefunctions
# ============================================

class TestWavefunction:
    """Tests for p_lambda and psi_lambda at float points"""

    def test_ground_state_is_root_weight(self, hermite_2):
        """psi_0 = sqrt(Delta)"""
        points = np.array([[0.3, -0.4], [1.0, 0.2]])
        p, psi = wavefunction_eval((0, 0), hermite_2, points)
        assert np.allclose(p, 1.0)
        assert np.allclose(psi, np.exp(0.5 * log_weight(points, hermite_2)))

    def test_one_variable_hermite(self, hermite_1):
        """p_(2)(0) = -1/2"""
        p, psi = wavefunction_eval((2,), hermite_1, [[0.0]])
        assert p[0] == pytest.approx(-0.5)
        assert psi[0] == pytest.approx(-0.5)

    def test_weight_value(self, laguerre_1):
        """Delta(x) = |x|^(2 g1) exp(-omega x^2)"""
        assert weight_value([0.5], laguerre_1) == pytest.approx(0.25 * np.exp(-0.25))

    def test_wrong_shape(self, hermite_2):
        """Coordinates must match n"""
        with pytest.raises(InvalidParameterError):
            log_weight(np.zeros((2, 3)), hermite_2)


# ============================================
# Hamiltonian residual
# ============================================

class TestHamiltonianResidual:
    """Tests for |H_1 psi - E_1 psi|"""

    def test_one_variable(self, hermite_1):
        """Residual at x = 0.7 is at finite-difference accuracy"""
        residual = hamiltonian_residual((2,), hermite_1, [[0.7]])
        assert residual[0] <= 1e-6

    def test_singular_point(self, hermite_2):
        """Points within 10h of x_1 = x_2 are rejected"""
        with pytest.raises(SingularPointError):
            hamiltonian_residual((1, 0), hermite_2, [[0.5, 0.505]], h=1e-3)

    def test_sample_points_are_regular(self, laguerre_2, rng):
        """Sampled points keep their distance from the hyperplanes"""
        points = sample_points(laguerre_2, 5, rng)
        assert points.shape == (5, 2)
        assert np.all(np.abs(points[:, 0] - points[:, 1]) > 1e-2)
        assert np.all(np.abs(points[:, 0] + points[:, 1]) > 1e-2)

    @pytest.mark.parametrize("lam,params", [
        ((1, 0), Params('A', 2, 1)),
        ((1, 1), Params('B', 2, 1, 1)),
        ((3,), Params('B', 1, 0, Fraction(3, 2), 2)),
    ])
    def test_spectrum_check(self, lam, params, rng):
        """H_1 psi = E_1 psi within tolerance and E_0 agrees with its derivation"""
        result = spectrum_check(lam, params, rng, count=5)
        assert result.passed, result.details
