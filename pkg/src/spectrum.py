#!/usr/bin/env python3
"""
Calogero eigenfunctions psi = sqrt(Delta) p_lambda and a finite-difference
check of the Hamiltonian H_1 psi = E_1(lambda) psi.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
import sympy

from .construct import construct_monic
from .errors import InvalidParameterError, SingularPointError
from .linalg import from_sympy, to_sympy
from .logger import get_logger
from .operators import eigenvalue_E
from .partitions import Partition
from .reports import CheckResult
from .scalars import Params, format_rational

logger = get_logger(__name__)

SINGULAR_MARGIN = 10


def ground_energy(params: Params) -> Fraction:
    """E_0^A = omega n (1 + g0 (n-1)); E_0^B = omega n (1 + 2 g0 (n-1) + 2 g1)"""
    n, g0, omega = params.n, params.g0, params.omega
    if params.family == 'A':
        return omega * n * (1 + g0 * (n - 1))
    return omega * n * (1 + 2 * g0 * (n - 1) + 2 * params.g1)


@lru_cache(maxsize=None)
def ground_energy_symbolic(params: Params) -> Fraction:
    """E_0 from (-Laplacian + V) sqrt(Delta) = E_0 sqrt(Delta), simplified with sympy"""
    n = params.n
    g0, g1, omega = (to_sympy(v) for v in (params.g0, params.g1, params.omega))
    x = sympy.symbols(f"x1:{n + 1}", positive=True)
    log_psi = -omega * sum(v ** 2 for v in x) / 2
    potential = omega ** 2 * sum(v ** 2 for v in x)
    for j in range(n):
        for k in range(j + 1, n):
            log_psi += g0 * sympy.log(x[j] - x[k])
            potential += 2 * g0 * (g0 - 1) / (x[j] - x[k]) ** 2
            if params.family == 'B':
                log_psi += g0 * sympy.log(x[j] + x[k])
                potential += 2 * g0 * (g0 - 1) / (x[j] + x[k]) ** 2
    if params.family == 'B':
        for v in x:
            log_psi += g1 * sympy.log(v)
            potential += g1 * (g1 - 1) / v ** 2
    # -psi''/psi = -(log psi)'' - ((log psi)')^2
    kinetic = -sum(sympy.diff(log_psi, v, 2) + sympy.diff(log_psi, v) ** 2 for v in x)
    energy = sympy.simplify(sympy.together(kinetic + potential))
    if energy.free_symbols:
        raise InvalidParameterError(f"ground state energy did not reduce to a constant: {energy}")
    return from_sympy(energy)


def _singular_distance(points: np.ndarray, params: Params) -> np.ndarray:
    """Distance of each point to the nearest singular hyperplane of the weight"""
    m, n = points.shape
    distance = np.full(m, np.inf)
    if params.g0 != 0:
        for j in range(n):
            for k in range(j + 1, n):
                distance = np.minimum(distance, np.abs(points[:, j] - points[:, k]))
                if params.family == 'B':
                    distance = np.minimum(distance, np.abs(points[:, j] + points[:, k]))
    if params.family == 'B' and params.g1 != 0:
        distance = np.minimum(distance, np.abs(points).min(axis=1))
    return distance


def log_weight(points, params: Params) -> np.ndarray:
    """log Delta(x) for points of shape (m, n)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != params.n:
        raise InvalidParameterError(f"points have {points.shape[1]} coordinates, expected {params.n}")
    g0, g1, omega = float(params.g0), float(params.g1), float(params.omega)
    with np.errstate(divide='ignore'):
        value = -omega * np.sum(points ** 2, axis=1)
        n = params.n
        if g0:
            for j in range(n):
                for k in range(j + 1, n):
                    if params.family == 'A':
                        value += 2 * g0 * np.log(np.abs(points[:, j] - points[:, k]))
                    else:
                        value += 2 * g0 * np.log(np.abs(points[:, j] ** 2 - points[:, k] ** 2))
        if params.family == 'B' and g1:
            value += 2 * g1 * np.sum(np.log(np.abs(points)), axis=1)
    return value


def weight_value(x: Sequence[float], params: Params) -> float:
    """Delta^C(x) at a single point"""
    return float(np.exp(log_weight(np.asarray(x, dtype=float)[None, :], params))[0])


def wavefunction_eval(lam, params: Params, points) -> Tuple[np.ndarray, np.ndarray]:
    """(p_lambda(x), psi_lambda(x)) for points of shape (m, n)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    p = construct_monic(Partition(lam), params).poly.evaluate_float(points)
    psi = np.exp(0.5 * log_weight(points, params)) * p
    return p, psi


def _potential(points: np.ndarray, params: Params) -> np.ndarray:
    g0, g1, omega = float(params.g0), float(params.g1), float(params.omega)
    value = omega ** 2 * np.sum(points ** 2, axis=1)
    n = params.n
    for j in range(n):
        for k in range(j + 1, n):
            value += 2 * g0 * (g0 - 1) / (points[:, j] - points[:, k]) ** 2
            if params.family == 'B':
                value += 2 * g0 * (g0 - 1) / (points[:, j] + points[:, k]) ** 2
    if params.family == 'B':
        value += g1 * (g1 - 1) * np.sum(points ** -2.0, axis=1)
    return value


def hamiltonian_residual(lam, params: Params, points, h: float = 1e-3) -> np.ndarray:
    """
    |H_1 psi - E_1(lambda) psi| at each point, with a fourth-order central
    difference for the Laplacian.
    """
    lam = Partition(lam)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    distance = _singular_distance(points, params)
    if np.any(distance <= SINGULAR_MARGIN * h):
        bad = int(np.argmin(distance))
        raise SingularPointError(f"point {points[bad].tolist()} lies within {SINGULAR_MARGIN}h of a singular hyperplane")

    def psi(at):
        return wavefunction_eval(lam, params, at)[1]

    centre = psi(points)
    laplacian = np.zeros_like(centre)
    stencil = ((-2, -1.0), (-1, 16.0), (1, 16.0), (2, -1.0))
    for j in range(params.n):
        total = -30.0 * centre
        for step, weight in stencil:
            shifted = points.copy()
            shifted[:, j] += step * h
            total = total + weight * psi(shifted)
        laplacian += total / (12.0 * h * h)
    energy = float(ground_energy(params))
    eigenvalue = float(eigenvalue_E(1, lam, params))
    h_psi = -laplacian + (_potential(points, params) - energy) * centre
    return np.abs(h_psi - eigenvalue * centre)


def sample_points(params: Params, count: int, rng: np.random.Generator, h: float = 1e-3) -> np.ndarray:
    """Seeded points in the bulk of the weight, kept away from singular hyperplanes"""
    radius = 1.5 / np.sqrt(float(params.omega))
    accepted = []
    while len(accepted) < count:
        candidate = rng.uniform(-radius, radius, size=(1, params.n))
        if _singular_distance(candidate, params)[0] > 20 * SINGULAR_MARGIN * h:
            accepted.append(candidate[0])
    return np.array(accepted)


def spectrum_check(lam, params: Params, rng: np.random.Generator, count: int = 10,
                   h: float = 1e-3, tol: float = 1e-5, points: Optional[np.ndarray] = None) -> CheckResult:
    """Finite-difference Hamiltonian residual plus the exact ground energy"""
    if points is None:
        points = sample_points(params, count, rng, h)
    residual = hamiltonian_residual(lam, params, points, h)
    closed = ground_energy(params)
    derived = ground_energy_symbolic(params)
    max_residual = float(np.max(residual)) if residual.size else 0.0
    logger.debug(f"Spectrum {tuple(lam)} {params}: max residual {max_residual:.3e}")
    return CheckResult(max_residual <= tol and closed == derived, {
        'maxResidual': max_residual,
        'groundEnergy': format_rational(closed),
        'groundEnergyDerived': format_rational(derived),
        'points': len(points),
    })
