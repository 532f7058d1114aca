#!/usr/bin/env python3
"""
Floating-point layer for the beta -> 0 limit of the continuous Hahn and
Wilson type weights: complex log-gamma, the deformed weights, the gamma
limit formulas with their rates, the domination bounds and the convergence
of moments.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .errors import InvalidParameterError, QuadratureError, SingularPointError
from .logger import get_logger
from .moments import gaussian_moment
from .polynomial import Polynomial
from .reports import CheckResult
from .scalars import Params, parse_rational

logger = get_logger(__name__)

BETA_FLOOR = 1e-4
BETA_LADDER = (1e-1, 10 ** -1.5, 1e-2)
BOUND_BETAS = (0.9, 0.5, 0.1, 0.01)

LANCZOS_G = 7
LANCZOS_COEFFS = np.array([
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
])
LOG_SQRT_2PI = 0.5 * np.log(2 * np.pi)


@dataclass(frozen=True)
class BetaParams:
    """Parameters of the beta-deformed weight; omega = varpi + varpi' and g1 = gg1 + gg1'"""
    family: str
    n: int
    g0: Fraction = Fraction(0)
    varpi: Fraction = Fraction(1, 2)
    varpi_prime: Fraction = Fraction(1, 2)
    gg1: Fraction = Fraction(0)
    gg1_prime: Fraction = Fraction(0)
    beta: float = 0.1

    def __post_init__(self):
        for name in ('g0', 'varpi', 'varpi_prime', 'gg1', 'gg1_prime'):
            object.__setattr__(self, name, parse_rational(getattr(self, name), name))
        if self.varpi <= 0 or self.varpi_prime <= 0:
            raise InvalidParameterError("varpi and varpi' must both be positive")
        if self.gg1 < 0 or self.gg1_prime < 0 or self.g0 < 0:
            raise InvalidParameterError("couplings must be nonnegative")
        if not 0 < self.beta < 1:
            raise InvalidParameterError(f"beta must lie in (0, 1), got {self.beta}")
        if self.beta < BETA_FLOOR:
            raise InvalidParameterError(f"beta={self.beta} is below the floor {BETA_FLOOR}")
        # family validation and g1 = 0 for A come from Params
        self.params

    @property
    def omega(self) -> Fraction:
        return self.varpi + self.varpi_prime

    @property
    def g1(self) -> Fraction:
        return self.gg1 + self.gg1_prime

    @property
    def params(self) -> Params:
        return Params(self.family, self.n, self.g0, self.g1, self.omega)

    def with_beta(self, beta: float) -> 'BetaParams':
        return replace(self, beta=float(beta))


# ----------------------------------------------------------------------
# Complex log-gamma


def _lanczos(z: np.ndarray) -> np.ndarray:
    """log Gamma(z) for Re z >= 1/2"""
    z = z - 1
    series = np.full(z.shape, LANCZOS_COEFFS[0], dtype=complex)
    for i in range(1, len(LANCZOS_COEFFS)):
        series += LANCZOS_COEFFS[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (z + 0.5) * np.log(t) - t + np.log(series)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log sin(pi z) modulo 2 pi i, without overflow for large |Im z|"""
    lower = z.imag < 0
    w = np.where(lower, np.conj(z), z)
    value = -1j * np.pi * w + np.log(-np.expm1(2j * np.pi * w)) - np.log(2j)
    return np.where(lower, np.conj(value), value)


def log_gamma_lanczos(z):
    """Complex log Gamma (Lanczos, g = 7) with shift and reflection; modulo 2 pi i"""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    reflect = z.real < -0.5
    shift = ~reflect & (z.real < 0.5)
    direct = ~(reflect | shift)
    out[direct] = _lanczos(z[direct])
    out[shift] = _lanczos(z[shift] + 1) - np.log(z[shift])
    out[reflect] = np.log(np.pi) - _log_sin_pi(z[reflect]) - _lanczos(1 - z[reflect])
    return out[0] if scalar else out


def _stirling_scalar(z: complex, terms: int, shift_to: float) -> complex:
    correction = 0j
    while abs(z) < shift_to:
        correction -= np.log(z)
        z += 1
    bernoulli = special.bernoulli(2 * terms)
    series = sum(bernoulli[2 * k] / (2 * k * (2 * k - 1) * z ** (2 * k - 1)) for k in range(1, terms + 1))
    return (z - 0.5) * np.log(z) - z + LOG_SQRT_2PI + series + correction


def log_gamma_stirling(z, terms: int = 8, shift_to: float = 15.0):
    """Complex log Gamma from the Stirling series, shifting small arguments upward"""
    z = np.asarray(z, dtype=complex)
    values = np.array([_stirling_scalar(complex(v), terms, shift_to) for v in np.atleast_1d(z).ravel()])
    return values[0] if z.ndim == 0 else values.reshape(z.shape)


def stirling_remainder(z):
    """R(z) = log Gamma(z) - (z - 1/2) log z + z - log sqrt(2 pi)"""
    z = np.asarray(z, dtype=complex)
    return special.loggamma(z) - ((z - 0.5) * np.log(z) - z + LOG_SQRT_2PI)


def stirling_remainder_bound(z):
    """1 / (12 |z| cos^2(theta/2))"""
    z = np.asarray(z, dtype=complex)
    return 1.0 / (12.0 * np.abs(z) * np.cos(np.angle(z) / 2) ** 2)


def log_gamma_agreement(points, tol: float = 1e-10) -> CheckResult:
    """Lanczos, Stirling and scipy log-gamma agree (relative, real parts) for |z| > 10"""
    points = np.asarray(points, dtype=complex)
    lanczos = log_gamma_lanczos(points).real
    stirling = log_gamma_stirling(points).real
    reference = special.loggamma(points).real
    scale = np.maximum(np.abs(reference), 1.0)
    worst = float(np.max(np.maximum(np.abs(lanczos - stirling), np.abs(lanczos - reference)) / scale))
    remainder_ok = bool(np.all(np.abs(stirling_remainder(points)) <= stirling_remainder_bound(points) * (1 + 1e-9)))
    return CheckResult(worst <= tol and remainder_ok, {
        'maxRelativeDisagreement': worst,
        'remainderBound': remainder_ok,
    })


# ----------------------------------------------------------------------
# Limit formulas


def log_delta(alpha: float, beta: float) -> float:
    """log delta(alpha, beta) = (1 - log 2 pi)/2 + (1 + log(alpha beta^2)) (1/(alpha beta^2) - 1/2)"""
    ab2 = alpha * beta * beta
    return 0.5 * (1.0 - np.log(2 * np.pi)) + (1.0 + np.log(ab2)) * (1.0 / ab2 - 0.5)


def log_gamma_modulus(alpha: float, y, beta: float):
    """log(delta(alpha, beta) |Gamma(1/(alpha beta^2) + i y/beta)|)"""
    y = np.asarray(y, dtype=float)
    z = 1.0 / (alpha * beta * beta) + 1j * y / beta
    return log_delta(alpha, beta) + log_gamma_lanczos(z).real


def gamma_modulus_limit(alpha: float, y, beta: float):
    """delta(alpha, beta) |Gamma(1/(alpha beta^2) + i y/beta)|, tending to exp(-alpha y^2/2)"""
    if alpha <= 0:
        raise InvalidParameterError(f"alpha must be positive, got {alpha}")
    return np.exp(log_gamma_modulus(alpha, y, beta))


def log_gamma_ratio(a: float, b: float, y, beta: float):
    """log |beta^a Gamma(a + b + i y/beta) / Gamma(b + i y/beta)|"""
    y = np.asarray(y, dtype=float)
    if a == 0:
        return np.zeros_like(y)
    if b == 0:
        pole = y == 0
        safe = np.where(pole, 1.0, y)
        value = a * np.log(beta) + (log_gamma_lanczos(a + 1j * safe / beta)
                                    - log_gamma_lanczos(1j * safe / beta)).real
        return np.where(pole, -np.inf, value)
    return a * np.log(beta) + (log_gamma_lanczos(a + b + 1j * y / beta)
                               - log_gamma_lanczos(b + 1j * y / beta)).real


def gamma_ratio_limit(a: float, b: float, y, beta: float):
    """|beta^a Gamma(a + b + i y/beta) / Gamma(b + i y/beta)|, tending to |y|^a"""
    if a < 0 or b < 0:
        raise InvalidParameterError(f"a and b must be nonnegative, got a={a}, b={b}")
    return np.exp(log_gamma_ratio(a, b, y, beta))


def integer_ratio_product(a: int, b: float, y, beta: float):
    """prod_{m<a} |(m + b) beta + i y|, the value of the ratio for integer a"""
    y = np.asarray(y, dtype=float)
    value = np.ones_like(y)
    for m in range(a):
        value = value * np.abs((m + b) * beta + 1j * y)
    return value


def _ratio_integrand(t: float, a: float) -> float:
    if t == 0:
        return a * (a - 1) / 2
    return (a + np.expm1(-a * t) / -np.expm1(-t)) / t


def gamma_ratio_integral(a: float, z: complex, limit: int = 200) -> complex:
    """
    log(Gamma(a+z)/Gamma(z)) from
        a log z + int_0^inf e^(-z t) (a - (1 - e^(-a t))/(1 - e^(-t))) dt/t,  Re z > 0
    """
    z = complex(z)
    if z.real <= 0:
        raise InvalidParameterError("the integral representation needs Re z > 0")

    def part(kind):
        def f(t):
            value = np.exp(-z * t) * _ratio_integrand(t, a)
            return value.real if kind == 'real' else value.imag
        result, error = integrate.quad(f, 0, np.inf, limit=limit)
        if not np.isfinite(result):
            raise QuadratureError(f"ratio integral diverged for a={a}, z={z}")
        return result

    return a * np.log(z) + part('real') + 1j * part('imag')


def ratio_integral_check(a: float, points: Sequence[complex] = (1.0, 0.5 + 2j, 3 - 1j),
                         tol: float = 1e-7, limit: int = 200) -> CheckResult:
    """Integral representation of log(Gamma(a+z)/Gamma(z)) against the log-gamma engine, real parts"""
    worst = 0.0
    for z in points:
        integral = gamma_ratio_integral(a, z, limit)
        direct = log_gamma_lanczos(a + complex(z)) - log_gamma_lanczos(complex(z))
        worst = max(worst, abs(integral.real - float(np.real(direct))))
    return CheckResult(worst <= tol, {'check': 'ratio-integral', 'a': a, 'maxAbsError': worst})


def ratio_envelope(a: float, b: float, limit: int = 200) -> float:
    """Constant int_0^inf e^(-b t) |a - (1 - e^(-a t))/(1 - e^(-t))| dt/t, b > 0"""
    if b <= 0:
        raise InvalidParameterError("the envelope constant needs b > 0")
    value, _ = integrate.quad(lambda t: np.exp(-b * t) * abs(_ratio_integrand(t, a)), 0, np.inf, limit=limit)
    return value


def ratio_bound(a: float, b: float, y, limit: int = 200):
    """Polynomial envelope of the ratio, uniform in 0 < beta < 1; b = 0 goes through b = 1"""
    y = np.asarray(y, dtype=float)
    if b == 0:
        b = 1.0
    return (b * b + y * y) ** (a / 2) * np.exp(ratio_envelope(a, b, limit))


def exponent_F(alpha: float, y, beta: float):
    """F_beta(y) = (y/beta) arctan(alpha beta y) - log(1 + alpha^2 beta^2 y^2)/(2 alpha beta^2)"""
    y = np.asarray(y, dtype=float)
    return y / beta * np.arctan(alpha * beta * y) - np.log1p((alpha * beta * y) ** 2) / (2 * alpha * beta * beta)


def exponent_G(alpha: float, beta: float) -> float:
    return float(np.exp(alpha * beta * beta / 6))


# ----------------------------------------------------------------------
# Weights


def _pairs(n: int):
    return [(j, k) for j in range(n) for k in range(j + 1, n)]


def log_weight_beta(x, bp: BetaParams):
    """log Delta_beta for points of shape (n,) or (m, n)"""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[1] != bp.n:
        raise InvalidParameterError(f"points have {x.shape[1]} coordinates, expected {bp.n}")
    beta = bp.beta
    g0 = float(bp.g0)
    value = np.zeros(x.shape[0])
    for j in range(bp.n):
        value += 2 * log_gamma_modulus(float(bp.varpi), x[:, j], beta)
        value += 2 * log_gamma_modulus(float(bp.varpi_prime), x[:, j], beta)
        if bp.family == 'B':
            value += 2 * log_gamma_ratio(float(bp.gg1), 0.0, x[:, j], beta)
            value += 2 * log_gamma_ratio(float(bp.gg1_prime), 0.5, x[:, j], beta)
    if g0:
        for j, k in _pairs(bp.n):
            value += 2 * log_gamma_ratio(g0, 0.0, x[:, j] - x[:, k], beta)
            if bp.family == 'B':
                value += 2 * log_gamma_ratio(g0, 0.0, x[:, j] + x[:, k], beta)
    return value[0] if single else value


def weight_beta(x, bp: BetaParams):
    """Delta^C_beta(x), evaluated in log space"""
    return np.exp(log_weight_beta(x, bp))


def weight_limit(x, bp: BetaParams):
    """Delta^C(x) at omega = varpi + varpi', g1 = gg1 + gg1'"""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    omega, g0, g1 = float(bp.omega), float(bp.g0), float(bp.g1)
    with np.errstate(divide='ignore'):
        value = -omega * np.sum(x * x, axis=1)
        for j, k in _pairs(bp.n):
            if g0:
                if bp.family == 'A':
                    value += 2 * g0 * np.log(np.abs(x[:, j] - x[:, k]))
                else:
                    value += 2 * g0 * np.log(np.abs(x[:, j] ** 2 - x[:, k] ** 2))
        if bp.family == 'B' and g1:
            value += 2 * g1 * np.sum(np.log(np.abs(x)), axis=1)
    result = np.exp(value)
    return result[0] if single else result


# ----------------------------------------------------------------------
# Checks


def _rate(betas: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Observed order from the two largest betas"""
    if len(betas) < 2 or errors[0] <= 0 or errors[1] <= 0:
        return None
    return float(np.log(errors[0] / errors[1]) / np.log(betas[0] / betas[1]))


def _bounded_ratios(betas: Sequence[float], errors: Sequence[float], order: int, slack: float = 10.0) -> bool:
    ratios = [e / b ** order for b, e in zip(betas, errors)]
    return max(ratios) <= slack * max(ratios[0], 1e-300) or max(errors) < 1e-12


def gamma_modulus_check(alpha: float, y: float, betas: Sequence[float] = (1e-1, 1e-2, 1e-3),
                        tol: float = 1e-3) -> CheckResult:
    """|delta |Gamma| - exp(-alpha y^2/2)| is O(beta^2) and below tol at beta = 1e-2"""
    target = np.exp(-alpha * y * y / 2)
    errors = [abs(float(gamma_modulus_limit(alpha, y, beta)) - target) for beta in betas]
    at_hundredth = [e for b, e in zip(betas, errors) if abs(b - 1e-2) < 1e-15]
    ok = _bounded_ratios(betas, errors, 2) and all(e <= tol for e in at_hundredth)
    return CheckResult(ok, {
        'check': 'gamma-modulus',
        'beta': list(betas),
        'maxAbsError': max(errors),
        'rateEstimate': _rate(betas, errors),
    })


def gamma_ratio_check(a: float, b: float, y: float, betas: Sequence[float] = (1e-1, 1e-2, 1e-3)) -> CheckResult:
    """|beta^a Gamma(a+b+iy/beta)/Gamma(b+iy/beta)| - |y|^a is O(beta)"""
    if y == 0 and a > 0:
        raise SingularPointError("the ratio rate is checked away from y = 0")
    target = abs(y) ** a
    errors = [abs(float(gamma_ratio_limit(a, b, y, beta)) - target) for beta in betas]
    return CheckResult(_bounded_ratios(betas, errors, 1), {
        'check': 'gamma-ratio',
        'beta': list(betas),
        'maxAbsError': max(errors),
        'rateEstimate': _rate(betas, errors),
    })


def bound_checks(alpha: float = 1.0, betas: Sequence[float] = BOUND_BETAS, grid_points: int = 100,
                 ratio_parameters: Sequence[Tuple[float, float]] = ((2, 0.5), (0.5, 0.0), (1.5, 1.0)),
                 quad_limit: int = 200) -> CheckResult:
    """
    On a y-grid and for each beta: the modulus bound exp(-F) G, the
    exponential tail of exp(-F), F(0) = 0 and F(1/alpha) > 1/(3 alpha), the
    product form and envelope for integer a and the integral envelope for
    general a.
    """
    y = np.linspace(-12.0 / alpha, 12.0 / alpha, grid_points)
    violations: List[str] = []
    worst = 0.0
    for beta in betas:
        F = exponent_F(alpha, y, beta)
        log_modulus = log_gamma_modulus(alpha, y, beta)
        excess = log_modulus - (-F + np.log(exponent_G(alpha, beta)))
        worst = max(worst, float(np.max(excess)))
        if np.any(excess > 1e-9):
            violations.append(f"modulus bound at beta={beta}")
        inner = np.abs(y) < 1 / alpha
        if np.any(np.exp(-F[inner]) > 1 + 1e-12):
            violations.append(f"exp(-F) <= 1 at beta={beta}")
        if np.any(np.exp(-F[~inner]) > np.exp(-np.abs(y[~inner]) / 3) * (1 + 1e-12)):
            violations.append(f"exponential tail at beta={beta}")
        if float(exponent_F(alpha, 0.0, beta)) != 0.0:
            violations.append(f"F(0) != 0 at beta={beta}")
        if not float(exponent_F(alpha, 1 / alpha, beta)) > 1 / (3 * alpha):
            violations.append(f"F(1/alpha) <= 1/(3 alpha) at beta={beta}")

        for a, b in ratio_parameters:
            ratio = gamma_ratio_limit(a, b, y, beta)
            if float(a).is_integer():
                product = integer_ratio_product(int(a), b, y, beta)
                if not np.allclose(ratio, product, rtol=1e-10, atol=0):
                    violations.append(f"integer ratio product a={a}, b={b}, beta={beta}")
                if np.any(ratio > ((a + b) ** 2 + y * y) ** (a / 2) * (1 + 1e-12)):
                    violations.append(f"integer ratio envelope a={a}, b={b}, beta={beta}")
            if np.any(ratio > ratio_bound(a, b, y, quad_limit) * (1 + 1e-9)):
                violations.append(f"ratio envelope a={a}, b={b}, beta={beta}")

    if violations:
        logger.warning(f"Bound violations: {violations}")
    return CheckResult(not violations, {
        'check': 'bounds',
        'beta': list(betas),
        'violations': violations,
        'maxLogExcess': worst,
    })


def pointwise_convergence(x: Sequence[float], bp: BetaParams, ladder: Sequence[float] = BETA_LADDER,
                          rel_tol: float = 1e-3) -> CheckResult:
    """|Delta_beta(x) - Delta(x)| decreases along the ladder and ends within rel_tol"""
    x = np.asarray(x, dtype=float)
    target = float(weight_limit(x, bp))
    errors = [abs(float(weight_beta(x, bp.with_beta(beta))) - target) for beta in ladder]
    monotone = all(later <= earlier for earlier, later in zip(errors, errors[1:]))
    relative = errors[-1] / target if target else errors[-1]
    return CheckResult(monotone and relative <= rel_tol, {
        'check': 'pointwise',
        'beta': list(ladder),
        'maxAbsError': max(errors),
        'finalRelativeError': relative,
        'rateEstimate': _rate(ladder, errors),
    })


def quadrature_radius(omega: float, degree: int) -> float:
    """Truncation radius from the Gaussian envelope"""
    return max(4.0 / np.sqrt(omega), np.sqrt((40.0 + 2.0 * degree) / omega))


def beta_moment(p: Polynomial, bp: BetaParams, quad_limit: int = 200) -> float:
    """int p Delta_beta dx over the truncated box, for n <= 2"""
    radius = quadrature_radius(float(bp.omega), max(p.degree(), 0))
    options = {'limit': quad_limit, 'epsabs': 1e-10, 'epsrel': 1e-9}
    if bp.n == 1:
        value, error = integrate.quad(
            lambda t: float(p.evaluate_float([t])) * float(weight_beta([t], bp)),
            -radius, radius, **options)
    elif bp.n == 2:
        value, error = integrate.nquad(
            lambda s, t: float(p.evaluate_float([s, t])) * float(weight_beta([s, t], bp)),
            [[-radius, radius], [-radius, radius]], opts=[options, options])
    else:
        raise InvalidParameterError(f"moment quadrature supports n <= 2, got n={bp.n}")
    if error > 1e-6 * max(1.0, abs(value)):
        raise QuadratureError(f"quadrature error {error:.2e} for value {value:.6e}")
    return value


def moment_convergence(p: Polynomial, bp: BetaParams, betas: Sequence[float] = (1e-1, 1e-2),
                       rel_tol: float = 1e-3, quad_limit: int = 200) -> CheckResult:
    """int p Delta_beta dx approaches the exact Gaussian moment; integer couplings"""
    if bp.n > 2:
        raise InvalidParameterError(f"moment convergence is checked for n <= 2, got n={bp.n}")
    if p.degree() > 6:
        raise InvalidParameterError(f"moment convergence is checked for degree <= 6, got {p.degree()}")
    exact = gaussian_moment(p, bp.params).to_float()
    values = [beta_moment(p, bp.with_beta(beta), quad_limit) for beta in betas]
    errors = [abs(v - exact) for v in values]
    relative = errors[-1] / abs(exact) if exact else errors[-1]
    logger.debug(f"Moment convergence for {bp.params}: exact {exact:.10g}, last {values[-1]:.10g}")
    return CheckResult(relative <= rel_tol, {
        'check': 'moment',
        'beta': list(betas),
        'exact': exact,
        'maxAbsError': max(errors),
        'finalRelativeError': relative,
        'rateEstimate': _rate(betas, errors),
    })
