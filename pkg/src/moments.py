#!/usr/bin/env python3
"""
Exact Gaussian moments and Gram inner products for integer couplings.

With integer g0, g1 the non-Gaussian part of the weight is a polynomial, so
every integral reduces to one-variable moments
    int x^(2k) exp(-omega x^2) dx = (2k-1)!! / (2 omega)^k * sqrt(pi/omega).
All moments share the factor (pi/omega)^(n/2); the rational remainder is
called the reduced moment.
"""

import threading
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, Tuple

from .logger import get_logger
from .partitions import Partition
from .polynomial import Polynomial
from .scalars import ExactScalar, Params
from .sympoly import msym

logger = get_logger(__name__)


def weight_polynomial(params: Params) -> Polynomial:
    """Polynomial part of the weight: prod (x_j - x_k)^2g0, or prod (x_j^2 - x_k^2)^2g0 x_j^2g1"""
    params.require_integer_couplings("the polynomial weight")
    n = params.n
    g0, g1 = int(params.g0), int(params.g1)
    x = [Polynomial.variable(n, j) for j in range(n)]
    result = Polynomial.constant(n, 1)
    for j in range(n):
        for k in range(j + 1, n):
            factor = x[j] - x[k] if params.family == 'A' else x[j] * x[j] - x[k] * x[k]
            result = result * factor ** (2 * g0)
    if params.family == 'B' and g1:
        monomial = Polynomial.monomial([2 * g1] * n)
        result = result * monomial
    return result


class GaussianMoments:
    """Memoized exact moments of the measure weight(x) exp(-omega |x|^2) dx"""

    def __init__(self, params: Params):
        self.params = params
        self.weight = weight_polynomial(params)
        self.scale = Fraction(1) / (2 * params.omega)
        self._cache: Dict[Tuple[int, ...], Fraction] = {}
        self._lock = threading.Lock()
        logger.debug(f"Gaussian moments for {params}: weight has {len(self.weight)} terms")

    def monomial_moment(self, exps: Tuple[int, ...]) -> Fraction:
        """Reduced moment of x^exps against the bare Gaussian"""
        if any(a % 2 for a in exps):
            return Fraction(0)
        value = Fraction(1)
        for a in exps:
            value *= prod(range(a - 1, 0, -2)) * self.scale ** (a // 2)
        return value

    def weighted_moment(self, exps: Tuple[int, ...]) -> Fraction:
        """Reduced moment of x^exps against the full weight"""
        with self._lock:
            cached = self._cache.get(exps)
        if cached is not None:
            return cached
        value = Fraction(0)
        for w, c in self.weight.terms.items():
            value += c * self.monomial_moment(tuple(a + b for a, b in zip(exps, w)))
        with self._lock:
            self._cache[exps] = value
        return value

    def reduced_moment(self, p: Polynomial) -> Fraction:
        return sum((c * self.weighted_moment(e) for e, c in p.terms.items()), Fraction(0))

    def reduced_inner(self, f: Polynomial, g: Polynomial) -> Fraction:
        total = Fraction(0)
        for a, ca in f.terms.items():
            for b, cb in g.terms.items():
                total += ca * cb * self.weighted_moment(tuple(x + y for x, y in zip(a, b)))
        return total

    def reduced_inner_msym(self, nu: Partition, g: Polynomial, even: bool = False) -> Fraction:
        """<m_nu, g> for symmetric g, using one orbit representative"""
        exps = tuple(2 * a for a in nu) if even else tuple(nu)
        representative = Polynomial.monomial(exps)
        return nu.orbit_size() * self.reduced_inner(representative, g)

    def normalization(self) -> ExactScalar:
        """(pi/omega)^(n/2)"""
        n = self.params.n
        return ExactScalar.pi_power(n, self.params.omega) * ExactScalar.omega_power(Fraction(-n, 2), self.params.omega)

    def moment(self, p: Polynomial) -> ExactScalar:
        return self.normalization() * self.reduced_moment(p)

    def inner(self, f: Polynomial, g: Polynomial) -> ExactScalar:
        return self.normalization() * self.reduced_inner(f, g)


@lru_cache(maxsize=64)
def get_moments(params: Params) -> GaussianMoments:
    return GaussianMoments(params)


def gaussian_moment(p: Polynomial, params: Params) -> ExactScalar:
    """int p(x) Delta(x) dx, exactly"""
    return get_moments(params).moment(p)


def gram_inner(f: Polynomial, g: Polynomial, params: Params) -> ExactScalar:
    """<f, g> = int f g Delta dx for real polynomials"""
    return get_moments(params).inner(f, g)


def gram_matrix(basis, params: Params):
    """Reduced Gram matrix of monomial-symmetric functions indexed by partitions"""
    moments = get_moments(params)
    polys = [msym(mu, params.n, params.even) for mu in basis]
    return [[moments.reduced_inner_msym(mu, q, params.even) for q in polys] for mu in basis]
