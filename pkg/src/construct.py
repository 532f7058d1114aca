#!/usr/bin/env python3
"""
Construction of the monic polynomials p_lambda (Hermite type A, Laguerre
type B), their Pieri normalization, and the independent Gram-Schmidt oracle.
"""

import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Hashable, List

from .errors import InternalAssertionError, InvalidParameterError
from .linalg import solve_exact
from .logger import get_logger
from .moments import get_moments
from .operators import lowering_part
from .partitions import Partition, dominance_leq, partitions_below, partitions_of
from .polynomial import Polynomial
from .reports import CheckResult
from .scalars import LinearFactorProduct, Params, format_rational, pochhammer
from .sympoly import SymPoly, expand_in_msym, from_msym, jack_operator, msym

logger = get_logger(__name__)

NORMALIZATIONS = ('monic', 'pieri')


@dataclass(frozen=True)
class OrthoPoly:
    """Orthogonal polynomial together with the data that determines it"""
    params: Params
    lam: Partition
    poly: SymPoly
    normalization: str = 'monic'

    def to_json(self) -> Dict[str, object]:
        record = {
            'schemaVersion': 1,
            'family': self.params.family,
            'n': self.params.n,
            'lambda': list(self.lam),
            'normalization': self.normalization,
        }
        record.update(self.params.couplings())
        record.update(self.poly.to_json())
        return record


class PolynomialCache:
    """Thread-safe insert-or-get memo keyed by (params, lambda)"""

    def __init__(self):
        self._items: Dict[Hashable, SymPoly] = {}
        self._lock = threading.Lock()

    def get_or_build(self, key: Hashable, builder: Callable[[], SymPoly]) -> SymPoly:
        with self._lock:
            if key in self._items:
                return self._items[key]
        value = builder()
        with self._lock:
            return self._items.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._items.clear()

    def __len__(self):
        with self._lock:
            return len(self._items)


polynomial_cache = PolynomialCache()


def _check_lambda(lam, params: Params) -> Partition:
    lam = Partition(lam)
    if lam.n != params.n:
        raise InvalidParameterError(f"partition {tuple(lam)} does not have n={params.n} parts")
    return lam


def jack_monic(lam, n: int, g0) -> SymPoly:
    """
    Top homogeneous part of p_lambda^A: the Jack polynomial with parameter
    1/g0, monic on m_lambda.

    Back-substitution in the monomial basis of the dominated partitions of
    |lambda|, visited in decreasing lexicographic order.
    """
    lam = Partition(lam)
    if lam.n != n:
        raise InvalidParameterError(f"partition {tuple(lam)} does not have n={n} parts")
    g0 = Fraction(g0)
    if g0 < 0:
        raise InvalidParameterError("jack_monic needs g0 >= 0")
    if g0 == 0:
        return msym(lam, n)

    basis = [mu for mu in partitions_of(lam.weight, n) if dominance_leq(mu, lam)]
    images = {mu: expand_in_msym(jack_operator(msym(mu, n), g0)) for mu in basis}
    eigenvalue = images[lam].get(lam, Fraction(0))

    coeffs: Dict[Partition, Fraction] = {lam: Fraction(1)}
    for nu in basis[1:]:
        gap = eigenvalue - images[nu].get(nu, Fraction(0))
        if gap == 0:
            raise InternalAssertionError(f"Jack eigenvalue collision between {tuple(lam)} and {tuple(nu)}")
        rhs = sum((images[mu].get(nu, Fraction(0)) * c for mu, c in coeffs.items()), Fraction(0))
        if rhs:
            coeffs[nu] = rhs / gap
    return from_msym(coeffs, n)


def _descend(top: SymPoly, top_degree: int, params: Params) -> SymPoly:
    """Add the lower homogeneous parts fixed by the eigenvalue equation of D1"""
    result = top
    current: Polynomial = top
    for degree in range(top_degree - 2, -1, -2):
        current = lowering_part(current, params).scale(
            Fraction(1) / (2 * params.omega * (top_degree - degree)))
        if current.is_zero():
            break
        result = result + SymPoly(current.n, current.terms, even=params.even, check=False)
    return SymPoly(result.n, result.terms, even=params.even)


def hermite_poly(lam, params: Params) -> OrthoPoly:
    """Monic type A polynomial p_lambda^A"""
    if params.family != 'A':
        raise InvalidParameterError("hermite_poly needs family A")
    lam = _check_lambda(lam, params)

    def build():
        top = jack_monic(lam, params.n, params.g0)
        return _descend(top, lam.weight, params)

    poly = polynomial_cache.get_or_build(params.key() + (tuple(lam),), build)
    return OrthoPoly(params, lam, poly)


def laguerre_poly(lam, params: Params) -> OrthoPoly:
    """Monic type B polynomial p_lambda^B (even in every variable)"""
    if params.family != 'B':
        raise InvalidParameterError("laguerre_poly needs family B")
    lam = _check_lambda(lam, params)

    def build():
        top = jack_monic(lam, params.n, params.g0).square_variables()
        return _descend(top, 2 * lam.weight, params)

    poly = polynomial_cache.get_or_build(params.key() + (tuple(lam),), build)
    return OrthoPoly(params, lam, poly)


def construct_monic(lam, params: Params) -> OrthoPoly:
    if params.family == 'A':
        return hermite_poly(lam, params)
    return laguerre_poly(lam, params)


def construct(lam, params: Params, normalization: str = 'monic') -> OrthoPoly:
    if normalization not in NORMALIZATIONS:
        raise InvalidParameterError(f"normalization must be one of {NORMALIZATIONS}")
    monic = construct_monic(lam, params)
    return monic if normalization == 'monic' else pieri_normalize(monic)


def gram_schmidt_oracle(lam, params: Params) -> OrthoPoly:
    """Monic polynomial orthogonal to every m_mu with mu < lambda, by an exact Gram solve"""
    params.require_integer_couplings("the Gram-Schmidt oracle")
    lam = _check_lambda(lam, params)
    below = partitions_below(lam)
    moments = get_moments(params)
    even = params.even
    m_lam = msym(lam, params.n, even)
    if not below:
        return OrthoPoly(params, lam, m_lam)

    polys = {mu: msym(mu, params.n, even) for mu in below}
    matrix = [[moments.reduced_inner_msym(nu, polys[mu], even) for mu in below] for nu in below]
    rhs = [-moments.reduced_inner_msym(nu, m_lam, even) for nu in below]
    solution = solve_exact(matrix, rhs)
    coeffs = {lam: Fraction(1)}
    coeffs.update({mu: a for mu, a in zip(below, solution) if a})
    logger.debug(f"Gram-Schmidt oracle for {tuple(lam)} solved a {len(below)}x{len(below)} system")
    return OrthoPoly(params, lam, from_msym(coeffs, params.n, even))


def c_coeff(lam, params: Params) -> Fraction:
    """
    Pieri normalization constant c_lambda.

    A: prod_{j<k} [(k-j) g0]_{d} / [(k-j+1) g0]_{d}, d = lambda_j - lambda_k
    B: (-omega)^|lambda| * (same) * prod_j 1/[(n-j) g0 + g1 + 1/2]_{lambda_j}
    Values at g0 = 0 are the limits in g0.
    """
    lam = _check_lambda(lam, params)
    n = params.n
    product = LinearFactorProduct(params.g0)
    for j in range(n):
        for k in range(j + 1, n):
            d = lam[j] - lam[k]
            product.mul_pochhammer(0, k - j, d)
            product.div_pochhammer(0, k - j + 1, d)
    if params.family == 'B':
        product.scale((-params.omega) ** lam.weight)
        for j in range(n):
            product.div_pochhammer(params.g1 + Fraction(1, 2), n - 1 - j, lam[j])
    return product.result()


def pieri_normalize(p: OrthoPoly) -> OrthoPoly:
    """P_lambda = c_lambda * p_lambda"""
    if p.normalization != 'monic':
        raise InvalidParameterError("pieri_normalize expects a monic polynomial")
    c = c_coeff(p.lam, p.params)
    return replace(p, poly=p.poly.scale(c), normalization='pieri')


def pieri_poly(lam, params: Params) -> SymPoly:
    return pieri_normalize(construct_monic(lam, params)).poly


def terminating_1f1(m: int, b: Fraction, scale: Fraction) -> List[Fraction]:
    """Coefficients in t of 1F1(-m; b; scale*t)"""
    return [pochhammer(-m, k) / (pochhammer(b, k) * pochhammer(1, k)) * scale ** k for k in range(m + 1)]


def one_var_closed_form(lam: int, params: Params) -> SymPoly:
    """
    One-variable p_lambda from the terminating confluent hypergeometric forms:
        A, lambda = 2m:   (-1)^m [1/2]_m / omega^m 1F1(-m; 1/2; omega x^2)
        A, lambda = 2m+1: (-1)^m [3/2]_m / omega^m x 1F1(-m; 3/2; omega x^2)
        B:                (-1)^l [g1+1/2]_l / omega^l 1F1(-l; g1+1/2; omega x^2)
    """
    if params.n != 1:
        raise InvalidParameterError("one_var_closed_form needs n = 1")
    lam = int(lam)
    if lam < 0:
        raise InvalidParameterError(f"degree must be nonnegative, got {lam}")
    omega = params.omega
    if params.family == 'A':
        m, odd = divmod(lam, 2)
        b = Fraction(3, 2) if odd else Fraction(1, 2)
    else:
        m, odd = lam, 0
        b = params.g1 + Fraction(1, 2)
    prefactor = (-1) ** m * pochhammer(b, m) / omega ** m
    terms = {(2 * k + odd,): prefactor * c for k, c in enumerate(terminating_1f1(m, b, omega))}
    return SymPoly(1, terms, even=params.even)


def normalization_check(lam, params: Params) -> CheckResult:
    """P_lambda^B(0) = 1; for A, c_lambda times the top part at (1,...,1) equals 1"""
    lam = _check_lambda(lam, params)
    monic = construct_monic(lam, params)
    c = c_coeff(lam, params)
    ones = [1] * params.n
    if params.family == 'B':
        value = c * monic.poly.evaluate([0] * params.n)
    else:
        value = c * monic.poly.top_part().evaluate(ones)
    return CheckResult(value == 1, {'value': format_rational(value), 'c': format_rational(c)})


def triangularity_check(lam, params: Params) -> CheckResult:
    """Monomial expansion of p_lambda is supported on mu <= lambda with coefficient 1 at lambda"""
    lam = _check_lambda(lam, params)
    coeffs = construct_monic(lam, params).poly.msym_coefficients()
    leaks = [list(mu) for mu in coeffs if not dominance_leq(mu, lam)]
    ok = not leaks and coeffs.get(lam) == 1
    return CheckResult(ok, {'leaks': leaks})


def oracle_check(lam, params: Params) -> CheckResult:
    """Construction by descent agrees with the Gram-Schmidt oracle"""
    built = construct_monic(lam, params).poly
    oracle = gram_schmidt_oracle(lam, params).poly
    residual = built - oracle
    return CheckResult(residual.is_zero(), {}, residual_terms=len(residual))


def orthogonality_check(lam, mu, params: Params) -> CheckResult:
    """<p_lambda, p_mu> = 0 exactly (integer couplings)"""
    params.require_integer_couplings("the orthogonality check")
    moments = get_moments(params)
    value = moments.reduced_inner(construct_monic(lam, params).poly, construct_monic(mu, params).poly)
    return CheckResult(value == 0, {'mu': list(mu), 'reducedInner': format_rational(value)})
