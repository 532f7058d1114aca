#!/usr/bin/env python3
"""
Pieri coefficients, the Pieri identity checks, closed-form norms, the
Mehta-Macdonald integrals and the norm recurrence.

Index conventions: variables are 0-based internally, so the factor written
(n - j) for 1-based j is n - 1 - j here. Differences k - j are unchanged.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .construct import c_coeff, construct_monic, pieri_poly
from .errors import InvalidParameterError, NotRepresentableError
from .logger import get_logger
from .moments import get_moments
from .partitions import Partition, is_partition, partitions_up_to
from .reports import CheckResult
from .scalars import (ExactScalar, LinearFactorProduct, Params, format_rational,
                      gamma_half_integer)
from .sympoly import SymPoly, elementary_sym

logger = get_logger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SignedIndexSets:
    """Disjoint index sets J+ and J- (0-based)"""
    plus: FrozenSet[int] = field(default_factory=frozenset)
    minus: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, 'plus', frozenset(self.plus))
        object.__setattr__(self, 'minus', frozenset(self.minus))
        if self.plus & self.minus:
            raise InvalidParameterError(f"J+ and J- overlap in {sorted(self.plus & self.minus)}")

    @property
    def size(self) -> int:
        return len(self.plus) + len(self.minus)

    def complement(self, n: int) -> List[int]:
        return [k for k in range(n) if k not in self.plus and k not in self.minus]

    def target(self, lam: Partition) -> Tuple[int, ...]:
        return lam.shifted(self.plus, self.minus)

    def label(self) -> str:
        plus = ','.join(str(j + 1) for j in sorted(self.plus))
        minus = ','.join(str(j + 1) for j in sorted(self.minus))
        return f"+{{{plus}}}-{{{minus}}}"


def signed_sets(n: int, max_size: Optional[int] = None, size: Optional[int] = None,
                indices: Optional[Iterable[int]] = None) -> List[SignedIndexSets]:
    """All disjoint (J+, J-) over the given indices, filtered by |J+| + |J-|"""
    indices = list(range(n)) if indices is None else list(indices)
    found = []
    for labels in product((0, 1, -1), repeat=len(indices)):
        count = sum(1 for lab in labels if lab)
        if size is not None and count != size:
            continue
        if max_size is not None and count > max_size:
            continue
        found.append(SignedIndexSets(
            frozenset(i for i, lab in zip(indices, labels) if lab == 1),
            frozenset(i for i, lab in zip(indices, labels) if lab == -1)))
    return found


# ----------------------------------------------------------------------
# Coefficients


def _check_lambda(lam, params: Params) -> Partition:
    lam = Partition(lam)
    if lam.n != params.n:
        raise InvalidParameterError(f"partition {tuple(lam)} does not have n={params.n} parts")
    return lam


def vhat_general(sets: SignedIndexSets, K: Iterable[int], lam, params: Params) -> Fraction:
    """Leading Pieri coefficient V-hat_{J+,J-;K}(lambda)"""
    lam = _check_lambda(lam, params)
    n, K = params.n, list(K)
    prod = LinearFactorProduct(params.g0)
    if params.family == 'A':
        for j in sets.minus:
            prod.mul(lam[j], n - 1 - j).scale(1 / (2 * params.omega))
    else:
        for j in sets.plus:
            prod.mul(params.g1 + HALF + lam[j], n - 1 - j)
        for j in sets.minus:
            prod.mul(lam[j], n - 1 - j)
    for j in sets.plus:
        for jp in sets.minus:
            prod.mul_shifted_ratio(jp - j, lam[j] - lam[jp], 1)
            prod.mul_shifted_ratio(jp - j, 1 + lam[j] - lam[jp], 1)
    for j in sets.plus:
        for k in K:
            prod.mul_shifted_ratio(k - j, lam[j] - lam[k], 1)
    for j in sets.minus:
        for k in K:
            prod.mul_shifted_ratio(k - j, lam[j] - lam[k], -1)
    return prod.result()


def vhat(sets: SignedIndexSets, lam, params: Params) -> Fraction:
    """V-hat with K the complement of J+ and J-"""
    return vhat_general(sets, sets.complement(params.n), lam, params)


def vhat_r1(j: int, lam, params: Params) -> Fraction:
    """V-hat_j (j > 0) or V-hat_-j (j < 0) for a 1-based signed index"""
    if j == 0 or abs(j) > params.n:
        raise InvalidParameterError(f"signed index must satisfy 1 <= |j| <= {params.n}, got {j}")
    index = abs(j) - 1
    sets = SignedIndexSets(plus={index}) if j > 0 else SignedIndexSets(minus={index})
    return vhat(sets, lam, params)


def uhat_B(K: Iterable[int], p: int, lam, params: Params) -> Fraction:
    """Diagonal-type Laguerre coefficient U-hat_{K,p}(lambda); 1 for p = 0"""
    lam = _check_lambda(lam, params)
    if p == 0:
        return Fraction(1)
    n, K = params.n, list(K)
    total = Fraction(0)
    for sets in signed_sets(n, size=p, indices=K):
        rest = [k for k in K if k not in sets.plus and k not in sets.minus]
        prod = LinearFactorProduct(params.g0)
        for l in sets.plus:
            prod.mul(params.g1 + HALF + lam[l], n - 1 - l)
        for l in sets.minus:
            prod.mul(lam[l], n - 1 - l)
        for l in sets.plus:
            for lp in sets.minus:
                prod.mul_shifted_ratio(lp - l, lam[l] - lam[lp], 1)
                prod.mul_shifted_ratio(lp - l, 1 + lam[l] - lam[lp], -1)
        for l in sets.plus:
            for k in rest:
                prod.mul_shifted_ratio(k - l, lam[l] - lam[k], 1)
        for l in sets.minus:
            for k in rest:
                prod.mul_shifted_ratio(k - l, lam[l] - lam[k], -1)
        total += prod.result()
    return (-1) ** p * total


# ----------------------------------------------------------------------
# Pieri identities


def _residual_result(residual: SymPoly, leaks: List[str], extra: Optional[Dict] = None) -> CheckResult:
    details = {'leaks': leaks}
    if not residual.is_zero():
        details['residual'] = repr(residual)
    details.update(extra or {})
    return CheckResult(residual.is_zero() and not leaks, details, residual_terms=len(residual))


def pieri_r1_check(lam, params: Params) -> CheckResult:
    """(sum x_j) P_lambda (A) or (-omega sum x_j^2) P_lambda (B) against the r = 1 expansion"""
    lam = _check_lambda(lam, params)
    n = params.n
    P = pieri_poly(lam, params)
    lhs = elementary_sym(1, params) * P
    rhs = SymPoly(n, even=params.even, check=False)
    leaks = []
    for j in range(1, n + 1):
        for signed in (j, -j):
            coefficient = vhat_r1(signed, lam, params)
            index = j - 1
            target = lam.shifted(plus=[index]) if signed > 0 else lam.shifted(minus=[index])
            if not is_partition(target):
                if coefficient != 0:
                    leaks.append(f"{signed}:{target}")
                continue
            rhs = rhs + pieri_poly(target, params).scale(coefficient)
            if params.family == 'B':
                rhs = rhs - P.scale(coefficient)
    return _residual_result(lhs - rhs, leaks)


def pieri_full_B_check(r: int, lam, params: Params) -> CheckResult:
    """E_r^B P_lambda = sum V-hat U-hat P_(lambda + e_J+ - e_J-), the complete Laguerre expansion"""
    if params.family != 'B':
        raise InvalidParameterError("pieri_full_B_check needs family B")
    lam = _check_lambda(lam, params)
    n = params.n
    if not 1 <= r <= n:
        raise InvalidParameterError(f"r must lie in 1..{n}, got {r}")
    lhs = elementary_sym(r, params) * pieri_poly(lam, params)
    rhs = SymPoly(n, even=True, check=False)
    leaks = []
    for sets in signed_sets(n, max_size=r):
        K = sets.complement(n)
        leading = vhat_general(sets, K, lam, params)
        coefficient = leading * uhat_B(K, r - sets.size, lam, params) if leading else Fraction(0)
        target = sets.target(lam)
        if not is_partition(target):
            if coefficient != 0:
                leaks.append(sets.label())
            continue
        if coefficient:
            rhs = rhs + pieri_poly(target, params).scale(coefficient)
    return _residual_result(lhs - rhs, leaks)


def pieri_structure_A_check(r: int, lam, params: Params) -> CheckResult:
    """
    Project E_r^A P_lambda on the orthogonal basis and check support and
    leading coefficients. Sub-leading coefficients are recorded only.
    """
    if params.family != 'A':
        raise InvalidParameterError("pieri_structure_A_check needs family A")
    params.require_integer_couplings("the Gram projection")
    lam = _check_lambda(lam, params)
    n = params.n
    if not 1 <= r <= n:
        raise InvalidParameterError(f"r must lie in 1..{n}, got {r}")
    moments = get_moments(params)
    f = elementary_sym(r, params) * pieri_poly(lam, params)
    degree = lam.weight + r

    allowed = {}
    for sets in signed_sets(n, max_size=r):
        allowed[sets.target(lam)] = sets

    coefficients: Dict[Partition, Fraction] = {}
    reconstruction = SymPoly(n, check=False)
    for mu in partitions_up_to(degree, n):
        if (degree - mu.weight) % 2:
            continue
        P_mu = pieri_poly(mu, params)
        a = moments.reduced_inner(f, P_mu) / moments.reduced_inner(P_mu, P_mu)
        if a:
            coefficients[mu] = a
            reconstruction = reconstruction + P_mu.scale(a)

    leaks = [list(mu) for mu in coefficients if tuple(mu) not in allowed]
    mismatches = []
    boundary = []
    subleading = {}
    for target, sets in allowed.items():
        if sets.size == r:
            expected = vhat(sets, lam, params)
            if not is_partition(target):
                if expected != 0:
                    boundary.append(sets.label())
                continue
            found = coefficients.get(Partition(target), Fraction(0))
            if found != expected:
                mismatches.append({'set': sets.label(), 'expected': format_rational(expected),
                                   'found': format_rational(found)})
        elif is_partition(target):
            value = coefficients.get(Partition(target), Fraction(0))
            if value:
                subleading[sets.label()] = format_rational(value)

    residual = f - reconstruction
    result = _residual_result(residual, [str(m) for m in leaks], {
        'mismatches': mismatches,
        'boundary': boundary,
        'subleading': subleading,
    })
    result.passed = result.passed and not mismatches and not boundary
    return result


# ----------------------------------------------------------------------
# Norms


def _gamma(a: Fraction, omega: Fraction) -> ExactScalar:
    return gamma_half_integer(a, omega)


def _pair_gamma_product(lam: Partition, params: Params) -> ExactScalar:
    """prod_{j<k} Gamma((m+1)g0+d) Gamma(1+(m-1)g0+d) / (Gamma(m g0+d) Gamma(1+m g0+d))"""
    g0, omega = params.g0, params.omega
    value = ExactScalar.rational(1, omega)
    for j in range(lam.n):
        for k in range(j + 1, lam.n):
            m, d = k - j, lam[j] - lam[k]
            if g0 == 0 and d == 0:
                value = value * Fraction(m, m + 1)
                continue
            value = value * _gamma((m + 1) * g0 + d, omega) * _gamma(1 + (m - 1) * g0 + d, omega)
            value = value / (_gamma(m * g0 + d, omega) * _gamma(1 + m * g0 + d, omega))
    return value


def _power_of_two(exponent: Fraction) -> Fraction:
    if exponent.denominator != 1:
        raise NotRepresentableError(f"2^({format_rational(exponent)}) is outside the exact ring")
    return Fraction(2) ** int(exponent)


def norm_formula(lam, params: Params) -> ExactScalar:
    """Closed form of <p_lambda, p_lambda> (couplings must keep every Gamma argument in Z/2)"""
    lam = _check_lambda(lam, params)
    n, g0, g1, omega = params.n, params.g0, params.g1, params.omega
    size = lam.weight
    factorial_n = 1
    for i in range(2, n + 1):
        factorial_n *= i
    value = _pair_gamma_product(lam, params) * factorial_n
    if params.family == 'A':
        pair_count = Fraction(n * (n - 1), 2)
        value = value * _power_of_two(-size - g0 * pair_count)
        value = value * ExactScalar.pi_power(n, omega)
        value = value * ExactScalar.omega_power(-(size + g0 * pair_count + Fraction(n, 2)), omega)
        for j in range(n):
            value = value * _gamma(1 + (n - 1 - j) * g0 + lam[j], omega)
    else:
        value = value * ExactScalar.omega_power(-(2 * size + g0 * n * (n - 1) + (g1 + HALF) * n), omega)
        for j in range(n):
            value = value * _gamma(1 + (n - 1 - j) * g0 + lam[j], omega)
            value = value * _gamma((n - 1 - j) * g0 + g1 + HALF + lam[j], omega)
    return value


def mehta_macdonald(params: Params) -> ExactScalar:
    """<1, 1> in closed form"""
    n, g0, g1, omega = params.n, params.g0, params.g1, params.omega
    value = ExactScalar.rational(1, omega)
    for j in range(1, n + 1):
        value = value * _gamma(1 + j * g0, omega) / _gamma(1 + g0, omega)
    if params.family == 'A':
        pair_count = Fraction(n * (n - 1), 2)
        value = value * _power_of_two(-g0 * pair_count)
        value = value * ExactScalar.pi_power(n, omega)
        value = value * ExactScalar.omega_power(-(g0 * pair_count + Fraction(n, 2)), omega)
    else:
        value = value * ExactScalar.omega_power(-(g0 * n * (n - 1) + (g1 + HALF) * n), omega)
        for j in range(1, n + 1):
            value = value * _gamma((j - 1) * g0 + g1 + HALF, omega)
    return value


def norm_ratio(lam, params: Params) -> Fraction:
    """
    <p_lambda, p_lambda> / <1, 1> as a Pochhammer product, valid at all
    rational couplings:
        A: (2 omega)^-|lambda| * pairs * prod_j [1 + (n-j) g0]_lambda_j
        B: omega^-2|lambda| * pairs * prod_j [(n-j) g0 + g1 + 1/2]_lambda_j [1 + (n-j) g0]_lambda_j
    with pairs = prod_{j<k} [(m+1) g0]_d [1 + (m-1) g0]_d / ([m g0]_d [1 + m g0]_d).
    """
    lam = _check_lambda(lam, params)
    n = params.n
    prod = LinearFactorProduct(params.g0)
    for j in range(n):
        for k in range(j + 1, n):
            m, d = k - j, lam[j] - lam[k]
            prod.mul_pochhammer(0, m + 1, d).mul_pochhammer(1, m - 1, d)
            prod.div_pochhammer(0, m, d).div_pochhammer(1, m, d)
    for j in range(n):
        prod.mul_pochhammer(1, n - 1 - j, lam[j])
        if params.family == 'B':
            prod.mul_pochhammer(params.g1 + HALF, n - 1 - j, lam[j])
    if params.family == 'A':
        prod.scale((2 * params.omega) ** -lam.weight)
    else:
        prod.scale(params.omega ** (-2 * lam.weight))
    return prod.result()


def _fundamental_step(lam: Partition, r: int, params: Params) -> Tuple[Partition, Fraction, Fraction]:
    """lambda + e_{1..r}, V-hat_{{1..r},0;K}(lambda) and V-hat_{0,{1..r};K}(lambda + e_{1..r})"""
    J = frozenset(range(r))
    K = list(range(r, params.n))
    raised = Partition(lam.shifted(plus=J))
    up = vhat_general(SignedIndexSets(plus=J), K, lam, params)
    down = vhat_general(SignedIndexSets(minus=J), K, raised, params)
    return raised, up, down


def norm_recurrence_check(lam, r: int, params: Params) -> CheckResult:
    """c_lambda = c_(lambda+e) V-hat(lambda) and ratio(lambda+e) = V-hat V-hat ratio(lambda)"""
    lam = _check_lambda(lam, params)
    if not 1 <= r <= params.n:
        raise InvalidParameterError(f"r must lie in 1..{params.n}, got {r}")
    raised, up, down = _fundamental_step(lam, r, params)
    c_left = c_coeff(lam, params)
    c_right = c_coeff(raised, params) * up
    ratio_left = norm_ratio(raised, params)
    ratio_right = up * down * norm_ratio(lam, params)
    return CheckResult(c_left == c_right and ratio_left == ratio_right, {
        'cLeft': format_rational(c_left),
        'cRight': format_rational(c_right),
        'ratioLeft': format_rational(ratio_left),
        'ratioRight': format_rational(ratio_right),
    })


def chained_norm_ratio(lam, params: Params) -> Fraction:
    """Norm ratio obtained by iterating the recurrence from 0 along e_{1..r}"""
    lam = _check_lambda(lam, params)
    n = params.n
    current = Partition([0] * n)
    value = Fraction(1)
    for r in range(1, n + 1):
        steps = lam[r - 1] - (lam[r] if r < n else 0)
        for _ in range(steps):
            current, up, down = _fundamental_step(current, r, params)
            value *= up * down
    if tuple(current) != tuple(lam):
        raise InvalidParameterError(f"chain ended at {tuple(current)} instead of {tuple(lam)}")
    return value


def norm_gram_check(lam, params: Params) -> CheckResult:
    """Closed form, Gram value and ratio form of the norm agree (integer couplings)"""
    lam = _check_lambda(lam, params)
    params.require_integer_couplings("the Gram norm check")
    moments = get_moments(params)
    p = construct_monic(lam, params).poly
    gram = moments.inner(p, p)
    closed = norm_formula(lam, params)
    ratio = moments.reduced_inner(p, p) / moments.reduced_moment(SymPoly.constant(params.n, 1))
    expected_ratio = norm_ratio(lam, params)
    details = {
        'gram': gram.to_json(),
        'closedForm': closed.to_json(),
        'ratio': format_rational(ratio),
        'ratioForm': format_rational(expected_ratio),
    }
    ok = gram == closed and ratio == expected_ratio
    if lam.weight == 0:
        mehta = mehta_macdonald(params)
        details['mehta'] = mehta.to_json()
        ok = ok and mehta == gram
    return CheckResult(ok, details)


def mehta_check(params: Params) -> CheckResult:
    """Closed Mehta-Macdonald value against the exact Gaussian integral of the weight"""
    params.require_integer_couplings("the Mehta-Macdonald check")
    exact = get_moments(params).moment(SymPoly.constant(params.n, 1))
    closed = mehta_macdonald(params)
    return CheckResult(exact == closed, {'exact': exact.to_json(), 'closedForm': closed.to_json()})
