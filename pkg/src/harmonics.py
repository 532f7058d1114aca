#!/usr/bin/env python3
"""
Separation p_lambda = sum_m R_m(r) Y_m into radial polynomials in r^2 and
generalized spherical harmonics (L Y = 0).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .construct import construct_monic, jack_monic, terminating_1f1
from .errors import (InternalAssertionError, InvalidParameterError,
                     NonGenericParameterError)
from .linalg import solve_unique
from .logger import get_logger
from .operators import lowering_part
from .partitions import Partition, count_partitions, partitions_of
from .polynomial import Polynomial
from .reports import CheckResult
from .scalars import Params, format_rational, pochhammer
from .sympoly import SymPoly, expand_in_msym, from_msym, msym

logger = get_logger(__name__)


def apply_L(p: Polynomial, params: Params) -> SymPoly:
    """
    L^A = sum d_j^2 + 2 g0 sum_{j<k} (d_j - d_k)/(x_j - x_k)
    L^B = L^A-type pair terms with both signs + 2 g1 sum (1/x_j) d_j
    """
    if not isinstance(p, SymPoly):
        p = SymPoly.from_poly(p, even=params.even)
    result = -lowering_part(p, params)
    return SymPoly(result.n, result.terms, even=params.even)


def _kummer_b(l: int, params: Params) -> Fraction:
    """Bottom parameter of the radial Kummer equation in t = r^2"""
    n, g0 = params.n, params.g0
    if params.family == 'A':
        return Fraction(n, 2) + l + g0 * n * (n - 1) / 2
    return Fraction(n, 2) + 2 * l + g0 * n * (n - 1) + n * params.g1


def radial_poly(m: int, l: int, params: Params) -> List[Fraction]:
    """
    Monic degree-m solution R_m(t), t = r^2, of
        t R'' + (b - omega t) R' + omega m R = 0
    as coefficients [a_0, ..., a_m], by the recursion
        a_k = -(k+1)(k+b) a_{k+1} / (omega (m-k)).
    """
    if m < 0 or l < 0:
        raise InvalidParameterError(f"m and l must be nonnegative, got m={m}, l={l}")
    b = _kummer_b(l, params)
    coeffs = [Fraction(0)] * (m + 1)
    coeffs[m] = Fraction(1)
    for k in range(m - 1, -1, -1):
        coeffs[k] = -(k + 1) * (k + b) * coeffs[k + 1] / (params.omega * (m - k))
    return coeffs


def kummer_radial_poly(m: int, l: int, params: Params) -> List[Fraction]:
    """(-1)^m [b]_m omega^-m 1F1(-m; b; omega t), the same polynomial in closed form"""
    b = _kummer_b(l, params)
    prefactor = (-1) ** m * pochhammer(b, m) / params.omega ** m
    return [prefactor * c for c in terminating_1f1(m, b, params.omega)]


def radius_squared(n: int) -> SymPoly:
    return msym([1] + [0] * (n - 1), n, even=True)


def radial_in_x(coeffs: List[Fraction], n: int) -> SymPoly:
    """R(sum x_j^2) as a polynomial in x"""
    r2 = radius_squared(n)
    result = SymPoly(n, even=True, check=False)
    power = SymPoly.constant(n, 1, even=True)
    for c in coeffs:
        if c:
            result = result + power.scale(c)
        power = power * r2
    return result


def harmonic_dimension(l: int, n: int, family: str) -> int:
    """dim P_l - dim P_(l-2) (A) or dim P_l - dim P_(l-1) (B), l the degree in x or x^2"""
    if l < 0:
        return 0
    step = 2 if family == 'A' else 1
    return count_partitions(l, n) - (count_partitions(l - step, n) if l >= step else 0)


@dataclass
class HarmonicTerm:
    m: int
    radial: List[Fraction]
    harmonic: SymPoly

    def to_json(self) -> Dict[str, object]:
        return {
            'm': self.m,
            'radial': [format_rational(c) for c in self.radial],
            'harmonic': self.harmonic.to_json(),
        }


@dataclass
class HarmonicDecomposition:
    """p_lambda = sum over terms of R_m(r) Y_m"""
    params: Params
    lam: Partition
    terms: List[HarmonicTerm] = field(default_factory=list)

    def reconstruct(self) -> SymPoly:
        result = SymPoly(self.params.n, even=self.params.even, check=False)
        for term in self.terms:
            result = result + radial_in_x(term.radial, self.params.n) * term.harmonic
        return result

    def leading_part(self) -> SymPoly:
        """sum_m r^(2m) Y_m"""
        r2 = radius_squared(self.params.n)
        result = SymPoly(self.params.n, even=self.params.even, check=False)
        for term in self.terms:
            result = result + (r2 ** term.m) * term.harmonic
        return result

    def to_json(self) -> Dict[str, object]:
        return {
            'schemaVersion': 1,
            'family': self.params.family,
            'n': self.params.n,
            'lambda': list(self.lam),
            **self.params.couplings(),
            'terms': [term.to_json() for term in self.terms],
        }


def _degrees(lam: Partition, params: Params) -> List[Tuple[int, int]]:
    """(m, l) pairs: l = |lambda| - 2m (A, degree in x) or |lambda| - m (B, degree in x^2)"""
    size = lam.weight
    if params.family == 'A':
        return [(m, size - 2 * m) for m in range(size // 2 + 1)]
    return [(m, size - m) for m in range(size + 1)]


def _top_jack(lam: Partition, params: Params) -> SymPoly:
    top = jack_monic(lam, params.n, params.g0)
    return top.square_variables() if params.family == 'B' else top


def decompose_harmonic(lam, params: Params) -> HarmonicDecomposition:
    """
    Solve J_lambda = sum_m r^(2m) Y_m with L Y_m = 0 exactly (unknowns: the
    monomial coefficients of every Y_m), attach the radial polynomials and
    verify the reconstruction of p_lambda.
    """
    lam = Partition(lam)
    if lam.n != params.n:
        raise InvalidParameterError(f"partition {tuple(lam)} does not have n={params.n} parts")
    n, even = params.n, params.even
    top = _top_jack(lam, params)
    r2 = radius_squared(n)

    unknowns = [(m, l, mu) for m, l in _degrees(lam, params) for mu in partitions_of(l, n)]
    rows: Dict[Tuple, Dict[int, Fraction]] = {}
    for index, (m, l, mu) in enumerate(unknowns):
        basis = msym(mu, n, even)
        for nu, c in expand_in_msym((r2 ** m) * basis, even).items():
            rows.setdefault(('top', nu), {})[index] = c
        for nu, c in expand_in_msym(apply_L(basis, params), even).items():
            rows.setdefault(('L', m, nu), {})[index] = c

    target = expand_in_msym(top, even)
    for nu in target:
        rows.setdefault(('top', nu), {})
    keys = sorted(rows, key=repr)
    matrix = [[rows[key].get(i, Fraction(0)) for i in range(len(unknowns))] for key in keys]
    rhs = [target.get(key[1], Fraction(0)) if key[0] == 'top' else Fraction(0) for key in keys]
    solution = solve_unique(matrix, rhs)

    decomposition = HarmonicDecomposition(params, lam)
    for m, l in _degrees(lam, params):
        coeffs = {mu: a for (mm, _, mu), a in zip(unknowns, solution) if mm == m and a}
        if coeffs:
            harmonic = from_msym(coeffs, n, even)
            decomposition.terms.append(HarmonicTerm(m, radial_poly(m, l, params), harmonic))

    if decomposition.reconstruct() != construct_monic(lam, params).poly:
        raise InternalAssertionError(f"harmonic decomposition of {tuple(lam)} does not reconstruct p_lambda")
    logger.debug(f"Decomposed {tuple(lam)} for {params} into {len(decomposition.terms)} harmonic terms")
    return decomposition


def _nonzero_pochhammer(a: Fraction, length: int, what: str) -> Fraction:
    value = pochhammer(a, length)
    if value == 0:
        raise NonGenericParameterError(f"{what}: [{format_rational(a)}]_{length} vanishes")
    return value


def _dimension_shift(params: Params) -> Fraction:
    """n/2 + d with d^A = g0 n(n-1)/2 and d^B = g0 n(n-1) + n g1"""
    n, g0 = params.n, params.g0
    if params.family == 'A':
        return Fraction(n, 2) + g0 * n * (n - 1) / 2
    return Fraction(n, 2) + g0 * n * (n - 1) + n * params.g1


def harmonic_projection(f: SymPoly, k: int, params: Params) -> SymPoly:
    """
    T_k f = sum_j r^(2j) L^j f / (4^j j! [2 - n/2 - d - k_x]_j) with k_x the
    x-degree of f
    """
    shift = _dimension_shift(params)
    k_x = k if params.family == 'A' else 2 * k
    r2 = radius_squared(params.n)
    result = SymPoly(params.n, even=params.even, check=False)
    current = f
    j = 0
    while not current.is_zero():
        poch = pochhammer(2 - shift - k_x, j)
        if poch == 0:
            raise NonGenericParameterError(f"harmonic projection of degree {k}: pole at j={j}")
        denominator = Fraction(4) ** j * pochhammer(1, j) * poch
        result = result + ((r2 ** j) * current).scale(1 / denominator)
        current = apply_L(current, params)
        j += 1
    return SymPoly(result.n, result.terms, even=params.even)


def dunkl_projection(lam, m: int, params: Params) -> SymPoly:
    """
    Y_m = T_k L^m J / (4^m m! [n/2 + d + N - 2m]_m), with N the x-degree
    of J_lambda and k = |lambda| - 2m (A) or |lambda| - m (B)
    """
    lam = Partition(lam)
    size = lam.weight
    limit = size // 2 if params.family == 'A' else size
    if not 0 <= m <= limit:
        raise InvalidParameterError(f"m must lie in 0..{limit}, got {m}")
    top = _top_jack(lam, params)
    x_degree = size if params.family == 'A' else 2 * size
    k = size - 2 * m if params.family == 'A' else size - m
    image = top
    for _ in range(m):
        image = apply_L(image, params)
    scale = Fraction(4) ** m * pochhammer(1, m) * _nonzero_pochhammer(
        _dimension_shift(params) + x_degree - 2 * m, m, "Dunkl projection")
    return harmonic_projection(image.scale(1 / scale), k, params)


def decomposition_check(lam, params: Params, dunkl: bool = True) -> CheckResult:
    """Harmonicity, reconstruction, leading part, dimension counts and the Dunkl cross-check"""
    lam = Partition(lam)
    decomposition = decompose_harmonic(lam, params)
    harmonic_ok = all(apply_L(t.harmonic, params).is_zero() for t in decomposition.terms)
    leading_ok = decomposition.leading_part() == _top_jack(lam, params)

    degrees = _degrees(lam, params)
    dimensions = {l: harmonic_dimension(l, params.n, params.family) for _, l in degrees}
    by_m = {t.m: t for t in decomposition.terms}
    dimension_ok = all(dimensions[l] > 0 for m, l in degrees if m in by_m)
    total = sum(dimensions.values())
    dimension_ok = dimension_ok and total == count_partitions(lam.weight, params.n)

    degree_of = dict(degrees)
    radial_ok = all(t.radial == kummer_radial_poly(t.m, degree_of[t.m], params) for t in decomposition.terms)

    mismatches = []
    if dunkl:
        for m, _ in degrees:
            expected = by_m[m].harmonic if m in by_m else SymPoly(params.n, even=params.even, check=False)
            if dunkl_projection(lam, m, params) != expected:
                mismatches.append(m)

    return CheckResult(harmonic_ok and leading_ok and dimension_ok and radial_ok and not mismatches, {
        'components': len(decomposition.terms),
        'harmonic': harmonic_ok,
        'leadingPart': leading_ok,
        'dimensionCount': dimension_ok,
        'radialClosedForm': radial_ok,
        'dunklMismatches': mismatches,
    })
