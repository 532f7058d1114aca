#!/usr/bin/env python3
"""
Symmetric polynomials: monomial-symmetric bases, elementary symmetric
functions and the exact divided-difference operators.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Optional, Union

from sympy.utilities.iterables import multiset_permutations

from .errors import AsymmetricPolynomialError, InvalidParameterError
from .logger import get_logger
from .partitions import Partition, is_partition
from .polynomial import Coefficient, Polynomial
from .scalars import Params, format_rational

logger = get_logger(__name__)


class SymPoly(Polynomial):
    """Polynomial whose term map is closed under permutations of the variables"""

    __slots__ = ('even',)

    def __init__(self, n: int, terms: Optional[Dict] = None, even: bool = False, check: bool = True):
        super().__init__(n, terms)
        self.even = even
        if check:
            self._validate()

    def _validate(self):
        orbits = defaultdict(dict)
        for e, c in self.terms.items():
            orbits[tuple(sorted(e, reverse=True))][e] = c
        for shape, members in orbits.items():
            expected = Partition(shape).orbit_size()
            if len(members) != expected or len(set(members.values())) != 1:
                raise AsymmetricPolynomialError(
                    f"orbit of {shape} has {len(members)}/{expected} terms "
                    f"with {len(set(members.values()))} distinct coefficients")
        if self.even and any(a % 2 for e in self.terms for a in e):
            raise AsymmetricPolynomialError("polynomial flagged even has odd exponents")

    @classmethod
    def from_poly(cls, p: Polynomial, even: bool = False) -> 'SymPoly':
        return cls(p.n, p.terms, even=even)

    @classmethod
    def constant(cls, n: int, c: Coefficient, even: bool = False) -> 'SymPoly':
        return cls(n, {(0,) * n: c}, even=even, check=False)

    def _wrap(self, p: Polynomial, other=None) -> 'SymPoly':
        even = self.even and (not isinstance(other, SymPoly) or other.even)
        return SymPoly(p.n, p.terms, even=even, check=False)

    def __add__(self, other):
        result = super().__add__(other)
        if isinstance(other, (SymPoly, int, Fraction)):
            return self._wrap(result, other)
        return result

    __radd__ = __add__

    def __sub__(self, other):
        result = super().__sub__(other)
        if isinstance(other, (SymPoly, int, Fraction)):
            return self._wrap(result, other)
        return result

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._wrap(super().__neg__())

    def __mul__(self, other):
        result = super().__mul__(other)
        if isinstance(other, (SymPoly, int, Fraction)):
            return self._wrap(result, other)
        return result

    __rmul__ = __mul__

    def scale(self, c: Coefficient) -> 'SymPoly':
        return self._wrap(super().scale(c))

    def homogeneous_part(self, degree: int) -> 'SymPoly':
        return self._wrap(super().homogeneous_part(degree))

    def top_part(self) -> 'SymPoly':
        return self.homogeneous_part(self.degree())

    def square_variables(self) -> 'SymPoly':
        return SymPoly(self.n, super().square_variables().terms, even=True, check=False)

    def msym_coefficients(self) -> Dict[Partition, Fraction]:
        return expand_in_msym(self, self.even)

    def to_json(self) -> Dict[str, object]:
        coeffs = self.msym_coefficients()
        return {
            'n': self.n,
            'even': self.even,
            'msym': [
                {'mu': list(mu), 'coeff': format_rational(c)}
                for mu, c in sorted(coeffs.items(), key=lambda item: (-sum(item[0]), [-a for a in item[0]]))
            ],
            'terms': Polynomial.to_json(self),
        }


def msym(lam: Iterable[int], n: Optional[int] = None, even: bool = False) -> SymPoly:
    """Monomial symmetric function m_lam (or m_2lam when even)"""
    lam = tuple(lam)
    if n is None:
        n = len(lam)
    if len(lam) != n:
        raise InvalidParameterError(f"partition {lam} does not have n={n} parts")
    if not is_partition(lam):
        raise InvalidParameterError(f"{lam} is not a partition")
    factor = 2 if even else 1
    terms = {tuple(factor * a for a in perm): Fraction(1) for perm in multiset_permutations(list(lam))}
    return SymPoly(n, terms, even=even, check=False)


def expand_in_msym(p: Polynomial, even: bool = False) -> Dict[Partition, Fraction]:
    """Coefficients c_mu with p = sum c_mu m_mu (or m_2mu)"""
    if not isinstance(p, SymPoly) or p.even != even:
        p = SymPoly(p.n, p.terms, even=even)
    coeffs = {}
    for e, c in p.terms.items():
        shape = tuple(sorted(e, reverse=True))
        if e == shape:
            key = tuple(a // 2 for a in shape) if even else shape
            coeffs[Partition(key)] = c
    return coeffs


def from_msym(coeffs: Dict[Iterable[int], Coefficient], n: int, even: bool = False) -> SymPoly:
    result = SymPoly(n, even=even, check=False)
    for mu, c in coeffs.items():
        result = result + msym(mu, n, even).scale(c)
    return result


def elementary_sym(r: int, params: Params) -> SymPoly:
    """E_r = e_r(x) for family A, (-omega)^r e_r(x^2) for family B"""
    n = params.n
    if not 1 <= r <= n:
        raise InvalidParameterError(f"r must lie in 1..{n}, got {r}")
    e_r = msym([1] * r + [0] * (n - r), n)
    if params.family == 'A':
        return e_r
    return e_r.square_variables().scale((-params.omega) ** r)


# ----------------------------------------------------------------------
# Divided differences


def minus_pair(p: Polynomial, j: int, k: int) -> Polynomial:
    """(d_j - d_k) p / (x_j - x_k)"""
    return (p.derivative(j) - p.derivative(k)).divide_linear(j, k, 1)


def plus_pair(p: Polynomial, j: int, k: int) -> Polynomial:
    """(d_j + d_k) p / (x_j + x_k)"""
    return (p.derivative(j) + p.derivative(k)).divide_linear(j, k, -1)


def inv_x(p: Polynomial, j: int) -> Polynomial:
    """d_j p / x_j"""
    return p.derivative(j).divide_linear(j)


DIVIDED_DIFFERENCES = {
    'minus_pair': minus_pair,
    'plus_pair': plus_pair,
    'inv_x': inv_x,
}


def divided_diff_ops(p: Polynomial, kind: str, j: int, k: Optional[int] = None) -> Polynomial:
    """Dispatch one divided difference by name; indices are 0-based"""
    try:
        op = DIVIDED_DIFFERENCES[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown divided difference {kind!r}")
    if kind == 'inv_x':
        return op(p, j)
    if k is None or j == k:
        raise InvalidParameterError(f"{kind} needs two distinct indices")
    return op(p, j, k)


def _as_sym(result: Polynomial, p: Polynomial) -> Union[SymPoly, Polynomial]:
    if isinstance(p, SymPoly):
        return SymPoly(result.n, result.terms)
    return result


def sum_minus_pairs(p: Polynomial) -> Polynomial:
    result = Polynomial(p.n)
    for j in range(p.n):
        for k in range(j + 1, p.n):
            result = result + minus_pair(p, j, k)
    return _as_sym(result, p)


def sum_plus_pairs(p: Polynomial) -> Polynomial:
    result = Polynomial(p.n)
    for j in range(p.n):
        for k in range(j + 1, p.n):
            result = result + plus_pair(p, j, k)
    return _as_sym(result, p)


def sum_inv_x(p: Polynomial) -> Polynomial:
    result = Polynomial(p.n)
    for j in range(p.n):
        result = result + inv_x(p, j)
    return _as_sym(result, p)


def jack_operator(p: Polynomial, g0: Fraction) -> Polynomial:
    """
    sum_j x_j^2 d_j^2 + 2 g0 sum_{j<k} (x_j^2 d_j - x_k^2 d_k)/(x_j - x_k)

    Degree preserving; the pair quotient is exact on symmetric input.
    """
    n = p.n
    result = Polynomial(n)
    for j in range(n):
        result = result + p.derivative(j, 2).multiply_variable(j, 2)
    if g0:
        pairs = Polynomial(n)
        for j in range(n):
            for k in range(j + 1, n):
                numerator = p.derivative(j).multiply_variable(j, 2) - p.derivative(k).multiply_variable(k, 2)
                pairs = pairs + numerator.divide_linear(j, k, 1)
        result = result + pairs.scale(2 * g0)
    return _as_sym(result, p)
