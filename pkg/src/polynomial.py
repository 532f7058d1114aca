#!/usr/bin/env python3
"""
Sparse multivariate polynomials over Q.

A polynomial in x_1..x_n is a dict mapping exponent tuples of length n to
nonzero Fractions, e.g. 17 + 2*x1*x2 - 19*x1^6*x3 in three variables is
{(0,0,0): 17, (1,1,0): 2, (6,0,1): -19}.
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import InexactDivisionError, InvalidParameterError
from .scalars import format_rational

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]


class Polynomial:
    """Sparse polynomial with exact rational coefficients"""

    __slots__ = ('n', 'terms')

    def __init__(self, n: int, terms: Optional[Dict[Exponent, Coefficient]] = None):
        self.n = n
        self.terms: Dict[Exponent, Fraction] = {}
        for exps, c in (terms or {}).items():
            if c:
                if len(exps) != n:
                    raise InvalidParameterError(f"exponent {exps} does not have {n} entries")
                self.terms[tuple(exps)] = Fraction(c)

    # ------------------------------------------------------------------
    # Constructors

    @classmethod
    def zero(cls, n: int) -> 'Polynomial':
        return Polynomial(n)

    @classmethod
    def constant(cls, n: int, c: Coefficient) -> 'Polynomial':
        return Polynomial(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Coefficient = 1) -> 'Polynomial':
        return Polynomial(len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, n: int, j: int) -> 'Polynomial':
        exps = [0] * n
        exps[j] = 1
        return Polynomial(n, {tuple(exps): 1})

    # ------------------------------------------------------------------
    # Arithmetic

    def _add_terms(self, other: 'Polynomial', sign: int) -> Dict[Exponent, Fraction]:
        if self.n != other.n:
            raise InvalidParameterError(f"variable count mismatch: {self.n} vs {other.n}")
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            value = terms.get(exps, 0) + sign * c
            if value:
                terms[exps] = value
            else:
                terms.pop(exps, None)
        return terms

    def _mul_terms(self, other: 'Polynomial') -> Dict[Exponent, Fraction]:
        if self.n != other.n:
            raise InvalidParameterError(f"variable count mismatch: {self.n} vs {other.n}")
        terms: Dict[Exponent, Fraction] = {}
        for e0, c0 in self.terms.items():
            for e1, c1 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e0, e1))
                terms[exps] = terms.get(exps, 0) + c0 * c1
        return {e: c for e, c in terms.items() if c}

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        return Polynomial(self.n, self._add_terms(other, 1))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        return Polynomial(self.n, self._add_terms(other, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return Polynomial(self.n, self._mul_terms(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Polynomial.constant(self.n, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c: Coefficient) -> 'Polynomial':
        c = Fraction(c)
        if c == 0:
            return Polynomial(self.n)
        return Polynomial(self.n, {e: c * v for e, v in self.terms.items()})

    # ------------------------------------------------------------------
    # Structure

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, j: int) -> int:
        if not self.terms:
            return -1
        return max(e[j] for e in self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def homogeneous_part(self, degree: int) -> 'Polynomial':
        return Polynomial(self.n, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def homogeneous_parts(self) -> Dict[int, 'Polynomial']:
        parts: Dict[int, Dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.n, terms) for d, terms in parts.items()}

    def top_part(self) -> 'Polynomial':
        return self.homogeneous_part(self.degree())

    def square_variables(self) -> 'Polynomial':
        """p(x_1^2, ..., x_n^2)"""
        return Polynomial(self.n, {tuple(2 * a for a in e): c for e, c in self.terms.items()})

    def halve_exponents(self) -> 'Polynomial':
        """Inverse of square_variables; every exponent must be even"""
        if any(a % 2 for e in self.terms for a in e):
            raise InvalidParameterError("polynomial has odd exponents")
        return Polynomial(self.n, {tuple(a // 2 for a in e): c for e, c in self.terms.items()})

    def permuted(self, permutation: Sequence[int]) -> 'Polynomial':
        """Relabel variables: x_i -> x_permutation[i]"""
        terms = {}
        for e, c in self.terms.items():
            exps = [0] * self.n
            for i, a in enumerate(e):
                exps[permutation[i]] = a
            terms[tuple(exps)] = c
        return Polynomial(self.n, terms)

    def swapped(self, j: int, k: int) -> 'Polynomial':
        permutation = list(range(self.n))
        permutation[j], permutation[k] = k, j
        return self.permuted(permutation)

    # ------------------------------------------------------------------
    # Calculus

    def derivative(self, j: int, order: int = 1) -> 'Polynomial':
        terms = {}
        for e, c in self.terms.items():
            if e[j] < order:
                continue
            factor = 1
            for i in range(order):
                factor *= e[j] - i
            exps = list(e)
            exps[j] -= order
            terms[tuple(exps)] = c * factor
        return Polynomial(self.n, terms)

    def laplacian(self) -> 'Polynomial':
        result = Polynomial(self.n)
        for j in range(self.n):
            result = result + self.derivative(j, 2)
        return result

    def euler(self) -> 'Polynomial':
        """sum_j x_j d/dx_j, which scales each monomial by its degree"""
        return Polynomial(self.n, {e: c * sum(e) for e, c in self.terms.items()})

    def multiply_variable(self, j: int, power: int = 1) -> 'Polynomial':
        terms = {}
        for e, c in self.terms.items():
            exps = list(e)
            exps[j] += power
            terms[tuple(exps)] = c
        return Polynomial(self.n, terms)

    def divide_linear(self, j: int, k: Optional[int] = None, sign: int = 1) -> 'Polynomial':
        """
        Exact quotient by (x_j - sign*x_k), or by x_j when k is None.

        Synthetic division in x_j with coefficients in the other variables;
        the remainder must vanish.
        """
        if k is None:
            if any(e[j] == 0 for e in self.terms):
                raise InexactDivisionError(f"polynomial is not divisible by x_{j + 1}")
            return self.multiply_variable(j, -1)

        by_power: Dict[int, Polynomial] = {}
        for e, c in self.terms.items():
            exps = list(e)
            power = exps[j]
            exps[j] = 0
            chunk = by_power.setdefault(power, Polynomial(self.n))
            chunk.terms[tuple(exps)] = chunk.terms.get(tuple(exps), 0) + c
        if not by_power:
            return Polynomial(self.n)

        root_exps = [0] * self.n
        root_exps[k] = 1
        root = Polynomial(self.n, {tuple(root_exps): sign})

        quotient = Polynomial(self.n)
        carry = Polynomial(self.n)
        for power in range(max(by_power), 0, -1):
            carry = by_power.get(power, Polynomial(self.n)) + root * carry
            quotient = quotient + carry.multiply_variable(j, power - 1)
        remainder = by_power.get(0, Polynomial(self.n)) + root * carry
        if not remainder.is_zero():
            divisor = f"x_{j + 1} {'-' if sign > 0 else '+'} x_{k + 1}"
            raise InexactDivisionError(
                f"division by ({divisor}) left a remainder with {len(remainder)} terms")
        return quotient

    # ------------------------------------------------------------------
    # Evaluation

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        if len(point) != self.n:
            raise InvalidParameterError(f"point has {len(point)} coordinates, expected {self.n}")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            value = c
            for x, a in zip(point, e):
                if a:
                    value *= x ** a
            total += value
        return total

    def evaluate_float(self, points) -> np.ndarray:
        """Evaluate at one point (shape (n,)) or many points (shape (m, n))"""
        points = np.asarray(points, dtype=float)
        single = points.ndim == 1
        points = np.atleast_2d(points)
        if not self.terms:
            values = np.zeros(points.shape[0])
        else:
            exps = np.array(list(self.terms.keys()), dtype=int)
            coeffs = np.array([float(c) for c in self.terms.values()])
            monomials = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
            values = monomials @ coeffs
        return values[0] if single else values

    # ------------------------------------------------------------------
    # Serialization

    def to_json(self) -> List[Dict[str, object]]:
        return [{'exp': list(e), 'coeff': format_rational(c)} for e, c in self]

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self:
            monomial = '*'.join(
                f"x{i + 1}" + (f"^{a}" if a > 1 else '') for i, a in enumerate(e) if a)
            if not monomial:
                pieces.append(format_rational(c))
            elif c == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{format_rational(c)}*{monomial}")
        return ' + '.join(pieces)


def poly_sum(polys: Iterable[Polynomial], n: int) -> Polynomial:
    result = Polynomial(n)
    for p in polys:
        result = result + p
    return result
