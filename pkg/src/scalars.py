#!/usr/bin/env python3
"""
Exact scalars: rationals, Pochhammer symbols, Gamma at half-integers and the
ring Q[sqrt(omega)] tensored with formal half-integer powers of pi.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial, isqrt, pi, sqrt
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .errors import (InvalidParameterError, InternalAssertionError,
                     NonGenericParameterError, NotRepresentableError)
from .logger import get_logger

logger = get_logger(__name__)

RationalLike = Union[int, str, Fraction]

MAX_VARIABLES = 8
FAMILIES = ('A', 'B')


def parse_rational(value: RationalLike, name: str = "value") -> Fraction:
    """Parse "p/q", "p", an int or a Fraction into a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameterError(f"{name}: boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidParameterError(f"{name}: floats are not accepted in the exact core ({value})")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameterError(f"{name}: cannot parse rational {value!r}: {e}")


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1"""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None when irrational"""
    if q < 0:
        return None
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class Params:
    """Family tag, variable count and exact couplings of one session"""
    family: str
    n: int
    g0: Fraction = Fraction(0)
    g1: Fraction = Fraction(0)
    omega: Fraction = Fraction(1)

    def __post_init__(self):
        family = str(self.family).upper()
        if family not in FAMILIES:
            raise InvalidParameterError(f"family must be A or B, got {self.family!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise InvalidParameterError(f"n must be a positive integer, got {self.n!r}")
        if self.n > MAX_VARIABLES:
            raise InvalidParameterError(f"n={self.n} exceeds the supported maximum of {MAX_VARIABLES}")
        g0 = parse_rational(self.g0, "g0")
        g1 = parse_rational(self.g1, "g1")
        omega = parse_rational(self.omega, "omega")
        if g0 < 0:
            raise InvalidParameterError(f"g0 must be nonnegative, got {format_rational(g0)}")
        if g1 < 0:
            raise InvalidParameterError(f"g1 must be nonnegative, got {format_rational(g1)}")
        if omega <= 0:
            raise InvalidParameterError(f"omega must be positive, got {format_rational(omega)}")
        if family == 'A' and g1 != 0:
            logger.debug(f"Ignoring g1={format_rational(g1)} for family A")
            g1 = Fraction(0)
        object.__setattr__(self, 'family', family)
        object.__setattr__(self, 'g0', g0)
        object.__setattr__(self, 'g1', g1)
        object.__setattr__(self, 'omega', omega)

    @property
    def even(self) -> bool:
        return self.family == 'B'

    @property
    def integer_couplings(self) -> bool:
        return self.g0.denominator == 1 and self.g1.denominator == 1

    def require_integer_couplings(self, what: str):
        if not self.integer_couplings:
            raise InvalidParameterError(
                f"{what} needs integer couplings, got g0={format_rational(self.g0)}, "
                f"g1={format_rational(self.g1)}")

    def couplings(self) -> Dict[str, str]:
        return {
            'g0': format_rational(self.g0),
            'g1': format_rational(self.g1),
            'omega': format_rational(self.omega),
        }

    def with_n(self, n: int) -> 'Params':
        return replace(self, n=n)

    def key(self) -> Tuple:
        return (self.family, self.n, self.g0, self.g1, self.omega)

    def __str__(self):
        return (f"{self.family}(n={self.n}, g0={format_rational(self.g0)}, "
                f"g1={format_rational(self.g1)}, omega={format_rational(self.omega)})")


def pochhammer(a: RationalLike, l: int) -> Fraction:
    """Rising factorial [a]_l = a(a+1)...(a+l-1), with [a]_0 = 1"""
    if l < 0:
        raise InvalidParameterError(f"Pochhammer length must be nonnegative, got {l}")
    a = parse_rational(a, "a")
    result = Fraction(1)
    for i in range(l):
        result *= a + i
    return result


class ExactScalar:
    """
    Finite sum of q * pi^(k/2) * sqrt(omega)^f with rational q and f in {0, 1}.

    Integer powers of omega are folded into q. A scalar with no sqrt(omega)
    term may carry omega=None; it then combines with scalars of any omega.
    """

    __slots__ = ('terms', 'omega')

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Fraction]] = None,
                 omega: Optional[Fraction] = None):
        self.omega = None if omega is None else Fraction(omega)
        self.terms: Dict[Tuple[int, int], Fraction] = {}
        for (k, f), q in (terms or {}).items():
            self._accumulate(k, f, Fraction(q))

    def _accumulate(self, k: int, f: int, q: Fraction):
        if f not in (0, 1):
            raise InternalAssertionError(f"sqrt(omega) flag must be 0 or 1, got {f}")
        if f == 1:
            if self.omega is None:
                raise InternalAssertionError("sqrt(omega) term without a session omega")
            root = rational_sqrt(self.omega)
            if root is not None:
                f, q = 0, q * root
        value = self.terms.get((k, f), Fraction(0)) + q
        if value == 0:
            self.terms.pop((k, f), None)
        else:
            self.terms[(k, f)] = value

    # ------------------------------------------------------------------
    # Constructors

    @classmethod
    def rational(cls, q: RationalLike, omega: Optional[Fraction] = None) -> 'ExactScalar':
        return cls({(0, 0): parse_rational(q)}, omega)

    @classmethod
    def pi_power(cls, half_exponent: int, omega: Optional[Fraction] = None) -> 'ExactScalar':
        """pi^(half_exponent/2)"""
        return cls({(half_exponent, 0): Fraction(1)}, omega)

    @classmethod
    def omega_power(cls, exponent: RationalLike, omega: RationalLike) -> 'ExactScalar':
        """omega^e for e in Z/2"""
        omega = parse_rational(omega, "omega")
        twice = parse_rational(exponent) * 2
        if twice.denominator != 1:
            raise NotRepresentableError(f"omega power {exponent} is not in Z/2")
        k = twice.numerator
        whole, flag = divmod(k, 2)
        return cls({(0, flag): omega ** whole}, omega)

    # ------------------------------------------------------------------
    # Arithmetic

    def _merged_omega(self, other: 'ExactScalar') -> Optional[Fraction]:
        if self.omega is None:
            return other.omega
        if other.omega is None or other.omega == self.omega:
            return self.omega
        raise InternalAssertionError(
            f"Cannot combine scalars with omega={self.omega} and omega={other.omega}")

    def _coerce(self, other) -> 'ExactScalar':
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = ExactScalar(omega=self._merged_omega(other))
        for (k, f), q in list(self.terms.items()) + list(other.terms.items()):
            result._accumulate(k, f, q)
        return result

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({key: -q for key, q in self.terms.items()}, self.omega)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        omega = self._merged_omega(other)
        result = ExactScalar(omega=omega)
        for (k1, f1), q1 in self.terms.items():
            for (k2, f2), q2 in other.terms.items():
                q = q1 * q2
                f = f1 + f2
                if f == 2:
                    q, f = q * omega, 0
                result._accumulate(k1 + k2, f, q)
        return result

    __rmul__ = __mul__

    def inverse(self) -> 'ExactScalar':
        if not self.terms:
            raise ZeroDivisionError("division by the zero scalar")
        grades = {k for (k, _) in self.terms}
        if len(grades) != 1:
            raise NotRepresentableError(
                f"cannot invert a scalar mixing pi grades {sorted(grades)}")
        k = grades.pop()
        a = self.terms.get((k, 0), Fraction(0))
        b = self.terms.get((k, 1), Fraction(0))
        if b == 0:
            return ExactScalar({(-k, 0): 1 / a}, self.omega)
        # (a + b sqrt(w))^-1 = (a - b sqrt(w)) / (a^2 - b^2 w)
        norm = a * a - b * b * self.omega
        return ExactScalar({(-k, 0): a / norm, (-k, 1): -b / norm}, self.omega)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ExactScalar.rational(1, self.omega)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # ------------------------------------------------------------------
    # Queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRepresentableError(f"{self} is not a rational")
        return self.terms.get((0, 0), Fraction(0))

    def to_float(self) -> float:
        total = 0.0
        for (k, f), q in self.terms.items():
            value = float(q) * pi ** (k / 2)
            if f:
                value *= sqrt(float(self.omega))
            total += value
        return total

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {'halfPiExp': k, 'sqrtOmega': f, 'coeff': format_rational(q)}
            for (k, f), q in sorted(self.terms.items())
        ]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.terms != other.terms:
            return False
        has_root = any(f for (_, f) in self.terms)
        return not has_root or self.omega == other.omega

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "ExactScalar(0)"
        parts = []
        for (k, f), q in sorted(self.terms.items()):
            piece = format_rational(q)
            if k:
                piece += f"*pi^({k}/2)"
            if f:
                piece += "*sqrt(omega)"
            parts.append(piece)
        return f"ExactScalar({' + '.join(parts)})"


def gamma_half_integer(a: RationalLike, omega: Optional[Fraction] = None) -> ExactScalar:
    """
    Gamma(a) for a in Z/2, a > 0.

    Integer arguments give (a-1)!; half-integers give (2k)!/(4^k k!) sqrt(pi)
    for a = k + 1/2.
    """
    a = parse_rational(a, "a")
    if a <= 0 or (2 * a).denominator != 1:
        raise NotRepresentableError(f"Gamma({format_rational(a)}) is outside the exact ring")
    if a.denominator == 1:
        return ExactScalar.rational(factorial(a.numerator - 1), omega)
    k = int(a - Fraction(1, 2))
    coefficient = Fraction(factorial(2 * k), 4 ** k * factorial(k))
    return ExactScalar({(1, 0): coefficient}, omega)


def scalar_product(values: Iterable[ExactScalar], omega: Optional[Fraction] = None) -> ExactScalar:
    result = ExactScalar.rational(1, omega)
    for value in values:
        result = result * value
    return result


class LinearFactorProduct:
    """
    Product of factors (a + b*g0)^(+-1) evaluated at a fixed g0.

    A factor that vanishes at g0 but not identically contributes its slope b
    and one order of vanishing. The result is the limit of the product as the
    coupling approaches g0: zero for net positive order, a pole (raised) for
    net negative order.
    """

    def __init__(self, g0: Fraction):
        self.g0 = Fraction(g0)
        self.value = Fraction(1)
        self.order = 0
        self.vanishes = False

    def mul(self, a: RationalLike, b: RationalLike = 0) -> 'LinearFactorProduct':
        a, b = Fraction(a), Fraction(b)
        v = a + b * self.g0
        if v != 0:
            self.value *= v
        elif b != 0:
            self.value *= b
            self.order += 1
        else:
            self.vanishes = True
        return self

    def div(self, a: RationalLike, b: RationalLike = 0) -> 'LinearFactorProduct':
        a, b = Fraction(a), Fraction(b)
        v = a + b * self.g0
        if v != 0:
            self.value /= v
        elif b != 0:
            self.value /= b
            self.order -= 1
        else:
            raise NonGenericParameterError(f"identically vanishing denominator {a} + {b}*g0")
        return self

    def mul_pochhammer(self, a: RationalLike, b: RationalLike, length: int) -> 'LinearFactorProduct':
        """Multiply by [a + b*g0]_length"""
        for i in range(length):
            self.mul(Fraction(a) + i, b)
        return self

    def div_pochhammer(self, a: RationalLike, b: RationalLike, length: int) -> 'LinearFactorProduct':
        for i in range(length):
            self.div(Fraction(a) + i, b)
        return self

    def mul_shifted_ratio(self, c: RationalLike, d: RationalLike, sign: int) -> 'LinearFactorProduct':
        """Multiply by 1 + sign*g0/(c*g0 + d) = ((c + sign)g0 + d)/(c*g0 + d)"""
        self.mul(d, Fraction(c) + sign)
        self.div(d, c)
        return self

    def scale(self, q: RationalLike) -> 'LinearFactorProduct':
        return self.mul(q, 0)

    def result(self) -> Fraction:
        if self.vanishes or self.order > 0:
            return Fraction(0)
        if self.order < 0:
            raise NonGenericParameterError(
                f"coefficient has a pole of order {-self.order} at g0={format_rational(self.g0)}")
        return self.value
