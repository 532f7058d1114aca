#!/usr/bin/env python3
"""Exact linear solves over Q through sympy matrices"""

from fractions import Fraction
from typing import List, Sequence

import sympy

from .errors import InconsistentSystemError, SingularSystemError


def to_sympy(q) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def from_sympy(value) -> Fraction:
    value = sympy.nsimplify(value) if not isinstance(value, sympy.Rational) else value
    if not isinstance(value, sympy.Rational):
        raise SingularSystemError(f"non-rational entry {value} in an exact solve")
    return Fraction(int(value.p), int(value.q))


def _matrix(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in rows])


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve a square nonsingular system A a = b exactly"""
    if not matrix:
        return []
    a = _matrix(matrix)
    if a.det() == 0:
        raise SingularSystemError(f"singular {a.rows}x{a.cols} system")
    b = sympy.Matrix([to_sympy(x) for x in rhs])
    solution = a.LUsolve(b)
    return [from_sympy(x) for x in solution]


def solve_unique(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve a possibly overdetermined system; the solution must exist and be unique"""
    if not matrix:
        return []
    a = _matrix(matrix)
    b = sympy.Matrix([to_sympy(x) for x in rhs])
    try:
        solution, free = a.gauss_jordan_solve(b)
    except ValueError as e:
        raise InconsistentSystemError(f"no solution: {e}")
    if free.shape[0] != 0:
        raise SingularSystemError(f"solution has {free.shape[0]} free parameters")
    return [from_sympy(x) for x in solution]
