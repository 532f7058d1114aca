#!/usr/bin/env python3
"""
Exception hierarchy for the Calogero polynomial toolkit.

Operations raise; the suite runner and the CLI catch, log and turn the
exception into a case status or a process exit code.
"""


class CalogeroError(Exception):
    """Base class for every error raised by this package"""


class InvalidParameterError(CalogeroError, ValueError):
    """Bad Params, partition, signed index set or CLI input"""


class NonGenericParameterError(CalogeroError):
    """A coefficient has a genuine pole at the chosen couplings"""


class NotRepresentableError(CalogeroError, ValueError):
    """Value lies outside the exact scalar ring"""


class InexactDivisionError(CalogeroError, ArithmeticError):
    """Polynomial division left a nonzero remainder"""


class AsymmetricPolynomialError(CalogeroError, ValueError):
    """Term map is not closed under the permutation action"""


class SingularSystemError(CalogeroError):
    """Exact linear system has no unique solution"""


class InconsistentSystemError(SingularSystemError):
    """Exact linear system has no solution at all"""


class DenominatorHitError(CalogeroError, ZeroDivisionError):
    """A coefficient function of a difference operator vanishes at the point"""


class InterpolationOverflowError(CalogeroError):
    """Series extraction still disagrees after raising the degree bound"""


class SingularPointError(CalogeroError, ValueError):
    """Evaluation point too close to a singular hyperplane"""


class QuadratureError(CalogeroError):
    """Adaptive quadrature did not reach the requested accuracy"""


class InternalAssertionError(CalogeroError, AssertionError):
    """Guarded invariant violated; indicates a bug rather than bad input"""
