"""Exact construction of Rankin-Cohen type brackets for conformal densities.

Covers the parameter field Q(lambda, mu), the Fourier-side differential
operators, the reduced recurrences, the coefficient tables of the
singular vectors and the resulting bi-differential brackets.
"""

from .algebra import (
    LinearFactor,
    ParamPoly,
    ParamScalar,
    Var,
    ZeroDenominatorError,
    ZeroDivisorError,
    field_op,
    gamma_ratio,
    pochhammer,
    specialize,
)

__version__ = "0.1.0"
