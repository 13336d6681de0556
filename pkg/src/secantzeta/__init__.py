"""Exact and numerical evaluation of the secant zeta function.

psi(r) = (4/pi^2) sum_{n>=1} sec(n pi r)/n^2 and its 1-antiperiodization
f(r) = (psi(r) - psi(r+1))/2 are evaluated exactly (closed forms at
1/sqrt(n) families, unit fractions, and quadratic-irrational orbit points)
and numerically (truncated series).  Every functional identity they satisfy
is exposed as a checkable residual, and the zeros of f at 1/sqrt(n) can be
scanned against the prediction n = 16p(p+1).
"""

from .closedform import (
    ExactValue,
    Representation,
    classify,
    f_at_inverse_sqrt,
    f_at_rational,
    psi_at_inverse_sqrt,
    psi_at_rational,
    represent,
)
from .exactnum import Rational, Surd
from .series import SeriesResult, batch_eval, eval_f, eval_psi

__version__ = "0.1.0"

__all__ = [
    "ExactValue",
    "Rational",
    "Representation",
    "SeriesResult",
    "Surd",
    "batch_eval",
    "classify",
    "eval_f",
    "eval_psi",
    "f_at_inverse_sqrt",
    "f_at_rational",
    "psi_at_inverse_sqrt",
    "psi_at_rational",
    "represent",
    "__version__",
]
