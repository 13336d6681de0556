"""Charollois-Greenberg Bernoulli-polynomial formula for psi at 1/sqrt(p(p+1)).

For r = 1/sqrt(n) with n = p(p+1), the column vector (2r, 1) is an
eigenvector of an explicit V in SL2(Z), and psi(r) equals a finite double sum
of Bernoulli polynomial products evaluated over Q(sqrt(n)):

    psi(r) = 32/(lam(lam-1)) * sum_{j=1..c} sum_{l=0..3}
             B_l(x_j)/l! * B_{3-l}(y_j)/(3-l)! * (-lam)^l,

with x_j = (j - 1/4)/c, y_j = frac(d x_j), and lam = 2rc + d the eigenvalue
built from the second row (c, d) of the matrix.  The formula's derivation
needs the row vector (1/4, 0) to be fixed mod Z^2, which the plain V achieves
only for even p; squaring V fixes it for every p.  Both variants are exposed
so the mismatch is reproducible.

Everything here is exact: x_j, y_j and the Bernoulli values are Fractions,
the eigenvalue a quadratic surd, so rationality of the result is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import closedform
from .exactnum import Surd, bernoulli_poly, sqrt_of_fraction

__all__ = [
    "CostBoundError",
    "ModularWitness",
    "CGResult",
    "build_witness",
    "row_congruence_holds",
    "cg_eval",
    "cg_compare",
    "COST_BOUND_TERMS",
]

COST_BOUND_TERMS = 1_000_000

# B_l(x)/l! for l = 0..3
_FACT = (1, 1, 2, 6)


class CostBoundError(RuntimeError):
    """The j-sum would exceed the configured exact-arithmetic cost bound."""

    def __init__(self, p: int, terms: int):
        self.p = p
        self.terms = terms
        super().__init__(
            f"cg_eval(p={p}) needs {terms} exact-arithmetic terms "
            f"(> {COST_BOUND_TERMS}); pass force=True to run anyway"
        )


@dataclass(frozen=True)
class ModularWitness:
    """SL2(Z) matrix fixing (2r, 1) projectively at r = 1/sqrt(p(p+1))."""

    p: int
    n: int
    a: int
    b: int
    c: int
    d: int
    squared: bool
    lam: Surd

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c


def build_witness(p: int, squared: bool) -> ModularWitness:
    """Matrix, eigenvalue, and exact eigen-relation check for n = p(p+1)."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    n = p * (p + 1)
    a, b = 2 * p + 1, 4
    c, d = n, 2 * p + 1
    if squared:
        a = d * d + 4 * n
        b = 8 * (2 * p + 1)
        c = 2 * n * d
        d = a
    r = sqrt_of_fraction(Fraction(1, n))
    lam = 2 * r * c + d
    w = ModularWitness(p, n, a, b, c, d, squared, lam)
    if w.determinant != 1:
        raise AssertionError(f"witness for p={p} has determinant {w.determinant}")
    # eigen-relation V (2r, 1)^T = lam (2r, 1)^T, exactly
    if a * (2 * r) + b != lam * (2 * r) or c * (2 * r) + d != lam:
        raise AssertionError(f"eigen-relation fails for p={p}, squared={squared}")
    return w


def row_congruence_holds(w: ModularWitness) -> bool:
    """Whether (1/4, 0) V == (1/4, 0) mod Z^2, the formula's hypothesis."""
    left = Fraction(w.a, 4) - Fraction(1, 4)
    right = Fraction(w.b, 4)
    return left.denominator == 1 and right.denominator == 1


@dataclass(frozen=True)
class CGResult:
    value: Surd
    rational_part: Fraction
    irrational_part_zero: bool


def cg_eval(p: int, squared: bool, force: bool = False) -> CGResult:
    """Exact evaluation of the Bernoulli double sum for n = p(p+1)."""
    w = build_witness(p, squared)
    c, d = w.c, w.d
    if c > COST_BOUND_TERMS and not force:
        raise CostBoundError(p, c)

    # accumulate the four l-coefficients sum_j B_l(x_j)/l! * B_{3-l}(y_j)/(3-l)!
    coeffs = [Fraction(0)] * 4
    for j in range(1, c + 1):
        x = Fraction(4 * j - 1, 4 * c)
        t = d * x
        y = t - math.floor(t)
        bx = [bernoulli_poly(l, x) / _FACT[l] for l in range(4)]
        by = [bernoulli_poly(l, y) / _FACT[l] for l in range(4)]
        for l in range(4):
            coeffs[l] += bx[l] * by[3 - l]

    lam = w.lam
    acc: Surd | Fraction = Fraction(0)
    for l in range(3, -1, -1):  # Horner in (-lam)
        acc = coeffs[l] - lam * acc
    value = 32 * acc / (lam * (lam - 1))
    value = Surd.from_number(value) if not isinstance(value, Surd) else value
    return CGResult(value, value.a, value.b == 0)


def cg_compare(p: int, force: bool = False) -> dict:
    """Plain vs squared variant vs the closed-form value at 1/sqrt(p(p+1))."""
    plain = cg_eval(p, squared=False, force=force)
    squared = cg_eval(p, squared=True, force=force)
    closed = closedform.psi_at_inverse_sqrt(p * (p + 1))
    match_plain: Optional[bool] = None
    match_squared: Optional[bool] = None
    if closed.value.is_finite:
        match_plain = plain.value == closed.value.value
        match_squared = squared.value == closed.value.value
    return {
        "p": p,
        "cg_plain": plain,
        "cg_squared": squared,
        "closedform_value": closed.value,
        "match_plain": match_plain,
        "match_squared": match_squared,
    }
