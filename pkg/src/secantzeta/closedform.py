"""Closed-form values of the secant series psi and its antiperiodization f.

psi(r) = (4/pi^2) sum_{n>=1} sec(n pi r)/n^2 is even and 2-periodic, singular
at rationals with even reduced denominator.  f(r) = (psi(r) - psi(r+1))/2 is
even and 1-antiperiodic, singular at rationals with reduced denominator
congruent to 2 mod 4.

Exact values are available on several families of points:

* sqrt(p/q) and (1/2)sqrt(p/q) with q = 2K(2pK+1), via closure of the Abel
  equations for Phi(r) = (3/4)(psi(r)/r + r) and G(r) = f(r)/(2r) along the
  orbits of r -> r/(1+2r), resp. r -> r/(1+4r);
* unit fractions 1/q (f only), by a mod-4 rule;
* points 1/2 - 1/(4K+2l), l in {1,2}, from alternating shift/orbit steps;
* sqrt(2p(2p+1)) - 2p, by periodicity plus the double-argument relation.

``represent`` maps an integer n to an orbit-closure witness (K, p, q) when
1/sqrt(n) belongs to one of the sqrt families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import Surd, sqrt_of_fraction

__all__ = [
    "ExactValue",
    "PointClass",
    "Representation",
    "SqrtEvaluation",
    "RationalEvaluation",
    "classify",
    "represent",
    "psi_sqrt_family",
    "psi_orbit_seed",
    "f_half_sqrt_family",
    "f_orbit_seed",
    "psi_half_sqrt_family",
    "f_unit_fraction",
    "f_near_half_family",
    "f_consecutive_sqrt",
    "psi_at_inverse_sqrt",
    "f_at_inverse_sqrt",
    "psi_at_rational",
    "f_at_rational",
]

Point = Union[Fraction, Surd]


# -- result containers -----------------------------------------------------

@dataclass(frozen=True)
class ExactValue:
    """Finite rational value, a singularity marker, or 'no exact route'."""

    kind: str  # "finite" | "singular" | "not_representable"
    value: Optional[Fraction] = None

    @staticmethod
    def finite(x) -> "ExactValue":
        return ExactValue("finite", Fraction(x))

    @staticmethod
    def singular() -> "ExactValue":
        return ExactValue("singular")

    @staticmethod
    def not_representable() -> "ExactValue":
        return ExactValue("not_representable")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_singular(self) -> bool:
        return self.kind == "singular"


@dataclass(frozen=True)
class PointClass:
    """Canonical representative of a point under the symmetries of psi or f."""

    canonical: Point     # in [0, 1] for psi, [0, 1/2] for f
    sign: int            # f(r) = sign * f(canonical); always +1 for psi
    singular: bool
    form: str            # "rational" | "inverse_sqrt" | "surd"
    sqrt_n: Optional[int] = None  # n when canonical == 1/sqrt(n)


@dataclass(frozen=True)
class Representation:
    """Witness (K, p, q) with q = 2K(2pK+1) tying n to a sqrt family."""

    K: int
    p: int
    q: int
    target: str  # "psi_sqrt" | "f_sqrt"


@dataclass(frozen=True)
class SqrtEvaluation:
    value: ExactValue
    witness: Optional[Representation]
    route: str


@dataclass(frozen=True)
class RationalEvaluation:
    value: ExactValue
    route: str
    canonical: Fraction
    sign: int


# -- classification ---------------------------------------------------------

def _floor(x: Point) -> int:
    if isinstance(x, Surd):
        return x.floor()
    return math.floor(x)


def _rational_singular(x: Fraction, fn: str) -> bool:
    den = x.denominator
    if fn == "psi":
        return den % 2 == 0
    return den % 4 == 2


def classify(r: Point, fn: str = "psi") -> PointClass:
    """Reduce r by the symmetries of psi or f and flag singularities.

    psi: even and 2-periodic, canonical range [0, 1].
    f: even, 1-antiperiodic and antisymmetric about 1/2, canonical [0, 1/2];
    the accumulated sign satisfies f(r) = sign * f(canonical).
    """
    if fn not in ("psi", "f"):
        raise ValueError(f"unknown function {fn!r}")
    x: Point = Fraction(r) if isinstance(r, int) else r
    if isinstance(x, Surd) and x.is_rational:
        x = x.as_fraction()
    sign = 1

    x = x - 2 * _floor(x / 2)  # into [0, 2)
    if fn == "psi":
        if x > 1:
            x = 2 - x  # evenness + periodicity
    else:
        if x > 1:
            x = x - 1
            sign = -sign  # antiperiodicity
        if x > Fraction(1, 2):
            x = 1 - x
            sign = -sign  # antisymmetry about 1/2

    if isinstance(x, Surd) and x.is_rational:
        x = x.as_fraction()

    if isinstance(x, Fraction):
        return PointClass(x, sign, _rational_singular(x, fn), "rational")

    # irrational surd: never singular; detect the 1/sqrt(n) shape
    sqrt_n = None
    form = "surd"
    if x.a == 0:
        num2 = x.b.numerator ** 2 * x.d
        den2 = x.b.denominator ** 2
        if x.b > 0 and den2 % num2 == 0:
            sqrt_n = den2 // num2
            form = "inverse_sqrt"
    return PointClass(x, sign, False, form, sqrt_n)


# -- representation solver ----------------------------------------------------

def represent(n: int, target: str) -> Optional[Representation]:
    """Smallest-K witness (K, p, q) with 1/sqrt(n) in the requested family.

    psi_sqrt: 1/sqrt(n) = sqrt(p/q)      <=>  p = 2K / (n - 4K^2)
    f_sqrt:   1/sqrt(n) = (1/2)sqrt(p/q) <=>  p = 8K / (n - 16K^2)

    Negative p (with q negative alongside) is a valid witness.  Returns None
    when no K in 1..ceil(sqrt(n)) yields a nonzero integer p.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if target not in ("psi_sqrt", "f_sqrt"):
        raise ValueError(f"unknown target {target!r}")
    k_sq, num_factor = (4, 2) if target == "psi_sqrt" else (16, 8)
    k_max = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
    for K in range(1, k_max + 1):
        den = n - k_sq * K * K
        if den == 0:
            continue
        num = num_factor * K
        if num % den != 0:
            continue
        p = num // den
        if p == 0:
            continue
        q = 2 * K * (2 * p * K + 1)
        return Representation(K, p, q, target)
    return None


# -- sqrt families ------------------------------------------------------------

def _family_q(K: int, p: int) -> int:
    if K <= 0:
        raise ValueError(f"K must be positive, got {K}")
    if p == 0:
        raise ValueError("p must be nonzero")
    return 2 * K * (2 * p * K + 1)


def psi_sqrt_family(K: int, p: int) -> tuple[Surd, Fraction]:
    """Point sqrt(p/q) and exact psi there, q = 2K(2pK+1)."""
    q = _family_q(K, p)
    pq = Fraction(p, q)
    if pq <= 0:
        raise ValueError(f"p/q = {pq} must be positive")
    r = sqrt_of_fraction(pq)
    value = Fraction(2, 3) + Fraction(p, K) - pq
    return r, value


def psi_orbit_seed(K: int, p: int) -> tuple[Surd, Fraction]:
    """Seed point r0 = p(1 + sqrt(1 + 1/(2pK))) and exact psi(r0) = 2/3 + p/(2K)."""
    _family_q(K, p)
    disc = 1 + Fraction(1, 2 * p * K)
    if disc < 0:
        raise ValueError(f"negative discriminant 1 + 1/(2pK) = {disc}")
    root = sqrt_of_fraction(disc)
    r0 = p + p * root
    return r0, Fraction(2, 3) + Fraction(p, 2 * K)


def f_half_sqrt_family(K: int, p: int) -> tuple[Surd, Fraction]:
    """Point (1/2)sqrt(p/q) and exact f there: 1/2 for even p, 1/2 - K/q for odd."""
    q = _family_q(K, p)
    pq = Fraction(p, q)
    if pq <= 0:
        raise ValueError(f"p/q = {pq} must be positive")
    s = Fraction(1, 2) * sqrt_of_fraction(pq)
    value = Fraction(1, 2) if p % 2 == 0 else Fraction(1, 2) - Fraction(K, q)
    return s, value


def f_orbit_seed(K: int, p: int) -> tuple[Surd, Union[Fraction, Surd]]:
    """Seed s0 = (p/2)(1 + sqrt(1 + 1/(2pK))); f(s0) = 1/2 (p even) or -2K s_K (p odd)."""
    _family_q(K, p)
    disc = 1 + Fraction(1, 2 * p * K)
    if disc < 0:
        raise ValueError(f"negative discriminant 1 + 1/(2pK) = {disc}")
    root = sqrt_of_fraction(disc)
    s0 = Fraction(p, 2) + Fraction(p, 2) * root
    if p % 2 == 0:
        return s0, Fraction(1, 2)
    s_k, _ = f_half_sqrt_family(K, p)
    return s0, -2 * K * s_k


def psi_half_sqrt_family(K: int, p: int) -> tuple[Surd, Fraction]:
    """Point (1/2)sqrt(p/q) and exact psi there via f plus the double-argument relation."""
    q = _family_q(K, p)
    s, _ = f_half_sqrt_family(K, p)
    value = Fraction(2, 3) + Fraction(p, 4 * K) - Fraction(p, 4 * q)
    if p % 2 != 0:
        value -= Fraction(K, q)
    return s, value


def f_unit_fraction(q: int) -> ExactValue:
    """f(1/q) by the mod-4 rule: 1/2, 1/2-1/q, singular, 1/2+1/q for q = 0,1,2,3 mod 4."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    m = q % 4
    if m == 0:
        return ExactValue.finite(Fraction(1, 2))
    if m == 1:
        return ExactValue.finite(Fraction(1, 2) - Fraction(1, q))
    if m == 2:
        return ExactValue.singular()
    return ExactValue.finite(Fraction(1, 2) + Fraction(1, q))


def f_near_half_family(K: int, l: int) -> tuple[Fraction, Fraction]:
    """Point s_K = 1/2 - 1/(4K+2l) (l in {1,2}) and exact f(s_K).

    Reached by K alternating unit-shift / orbit steps from 1/2 - 1/(2l);
    f(s_K) = (1/4)/(1-2s_K) + (2-l)(1-2s_K)/4.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if l not in (1, 2):
        raise ValueError(f"l must be 1 or 2, got {l}")
    s = Fraction(1, 2) - Fraction(1, 4 * K + 2 * l)
    gap = 1 - 2 * s
    value = Fraction(1, 4) / gap + (2 - l) * gap / 4
    return s, value


def f_consecutive_sqrt(p: int) -> tuple[Surd, Fraction]:
    """Point sqrt(2p(2p+1)) - 2p in (0, 1/2) and exact f there, equal to 2p + 1/2.

    The value is attained at the 2-periodic shift sqrt(2p(2p+1)) of the point.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    r = Surd.make(-2 * p, 1, 2 * p * (2 * p + 1))
    return r, 2 * p + Fraction(1, 2)


# -- exact evaluation at 1/sqrt(n) and at rationals ---------------------------

def psi_at_rational(r: Fraction) -> RationalEvaluation:
    """Exact psi at a rational point, when the canonical form is 0, 1, or singular."""
    pc = classify(Fraction(r), "psi")
    x = pc.canonical
    if pc.singular:
        return RationalEvaluation(ExactValue.singular(), "singular", x, 1)
    if x == 0:
        return RationalEvaluation(ExactValue.finite(Fraction(2, 3)), "integer_point", x, 1)
    if x == 1:
        # psi(1) = psi(2) - 2 f(1) = 2/3 - 1 from the antiperiodization relation
        return RationalEvaluation(ExactValue.finite(Fraction(-1, 3)), "integer_point", x, 1)
    return RationalEvaluation(ExactValue.not_representable(), "none", x, 1)


def f_at_rational(r: Fraction) -> RationalEvaluation:
    """Exact f at a rational point via the unit-fraction and near-half families."""
    pc = classify(Fraction(r), "f")
    x, sign = pc.canonical, pc.sign
    if pc.singular:
        return RationalEvaluation(ExactValue.singular(), "singular", x, sign)
    if x == 0:
        return RationalEvaluation(
            ExactValue.finite(sign * Fraction(1, 2)), "integer_point", x, sign)
    if x.numerator == 1:
        val = f_unit_fraction(x.denominator)
        if val.is_finite:
            val = ExactValue.finite(sign * val.value)
        return RationalEvaluation(val, "unit_fraction", x, sign)
    gap = Fraction(1, 2) - x
    if gap.numerator == 1:
        m = gap.denominator  # even here: odd m would be singular (den 2m = 2 mod 4)
        l = 2 if m % 4 == 0 else 1
        K = (m - 2 * l) // 4
        if K >= 1:
            _, val = f_near_half_family(K, l)
            return RationalEvaluation(ExactValue.finite(sign * val), "near_half", x, sign)
    return RationalEvaluation(ExactValue.not_representable(), "none", x, sign)


def _f_core(n: int) -> Optional[Fraction]:
    """f(1/sqrt(n)) from the square/representation routes only (no recursion)."""
    m = math.isqrt(n)
    if m * m == n:
        val = f_unit_fraction(m)
        return val.value if val.is_finite else None
    rep = represent(n, "f_sqrt")
    if rep is not None:
        _, value = f_half_sqrt_family(rep.K, rep.p)
        return value
    return None


def psi_at_inverse_sqrt(n: int) -> SqrtEvaluation:
    """Exact psi(1/sqrt(n)), trying every closed-form route."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = math.isqrt(n)
    if m * m == n:
        r = psi_at_rational(Fraction(1, m))
        if r.value.kind != "not_representable":
            return SqrtEvaluation(r.value, None, r.route)
    rep = represent(n, "psi_sqrt")
    if rep is not None:
        _, value = psi_sqrt_family(rep.K, rep.p)
        return SqrtEvaluation(ExactValue.finite(value), rep, "sqrt_family")
    rep = represent(n, "f_sqrt")
    if rep is not None:
        _, value = psi_half_sqrt_family(rep.K, rep.p)
        return SqrtEvaluation(ExactValue.finite(value), rep, "half_sqrt_family")
    if n % 4 == 0:
        f_val = _f_core(n)
        quarter = psi_at_inverse_sqrt(n // 4)
        if f_val is not None and quarter.value.is_finite:
            # psi(r) = f(r) + psi(2r)/4 with 2r = 1/sqrt(n/4)
            return SqrtEvaluation(
                ExactValue.finite(f_val + quarter.value.value / 4), None, "double_argument")
    return SqrtEvaluation(ExactValue.not_representable(), None, "none")


def f_at_inverse_sqrt(n: int) -> SqrtEvaluation:
    """Exact f(1/sqrt(n)), trying every closed-form route."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = math.isqrt(n)
    if m * m == n:
        r = f_at_rational(Fraction(1, m))
        return SqrtEvaluation(r.value, None, r.route)
    rep = represent(n, "f_sqrt")
    if rep is not None:
        _, value = f_half_sqrt_family(rep.K, rep.p)
        return SqrtEvaluation(ExactValue.finite(value), rep, "half_sqrt_family")
    if n % 4 == 0:
        whole = psi_at_inverse_sqrt(n)
        quarter = psi_at_inverse_sqrt(n // 4)
        if whole.value.is_finite and quarter.value.is_finite:
            # f(r) = psi(r) - psi(2r)/4 with 2r = 1/sqrt(n/4)
            return SqrtEvaluation(
                ExactValue.finite(whole.value.value - quarter.value.value / 4),
                None, "double_argument")
    return SqrtEvaluation(ExactValue.not_representable(), None, "none")
