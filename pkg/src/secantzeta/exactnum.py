"""Exact arithmetic: rationals, quadratic surds, Bernoulli/Euler polynomials.

Rationals are ``fractions.Fraction`` (arbitrary precision, always normalized
with a positive denominator).  Quadratic surds ``a + b*sqrt(d)`` with rational
a, b and square-free d form a field closed under +, -, *, / and are the
natural habitat of the eigenvalues and orbit points handled elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Rational",
    "Surd",
    "PolySpec",
    "rational_arith",
    "surd_arith",
    "sqrt_decompose",
    "sqrt_of_fraction",
    "poly_eval",
    "parse_rational",
    "format_rational",
]

Rational = Fraction

RationalLike = Union[int, Fraction]
Number = Union[int, Fraction, "Surd"]


def sqrt_decompose(n: int) -> tuple[int, int]:
    """Split n >= 1 into (d, m) with n = m**2 * d and d square-free."""
    if n < 1:
        raise ValueError(f"sqrt_decompose requires n >= 1, got {n}")
    d, m = n, 1
    # pull out square factors by trial division
    f = 2
    while f * f <= d:
        f2 = f * f
        while d % f2 == 0:
            d //= f2
            m *= f
        f += 1 if f == 2 else 2
    return d, m


@dataclass(frozen=True)
class Surd:
    """Immutable quadratic irrational a + b*sqrt(d).

    Canonical form: d square-free, and d == 1 exactly when b == 0 (rational
    embedding).  Use :meth:`make` rather than the raw constructor when the
    radicand may contain a square factor.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d < 1:
            raise ValueError(f"radicand must be >= 1, got {self.d}")
        df, mf = sqrt_decompose(self.d)
        if mf != 1:
            raise ValueError(f"radicand {self.d} is not square-free; use Surd.make")
        if self.b == 0 and self.d != 1:
            object.__setattr__(self, "d", 1)
        if self.d == 1 and self.b != 0:
            # sqrt(1) folds into the rational part
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @staticmethod
    def make(a: RationalLike, b: RationalLike = 0, radicand: int = 1) -> "Surd":
        """Build a + b*sqrt(radicand), canonicalizing the square part."""
        if radicand < 1:
            raise ValueError(f"radicand must be >= 1, got {radicand}")
        d, m = sqrt_decompose(radicand)
        return Surd(Fraction(a), Fraction(b) * m, d)

    @staticmethod
    def from_number(x: Number) -> "Surd":
        if isinstance(x, Surd):
            return x
        return Surd(Fraction(x), Fraction(0), 1)

    # -- predicates ------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def _coerce(self, other) -> "Surd | None":
        if isinstance(other, Surd):
            if other.b == 0 or self.b == 0 or other.d == self.d:
                return other
            raise ValueError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
        if isinstance(other, (int, Fraction)):
            return Surd(Fraction(other), Fraction(0), 1)
        return None

    def _common_d(self, other: "Surd") -> int:
        return self.d if self.b != 0 else other.d

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        return Surd(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        a = self.a * o.a + self.b * o.b * d
        b = self.a * o.b + self.b * o.a
        return Surd(a, b, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("surd division by zero")
        # multiply by the conjugate; the norm a^2 - b^2 d is a nonzero rational
        norm = o.a * o.a - o.b * o.b * o.d
        return (self * o.conjugate()) * Surd(Fraction(1) / norm, Fraction(0), 1)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- comparisons -----------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d) (-1, 0, or +1)."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        return (1 if a > 0 else -1) if bigger_rational else (1 if b > 0 else -1)

    def __abs__(self) -> "Surd":
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        if isinstance(other, Surd):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        diff = self - other
        if not isinstance(diff, Surd):
            return NotImplemented
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversions -----------------------------------------------------

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor, verified with exact comparisons."""
        if self.b == 0:
            return math.floor(self.a)
        t = math.floor(float(self))
        while self._cmp(t) < 0:
            t -= 1
        while self._cmp(t + 1) >= 0:
            t += 1
        return t

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        b_str = format_rational(abs(self.b))
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)}{sign}{b_str}*sqrt({self.d})"


def sqrt_of_fraction(x: Fraction) -> Surd:
    """Exact sqrt(x) for a positive rational x, as a canonical surd."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"sqrt of non-positive rational {x}")
    # sqrt(u/v) = sqrt(u*v)/v
    u, v = x.numerator, x.denominator
    return Surd.make(0, Fraction(1, v), u * v)


def rational_arith(x: RationalLike, y: RationalLike, op: str) -> Fraction:
    """Exact rational arithmetic dispatch for op in {add, sub, mul, div}."""
    x, y = Fraction(x), Fraction(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("rational division by zero")
        return x / y
    raise ValueError(f"unknown op {op!r}")


def surd_arith(x: Surd, y: Surd, op: str) -> Surd:
    """Exact surd arithmetic dispatch; radicands must be compatible."""
    if op == "add":
        r = x + y
    elif op == "sub":
        r = x - y
    elif op == "mul":
        r = x * y
    elif op == "div":
        r = x / y
    else:
        raise ValueError(f"unknown op {op!r}")
    return r


# -- Bernoulli / Euler polynomials ---------------------------------------
#
# Coefficients (constant term first), exact.  Degrees are fixed: the
# Bernoulli sum formula only ever needs B_0..B_3, the Euler values E_1, E_2.

_BERNOULLI = {
    0: (Fraction(1),),
    1: (Fraction(-1, 2), Fraction(1)),
    2: (Fraction(1, 6), Fraction(-1), Fraction(1)),
    3: (Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(1)),
}

_EULER = {
    1: (Fraction(-1, 2), Fraction(1)),
    2: (Fraction(0), Fraction(-1), Fraction(1)),
}


@dataclass(frozen=True)
class PolySpec:
    """Selects a fixed polynomial: family 'bernoulli' (deg 0..3) or 'euler' (deg 1..2)."""

    family: str
    degree: int

    def __post_init__(self) -> None:
        if self.family not in ("bernoulli", "euler"):
            raise ValueError(f"unknown polynomial family {self.family!r}")
        table = _BERNOULLI if self.family == "bernoulli" else _EULER
        if self.degree not in table:
            raise ValueError(f"unsupported degree {self.degree} for {self.family}")


def poly_eval(spec: PolySpec, x: RationalLike) -> Fraction:
    """Exact value of the selected Bernoulli/Euler polynomial at rational x."""
    table = _BERNOULLI if spec.family == "bernoulli" else _EULER
    coeffs = table[spec.degree]
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bernoulli_poly(degree: int, x: RationalLike) -> Fraction:
    return poly_eval(PolySpec("bernoulli", degree), x)


def euler_poly(degree: int, x: RationalLike) -> Fraction:
    return poly_eval(PolySpec("euler", degree), x)


# -- serialization -------------------------------------------------------

def format_rational(x: RationalLike) -> str:
    """Serialize a rational as "p/q", or plain "p" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact Fraction."""
    return Fraction(text.strip())


def format_value(x: Number) -> str:
    """Serialize a rational or surd for CLI output."""
    if isinstance(x, Surd):
        return str(x)
    return format_rational(x)
