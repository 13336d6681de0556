"""Moebius maps, Abel-equation transforms, and functional-identity residuals.

The map phi(r) = r/(1+2r) turns the two-point reciprocity identity for psi
into the Abel equation BigPhi(phi(r)) - BigPhi(r) = 1 for
BigPhi(r) = (3/4)(psi(r)/r + r); g = phi o phi plays the same role for f via
BigG(r) = f(r)/(2r).  Orbits of these maps, the homothety action they induce
on the graphs, and residual checks for every functional identity live here.

Residuals can be computed against exact closed-form chains (zero residual)
or against truncated series (tolerance tied to the tail estimates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from . import closedform, series
from .exactnum import Surd

__all__ = [
    "MapPoleError",
    "Residual",
    "SeriesEvaluator",
    "MappingEvaluator",
    "MAP_KINDS",
    "TRANSFORM_KINDS",
    "IDENTITY_IDS",
    "apply_map",
    "orbit",
    "transform",
    "homothety",
    "unit_shift_orbit_step",
    "psi_exact_chain",
    "f_exact_chain",
    "identity_residual",
]

Value = Union[int, float, Fraction, Surd]

MAP_KINDS = ("phi", "phi_inverse", "g", "g_inverse", "unit_shift_left")
TRANSFORM_KINDS = ("big_phi", "big_g", "pi", "phi_tilde")

_MOBIUS_COEF = {"phi": 2, "phi_inverse": -2, "g": 4, "g_inverse": -4}


class MapPoleError(ZeroDivisionError):
    """The Moebius map was applied at (or an orbit crossed) its pole."""


def _is_zero(x: Value) -> bool:
    if isinstance(x, Surd):
        return x.a == 0 and x.b == 0
    return x == 0


def apply_map(kind: str, r: Value) -> Value:
    """phi(r)=r/(1+2r), g(r)=r/(1+4r), their inverses, or the shift r-1."""
    if kind == "unit_shift_left":
        return r - 1
    if kind not in _MOBIUS_COEF:
        raise ValueError(f"unknown map kind {kind!r}")
    den = 1 + _MOBIUS_COEF[kind] * r
    if _is_zero(den):
        raise MapPoleError(f"map {kind} has a pole at r={r}")
    return r / den


def orbit(r0: Value, kind: str, k: int) -> Value:
    """k-th iterate of the map; closed form 1/r_k = 1/r_0 + ck for Moebius kinds."""
    if k < 0:
        raise ValueError(f"iteration count must be >= 0, got {k}")
    if k == 0:
        return r0
    if kind == "unit_shift_left":
        return r0 - k
    if kind not in _MOBIUS_COEF:
        raise ValueError(f"unknown map kind {kind!r}")
    c = _MOBIUS_COEF[kind]
    # a pole is crossed iff r0 = -1/(c j) for some 1 <= j <= k
    if not _is_zero(r0):
        t = -1 / (Fraction(c) * r0) if not isinstance(r0, float) else -1.0 / (c * r0)
        if isinstance(t, Surd) and t.is_rational:
            t = t.as_fraction()
        if isinstance(t, Fraction) and t.denominator == 1 and 1 <= t.numerator <= k:
            raise MapPoleError(f"orbit of {kind} from r0={r0} hits a pole at step {t.numerator}")
    den = 1 + c * k * r0
    if _is_zero(den):
        raise MapPoleError(f"orbit of {kind} from r0={r0} hits a pole at step {k}")
    return r0 / den


def transform(kind: str, r: Value, base_value: Value) -> Value:
    """Transformed function value from psi or f at r.

    big_phi: (3/4)(psi/r + r);  big_g: f/(2r);  pi: psi + r^2;
    phi_tilde: big_phi - 1/(2r).  base_value is f(r) for big_g, psi(r) otherwise.
    """
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"unknown transform kind {kind!r}")
    if kind == "pi":
        return base_value + r * r
    if _is_zero(r):
        raise ValueError(f"transform {kind} is singular at r=0")
    if kind == "big_phi":
        return Fraction(3, 4) * (base_value / r + r)
    if kind == "big_g":
        return base_value / (2 * r)
    return Fraction(3, 4) * (base_value / r + r) - Fraction(1, 2) / r


def homothety(
    point: tuple[Value, Value], r_star: Value, center_y: Value, steps: int
) -> tuple[Value, Value]:
    """Image of a graph point under K steps of the homothety with the given center.

    The similarity ratio is alpha = 1/(1 + 4K r_star); centers (0, 1/2) for f
    and (0, 2/3) for the shifted function pi (where 4K counts phi steps 2K).
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    r, y = point
    den = 1 + 4 * steps * r_star
    if _is_zero(den):
        raise MapPoleError(f"homothety ratio undefined: 1 + 4K r_star = 0 at r_star={r_star}")
    alpha = 1 / den if isinstance(den, float) else Fraction(1) / den
    return alpha * r, center_y + alpha * (y - center_y)


def unit_shift_orbit_step(s: Value, f_value: Value) -> tuple[Value, Value]:
    """One alternating step s -> g(s - 1), propagating the exact f value.

    From the Abel equation for BigG and 1-antiperiodicity:
    f(s') = s'(2 + f(s)/(1-s)) at s' = g(s-1).  Iterates converge to 1/2.
    """
    one_minus = 1 - s
    if _is_zero(one_minus):
        raise MapPoleError("step undefined at s=1")
    s_next = apply_map("g", apply_map("unit_shift_left", s))
    f_next = s_next * (2 + f_value / one_minus)
    return s_next, f_next


# -- evaluators --------------------------------------------------------------

class SeriesEvaluator:
    """Supplies (value, tail_estimate) pairs from truncated series.

    The guard defaults are tighter in denominator range than the plain series
    guard: identity sweeps reject points within delta of any singular
    rational with denominator <= max_den.
    """

    exact = False

    def __init__(
        self,
        terms: int = series.DEFAULT_TERMS,
        strategy: str = "compensated",
        guard_delta: float = 1e-4,
        guard_max_den: int = 50,
    ):
        self.terms = terms
        self.strategy = strategy
        self.guard_delta = guard_delta
        self.guard_max_den = guard_max_den

    def psi(self, r: Value) -> tuple[float, float]:
        res = series.eval_psi(float(r), self.terms, self.strategy,
                              self.guard_delta, self.guard_max_den)
        return res.value, res.tail_estimate

    def f(self, r: Value) -> tuple[float, float]:
        res = series.eval_f(float(r), self.terms, self.strategy,
                            self.guard_delta, self.guard_max_den)
        return res.value, res.tail_estimate


class MappingEvaluator:
    """Supplies exact psi/f values from explicit point -> value tables."""

    exact = True

    def __init__(self, psi_values: Optional[dict] = None, f_values: Optional[dict] = None):
        self.psi_values = dict(psi_values or {})
        self.f_values = dict(f_values or {})

    def psi(self, r: Value) -> tuple[Value, float]:
        try:
            return self.psi_values[r], 0.0
        except KeyError:
            raise ValueError(f"no exact psi value registered at r={r}") from None

    def f(self, r: Value) -> tuple[Value, float]:
        try:
            return self.f_values[r], 0.0
        except KeyError:
            raise ValueError(f"no exact f value registered at r={r}") from None


def psi_exact_chain(K: int, p: int) -> MappingEvaluator:
    """Exact psi values along the phi-orbit closing after 2K steps.

    Knows psi at the seed r0, at r_K = sqrt(p/q), and at r_2K = r0 - 2p
    (2-periodicity), each from an independent closed form.
    """
    r0, psi0 = closedform.psi_orbit_seed(K, p)
    r_k, psi_k = closedform.psi_sqrt_family(K, p)
    if orbit(r0, "phi", K) != r_k:
        raise AssertionError(f"orbit from r0 does not reach sqrt(p/q) for K={K}, p={p}")
    r_2k = orbit(r0, "phi", 2 * K)
    ev = MappingEvaluator(psi_values={r0: psi0, r_k: psi_k, r_2k: psi0})
    ev.r0, ev.r_k, ev.r_2k = r0, r_k, r_2k
    ev.K, ev.p = K, p
    return ev


def f_exact_chain(K: int, p: int) -> MappingEvaluator:
    """Exact f values along the g-orbit closing after 2K steps (shift by p)."""
    s0, f0 = closedform.f_orbit_seed(K, p)
    s_k, f_k = closedform.f_half_sqrt_family(K, p)
    if orbit(s0, "g", K) != s_k:
        raise AssertionError(f"orbit from s0 does not reach (1/2)sqrt(p/q) for K={K}, p={p}")
    s_2k = orbit(s0, "g", 2 * K)
    f_2k = f0 if p % 2 == 0 else -f0
    ev = MappingEvaluator(f_values={s0: f0, s_k: f_k, s_2k: f_2k})
    ev.s0, ev.s_k, ev.s_2k = s0, s_k, s_2k
    ev.K, ev.p = K, p
    return ev


# -- identity residuals -------------------------------------------------------

@dataclass(frozen=True)
class Residual:
    identity_id: str
    input: object
    residual: float
    tolerance_used: float
    passed: bool

    def to_dict(self) -> dict:
        x = self.input
        if isinstance(x, (Fraction, Surd)):
            x = str(x)
        return {
            "identity_id": self.identity_id,
            "input": x,
            "residual": self.residual,
            "tolerance_used": self.tolerance_used,
            "pass": self.passed,
        }


def _reciprocity(tau, ev):
    # (1+t) psi(t/(1+t)) - (1-t) psi(t/(1-t)) = (2/3) t (2+t^2)/(1-t^2)
    v1, t1 = ev.psi(tau / (1 + tau))
    v2, t2 = ev.psi(tau / (1 - tau))
    lhs = (1 + tau) * v1 - (1 - tau) * v2
    rhs = Fraction(2, 3) * tau * (2 + tau * tau) / (1 - tau * tau)
    return lhs - rhs, abs(float(1 + tau)) * t1 + abs(float(1 - tau)) * t2


def _abel_psi(r, ev):
    rp = apply_map("phi", r)
    v1, t1 = ev.psi(rp)
    v0, t0 = ev.psi(r)
    diff = transform("big_phi", rp, v1) - transform("big_phi", r, v0) - 1
    return diff, 0.75 * (t1 / abs(float(rp)) + t0 / abs(float(r)))


def _abel_f(r, ev):
    rg = apply_map("g", r)
    v1, t1 = ev.f(rg)
    v0, t0 = ev.f(r)
    diff = transform("big_g", rg, v1) - transform("big_g", r, v0) - 1
    return diff, 0.5 * (t1 / abs(float(rg)) + t0 / abs(float(r)))


def _double_argument(r, ev):
    v1, t1 = ev.psi(r)
    v2, t2 = ev.psi(2 * r)
    v3, t3 = ev.f(r)
    return v1 - v2 / 4 - v3, t1 + t2 / 4 + t3


def _antiperiodization(r, ev):
    v1, t1 = ev.psi(r)
    v2, t2 = ev.psi(r + 1)
    v3, t3 = ev.f(r)
    return (v1 - v2) / 2 - v3, (t1 + t2) / 2 + t3


def _evenness(r, ev):
    v1, t1 = ev.f(-r)
    v2, t2 = ev.f(r)
    return v1 - v2, t1 + t2


def _antisymmetry(r, ev):
    v1, t1 = ev.f(1 - r)
    v2, t2 = ev.f(r)
    return v1 + v2, t1 + t2


def _similarity(r, ev):
    alpha = 1 / (1 + 4 * r) if isinstance(r, float) else Fraction(1) / (1 + 4 * r)
    v1, t1 = ev.f(alpha * r)
    v2, t2 = ev.f(r)
    return v1 - alpha * v2 - (1 - alpha) * Fraction(1, 2), t1 + abs(float(alpha)) * t2


def _similarity_pi(r, ev):
    alpha = 1 / (1 + 2 * r) if isinstance(r, float) else Fraction(1) / (1 + 2 * r)
    v1, t1 = ev.psi(alpha * r)
    v2, t2 = ev.psi(r)
    lhs = transform("pi", alpha * r, v1)
    rhs = alpha * transform("pi", r, v2) + (1 - alpha) * Fraction(2, 3)
    return lhs - rhs, t1 + abs(float(alpha)) * t2


def _accumulation(l, ev):
    # f at l/(1+4l) minus its limit value 1/2 equals ((-1)^l - 1)/(2(1+4l))
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"accumulation identity takes an integer l >= 1, got {l!r}")
    x = Fraction(l, 1 + 4 * l)
    v, t = ev.f(x)
    rhs = Fraction((-1) ** l - 1, 2 * (1 + 4 * l))
    return v - Fraction(1, 2) - rhs, t


def _second_difference(r, ev):
    rp = apply_map("phi", r)
    rm = apply_map("phi_inverse", r)
    v1, t1 = ev.psi(rp)
    v0, t0 = ev.psi(r)
    v2, t2 = ev.psi(rm)
    diff = (transform("big_phi", rp, v1) - 2 * transform("big_phi", r, v0)
            + transform("big_phi", rm, v2))
    tail = 0.75 * (t1 / abs(float(rp)) + 2 * t0 / abs(float(r)) + t2 / abs(float(rm)))
    return diff, tail


def _abel_homogeneous(r, ev):
    rp = apply_map("phi", r)
    v1, t1 = ev.psi(rp)
    v0, t0 = ev.psi(r)
    diff = transform("phi_tilde", rp, v1) - transform("phi_tilde", r, v0)
    return diff, 0.75 * (t1 / abs(float(rp)) + t0 / abs(float(r)))


def _telescoping(kp, ev, double: bool):
    K, p = kp
    chain = psi_exact_chain(K, p)
    end = chain.r_2k if double else chain.r_k
    steps = 2 * K if double else K
    v_end, _ = chain.psi(end)
    v_0, _ = chain.psi(chain.r0)
    diff = (transform("big_phi", end, v_end)
            - transform("big_phi", chain.r0, v_0) - steps)
    return diff, 0.0


_IDENTITIES: dict[str, Callable] = {
    "reciprocity": _reciprocity,
    "abel_psi": _abel_psi,
    "abel_f": _abel_f,
    "double_argument": _double_argument,
    "antiperiodization": _antiperiodization,
    "evenness": _evenness,
    "antisymmetry": _antisymmetry,
    "similarity": _similarity,
    "similarity_pi": _similarity_pi,
    "accumulation": _accumulation,
    "second_difference": _second_difference,
    "abel_homogeneous": _abel_homogeneous,
    "telescoping_k": lambda kp, ev: _telescoping(kp, ev, double=False),
    "telescoping_2k": lambda kp, ev: _telescoping(kp, ev, double=True),
}

IDENTITY_IDS = tuple(_IDENTITIES)

# identities checkable on exact chains alone (evaluator optional)
_CHAIN_ONLY = ("telescoping_k", "telescoping_2k")

# points each identity evaluates psi / f series at, as functions of the input
_TOUCHED = {
    "reciprocity": {"psi": lambda r: (r / (1 + r), r / (1 - r))},
    "abel_psi": {"psi": lambda r: (r, r / (1 + 2 * r))},
    "abel_f": {"f": lambda r: (r, r / (1 + 4 * r))},
    "double_argument": {"psi": lambda r: (r, 2 * r), "f": lambda r: (r,)},
    "antiperiodization": {"psi": lambda r: (r, r + 1), "f": lambda r: (r,)},
    "evenness": {"f": lambda r: (r, -r)},
    "antisymmetry": {"f": lambda r: (r, 1 - r)},
    "similarity": {"f": lambda r: (r, r / (1 + 4 * r))},
    "similarity_pi": {"psi": lambda r: (r, r / (1 + 2 * r))},
    "second_difference": {"psi": lambda r: (r, r / (1 + 2 * r), r / (1 - 2 * r))},
    "abel_homogeneous": {"psi": lambda r: (r, r / (1 + 2 * r))},
}


def sample_identity_inputs(
    identity_id: str,
    count: int,
    rng,
    guard_delta: float = 1e-4,
    guard_max_den: int = 50,
    strong_radii: tuple = ((8, 0.03), (16, 0.008)),
) -> list:
    """Seeded inputs for a numeric identity sweep, filtered by the guard.

    Inputs are uniform on (0.05, 0.48); an input is rejected when any point
    the identity touches has magnitude below 0.1 (the even-reciprocal
    singularities 1/(2k) cluster there), is within the denominator-weighted
    guard margin of a singular rational with denominator <= guard_max_den,
    or is within an absolute radius of a low-denominator one (strong_radii
    maps max denominator -> radius); at such points the series converge too
    slowly for residual checks.  The accumulation identity samples integers.
    """
    if identity_id in _CHAIN_ONLY:
        return [(int(rng.integers(1, 6)), int(rng.choice([-3, -2, -1, 1, 2, 3])))
                for _ in range(count)]
    if identity_id == "accumulation":
        return [int(l) for l in rng.integers(1, 500, size=count)]
    touched = _TOUCHED[identity_id]

    def ok(x: float, fn: str) -> bool:
        if abs(x) < 0.1:
            return False
        _, _, w = series.nearest_singularity(x, fn, guard_max_den)
        if w < guard_delta:
            return False
        for max_den, radius in strong_radii:
            _, dist, _ = series.nearest_singularity(x, fn, max_den, metric="absolute")
            if dist < radius:
                return False
        return True

    out: list = []
    while len(out) < count:
        r = float(rng.uniform(0.05, 0.48))
        if all(ok(float(x), fn) for fn, pts in touched.items() for x in pts(r)):
            out.append(r)
    return out


def identity_residual(
    identity_id: str,
    input_value,
    evaluator=None,
    tol_floor: float = 1e-3,
    tail_factor: float = 5.0,
) -> Residual:
    """|LHS - RHS| of the named identity at the given input.

    With an exact evaluator (or for the chain-only telescoping identities)
    the tolerance is zero; with a series evaluator it is
    max(tol_floor, tail_factor * combined tail estimate).
    """
    if identity_id not in _IDENTITIES:
        raise ValueError(f"unknown identity {identity_id!r}; known: {sorted(_IDENTITIES)}")
    if evaluator is None and identity_id not in _CHAIN_ONLY:
        raise ValueError(f"identity {identity_id!r} needs an evaluator")
    diff, tail = _IDENTITIES[identity_id](input_value, evaluator)
    residual = abs(float(diff))
    if evaluator is None or evaluator.exact:
        tol = 0.0
    else:
        tol = max(tol_floor, tail_factor * tail)
    return Residual(identity_id, input_value, residual, tol, residual <= tol)
