"""Scan for zeros of f at 1/sqrt(n): predicted exactly at n = 16p(p+1), p > 0.

Each n gets one record.  Exact closed-form routes take precedence (zero iff
exactly zero); otherwise the truncated series decides, and the verdict only
counts as confident when the tail estimate is an order of magnitude below
the zero threshold.  Disagreements between prediction and classification are
surfaced in the summary, never dropped.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import closedform, series
from .exactnum import format_rational

__all__ = [
    "ScanRecord",
    "predicted_zeros",
    "is_predicted_zero",
    "scan",
    "summarize",
]


def is_predicted_zero(n: int) -> bool:
    """n = 16p(p+1) for some p > 0, via an integer square-root test."""
    if n < 32 or n % 16 != 0:
        return False
    m = 4 * (n // 16) + 1  # odd square (2p+1)^2 iff n/16 = p(p+1)
    s = math.isqrt(m)
    return s * s == m and s > 1


def predicted_zeros(n_max: int) -> list[int]:
    """All predicted zeros 16p(p+1) up to n_max, ascending."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    out = []
    p = 1
    while 16 * p * (p + 1) <= n_max:
        out.append(16 * p * (p + 1))
        p += 1
    return out


@dataclass(frozen=True)
class ScanRecord:
    n: int
    r: float
    f_value: Optional[float]
    tail_estimate: Optional[float]
    predicted_zero: bool
    classified_zero: Optional[bool]  # None when the point is singular or failed
    confident: bool
    exact_value: Optional[str]       # serialized rational when an exact route fired
    route: str
    error: Optional[str] = None


def _scan_one(n: int, terms: int, zero_tol: float, strategy: str) -> ScanRecord:
    r = 1.0 / math.sqrt(n)
    predicted = is_predicted_zero(n)
    exact = closedform.f_at_inverse_sqrt(n)
    if exact.value.is_singular:
        return ScanRecord(n, r, None, None, predicted, None, True, None, "singular")
    if exact.value.is_finite:
        v = exact.value.value
        return ScanRecord(
            n, r, float(v), 0.0, predicted, v == 0, True,
            format_rational(v), exact.route)
    try:
        res = series.eval_f(r, terms, strategy)
    except series.SingularityError as exc:
        return ScanRecord(n, r, None, None, predicted, None, False, None, "series", str(exc))
    classified = abs(res.value) <= zero_tol
    confident = res.tail_estimate < zero_tol / 10
    return ScanRecord(
        n, r, res.value, res.tail_estimate, predicted, classified, confident,
        None, "series")


def scan(
    n_min: int,
    n_max: int,
    terms: int,
    zero_tol: float,
    threads: int = 1,
    strategy: str = "compensated",
) -> list[ScanRecord]:
    """One record per n in [n_min, n_max], deterministic order."""
    if zero_tol <= 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"bad range [{n_min}, {n_max}]")
    ns = range(n_min, n_max + 1)

    def one(n: int) -> ScanRecord:
        return _scan_one(n, terms, zero_tol, strategy)

    if threads <= 1:
        return [one(n) for n in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, ns))


def summarize(records: list[ScanRecord]) -> dict:
    """Confirmed / contradicted / inconclusive counts plus the zero lists."""
    confirmed = contradicted = inconclusive = 0
    zeros_found = []
    findings = []
    for rec in records:
        if rec.classified_zero is None or not rec.confident:
            inconclusive += 1
            continue
        if rec.classified_zero:
            zeros_found.append(rec.n)
        if rec.classified_zero == rec.predicted_zero:
            confirmed += 1
        else:
            contradicted += 1
            findings.append(rec)
    return {
        "confirmed": confirmed,
        "contradicted": contradicted,
        "inconclusive": inconclusive,
        "zeros_found": zeros_found,
        "disagreements": findings,
    }
