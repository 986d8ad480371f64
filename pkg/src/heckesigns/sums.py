"""Partial sums, sign statistics, mean values, and L-values of a coefficient
system over the ideal semigroup.

The two headline quantities are

    T(x) = sum_{N(m) <= x} C(m),
    S(x) = sum_{N(m) <= x} C(m) log(x / N(m)),

related exactly by partial summation: S(x) = int_1^x T(t)/t dt, and since T
is a step function the integral is a finite sum over its jump points.  Both
routes are implemented and should agree to rounding, which makes the pair a
useful self-check.

Sign statistics count positive, negative, and (numerically) zero values with
threshold 1e-12; for continuous coefficient distributions exact zeros are a
null event and the nonzero values split evenly between the signs as x grows.
The predicted density of nonzero values is a truncated Euler product

    prod_p (1 - 1/N(p)) * (1 + w(p)/N(p) + w(p^2)/N(p)^2 + ...)

over indicator weights w in [0, 1]; when w = 1 everywhere the factors
telescope to 1 exactly.  The product converges to a nonzero limit only when
sum (1 - w(p))/N(p) does, so the estimate carries a crude divergence
diagnostic alongside its value.

L-values at s > 1 are computed both as a truncated Dirichlet series over
ideals and as a truncated Euler product over prime ideals; the report keeps
both numbers and their discrepancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import DegenerateFit, DomainError
from .field import QuadraticField
from .ideals import (
    IdealEntry,
    PrimeIdeal,
    _iter_entries_unsorted,
    _prime_ideal_list,
    _signature,
)

__all__ = [
    "ZERO_EPS",
    "SignReport",
    "EulerProductEstimate",
    "LValueResult",
    "T_sum",
    "S_sum",
    "S_via_integral",
    "first_negative",
    "sign_counts",
    "mean_value_empirical",
    "euler_product_prediction",
    "L_value",
    "growth_exponent",
]

# |value| <= ZERO_EPS counts as an exact zero in sign statistics.
ZERO_EPS = 1e-12


def _check_x(x: float) -> None:
    if x < 1.0:
        raise DomainError("summation limit must be at least 1")


def T_sum(system, x: float) -> float:
    """T(x): plain coefficient sum over norms <= x.  Any object with a
    .field and a .value(entry) works as the system."""
    _check_x(x)
    total = 0.0
    for entry in _iter_entries_unsorted(system.field, x):
        total += system.value(entry)
    return total


def S_sum(system, x: float) -> float:
    """S(x) = sum C(m) log(x / N(m)), directly."""
    _check_x(x)
    logx = math.log(x)
    total = 0.0
    for entry in _iter_entries_unsorted(system.field, x):
        total += system.value(entry) * (logx - math.log(entry.norm))
    return total


def S_via_integral(system, x: float) -> float:
    """S(x) evaluated as int_1^x T(t)/t dt.  T is a step function jumping at
    ideal norms, so the integral is the exact finite sum of T times the log
    increments between consecutive jump points.  Agrees with S_sum up to
    rounding; the summation order is genuinely different."""
    _check_x(x)
    jumps: dict[int, float] = {}
    for entry in _iter_entries_unsorted(system.field, x):
        v = system.value(entry)
        jumps[entry.norm] = jumps.get(entry.norm, 0.0) + v
    total = 0.0
    running = 0.0
    last_log = 0.0
    for n in sorted(jumps):
        ln = math.log(n)
        total += running * (ln - last_log)
        running += jumps[n]
        last_log = ln
    total += running * (math.log(x) - last_log)
    return total


def first_negative(system, x_max: float) -> Optional[IdealEntry]:
    """The first entry (in norm order, canonical tie-break) with value below
    -1e-12, or None if every value up to x_max is nonnegative."""
    _check_x(x_max)
    best: Optional[IdealEntry] = None
    best_key = None
    for entry in _iter_entries_unsorted(system.field, x_max):
        if system.value(entry) < -ZERO_EPS:
            key = (entry.norm, _signature(entry))
            if best_key is None or key < best_key:
                best = entry
                best_key = key
    return best


# ===== sign statistics =====


@dataclass(frozen=True)
class SignReport:
    x: float
    positives: int
    negatives: int
    zeros: int
    euler_product_prediction: float
    half_deviation: float


@dataclass(frozen=True)
class EulerProductEstimate:
    value: float
    tail_factor_bound: float
    hypothesis_partial_sum: float
    converged: bool


def euler_product_prediction(
    prime_weight: Callable[[PrimeIdeal], float],
    prime_power_weight: Callable[[PrimeIdeal, int], float],
    field: QuadraticField,
    truncation_norm: float,
) -> EulerProductEstimate:
    """Truncated prod_p (1 - 1/N(p)) (1 + w(p)/N(p) + w(p^2)/N(p)^2 + ...)
    over prime ideals of norm <= truncation_norm, weights in [0, 1].

    Each local series is summed until its geometric tail bound drops below
    1e-12 relative.  tail_factor_bound is the crude 1/truncation bound on
    the log of the omitted factors that holds when the hypothesis sum
    sum (1 - w(p))/N(p) converges; `converged` is a heuristic flag (the
    hypothesis partial sum over (sqrt(T), T] must contribute < 0.05)."""
    if truncation_norm < 100:
        raise DomainError("truncation_norm must be at least 100")
    limit = int(math.floor(truncation_norm))
    product = 1.0
    hyp = 0.0
    hyp_outer = 0.0  # contribution of primes with norm > sqrt(limit)
    for q in _prime_ideal_list(field, limit):
        n = q.norm
        w1 = prime_weight(q)
        local = 1.0 + w1 / n
        power = 1.0 / n
        v = 2
        while power / (n - 1.0) > 1e-12 * local:
            power /= n
            local += prime_power_weight(q, v) * power
            v += 1
        product *= (1.0 - 1.0 / n) * local
        miss = (1.0 - w1) / n
        hyp += miss
        if n * n > limit:
            hyp_outer += miss
    return EulerProductEstimate(
        value=product,
        tail_factor_bound=1.0 / limit,
        hypothesis_partial_sum=hyp,
        converged=hyp_outer < 0.05,
    )


def sign_counts(system, x: float) -> SignReport:
    """Count signs of C over all norms <= x, with the Euler-product density
    prediction from the nonzero-value indicator weights (truncated at
    min(x, 1e4), clamped below at 100 so tiny x stays legal) and the
    deviation of the nonzero split from one half."""
    _check_x(x)
    pos = neg = zero = 0
    for entry in _iter_entries_unsorted(system.field, x):
        v = system.value(entry)
        if v > ZERO_EPS:
            pos += 1
        elif v < -ZERO_EPS:
            neg += 1
        else:
            zero += 1

    def w1(q: PrimeIdeal) -> float:
        return 0.0 if abs(system.prime_value(q)) <= ZERO_EPS else 1.0

    def wv(q: PrimeIdeal, v: int) -> float:
        return 0.0 if abs(system.power_value(q, v)) <= ZERO_EPS else 1.0

    est = euler_product_prediction(w1, wv, system.field, max(100.0, min(x, 1e4)))
    nz = pos + neg
    dev = abs(pos / nz - 0.5) if nz else 0.0
    return SignReport(x, pos, neg, zero, est.value, dev)


# ===== mean values =====


def mean_value_empirical(
    weight_function: Callable[[IdealEntry], float],
    field: QuadraticField,
    x: float,
) -> float:
    """Average of a bounded weight (values in [-1, 1]) over all ideals of
    norm <= x: the empirical version of its mean value."""
    _check_x(x)
    total = 0.0
    count = 0
    for entry in _iter_entries_unsorted(field, x):
        total += weight_function(entry)
        count += 1
    return total / count


# ===== L-values =====


@dataclass(frozen=True)
class LValueResult:
    series_value: float
    product_value: float
    discrepancy: float
    s: float
    truncation_norm: float


def L_value(system, s: float, truncation_norm: float) -> LValueResult:
    """L(s) = sum C(m)/N(m)^s, by truncated series and by the truncated
    Euler product prod (1 - C(p) N(p)^-s + N(p)^-2s)^-1.  For EvenWeight
    systems the product tails are controlled for s >= 1.1 or so; the report
    carries both values and their absolute discrepancy."""
    if s <= 1.0:
        raise DomainError("L_value is evaluated only for s > 1")
    _check_x(truncation_norm)
    series = 0.0
    for entry in _iter_entries_unsorted(system.field, truncation_norm):
        series += system.value(entry) * entry.norm**-s
    product = 1.0
    for q in _prime_ideal_list(system.field, int(math.floor(truncation_norm))):
        ns = q.norm**-s
        product /= 1.0 - system.prime_value(q) * ns + ns * ns
    return LValueResult(series, product, abs(series - product), s,
                        truncation_norm)


# ===== growth fit =====


def growth_exponent(samples: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope of log |value| against log x.  Needs at least 3
    samples with strictly increasing x and nonzero values; raises
    DegenerateFit otherwise."""
    pts = list(samples)
    if len(pts) < 3:
        raise DegenerateFit("need at least 3 samples")
    xs = [x for x, _ in pts]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DegenerateFit("x values must be strictly increasing")
    if any(x <= 0 for x in xs):
        raise DegenerateFit("x values must be positive")
    if any(v == 0 for _, v in pts):
        raise DegenerateFit("values must be nonzero")
    lx = np.log([x for x, _ in pts])
    lv = np.log([abs(v) for _, v in pts])
    slope, _ = np.polyfit(lx, lv, 1)
    return float(slope)
