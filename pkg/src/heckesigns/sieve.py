"""A three-band multiplicative sieve weight and its convolution identities.

For a scale y >= 4, the weight h_y is the multiplicative function supported
on square-free ideals with

    h_y(p) = +1  if N(p) <= sqrt(y),
    h_y(p) =  0  if sqrt(y) < N(p) <= y,
    h_y(p) = -2  if N(p) > y,

and h_y(p^v) = 0 for v >= 2.  Its partial sums over norms up to y^u are
governed by the smooth-ideal density: for 1 <= u <= 3/2,

    sum_{N(m) <= y^u} h_y(m) ~ (c_F / zeta_F(2)) y^u (rho(2u) - 2 log u),

which is positive precisely for u below the root of rho(2u) = 2 log u.

Against a coefficient system C, the companion weight g_y has g_y(unit) = 1
and g_y(p) = C(p) - h_y(p) at primes.  On square-free ideals C = g_y * h_y
as a Dirichlet convolution, with the inner variable coprime to the outer:

    sum#_{N(m) <= X} C(m)
        = sum#_{N(d) <= X} g_y(d) * sum#_{N(l) <= X/N(d), (l,d)=1} h_y(l),

where sum# restricts to square-free ideals.  (Dropping the coprimality
condition adds pairs sharing a prime and breaks the identity; the check
here verifies the coprime form, and its two sides are computed by genuinely
different summation routes.)  When C(p) >= 1 up to sqrt(y), C(p) >= 0 up to
y, and |C(p)| <= 2 throughout, every g_y value on square-free ideals is
nonnegative, which pins the square-free coefficient sum above the plain
h-sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coefficients import CoefficientSystem
from .dickman import rho, solve_kappa
from .errors import DomainError, NotSquareFree
from .field import QuadraticField, residue_cF, zetaF
from .ideals import (
    IdealEntry,
    PrimeIdeal,
    _iter_entries_unsorted,
    _prime_ideal_list,
)

__all__ = [
    "h_weight",
    "h_partial_sum",
    "h_sum_prediction",
    "g_weight",
    "convolution_check",
    "ConvolutionReport",
    "lower_bound_check",
    "LowerBoundReport",
]


def _band(norm: int, y: float) -> int:
    # N <= sqrt(y) iff N^2 <= y, exact in integer arithmetic.
    if norm * norm <= y:
        return 1
    if norm <= y:
        return 0
    return -2


def _check_y(y: float) -> None:
    if y < 4.0:
        raise DomainError("sieve scale y must be at least 4")


def h_weight(field: QuadraticField, y: float, entry: IdealEntry) -> int:
    """h_y at one ideal: the product of band values over its prime factors,
    0 as soon as any exponent exceeds 1.  Always an integer."""
    _check_y(y)
    out = 1
    for q, e in entry.factorization.items():
        if e >= 2:
            return 0
        out *= _band(q.norm, y)
        if out == 0:
            return 0
    return out


def h_partial_sum(field: QuadraticField, y: float, u: float) -> int:
    """sum of h_y over all ideals of norm <= y^u, exactly (an integer).

    Only square-free ideals built from primes with N(p) <= sqrt(y) or
    N(p) > y contribute, so the walk skips the dead middle band entirely.
    """
    _check_y(y)
    if not 1.0 <= u <= 1.5:
        raise DomainError("u must lie in [1, 1.5]")
    limit = int(math.floor(y**u))
    active = [
        q.norm for q in _prime_ideal_list(field, limit)
        if _band(q.norm, y) != 0
    ]
    total = 1  # unit ideal
    stack: list[tuple[int, int, int]] = [(0, 1, 1)]
    while stack:
        start, base_norm, base_h = stack.pop()
        for i in range(start, len(active)):
            pn = active[i]
            norm = base_norm * pn
            if norm > limit:
                break
            contrib = base_h * (1 if pn * pn <= y else -2)
            total += contrib
            stack.append((i + 1, norm, contrib))
    return total


def h_sum_prediction(field: QuadraticField, y: float, u: float) -> float:
    """(c_F / zeta_F(2)) * y^u * (rho(2u) - 2 log u), the main term the
    partial sum tracks for 1 <= u <= 3/2."""
    _check_y(y)
    if not 1.0 <= u <= 1.5:
        raise DomainError("u must lie in [1, 1.5]")
    dens = residue_cF(field) / zetaF(field, 2.0)
    return dens * y**u * (rho(2.0 * u) - 2.0 * math.log(u))


def g_weight(system: CoefficientSystem, y: float, entry: IdealEntry) -> float:
    """g_y at a square-free ideal: product of C(p) - h_y(p) over its primes
    (1.0 at the unit ideal).  Raises NotSquareFree otherwise."""
    _check_y(y)
    out = 1.0
    for q, e in entry.factorization.items():
        if e >= 2:
            raise NotSquareFree(f"exponent {e} at prime of norm {q.norm}")
        out *= system.prime_value(q) - _band(q.norm, y)
    return out


@dataclass(frozen=True)
class ConvolutionReport:
    lhs: float
    rhs: float
    difference: float
    y: float
    x: float


def convolution_check(
    system: CoefficientSystem, y: float, x: float
) -> ConvolutionReport:
    """Verify sum#_{N(m)<=x} C(m) against the g*h double sum (coprime inner
    variable).  The left side is a direct walk over square-free ideals; the
    right side re-sums over divisor pairs, so agreement exercises the
    multiplicative structure end to end."""
    _check_y(y)
    fld = system.field
    lhs = 0.0
    for entry in _iter_entries_unsorted(fld, x, max_exponent=1):
        lhs += system.value(entry)
    primes = list(_prime_ideal_list(fld, int(math.floor(x))))
    rhs = 0.0
    for d_entry in _iter_entries_unsorted(fld, x, max_exponent=1):
        g = g_weight(system, y, d_entry)
        if g == 0.0:
            continue
        cap = int(math.floor(x)) // d_entry.norm
        used = set(d_entry.factorization)
        rhs += g * _h_inner_sum(primes, used, cap, y)
    return ConvolutionReport(lhs, rhs, lhs - rhs, y, x)


def _h_inner_sum(
    primes: list[PrimeIdeal], excluded: set[PrimeIdeal], limit: int, y: float
) -> int:
    """sum of h_y over square-free ideals of norm <= limit avoiding the
    excluded primes."""
    if limit < 1:
        return 0
    active = [
        q.norm
        for q in primes
        if q.norm <= limit and q not in excluded and _band(q.norm, y) != 0
    ]
    total = 1
    stack: list[tuple[int, int, int]] = [(0, 1, 1)]
    while stack:
        start, base_norm, base_h = stack.pop()
        for i in range(start, len(active)):
            pn = active[i]
            norm = base_norm * pn
            if norm > limit:
                break
            contrib = base_h * (1 if pn * pn <= y else -2)
            total += contrib
            stack.append((i + 1, norm, contrib))
    return total


@dataclass(frozen=True)
class LowerBoundReport:
    holds: bool
    T_sharp: float
    h_sum: int
    g_nonneg: bool
    premise_violations: tuple[PrimeIdeal, ...]
    y: float
    u: float


def lower_bound_check(
    system: CoefficientSystem, y: float, u: float
) -> LowerBoundReport:
    """Operational check of the sieve lower bound at scale y and exponent u:
    computes T# = sum# C(m) over square-free norms <= y^u and compares it
    with the h partial sum; also reports whether every g_y prime value up to
    y^u is nonnegative and which primes (if any) break the premise
    C(p) >= 1 for N(p) <= sqrt(y).  Requires 1 <= u below the root of
    rho(2u) = 2 log u, where the predicted h-sum main term is positive."""
    _check_y(y)
    if not 1.0 <= u < solve_kappa():
        raise DomainError("u must lie in [1, kappa)")
    fld = system.field
    limit = int(math.floor(y**u))
    T_sharp = 0.0
    for entry in _iter_entries_unsorted(fld, limit, max_exponent=1):
        T_sharp += system.value(entry)
    hs = h_partial_sum(fld, y, u)
    g_nonneg = True
    violations: list[PrimeIdeal] = []
    for q in _prime_ideal_list(fld, limit):
        c = system.prime_value(q)
        if c - _band(q.norm, y) < 0.0:
            g_nonneg = False
        if q.norm * q.norm <= y and c < 1.0:
            violations.append(q)
    holds = T_sharp >= hs - 1e-9
    return LowerBoundReport(
        holds, T_sharp, hs, g_nonneg, tuple(violations), y, u
    )
