"""The multiplicative semigroup of integral ideals, enumerated by norm.

Prime ideals are determined by rational primes and the splitting value
chi_D(p): split primes (chi = 1) contribute two conjugate ideals of norm p,
inert primes (chi = -1) one ideal of norm p^2, ramified primes (chi = 0) one
ideal of norm p.  Over the rationals every prime contributes a single ideal
of norm p (stored with splitting SPLIT and one copy, label 0).

A general ideal is a finite product of prime-ideal powers; its norm is the
product of the prime-ideal norms.  Enumeration up to a norm bound runs a
depth-first walk over the canonically ordered prime list (norm, then rational
prime, then conjugate label), which visits every factorization exactly once.
The number of ideals of norm n equals a(n) = sum_{d | n} chi_D(d), so the
counting functions here grow like c_F * x with c_F the zeta residue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator

import numpy as np

from .field import QuadraticField, chi

__all__ = [
    "Splitting",
    "PrimeIdeal",
    "IdealEntry",
    "unit_ideal",
    "prime_ideals_above",
    "prime_ideals_up_to",
    "enumerate_ideals",
    "ideal_count",
    "moebius",
    "squarefree_count",
    "smooth_count",
    "prime_reciprocal_sum",
]


class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal, identified by its rational prime, its norm (p or p^2),
    the splitting type, and a conjugate label distinguishing the two ideals
    above a split prime (0 and 1; always 0 otherwise)."""

    rational_prime: int
    norm: int
    splitting: Splitting
    conjugate_label: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.rational_prime, self.conjugate_label)


@dataclass(slots=True)
class IdealEntry:
    """One integral ideal: its norm and its factorization as a map from
    PrimeIdeal to a positive exponent (empty for the unit ideal)."""

    norm: int
    factorization: dict[PrimeIdeal, int]


def unit_ideal() -> IdealEntry:
    return IdealEntry(1, {})


def _signature(entry: IdealEntry) -> tuple:
    # Factorizations are built in canonical prime order, so the insertion
    # order of the dict is already sorted.
    return tuple(
        (q.norm, q.rational_prime, q.conjugate_label, e)
        for q, e in entry.factorization.items()
    )


# ===== prime ideals =====


@lru_cache(maxsize=32)
def _rational_primes(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(np.flatnonzero(sieve).tolist())


def prime_ideals_above(field: QuadraticField, p: int) -> tuple[PrimeIdeal, ...]:
    """The prime ideals over the rational prime p, in conjugate-label order."""
    if field.disc == 1:
        return (PrimeIdeal(p, p, Splitting.SPLIT, 0),)
    c = chi(field, p)
    if c == 1:
        return (
            PrimeIdeal(p, p, Splitting.SPLIT, 0),
            PrimeIdeal(p, p, Splitting.SPLIT, 1),
        )
    if c == -1:
        return (PrimeIdeal(p, p * p, Splitting.INERT, 0),)
    return (PrimeIdeal(p, p, Splitting.RAMIFIED, 0),)


@lru_cache(maxsize=8)
def _prime_ideal_list(field: QuadraticField, limit: int) -> tuple[PrimeIdeal, ...]:
    """All prime ideals of norm <= limit, sorted by (norm, p, label)."""
    out: list[PrimeIdeal] = []
    for p in _rational_primes(limit):
        for q in prime_ideals_above(field, p):
            if q.norm <= limit:
                out.append(q)
    out.sort(key=PrimeIdeal.sort_key)
    return tuple(out)


def prime_ideals_up_to(field: QuadraticField, x: float) -> Iterator[PrimeIdeal]:
    """Ordered stream of prime ideals with norm <= x."""
    yield from _prime_ideal_list(field, int(math.floor(x)))


# ===== enumeration =====


def _iter_factored(
    field: QuadraticField,
    limit: int,
    prime_norm_limit: int | None = None,
    max_exponent: int | None = None,
) -> Iterator[tuple[int, tuple[tuple[PrimeIdeal, int], ...]]]:
    """Depth-first walk yielding (norm, factors) for every ideal of norm <=
    limit, unsorted.  factors is a tuple of (prime, exponent) pairs in
    canonical prime order.  Restricting prime_norm_limit gives smooth ideals;
    max_exponent = 1 gives square-free ones."""
    if limit < 1:
        return
    plim = limit if prime_norm_limit is None else min(limit, prime_norm_limit)
    primes = _prime_ideal_list(field, plim)
    norms = [q.norm for q in primes]
    n = len(primes)
    yield 1, ()
    stack: list[tuple[int, int, tuple]] = [(0, 1, ())]
    while stack:
        start, base_norm, base = stack.pop()
        for i in range(start, n):
            pn = norms[i]
            norm = base_norm * pn
            if norm > limit:
                break
            exp = 1
            while norm <= limit:
                if max_exponent is not None and exp > max_exponent:
                    break
                fac = base + ((primes[i], exp),)
                yield norm, fac
                stack.append((i + 1, norm, fac))
                norm *= pn
                exp += 1


def _iter_entries_unsorted(
    field: QuadraticField,
    x: float,
    prime_norm_limit: int | None = None,
    max_exponent: int | None = None,
) -> Iterator[IdealEntry]:
    limit = int(math.floor(x))
    for norm, fac in _iter_factored(field, limit, prime_norm_limit, max_exponent):
        yield IdealEntry(norm, dict(fac))


def enumerate_ideals(field: QuadraticField, x: float) -> Iterator[IdealEntry]:
    """Ordered stream of all ideals of norm <= x: sorted by norm, ties broken
    by the factorization signature over the canonical prime order (so the two
    conjugates above a split prime appear label 0 first)."""
    entries = list(_iter_entries_unsorted(field, x))
    entries.sort(key=lambda e: (e.norm, _signature(e)))
    yield from entries


def ideal_count(field: QuadraticField, x: float) -> int:
    """Exact number of ideals of norm <= x (asymptotically c_F * x)."""
    limit = int(math.floor(x))
    return sum(1 for _ in _iter_factored(field, limit))


def moebius(entry: IdealEntry) -> int:
    """(-1)^(number of distinct primes) on square-free ideals, 0 otherwise."""
    for e in entry.factorization.values():
        if e >= 2:
            return 0
    return -1 if len(entry.factorization) % 2 else 1


def squarefree_count(field: QuadraticField, x: float) -> int:
    """Number of square-free ideals of norm <= x (density 1/zeta_F(2) among
    all ideals)."""
    limit = int(math.floor(x))
    return sum(1 for _ in _iter_factored(field, limit, max_exponent=1))


def smooth_count(
    field: QuadraticField, x: float, y: float, squarefree_only: bool = False
) -> int:
    """Number of ideals of norm <= x all of whose prime-ideal factors have
    norm <= y, optionally restricted to square-free ideals."""
    limit = int(math.floor(x))
    plim = int(math.floor(y))
    max_exp = 1 if squarefree_only else None
    return sum(
        1 for _ in _iter_factored(field, limit, prime_norm_limit=plim,
                                  max_exponent=max_exp)
    )


def prime_reciprocal_sum(field: QuadraticField, x: float) -> float:
    """sum of 1/N(p) over prime ideals of norm <= x, in ascending norm order
    (grows like log log x plus a field constant)."""
    acc = 0.0
    for q in _prime_ideal_list(field, int(math.floor(x))):
        acc += 1.0 / q.norm
    return acc
