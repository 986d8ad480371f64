"""Hecke-multiplicative coefficient systems on the ideal semigroup.

A system stores one real value per prime ideal.  Values at prime powers
follow the second-order recursion

    C(p^0) = 1,   C(p^(v+1)) = C(p) C(p^v) - C(p^(v-1)),

(the Chebyshev-U pattern coming from the quadratic Euler factor
1 / (1 - C(p) X + X^2)), and values at general ideals are the products over
the prime powers in the factorization.  In particular C(p)^2 = 1 + C(p^2).

Two modes are supported.  EVEN_WEIGHT promises |C(p)| <= 2 at every prime,
so C(p) = 2 cos(theta_p); UNRESTRICTED makes no size promise.  The bundled
sampler draws theta from the semicircle density (2/pi) sin^2(theta) dtheta
on [0, pi] (deterministically, PCG64 with a 64-bit seed), which makes the
prime values average to 0 with mean square 1.

Systems can be frozen to / loaded from a small CSV format:

    # mode=EvenWeight, disc=5
    rational_prime,conjugate_label,value
    2,0,-1.2815768275047388
    ...

Ramified primes carry an ordinary quadratic Euler factor like everything
else; nothing in the counting layers treats them specially.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import (
    DomainError,
    DuplicatePrime,
    MissingPrime,
    ParseError,
    RamanujanViolation,
)
from .field import QuadraticField, make_field
from .ideals import IdealEntry, PrimeIdeal, _prime_ideal_list, prime_ideals_above

__all__ = [
    "Mode",
    "Provenance",
    "CoefficientSystem",
    "from_prime_values",
    "sample_sato_tate",
    "load_csv",
    "write_csv",
]


class Mode(Enum):
    EVEN_WEIGHT = "EvenWeight"
    UNRESTRICTED = "Unrestricted"


@dataclass(frozen=True)
class Provenance:
    """Where a system came from: kind is "synthetic" (detail = seed),
    "file" (detail = path), or "manual"."""

    kind: str
    detail: object = None


@dataclass
class CoefficientSystem:
    field: QuadraticField
    prime_values: dict[PrimeIdeal, float]
    mode: Mode
    provenance: Provenance
    _power_cache: dict = dc_field(
        default_factory=dict, repr=False, compare=False
    )

    def prime_value(self, q: PrimeIdeal) -> float:
        try:
            return self.prime_values[q]
        except KeyError:
            raise MissingPrime(
                f"no value for prime ideal over {q.rational_prime} "
                f"(label {q.conjugate_label})"
            ) from None

    def power_value(self, q: PrimeIdeal, v: int) -> float:
        """C(q^v) through the second-order recursion, memoized."""
        if v < 0:
            raise DomainError("exponent must be nonnegative")
        if v == 0:
            return 1.0
        a = self.prime_value(q)
        if v == 1:
            return a
        key = (q, v)
        cached = self._power_cache.get(key)
        if cached is not None:
            return cached
        prev, cur = 1.0, a
        for _ in range(v - 1):
            prev, cur = cur, a * cur - prev
        self._power_cache[key] = cur
        return cur

    def value(self, entry: IdealEntry) -> float:
        """C at a general ideal: product of power values over the
        factorization (1.0 at the unit ideal)."""
        out = 1.0
        for q, e in entry.factorization.items():
            out *= self.power_value(q, e)
        return out


def _check_even_weight(values: Iterable[float]) -> None:
    for v in values:
        if abs(v) > 2.0:
            raise RamanujanViolation(
                f"prime value {v!r} exceeds the EvenWeight bound 2"
            )


def from_prime_values(
    field: QuadraticField,
    values: dict[PrimeIdeal, float],
    mode: Mode,
    provenance: Provenance | None = None,
) -> CoefficientSystem:
    """Build a system from explicit prime values, validating that every key
    is a genuine prime ideal of the field and (in EVEN_WEIGHT mode) that all
    values satisfy |value| <= 2."""
    for q in values:
        if q not in prime_ideals_above(field, q.rational_prime):
            raise DomainError(
                f"prime ideal {q} is inconsistent with disc {field.disc}"
            )
    if mode is Mode.EVEN_WEIGHT:
        _check_even_weight(values.values())
    return CoefficientSystem(
        field, dict(values), mode, provenance or Provenance("manual")
    )


# ===== sampling =====


def _semicircle_angles(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n angles with density (2/pi) sin^2(theta) on [0, pi] by inverting
    the CDF (theta - sin theta cos theta)/pi with vectorized bisection."""
    u = rng.random(n) * math.pi
    lo = np.zeros(n)
    hi = np.full(n, math.pi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = mid - np.sin(mid) * np.cos(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def sample_sato_tate(
    field: QuadraticField, x: float, seed: int
) -> CoefficientSystem:
    """EvenWeight system with an independent draw C(q) = 2 cos(theta_q) at
    every prime ideal of norm <= x, deterministic in the seed."""
    primes = _prime_ideal_list(field, int(math.floor(x)))
    rng = np.random.Generator(np.random.PCG64(seed))
    theta = _semicircle_angles(len(primes), rng)
    vals = (2.0 * np.cos(theta)).tolist()
    return CoefficientSystem(
        field,
        dict(zip(primes, vals)),
        Mode.EVEN_WEIGHT,
        Provenance("synthetic", seed),
    )


# ===== CSV =====


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def load_csv(field: QuadraticField, path: str) -> CoefficientSystem:
    """Read a coefficient file (see the module docstring for the format).

    The header comment must declare the mode and a disc matching the field.
    Raises ParseError on malformed content, DuplicatePrime on a repeated
    (prime, label) pair, RamanujanViolation on an out-of-range EvenWeight
    value."""
    mode: Mode | None = None
    header_disc: int | None = None
    rows: list[tuple[int, int, float]] = []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for part in line[1:].split(","):
                    part = part.strip()
                    if "=" not in part:
                        continue
                    key, _, val = part.partition("=")
                    key = key.strip()
                    val = val.strip()
                    if key == "mode":
                        for m in Mode:
                            if m.value == val:
                                mode = m
                                break
                        else:
                            raise ParseError(f"unknown mode {val!r}")
                    elif key == "disc":
                        try:
                            header_disc = int(val)
                        except ValueError:
                            raise ParseError(f"bad disc {val!r}") from None
                continue
            parts = [p.strip() for p in line.split(",")]
            if parts[0] == "rational_prime":
                continue  # column header row
            if len(parts) != 3:
                raise ParseError(f"expected 3 columns, got {line!r}")
            try:
                rows.append((int(parts[0]), int(parts[1]), float(parts[2])))
            except ValueError:
                raise ParseError(f"bad row {line!r}") from None
    if mode is None:
        raise ParseError("missing '# mode=...' header")
    if header_disc is not None and header_disc != field.disc:
        raise ParseError(
            f"file disc {header_disc} does not match field disc {field.disc}"
        )
    values: dict[PrimeIdeal, float] = {}
    for p, label, v in rows:
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        above = prime_ideals_above(field, p)
        matches = [q for q in above if q.conjugate_label == label]
        if not matches:
            raise ParseError(
                f"label {label} is invalid for prime {p} in disc {field.disc}"
            )
        q = matches[0]
        if q in values:
            raise DuplicatePrime(f"prime {p} label {label} appears twice")
        values[q] = v
    if mode is Mode.EVEN_WEIGHT:
        _check_even_weight(values.values())
    return CoefficientSystem(field, values, mode, Provenance("file", path))


def write_csv(system: CoefficientSystem, path: str) -> None:
    """Freeze a system to the CSV format read by load_csv.  Values keep full
    float precision so a round trip is exact."""
    qs = sorted(system.prime_values, key=PrimeIdeal.sort_key)
    with open(path, "w", newline="") as fh:
        fh.write(f"# mode={system.mode.value}, disc={system.field.disc}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rational_prime", "conjugate_label", "value"])
        for q in qs:
            writer.writerow(
                [q.rational_prime, q.conjugate_label,
                 repr(system.prime_values[q])]
            )


def system_for_disc(disc: int, path: str) -> CoefficientSystem:
    """Convenience: load a coefficient file against a freshly made field."""
    return load_csv(make_field(disc), path)
