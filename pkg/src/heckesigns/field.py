"""Base fields for ideal counting: discriminants, quadratic characters, and
the analytic constants attached to the Dedekind zeta function.

Two kinds of base field are supported.  disc = 1 denotes the rationals, whose
"ideals" are just positive integers.  A positive fundamental discriminant D
denotes the real quadratic field of discriminant D; prime splitting there is
governed by the Kronecker symbol chi_D = (D/.), a real primitive character
mod D.  The zeta function factors as

    zeta_F(s) = zeta(s) * L(s, chi_D),

and its residue at s = 1 is c_F = L(1, chi_D), computed here by the closed
form for even real characters,

    L(1, chi_D) = -(1/sqrt(D)) * sum_{a=1}^{D-1} chi_D(a) * log sin(pi a / D).

zeta and L values at s > 1 are evaluated through the Hurwitz zeta function
with Euler-Maclaurin tail corrections; the first omitted correction term is
below 1e-15 relative for every s > 1 at the settings used, well under the
1e-12 budget the counting layers assume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NonFundamentalDiscriminant, WeightMismatch

__all__ = [
    "QuadraticField",
    "make_field",
    "is_fundamental_discriminant",
    "kronecker_symbol",
    "chi",
    "residue_cF",
    "zetaF",
    "analytic_conductor",
]


# ===== discriminants =====


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 2
    return True


def is_fundamental_discriminant(d: int) -> bool:
    """True when d is the discriminant of a real quadratic field.

    Either d = 1 mod 4 and squarefree (d > 1), or d = 4m with m = 2, 3 mod 4
    and m squarefree.
    """
    if d <= 1:
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


@dataclass(frozen=True)
class QuadraticField:
    """A base field: the rationals (disc = 1) or the real quadratic field of
    fundamental discriminant disc > 1.  degree is 1 or 2 accordingly."""

    disc: int
    degree: int

    def __post_init__(self):
        if self.disc == 1:
            if self.degree != 1:
                raise NonFundamentalDiscriminant("disc 1 must have degree 1")
        elif is_fundamental_discriminant(self.disc):
            if self.degree != 2:
                raise NonFundamentalDiscriminant(
                    f"disc {self.disc} must have degree 2"
                )
        else:
            raise NonFundamentalDiscriminant(
                f"{self.disc} is not 1 and not a fundamental discriminant"
            )


def make_field(disc: int) -> QuadraticField:
    """Validated constructor: disc = 1 for the rationals, otherwise a positive
    fundamental discriminant."""
    if disc == 1:
        return QuadraticField(1, 1)
    return QuadraticField(disc, 2)


# ===== quadratic character =====


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise DomainError("kronecker_symbol needs n >= 1")
    result = 1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=64)
def _chi_table(disc: int) -> tuple[int, ...]:
    # chi_D has period D, so one period of Kronecker values suffices.
    return tuple(
        kronecker_symbol(disc, r) if r else 0 for r in range(disc)
    )


def chi(field: QuadraticField, n: int) -> int:
    """chi_D(n) in {-1, 0, 1}; identically 1 for the rationals."""
    if n < 1:
        raise DomainError("chi needs n >= 1")
    if field.disc == 1:
        return 1
    return _chi_table(field.disc)[n % field.disc]


# ===== zeta values =====

# (exponent 2j, B_{2j}) pairs for the Euler-Maclaurin tail.
_BERN = (
    (2, 1.0 / 6),
    (4, -1.0 / 30),
    (6, 1.0 / 42),
    (8, -1.0 / 30),
    (10, 5.0 / 66),
    (12, -691.0 / 2730),
    (14, 7.0 / 6),
)

_EM_TERMS = 24


def _hurwitz_zeta(s: float, q: float) -> float:
    """Hurwitz zeta(s, q) for s > 1, q > 0 by Euler-Maclaurin summation.

    With 24 direct terms and corrections through B_14, the first omitted
    term is ~ |B_16|/16! * (s)_15 * 24^(-s-15), which is < 1e-22 for s = 2
    and shrinks for larger s.
    """
    total = 0.0
    for k in range(_EM_TERMS):
        total += (k + q) ** -s
    nq = _EM_TERMS + q
    total += nq ** (1.0 - s) / (s - 1.0)
    total += 0.5 * nq**-s
    coef = s * nq ** (-s - 1.0)  # (s)_1 * nq^(-s-1)
    inv2 = nq**-2.0
    fact = 2.0
    for idx, (two_j, b) in enumerate(_BERN):
        if idx:
            coef *= (s + two_j - 3) * (s + two_j - 2) * inv2
            fact *= (two_j - 1) * two_j
        total += b / fact * coef
    return total


def _riemann_zeta(s: float) -> float:
    return _hurwitz_zeta(s, 1.0)


def _dirichlet_L(disc: int, s: float) -> float:
    table = _chi_table(disc)
    acc = 0.0
    for a in range(1, disc):
        c = table[a]
        if c:
            acc += c * _hurwitz_zeta(s, a / disc)
    return disc**-s * acc


def residue_cF(field: QuadraticField) -> float:
    """Residue of zeta_F at s = 1: 1 for the rationals, L(1, chi_D)
    otherwise, via the log-sin character sum."""
    if field.disc == 1:
        return 1.0
    d = field.disc
    table = _chi_table(d)
    acc = 0.0
    for a in range(1, d):
        c = table[a]
        if c:
            acc += c * math.log(math.sin(math.pi * a / d))
    return -acc / math.sqrt(d)


def zetaF(field: QuadraticField, s: float) -> float:
    """zeta_F(s) for s > 1: zeta(s) for the rationals, zeta(s)*L(s, chi_D)
    for quadratic fields."""
    if s <= 1.0:
        raise DomainError("zetaF is evaluated only for s > 1")
    z = _riemann_zeta(s)
    if field.disc == 1:
        return z
    return z * _dirichlet_L(field.disc, s)


# ===== analytic conductor =====


def analytic_conductor(field: QuadraticField, weights: list[int]) -> float:
    """N(D_F^2) * prod_j ((k_j+5)/2) * ((k_j+7)/2) for a weight vector with
    one entry per archimedean place (so len(weights) == degree)."""
    if len(weights) != field.degree:
        raise WeightMismatch(
            f"need {field.degree} weights, got {len(weights)}"
        )
    if any(k < 2 for k in weights):
        raise WeightMismatch("weights must be at least 2")
    norm_d2 = 1 if field.disc == 1 else field.disc**2
    q = float(norm_d2)
    for k in weights:
        q *= (k + 5) / 2 * ((k + 7) / 2)
    return q
