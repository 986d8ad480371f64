"""Shared fixtures: base fields, the tau table oracle (built once per
session), coefficient systems used across modules, and the collector that
prints one pass/fail line per acceptance criterion at the end of the run."""

from __future__ import annotations

import math

import numpy as np
import pytest

import oracles
from heckesigns import (
    Mode,
    from_prime_values,
    make_field,
    write_csv,
)
from heckesigns.ideals import _prime_ideal_list

# ===== fields =====


@pytest.fixture(scope="session")
def Q():
    return make_field(1)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F8():
    return make_field(8)


# ===== tau data =====

TAU_LIMIT = 10**5


@pytest.fixture(scope="session")
def tau():
    """tau(0..1e5) from the exact q-expansion oracle (a few seconds, built
    once)."""
    return oracles.tau_table(TAU_LIMIT)


@pytest.fixture(scope="session")
def tau_system(Q, tau):
    """Normalized tau(p)/p^5.5 at every rational prime up to 1e5, as an
    EvenWeight system over the rationals (Deligne's bound makes EvenWeight
    legitimate here)."""
    vals = {}
    for q in _prime_ideal_list(Q, TAU_LIMIT):
        p = q.rational_prime
        vals[q] = tau[p] / p**5.5
    return from_prime_values(Q, vals, Mode.EVEN_WEIGHT)


@pytest.fixture(scope="session")
def tau_csv(tau_system, tmp_path_factory):
    path = tmp_path_factory.mktemp("coeffs") / "tau.csv"
    write_csv(tau_system, str(path))
    return str(path)


# ===== synthetic systems =====


def constant_system(field, x, value):
    """All prime values equal to `value` up to norm x."""
    primes = _prime_ideal_list(field, int(x))
    mode = Mode.EVEN_WEIGHT if abs(value) <= 2 else Mode.UNRESTRICTED
    return from_prime_values(field, {q: float(value) for q in primes}, mode)


def premise_respecting_system(field, y, u, seed):
    """Seeded system obeying the sieve lower-bound premise: values in [1, 2]
    below sqrt(y), [0, 2] up to y, [-2, 2] above."""
    limit = int(math.floor(y**u))
    rng = np.random.Generator(np.random.PCG64(seed))
    vals = {}
    for q in _prime_ideal_list(field, limit):
        if q.norm * q.norm <= y:
            vals[q] = 1.0 + rng.random()
        elif q.norm <= y:
            vals[q] = 2.0 * rng.random()
        else:
            vals[q] = -2.0 + 4.0 * rng.random()
    return from_prime_values(field, vals, Mode.EVEN_WEIGHT)


class UnitWeight:
    """Test-only stand-in assigning weight 1.0 to every ideal (deliberately
    not Hecke-consistent); exercises the summation plumbing with closed-form
    answers."""

    def __init__(self, field):
        self.field = field

    def value(self, entry):
        return 1.0


# ===== acceptance criterion reporting =====

ACCEPTANCE_LINES = pytest.StashKey()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    """Record (and print) one pass/fail line for an acceptance criterion."""

    def log(criterion: int, passed: bool, detail: str) -> None:
        line = (
            f"criterion {criterion:2d}: "
            f"{'PASS' if passed else 'FAIL'}  {detail}"
        )
        request.config.stash[ACCEPTANCE_LINES].append((criterion, line))
        print(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash[ACCEPTANCE_LINES] if ACCEPTANCE_LINES in config.stash else []
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.line(line)
