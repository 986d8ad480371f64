"""Coefficient systems: the prime-power recursion, validation modes, the
semicircle sampler, and the CSV freeze/load cycle."""

import math

import numpy as np
import pytest

from heckesigns import (
    DomainError,
    DuplicatePrime,
    MissingPrime,
    Mode,
    ParseError,
    Provenance,
    RamanujanViolation,
    from_prime_values,
    load_csv,
    make_field,
    sample_sato_tate,
    write_csv,
)
from heckesigns.coefficients import CoefficientSystem
from heckesigns.ideals import IdealEntry, _prime_ideal_list, prime_ideals_above


def _single_prime_system(a, mode=Mode.UNRESTRICTED):
    Q = make_field(1)
    q = prime_ideals_above(Q, 2)[0]
    return from_prime_values(Q, {q: a}, mode), q


# ===== recursion =====


def test_unit_ideal_value_is_one():
    system, _ = _single_prime_system(0.7)
    assert system.value(IdealEntry(1, {})) == 1.0


@pytest.mark.parametrize("a", [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.7])
def test_hecke_identity(a):
    system, q = _single_prime_system(a)
    assert abs(system.power_value(q, 1) ** 2 - system.power_value(q, 2) - 1.0) < 1e-12


def test_recursion_boundary_cases():
    # a = 2 degenerates to C(p^v) = v + 1; a = 0 gives C(p^2) = -1;
    # a = 1 cycles through 1, 1, 0, -1, -1, 0, 1, ...
    system, q = _single_prime_system(2.0)
    for v in range(6):
        assert system.power_value(q, v) == pytest.approx(v + 1.0, abs=1e-12)
    system, q = _single_prime_system(0.0)
    assert system.power_value(q, 2) == -1.0
    system, q = _single_prime_system(1.0)
    assert [system.power_value(q, v) for v in range(4)] == [1.0, 1.0, 0.0, -1.0]
    assert system.power_value(q, 2) in (0.0, -1.0)


def test_negative_exponent_rejected():
    system, q = _single_prime_system(1.0)
    with pytest.raises(DomainError):
        system.power_value(q, -1)


def test_power_bound_propagates():
    rng = np.random.Generator(np.random.PCG64(3))
    for _ in range(50):
        a = float(rng.uniform(-2.0, 2.0))
        system, q = _single_prime_system(a, Mode.EVEN_WEIGHT)
        for v in range(11):
            assert abs(system.power_value(q, v)) <= v + 1.0 + 1e-12


def test_euler_factor_truncated_inverse():
    # (sum_{v<=8} C(p^v) X^v) * (1 - a X + X^2) = 1 + O(X^9)
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(25):
        a = float(rng.uniform(-2.5, 2.5))
        system, q = _single_prime_system(a)
        c = [system.power_value(q, v) for v in range(9)]
        factor = [1.0, -a, 1.0]
        prod = [0.0] * 12
        for i, ci in enumerate(c):
            for j, fj in enumerate(factor):
                prod[i + j] += ci * fj
        assert abs(prod[0] - 1.0) < 1e-10
        for k in range(1, 9):
            assert abs(prod[k]) < 1e-10


def test_multiplicativity_across_primes():
    Q = make_field(1)
    q2 = prime_ideals_above(Q, 2)[0]
    q3 = prime_ideals_above(Q, 3)[0]
    q5 = prime_ideals_above(Q, 5)[0]
    system = from_prime_values(
        Q, {q2: 1.3, q3: -0.4, q5: 0.9}, Mode.EVEN_WEIGHT
    )
    combined = system.value(IdealEntry(2**2 * 3 * 5, {q2: 2, q3: 1, q5: 1}))
    parts = (
        system.power_value(q2, 2)
        * system.power_value(q3, 1)
        * system.power_value(q5, 1)
    )
    assert combined == pytest.approx(parts, abs=0.0)


# ===== validation =====


def test_even_weight_boundary_accepted(F5):
    primes = _prime_ideal_list(F5, 100)
    system = from_prime_values(
        F5, {q: 2.0 for q in primes}, Mode.EVEN_WEIGHT
    )
    assert all(v == 2.0 for v in system.prime_values.values())


def test_even_weight_violation_rejected():
    with pytest.raises(RamanujanViolation):
        _single_prime_system(2.5, Mode.EVEN_WEIGHT)


def test_unrestricted_allows_large_values():
    system, q = _single_prime_system(2.5, Mode.UNRESTRICTED)
    assert system.prime_value(q) == 2.5


def test_inconsistent_prime_ideal_rejected(Q, F5):
    # the inert prime over 2 in disc 5 has norm 4; no such ideal exists
    # over the rationals
    q = prime_ideals_above(F5, 2)[0]
    with pytest.raises(DomainError):
        from_prime_values(Q, {q: 1.0}, Mode.UNRESTRICTED)
    # conjugate label 1 never exists over the rationals
    q1 = prime_ideals_above(F5, 11)[1]
    with pytest.raises(DomainError):
        from_prime_values(Q, {q1: 1.0}, Mode.UNRESTRICTED)


def test_missing_prime_lookup():
    Q = make_field(1)
    system = from_prime_values(Q, {}, Mode.EVEN_WEIGHT)
    q = prime_ideals_above(Q, 2)[0]
    with pytest.raises(MissingPrime):
        system.value(IdealEntry(2, {q: 1}))


# ===== sampler =====


def test_sampler_range_and_mode(F5):
    system = sample_sato_tate(F5, 10**4, seed=0)
    assert system.mode is Mode.EVEN_WEIGHT
    assert system.provenance == Provenance("synthetic", 0)
    vals = list(system.prime_values.values())
    assert vals and all(-2.0 <= v <= 2.0 for v in vals)


def test_sampler_deterministic(F5):
    a = sample_sato_tate(F5, 10**4, seed=42)
    b = sample_sato_tate(F5, 10**4, seed=42)
    assert a.prime_values == b.prime_values
    c = sample_sato_tate(F5, 10**4, seed=43)
    assert a.prime_values != c.prime_values


def test_sampler_prefix_stable(F5):
    # enlarging the norm cutoff only appends primes; shared primes keep
    # their draws, so checkpoints of one run are mutually consistent
    small = sample_sato_tate(F5, 10**4, seed=7)
    large = sample_sato_tate(F5, 10**5, seed=7)
    for q, v in small.prime_values.items():
        assert large.prime_values[q] == v


def test_sampler_semicircle_moments(F5):
    system = sample_sato_tate(F5, 10**6, seed=42)
    vals = np.array(list(system.prime_values.values()))
    assert abs(vals.mean()) < 0.01
    assert abs((vals**2).mean() - 1.0) < 0.02


# ===== CSV =====


def test_csv_round_trip_exact(F5, tmp_path):
    system = sample_sato_tate(F5, 3000, seed=5)
    path = str(tmp_path / "sys.csv")
    write_csv(system, path)
    back = load_csv(F5, path)
    assert back.mode is Mode.EVEN_WEIGHT
    assert back.prime_values == system.prime_values


def test_csv_tau_value_at_two(Q, tau_csv):
    system = load_csv(Q, tau_csv)
    q = prime_ideals_above(Q, 2)[0]
    assert system.prime_value(q) == pytest.approx(
        -24.0 / 2.0**5.5, abs=1e-15
    )
    assert system.prime_value(q) == pytest.approx(-0.530330085889911, abs=1e-12)


def test_csv_empty_data_section(Q, tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# mode=EvenWeight, disc=1\nrational_prime,conjugate_label,value\n")
    system = load_csv(Q, str(path))
    assert system.prime_values == {}
    q = prime_ideals_above(Q, 2)[0]
    with pytest.raises(MissingPrime):
        system.value(IdealEntry(2, {q: 1}))


def test_csv_duplicate_prime(Q, tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text(
        "# mode=EvenWeight, disc=1\n"
        "rational_prime,conjugate_label,value\n"
        "2,0,1.0\n2,0,0.5\n"
    )
    with pytest.raises(DuplicatePrime):
        load_csv(Q, str(path))


@pytest.mark.parametrize(
    "body",
    [
        "rational_prime,conjugate_label,value\n2,0,1.0\n",  # no mode header
        "# mode=Weird, disc=1\n2,0,1.0\n",  # unknown mode
        "# mode=EvenWeight, disc=1\n2,0\n",  # short row
        "# mode=EvenWeight, disc=1\n2,0,abc\n",  # bad float
        "# mode=EvenWeight, disc=1\n4,0,1.0\n",  # 4 is not prime
        "# mode=EvenWeight, disc=5\n2,1,1.0\n",  # label 1 invalid: 2 inert
        "# mode=EvenWeight, disc=5\n2,0,1.0\n",  # header disc vs field below
    ],
)
def test_csv_malformed_inputs(body, tmp_path):
    fld = make_field(5) if "disc=5" in body and "2,1" in body else make_field(1)
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(ParseError):
        load_csv(fld, str(path))


def test_csv_even_weight_bound_enforced_on_load(Q, tmp_path):
    path = tmp_path / "big.csv"
    path.write_text(
        "# mode=EvenWeight, disc=1\n"
        "rational_prime,conjugate_label,value\n"
        "2,0,2.5\n"
    )
    with pytest.raises(RamanujanViolation):
        load_csv(Q, str(path))
    # the same file in Unrestricted mode is fine
    path.write_text(
        "# mode=Unrestricted, disc=1\n"
        "rational_prime,conjugate_label,value\n"
        "2,0,2.5\n"
    )
    system = load_csv(Q, str(path))
    assert system.mode is Mode.UNRESTRICTED
