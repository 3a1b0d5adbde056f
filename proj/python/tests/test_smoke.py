import math

import pytest

import hecke


@pytest.fixture(scope="module")
def sieve():
    return hecke.PrimeSieve(100_000)


@pytest.fixture(scope="module")
def table():
    return hecke.EigenformTable.build(2000)


def test_tau_values(table):
    assert [table.tau(n) for n in range(1, 6)] == [1, -24, 252, -1472, 4830]
    # Python ints carry the full 128-bit value.
    assert table.tau(1999) == table.tau(1999) and isinstance(table.tau(1999), int)
    assert hecke.hecke_violation(table) is None
    assert table.lambda_(2) == pytest.approx(-24 / 2**5.5, rel=1e-15)


def test_characters(sieve):
    g = hecke.CharacterGroup(8, sieve)
    assert g.order == 4
    assert len(g.primitive_characters()) == 2
    chi = g.primitive_characters()[0]
    assert abs(hecke.gauss_sum(chi)) == pytest.approx(math.sqrt(8), rel=1e-12)
    assert g.character_by_exponents(chi.exponents).index == chi.index


def test_l_value_and_majorant(sieve, table):
    chi = hecke.CharacterGroup(13, sieve).primitive_characters()[1]
    twist = hecke.Twist.from_character(chi)
    L = hecke.l_twisted(0.5, twist, table)
    assert L.error_estimate < 1e-8
    maj = hecke.log_l_majorant(twist, 0.0, 13.0, 13.0, table, sieve)
    assert math.isfinite(maj.value)


def test_moments_and_fit(sieve, table):
    r = hecke.moment_fixed_mod(7, 5, 1.0, table, sieve, all_characters=True)
    closed = 6 * sum(table.lambda_(n) ** 2 for n in range(1, 6))
    assert r.measured == pytest.approx(closed, rel=1e-12)
    reports = [hecke.moment_fixed_mod(q, q, 2.0, table, sieve) for q in (31, 61, 101)]
    assert math.isfinite(hecke.fit_exponent(reports).slope)
    assert hecke.moment_quadratic(300, 200, 1.0, table, sieve, U=4.0).U == 4.0


def test_errors(sieve, table):
    with pytest.raises(ValueError):
        hecke.moment_fixed_mod(5, 6, 1.0, table, sieve)
    assert issubclass(hecke.PreconditionError, ValueError)


def test_lambda0_and_prsum(sieve):
    assert hecke.log_lambda0() == pytest.approx(0.4912, abs=1e-4)
    rec = hecke.verify_lemma_prsum(1000, 2, 0.0, hecke.SmoothingKernel(8.0), sieve)
    assert rec.lhs == 0.0
