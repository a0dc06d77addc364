import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetareg import DomainError, RangeError
from zetareg.numtheory import (build_tables, is_square_free, log_integral, moebius, pnt_table,
                               prime_count, square_free_count)
from zetareg.riemann import zeta

from conftest import simple_sieve, trial_is_prime, trial_moebius


def test_build_tables_small():
    t = build_tables(10)
    assert t.primes.tolist() == [2, 3, 5, 7]
    assert t.moebius[6] == 1
    assert t.moebius[4] == 0


@pytest.mark.parametrize("limit", [1, 0, -5, 10**8 + 1])
def test_build_tables_size_error(limit):
    with pytest.raises(RangeError):
        build_tables(limit)


def test_tables_are_immutable(small_tables):
    with pytest.raises(ValueError):
        small_tables.primes[0] = 4
    with pytest.raises(ValueError):
        small_tables.moebius[1] = 0


@pytest.mark.parametrize("n,expected", [(1, 1), (2, -1), (30, -1), (6, 1), (12, 0), (105, -1)])
def test_moebius_values(small_tables, n, expected):
    assert moebius(n, small_tables) == expected


def test_moebius_range(small_tables):
    with pytest.raises(RangeError):
        moebius(small_tables.limit + 1, small_tables)
    with pytest.raises(RangeError):
        moebius(0, small_tables)


def test_square_free(small_tables):
    assert is_square_free(6, small_tables)
    assert not is_square_free(12, small_tables)


def test_square_free_density():
    t = build_tables(10**6)
    density = square_free_count(1, 10**6, t) / 10**6
    oracle = 1 / zeta(2).real          # 6/pi^2
    assert density == pytest.approx(0.6079, abs=5e-4)
    assert abs(density - oracle) < 5e-4


def test_divisor_sum_identity_exhaustive(small_tables):
    mu = small_tables.moebius.astype(int)
    acc = np.zeros(10**4 + 1, dtype=int)
    for d in range(1, 10**4 + 1):
        acc[d::d] += mu[d]
    assert acc[1] == 1
    assert not acc[2:].any()


def test_primes_match_independent_sieve(tables):
    ref = simple_sieve(10**6)
    got = tables.primes[tables.primes <= 10**6]
    assert np.array_equal(got, ref)


def test_sieve_agrees_with_trial_division(tables):
    rng = random.Random(1)
    is_p = np.zeros(tables.limit + 1, dtype=bool)
    is_p[tables.primes] = True
    for n in (rng.randrange(1, tables.limit + 1) for _ in range(1000)):
        assert is_p[n] == trial_is_prime(n)


def test_moebius_agrees_with_factorization(tables):
    rng = random.Random(2)
    for n in [rng.randrange(1, tables.limit + 1) for _ in range(300)] + list(range(1, 200)):
        assert tables.moebius[n] == trial_moebius(n)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_moebius_multiplicative(small_tables, a, b):
    if math.gcd(a, b) != 1:
        return
    assert moebius(a * b, cached_big()) == moebius(a, small_tables) * moebius(b, small_tables)


def cached_big():
    from zetareg.numtheory import cached_tables
    return cached_tables(10**7)


def test_prime_count(tables):
    assert prime_count(10, tables) == 4
    assert prime_count(100, tables) == sum(trial_is_prime(n) for n in range(101))
    assert prime_count(10**6, tables) == len(simple_sieve(10**6)) == 78498
    assert prime_count(10.9, tables) == 4
    with pytest.raises(RangeError):
        prime_count(tables.limit + 1, tables)


def _simpson_li(x, n=200_000):
    # composite Simpson on u = ln t, integrand e^u / u
    a, b = math.log(2), math.log(x)
    u = np.linspace(a, b, n + 1)
    f = np.exp(u) / u
    h = (b - a) / n
    return h / 3 * (f[0] + f[-1] + 4 * f[1:-1:2].sum() + 2 * f[2:-1:2].sum())


def test_log_integral():
    assert abs(log_integral(2 + 1e-12)) < 1e-9
    li6 = log_integral(1e6)
    assert li6 == pytest.approx(78626.5, abs=0.5)
    assert abs(li6 - _simpson_li(1e6)) < 1e-6
    with pytest.raises(DomainError):
        log_integral(2.0)


def test_log_integral_monotone_and_converged():
    xs = np.geomspace(3, 1e7, 25)
    vals = [log_integral(x) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert abs(log_integral(1e6, abs_tol=1e-9) - log_integral(1e6, abs_tol=5e-10)) < 1e-9


def test_pnt_error_term(tables):
    x = 1e6
    assert abs(prime_count(x, tables) - log_integral(x)) < math.sqrt(x) * math.log(x)


def test_pnt_table(tables):
    rows = pnt_table([1e3, 1e6], tables)
    r = rows[0]
    assert (r.x, r.pi) == (1e3, 168)
    assert r.x_over_ln_x == pytest.approx(144.8, abs=0.05)
    assert r.li == pytest.approx(176.6, abs=0.05)
    assert rows[1].ratio == pytest.approx(1.084, abs=5e-4)
    assert pnt_table([], tables) == []
    ratios = [row.ratio for row in pnt_table([10.0 ** e for e in range(3, 8)], tables)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(r > 1 for r in ratios)
