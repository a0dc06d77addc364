import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetareg import ConditioningError, DomainError, VerdictError
from zetareg.riemann import zeta_continued, zeta_derivative
from zetareg.spectral import (Explicit, NotRegularizable, PowerLaw, Primes, Regularized,
                              cutoff_energy, cutoff_fit, parse_spectrum, regularized_log_det,
                              scaling_check, spectral_zeta)

HALF_LN_2PI = 0.5 * math.log(2 * math.pi)
MUS = (0.5, 1.0, math.e, 10.0)


def test_spectral_zeta_values(tables):
    assert abs(spectral_zeta(PowerLaw(1), 2) - math.pi ** 2 / 6) < 1e-9
    assert spectral_zeta(Explicit((1, 2, 3)), 1) == pytest.approx(11 / 6, abs=1e-15)
    assert abs(spectral_zeta(Primes(), 2, tables) - 0.4522474) < 1e-7


def test_spectrum_validation(tmp_path):
    with pytest.raises(DomainError):
        PowerLaw(0)
    with pytest.raises(DomainError):
        PowerLaw(1.5)
    with pytest.raises(DomainError):
        Explicit((0.0, 1.0))
    with pytest.raises(DomainError):
        Explicit((3.0, 2.0))
    f = tmp_path / "ev.txt"
    f.write_text("# eigenvalues\n2\n3\n")
    assert parse_spectrum(f"file:{f}") == Explicit((2.0, 3.0))
    assert parse_spectrum("power:2") == PowerLaw(2)
    assert parse_spectrum("primes") == Primes()
    with pytest.raises(DomainError):
        parse_spectrum("hydrogen")


def test_integer_spectrum_determinant():
    v = regularized_log_det(PowerLaw(1), 1.0)
    assert isinstance(v, Regularized)
    assert abs(v.zeta_at_0 + 0.5) < 1e-12
    assert abs(v.ln_det - HALF_LN_2PI) < 1e-6
    assert abs(v.w0 - 0.5 * v.zeta_prime_at_0) < 1e-15


def test_power_law_chain_rule():
    v = regularized_log_det(PowerLaw(2), 1.0)
    # independent finite difference of s -> zeta(2 s) at 0
    h = 1e-4
    fd = (zeta_continued(2 * h) - zeta_continued(-2 * h)) / (2 * h)
    assert abs(v.zeta_prime_at_0 - fd) < 1e-6
    assert abs(v.zeta_prime_at_0 - 2 * zeta_derivative(0)) < 1e-6


def test_explicit_determinant():
    v = regularized_log_det(Explicit((2.0, 3.0)), 3.7)
    assert abs(v.ln_det - math.log(6)) < 1e-12
    assert v.zeta_at_0 == 2


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.01, 1e4), min_size=1, max_size=20))
def test_explicit_determinant_is_product(values):
    ev = tuple(sorted(values))
    v = regularized_log_det(Explicit(ev), 1.0)
    prod = math.prod(ev)
    assert math.exp(-v.zeta_prime_at_0.real) == pytest.approx(prod, rel=1e-10)


@pytest.mark.parametrize("mu", MUS)
@pytest.mark.parametrize("spec", [PowerLaw(1), PowerLaw(2), Explicit((1.0, 2.0, 3.0))],
                         ids=["power1", "power2", "explicit"])
def test_scaling_check(spec, mu):
    assert scaling_check(spec, mu) < 1e-8


def test_scaling_check_values():
    assert scaling_check(Explicit((1.0, 2.0, 3.0)), 2.0) < 1e-12
    v = regularized_log_det(PowerLaw(1), math.e)
    assert v.w0 == pytest.approx(-0.9595, abs=1e-4)


def test_scaling_check_refuses_primes():
    with pytest.raises(VerdictError):
        scaling_check(Primes(), 1.0)


@pytest.mark.parametrize("mu", [0.1, 1.0, 10.0])
def test_primes_not_regularizable(tables, mu):
    v = regularized_log_det(Primes(), mu, tables)
    assert isinstance(v, NotRegularizable)
    assert "no continuation" in v.reason
    near_zero = [x for x in v.singular_points if 0 < x <= 0.1]
    assert len(near_zero) >= 5
    listed = [d for d in v.diagnostics if d.startswith("singular point")]
    assert len(listed) >= 5


def test_primes_verdict_without_tables():
    assert isinstance(regularized_log_det(Primes(), 1.0), NotRegularizable)


def test_verdict_totality(tables):
    for spec in (PowerLaw(1), PowerLaw(3), Explicit((5.0,)), Primes()):
        v = regularized_log_det(spec, 2.0, tables)
        assert isinstance(v, (Regularized, NotRegularizable))


def test_mu_must_be_positive():
    with pytest.raises(DomainError):
        regularized_log_det(PowerLaw(1), 0.0)


# ---------------------------------------------------------------- cutoff

def test_cutoff_energy_closed_form():
    eps = 0.1
    closed = math.exp(-eps) / (1 - math.exp(-eps)) ** 2
    assert abs(cutoff_energy(PowerLaw(1), eps) - closed) < 1e-10


def test_cutoff_energy_large_eps(tables):
    for spec, lam1 in ((PowerLaw(2), 1.0), (Primes(), 2.0), (Explicit((4.0, 9.0)), 4.0)):
        e = cutoff_energy(spec, 50.0, tables)
        assert e == pytest.approx(lam1 * math.exp(-50 * lam1), rel=1e-10)


def test_cutoff_energy_primes(tables):
    p = tables.primes[tables.primes < 10**5].astype(float)
    ref = math.fsum((p * np.exp(-0.01 * p)).tolist())
    assert abs(cutoff_energy(Primes(), 0.01, tables) - ref) < 1e-9


def test_cutoff_energy_monotone(tables):
    grid = np.geomspace(0.005, 0.5, 12)
    for spec in (PowerLaw(1), PowerLaw(2), Primes(), Explicit((1.0, 7.0))):
        e = [cutoff_energy(spec, x, tables) for x in grid]
        assert all(b < a for a, b in zip(e, e[1:]))


def test_cutoff_fit_integer_spectrum():
    fit = cutoff_fit(PowerLaw(1), np.geomspace(0.005, 0.05, 16))
    assert abs(fit.finite_part + 1 / 12) < 1e-4
    assert abs(fit.finite_part - zeta_continued(-1).real) < 1e-4
    assert fit.stability < 1e-4
    assert fit.coefficients[0] == pytest.approx(1.0, abs=1e-6)


def test_cutoff_fit_explicit_smoke():
    fit = cutoff_fit(Explicit((5.0,)), np.geomspace(0.01, 0.1, 10))
    assert abs(fit.finite_part - 5) < 0.1
    assert fit.stability >= 0


def test_cutoff_fit_prime_instability(tables):
    grid = np.geomspace(0.002, 0.02, 16)
    prime = cutoff_fit(Primes(), grid, tables=tables)
    integer = cutoff_fit(PowerLaw(1), grid)
    assert prime.stability > 10 * integer.stability


def test_cutoff_fit_with_log(tables):
    fit = cutoff_fit(Primes(), np.geomspace(0.002, 0.02, 16), with_log=True, tables=tables)
    assert len(fit.basis) == 7 and np.isfinite(fit.finite_part)


def test_cutoff_fit_preconditions():
    with pytest.raises(DomainError):
        cutoff_fit(PowerLaw(1), np.geomspace(0.01, 0.1, 7))
    with pytest.raises(DomainError):
        cutoff_fit(PowerLaw(1), np.geomspace(0.01, 0.05, 10))
    with pytest.raises(ConditioningError):
        cutoff_fit(PowerLaw(1), [0.01] * 4 + [0.1] * 4)
