"""Riemann zeta on C minus {1}.

Re(s) >= ``series_cutoff_re`` uses the Dirichlet series (with an
Euler-Maclaurin tail once the raw tail would need too many terms); everything
else goes through the theta-function integral

    pi^{-s/2} Gamma(s/2) zeta(s) = 1/(s(s-1))
        + int_1^inf theta1(x) (x^{s/2-1} + x^{-s/2-1/2}) dx.

For large |Im s| the prefactor 1/Gamma(s/2) grows like e^{pi|t|/4} and the
bracket cancels to the same degree, so the integral is taken along the rays
arg x = +-phi instead of the real axis (phi -> pi/2 as |t| grows). At phi = 0
the formula is the one above; for phi > 0 the e^{i phi s/2} factor that carries
the decay is pulled out analytically and nothing cancels.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import AccuracyError, DomainError, PoleError
from .gamma import log_gamma, rgamma
from .numtheory import NumberTables
from .quadrature import fixed_panels, gauss_kronrod


@dataclass(frozen=True)
class ZetaEngineConfig:
    series_cutoff_re: float = 2.0
    quadrature_tol: float = 1e-12
    theta_truncation_tol: float = 1e-16
    im_domain_limit: float = 60.0
    derivative_step: float = 1e-5

    def __post_init__(self):
        if min(self.quadrature_tol, self.theta_truncation_tol,
               self.im_domain_limit, self.derivative_step) <= 0:
            raise ValueError("tolerances and limits must be positive")
        if self.series_cutoff_re <= 1:
            raise ValueError("series_cutoff_re must exceed 1")


DEFAULT_CONFIG = ZetaEngineConfig()


def as_complex(s) -> complex:
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    return z


def _realify(s: complex, v: complex) -> complex:
    # Exact reality on the real axis keeps principal logs of negative values at +i*pi.
    return complex(v.real, 0.0) if s.imag == 0 else v


# ---------------------------------------------------------------- theta

def jacobi_theta1(x: float, config: ZetaEngineConfig = DEFAULT_CONFIG) -> float:
    """sum_{n>=1} exp(-n^2 pi x), i.e. (theta(x) - 1)/2."""
    if not x > 0:
        raise DomainError(f"jacobi_theta1 needs x > 0, got {x}")
    total = 0.0
    n = 1
    while True:
        term = math.exp(-n * n * math.pi * x)
        total += term
        if term < max(config.theta_truncation_tol * total, 1e-30) or term == 0.0:
            return total
        n += 1


def _theta1_terms(cos_phi: float, tol: float) -> int:
    # Smallest N with exp(-N^2 pi cos_phi) below tol on the ray (|x| >= 1).
    return max(2, math.ceil(math.sqrt(math.log(1 / tol) / (math.pi * cos_phi))) + 1)


def _theta1_complex(z: np.ndarray, n_terms: int) -> np.ndarray:
    n2 = (np.arange(1, n_terms + 1, dtype=float) ** 2)[:, None]
    return np.exp(-math.pi * n2 * z[None, :]).sum(axis=0)


# ---------------------------------------------------------------- series

_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
              Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330)]
# B_{2j}/(2j)!
_EM_COEF = [float(b / math.factorial(2 * (j + 1))) for j, b in enumerate(_BERNOULLI)]
_EM_TERMS = 8
_RAW_SUM_MAX = 5000


def _raw_terms_needed(sigma: float, tol: float) -> float:
    # N with N^{1-sigma}/(sigma-1) < tol
    return (tol * (sigma - 1)) ** (-1.0 / (sigma - 1))


def _power_terms(s: complex, n_lo: int, n_hi: int):
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    logn = np.log(n)
    return logn, np.exp(-s * logn)


def _em_tail(s: complex, N: int, deriv: bool):
    """Euler-Maclaurin value of sum_{n>=N} n^{-s} (or its s-derivative) and a bound."""
    logN = math.log(N)
    Ns = cmath.exp(-s * logN)
    head = N * Ns / (s - 1)
    if deriv:
        val = -logN * head - head / (s - 1) - 0.5 * logN * Ns
    else:
        val = head + 0.5 * Ns
    poch = s            # rising factorial (s)_{2j-1}
    harm = 1 / s        # sum_{i<2j-1} 1/(s+i)
    pw = Ns / N         # N^{-s-2j+1}
    for j in range(1, _EM_TERMS + 1):
        t = _EM_COEF[j - 1] * poch * pw
        val += t * (harm - logN) if deriv else t
        a, b = s + 2 * j - 1, s + 2 * j
        poch *= a * b
        harm += 1 / a + 1 / b
        pw /= N * N
    # Next-term bound with the standard |s + 2m + 1|/(sigma + 2m + 1) factor.
    m = _EM_TERMS
    nxt = abs(_EM_COEF[m] * poch * pw) * abs(s + 2 * m + 1) / (s.real + 2 * m + 1)
    if deriv:
        nxt *= abs(harm) + logN + 1
    return val, nxt


def _dirichlet(s: complex, tol: float, deriv: bool, skip_one: bool = False):
    """Partial sum from n = 1 (or 2) plus tail; returns (value, error bound)."""
    sigma = s.real
    n_raw = _raw_terms_needed(sigma, tol)
    if deriv:
        # the derivative tail carries an extra ln N
        n_raw *= 1 + math.log(max(n_raw, 3.0)) / (sigma - 1)
    start = 2 if skip_one else 1
    if n_raw <= _RAW_SUM_MAX:
        N = max(int(math.ceil(n_raw)), start)
        logn, terms = _power_terms(s, start, N)
        if deriv:
            terms = -logn * terms
        tail = N ** (1 - sigma) / (sigma - 1)
        if deriv:
            tail *= math.log(N) + 1 / (sigma - 1)
        return complex(np.sum(terms)), tail
    N = max(32, int(abs(s) / 4) + 16)
    while True:
        tail_val, err = _em_tail(s, N, deriv)
        if err < tol or N > 10**6:
            break
        N *= 2
    if err >= tol:
        raise AccuracyError(f"Dirichlet series cannot reach tol={tol:g} at s={s}")
    logn, terms = _power_terms(s, start, N - 1)
    if deriv:
        terms = -logn * terms
    return complex(np.sum(terms)) + tail_val, err


def zeta_dirichlet(s, tol: float = 1e-12, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """Dirichlet series sum n^{-s}, for Re(s) >= series_cutoff_re."""
    s = as_complex(s)
    if s.real < config.series_cutoff_re:
        raise DomainError(f"Re(s) = {s.real} below series cutoff {config.series_cutoff_re}; "
                          "use zeta_continued")
    return _realify(s, _dirichlet(s, tol, deriv=False)[0])


def zeta_minus_one(s, tol: float = 1e-15, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """zeta(s) - 1 summed from n = 2, keeping relative precision for large Re(s)."""
    s = as_complex(s)
    if s.real < config.series_cutoff_re:
        return zeta(s, config) - 1
    return _realify(s, _dirichlet(s, tol, deriv=False, skip_one=True)[0])


def euler_product(s, tables: NumberTables, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """prod_{p <= limit} (1 - p^{-s})^{-1}; a validation oracle for the series."""
    s = as_complex(s)
    if s.real < config.series_cutoff_re:
        raise DomainError(f"Euler product needs Re(s) >= {config.series_cutoff_re}")
    p = tables.primes.astype(float)
    logs = np.log1p(-np.exp(-s * np.log(p)))
    return _realify(s, cmath.exp(-complex(np.sum(logs))))


# ---------------------------------------------------------------- continuation

_ROTATION_MARGIN = 4.0  # keep (pi/2 - phi)|t|/2 = 2, i.e. at most e^2 cancellation


def contour_angle(t: float) -> float:
    t = abs(t)
    if t * math.pi / 2 <= _ROTATION_MARGIN:
        return 0.0
    return math.pi / 2 - _ROTATION_MARGIN / t


@dataclass(frozen=True)
class _Contour:
    phi: float
    n_terms: int
    mesh1: tuple
    mesh2: tuple
    error: float


def _ray_integrands(s: complex, phi: float, n_terms: int):
    rot_p = cmath.exp(1j * phi)
    rot_m = rot_p.conjugate()
    a1 = s / 2 - 1
    a2 = -s / 2 - 0.5

    def f1(r):
        return _theta1_complex(rot_p * r, n_terms) * np.exp(a1 * np.log(r))

    def f2(r):
        return _theta1_complex(rot_m * r, n_terms) * np.exp(a2 * np.log(r))

    return f1, f2


def _upper_limit(cos_phi: float, power: float, tol: float) -> float:
    # |theta1| <= 1.01 e^{-pi r cos_phi} on the ray; tail ~ e^{-pi X c} X^power / (pi c)
    c = math.pi * cos_phi
    X = 2.0
    for _ in range(60):
        X_new = max(2.0, (math.log(1.01 / (tol * c)) + max(power, 0.0) * math.log(X)) / c)
        if abs(X_new - X) < 1e-3:
            break
        X = X_new
    return X_new


def _bracket(s: complex, phi: float, J1: complex, J2: complex, *, xi_scaled: bool):
    """Combine the ray integrals into Lambda(s) e^{-i phi s/2} (or xi's analogue)."""
    em = cmath.exp(-0.5j * phi)
    if xi_scaled:
        return 0.5 * s * (s - 1) * (J1 + em * J2) + 0.5 * s * em - 0.5 * (s - 1)
    return J1 + em * (J2 + 1 / (s - 1)) - 1 / s


def _build_contour(s: complex, config: ZetaEngineConfig, abs_tol: float) -> _Contour:
    phi = contour_angle(s.imag)
    cos_phi = math.cos(phi)
    n_terms = _theta1_terms(cos_phi, config.theta_truncation_tol)
    f1, f2 = _ray_integrands(s, phi, n_terms)
    tail_tol = 0.1 * abs_tol
    X1 = _upper_limit(cos_phi, s.real / 2 - 1, tail_tol)
    X2 = _upper_limit(cos_phi, -s.real / 2 - 0.5, tail_tol)
    # Start with panels no wider than about one oscillation of the integrand.
    freq = math.sin(phi) / 2 + abs(s.imag) / (4 * math.pi) + 0.25
    r1 = gauss_kronrod(f1, 1.0, X1, abs_tol=abs_tol, initial_panels=max(2, int((X1 - 1) * freq)))
    r2 = gauss_kronrod(f2, 1.0, X2, abs_tol=abs_tol, initial_panels=max(2, int((X2 - 1) * freq)))
    return _Contour(phi, n_terms, r1.panels, r2.panels, r1.error + r2.error)


def _integrals_on(s: complex, contour: _Contour):
    f1, f2 = _ray_integrands(s, contour.phi, contour.n_terms)
    return complex(fixed_panels(f1, contour.mesh1)), complex(fixed_panels(f2, contour.mesh2))


def _check_height(s: complex, config: ZetaEngineConfig):
    if abs(s.imag) > config.im_domain_limit:
        raise AccuracyError(f"|Im(s)| = {abs(s.imag):g} exceeds the height limit "
                            f"{config.im_domain_limit:g} of the theta continuation")


def _zeta_from_bracket(s: complex, phi: float, J1: complex, J2: complex) -> complex:
    # zeta = pi^{s/2} e^{i phi s/2} [ (J1 + e^{-i phi/2}(J2 + 1/(s-1))) / Gamma(s/2)
    #                                 - 1/(2 Gamma(s/2 + 1)) ]
    # so the s = 0 pole of 1/(s(s-1)) never meets a 0/0.
    pre = cmath.exp(0.5 * s * (math.log(math.pi) + 1j * phi))
    em = cmath.exp(-0.5j * phi)
    inner = (J1 + em * (J2 + 1 / (s - 1))) * rgamma(s / 2) - 0.5 * rgamma(s / 2 + 1)
    return pre * inner


def _upper(s: complex):
    """Map to the closed upper half plane; the caller conjugates back."""
    return (s.conjugate(), True) if s.imag < 0 else (s, False)


def _tol_scale(s: complex) -> float:
    # Absolute error in zeta is |pi^{s/2} e^{i phi s/2} / Gamma(s/2)| times the
    # bracket error; scale the quadrature tolerance so zeta meets it.
    phi = contour_angle(s.imag)
    lg = log_gamma(s / 2) if s.real > 0 or s.imag != 0 else None
    if lg is None:
        return 1.0
    g = (0.5 * s * (math.log(math.pi) + 1j * phi) - lg).real
    return min(1.0, math.exp(-g)) if g < 700 else 0.0


def zeta_continued_with_error(s, config: ZetaEngineConfig = DEFAULT_CONFIG):
    """zeta(s) by the theta integral; returns (value, quadrature error estimate)."""
    s = as_complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    _check_height(s, config)
    su, flip = _upper(s)
    abs_tol = max(config.quadrature_tol * _tol_scale(su), 1e-300)
    contour = _build_contour(su, config, abs_tol)
    J1, J2 = _integrals_on(su, contour)
    val = _zeta_from_bracket(su, contour.phi, J1, J2)
    scale = abs(cmath.exp(0.5 * su * (math.log(math.pi) + 1j * contour.phi)) * rgamma(su / 2))
    err = contour.error * scale
    if flip:
        val = val.conjugate()
    return _realify(s, val), err


def zeta_continued(s, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    return zeta_continued_with_error(s, config)[0]


def zeta(s, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """Riemann zeta function, dispatching between series and continuation."""
    s = as_complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.real >= config.series_cutoff_re:
        return _realify(s, _dirichlet(s, 1e-15, deriv=False)[0])
    return zeta_continued(s, config)


def completed_zeta(s, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s), without ever forming 1/Gamma."""
    s = as_complex(s)
    if s == 0 or s == 1:
        raise PoleError(f"Lambda has a pole at s={s.real:g}")
    _check_height(s, config)
    su, flip = _upper(s)
    contour = _build_contour(su, config, config.quadrature_tol)
    J1, J2 = _integrals_on(su, contour)
    val = cmath.exp(0.5j * contour.phi * su) * _bracket(su, contour.phi, J1, J2, xi_scaled=False)
    return _realify(s, val.conjugate() if flip else val)


def xi(s, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """xi(s) = pi^{-s/2} Gamma(s/2 + 1) (s - 1) zeta(s); entire, xi(s) = xi(1 - s)."""
    s = as_complex(s)
    _check_height(s, config)
    su, flip = _upper(s)
    contour = _build_contour(su, config, config.quadrature_tol)
    J1, J2 = _integrals_on(su, contour)
    val = cmath.exp(0.5j * contour.phi * su) * _bracket(su, contour.phi, J1, J2, xi_scaled=True)
    return _realify(s, val.conjugate() if flip else val)


def zeta_derivative(s, config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """zeta'(s): differentiated series for large Re(s), else Richardson-refined
    central differences of the continuation on a frozen quadrature mesh."""
    s = as_complex(s)
    h = config.derivative_step
    if abs(s - 1) < 10 * h:
        raise PoleError(f"s = {s} is within {10 * h:g} of the pole at s=1")
    if s.real >= config.series_cutoff_re:
        return _realify(s, _dirichlet(s, 1e-13, deriv=True)[0])
    _check_height(s, config)
    su, flip = _upper(s)
    abs_tol = max(config.quadrature_tol * _tol_scale(su) * 1e-2, 1e-300)
    contour = _build_contour(su, config, abs_tol)

    def f(z):
        J1, J2 = _integrals_on(z, contour)
        return _zeta_from_bracket(z, contour.phi, J1, J2)

    d1 = (f(su + h) - f(su - h)) / (2 * h)
    d2 = (f(su + h / 2) - f(su - h / 2)) / h
    val = (4 * d2 - d1) / 3
    return _realify(s, val.conjugate() if flip else val)


# ---------------------------------------------------------------- zeros

class ZerosSource(str, Enum):
    computed = "computed"
    loaded = "loaded"


@dataclass(frozen=True)
class ZerosTable:
    """Ordinates t_j of zeros 1/2 + i t_j on the critical line, ascending."""

    ordinates: tuple[float, ...]
    source: ZerosSource = ZerosSource.computed
    t_max: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.ordinates, self.ordinates[1:])):
            raise ValueError("zero ordinates must be strictly increasing")
        if any(t <= 0 for t in self.ordinates):
            raise ValueError("zero ordinates must be positive")

    def __len__(self):
        return len(self.ordinates)

    def __iter__(self):
        return iter(self.ordinates)

    def to_text(self) -> str:
        return "".join(f"{t:.10f}\n" for t in self.ordinates)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "ZerosTable":
        vals = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            vals.append(float(line))
        return cls(tuple(vals), ZerosSource.loaded)

    @classmethod
    def load(cls, path) -> "ZerosTable":
        return cls.from_text(Path(path).read_text())

    def validate(self, config: ZetaEngineConfig = DEFAULT_CONFIG, tol: float = 1e-6) -> bool:
        return all(abs(xi(complex(0.5, t), config)) < tol for t in self.ordinates)


def _xi_line(t: float, config: ZetaEngineConfig) -> float:
    return xi(complex(0.5, t), config).real


def find_zeros(t_min: float, t_max: float, step: float = 0.1,
               config: ZetaEngineConfig = DEFAULT_CONFIG, t_tol: float = 1e-8) -> ZerosTable:
    """Zeros of xi(1/2 + it) in [t_min, t_max] by sign-change scan and bisection.

    Two zeros closer together than ``step`` can be missed.
    """
    if not t_min < t_max:
        raise DomainError("need t_min < t_max")
    if t_min < 0 or t_max > config.im_domain_limit:
        raise AccuracyError(f"scan range must lie in [0, {config.im_domain_limit:g}]")
    n = int(math.floor((t_max - t_min) / step + 1e-9))
    grid = [t_min + i * step for i in range(n + 1)]
    if grid[-1] < t_max:
        grid.append(t_max)
    vals = [_xi_line(t, config) for t in grid]
    zeros = []
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if fa == 0.0:
            if a > 0:
                zeros.append(a)
            continue
        if fa * fb >= 0:
            continue
        while b - a > t_tol:
            m = 0.5 * (a + b)
            fm = _xi_line(m, config)
            if fm == 0.0:
                a = b = m
                break
            if fa * fm < 0:
                b = m
            else:
                a, fa = m, fm
        zeros.append(0.5 * (a + b))
    if vals[-1] == 0.0 and grid[-1] > 0:
        zeros.append(grid[-1])
    return ZerosTable(tuple(zeros), ZerosSource.computed, t_max=t_max)
