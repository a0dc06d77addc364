"""Complex log-gamma (Lanczos, g = 607/128) and a pole-safe reciprocal gamma."""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

_G = 607 / 128
_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _sinpi_real(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r == math.floor(r):
        return 0.0
    return math.sin(math.pi * r)


def _cospi_real(x: float) -> float:
    r = math.fmod(abs(x), 2.0)
    if r == 0.5 or r == 1.5:
        return 0.0
    return math.cos(math.pi * r)


def sinpi(z: complex) -> complex:
    """sin(pi z) with exact zeros at the integers."""
    x, y = z.real, z.imag
    py = math.pi * y
    return complex(_sinpi_real(x) * math.cosh(py), _cospi_real(x) * math.sinh(py))


def _lanczos(z: complex) -> complex:
    z = z - 1
    a = _COEF[0]
    for k in range(1, len(_COEF)):
        a += _COEF[k] / (z + k)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(a)


def log_gamma(s) -> complex:
    """Principal branch of log Gamma(s), continuous off the negative real axis."""
    z = complex(s)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at s = {z.real:g}")
    if z.real >= 0.5:
        return _lanczos(z)
    # Reflection; the 2*pi*i shift keeps the imaginary part on the principal branch.
    shift = math.copysign(2 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
    return complex(_LOG_PI, shift) - cmath.log(sinpi(z)) - _lanczos(1 - z)


def rgamma(s) -> complex:
    """1/Gamma(s); entire, exactly zero at 0, -1, -2, ..."""
    z = complex(s)
    if _is_pole(z):
        return 0j
    if z.real >= 0.5:
        return cmath.exp(-_lanczos(z))
    return sinpi(z) / math.pi * cmath.exp(_lanczos(1 - z))
