"""Spectral zeta functions, zeta-regularized determinants and the exponential cutoff.

A spectrum is regularizable when its spectral zeta function continues to a
neighbourhood of s = 0. Power-law and finite spectra do; the primes do not,
because P(s) stops at Re(s) = 0. ``regularized_log_det`` therefore decides the
prime case from the domain of P, and attaches numerical evidence instead of
trying (and failing) to evaluate anything at s = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AccuracyError, ConditioningError, DomainError, SingularityError, VerdictError
from .numtheory import NumberTables
from .primezeta import (DEFAULT_EXCLUSION_RADIUS, NO_CONTINUATION_MSG, Window,
                        prime_zeta_continued, singularity_catalog)
from .riemann import DEFAULT_CONFIG, ZerosTable, ZetaEngineConfig, as_complex, zeta, \
    zeta_continued, zeta_derivative

SCHEMA_VERSION = 1


# ---------------------------------------------------------------- spectra

class OperatorSpectrum:
    """Eigenvalue sequence 0 < lambda_1 <= lambda_2 <= ... of a diagonal operator."""

    kind: str = ""

    @property
    def description(self) -> str:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind, "description": self.description}


@dataclass(frozen=True)
class PowerLaw(OperatorSpectrum):
    exponent: int = 1
    kind = "power_law"

    def __post_init__(self):
        if int(self.exponent) != self.exponent or self.exponent < 1:
            raise DomainError(f"power-law exponent must be a positive integer, got {self.exponent}")

    @property
    def description(self) -> str:
        return f"lambda_n = n^{self.exponent}"


@dataclass(frozen=True)
class Primes(OperatorSpectrum):
    kind = "primes"

    @property
    def description(self) -> str:
        return "lambda_n = n-th prime"


@dataclass(frozen=True)
class Explicit(OperatorSpectrum):
    eigenvalues: tuple[float, ...] = ()
    kind = "explicit"

    def __post_init__(self):
        ev = tuple(float(v) for v in self.eigenvalues)
        if not ev:
            raise DomainError("explicit spectrum is empty")
        if any(not (v > 0 and math.isfinite(v)) for v in ev):
            raise DomainError("eigenvalues must be positive (zero modes are omitted) and finite")
        if any(b < a for a, b in zip(ev, ev[1:])):
            raise DomainError("eigenvalues must be listed in ascending order")
        object.__setattr__(self, "eigenvalues", ev)

    @property
    def description(self) -> str:
        return f"{len(self.eigenvalues)} explicit eigenvalues"

    @classmethod
    def from_text(cls, text: str) -> "Explicit":
        vals = [float(line) for line in (ln.strip() for ln in text.splitlines())
                if line and not line.startswith("#")]
        return cls(tuple(vals))

    @classmethod
    def load(cls, path) -> "Explicit":
        return cls.from_text(Path(path).read_text())


def parse_spectrum(text: str) -> OperatorSpectrum:
    """``power:<p>``, ``primes`` or ``file:<path>``."""
    if text == "primes":
        return Primes()
    if text.startswith("power:"):
        try:
            p = int(text.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad power-law exponent in {text!r}") from None
        return PowerLaw(p)
    if text.startswith("file:"):
        return Explicit.load(text.split(":", 1)[1])
    raise DomainError(f"unknown spectrum {text!r}; expected power:<p>, primes or file:<path>")


# ---------------------------------------------------------------- verdicts

class RegularizationVerdict:
    status: str = ""

    def to_dict(self) -> dict:
        raise NotImplementedError


def _cdict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


@dataclass(frozen=True)
class Regularized(RegularizationVerdict):
    zeta_at_0: complex
    zeta_prime_at_0: complex
    ln_det: complex
    w0: complex
    mu: float
    status = "Regularized"

    def to_dict(self) -> dict:
        return {"status": self.status, "zeta_at_0": _cdict(self.zeta_at_0),
                "zeta_prime_at_0": _cdict(self.zeta_prime_at_0),
                "ln_det": _cdict(self.ln_det), "w0": _cdict(self.w0), "mu": self.mu}


@dataclass(frozen=True)
class NotRegularizable(RegularizationVerdict):
    reason: str
    diagnostics: tuple[str, ...] = ()
    singular_points: tuple[float, ...] = field(default=(), compare=False)
    status = "NotRegularizable"

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason,
                "diagnostics": list(self.diagnostics),
                "singular_points": list(self.singular_points)}


# ---------------------------------------------------------------- spectral zeta

def spectral_zeta(spectrum: OperatorSpectrum, s, tables: NumberTables | None = None,
                  config: ZetaEngineConfig = DEFAULT_CONFIG) -> complex:
    """sum_n lambda_n^{-s}, continued where a continuation exists."""
    s = as_complex(s)
    if isinstance(spectrum, PowerLaw):
        return zeta(spectrum.exponent * s, config)
    if isinstance(spectrum, Primes):
        if tables is None:
            raise DomainError("the prime spectrum needs number tables")
        return prime_zeta_continued(s, tables, config=config).value
    if isinstance(spectrum, Explicit):
        lam = np.asarray(spectrum.eigenvalues)
        return complex(np.sum(np.exp(-s * np.log(lam))))
    raise TypeError(f"unsupported spectrum {spectrum!r}")


def _prime_evidence(tables: NumberTables, k_max: int, config: ZetaEngineConfig,
                    exclusion_radius: float) -> NotRegularizable:
    k_max = min(k_max, tables.limit)
    cat = singularity_catalog(Window(0.0, 0.1, 0.0, 0.0), k_max, ZerosTable(()), tables)
    poles = sorted((e for e in cat.poles()), key=lambda e: -e.location.real)
    diag = [f"{len(poles)} singular points 1/k (square-free k <= {k_max}) lie in (0, 0.1]; "
            "they accumulate at s = 0 as k grows"]
    for e in poles[:12]:
        diag.append(f"singular point s = 1/{e.k} = {e.location.real:.6g} (pole image)")
    # Approach sequences toward singular points marching in to sigma = 0;
    # |P| grows as each exclusion disk is neared.
    for k in (2, 3, 5, 6, 7, 10):
        samples = []
        for d in (8.0, 1.5):
            sigma = 1 / k + d * exclusion_radius
            try:
                pz = prime_zeta_continued(sigma, tables, tol=1e-8, config=config,
                                          exclusion_radius=exclusion_radius)
                samples.append(f"|P({sigma:.6g})| = {abs(pz.value):.6g}")
            except (SingularityError, AccuracyError) as exc:
                samples.append(f"P({sigma:.6g}) not evaluable ({type(exc).__name__})")
        diag.append(f"approach to 1/{k}: " + ", ".join(samples))
    diag.append("Re(s) <= 0 is outside the domain of every evaluator of P(s)")
    return NotRegularizable(
        reason="prime zeta function admits no continuation to s = 0",
        diagnostics=tuple(diag),
        singular_points=tuple(e.location.real for e in poles))


def _zeta_data(spectrum: OperatorSpectrum, config: ZetaEngineConfig):
    """(zeta_D(0), zeta_D'(0)) for a regularizable spectrum."""
    if isinstance(spectrum, PowerLaw):
        # zeta_D(s) = zeta(p s)
        return complex(zeta_continued(0.0, config)), spectrum.exponent * zeta_derivative(0.0, config)
    if isinstance(spectrum, Explicit):
        lam = spectrum.eigenvalues
        return complex(len(lam)), complex(-math.fsum(math.log(v) for v in lam))
    raise TypeError(f"unsupported spectrum {spectrum!r}")


def regularized_log_det(spectrum: OperatorSpectrum, mu: float,
                        tables: NumberTables | None = None, k_max: int = 1000,
                        config: ZetaEngineConfig = DEFAULT_CONFIG,
                        exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS) -> RegularizationVerdict:
    """ln det D = -zeta_D'(0) and W[0] = (1/2) ln(mu^2) zeta_D(0) + (1/2) zeta_D'(0).

    Failure to regularize is returned as a ``NotRegularizable`` verdict, never raised.
    """
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if isinstance(spectrum, Primes):
        if tables is None:
            return NotRegularizable(reason="prime zeta function admits no continuation to s = 0",
                                    diagnostics=(NO_CONTINUATION_MSG,))
        return _prime_evidence(tables, k_max, config, exclusion_radius)
    z0, zp = _zeta_data(spectrum, config)
    w0 = 0.5 * math.log(mu * mu) * z0 + 0.5 * zp
    return Regularized(z0, zp, -zp, w0, float(mu))


def _richardson_derivative(f, h: float) -> complex:
    def central(step):
        return (f(step) - f(-step)) / (2 * step)
    d = [central(h / 2 ** i) for i in range(3)]
    r1 = [(4 * d[i + 1] - d[i]) / 3 for i in range(2)]
    return (16 * r1[1] - r1[0]) / 15


def scaling_check(spectrum: OperatorSpectrum, mu: float, tables: NumberTables | None = None,
                  config: ZetaEngineConfig = DEFAULT_CONFIG) -> float:
    """Residual of the mu-rescaling identity for ln det.

    Left side: (1/2) d/ds of the spectral zeta of the rescaled spectrum
    lambda_n / mu^2 at s = 0, differentiated numerically (power law) or
    summed directly (explicit). Right side: built from zeta_D(0), zeta_D'(0).
    """
    if isinstance(spectrum, Primes):
        raise VerdictError("the prime spectrum is not zeta regularizable; nothing to rescale")
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    z0, zp = _zeta_data(spectrum, config)
    rhs = 0.5 * math.log(mu * mu) * z0 + 0.5 * zp
    if isinstance(spectrum, PowerLaw):
        p = spectrum.exponent
        log_mu2 = math.log(mu * mu)

        def scaled(s):
            return complex(math.exp(s * log_mu2)) * zeta_continued(p * s, config)

        lhs = 0.5 * _richardson_derivative(scaled, 1e-3)
    else:
        mu2 = mu * mu
        lhs = 0.5 * -math.fsum(math.log(v / mu2) for v in spectrum.eigenvalues)
    return abs(lhs - rhs)


# ---------------------------------------------------------------- exponential cutoff

_CUTOFF_TAIL = 1e-12


def _power_cutoff_terms(p: int, eps: float) -> int:
    # sum_{n > N} n^p e^{-eps n^p} <= int_N^inf, valid once the summand decreases.
    N = max(2, math.ceil((1 / eps) ** (1 / p)) + 1)
    while True:
        U = float(N) ** p
        bound = math.exp(-eps * U) * (U / eps + 1 / eps ** 2) / (p * float(N) ** (p - 1))
        if bound < _CUTOFF_TAIL:
            return N
        N = int(N * 1.25) + 1


def _prime_cutoff_limit(eps: float) -> float:
    # sum_{p > L} p e^{-eps p} <= int_L^inf t e^{-eps t} dt
    L = 2.0 / eps
    while math.exp(-eps * L) * (L / eps + 1 / eps ** 2) >= _CUTOFF_TAIL:
        L *= 1.1
    return L


def cutoff_energy(spectrum: OperatorSpectrum, epsilon: float,
                  tables: NumberTables | None = None) -> float:
    """E(eps) = sum_n lambda_n e^{-eps lambda_n}, truncated at a 1e-12 tail bound."""
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if isinstance(spectrum, PowerLaw):
        N = _power_cutoff_terms(spectrum.exponent, epsilon)
        lam = np.arange(1, N + 1, dtype=float) ** spectrum.exponent
    elif isinstance(spectrum, Primes):
        L = _prime_cutoff_limit(epsilon)
        if tables is None or L > tables.limit:
            raise AccuracyError(f"eps={epsilon:g} needs primes up to {L:.3g}; "
                                f"sieve limit is {None if tables is None else tables.limit}")
        lam = tables.primes[tables.primes <= L].astype(float)
    elif isinstance(spectrum, Explicit):
        lam = np.asarray(spectrum.eigenvalues)
    else:
        raise TypeError(f"unsupported spectrum {spectrum!r}")
    return math.fsum(lam * np.exp(-epsilon * lam))


@dataclass(frozen=True)
class CutoffFit:
    epsilons: tuple[float, ...]
    energies: tuple[float, ...]
    basis: tuple[str, ...]
    coefficients: tuple[float, ...]
    finite_part: float
    stability: float
    residual: float

    def to_dict(self) -> dict:
        return {"epsilons": list(self.epsilons), "energies": list(self.energies),
                "basis": list(self.basis), "coefficients": list(self.coefficients),
                "finite_part": self.finite_part, "stability": self.stability,
                "residual": self.residual}


_POWER_BASIS = (("eps^-2", lambda e: e ** -2.0), ("eps^-1", lambda e: 1 / e),
                ("1", np.ones_like), ("eps", lambda e: e), ("eps^2", lambda e: e ** 2))
_LOG_BASIS = (("eps^-2/ln(1/eps)", lambda e: e ** -2.0 / np.log(1 / e)),
              ("ln(1/eps)", lambda e: np.log(1 / e)))


def _lsq(eps: np.ndarray, energy: np.ndarray, basis) -> tuple[np.ndarray, float]:
    A = np.column_stack([f(eps) for _, f in basis])
    norms = np.linalg.norm(A, axis=0)
    As = A / norms
    if np.linalg.cond(As) > 1e13:
        raise ConditioningError("cutoff fit matrix is numerically singular")
    coef, *_ = np.linalg.lstsq(As, energy, rcond=None)
    coef = coef / norms
    resid = float(np.sqrt(np.mean((A @ coef - energy) ** 2)))
    return coef, resid


def cutoff_fit(spectrum: OperatorSpectrum, eps_grid, with_log: bool = False,
               tables: NumberTables | None = None) -> CutoffFit:
    """Least-squares small-eps expansion of E(eps); the eps^0 coefficient is the finite part.

    ``stability`` is the spread of the finite part between fits on the lower
    and upper halves of the grid (each half padded to one more point than
    there are basis functions).
    """
    eps = np.sort(np.asarray(eps_grid, dtype=float))
    if len(eps) < 8:
        raise DomainError("cutoff fit needs at least 8 epsilon values")
    if eps[0] <= 0 or eps[-1] / eps[0] < 10 * (1 - 1e-12):
        raise DomainError("epsilon grid must be positive and span at least one decade")
    basis = _POWER_BASIS + (_LOG_BASIS if with_log else ())
    energy = np.array([cutoff_energy(spectrum, float(e), tables) for e in eps])
    coef, resid = _lsq(eps, energy, basis)
    i0 = 2
    n = len(eps)
    half = max(n // 2, len(basis) + 1)
    if half > n:
        raise ConditioningError("too few epsilon values for split-window stability")
    lo, _ = _lsq(eps[:half], energy[:half], basis)
    hi, _ = _lsq(eps[n - half:], energy[n - half:], basis)
    return CutoffFit(tuple(eps.tolist()), tuple(energy.tolist()),
                     tuple(name for name, _ in basis), tuple(coef.tolist()),
                     float(coef[i0]), float(abs(lo[i0] - hi[i0])), resid)
