"""Prime zeta function P(s) = sum_p p^{-s} and its continuation into 0 < Re(s) <= 1.

The continuation is the Moebius-inverted logarithm of zeta,

    P(s) = sum_k mu(k)/k * ln zeta(k s),

which is singular wherever some zeta(k s) has a pole (s = 1/k) or a zero
(s = rho/k) with k square-free. Both families pile up on Re(s) = 0, so no
evaluator here accepts Re(s) <= 0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError, RangeError, SingularityError
from .numtheory import NumberTables
from .riemann import (DEFAULT_CONFIG, ZerosTable, ZetaEngineConfig, as_complex, find_zeros, zeta,
                   zeta_derivative, zeta_dirichlet, zeta_minus_one)

NO_CONTINUATION_MSG = (
    "P(s) has no continuation to Re(s) <= 0: the singular points 1/k and rho/k "
    "accumulate on Re(s) = 0, so a free field with the prime numbers as its spectrum "
    "has no zeta-regularized determinant"
)
BRANCH_MARGIN = 0.1
DEFAULT_EXCLUSION_RADIUS = 1e-3


@dataclass(frozen=True)
class PrimeZetaValue:
    value: complex
    k_used: int
    error_estimate: float
    branch_flags: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "k_used": self.k_used,
            "error_estimate": self.error_estimate,
            "branch_flags": list(self.branch_flags),
        }


@dataclass(frozen=True)
class Window:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise DomainError(f"empty window {self}")

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [float(v) for v in text.split(",")]
        if len(parts) != 4:
            raise DomainError("window must be re_min,re_max,im_min,im_max")
        return cls(*parts)

    def contains(self, z: complex) -> bool:
        return (self.re_min <= z.real <= self.re_max
                and self.im_min <= z.imag <= self.im_max)

    def to_dict(self) -> dict:
        return {"re_min": self.re_min, "re_max": self.re_max,
                "im_min": self.im_min, "im_max": self.im_max}


class SingularityKind(str, Enum):
    pole_image = "pole_image"
    zero_image = "zero_image"


@dataclass(frozen=True)
class Singularity:
    location: complex
    kind: SingularityKind
    k: int
    zero_index: int | None = None

    def to_dict(self) -> dict:
        return {"location": {"re": self.location.real, "im": self.location.imag},
                "kind": self.kind.value, "k": self.k, "zero_index": self.zero_index}


@dataclass(frozen=True)
class SingularityCatalog:
    entries: tuple[Singularity, ...]
    window: Window
    k_max: int
    zeros_used: int

    def poles(self) -> list[Singularity]:
        return [e for e in self.entries if e.kind is SingularityKind.pole_image]

    def to_dict(self) -> dict:
        return {"window": self.window.to_dict(), "k_max": self.k_max,
                "zeros_used": self.zeros_used,
                "entries": [e.to_dict() for e in self.entries]}


# ---------------------------------------------------------------- direct series

def tail_bound(sigma: float, limit: int) -> float:
    """PNT-based size of sum_{p > limit} p^{-sigma}."""
    return limit ** (1 - sigma) / ((sigma - 1) * math.log(limit))


def prime_zeta_direct_with_bound(s, tables: NumberTables, delta: float = 0.1):
    """Partial sum over sieved primes and the bound on the dropped tail."""
    s = as_complex(s)
    if s.real < 1 + delta:
        raise DomainError(f"direct prime sum needs Re(s) >= {1 + delta:g}, got {s.real:g}")
    logp = np.log(tables.primes.astype(float))
    terms = np.exp(-s * logp)
    val = complex(np.sum(terms))
    if s.imag == 0:
        val = complex(val.real, 0.0)
    return val, tail_bound(s.real, tables.limit)


def prime_zeta_direct(s, tables: NumberTables, tol: float = 1e-8, delta: float = 0.1) -> complex:
    """sum_{p <= limit} p^{-s}; refuses when the tail bound exceeds ``tol``."""
    val, bound = prime_zeta_direct_with_bound(s, tables, delta)
    if bound > tol:
        raise AccuracyError(f"prime tail bound {bound:.3g} exceeds tol={tol:g} at "
                            f"sieve limit {tables.limit}; raise the limit or use the continuation")
    return val


def prime_zeta_direct_derivative(s, tables: NumberTables, delta: float = 0.1):
    """-sum_p ln p p^{-s} and its tail bound."""
    s = as_complex(s)
    if s.real < 1 + delta:
        raise DomainError(f"direct prime sum needs Re(s) >= {1 + delta:g}")
    logp = np.log(tables.primes.astype(float))
    val = -complex(np.sum(logp * np.exp(-s * logp)))
    L = tables.limit
    bound = L ** (1 - s.real) * (1 / (s.real - 1) + 1 / math.log(L))
    return val, bound


# ---------------------------------------------------------------- continuation

def truncation_order(sigma: float, tol: float) -> int:
    return math.ceil(math.log(1 / tol) / (sigma * math.log(2))) + 8


def truncation_error(sigma: float, K: int) -> float:
    return 2 ** (-(K + 1) * sigma + 1) / ((K + 1) * (1 - 2 ** (-sigma)))


def _log1p(w: complex) -> complex:
    if abs(w) < 1e-5:
        return w * (1 - w * (0.5 - w * (1 / 3 - 0.25 * w)))
    return cmath.log(1 + w)


@lru_cache(maxsize=8)
def _default_zeros(height: float, config: ZetaEngineConfig) -> ZerosTable:
    return find_zeros(0.0, height, config=config)


def zeros_up_to(height: float, config: ZetaEngineConfig = DEFAULT_CONFIG,
                zeros: ZerosTable | None = None) -> ZerosTable:
    """Zero ordinates up to ``height``; computes (and caches) them if none are given."""
    if zeros is not None:
        return zeros
    if height < 14:
        return ZerosTable(())
    h = min(config.im_domain_limit, 10 * math.ceil(height / 10))
    return _default_zeros(float(h), config)


def _check_domain(s: complex, tables: NumberTables, K: int, config: ZetaEngineConfig):
    if s.real <= 0:
        raise DomainError(NO_CONTINUATION_MSG)
    if K > tables.limit:
        raise RangeError(f"truncation order {K} exceeds Moebius table limit {tables.limit}")
    # Only terms with Re(ks) below the series cutoff need the height-limited continuation.
    k_strip = math.ceil(config.series_cutoff_re / s.real) - 1
    if k_strip >= 1 and k_strip * abs(s.imag) > config.im_domain_limit:
        raise AccuracyError(
            f"term k={k_strip} needs zeta at height {k_strip * abs(s.imag):.3g}, beyond "
            f"the continuation limit {config.im_domain_limit:g}")


def _check_singular(s: complex, tables: NumberTables, K: int, radius: float,
                    zeros: ZerosTable | None, config: ZetaEngineConfig):
    mu = tables.moebius
    # pole images 1/k
    if abs(s.imag) < radius:
        k_lo = max(1, math.floor(1 / (s.real + radius)))
        k_hi = math.ceil(1 / (s.real - radius)) if s.real > radius else K
        for k in range(k_lo, min(k_hi, K) + 1):
            if mu[k] != 0 and abs(s - 1 / k) < radius:
                raise SingularityError(
                    f"s = {s} is within {radius:g} of the singular point 1/{k}",
                    location=complex(1 / k), kind=SingularityKind.pole_image, k=k)
    # zero images rho/k; only strip terms (0 < Re(ks) < 1) can hit a nontrivial zero
    k_hi = min(K, math.ceil(1 / s.real))
    height = k_hi * abs(s.imag)
    if height < 14:
        return
    table = zeros_up_to(height, config, zeros)
    sign = 1 if s.imag >= 0 else -1
    for k in range(1, k_hi + 1):
        if mu[k] == 0:
            continue
        for j, t in enumerate(table.ordinates):
            rho_k = complex(0.5, sign * t) / k
            if abs(s - rho_k) < radius:
                raise SingularityError(
                    f"s = {s} is within {radius:g} of the singular point rho_{j + 1}/{k} = {rho_k}",
                    location=rho_k, kind=SingularityKind.zero_image, k=k)


def _log_zeta_terms(s: complex, K: int, tables: NumberTables, config: ZetaEngineConfig):
    """Yield (k, mu(k), ln zeta(ks), zeta(ks) or None) for square-free k <= K."""
    mu = tables.moebius
    for k in range(1, K + 1):
        m = int(mu[k])
        if m == 0:
            continue
        z = k * s
        if z.real >= config.series_cutoff_re:
            yield k, m, _log1p(zeta_minus_one(z, config=config)), None
        else:
            zk = zeta(z, config)
            if zk == 0:
                raise SingularityError(f"zeta({z}) vanishes", location=s, k=k)
            yield k, m, cmath.log(zk), zk


def prime_zeta_continued(s, tables: NumberTables, tol: float = 1e-10,
                         exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
                         zeros: ZerosTable | None = None,
                         config: ZetaEngineConfig = DEFAULT_CONFIG) -> PrimeZetaValue:
    """P(s) for Re(s) > 0 by Moebius inversion of ln zeta(ks).

    Logs are principal-branch; k is recorded in ``branch_flags`` when
    |arg zeta(ks)| is within 0.1 of pi (ks real in (0, 1) always is).
    """
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError(NO_CONTINUATION_MSG)
    K = truncation_order(s.real, tol)
    _check_domain(s, tables, K, config)
    _check_singular(s, tables, K, exclusion_radius, zeros, config)
    total = 0j
    flags = []
    for k, m, log_z, zk in _log_zeta_terms(s, K, tables, config):
        total += m / k * log_z
        if zk is not None and abs(cmath.phase(zk)) > math.pi - BRANCH_MARGIN:
            flags.append(k)
    if s.imag == 0:
        total = complex(total.real, total.imag if flags else 0.0)
    return PrimeZetaValue(total, K, truncation_error(s.real, K), tuple(flags))


def prime_zeta_derivative(s, tables: NumberTables, tol: float = 1e-10,
                          exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
                          zeros: ZerosTable | None = None,
                          config: ZetaEngineConfig = DEFAULT_CONFIG) -> PrimeZetaValue:
    """P'(s) = sum_k mu(k) zeta'(ks)/zeta(ks), same truncation policy as P."""
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError(NO_CONTINUATION_MSG)
    K = truncation_order(s.real, tol)
    _check_domain(s, tables, K, config)
    _check_singular(s, tables, K, exclusion_radius, zeros, config)
    mu = tables.moebius
    total = 0j
    flags = []
    for k in range(1, K + 1):
        m = int(mu[k])
        if m == 0:
            continue
        z = k * s
        zk = zeta(z, config)
        if zk == 0:
            raise SingularityError(f"zeta({z}) vanishes", location=s, k=k)
        total += m * zeta_derivative(z, config) / zk
        if abs(cmath.phase(zk)) > math.pi - BRANCH_MARGIN:
            flags.append(k)
    if s.imag == 0:
        total = complex(total.real, 0.0)
    err = math.log(2) * truncation_error(s.real, K) * (K + 1)
    return PrimeZetaValue(total, K, err, tuple(flags))


def ln_zeta_expansion_check(s, r_max: int, tables: NumberTables, tol: float = 1e-12,
                            config: ZetaEngineConfig = DEFAULT_CONFIG) -> float:
    """|ln zeta(s) - sum_{r <= r_max} P(rs)/r|.

    Each P(rs) comes from the sieve sum when its tail bound is below
    ``tol / r_max``; otherwise (small r, where the sieve cannot reach the
    tolerance) from the Moebius continuation.
    """
    s = as_complex(s)
    if s.real < 1.1:
        raise DomainError(f"expansion check needs Re(s) >= 1.1, got {s.real:g}")
    lhs = cmath.log(zeta(s, config)) if s.real < config.series_cutoff_re else \
        _log1p(zeta_minus_one(s, config=config))
    total = 0j
    for r in range(1, r_max + 1):
        z = r * s
        val, bound = prime_zeta_direct_with_bound(z, tables)
        if bound > tol / r_max:
            val = prime_zeta_continued(z, tables, tol=tol / r_max, config=config).value
        total += val / r
    return abs(lhs - total)


# ---------------------------------------------------------------- singular set

def singularity_catalog(window: Window, k_max: int, zeros: ZerosTable,
                        tables: NumberTables) -> SingularityCatalog:
    """All pole images 1/k and zero images (1/2 +- i t_j)/k, mu(k) != 0, inside ``window``."""
    if window.re_min < 0:
        raise DomainError("singular points of P(s) live in Re(s) > 0; window.re_min must be >= 0")
    if k_max < 1 or k_max > tables.limit:
        raise RangeError(f"k_max must be in [1, {tables.limit}]")
    ks = np.flatnonzero(tables.moebius[:k_max + 1])
    ks = ks[ks >= 1]
    entries = []
    if window.im_min <= 0 <= window.im_max:
        for k in ks:
            x = 1.0 / k
            if window.re_min <= x <= window.re_max and x > 0:
                entries.append(Singularity(complex(x, 0.0), SingularityKind.pole_image, int(k)))
    used = 0
    for j, t in enumerate(zeros.ordinates):
        hit = False
        for sign in (1, -1):
            im = sign * t / ks
            re = 0.5 / ks
            inside = ((re >= window.re_min) & (re <= window.re_max)
                      & (im >= window.im_min) & (im <= window.im_max))
            for k in ks[inside]:
                k = int(k)
                entries.append(Singularity(complex(0.5, sign * t) / k,
                                           SingularityKind.zero_image, k, j + 1))
                hit = True
        used += hit
    entries.sort(key=lambda e: (e.location.real, e.location.imag))
    return SingularityCatalog(tuple(entries), window, int(k_max), used)


# ---------------------------------------------------------------- scan

class ScanFlag(str, Enum):
    ok = "ok"
    branch = "branch"
    singular = "singular"
    unreachable = "unreachable"


@dataclass(frozen=True)
class ScanRow:
    sigma: float
    tau: float
    value: complex | None
    flag: ScanFlag


def strip_scan(window: Window, nx: int, ny: int, tables: NumberTables,
               zeros: ZerosTable | None = None, tol: float = 1e-10,
               exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
               config: ZetaEngineConfig = DEFAULT_CONFIG) -> list[ScanRow]:
    """Evaluate P on an nx-by-ny grid; rows ordered tau-major, sigma-minor."""
    if window.re_min <= 0:
        raise DomainError(NO_CONTINUATION_MSG)
    if nx < 1 or ny < 1:
        raise DomainError("grid needs nx, ny >= 1")
    sigmas = np.linspace(window.re_min, window.re_max, nx) if nx > 1 else np.array([window.re_min])
    taus = np.linspace(window.im_min, window.im_max, ny) if ny > 1 else np.array([window.im_min])
    if zeros is None:
        height = max(abs(window.im_min), abs(window.im_max)) / window.re_min
        zeros = zeros_up_to(min(height, config.im_domain_limit), config)
    rows = []
    for tau in taus:
        for sigma in sigmas:
            s = complex(float(sigma), float(tau))
            try:
                pz = prime_zeta_continued(s, tables, tol=tol, exclusion_radius=exclusion_radius,
                                          zeros=zeros, config=config)
            except SingularityError:
                rows.append(ScanRow(s.real, s.imag, None, ScanFlag.singular))
                continue
            except AccuracyError:
                rows.append(ScanRow(s.real, s.imag, None, ScanFlag.unreachable))
                continue
            flag = ScanFlag.branch if pz.branch_flags else ScanFlag.ok
            rows.append(ScanRow(s.real, s.imag, pz.value, flag))
    return rows
