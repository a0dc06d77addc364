"""Sieve-backed integer arithmetic: primes, Moebius values, prime counting, Li(x)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, RangeError
from .quadrature import gauss_kronrod

DEFAULT_SIEVE_CAP = 10**8


@dataclass(frozen=True, eq=False)
class NumberTables:
    """Primes and Moebius values for ``1..limit``.

    Attributes:
        limit: Largest integer covered.
        primes: int64 array of all primes <= limit, ascending.
        moebius: int8 array of length limit+1; ``moebius[0]`` is unused (0).
    """

    limit: int
    primes: np.ndarray
    moebius: np.ndarray

    def __post_init__(self):
        self.primes.setflags(write=False)
        self.moebius.setflags(write=False)

    def __repr__(self):
        return f"NumberTables(limit={self.limit}, primes={len(self.primes)})"


def _sieve_primes(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[i]:
            is_prime[i * i::2 * i] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sieve_moebius(limit: int, primes: np.ndarray) -> np.ndarray:
    # Only primes <= sqrt(limit) are sieved; whatever remains of n after
    # dividing out those is 1 or a single large prime.
    rad = np.ones(limit + 1, dtype=np.uint32 if limit < 2**32 else np.uint64)
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes[primes <= math.isqrt(limit)]:
        p = int(p)
        mu[p::p] *= -1
        rad[p::p] *= p
        mu[p * p::p * p] = 0
    n = np.arange(limit + 1, dtype=rad.dtype)
    big = (rad != n) & (mu != 0)
    big[0] = False
    mu[big] *= -1
    return mu


def build_tables(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> NumberTables:
    """Sieve primes and the Moebius function up to ``limit`` (inclusive)."""
    if not isinstance(limit, (int, np.integer)) or limit < 2 or limit > cap:
        raise RangeError(f"sieve limit must be an integer in [2, {cap}], got {limit!r}")
    limit = int(limit)
    primes = _sieve_primes(limit)
    return NumberTables(limit, primes, _sieve_moebius(limit, primes))


@lru_cache(maxsize=4)
def cached_tables(limit: int) -> NumberTables:
    """Shared immutable tables; safe to hand to any number of callers."""
    return build_tables(limit)


def _check_range(n, tables: NumberTables):
    if n < 1 or n > tables.limit:
        raise RangeError(f"{n} outside table range [1, {tables.limit}]")


def moebius(n: int, tables: NumberTables) -> int:
    _check_range(n, tables)
    return int(tables.moebius[n])


def is_square_free(n: int, tables: NumberTables) -> bool:
    return moebius(n, tables) != 0


def square_free_count(lo: int, hi: int, tables: NumberTables) -> int:
    """Number of square-free k with ``lo <= k <= hi``."""
    _check_range(hi, tables)
    lo = max(lo, 1)
    if lo > hi:
        return 0
    return int(np.count_nonzero(tables.moebius[lo:hi + 1]))


def prime_count(x: float, tables: NumberTables) -> int:
    """pi(x), the number of primes <= floor(x)."""
    if x > tables.limit:
        raise RangeError(f"x = {x} exceeds sieve limit {tables.limit}")
    if x < 2:
        return 0
    return int(np.searchsorted(tables.primes, math.floor(x), side="right"))


def log_integral(x: float, abs_tol: float = 1e-9) -> float:
    """Offset logarithmic integral, the integral of 1/ln t from 2 to x."""
    if not x > 2:
        raise DomainError(f"log_integral needs x > 2, got {x}")
    # Integrate e^u/u over u in [ln 2, ln x]; the integrand is smooth and monotone.
    lo, hi = math.log(2.0), math.log(x)
    res = gauss_kronrod(lambda u: np.exp(u) / u, lo, hi, abs_tol=abs_tol,
                        initial_panels=max(1, int(hi - lo)))
    return float(res.value)


@dataclass(frozen=True)
class PNTRow:
    x: float
    pi: int
    x_over_ln_x: float
    li: float

    @property
    def ratio(self) -> float:
        return self.pi / self.x_over_ln_x


def pnt_table(x_values, tables: NumberTables) -> list[PNTRow]:
    """Rows (x, pi(x), x/ln x, Li(x)) for each requested x."""
    rows = []
    for x in x_values:
        x = float(x)
        pi = prime_count(x, tables)
        rows.append(PNTRow(x, pi, x / math.log(x), log_integral(x)))
    return rows
