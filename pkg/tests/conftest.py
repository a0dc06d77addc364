import math

import numpy as np
import pytest

from zetareg.numtheory import cached_tables


@pytest.fixture(scope="session")
def tables():
    return cached_tables(10**7)


@pytest.fixture(scope="session")
def small_tables():
    return cached_tables(10**4)


def simple_sieve(n):
    """Plain bytearray sieve, independent of the package's numpy sieve."""
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return np.flatnonzero(np.frombuffer(bytes(flags), dtype=np.uint8))


def trial_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def trial_moebius(n):
    m, sign, d = n, 1, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            sign = -sign
        d += 1
    return -sign if m > 1 else sign


def neville(xs, ys, x0=0.0):
    """Polynomial extrapolation of (xs, ys) to x0."""
    p = list(ys)
    n = len(xs)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((x0 - xs[i + k]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + k])
    return p[0]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
