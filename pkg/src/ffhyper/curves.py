"""Frobenius traces of the Legendre and Clausen curve families.

Traces come from the quadratic-character sum over the defining cubic,
which costs O(q) per parameter; the naive point enumeration is kept as
an independent counting oracle for the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularParameter
from .field import PrimeField


@dataclass(frozen=True)
class TraceRecord:
    lam: int
    trace: int
    count: int

    def __post_init__(self):
        # count = q + 1 - trace, so this is the Hasse bound |a| <= 2*sqrt(q)
        if self.trace**2 > 4 * (self.count + self.trace - 1):
            raise ArithmeticError(f"trace {self.trace} violates the Hasse bound")


def legendre_trace(field: PrimeField, lam: int) -> TraceRecord:
    """Trace of y^2 = x(x-1)(x-lam); lam outside {0, 1}."""
    q = field.q
    lam %= q
    if lam in (0, 1):
        raise SingularParameter(f"lambda = {lam} is singular for the Legendre family")
    xs = np.arange(q, dtype=np.int64)
    f = (xs * (xs - 1) % q) * (xs - lam) % q
    tr = -int(field.legendre_table[f].sum())
    return TraceRecord(lam, tr, q + 1 - tr)


def clausen_trace(field: PrimeField, lam: int) -> TraceRecord:
    """Trace of y^2 = (x-1)(x^2+lam); lam outside {0, -1}."""
    q = field.q
    lam %= q
    if lam == 0 or lam == q - 1:
        raise SingularParameter(f"lambda = {lam} is singular for the Clausen family")
    xs = np.arange(q, dtype=np.int64)
    f = ((xs - 1) % q) * ((xs * xs + lam) % q) % q
    tr = -int(field.legendre_table[f].sum())
    return TraceRecord(lam, tr, q + 1 - tr)


def legendre_trace_table(field: PrimeField) -> np.ndarray:
    """Traces for every lambda at once; entries at lambda in {0,1} are unused."""
    q = field.q
    xs = np.arange(q, dtype=np.int64)
    base = xs * (xs - 1) % q  # x(x-1)
    cube = base * xs % q  # x^2(x-1)
    lams = np.arange(q, dtype=np.int64)
    vals = (cube[None, :] - lams[:, None] * base[None, :]) % q
    return -field.legendre_table[vals].sum(axis=1)


def clausen_trace_table(field: PrimeField) -> np.ndarray:
    """Traces for every lambda at once; entries at lambda in {0,-1} are unused."""
    q = field.q
    xs = np.arange(q, dtype=np.int64)
    lin = (xs - 1) % q
    cube = xs * xs % q * lin % q  # x^2(x-1)
    lams = np.arange(q, dtype=np.int64)
    vals = (cube[None, :] + lams[:, None] * lin[None, :]) % q
    return -field.legendre_table[vals].sum(axis=1)


def count_points_naive(field: PrimeField, family: str, lam: int) -> int:
    """#E(F_q) by enumerating all (x, y) pairs, plus the point at infinity.

    Test-only oracle; quadratic in q, use for q <= a few dozen.
    """
    q = field.q
    lam %= q
    count = 1  # infinity
    for x in range(q):
        if family == "legendre":
            rhs = x * (x - 1) * (x - lam) % q
        elif family == "clausen":
            rhs = (x - 1) * (x * x + lam) % q
        else:
            raise ValueError(f"unknown family {family!r}")
        for y in range(q):
            if y * y % q == rhs:
                count += 1
    return count


def hasse_bound(q: int) -> int:
    return math.isqrt(4 * q)
