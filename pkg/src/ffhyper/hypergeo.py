"""Gaussian hypergeometric functions over F_q, by two independent routes.

The character backend evaluates the defining sum

    F(x) = q/(q-1) * sum_chi (A0 chi over chi)(A1 chi over B1 chi)...(An chi over Bn chi) chi(x)

for n >= 1, with the n = 0 base case 1F0(A|x) = eps(x) * conj(A)(1-x).
For the all-phi/eps parameter family an exact backend unrolls the
one-slot descent down to the base case and sums Legendre symbols in
arbitrary-precision integer arithmetic, which anchors the rational
reconstruction used by the exact identity checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import Character, quadratic, trivial
from .charsums import SumTables
from .errors import FieldMismatch, Infeasible, NotRational
from .field import PrimeField

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class HyperParams:
    """Ordered upper and lower characters of an (n+1)F_n instance."""

    uppers: tuple[Character, ...]
    lowers: tuple[Character, ...]

    def __post_init__(self):
        if len(self.uppers) != len(self.lowers) + 1 or not self.uppers:
            raise ValueError("need n+1 upper characters and n lower characters")
        f = self.uppers[0].field
        for c in (*self.uppers, *self.lowers):
            if c.field != f:
                raise FieldMismatch("hypergeometric characters over different fields")

    @property
    def field(self) -> PrimeField:
        return self.uppers[0].field

    @property
    def n(self) -> int:
        return len(self.lowers)

    def index_key(self) -> tuple:
        return (tuple(c.index for c in self.uppers), tuple(c.index for c in self.lowers))

    @classmethod
    def phi_eps(cls, field: PrimeField, n: int) -> "HyperParams":
        """The (n+1)F_n family with all uppers phi and all lowers eps."""
        phi = quadratic(field)
        eps = trivial(field)
        return cls((phi,) * (n + 1), (eps,) * n)

    def dropped_last(self) -> "HyperParams":
        return HyperParams(self.uppers[:-1], self.lowers[:-1])

    def with_last_upper(self, chi: Character) -> "HyperParams":
        return HyperParams((*self.uppers[:-1], self.uppers[-1] * chi), self.lowers)

    def extended(self, psi: Character) -> "HyperParams":
        """Append psi to both rows (the contiguous (n+2)F_{n+1} instance)."""
        return HyperParams((*self.uppers, psi), (*self.lowers, psi))


# -- exact values of the form num / q**npow -----------------------------------


@dataclass(frozen=True)
class QPowerRational:
    """Exact value num / q**npow; canonical when q does not divide num."""

    num: int
    npow: int

    @classmethod
    def make(cls, num: int, npow: int, q: int) -> "QPowerRational":
        if num == 0:
            return cls(0, 0)
        while npow > 0 and num % q == 0:
            num //= q
            npow -= 1
        return cls(num, npow)

    def value(self, q: int) -> float:
        return self.num / q**self.npow

    def scaled_int(self, npow: int, q: int) -> int:
        """num * q**(npow - self.npow); requires npow >= self.npow."""
        if npow < self.npow:
            raise ValueError("cannot scale down an exact value")
        return self.num * q ** (npow - self.npow)

    def fmt(self, q: int) -> str:
        if self.npow == 0:
            return str(self.num)
        return f"{self.num}/{q}^{self.npow}"


def reconstruct(v: complex, npow: int, q: int) -> QPowerRational:
    """Recover the integer m with v ~= m / q**npow, or fail loudly.

    Both the imaginary part and the distance to the nearest integer of
    v * q**npow must stay below 0.01 -- two orders of magnitude above
    observed floating residuals, far below the unit gap between integers.
    """
    if npow < 0:
        raise ValueError("npow must be nonnegative")
    scaled = complex(v) * q**npow
    if abs(scaled.imag) >= 0.01:
        raise NotRational(f"imaginary part too large for an exact value at scale q^{npow}", abs(scaled.imag))
    m = round(scaled.real)
    resid = abs(scaled.real - m)
    if resid >= 0.01:
        raise NotRational(f"not within rounding distance of an integer at scale q^{npow}", resid)
    return QPowerRational.make(m, npow, q)


# -- character-sum backend ---------------------------------------------------


def _coeff_vector(params: HyperParams, tables: SumTables) -> np.ndarray:
    """c[j] with F(x) = sum_j c[j] chi_j(x); cached per parameter tuple."""
    key = ("coeff", params.index_key())
    hit = tables.hyper_cache.get(key)
    if hit is not None:
        return hit
    f = params.field
    n = f.q - 1
    a0 = params.uppers[0].index
    c = np.roll(tables.binomial_line(a0), -a0).copy()
    for up, lo in zip(params.uppers[1:], params.lowers):
        line = tables.binomial_line(up.index - lo.index)
        c *= np.roll(line, -up.index)
    c *= f.q / n
    c.setflags(write=False)
    tables.hyper_cache[key] = c
    return c


def _one_f_zero(upper: Character, x: int) -> complex:
    q = upper.field.q
    x %= q
    if x == 0:
        return 0j
    return upper.inverse()((1 - x) % q)


def hyper_char(params: HyperParams, x: int, tables: SumTables) -> complex:
    """(n+1)F_n(x) by the defining character sum (closed form for n = 0)."""
    f = params.field
    x %= f.q
    if params.n == 0:
        return _one_f_zero(params.uppers[0], x)
    if x == 0:
        return 0j
    n = f.q - 1
    c = _coeff_vector(params, tables)
    m = int(f.dlog[x])
    return complex(c @ f.unit_roots[(m * np.arange(n)) % n])


def hyper_all_x(params: HyperParams, tables: SumTables) -> np.ndarray:
    """Values of (n+1)F_n at every x in F_q, as one array indexed by x.

    The coefficient vector is computed once; evaluating it at all
    nonzero arguments simultaneously is a length-(q-1) discrete Fourier
    transform over the exponent of x.
    """
    key = ("allx", params.index_key())
    hit = tables.hyper_cache.get(key)
    if hit is not None:
        return hit
    f = params.field
    q = f.q
    out = np.zeros(q, dtype=complex)
    if params.n == 0:
        inv = params.uppers[0].inverse()
        for x in range(1, q):
            out[x] = inv((1 - x) % q)
    else:
        c = _coeff_vector(params, tables)
        vals_by_dlog = np.fft.ifft(c) * (q - 1)
        out[f.exp] = vals_by_dlog
    out.setflags(write=False)
    tables.hyper_cache[key] = out
    return out


def hyper_inductive_step(params: HyperParams, x: int, tables: SumTables) -> complex:
    """One descent step: peel the last slot and sum over the lower level.

    Equals hyper_char(params, x) for arbitrary characters; this is the
    implementation-independent check of the descent relation itself.
    """
    if params.n < 1:
        raise ValueError("descent needs at least one lower character")
    f = params.field
    q = f.q
    x %= q
    if x == 0:
        return 0j
    an = params.uppers[-1].index
    bn = params.lowers[-1].index
    n = q - 1
    lower_vals = hyper_all_x(params.dropped_last(), tables)
    ys = np.arange(1, q)
    one_minus = (1 - ys) % q
    mask = one_minus != 0
    ys = ys[mask]
    one_minus = one_minus[mask]
    factor = f.unit_roots[(an * f.dlog[ys]) % n] * f.unit_roots[((bn - an) * f.dlog[one_minus]) % n]
    total = complex((lower_vals[(x * ys) % q] * factor).sum())
    sign = -1.0 if (an + bn) % 2 else 1.0
    return sign / q * total


# -- exact integer backend for the all-phi/eps family -------------------------


def _exact_numerators(field: PrimeField, n: int) -> list[int]:
    """M_n[x] with (n+1)F_n(x) = phi(-1)**n * M_n[x] / q**n, exact.

    Built by iterating the one-slot descent on integer Legendre values;
    M_0[x] = eps(x) * phi(1-x).
    """
    key = ("exact_phi", n)
    hit = field.cache.get(key)
    if hit is not None:
        return hit
    q = field.q
    leg = [int(v) for v in field.legendre_table]
    table = [0] + [leg[(1 - x) % q] for x in range(1, q)]
    level = 0
    # Reuse the deepest previously built level as the starting point.
    for m in range(n, 0, -1):
        prev = field.cache.get(("exact_phi", m))
        if prev is not None:
            table, level = prev, m
            break
    weights = [(y, leg[y] * leg[(1 - y) % q]) for y in range(2, q)]
    while level < n:
        nxt = [0] * q
        for x in range(1, q):
            acc = 0
            for y, w in weights:
                acc += w * table[(x * y) % q]
            nxt[x] = acc
        table = nxt
        level += 1
        field.cache[("exact_phi", level)] = table
    return table


def hyper_exact_phi(n: int, x: int, field: PrimeField, budget: int = DEFAULT_BUDGET) -> QPowerRational:
    """Exact (n+1)F_n(x) for all-phi uppers / all-eps lowers, n >= 1.

    Pure integer arithmetic throughout: Legendre symbols summed over the
    unrolled descent, normalized by phi(-1)**n / q**n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if field.q**n > budget:
        raise Infeasible(f"q^n = {field.q}^{n} exceeds the work budget {budget}")
    table = _exact_numerators(field, n)
    sign = field.phi_minus_one**n
    return QPowerRational.make(sign * table[x % field.q], n, field.q)


# -- finite-field Appell series ------------------------------------------------


def appell_f4(
    a: Character,
    b: Character,
    c: Character,
    cp: Character,
    x: int,
    y: int,
    tables: SumTables,
) -> complex:
    """F4*(A; B; C, C'; x, y): the double character sum of Gauss-sum ratios.

    The (q-1)^2 inner loop is multiplication-only: the four denominator
    Gauss sums and the three index-shifted numerator profiles are pulled
    out before the double sum.
    """
    f = tables.field
    q = f.q
    x %= q
    y %= q
    if x == 0 or y == 0:
        return 0j
    n = q - 1
    g = tables.gauss_vector
    ai, bi, ci, cpi = a.index, b.index, c.index, cp.index
    denom = g[ai] * g[bi] * g[(-ci) % n] * g[(-cpi) % n]
    ks = np.arange(n)
    pair = np.roll(g, -ai) * np.roll(g, -bi)  # pair[s] = g(A chi_s) g(B chi_s), s = u+v
    u_prof = g[(-ci - ks) % n] * g[(-ks) % n] * f.unit_roots[(ks * int(f.dlog[x])) % n]
    v_prof = g[(-cpi - ks) % n] * g[(-ks) % n] * f.unit_roots[(ks * int(f.dlog[y])) % n]
    idx = (ks[:, None] + ks[None, :]) % n
    total = complex((pair[idx] * u_prof[:, None] * v_prof[None, :]).sum())
    return total / (n * n * denom)
