import cmath
import random
import struct

import numpy as np
import pytest

from ffhyper import make_field
from ffhyper.characters import quadratic, trivial
from ffhyper.charsums import SumTables, cvalue_close
from ffhyper.field import primes_in_range


def naive_gauss(f, j):
    """Direct summation with cmath only; the independent oracle."""
    q = f.q
    total = 0j
    for x in range(1, q):
        chi = cmath.exp(2j * cmath.pi * j * int(f.dlog[x]) / (q - 1))
        total += chi * cmath.exp(2j * cmath.pi * x / q)
    return total


def naive_jacobi(f, a, b):
    q = f.q
    total = 0j
    for x in range(2, q):
        ca = cmath.exp(2j * cmath.pi * a * int(f.dlog[x]) / (q - 1))
        cb = cmath.exp(2j * cmath.pi * b * int(f.dlog[(1 - x) % q]) / (q - 1))
        total += ca * cb
    return total


def test_gauss_trivial_exact(tables_for):
    t = tables_for(7)
    assert t.gauss_vector[0] == -1.0 + 0j  # stored exactly, never summed


def test_gauss_quadratic_square(tables_for):
    for q in (5, 7, 13, 29):
        t = tables_for(q)
        f = t.field
        g_phi = t.gauss_sum(quadratic(f))
        assert cvalue_close(g_phi * g_phi, f.phi_minus_one * q, q)


@pytest.mark.parametrize("q", primes_in_range(3, 97))
def test_gauss_magnitude_vs_direct_oracle(q, tables_for):
    t = tables_for(q)
    f = t.field
    for j in range(1, q - 1):
        val = t.gauss_vector[j]
        assert abs(abs(val) ** 2 - q) <= 1e-8 * q
        assert abs(val - naive_gauss(f, j)) <= 1e-8 * q


def test_gauss_conjugation_rule(tables_for):
    for q in (7, 13, 31):
        t = tables_for(q)
        g = t.gauss_vector
        n = q - 1
        for j in range(1, n):
            lhs = g[(-j) % n]
            rhs = (-1) ** j * np.conj(g[j])
            assert abs(lhs - rhs) <= 1e-8 * q


def test_jacobi_trivial_pair(tables_for):
    for q in (5, 7, 13):
        t = tables_for(q)
        assert cvalue_close(t.jacobi_index(0, 0), q - 2, q)


def test_jacobi_symmetry_seeded_pairs(tables_for):
    rng = random.Random(42)
    for _ in range(50):
        q = rng.choice(primes_in_range(5, 97))
        t = tables_for(q)
        a, b = rng.randrange(q - 1), rng.randrange(q - 1)
        assert abs(t.jacobi_index(a, b) - t.jacobi_index(b, a)) <= 1e-9 * q


def test_jacobi_phi_phi_q5(tables_for):
    t = tables_for(5)
    f = t.field
    phi = quadratic(f)
    val = t.jacobi_sum(phi, phi)
    direct = sum(f.legendre(x) * f.legendre(1 - x) for x in range(2, 5))
    assert direct == -1
    assert cvalue_close(val, -1, 5)
    assert cvalue_close(val, -f.phi_minus_one, 5)


def test_jacobi_magnitude_classical(tables_for):
    for q in (7, 13, 29):
        t = tables_for(q)
        n = q - 1
        for a in range(1, n):
            for b in range(1, n):
                if (a + b) % n == 0:
                    continue
                assert abs(abs(t.jacobi_index(a, b)) ** 2 - q) <= 1e-7 * q


def test_jacobi_matches_direct_oracle(tables_for):
    t = tables_for(13)
    f = t.field
    for a in range(12):
        for b in range(12):
            assert abs(t.jacobi_index(a, b) - naive_jacobi(f, a, b)) <= 1e-9 * 13


def test_binomial_diagonal_closed_form(tables_for):
    for q in (5, 7, 11, 13):
        t = tables_for(q)
        assert cvalue_close(t.binomial_index(0, 0), (q - 2) / q, 1)  # (eps over eps)
        for j in range(1, q - 1):
            assert cvalue_close(t.binomial_index(j, j), -1 / q, 1)
            assert cvalue_close(t.binomial_index(j, 0), -1 / q, 1)  # (chi over eps)


def test_binomial_eps_over_phi(tables_for):
    for q in (5, 7, 11, 13):
        t = tables_for(q)
        f = t.field
        val = t.binomial(trivial(f), quadratic(f))
        assert cvalue_close(val, -f.phi_minus_one / q, 1)


def test_cache_transparency_bit_identical(tables_for):
    t = SumTables(make_field(11))
    first = t.jacobi_index(3, 5)
    again = t.jacobi_index(3, 5)
    assert first == again  # bit-identical, not merely close
    line = t.binomial_line(4)
    assert line is t.binomial_line(4)


def test_binomial_line_matches_scalar(tables_for):
    t = tables_for(11)
    n = 10
    for d in range(n):
        line = t.binomial_line(d)
        for m in range(n):
            assert line[m] == t.binomial_index(m, m - d)


def test_disk_cache_roundtrip(tmp_path):
    f = make_field(13)
    t1 = SumTables(f, cache_dir=tmp_path)
    g1 = t1.gauss_vector.copy()
    raw = (tmp_path / "gauss_13.bin").read_bytes()
    # layout: q as one little-endian u64, then q-1 (re, im) double pairs
    assert len(raw) == 8 + 16 * 12
    (q,) = struct.unpack_from("<Q", raw, 0)
    assert q == 13
    assert struct.unpack_from("<2d", raw, 8) == (-1.0, 0.0)
    t2 = SumTables(f, cache_dir=tmp_path)
    assert np.array_equal(t2.gauss_vector, g1)


def test_disk_cache_revalidated(tmp_path):
    f = make_field(13)
    SumTables(f, cache_dir=tmp_path).gauss_vector
    path = tmp_path / "gauss_13.bin"
    raw = bytearray(path.read_bytes())
    raw[8:16] = b"\x00" * 8  # corrupt gauss[eps]: no longer exactly -1
    path.write_bytes(bytes(raw))
    t = SumTables(f, cache_dir=tmp_path)
    assert t.gauss_vector[0] == -1.0 + 0j  # warm start rejected, recomputed


def test_disk_cache_wrong_length_ignored(tmp_path):
    f = make_field(13)
    (tmp_path / "gauss_13.bin").write_bytes(b"junk")
    t = SumTables(f, cache_dir=tmp_path)
    assert t.gauss_vector[0] == -1.0 + 0j
