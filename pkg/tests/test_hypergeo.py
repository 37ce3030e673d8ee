import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffhyper import Infeasible, NotRational, make_field
from ffhyper.characters import Character, quadratic, trivial
from ffhyper.curves import count_points_naive
from ffhyper.field import primes_in_range
from ffhyper.hypergeo import (
    HyperParams,
    QPowerRational,
    appell_f4,
    hyper_all_x,
    hyper_char,
    hyper_exact_phi,
    hyper_inductive_step,
    reconstruct,
)


def rand_params(rng, f, n):
    return HyperParams(
        tuple(Character(f, rng.randrange(f.q - 1)) for _ in range(n + 1)),
        tuple(Character(f, rng.randrange(f.q - 1)) for _ in range(n)),
    )


def test_params_validation():
    f = make_field(7)
    phi = quadratic(f)
    with pytest.raises(ValueError):
        HyperParams((phi, phi), (trivial(f), trivial(f)))
    f11 = make_field(11)
    with pytest.raises(ValueError):
        HyperParams((phi, quadratic(f11)), (trivial(f),))


def test_2f1_at_one(tables_for):
    for q in (5, 7, 11, 13, 29):
        t = tables_for(q)
        f = t.field
        val = hyper_char(HyperParams.phi_eps(f, 1), 1, t)
        assert abs(val - (-f.phi_minus_one / q)) < 1e-10


def test_value_at_zero_is_zero(tables_for):
    t = tables_for(11)
    f = t.field
    rng = random.Random(5)
    for n in (1, 2, 3):
        assert hyper_char(rand_params(rng, f, n), 0, t) == 0


def test_2f1_against_point_count_q5(tables_for):
    # y^2 = x(x-1)(x-2) over F_5 has 8 points, so the trace is -2.
    t = tables_for(5)
    f = t.field
    count = count_points_naive(f, "legendre", 2)
    assert count == 8
    trace = 5 + 1 - count
    assert trace == -2
    val = hyper_char(HyperParams.phi_eps(f, 1), 2, t)
    assert abs(-5 * f.phi_minus_one * val - trace) < 1e-9


def test_exact_phi_base_cases():
    f = make_field(7)
    assert hyper_exact_phi(1, 1, f) == QPowerRational.make(-f.phi_minus_one, 1, 7)
    assert hyper_exact_phi(1, 0, f) == QPowerRational(0, 0)
    f13 = make_field(13)
    assert hyper_exact_phi(1, 1, f13) == QPowerRational.make(-f13.phi_minus_one, 1, 13)


def test_exact_phi_budget():
    f = make_field(13)
    with pytest.raises(Infeasible):
        hyper_exact_phi(5, 1, f, budget=1000)


@pytest.mark.parametrize("q", primes_in_range(3, 13))
def test_backend_agreement(q, tables_for):
    t = tables_for(q)
    f = t.field
    for n in (1, 2, 3):
        vals = hyper_all_x(HyperParams.phi_eps(f, n), t)
        for x in range(q):
            exact = hyper_exact_phi(n, x, f).value(q)
            assert abs(vals[x] - exact) < 1e-8


def test_inductive_step_random_characters(tables_for):
    t = tables_for(11)
    f = t.field
    rng = random.Random(20)
    for _ in range(20):
        n = rng.choice([1, 2, 3])
        params = rand_params(rng, f, n)
        x = rng.randrange(1, 11)
        direct = hyper_char(params, x, t)
        stepped = hyper_inductive_step(params, x, t)
        assert abs(direct - stepped) < 1e-8


def test_inductive_step_phi_eps_matches_exact(tables_for):
    t = tables_for(7)
    f = t.field
    for x in range(1, 7):
        stepped = hyper_inductive_step(HyperParams.phi_eps(f, 1), x, t)
        assert abs(stepped - hyper_exact_phi(1, x, f).value(7)) < 1e-8
    assert hyper_inductive_step(HyperParams.phi_eps(f, 1), 0, t) == 0


def test_appell_zero_arguments(tables_for):
    t = tables_for(7)
    f = t.field
    phi, eps = quadratic(f), trivial(f)
    assert appell_f4(phi, phi, eps, eps, 0, 3, t) == 0
    assert appell_f4(phi, phi, eps, eps, 3, 0, t) == 0


def test_appell_swap_symmetry(tables_for):
    rng = random.Random(31)
    for _ in range(20):
        q = rng.choice([5, 7, 11, 13])
        t = tables_for(q)
        f = t.field
        a, b, c, cp = (Character(f, rng.randrange(q - 1)) for _ in range(4))
        x, y = rng.randrange(1, q), rng.randrange(1, q)
        lhs = appell_f4(a, b, c, cp, x, y, t)
        rhs = appell_f4(a, b, cp, c, y, x, t)
        assert abs(lhs - rhs) < 1e-9 * q


def _product_relation_sides(t, a, b, c, z, w):
    """Product of two 2F1 values vs its Appell/Gauss-sum closed form."""
    f = t.field
    q = f.q
    n = q - 1
    g = t.gauss_vector
    eps = trivial(f)
    A, B, C = Character(f, a), Character(f, b), Character(f, c)
    ABbarC = Character(f, a + b - c)
    lhs = hyper_char(HyperParams((A, B), (C,)), z, t) * hyper_char(
        HyperParams((A, B), (ABbarC,)), w, t
    )
    f4 = appell_f4(A, B, C, ABbarC, z * (1 - w) % q, w * (1 - z) % q, t)
    coef = (
        A.at_minus_one()
        * g[b]
        * g[(-c) % n]
        * g[(c - a - b) % n]
        / (q * g[(-b) % n] * g[(b - c) % n] * g[(c - a) % n])
    )
    delta_arg = (1 - w - z) % q
    second = 0j
    if delta_arg == 0:
        second = (
            q
            * B.at_minus_one()
            * A.inverse()((1 - z) % q)
            * (B.inverse() * C)(w)
            * C.inverse()((1 - w) % q)
            / (g[a] * g[(-b) % n] * g[(b - c) % n] * g[(c - a) % n])
        )
    return lhs, coef * f4 + second


def test_appell_product_relation(tables_for):
    rng = random.Random(8)
    checked_delta = 0
    for _ in range(30):
        q = rng.choice([5, 7, 11, 13])
        t = tables_for(q)
        n = q - 1
        a = rng.randrange(1, n)
        b = rng.randrange(1, n)
        c = rng.randrange(n)
        if c in (a, b):
            continue
        z = rng.randrange(2, q)
        w = rng.choice([(1 - z) % q, rng.randrange(2, q)])  # hit the delta branch too
        if w in (0, 1):
            continue
        if (1 - w - z) % q == 0:
            checked_delta += 1
        lhs, rhs = _product_relation_sides(t, a, b, c, z, w)
        assert abs(lhs - rhs) < 1e-8, (q, a, b, c, z, w)
    assert checked_delta >= 1


def test_all_x_matches_pointwise(tables_for):
    t = tables_for(7)
    f = t.field
    params = HyperParams.phi_eps(f, 1)
    vals = hyper_all_x(params, t)
    for x in range(7):
        assert abs(vals[x] - hyper_char(params, x, t)) <= 1e-10 * 7
    assert vals[0] == 0
    assert abs(vals[1] - (-f.phi_minus_one / 7)) < 1e-10
    rng = random.Random(2)
    for n in (1, 2):
        params = rand_params(rng, f, n)
        vals = hyper_all_x(params, t)
        for x in range(7):
            assert abs(vals[x] - hyper_char(params, x, t)) <= 1e-10 * 7


def test_phi_eps_values_are_real_and_rational(tables_for):
    for q in (7, 13):
        t = tables_for(q)
        f = t.field
        for n in (1, 2, 3):
            vals = hyper_all_x(HyperParams.phi_eps(f, n), t)
            assert np.max(np.abs(vals.imag)) < 1e-9 * q
            for x in range(q):
                got = reconstruct(vals[x], n, q)
                assert got == hyper_exact_phi(n, x, f)


def test_reconstruct_examples():
    f = make_field(7)
    val = reconstruct(-f.phi_minus_one / 7, 1, 7)
    assert val == QPowerRational.make(-f.phi_minus_one, 1, 7)
    with pytest.raises(NotRational):
        reconstruct(0.5 + 0j, 0, 7)
    with pytest.raises(NotRational):
        reconstruct(1 / 7 + 0.3j, 1, 7)


def test_reconstruct_canonicalizes():
    # 7/7^2 canonicalizes to 1/7^1
    v = reconstruct(7 / 49, 2, 7)
    assert v == QPowerRational(1, 1)
    assert reconstruct(0j, 3, 7) == QPowerRational(0, 0)


@given(
    num=st.integers(min_value=-10**6, max_value=10**6),
    npow=st.integers(min_value=0, max_value=4),
)
def test_reconstruct_roundtrip_property(num, npow):
    q = 13
    got = reconstruct(num / q**npow, npow, q)
    assert got == QPowerRational.make(num, npow, q)


def test_exact_scaled_int():
    v = QPowerRational.make(3, 1, 7)
    assert v.scaled_int(3, 7) == 3 * 49
    with pytest.raises(ValueError):
        v.scaled_int(0, 7)
