import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from pappa.scalars import (
    CycloScalar,
    ParameterError,
    Unrepresentable,
    gauss_omega,
    gauss_sum,
    inv_sqrt_n,
    make_context,
    omega_sqrt,
    sqrt_n,
)


def _expected_zeta(N, sign):
    base = cmath.exp(1j * math.pi / N)
    return -base if N % 2 else sign * base


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (4, 1), (4, -1), (5, 1), (6, -1), (7, 1)])
def test_zeta_and_q_conventions(N, sign):
    ctx = make_context(N, sign)
    assert abs(ctx.to_complex(ctx.zeta) - _expected_zeta(N, sign)) < 1e-12
    assert abs(ctx.to_complex(ctx.q) - cmath.exp(2j * math.pi / N)) < 1e-12
    # zeta^{N^2} = 1 is what makes zeta^{k^2} well defined on Z_N
    assert ctx.zeta_pow(N * N) == ctx.one


@pytest.mark.parametrize("N", range(2, 13))
def test_sqrt_n_is_exact(N):
    ctx = make_context(N)
    r = sqrt_n(ctx)
    assert r * r == ctx.scalar(N)
    assert r * inv_sqrt_n(ctx) == ctx.one
    assert abs(ctx.to_complex(r) - math.sqrt(N)) < 1e-12


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (5, 1), (8, 1), (9, 1), (12, -1)])
def test_gauss_sum_matches_direct_sum(N, sign):
    ctx = make_context(N, sign)
    z = _expected_zeta(N, sign)
    direct = sum(z ** (j * j) for j in range(N))
    assert abs(ctx.to_complex(gauss_sum(ctx)) - direct) < 1e-9
    assert abs(ctx.to_complex(gauss_omega(ctx)) - direct / math.sqrt(N)) < 1e-9


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_omega_sqrt_squares_to_omega(N):
    ctx = make_context(N)
    h = omega_sqrt(ctx)
    assert h * h == gauss_omega(ctx)
    approx = omega_sqrt(ctx.with_mode("approx"))
    assert abs(ctx.to_complex(h) - approx) < 1e-12


def test_omega_sqrt_unrepresentable_in_small_field():
    # at L = 8 and N = 2, omega = exp(i pi/4) is z^1, so its root would need L = 16
    ctx = make_context(2, L=8)
    assert ctx.to_complex(gauss_omega(ctx)) == pytest.approx(cmath.exp(1j * math.pi / 4))
    with pytest.raises(Unrepresentable):
        omega_sqrt(ctx)


def test_field_arithmetic_roundtrip():
    L = 48
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = CycloScalar.from_exponents(L, rng.integers(-3, 4, size=L), den=int(rng.integers(1, 5)))
        if a.is_zero():
            continue
        one = CycloScalar.rational(L, 1)
        assert a * a.inverse() == one
        assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9
        assert (a + a) - a == a
        assert CycloScalar.from_json(a.to_json()) == a


def test_root_of_unity_identities():
    L = 32
    z = CycloScalar.root(L, 1)
    assert z ** L == CycloScalar.rational(L, 1)
    assert z ** (L // 2) == CycloScalar.rational(L, -1)
    assert CycloScalar.root(L, 5) * CycloScalar.root(L, -5) == CycloScalar.rational(L, 1)
    assert CycloScalar.rational(L, Fraction(3, 4)).to_complex() == pytest.approx(0.75)


@pytest.mark.parametrize("kwargs", [dict(N=1), dict(N=3, mode="fuzzy"), dict(N=2, zeta_sign=2), dict(N=3, L=9)])
def test_invalid_context(kwargs):
    with pytest.raises(ParameterError):
        make_context(**kwargs)


def test_odd_n_ignores_negative_sign():
    assert make_context(3, -1).zeta_sign == 1
