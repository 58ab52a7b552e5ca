import numpy as np
import pytest

from oracles import gauss_omega, jw_generators, zeta
from pappa import braid
from pappa.scalars import ParameterError, make_context, omega_sqrt


def _numpy_braids(N, sign, m=2, p=1):
    """``b+`` and ``b-`` on strings ``p, p+1`` of ``m``, from Kronecker generators."""
    z = zeta(N, sign)
    w = gauss_omega(N, sign)
    half = np.exp(0.5j * np.angle(w))
    g = jw_generators(N, m)
    a, b = g[p - 1], g[p]
    plus = np.zeros((N ** m,) * 2, dtype=complex)
    minus = np.zeros_like(plus)
    for i in range(N):
        u = z ** (i * i) * np.linalg.matrix_power(a.conj().T, i) @ np.linalg.matrix_power(b, i)
        plus += z ** (i * i) * u
        minus += z ** (-i * i) * u
    return plus / (half * np.sqrt(N)), minus * half / np.sqrt(N)


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (4, 1), (5, 1)])
def test_braid_matrices_match_oracle(N, sign):
    ctx = make_context(N, sign, "approx")
    plus, minus = braid.braid_matrices(ctx)
    P, M = _numpy_braids(N, sign)
    np.testing.assert_allclose(plus.to_complex(), P, atol=1e-10)
    np.testing.assert_allclose(minus.to_complex(), M, atol=1e-10)
    np.testing.assert_allclose(P @ M, np.eye(N * N), atol=1e-10)


@pytest.mark.parametrize("N,sign,mode", [(2, 1, "exact"), (2, -1, "exact"), (3, 1, "exact"),
                                         (4, 1, "approx"), (5, 1, "approx")])
def test_braid_axioms(N, sign, mode):
    recs = braid.verify_braid_axioms(make_context(N, sign, mode))
    assert recs and [r["identity"] for r in recs if not r["pass"]] == []


@pytest.mark.parametrize("N,sign", [(2, 1), (3, 1), (4, -1)])
def test_hopf_link_against_direct_trace(N, sign):
    ctx = make_context(N, sign)
    res = braid.braid_closure_invariant(ctx, [1, 1], 2)
    P, _ = _numpy_braids(N, sign)
    direct = np.sqrt(N) * np.trace(P @ P) / N ** 2
    assert ctx.to_complex(res["value"]) == pytest.approx(direct, abs=1e-10)
    assert res["writhe"] == 2


@pytest.mark.parametrize("N", [2, 3])
def test_closure_invariant_under_stabilization(N):
    ctx = make_context(N)
    base = braid.braid_closure_invariant(ctx, [1, 1, 1], 2)["invariant"]
    for word in ([1, 1, 1, 2], [1, 1, 1, -2]):
        assert braid.braid_closure_invariant(ctx, word, 3)["invariant"] == base
    # conjugation in the braid group
    assert braid.braid_closure_invariant(ctx, [2, 1, -2], 3)["invariant"] == \
        braid.braid_closure_invariant(ctx, [1], 3)["invariant"]


def test_unknot_closures_agree():
    ctx = make_context(3)
    one = braid.braid_closure_invariant(ctx, [], 1)["invariant"]
    assert braid.braid_closure_invariant(ctx, [1], 2)["invariant"] == one
    assert braid.braid_closure_invariant(ctx, [-1], 2)["invariant"] == one


def test_reidemeister_one_scalar_is_omega_half():
    ctx = make_context(3)
    res = braid.braid_closure_invariant(ctx, [1], 2)
    assert res["value"] * omega_sqrt(ctx) == braid.braid_closure_invariant(ctx, [], 1)["value"]


@pytest.mark.parametrize("word,strands", [([0], 2), ([2], 2), ([1], 0)])
def test_invalid_words(word, strands):
    with pytest.raises(ParameterError):
        braid.braid_closure_invariant(make_context(2), word, strands)
