import numpy as np
import pytest

from oracles import gauss_omega, shift_clock, sl2_order_formula, zeta
from pappa import pauli
from pappa.scalars import ParameterError, make_context

SIGMA = {
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


def test_n2_standard_sigma_matrices():
    ctx = make_context(2, 1)
    for name, M in zip("XYZ", pauli.pauli_xyz(ctx, "q")):
        np.testing.assert_allclose(M.to_complex(), SIGMA[name], atol=1e-12)


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (4, 1), (5, 1)])
@pytest.mark.parametrize("version", pauli.VERSIONS)
def test_pauli_matrices_against_oracle(N, sign, version):
    ctx = make_context(N, sign, "approx")
    X0, Z0 = shift_clock(N)
    z = zeta(N, sign)
    s = 1 if version == "q" else -1
    k = np.arange(N)
    Y0 = np.zeros((N, N), dtype=complex)
    Y0[(k - s) % N, k] = z ** (s - 2 * k)
    X, Y, Z = pauli.pauli_xyz(ctx, version)
    np.testing.assert_allclose(X.to_complex(), X0 if s == 1 else X0.T, atol=1e-12)
    np.testing.assert_allclose(Y.to_complex(), Y0, atol=1e-12)
    np.testing.assert_allclose(Z.to_complex(), Z0, atol=1e-12)


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (4, -1), (5, 1)])
@pytest.mark.parametrize("version", pauli.VERSIONS)
def test_pauli_and_quaternion_relations(N, sign, version):
    ctx = make_context(N, sign)
    recs = pauli.pauli_relations(ctx, version) + pauli.quaternion_relations(ctx, version)
    assert [r["identity"] for r in recs if not r["pass"]] == []


@pytest.mark.parametrize("tag", pauli.MODEL_TAGS)
def test_quadratic_models_n2(tag):
    recs = pauli.quadratic_relations(make_context(2), tag)
    assert [r["identity"] for r in recs if not r["pass"]] == []


def test_quadratic_model_tag_aliases():
    ctx = make_context(2)
    a = pauli.quadratic_model(ctx, "q^-1,4")[0]
    b = pauli.quadratic_model(ctx, "q_inv,4")[0]
    assert a.equals(b)
    with pytest.raises(ParameterError):
        pauli.quadratic_model(ctx, "q,2")


def test_unknown_version():
    with pytest.raises(ParameterError):
        pauli.pauli_xyz(make_context(3), "p")


@pytest.mark.parametrize("N", range(2, 9))
def test_sl2_order_matches_formula(N):
    assert pauli.sl2_order(N) == sl2_order_formula(N)


@pytest.mark.parametrize("N,expected", [(2, 24), (3, 216)])
def test_clifford_enumeration(N, expected):
    res = pauli.clifford_enumerate(make_context(N))
    assert res["closed"]
    assert res["order"] == expected == N ** 2 * pauli.sl2_order(N)


def test_clifford_enumeration_cap():
    res = pauli.clifford_enumerate(make_context(3), cap=50)
    assert not res["closed"] and res["order"] == 50


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1), (4, 1), (5, 1)])
def test_fourier_gaussian_against_oracle(N, sign):
    ctx = make_context(N, sign, "approx")
    F, G = pauli.fourier_gaussian(ctx)
    k = np.arange(N)
    F0 = np.exp(2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)
    G0 = np.diag(zeta(N, sign) ** (k * k))
    np.testing.assert_allclose(F.to_complex(), F0, atol=1e-12)
    np.testing.assert_allclose(G.to_complex(), G0, atol=1e-12)
    FG = F0 @ G0
    np.testing.assert_allclose(np.linalg.matrix_power(FG, 3), gauss_omega(N, sign) * np.eye(N), atol=1e-10)


@pytest.mark.parametrize("N", [2, 4, 6])
def test_gaussian_power_is_parity_for_even_n(N):
    for sign in (1, -1):
        G = pauli.fourier_gaussian(make_context(N, sign))[1]
        np.testing.assert_allclose((G ** N).to_complex(), np.diag((-1.0) ** np.arange(N)), atol=1e-12)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_adjoint_action_conventions(N):
    ctx = make_context(N)
    F, G = pauli.fourier_gaussian(ctx)
    S = np.array([[0, -1], [1, 0]]) % N
    T = np.array([[1, 1], [0, 1]]) % N
    np.testing.assert_array_equal(pauli.ad_matrix(F, ctx, "column"), S)
    np.testing.assert_array_equal(pauli.ad_matrix(G, ctx, "row"), T)
    # the other conventions give the transposes
    np.testing.assert_array_equal(pauli.ad_matrix(F, ctx, "row"), S.T % N)
    np.testing.assert_array_equal(pauli.ad_matrix(G, ctx, "column"), T.T)


@pytest.mark.parametrize("N,sign", [(2, 1), (3, 1), (4, -1), (5, 1)])
def test_clifford_relations_except_even_gaussian_order(N, sign):
    recs = pauli.clifford_relations(make_context(N, sign))
    bad = [r["identity"] for r in recs if not r["pass"]]
    assert bad == (["G^N = 1"] if N % 2 == 0 else [])
