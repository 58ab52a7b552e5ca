import os
import subprocess
import sys

import numpy as np
import pytest

from pappa import _kernels
from pappa.operators import DenseOperator
from pappa.scalars import make_context

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba disabled")


@needs_numba
@pytest.mark.parametrize("N,m", [(2, 1), (2, 3), (3, 2), (4, 3), (5, 2)])
def test_product_table_numba_matches_numpy(N, m):
    t1, p1 = _kernels.product_table_raw(N, m, use_numba=True)
    t2, p2 = _kernels.product_table_raw(N, m, use_numba=False)
    np.testing.assert_array_equal(t1, t2)
    np.testing.assert_array_equal(p1, p2)


@needs_numba
@pytest.mark.parametrize("N,m", [(2, 2), (3, 3), (4, 2)])
def test_jw_numba_matches_numpy(N, m):
    codes = np.arange(N ** m)
    a = _kernels.jw_phase_perm(N, m, codes, use_numba=True)
    b = _kernels.jw_phase_perm(N, m, codes, use_numba=False)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def test_disable_flag_selects_numpy():
    env = dict(os.environ, PAPPA_DISABLE_NUMBA="1")
    code = (
        "from pappa import _kernels, suites\n"
        "from pappa.scalars import make_context\n"
        "assert not _kernels.HAS_NUMBA\n"
        "recs = suites.pf_axioms(make_context(3), 2) + suites.jw_suite(make_context(3), 2)\n"
        "assert all(r['pass'] for r in recs)\n"
    )
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr


def _random_exact(ctx, dim, rng, hi):
    rows = [[ctx.scalar(0) for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for _ in range(2):
                rows[i][j] = rows[i][j] + ctx.root(int(rng.integers(ctx.L))) * int(rng.integers(-hi, hi + 1))
    return DenseOperator.from_scalars(ctx, rows)


@pytest.mark.parametrize("hi", [3, 2**20, 2**40])
def test_exact_matmul_matches_complex(hi):
    # small entries take the float path, large ones the integer and object paths
    ctx = make_context(3)
    rng = np.random.default_rng(hi % 97)
    A, B = _random_exact(ctx, 4, rng, hi), _random_exact(ctx, 4, rng, hi)
    C = A @ B
    ref = A.to_complex() @ B.to_complex()
    assert np.abs(C.to_complex() - ref).max() <= 1e-9 * max(1.0, np.abs(ref).max())
    # associativity is exact
    D = _random_exact(ctx, 4, rng, 2)
    assert ((A @ B) @ D).equals(A @ (B @ D))


def test_exact_kron_and_power():
    ctx = make_context(2)
    rng = np.random.default_rng(0)
    A, B = _random_exact(ctx, 2, rng, 3), _random_exact(ctx, 2, rng, 3)
    np.testing.assert_allclose(A.kron(B).to_complex(), np.kron(A.to_complex(), B.to_complex()), atol=1e-9)
    np.testing.assert_allclose((A ** 3).to_complex(), np.linalg.matrix_power(A.to_complex(), 3), atol=1e-8)
