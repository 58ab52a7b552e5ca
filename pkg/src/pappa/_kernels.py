"""Hot loops over normal-ordered monomials, compiled with numba when available.

Set ``PAPPA_DISABLE_NUMBA=1`` to force the pure-numpy implementations.
Monomials ``c_1^{i_1} ... c_m^{i_m}`` are encoded as integers in base ``N``
with ``i_1`` as the most significant digit.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

USE_NUMBA = os.environ.get("PAPPA_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")

try:
    if not USE_NUMBA:
        raise ImportError
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised through the env flag
    HAS_NUMBA = False


@lru_cache(maxsize=128)
def digits(N: int, m: int) -> np.ndarray:
    """All multi-indices as rows, in encoding order (read-only)."""
    if m == 0:
        out = np.zeros((1, 0), dtype=np.int64)
    else:
        out = np.ascontiguousarray(np.indices((N,) * m).reshape(m, -1).T, dtype=np.int64)
    out.setflags(write=False)
    return out


def _product_table_numpy(N: int, m: int):
    idx = digits(N, m)
    n = idx.shape[0]
    weights = N ** np.arange(m - 1, -1, -1, dtype=np.int64)
    out_digits = (idx[:, None, :] + idx[None, :, :]) % N
    table = out_digits @ weights if m else np.zeros((n, n), dtype=np.int64)
    # phase q^{-sum_{k<l} i_l j_k}
    phase = np.zeros((n, n), dtype=np.int64)
    for l in range(m):
        for k in range(l):
            phase -= np.outer(idx[:, l], idx[:, k])
    return table.astype(np.int64), phase % N


def _jw_numpy(N: int, m: int, codes: np.ndarray):
    """Permutation and q-exponent of the Jordan-Wigner image of each monomial.

    Column ``s`` of the image has its single nonzero entry ``q^phase[s]`` in
    row ``perm[s]``.
    """
    idx = digits(N, m)
    n = idx.shape[0]
    weights = N ** np.arange(m - 1, -1, -1, dtype=np.int64)
    mons = digits(N, m)[codes]
    perms = np.empty((len(codes), n), dtype=np.int64)
    phases = np.empty((len(codes), n), dtype=np.int64)
    for r, mon in enumerate(mons):
        state = idx.copy()
        phase = np.zeros(n, dtype=np.int64)
        # c_m^{i_m} acts first
        for p in range(m - 1, -1, -1):
            power = mon[p]
            if power:
                phase -= power * state[:, :p].sum(axis=1)
                state[:, p] = (state[:, p] + power) % N
        perms[r] = state @ weights if m else 0
        phases[r] = phase % N
    return perms, phases


if HAS_NUMBA:

    @njit(cache=True)
    def _product_table_numba(N, m, idx):
        n = idx.shape[0]
        table = np.empty((n, n), dtype=np.int64)
        phase = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                code = 0
                s = 0
                for l in range(m):
                    code = code * N + (idx[a, l] + idx[b, l]) % N
                    for k in range(l):
                        s -= idx[a, l] * idx[b, k]
                table[a, b] = code
                phase[a, b] = s % N
        return table, phase

    @njit(cache=True)
    def _jw_numba(N, m, idx, mons):
        n = idx.shape[0]
        r_count = mons.shape[0]
        perms = np.empty((r_count, n), dtype=np.int64)
        phases = np.empty((r_count, n), dtype=np.int64)
        state = np.empty(m, dtype=np.int64)
        for r in range(r_count):
            for s in range(n):
                for p in range(m):
                    state[p] = idx[s, p]
                ph = 0
                for p in range(m - 1, -1, -1):
                    power = mons[r, p]
                    if power:
                        tot = 0
                        for l in range(p):
                            tot += state[l]
                        ph -= power * tot
                        state[p] = (state[p] + power) % N
                code = 0
                for p in range(m):
                    code = code * N + state[p]
                perms[r, s] = code
                phases[r, s] = ph % N
        return perms, phases


def product_table_raw(N: int, m: int, use_numba: bool | None = None):
    """``(table, phase)`` with ``C_a C_b = q^phase[a,b] C_table[a,b]``."""
    use = HAS_NUMBA if use_numba is None else (use_numba and HAS_NUMBA)
    if use:
        return _product_table_numba(N, m, digits(N, m))
    return _product_table_numpy(N, m)


@lru_cache(maxsize=64)
def product_table(N: int, m: int):
    table, phase = product_table_raw(N, m)
    table.setflags(write=False)
    phase.setflags(write=False)
    return table, phase


def jw_phase_perm(N: int, m: int, codes, use_numba: bool | None = None):
    codes = np.asarray(codes, dtype=np.int64)
    use = HAS_NUMBA if use_numba is None else (use_numba and HAS_NUMBA)
    if use:
        return _jw_numba(N, m, digits(N, m), digits(N, m)[codes])
    return _jw_numpy(N, m, codes)
