"""Square matrices over the context scalars.

Exact matrices are stored as an integer tensor ``num[k, i, j]`` of
power-basis coordinates together with one positive common denominator, so
matrix products reduce to a handful of integer matrix products.
"""

from __future__ import annotations

import math

import numpy as np

from .scalars import CycloScalar, ParameterError, Scalar, ScalarContext, reduction_table

_GUARD = 2**62


def _maxabs(a: np.ndarray) -> int:
    return int(np.abs(a).max(initial=0)) if a.size else 0


def _normalize(num: np.ndarray, den: int):
    if num.dtype == object:
        if _maxabs(num) < 2**62:
            num = num.astype(np.int64)
    if not num.any():
        return np.zeros(num.shape, dtype=np.int64), 1
    if den == 1:
        return num, 1
    g = int(np.gcd.reduce(np.abs(num).ravel())) if num.dtype != object else 0
    if num.dtype == object:
        for v in num.ravel():
            g = math.gcd(g, int(v))
    g = math.gcd(g, den)
    if g > 1:
        num = num // g
        den //= g
    return num, den


def _convolve_reduce(L: int, a: np.ndarray, b: np.ndarray, op) -> np.ndarray:
    """``sum_{s,u} op(a[s], b[u]) z^{s+u}`` reduced to the power basis."""
    phi = a.shape[0]
    sa = [s for s in range(phi) if a[s].any()]
    sb = [u for u in range(phi) if b[u].any()]
    if not sa or not sb:
        shape = op(a[0], b[0]).shape
        return np.zeros((phi,) + shape, dtype=np.int64)
    inner = max(a.shape[-1], 1)
    bound = _maxabs(a) * _maxabs(b) * inner * len(sa) * len(sb)
    table = reduction_table(L)
    tbound = _maxabs(table[: 2 * phi - 1])
    use_obj = bound * max(tbound, 1) * phi >= _GUARD
    dtype = object if use_obj else np.int64
    if op is np.matmul and bound < 2**52:
        # float64 BLAS is exact while every partial sum stays below 2^53
        bs = b[sb].astype(np.float64)
        sb_arr = np.array(sb)
        acc_arr = np.zeros((2 * phi - 1,) + a.shape[1:-1] + b.shape[-1:])
        for s in sa:
            acc_arr[s + sb_arr] += np.matmul(a[s].astype(np.float64), bs)
        if bound * max(tbound, 1) * 2 * phi < 2**52:
            red = np.tensordot(table[: 2 * phi - 1].T.astype(np.float64), acc_arr, axes=1)
            return np.rint(red).astype(np.int64)
        acc_int = np.rint(acc_arr).astype(np.int64)
        return np.tensordot(table[: 2 * phi - 1].T.astype(object), acc_int.astype(object), axes=1)
    first = op(a[sa[0]].astype(dtype), b[sb[0]].astype(dtype))
    acc = {}
    for s in sa:
        for u in sb:
            prod = op(a[s].astype(dtype), b[u].astype(dtype))
            t = s + u
            acc[t] = acc[t] + prod if t in acc else prod
    out = np.zeros((phi,) + first.shape, dtype=dtype)
    for t, mat in acc.items():
        row = table[t]
        for j in np.nonzero(row)[0]:
            out[j] += int(row[j]) * mat
    return out


class DenseOperator:
    """A ``dim x dim`` matrix over the scalars of ``ctx``."""

    __slots__ = ("ctx", "dim", "num", "den", "array")

    def __init__(self, ctx: ScalarContext, *, array=None, num=None, den: int = 1):
        self.ctx = ctx
        if ctx.exact:
            if num is None:
                raise ParameterError("exact operator needs integer coordinates")
            num = np.asarray(num)
            if num.ndim != 3 or num.shape[1] != num.shape[2]:
                raise ParameterError("operator must be square")
            self.num, self.den = _normalize(num, int(den))
            self.dim = num.shape[1]
            self.array = None
        else:
            arr = np.asarray(array, dtype=complex)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ParameterError("operator must be square")
            self.array = arr
            self.dim = arr.shape[0]
            self.num = None
            self.den = 1

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, ctx: ScalarContext, dim: int) -> "DenseOperator":
        if ctx.exact:
            phi = reduction_table(ctx.L).shape[1]
            return cls(ctx, num=np.zeros((phi, dim, dim), dtype=np.int64))
        return cls(ctx, array=np.zeros((dim, dim), dtype=complex))

    @classmethod
    def identity(cls, ctx: ScalarContext, dim: int) -> "DenseOperator":
        return cls.phase_perm(ctx, np.arange(dim), np.zeros(dim, dtype=np.int64))

    @classmethod
    def phase_perm(cls, ctx: ScalarContext, perm, exps, unit: str = "q") -> "DenseOperator":
        """Matrix with entry ``w^exps[s]`` at ``(perm[s], s)``, ``w`` being q, zeta or z_L."""
        perm = np.asarray(perm, dtype=np.int64)
        exps = np.asarray(exps, dtype=np.int64)
        dim = len(perm)
        step = {"q": 2 * ctx.zeta_exponent, "zeta": ctx.zeta_exponent, "root": 1}[unit]
        e = (exps * step) % ctx.L
        cols = np.arange(dim)
        if ctx.exact:
            table = reduction_table(ctx.L)
            num = np.zeros((table.shape[1], dim, dim), dtype=np.int64)
            num[:, perm, cols] = table[e].T
            return cls(ctx, num=num)
        arr = np.zeros((dim, dim), dtype=complex)
        arr[perm, cols] = np.exp(2j * np.pi * e / ctx.L)
        return cls(ctx, array=arr)

    @classmethod
    def from_scalars(cls, ctx: ScalarContext, rows) -> "DenseOperator":
        rows = [list(r) for r in rows]
        dim = len(rows)
        if ctx.exact:
            vals = [[ctx.scalar(v) for v in r] for r in rows]
            den = 1
            for r in vals:
                for v in r:
                    den = den * v.den // math.gcd(den, v.den)
            phi = reduction_table(ctx.L).shape[1]
            num = np.zeros((phi, dim, dim), dtype=object)
            for i, r in enumerate(vals):
                for j, v in enumerate(r):
                    f = den // v.den
                    num[:, i, j] = [x * f for x in v.num]
            return cls(ctx, num=num, den=den)
        return cls(ctx, array=np.array([[ctx.to_complex(v) for v in r] for r in rows], dtype=complex))

    # algebra ----------------------------------------------------------
    def _check(self, other: "DenseOperator"):
        if not isinstance(other, DenseOperator):
            raise ParameterError("expected a DenseOperator")
        if other.dim != self.dim or other.ctx.mode != self.ctx.mode or other.ctx.L != self.ctx.L:
            raise ParameterError("operator shapes or contexts differ")

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._check(other)
        if self.ctx.exact:
            num = _convolve_reduce(self.ctx.L, self.num, other.num, np.matmul)
            return DenseOperator(self.ctx, num=num, den=self.den * other.den)
        return DenseOperator(self.ctx, array=self.array @ other.array)

    def kron(self, other: "DenseOperator") -> "DenseOperator":
        if self.ctx.exact:
            num = _convolve_reduce(self.ctx.L, self.num, other.num, np.kron)
            return DenseOperator(self.ctx, num=num, den=self.den * other.den)
        return DenseOperator(self.ctx, array=np.kron(self.array, other.array))

    def _combine(self, other: "DenseOperator", sign: int) -> "DenseOperator":
        self._check(other)
        if self.ctx.exact:
            den = self.den * other.den // math.gcd(self.den, other.den)
            a = self.num.astype(object) if _maxabs(self.num) * den > _GUARD else self.num
            b = other.num.astype(object) if _maxabs(other.num) * den > _GUARD else other.num
            num = a * (den // self.den) + sign * b * (den // other.den)
            return DenseOperator(self.ctx, num=num, den=den)
        return DenseOperator(self.ctx, array=self.array + sign * other.array)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        if self.ctx.exact:
            return DenseOperator(self.ctx, num=-self.num, den=self.den)
        return DenseOperator(self.ctx, array=-self.array)

    def scale(self, c) -> "DenseOperator":
        if self.ctx.exact:
            c = self.ctx.scalar(c)
            cvec = np.array(c.num, dtype=object)
            if _maxabs(cvec) < 2**62:
                cvec = cvec.astype(np.int64)
            num = _convolve_reduce(self.ctx.L, cvec[:, None, None], self.num, np.multiply)
            return DenseOperator(self.ctx, num=num, den=self.den * c.den)
        return DenseOperator(self.ctx, array=self.ctx.to_complex(c) * self.array)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int) -> "DenseOperator":
        if n < 0:
            raise ParameterError("negative powers need an inverse; use dagger for unitaries")
        result = DenseOperator.identity(self.ctx, self.dim)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def dagger(self) -> "DenseOperator":
        if self.ctx.exact:
            L = self.ctx.L
            table = reduction_table(L)
            phi = table.shape[1]
            num = np.zeros_like(self.num)
            for k in range(phi):
                if self.num[k].any():
                    row = table[(-k) % L]
                    for j in np.nonzero(row)[0]:
                        num[j] += int(row[j]) * self.num[k].T
            return DenseOperator(self.ctx, num=num, den=self.den)
        return DenseOperator(self.ctx, array=self.array.conj().T)

    def trace(self) -> Scalar:
        if self.ctx.exact:
            vec = np.trace(self.num, axis1=1, axis2=2)
            return CycloScalar(self.ctx.L, vec, self.den)
        return complex(np.trace(self.array))

    def entry(self, i: int, j: int) -> Scalar:
        if self.ctx.exact:
            return CycloScalar(self.ctx.L, self.num[:, i, j], self.den)
        return complex(self.array[i, j])

    def restrict(self, rows, cols=None) -> "DenseOperator":
        cols = rows if cols is None else cols
        if self.ctx.exact:
            return DenseOperator(self.ctx, num=self.num[:, rows][:, :, cols], den=self.den)
        return DenseOperator(self.ctx, array=self.array[np.ix_(rows, cols)])

    # comparison -------------------------------------------------------
    def to_complex(self) -> np.ndarray:
        if not self.ctx.exact:
            return self.array
        L = self.ctx.L
        phi = self.num.shape[0]
        w = np.exp(2j * np.pi * np.arange(phi) / L)
        return np.tensordot(w, self.num.astype(float), axes=(0, 0)) / self.den

    def equals(self, other: "DenseOperator") -> bool:
        self._check(other)
        if self.ctx.exact:
            return self.den == other.den and np.array_equal(self.num, other.num)
        return self.deviation(other) <= self.ctx.approx_tol * max(1.0, np.abs(self.array).max(initial=0))

    def deviation(self, other: "DenseOperator") -> float:
        return float(np.abs(self.to_complex() - other.to_complex()).max(initial=0.0))

    def is_zero(self) -> bool:
        if self.ctx.exact:
            return not self.num.any()
        return float(np.abs(self.array).max(initial=0.0)) <= self.ctx.approx_tol

    def to_json(self) -> list:
        """Row-major nested lists of scalar JSON records."""
        return [[self.ctx.to_json(self.entry(i, j)) for j in range(self.dim)] for i in range(self.dim)]

    def __repr__(self):
        return f"DenseOperator(dim={self.dim}, mode={self.ctx.mode})"
