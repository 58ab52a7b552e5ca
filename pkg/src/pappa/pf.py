"""The parafermion algebra PF_m in normal-ordered form.

Elements are finitely supported maps from multi-indices ``I`` in
``(Z_N)^m`` to scalars, read as ``sum_I a_I c_1^{i_1} ... c_m^{i_m}`` with
``c_i c_j = q c_j c_i`` for ``i < j`` and ``c_i^N = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .operators import DenseOperator
from .scalars import (
    CycloScalar,
    ParameterError,
    Scalar,
    ScalarContext,
    inv_sqrt_n,
    sqrt_n,
)


class DimensionError(ParameterError):
    """Operands live in different algebras."""


class LiftError(ParameterError):
    """An integer lift is not congruent to the grade of its element."""


@lru_cache(maxsize=200_000)
def _cmul(a: CycloScalar, b: CycloScalar) -> CycloScalar:
    return a * b


def _mul(a, b):
    if isinstance(a, CycloScalar):
        return _cmul(a, b)
    return a * b


def _code(I: tuple[int, ...], N: int) -> int:
    code = 0
    for i in I:
        code = code * N + i
    return code


class PFElement:
    """Immutable element of PF_m over a scalar context."""

    __slots__ = ("ctx", "m", "coeffs")

    def __init__(self, ctx: ScalarContext, m: int, coeffs: Mapping[tuple, Scalar] | None = None):
        if m < 0:
            raise ParameterError("m must be non-negative")
        self.ctx = ctx
        self.m = m
        clean = {}
        N = ctx.N
        for I, a in (coeffs or {}).items():
            I = tuple(int(i) % N for i in I)
            if len(I) != m:
                raise DimensionError(f"multi-index {I} does not have length {m}")
            a = ctx.scalar(a)
            if I in clean:
                a = clean[I] + a
            clean[I] = a
        self.coeffs = {I: a for I, a in clean.items() if not ctx.is_zero(a)}

    # construction -----------------------------------------------------
    @classmethod
    def _raw(cls, ctx, m, coeffs):
        obj = cls.__new__(cls)
        obj.ctx, obj.m = ctx, m
        obj.coeffs = {I: a for I, a in coeffs.items() if not ctx.is_zero(a)}
        return obj

    @classmethod
    def identity(cls, ctx: ScalarContext, m: int) -> "PFElement":
        return cls._raw(ctx, m, {(0,) * m: ctx.one})

    @classmethod
    def zero(cls, ctx: ScalarContext, m: int) -> "PFElement":
        return cls._raw(ctx, m, {})

    @classmethod
    def monomial(cls, ctx: ScalarContext, m: int, I: Iterable[int], coeff=1) -> "PFElement":
        return cls(ctx, m, {tuple(I): coeff})

    @classmethod
    def generator(cls, ctx: ScalarContext, m: int, p: int, power: int = 1) -> "PFElement":
        """``c_p^power`` in PF_m, with ``1 <= p <= m``."""
        if not 1 <= p <= m:
            raise ParameterError(f"generator index {p} out of range 1..{m}")
        I = [0] * m
        I[p - 1] = power % ctx.N
        return cls._raw(ctx, m, {tuple(I): ctx.one})

    @classmethod
    def from_vector(cls, ctx: ScalarContext, m: int, vec) -> "PFElement":
        """Inverse of :meth:`to_vector`."""
        idx = _kernels.digits(ctx.N, m)
        return cls._raw(ctx, m, {tuple(int(v) for v in idx[k]): ctx.scalar(vec[k]) for k in range(len(vec))
                                 if not ctx.is_zero(ctx.scalar(vec[k]))})

    def to_vector(self) -> np.ndarray:
        """Complex coefficient vector in monomial encoding order."""
        vec = np.zeros(self.ctx.N ** self.m, dtype=complex)
        for I, a in self.coeffs.items():
            vec[_code(I, self.ctx.N)] = self.ctx.to_complex(a)
        return vec

    # linear structure -------------------------------------------------
    def _check(self, other: "PFElement"):
        if not isinstance(other, PFElement):
            raise DimensionError("expected a PFElement")
        if other.m != self.m or other.ctx.N != self.ctx.N or other.ctx.mode != self.ctx.mode \
                or other.ctx.zeta_exponent != self.ctx.zeta_exponent:
            raise DimensionError("operands belong to different parafermion algebras")

    def __add__(self, other: "PFElement") -> "PFElement":
        self._check(other)
        out = dict(self.coeffs)
        for I, a in other.coeffs.items():
            out[I] = out[I] + a if I in out else a
        return PFElement._raw(self.ctx, self.m, out)

    def __neg__(self) -> "PFElement":
        return PFElement._raw(self.ctx, self.m, {I: -a for I, a in self.coeffs.items()})

    def __sub__(self, other: "PFElement") -> "PFElement":
        return self + (-other)

    def scale(self, c) -> "PFElement":
        c = self.ctx.scalar(c)
        return PFElement._raw(self.ctx, self.m, {I: _mul(c, a) for I, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, PFElement):
            return pf_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "PFElement":
        if n < 0:
            raise ParameterError("negative powers are not supported")
        out = PFElement.identity(self.ctx, self.m)
        for _ in range(n):
            out = out * self
        return out

    # comparison -------------------------------------------------------
    def equals(self, other: "PFElement") -> bool:
        self._check(other)
        if self.ctx.exact:
            a, b = self.coeffs, other.coeffs
            for k in a.keys() | b.keys():
                x, y = a.get(k), b.get(k)
                if x is None or y is None:
                    if not (x if y is None else y).is_zero():
                        return False
                elif x != y:
                    return False
            return True
        return (
            self.deviation(other) <= self.ctx.approx_tol * max(1.0, self.norm(), other.norm()))

    def __eq__(self, other):
        if not isinstance(other, PFElement):
            return NotImplemented
        try:
            return self.equals(other)
        except DimensionError:
            return False

    __hash__ = None

    def deviation(self, other: "PFElement") -> float:
        """Largest coefficient difference; exact inequality never reports 0."""
        if self.ctx.exact:
            diff = self - other
            return 0.0 if not diff.coeffs else max(abs(self.ctx.to_complex(a)) for a in diff.coeffs.values()) or 1e-300
        # no pruning here, so sub-tolerance differences stay visible
        a, b = self.coeffs, other.coeffs
        return max((abs(complex(a.get(k, 0)) - complex(b.get(k, 0))) for k in a.keys() | b.keys()), default=0.0)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(self.ctx.to_complex(a)) ** 2 for a in self.coeffs.values())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, I) -> Scalar:
        return self.coeffs.get(tuple(int(i) % self.ctx.N for i in I), self.ctx.zero)

    def grade_of(self, I) -> int:
        return sum(I) % self.ctx.N

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        terms = [{"I": list(I), "coeff": self.ctx.to_json(a)} for I, a in sorted(self.coeffs.items())]
        return {"N": self.ctx.N, "m": self.m, "terms": terms}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> "PFElement":
        if int(data["N"]) != ctx.N:
            raise ParameterError("element N does not match context")
        m = int(data["m"])
        return cls(ctx, m, {tuple(t["I"]): ctx.from_json(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        parts = []
        for I, a in sorted(self.coeffs.items()):
            mon = "".join(f"c{p + 1}^{i}" for p, i in enumerate(I) if i) or "1"
            parts.append(f"({self.ctx.to_complex(a):.4g}){mon}")
        return f"PF{self.m}[N={self.ctx.N}]: " + (" + ".join(parts) or "0")


@dataclass(frozen=True)
class LiftedElement:
    """A homogeneous element paired with an integer lift of its grade."""

    element: PFElement
    lift: int

    def __post_init__(self):
        g = pf_grade(self.element)
        if isinstance(g, dict):
            raise LiftError("lifted elements must be homogeneous")
        if not self.element.is_zero() and (self.lift - g) % self.element.ctx.N:
            raise LiftError(f"lift {self.lift} is not congruent to grade {g}")


# ----------------------------------------------------------------------
# products


def pf_multiply(a: PFElement, b: PFElement) -> PFElement:
    """Normal-ordered product; reordering contributes ``q^{-1}`` per unit transposition."""
    a._check(b)
    ctx, m, N = a.ctx, a.m, a.ctx.N
    if not a.coeffs or not b.coeffs:
        return PFElement.zero(ctx, m)
    table, phase = _kernels.product_table(N, m)
    idx = _kernels.digits(N, m)
    if not ctx.exact:
        ca = np.array([_code(I, N) for I in a.coeffs], dtype=np.int64)
        cb = np.array([_code(I, N) for I in b.coeffs], dtype=np.int64)
        va = np.array(list(a.coeffs.values()), dtype=complex)
        vb = np.array(list(b.coeffs.values()), dtype=complex)
        qp = np.exp(2j * np.pi * np.arange(N) / N)
        # q = zeta^2 is always exp(2 pi i / N)
        w = np.outer(va, vb) * qp[phase[np.ix_(ca, cb)]]
        out = np.zeros(N ** m, dtype=complex)
        np.add.at(out, table[np.ix_(ca, cb)].ravel(), w.ravel())
        nz = np.nonzero(np.abs(out) > 1e-15)[0]
        return PFElement._raw(ctx, m, {tuple(int(v) for v in idx[k]): complex(out[k]) for k in nz})
    acc: dict[tuple[int, int], CycloScalar] = {}
    for I, x in a.coeffs.items():
        ci = _code(I, N)
        trow, prow = table[ci], phase[ci]
        for J, y in b.coeffs.items():
            cj = _code(J, N)
            key = (int(trow[cj]), int(prow[cj]))
            prod = _cmul(x, y)
            acc[key] = acc[key] + prod if key in acc else prod
    out: dict[int, CycloScalar] = {}
    for (k, s), v in acc.items():
        term = _cmul(v, ctx.q_pow(s)) if s else v
        out[k] = out[k] + term if k in out else term
    return PFElement._raw(ctx, m, {tuple(int(v) for v in idx[k]): v for k, v in out.items()})


def pf_star(a: PFElement) -> PFElement:
    """Antilinear, antimultiplicative involution with ``c_i* = c_i^{N-1}``."""
    ctx, N = a.ctx, a.ctx.N
    out = {}
    for I, x in a.coeffs.items():
        # c_m^{-i_m} ... c_1^{-i_1} brought to normal order
        s = 0
        for l in range(len(I)):
            for k in range(l):
                s -= I[k] * I[l]
        J = tuple((-i) % N for i in I)
        val = ctx.conj(x)
        if s % N:
            val = _mul(val, ctx.q_pow(s))
        out[J] = val
    return PFElement._raw(ctx, a.m, out)


def homogeneous_parts(a: PFElement) -> dict[int, PFElement]:
    parts: dict[int, dict] = {}
    for I, x in a.coeffs.items():
        parts.setdefault(sum(I) % a.ctx.N, {})[I] = x
    return {g: PFElement._raw(a.ctx, a.m, c) for g, c in sorted(parts.items())}


def pf_grade(a: PFElement):
    """Common grade in ``Z_N``, or the decomposition ``{grade: part}`` if mixed."""
    parts = homogeneous_parts(a)
    if not parts:
        return 0
    if len(parts) == 1:
        return next(iter(parts))
    return parts


def markov_trace(a: PFElement) -> Scalar:
    return a.coeff((0,) * a.m)


# ----------------------------------------------------------------------
# representation


def jw_phase_perm(a: PFElement):
    """Permutation and q-exponents of the Jordan-Wigner image of each supported monomial."""
    N, m = a.ctx.N, a.m
    keys = list(a.coeffs)
    codes = [_code(I, N) for I in keys]
    perms, phases = _kernels.jw_phase_perm(N, m, codes)
    return keys, perms, phases


def jw_rep(a: PFElement) -> DenseOperator:
    """Matrix with ``c_p -> Z^{-1} x ... x Z^{-1} x X x 1 x ... x 1`` (X in slot p)."""
    ctx, dim = a.ctx, a.ctx.N ** a.m
    out = DenseOperator.zeros(ctx, dim)
    if not a.coeffs:
        return out
    keys, perms, phases = jw_phase_perm(a)
    if not ctx.exact:
        arr = np.zeros((dim, dim), dtype=complex)
        cols = np.arange(dim)
        qp = np.exp(2j * np.pi * np.arange(ctx.N) / ctx.N)
        for r, I in enumerate(keys):
            arr[perms[r], cols] += a.coeffs[I] * qp[phases[r]]
        return DenseOperator(ctx, array=arr)
    for r, I in enumerate(keys):
        term = DenseOperator.phase_perm(ctx, perms[r], phases[r])
        x = a.coeffs[I]
        out = out + (term if x == ctx.one else term.scale(x))
    return out


def normalized_trace(op: DenseOperator) -> Scalar:
    t = op.trace()
    return t / op.dim if op.ctx.exact else t / op.dim


# ----------------------------------------------------------------------
# embeddings and expectations


def shift_embed(a: PFElement, direction: str = "left", by: int = 1) -> PFElement:
    """``left`` maps ``c_i -> c_{i+by}``; ``right`` appends ``by`` idle strings."""
    pad = (0,) * by
    if direction == "left":
        return PFElement._raw(a.ctx, a.m + by, {pad + I: x for I, x in a.coeffs.items()})
    if direction == "right":
        return PFElement._raw(a.ctx, a.m + by, {I + pad: x for I, x in a.coeffs.items()})
    raise ParameterError(f"unknown direction {direction!r}")


def place(a: PFElement, m: int, offset: int) -> PFElement:
    """Embed ``a`` into PF_m on generators ``offset+1 .. offset+a.m``."""
    if offset < 0 or offset + a.m > m:
        raise ParameterError("placement out of range")
    left, right = (0,) * offset, (0,) * (m - offset - a.m)
    return PFElement._raw(a.ctx, m, {left + I + right: x for I, x in a.coeffs.items()})


def conditional_expectation(a: PFElement, side: str = "right") -> PFElement:
    """Trace-preserving expectation PF_m -> PF_{m-1} dropping the last (or first) generator."""
    if a.m < 1:
        raise ParameterError("m must be at least 1")
    if side == "right":
        return PFElement._raw(a.ctx, a.m - 1, {I[:-1]: x for I, x in a.coeffs.items() if I[-1] == 0})
    if side == "left":
        return PFElement._raw(a.ctx, a.m - 1, {I[1:]: x for I, x in a.coeffs.items() if I[0] == 0})
    raise ParameterError(f"unknown side {side!r}")


# ----------------------------------------------------------------------
# Temperley-Lieb projections and the string Fourier transform


def jones_projection(ctx: ScalarContext, m: int, i: int) -> PFElement:
    """``E_i = N^{-1/2} sum_k zeta^{k^2} c_i^k c_{i+1}^{-k}``."""
    if m < 2:
        raise ParameterError("Jones projections need m >= 2")
    if not 1 <= i <= m - 1:
        raise ParameterError(f"projection index {i} out of range 1..{m - 1}")
    N = ctx.N
    s = inv_sqrt_n(ctx)
    coeffs = {}
    for k in range(N):
        I = [0] * m
        I[i - 1] = k
        I[i] = (-k) % N
        coeffs[tuple(I)] = _mul(s, ctx.zeta_pow(k * k))
    return PFElement._raw(ctx, m, coeffs)


def _sft_basis_map(ctx: ScalarContext, m: int) -> dict[tuple, PFElement]:
    key = ("sft", m)
    cache = ctx._cache
    if key in cache:
        return cache[key]
    N = ctx.N
    chain = PFElement.identity(ctx, m + 1)
    for i in range(m, 0, -1):
        chain = chain * jones_projection(ctx, m + 1, i)
    root = sqrt_n(ctx)
    images = {}
    for code in range(N ** m):
        I = tuple(int(v) for v in _kernels.digits(N, m)[code])
        lifted = PFElement.monomial(ctx, m + 1, (0,) + I)
        images[I] = conditional_expectation(chain * lifted).scale(root)
    cache[key] = images
    return images


def sft(a: PFElement) -> PFElement:
    """String Fourier transform ``sqrt(N) Phi_r(E_m ... E_1 iota_l(x))``."""
    if a.m == 0:
        return a
    images = _sft_basis_map(a.ctx, a.m)
    out = PFElement.zero(a.ctx, a.m)
    for I, x in a.coeffs.items():
        out = out + images[I].scale(x)
    return out


def sft_power(a: PFElement, k: int) -> PFElement:
    """``sft^k`` for any integer ``k``; negative powers use ``sft^{2m} = q^{g^2}``."""
    if a.m == 0:
        return a
    if k >= 0:
        for _ in range(k):
            a = sft(a)
        return a
    period = 2 * a.m
    r = (-k) % period
    steps = (period - r) % period
    turns = (-k + steps) // period
    out = PFElement.zero(a.ctx, a.m)
    for g, part in homogeneous_parts(a).items():
        img = sft_power(part, steps)
        out = out + img.scale(a.ctx.q_pow(-g * g * turns))
    return out


def rotate_pi(a: PFElement) -> PFElement:
    """The pi rotation ``sft^m``; antimultiplicative."""
    return sft_power(a, a.m)


def reflect_theta(a: PFElement) -> PFElement:
    """``Theta(x) = zeta^{-|x|^2} rho_pi(x*)`` applied per homogeneous component."""
    ctx = a.ctx
    out = PFElement.zero(ctx, a.m)
    for g, part in homogeneous_parts(a).items():
        img = rotate_pi(pf_star(part))
        out = out + img.scale(ctx.zeta_pow(-g * g))
    return out


def reflect_lifted(x: LiftedElement) -> LiftedElement:
    """Reflection on lifted elements; the lift is negated with the grade."""
    return LiftedElement(reflect_theta(x.element), -x.lift)


# ----------------------------------------------------------------------
# tensor products


def graded_tensor(a: PFElement, b: PFElement, sign: str = "+") -> PFElement:
    """``a (x)+ b = a * shift(b)``; ``a (x)- b = chi(|a|,|b|)^{-1} a (x)+ b`` per component."""
    if a.ctx.N != b.ctx.N or a.ctx.mode != b.ctx.mode:
        raise DimensionError("operands belong to different contexts")
    m = a.m + b.m
    plus = place(a, m, 0) * place(b, m, a.m)
    if sign == "+":
        return plus
    if sign != "-":
        raise ParameterError(f"unknown sign {sign!r}")
    ctx = a.ctx
    out = PFElement.zero(ctx, m)
    for g, pa in homogeneous_parts(a).items():
        for h, pb in homogeneous_parts(b).items():
            term = place(pa, m, 0) * place(pb, m, a.m)
            out = out + term.scale(ctx.q_pow(-g * h))
    return out


def canonical_lift(ctx: ScalarContext, g: int) -> int:
    return g % ctx.N


def lift(a: PFElement, value: int | None = None) -> LiftedElement:
    g = pf_grade(a)
    if isinstance(g, dict):
        raise LiftError("only homogeneous elements can be lifted")
    return LiftedElement(a, canonical_lift(a.ctx, g) if value is None else value)


def twisted_tensor(x: LiftedElement, y: LiftedElement) -> LiftedElement:
    """``(x,i) (x)t (y,j) = (zeta^{-ij} x (x)+ y, i+j)``."""
    ctx = x.element.ctx
    i, j = x.lift, y.lift
    prod = graded_tensor(x.element, y.element, "+").scale(ctx.zeta_pow(-i * j))
    return LiftedElement(prod, i + j)


def reflected_pair(x: PFElement, y: PFElement) -> PFElement:
    """``Pi(Theta(x^) (x)t y^)`` with canonical lifts on ``x`` and ``y``, summed over components."""
    ctx = x.ctx
    out = PFElement.zero(ctx, x.m + y.m)
    for g, xg in homogeneous_parts(x).items():
        tx = reflect_lifted(lift(xg))
        for h, yh in homogeneous_parts(y).items():
            out = out + twisted_tensor(tx, lift(yh)).element
    return out


def double(x: PFElement) -> PFElement:
    """``Theta(x) (x)t x`` summed over homogeneous components (diagonal terms only)."""
    ctx = x.ctx
    out = PFElement.zero(ctx, 2 * x.m)
    for g, xg in homogeneous_parts(x).items():
        out = out + graded_tensor(reflect_theta(xg), xg).scale(ctx.zeta_pow(g * g))
    return out


# ----------------------------------------------------------------------
# distinguished families


def zero_graded_two_box(ctx: ScalarContext, i: int) -> PFElement:
    """``u_i = Theta(c^i) (x)t c^i = zeta^{i^2} c_1^{-i} c_2^{i}``."""
    c = PFElement.generator(ctx, 1, 1, i)
    return double(c)


def matrix_units(ctx: ScalarContext, kind: str, m: int = 1):
    """Matrix-unit families.

    ``Q``: minimal projections ``Q_i = N^{-1} sum_j q^{ij} c_1^j`` of PF_1.
    ``two_box``: ``v_i^j`` in PF_2 as a nested list ``[i][j]``.
    ``even``: ``{(I, J): v_I^J}`` for PF_{2m}.
    ``odd``: ``{(i, I, J): ...}`` for PF_{2m+1}.
    """
    N = ctx.N
    if kind == "Q":
        return [PFElement(ctx, 1, {(j,): ctx.q_pow(i * j) / N for j in range(N)}) for i in range(N)]
    if kind == "two_box":
        return [[two_box_unit(ctx, i, j) for j in range(N)] for i in range(N)]
    if kind == "even":
        return even_matrix_units(ctx, m)
    if kind == "odd":
        return odd_matrix_units(ctx, m)
    raise ParameterError(f"unknown matrix unit kind {kind!r}")


def two_box_unit(ctx: ScalarContext, i: int, j: int) -> PFElement:
    """``v_i^j = N^{-1/2} c_1^{-i} E_1 c_1^{j}``."""
    return even_matrix_units(ctx, 1)[((i % ctx.N,), (j % ctx.N,))]


def projection_p(ctx: ScalarContext, i: int) -> PFElement:
    """``p_i = c_1^i E_1 c_1^{-i}``, a Jones projection moved along the first string."""
    E = jones_projection(ctx, 2, 1)
    return PFElement.generator(ctx, 2, 1, i) * E * PFElement.generator(ctx, 2, 1, -i)


def rainbow(ctx: ScalarContext, m: int) -> PFElement:
    """Nested cup over nested cap in PF_{2m}, as a product of Jones projections.

    Layers ``L_k = E_{m-k} E_{m-k+2} ... E_{m+k}`` are stacked as
    ``L_0 L_1 ... L_{m-1} ... L_1 L_0``; the result squares to ``N^{m/2}`` times itself.
    """
    key = ("rainbow", m)
    if key in ctx._cache:
        return ctx._cache[key]
    M = 2 * m
    layers = []
    for k in range(m):
        layer = PFElement.identity(ctx, M)
        for t in range(k + 1):
            layer = layer * jones_projection(ctx, M, m - k + 2 * t)
        layers.append(layer)
    out = PFElement.identity(ctx, M)
    for layer in layers + layers[-2::-1]:
        out = out * layer
    ctx._cache[key] = out
    return out


def even_matrix_units(ctx: ScalarContext, m: int) -> dict:
    """``{(I, J): v_I^J}`` with ``v_I^J = N^{-m/2} C_I^* R_m C_J`` on the left half of PF_{2m}."""
    key = ("even_units", m)
    if key in ctx._cache:
        return ctx._cache[key]
    N = ctx.N
    R = rainbow(ctx, m).scale(inv_sqrt_n(ctx) ** m)
    idx = [tuple(int(v) for v in row) for row in _kernels.digits(N, m)]
    left = {I: place(PFElement.monomial(ctx, m, I), 2 * m, 0) for I in idx}
    star = {I: pf_star(x) for I, x in left.items()}
    units = {}
    for I in idx:
        head = star[I] * R
        for J in idx:
            units[(I, J)] = head * left[J]
    ctx._cache[key] = units
    return units


def central_unitary(ctx: ScalarContext, m: int) -> PFElement:
    """Central unitary ``w = zeta^a c_1 c_2^{-1} c_3 ... c_{2m+1}`` of PF_{2m+1}, phased so ``w^N = 1``."""
    M = 2 * m + 1
    I = tuple(1 if k % 2 == 0 else ctx.N - 1 for k in range(M))
    w = PFElement.monomial(ctx, M, I)
    wN = (w ** ctx.N).coeff((0,) * M)
    for a in range(ctx.L):
        if ctx.eq(ctx.root(a * ctx.N) * wN, ctx.one):
            return w.scale(ctx.root(a))
    raise ParameterError("no phase normalizes the central unitary")  # pragma: no cover


def odd_matrix_units(ctx: ScalarContext, m: int) -> dict:
    """``{(i, I, J): Q_i v_I^J}`` for PF_{2m+1}, with ``Q_i`` the spectral projections of the central unitary."""
    N, M = ctx.N, 2 * m + 1
    w = central_unitary(ctx, m)
    powers = [PFElement.identity(ctx, M)]
    for _ in range(N - 1):
        powers.append(powers[-1] * w)
    Qs = []
    for i in range(N):
        Q = PFElement.zero(ctx, M)
        for j in range(N):
            Q = Q + powers[j].scale(ctx.q_pow(i * j) / N)
        Qs.append(Q)
    evens = even_matrix_units(ctx, m)
    return {(i, I, J): Q * place(v, M, 0) for i, Q in enumerate(Qs) for (I, J), v in evens.items()}
