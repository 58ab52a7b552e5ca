"""Exact cyclotomic and approximate complex scalars.

Exact values live in the cyclotomic field of order ``L`` and are stored in
the power basis ``{z^k : 0 <= k < phi(L)}`` where ``z = exp(2 pi i / L)``.
Every value is reduced modulo the cyclotomic polynomial, so two values are
equal exactly when their coefficient vectors agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

EXACT = "exact"
APPROX = "approx"

_INT_GUARD = 2**62


class ParameterError(ValueError):
    """Invalid parameter for a scalar context or algebra operation."""


class Unrepresentable(ArithmeticError):
    """The requested constant does not live in the configured cyclotomic field."""


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(L: int) -> tuple[int, ...]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(L, x), x)
    # ascending order
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def reduction_table(L: int) -> np.ndarray:
    """Row ``t`` holds the power-basis coordinates of ``z^t`` for ``0 <= t < L``."""
    phi_poly = _cyclotomic_coeffs(L)
    phi = len(phi_poly) - 1
    table = np.zeros((L, phi), dtype=np.int64)
    cur = [0] * phi
    cur[0] = 1
    for t in range(L):
        table[t] = cur
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(phi):
                cur[k] -= top * phi_poly[k]
    table.setflags(write=False)
    return table


def totient_dim(L: int) -> int:
    return reduction_table(L).shape[1]


def _as_int_array(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == object:
        try:
            return arr.astype(np.int64)
        except OverflowError:
            return arr
    return arr


def _safe(a: np.ndarray, b: np.ndarray, n: int) -> bool:
    if a.dtype == object or b.dtype == object:
        return False
    ma = int(np.abs(a).max(initial=0))
    mb = int(np.abs(b).max(initial=0))
    return ma * mb * max(n, 1) < _INT_GUARD


def _normalize(num: np.ndarray, den: int) -> tuple[tuple[int, ...], int]:
    ints = [int(v) for v in num]
    if den < 0:
        ints = [-v for v in ints]
        den = -den
    g = den
    for v in ints:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    if not any(ints):
        return tuple([0] * len(ints)), 1
    if g > 1:
        ints = [v // g for v in ints]
        den //= g
    return tuple(ints), den


class CycloScalar:
    """Exact element of the order-``L`` cyclotomic field."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num, den: int = 1, *, _canonical: bool = False):
        self.order = order
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(np.asarray(num), den)
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, L: int) -> "CycloScalar":
        return cls(L, (0,) * totient_dim(L), 1, _canonical=True)

    @classmethod
    def rational(cls, L: int, value) -> "CycloScalar":
        value = Fraction(value)
        num = [0] * totient_dim(L)
        num[0] = value.numerator
        return cls(L, tuple(num), value.denominator, _canonical=True)

    @classmethod
    def root(cls, L: int, k: int) -> "CycloScalar":
        """The root of unity ``exp(2 pi i k / L)``."""
        return _root(L, int(k) % L)

    @classmethod
    def from_exponents(cls, L: int, counts, den: int = 1) -> "CycloScalar":
        """Sum of ``counts[t] * z^t`` over ``t`` in ``Z_L``, divided by ``den``."""
        counts = _as_int_array(counts)
        vec = counts @ reduction_table(L) if counts.dtype != object else np.dot(
            counts, reduction_table(L).astype(object)
        )
        return cls(L, vec, den)

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> "CycloScalar":
        if isinstance(other, CycloScalar):
            if other.order != self.order:
                raise ParameterError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return CycloScalar.rational(self.order, other)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den = self.den * other.den // math.gcd(self.den, other.den)
        a, b = den // self.den, den // other.den
        num = [x * a + y * b for x, y in zip(self.num, other.num)]
        return CycloScalar(self.order, np.array(num, dtype=object), den)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.order, tuple(-v for v in self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycloScalar(self.order, np.array([v * int(other) for v in self.num], dtype=object), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a = _as_int_array(self.num)
        b = _as_int_array(other.num)
        phi = len(self.num)
        table = reduction_table(self.order)[: 2 * phi - 1]
        if _safe(a, b, phi) and _safe(np.convolve(np.abs(a), np.abs(b)), table, 2 * phi):
            vec = np.convolve(a, b) @ table
        else:
            conv = np.convolve(a.astype(object), b.astype(object))
            vec = np.dot(conv, table.astype(object))
        return CycloScalar(self.order, vec, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * CycloScalar.rational(self.order, 1 / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloScalar.rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CycloScalar":
        L = self.order
        nz = [k for k, v in enumerate(self.num) if v]
        if len(nz) == 1:
            k = nz[0]
            c = self.num[k]
            return CycloScalar(L, [v * c for v in _root(L, (-k) % L).num], self.den)
        counts = np.zeros(L, dtype=object)
        for k in nz:
            counts[(-k) % L] += self.num[k]
        return CycloScalar.from_exponents(L, counts, self.den)

    def inverse(self) -> "CycloScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        nz = [k for k, v in enumerate(self.num) if v]
        if len(nz) == 1:
            # single basis monomial c z^k: check for a root of unity fast path
            k = nz[0]
            c = Fraction(self.num[k], self.den)
            return CycloScalar.root(self.order, -k) * CycloScalar.rational(self.order, 1 / c)
        import sympy

        phi = len(self.num)
        basis = [CycloScalar.root(self.order, k) for k in range(phi)]
        cols = [(self * b).num for b in basis]
        den = self.den
        mat = sympy.Matrix(phi, phi, lambda i, j: sympy.Rational(cols[j][i], den))
        rhs = sympy.Matrix([1] + [0] * (phi - 1))
        sol = mat.LUsolve(rhs)
        fr = [Fraction(int(s.p), int(s.q)) for s in sol]
        common = math.lcm(*[f.denominator for f in fr])
        return CycloScalar(self.order, [int(f * common) for f in fr], common)

    # comparison -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            other = CycloScalar.rational(self.order, other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self.order == other.order and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.num, self.den))
        return self._hash

    # conversion -------------------------------------------------------
    def to_complex(self) -> complex:
        L = self.order
        total = 0j
        for k, v in enumerate(self.num):
            if v:
                total += v * cmath.exp(2j * math.pi * k / L)
        return total / self.den

    def __complex__(self):
        return self.to_complex()

    def coeffs(self) -> dict[int, Fraction]:
        return {k: Fraction(v, self.den) for k, v in enumerate(self.num) if v}

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[k, f.numerator, f.denominator] for k, f in sorted(self.coeffs().items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloScalar":
        L = int(data["order"])
        total = cls.zero(L)
        for k, num, den in data["coeffs"]:
            total = total + cls.root(L, int(k)) * Fraction(int(num), int(den))
        return total

    def __repr__(self):
        terms = [f"{f}*z^{k}" for k, f in self.coeffs().items()]
        return f"CycloScalar(L={self.order}: {' + '.join(terms) or '0'})"


Scalar = Union[CycloScalar, complex]


@lru_cache(maxsize=None)
def _root(L: int, k: int) -> CycloScalar:
    row = reduction_table(L)[k]
    return CycloScalar(L, tuple(int(v) for v in row), 1, _canonical=True)


def _default_order(N: int) -> int:
    return math.lcm(16, 2 * N * N)


@dataclass(frozen=True)
class ScalarContext:
    """Parameters fixing the parafermion phases and the scalar arithmetic."""

    N: int
    zeta_sign: int = 1
    mode: str = EXACT
    L: int = 0
    approx_tol: float = 1e-9
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ParameterError(f"N must be an integer >= 2, got {self.N!r}")
        if self.mode not in (EXACT, APPROX):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.zeta_sign not in (1, -1):
            raise ParameterError("zeta_sign must be +1 or -1")
        if self.N % 2 == 1 and self.zeta_sign != 1:
            object.__setattr__(self, "zeta_sign", 1)
        if not self.L:
            object.__setattr__(self, "L", _default_order(self.N))
        if self.L % (2 * self.N):
            raise ParameterError("L must be a multiple of 2N")

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def with_mode(self, mode: str) -> "ScalarContext":
        return ScalarContext(self.N, self.zeta_sign, mode, self.L, self.approx_tol)

    # phases -----------------------------------------------------------
    @property
    def zeta_exponent(self) -> int:
        """Exponent ``e`` with ``zeta = exp(2 pi i e / L)``."""
        base = self.L // (2 * self.N)
        if self.N % 2 == 1 or self.zeta_sign == -1:
            base += self.L // 2
        return base % self.L

    def root(self, e: int) -> Scalar:
        """``exp(2 pi i e / L)``."""
        if self.exact:
            return CycloScalar.root(self.L, e)
        return cmath.exp(2j * math.pi * (e % self.L) / self.L)

    def zeta_pow(self, k: int) -> Scalar:
        return self.root(k * self.zeta_exponent)

    def q_pow(self, k: int) -> Scalar:
        return self.zeta_pow(2 * k)

    @property
    def zeta(self) -> Scalar:
        return self.zeta_pow(1)

    @property
    def q(self) -> Scalar:
        return self.q_pow(1)

    def chi(self, j: int, k: int) -> Scalar:
        return self.q_pow(j * k)

    # constants --------------------------------------------------------
    @property
    def zero(self) -> Scalar:
        return CycloScalar.zero(self.L) if self.exact else 0j

    @property
    def one(self) -> Scalar:
        return self.scalar(1)

    def scalar(self, value) -> Scalar:
        if self.exact:
            if isinstance(value, CycloScalar):
                return value
            if isinstance(value, complex):
                if value.imag:
                    raise Unrepresentable("complex float has no exact form")
                value = value.real
            if isinstance(value, float):
                value = Fraction(value)
            return CycloScalar.rational(self.L, value)
        if isinstance(value, CycloScalar):
            return value.to_complex()
        return complex(value)

    # helpers ----------------------------------------------------------
    def conj(self, a: Scalar) -> Scalar:
        return a.conj() if isinstance(a, CycloScalar) else complex(a).conjugate()

    def to_complex(self, a) -> complex:
        return a.to_complex() if isinstance(a, CycloScalar) else complex(a)

    def is_zero(self, a: Scalar) -> bool:
        if isinstance(a, CycloScalar):
            return a.is_zero()
        return abs(a) <= self.approx_tol

    def eq(self, a: Scalar, b: Scalar) -> bool:
        if self.exact and isinstance(a, CycloScalar) and isinstance(b, CycloScalar):
            return a == b
        a, b = self.to_complex(a), self.to_complex(b)
        return abs(a - b) <= self.approx_tol * max(1.0, abs(a), abs(b))

    def deviation(self, a: Scalar, b: Scalar) -> float:
        return abs(self.to_complex(a) - self.to_complex(b))

    def inv(self, a: Scalar) -> Scalar:
        if isinstance(a, CycloScalar):
            return a.inverse()
        if a == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return 1 / complex(a)

    def to_json(self, a: Scalar) -> dict:
        if isinstance(a, CycloScalar):
            return a.to_json()
        a = complex(a)
        return {"re": a.real, "im": a.imag}

    def from_json(self, data: dict) -> Scalar:
        if "order" in data:
            value = CycloScalar.from_json(data)
            if value.order != self.L:
                raise ParameterError("scalar order does not match context")
            return value if self.exact else value.to_complex()
        value = complex(float(data.get("re", 0.0)), float(data.get("im", 0.0)))
        if self.exact:
            return self.approximate_to_exact(value)
        return value

    def approximate_to_exact(self, value: complex) -> CycloScalar:
        """Rationalize the real and imaginary parts of a float (denominators up to 10^6)."""
        re_part = Fraction(value.real).limit_denominator(10**6)
        im_part = Fraction(value.imag).limit_denominator(10**6)
        out = CycloScalar.rational(self.L, re_part)
        if im_part:
            out = out + CycloScalar.root(self.L, self.L // 4) * im_part
        return out


def make_context(N: int, zeta_sign: int = 1, mode: str = EXACT, L: int | None = None,
                 approx_tol: float = 1e-9) -> ScalarContext:
    """Build a context with ``zeta = -exp(i pi/N)`` (odd N) or ``sign * exp(i pi/N)`` (even N)."""
    return ScalarContext(int(N), int(zeta_sign), mode, int(L or 0), approx_tol)


def gauss_sum(ctx: ScalarContext) -> Scalar:
    """Unnormalized quadratic sum ``sum_j zeta^(j^2)`` over ``j`` in ``0..N-1``."""
    if ctx.exact:
        counts = [0] * ctx.L
        for j in range(ctx.N):
            counts[(j * j * ctx.zeta_exponent) % ctx.L] += 1
        return CycloScalar.from_exponents(ctx.L, np.array(counts, dtype=np.int64))
    return sum((ctx.zeta_pow(j * j) for j in range(ctx.N)), 0j)


def _omega_exponent(ctx: ScalarContext) -> int:
    """Exponent ``e`` with ``omega = z^e``, found by brute force over ``Z_L``."""
    key = "omega_exp"
    if key in ctx._cache:
        if ctx._cache[key] is None:
            raise Unrepresentable(f"omega is not an order-{ctx.L} root of unity")
        return ctx._cache[key]
    g = sum(cmath.exp(2j * math.pi * ((j * j * ctx.zeta_exponent) % ctx.L) / ctx.L) for j in range(ctx.N))
    omega = g / math.sqrt(ctx.N)
    found = None
    for e in range(ctx.L):
        if abs(cmath.exp(2j * math.pi * e / ctx.L) - omega) < 1e-9:
            found = e
            break
    if found is not None:
        # exact confirmation: (G z^{-e})^2 == N
        s = gauss_sum(ctx.with_mode(EXACT)) * CycloScalar.root(ctx.L, -found)
        if s * s != CycloScalar.rational(ctx.L, ctx.N):
            found = None
    ctx._cache[key] = found
    if found is None:
        raise Unrepresentable(f"omega is not an order-{ctx.L} root of unity")
    return found


def sqrt_n(ctx: ScalarContext) -> Scalar:
    """Positive square root of N."""
    if not ctx.exact:
        return complex(math.sqrt(ctx.N))
    root = math.isqrt(ctx.N)
    if root * root == ctx.N:
        return CycloScalar.rational(ctx.L, root)
    e = _omega_exponent(ctx)
    return gauss_sum(ctx) * CycloScalar.root(ctx.L, -e)


def inv_sqrt_n(ctx: ScalarContext) -> Scalar:
    s = sqrt_n(ctx)
    return s / ctx.N if ctx.exact else 1 / s


def gauss_omega(ctx: ScalarContext) -> Scalar:
    """``omega = N^(-1/2) sum_j zeta^(j^2)``."""
    if ctx.exact:
        return CycloScalar.root(ctx.L, _omega_exponent(ctx))
    return gauss_sum(ctx) / math.sqrt(ctx.N)


def omega_exponent(ctx: ScalarContext) -> int:
    return _omega_exponent(ctx)


def omega_sqrt(ctx: ScalarContext) -> Scalar:
    """Principal square root of omega (argument equal to half of arg(omega) in (-pi, pi])."""
    if ctx.exact:
        e = _omega_exponent(ctx)
        signed = e if e <= ctx.L // 2 else e - ctx.L
        if signed % 2:
            raise Unrepresentable(f"omega^(1/2) is not an order-{ctx.L} root of unity")
        return CycloScalar.root(ctx.L, signed // 2)
    w = complex(gauss_omega(ctx))
    return cmath.exp(0.5j * cmath.phase(w))


def scalar_arithmetic(a: Scalar, b: Scalar | None, op: str, ctx: ScalarContext):
    """Dispatch ``add``, ``mul``, ``conj``, ``inv`` or ``eq`` on context scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return ctx.conj(a)
    if op == "inv":
        if (isinstance(a, CycloScalar) and a.is_zero()) or (not isinstance(a, CycloScalar) and a == 0):
            raise ZeroDivisionError("inverse of zero scalar")
        return ctx.inv(a)
    if op == "eq":
        return ctx.eq(a, b)
    raise ParameterError(f"unknown scalar op {op!r}")
