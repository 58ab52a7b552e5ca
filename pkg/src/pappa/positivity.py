"""Reflection-symmetric Hamiltonians and reflection-positivity checks.

A coupling matrix ``J`` indexed by pairs of multi-indices in ``(Z_N)^m`` gives
``-H = sum J_I^{I'} Theta(C_I) (x)t C_{I'}`` in PF_{2m}.  Reflection positivity
of ``e^{-beta H}`` is tested through the sesquilinear form
``<x, y> = tr(e^{-beta H} sum_g zeta^{g^2} Theta(x_g) (x)+ y_g)`` on PF_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import _kernels
from .operators import DenseOperator
from .pf import (
    PFElement,
    even_matrix_units,
    graded_tensor,
    homogeneous_parts,
    jw_rep,
    markov_trace,
    pf_star,
    reflect_theta,
    reflected_pair,
    sft_power,
)
from .scalars import ParameterError, ScalarContext, sqrt_n

DEFAULT_BETAS = (0.0, 0.25, 0.5, 1.0, 2.0)


class InvalidCoupling(ParameterError):
    """Coupling matrix is not Hermitian or has graded support."""


def multi_indices(N: int, m: int) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in row) for row in _kernels.digits(N, m)]


@dataclass
class CouplingMatrix:
    """Couplings ``J_I^{I'}`` keyed by ``(I, I')``; missing keys are zero."""

    ctx: ScalarContext
    m: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        N = self.ctx.N
        clean = {}
        for (I, J), v in self.entries.items():
            I = tuple(int(i) % N for i in I)
            J = tuple(int(j) % N for j in J)
            if len(I) != self.m or len(J) != self.m:
                raise InvalidCoupling(f"index pair {I}, {J} does not have length {self.m}")
            v = self.ctx.scalar(v)
            if not self.ctx.is_zero(v):
                clean[(I, J)] = v
        self.entries = clean
        self.validate()

    def validate(self):
        ctx = self.ctx
        for (I, J), v in self.entries.items():
            if (sum(I) - sum(J)) % ctx.N:
                raise InvalidCoupling(f"entry {I},{J} is not zero-graded")
            w = self.entries.get((J, I), ctx.zero)
            if not ctx.eq(v, ctx.conj(w)):
                raise InvalidCoupling(f"entry {I},{J} breaks Hermiticity")

    def get(self, I, J):
        return self.entries.get((tuple(I), tuple(J)), self.ctx.zero)

    def to_array(self) -> np.ndarray:
        idx = multi_indices(self.ctx.N, self.m)
        pos = {I: k for k, I in enumerate(idx)}
        out = np.zeros((len(idx), len(idx)), dtype=complex)
        for (I, J), v in self.entries.items():
            out[pos[I], pos[J]] = self.ctx.to_complex(v)
        return out

    @classmethod
    def from_array(cls, ctx: ScalarContext, m: int, array) -> "CouplingMatrix":
        idx = multi_indices(ctx.N, m)
        arr = np.asarray(array)
        entries = {(I, J): arr[a, b] for a, I in enumerate(idx) for b, J in enumerate(idx) if arr[a, b] != 0}
        if not ctx.exact:
            entries = {k: complex(v) for k, v in entries.items()}
        return cls(ctx, m, entries)

    def crossing_block(self) -> np.ndarray:
        """``J_0``: rows and columns whose multi-index is not all zero."""
        arr = self.to_array()
        return arr[1:, 1:]

    # JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        rows = []
        for (I, J), v in sorted(self.entries.items()):
            c = self.ctx.to_complex(v)
            rows.append({"row": list(I), "col": list(J), "re": c.real, "im": c.imag})
        return {"N": self.ctx.N, "m": self.m, "entries": rows}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> "CouplingMatrix":
        try:
            if int(data["N"]) != ctx.N:
                raise InvalidCoupling("coupling N does not match the context")
            m = int(data["m"])
            entries = {}
            for e in data["entries"]:
                value = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
                if ctx.exact:
                    value = ctx.approximate_to_exact(value)
                entries[(tuple(e["row"]), tuple(e["col"]))] = value
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidCoupling(f"malformed coupling JSON: {exc}") from exc
        return cls(ctx, m, entries)


def random_coupling(ctx: ScalarContext, m: int, rng: np.random.Generator, psd: bool | None = None,
                    denominator: int = 4, scale: int = 4) -> CouplingMatrix:
    """Random Hermitian zero-graded couplings with entries in ``(Z + iZ) / denominator``.

    ``psd=True`` rebuilds the crossing block as ``A A^*`` per grade sector, ``False``
    leaves it as drawn, and ``None`` picks either with equal odds.
    """
    N = ctx.N
    idx = multi_indices(N, m)
    n = len(idx)
    grade = np.array([sum(I) % N for I in idx])
    same = grade[:, None] == grade[None, :]
    raw = rng.integers(-scale, scale + 1, size=(n, n)) + 1j * rng.integers(-scale, scale + 1, size=(n, n))
    J = np.where(same, raw + raw.conj().T, 0)
    if psd is None:
        psd = bool(rng.integers(0, 2))
    if psd:
        A = rng.integers(-2, 3, size=(n - 1, n - 1)) + 1j * rng.integers(-2, 3, size=(n - 1, n - 1))
        A = np.where(same[1:, 1:], A, 0)
        J[1:, 1:] = A @ A.conj().T
        J[1:, 1:] = np.where(same[1:, 1:], J[1:, 1:], 0)
    entries = {}
    for a, I in enumerate(idx):
        for b, K in enumerate(idx):
            v = J[a, b]
            if v != 0:
                re, im = int(round(v.real)), int(round(v.imag))
                if ctx.exact:
                    val = ctx.scalar(Fraction(re, denominator))
                    if im:
                        val = val + ctx.root(ctx.L // 4) * Fraction(im, denominator)
                else:
                    val = complex(re, im) / denominator
                entries[(I, K)] = val
    return CouplingMatrix(ctx, m, entries)


# ----------------------------------------------------------------------
# Hamiltonian and its Fourier-transformed matrix


def build_hamiltonian(J: CouplingMatrix) -> PFElement:
    """``H`` in PF_{2m} with ``-H = sum J_I^{I'} Theta(C_I) (x)t C_{I'}``."""
    ctx, m = J.ctx, J.m
    minus_h = PFElement.zero(ctx, 2 * m)
    for (I, K), v in sorted(J.entries.items()):
        pair = reflected_pair(PFElement.monomial(ctx, m, I), PFElement.monomial(ctx, m, K))
        minus_h = minus_h + pair.scale(v)
    return -minus_h


def sft_matrix(J: CouplingMatrix) -> DenseOperator:
    """Coefficients of ``sft^{-m}(-H)`` on the units ``v_I^{I'}``, namely ``N^{m/2} J``."""
    ctx = J.ctx
    idx = multi_indices(ctx.N, J.m)
    c = sqrt_n(ctx) ** J.m
    rows = [[J.get(I, K) * c for K in idx] for I in idx]
    return DenseOperator.from_scalars(ctx, rows)


def sft_matrix_oracle(J: CouplingMatrix) -> DenseOperator:
    """Same matrix computed by rotating ``-H`` with ``m`` inverse string Fourier transforms.

    Coefficients are read off with the trace, ``c_{KL} = tau(x v_L^K) / tau(v_K^K)``,
    and the residual ``x - sum c_{KL} v_K^L`` must vanish.
    """
    ctx, m = J.ctx, J.m
    x = sft_power(-build_hamiltonian(J), -m)
    units = even_matrix_units(ctx, m)
    idx = multi_indices(ctx.N, m)
    rows = []
    rebuilt = PFElement.zero(ctx, 2 * m)
    for K in idx:
        norm = markov_trace(units[(K, K)])
        inv = ctx.inv(norm) if not ctx.exact else _rational_inverse(ctx, norm)
        row = []
        for L in idx:
            coeff = markov_trace(x * units[(L, K)]) * inv
            row.append(coeff)
            rebuilt = rebuilt + units[(K, L)].scale(coeff)
        rows.append(row)
    if not (rebuilt - x).is_zero():
        raise ArithmeticError("rotated Hamiltonian is not in the span of the matrix units")
    return DenseOperator.from_scalars(ctx, rows)


def _rational_inverse(ctx: ScalarContext, a):
    nonzero = {k: v for k, v in a.coeffs().items() if v}
    if set(nonzero) == {0}:
        return ctx.scalar(1 / nonzero[0])
    return ctx.inv(a)


# ----------------------------------------------------------------------
# positivity tests


def j0_psd(J: CouplingMatrix, tol: float = 1e-8) -> bool:
    block = J.crossing_block()
    if block.size == 0:
        return True
    return bool(np.linalg.eigvalsh((block + block.conj().T) / 2).min() >= -tol)


def _exp_minus_beta_h(H: DenseOperator, beta: float) -> np.ndarray:
    # H is reflection invariant but need not be self-adjoint
    return scipy.linalg.expm(-beta * H.to_complex())


def _pairing_matrices(ctx: ScalarContext, m: int) -> dict:
    """``zeta^{g^2} Theta(C_I) (x)+ C_K`` as complex matrices, for same-grade pairs."""
    key = ("rp_pairings", m, ctx.mode)
    if key in ctx._cache:
        return ctx._cache[key]
    idx = multi_indices(ctx.N, m)
    out = {}
    for a, I in enumerate(idx):
        x = PFElement.monomial(ctx, m, I)
        g = sum(I) % ctx.N
        tx = reflect_theta(x).scale(ctx.zeta_pow(g * g))
        for b, K in enumerate(idx):
            if sum(K) % ctx.N != g:
                continue
            out[(a, b)] = jw_rep(graded_tensor(tx, PFElement.monomial(ctx, m, K))).to_complex()
    ctx._cache[key] = out
    return out


def gram_matrix(J: CouplingMatrix, beta: float, weight: np.ndarray | None = None) -> np.ndarray:
    """``<C_I, C_K>_Theta`` over the monomial basis; ``weight`` replaces ``e^{-beta H}``."""
    ctx = J.ctx.with_mode("approx") if J.ctx.exact else J.ctx
    if weight is None:
        H = jw_rep(build_hamiltonian(_as_approx(J)))
        weight = _exp_minus_beta_h(H, beta)
    n = ctx.N ** J.m
    dim = weight.shape[0]
    gram = np.zeros((n, n), dtype=complex)
    for (a, b), M in _pairing_matrices(ctx, J.m).items():
        gram[a, b] = np.trace(weight @ M) / dim
    return gram


def _as_approx(J: CouplingMatrix) -> CouplingMatrix:
    if not J.ctx.exact:
        return J
    actx = J.ctx.with_mode("approx")
    return CouplingMatrix(actx, J.m, {k: J.ctx.to_complex(v) for k, v in J.entries.items()})


@dataclass
class RPReport:
    values: list
    minimum: float
    verdict: bool
    witness: dict | None = None
    lift_convention: str = "canonical lifts in 0..N-1"

    def to_json(self) -> dict:
        return {"values": self.values, "minimum": self.minimum, "verdict": self.verdict,
                "witness": self.witness, "lift_convention": self.lift_convention}


def _value(weight: np.ndarray, x: PFElement) -> complex:
    ctx = x.ctx
    total = 0j
    for g, xg in homogeneous_parts(x).items():
        pair = graded_tensor(reflect_theta(xg).scale(ctx.zeta_pow(g * g)), xg)
        total += np.trace(weight @ jw_rep(pair).to_complex()) / weight.shape[0]
    return total


def rp_check(J: CouplingMatrix, betas=DEFAULT_BETAS, xs=None, tol: float = 1e-8,
             slope_probe: bool = True) -> RPReport:
    """Evaluate ``tr(e^{-beta H} (Theta(x) (x)t x))``.

    With ``xs=None`` every vector of PF_m is covered: the report holds the least
    eigenvalue of the Gram matrix over the monomial basis for each ``beta``, with
    its eigenvector as witness.

    A finite grid can miss violations that only live at small ``beta``.  With
    ``slope_probe`` the report also holds the right derivative at ``beta = 0``
    on vectors whose value vanishes there, recorded as ``beta = "0+"``.
    """
    betas = [float(b) for b in betas]
    if any(b < 0 for b in betas):
        raise ParameterError("beta must be non-negative")
    AJ = _as_approx(J)
    actx = AJ.ctx
    H = jw_rep(build_hamiltonian(AJ))
    if xs is not None:
        xs = [PFElement(actx, x.m, {I: x.ctx.to_complex(a) for I, a in x.coeffs.items()})
              if x.ctx.exact else x for x in xs]
    values, witness = [], None
    minimum = math.inf
    for beta in betas:
        weight = _exp_minus_beta_h(H, beta)
        if xs is None:
            gram = gram_matrix(AJ, beta, weight)
            w, V = np.linalg.eigh((gram + gram.conj().T) / 2)
            val = float(w[0])
            values.append({"beta": beta, "x": "gram_min", "value": val})
            if val < minimum:
                minimum = val
                witness = {"beta": beta, "coefficients": [[c.real, c.imag] for c in V[:, 0]]}
        else:
            for k, x in enumerate(xs):
                v = _value(weight, x)
                values.append({"beta": beta, "x": k, "value": v.real, "imag": v.imag})
                if v.real < minimum:
                    minimum = v.real
                    witness = {"beta": beta, "x": k}
    if slope_probe:
        val, wit = _slope(AJ, H, xs, tol)
        values.append({"beta": "0+", "x": "slope", "value": val})
        if val < minimum:
            minimum, witness = val, wit
    return RPReport(values, float(minimum), bool(minimum >= -tol), witness)


def _slope(J: CouplingMatrix, H: DenseOperator, xs, tol: float):
    """Least ``d/dbeta`` at ``beta = 0`` over vectors with vanishing value at ``beta = 0``."""
    minus_h = -H.to_complex()
    if xs is not None:
        eye = np.eye(minus_h.shape[0], dtype=complex)
        best, wit = math.inf, None
        for k, x in enumerate(xs):
            if abs(_value(eye, x)) <= tol:
                v = _value(minus_h, x).real
                if v < best:
                    best, wit = v, {"beta": "0+", "x": k}
        return (best, wit) if wit else (0.0, None)
    g0 = gram_matrix(J, 0.0)
    g1 = gram_matrix(J, 0.0, minus_h)
    w, V = np.linalg.eigh((g0 + g0.conj().T) / 2)
    null = V[:, np.abs(w) <= tol]
    if null.shape[1] == 0:
        return 0.0, None
    restricted = null.conj().T @ ((g1 + g1.conj().T) / 2) @ null
    mu, U = np.linalg.eigh(restricted)
    vec = null @ U[:, 0]
    return float(mu[0]), {"beta": "0+", "coefficients": [[c.real, c.imag] for c in vec]}


def rp_series_terms(J: CouplingMatrix, x: PFElement, K: int) -> list:
    """``tr((-H)^k Theta(x) (x)t x)`` for ``k = 0..K`` in the context's arithmetic."""
    ctx = J.ctx
    minus_h = -build_hamiltonian(J)
    pair = PFElement.zero(ctx, 2 * J.m)
    for g, xg in homogeneous_parts(x).items():
        pair = pair + graded_tensor(reflect_theta(xg).scale(ctx.zeta_pow(g * g)), xg)
    out = []
    power = PFElement.identity(ctx, 2 * J.m)
    for _ in range(K + 1):
        out.append(markov_trace(power * pair))
        power = power * minus_h
    return out


def theorem_equivalence(ensemble, betas=DEFAULT_BETAS, tol: float = 1e-8) -> dict:
    """Compare ``J_0 >= 0`` with reflection positivity of ``e^{-beta H}`` for each coupling."""
    mismatches = []
    positives = 0
    for n, J in enumerate(ensemble):
        psd = j0_psd(J, tol)
        report = rp_check(J, betas, None, tol)
        positives += psd
        if psd != report.verdict:
            mismatches.append({"index": n, "j0_psd": psd, "rp": report.verdict,
                               "minimum": report.minimum, "witness": report.witness,
                               "coupling": J.to_json()})
    return {"count": len(ensemble), "j0_psd_count": positives, "mismatches": mismatches,
            "pass": not mismatches}


def quantized_gram(J: CouplingMatrix, beta: float, xs=None, K: int = 20) -> dict:
    """Gram matrix of ``<x, y>_Theta`` with ``e^{-beta H}`` truncated at order ``K``.

    ``xs=None`` uses the monomial basis.  When ``J_0`` is not positive the
    report names its least eigenvalue instead of a Gram matrix.
    """
    if beta < 0:
        raise ParameterError("beta must be non-negative")
    block = J.crossing_block()
    if block.size and not j0_psd(J):
        return {"precondition": False, "j0_min_eigenvalue": float(np.linalg.eigvalsh(block).min())}
    AJ = _as_approx(J)
    h = jw_rep(build_hamiltonian(AJ)).to_complex()
    weight = np.eye(h.shape[0], dtype=complex)
    term = weight
    for k in range(1, K + 1):
        term = term @ (-beta * h) / k
        weight = weight + term
    basis = gram_matrix(AJ, beta, weight)
    if xs is None:
        gram = basis
    else:
        n = AJ.ctx.N ** J.m
        coeffs = np.zeros((len(xs), n), dtype=complex)
        for r, x in enumerate(xs):
            for I, a in x.coeffs.items():
                coeffs[r, _code(I, AJ.ctx.N)] = x.ctx.to_complex(a)
        gram = coeffs.conj() @ basis @ coeffs.T
    herm = (gram + gram.conj().T) / 2
    idx = multi_indices(AJ.ctx.N, J.m)
    grades = np.array([sum(I) % AJ.ctx.N for I in idx])
    cross = float(np.abs(basis[grades[:, None] != grades[None, :]]).max(initial=0.0))
    return {"precondition": True, "gram": gram, "min_eigenvalue": float(np.linalg.eigvalsh(herm).min()),
            "hermitian_defect": float(np.abs(gram - gram.conj().T).max()), "cross_grade_max": cross}


def _code(I, N):
    out = 0
    for i in I:
        out = out * N + int(i) % N
    return out


def basis_elements(ctx: ScalarContext, m: int) -> list[PFElement]:
    return [PFElement.monomial(ctx, m, I) for I in multi_indices(ctx.N, m)]


def is_hermitian(H: PFElement) -> bool:
    return (pf_star(H) - H).is_zero()


def is_reflection_invariant(H: PFElement) -> bool:
    return (reflect_theta(H) - H).is_zero()


__all__ = [
    "CouplingMatrix",
    "InvalidCoupling",
    "RPReport",
    "basis_elements",
    "build_hamiltonian",
    "gram_matrix",
    "is_hermitian",
    "is_reflection_invariant",
    "j0_psd",
    "quantized_gram",
    "random_coupling",
    "rp_check",
    "rp_series_terms",
    "sft_matrix",
    "sft_matrix_oracle",
    "theorem_equivalence",
]
