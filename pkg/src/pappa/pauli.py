"""Parafermion Pauli matrices, quaternions, quadratic models and the Clifford group."""

from __future__ import annotations

import itertools
from fractions import Fraction
from collections import deque

import numpy as np

from .operators import DenseOperator
from .pf import PFElement, jw_rep
from .scalars import ParameterError, ScalarContext, gauss_omega, inv_sqrt_n

VERSIONS = ("q", "q_inv")
MODEL_TAGS = ("q,1", "q_inv,4", "q,4", "q_inv,1")


def _check_version(version: str) -> int:
    if version not in VERSIONS:
        raise ParameterError(f"unknown Pauli version {version!r}; expected one of {VERSIONS}")
    return 1 if version == "q" else -1


def pauli_xyz(ctx: ScalarContext, version: str = "q") -> tuple[DenseOperator, DenseOperator, DenseOperator]:
    """``(X, Y, Z)`` on ``C^N``.

    Version ``q``: ``X|k> = |k+1>``, ``Y|k> = zeta^{1-2k}|k-1>``.
    Version ``q_inv``: ``X|k> = |k-1>``, ``Y|k> = zeta^{-2k-1}|k+1>``.
    Both use ``Z|k> = q^k|k>``.
    """
    s = _check_version(version)
    N = ctx.N
    k = np.arange(N)
    X = DenseOperator.phase_perm(ctx, (k + s) % N, np.zeros(N, dtype=np.int64))
    Y = DenseOperator.phase_perm(ctx, (k - s) % N, s - 2 * k, unit="zeta")
    Z = DenseOperator.phase_perm(ctx, k, k)
    return X, Y, Z


def quaternions(ctx: ScalarContext, version: str = "q") -> tuple[DenseOperator, DenseOperator, DenseOperator]:
    """``(i, j, k) = (-zeta^s Y, -zeta^s X, -zeta^{-s} Z)`` with ``s = +1`` for version ``q``."""
    s = _check_version(version)
    X, Y, Z = pauli_xyz(ctx, version)
    a, b = -ctx.zeta_pow(s), -ctx.zeta_pow(-s)
    return Y.scale(a), X.scale(a), Z.scale(b)


def _identity(ctx: ScalarContext, dim: int) -> DenseOperator:
    return DenseOperator.identity(ctx, dim)


def _relation(name: str, lhs: DenseOperator, rhs: DenseOperator) -> dict:
    return {"identity": name, "pass": bool(lhs.equals(rhs)), "max_deviation": lhs.deviation(rhs)}


def pauli_relations(ctx: ScalarContext, version: str = "q") -> list[dict]:
    """Commutation, order, cyclic product and unitarity relations for one version."""
    s = _check_version(version)
    X, Y, Z = pauli_xyz(ctx, version)
    one = _identity(ctx, ctx.N)
    qs = ctx.q_pow(s)
    out = [_relation(f"{n}^N = 1", M ** ctx.N, one) for n, M in zip("XYZ", (X, Y, Z))]
    out += [
        _relation("XY = q^s YX", X @ Y, (Y @ X).scale(qs)),
        _relation("YZ = q^s ZY", Y @ Z, (Z @ Y).scale(qs)),
        _relation("ZX = q^s XZ", Z @ X, (X @ Z).scale(qs)),
    ]
    z = one.scale(ctx.zeta_pow(s))
    out += [
        _relation("XYZ = zeta^s", X @ Y @ Z, z),
        _relation("YZX = zeta^s", Y @ Z @ X, z),
        _relation("ZXY = zeta^s", Z @ X @ Y, z),
    ]
    out += [_relation(f"{n} unitary", M @ M.dagger(), one) for n, M in zip("XYZ", (X, Y, Z))]
    for rec in out:
        rec["version"] = version
    return out


def quaternion_relations(ctx: ScalarContext, version: str = "q") -> list[dict]:
    s = _check_version(version)
    i, j, k = quaternions(ctx, version)
    one = _identity(ctx, ctx.N)
    minus = one.scale(-1)
    qs = ctx.q_pow(-s)
    out = [_relation(f"{n}^N = -1", M ** ctx.N, minus) for n, M in zip("ijk", (i, j, k))]
    out += [
        _relation("ij = q^-s ji", i @ j, (j @ i).scale(qs)),
        _relation("jk = q^-s kj", j @ k, (k @ j).scale(qs)),
        _relation("ki = q^-s ik", k @ i, (i @ k).scale(qs)),
        _relation("ijk = -1", i @ j @ k, minus),
    ]
    for rec in out:
        rec["version"] = version
    return out


# ----------------------------------------------------------------------
# quadratic models on four parafermions

# (version, exponent of gamma in XYZ, [(p, power), (p, power)] for X, Y, Z)
_MODELS = {
    "q,1": ("q", 1, [((1, 1), (4, -1)), ((1, -1), (3, 1)), ((1, 1), (2, -1))]),
    "q_inv,4": ("q_inv", -1, [((1, -1), (4, 1)), ((2, 1), (4, -1)), ((3, -1), (4, 1))]),
    "q,4": ("q", -1, [((3, -1), (4, 1)), ((2, 1), (4, -1)), ((1, -1), (4, 1))]),
    "q_inv,1": ("q_inv", -1, [((1, -1), (2, 1)), ((1, 1), (3, -1)), ((1, -1), (4, 1))]),
}


def _quadratic(ctx: ScalarContext, pair) -> PFElement:
    (p1, e1), (p2, e2) = pair
    a = PFElement.generator(ctx, 4, p1, e1) * PFElement.generator(ctx, 4, p2, e2)
    return a.scale(ctx.zeta)


def grading_element(ctx: ScalarContext) -> PFElement:
    """``gamma = q c_1 c_2^{-1} c_3 c_4^{-1}`` in PF_4."""
    g = PFElement.identity(ctx, 4)
    for p, e in ((1, 1), (2, -1), (3, 1), (4, -1)):
        g = g * PFElement.generator(ctx, 4, p, e)
    return g.scale(ctx.q)


def quadratic_model(ctx: ScalarContext, tag: str):
    """``(Xh, Yh, Zh, gamma)`` as ``N^4``-dimensional Jordan-Wigner matrices."""
    tag = tag.replace("q-1", "q_inv").replace("q^-1", "q_inv").replace(" ", "")
    if tag not in _MODELS:
        raise ParameterError(f"unknown quadratic model {tag!r}; expected one of {MODEL_TAGS}")
    _, _, pairs = _MODELS[tag]
    mats = [jw_rep(_quadratic(ctx, pair)) for pair in pairs]
    return (*mats, jw_rep(grading_element(ctx)))


def gamma_projection(ctx: ScalarContext, gamma: DenseOperator) -> DenseOperator:
    """Projection ``N^{-1} sum_k gamma^k`` onto the ``gamma = 1`` eigenspace."""
    acc = _identity(ctx, gamma.dim)
    power = acc
    for _ in range(ctx.N - 1):
        power = power @ gamma
        acc = acc + power
    return acc.scale(ctx.scalar(Fraction(1, ctx.N)))


def eigenspace_dimension(ctx: ScalarContext, P: DenseOperator) -> int:
    tr = P.trace()
    value = ctx.to_complex(tr)
    return int(round(value.real))


def quadratic_relations(ctx: ScalarContext, tag: str) -> list[dict]:
    """Relation set of one model, the gamma product law and the Pauli laws on ``gamma = 1``."""
    tag = tag.replace(" ", "")
    X, Y, Z, gamma = quadratic_model(ctx, tag)
    version, gexp, _ = _MODELS[tag]
    s = _check_version(version)
    one = _identity(ctx, X.dim)
    qs = ctx.q_pow(s)
    g = gamma if gexp > 0 else gamma.dagger()
    zg = g.scale(ctx.zeta_pow(s))
    out = [_relation(f"{n}^N = 1", M ** ctx.N, one) for n, M in zip("XYZ", (X, Y, Z))]
    out += [
        _relation("XY = q^s YX", X @ Y, (Y @ X).scale(qs)),
        _relation("YZ = q^s ZY", Y @ Z, (Z @ Y).scale(qs)),
        _relation("ZX = q^s XZ", Z @ X, (X @ Z).scale(qs)),
        _relation("XYZ = zeta^s gamma^e", X @ Y @ Z, zg),
        _relation("YZX = zeta^s gamma^e", Y @ Z @ X, zg),
        _relation("ZXY = zeta^s gamma^e", Z @ X @ Y, zg),
        _relation("gamma^N = 1", gamma ** ctx.N, one),
    ]
    out += [_relation(f"gamma commutes with {n}", gamma @ M, M @ gamma) for n, M in zip("XYZ", (X, Y, Z))]
    P = gamma_projection(ctx, gamma)
    out.append(_relation("P idempotent", P @ P, P))
    zP = P.scale(ctx.zeta_pow(s))
    out += [
        _relation("XYZ = zeta^s on gamma=1", X @ Y @ Z @ P, zP),
        _relation("XY = q^s YX on gamma=1", X @ Y @ P, (Y @ X @ P).scale(qs)),
        _relation("X^N = 1 on gamma=1", (X ** ctx.N) @ P, P),
    ]
    dim = eigenspace_dimension(ctx, P)
    out.append({"identity": "dim(gamma=1) = N^3", "pass": dim == ctx.N ** 3,
                "max_deviation": float(abs(dim - ctx.N ** 3))})
    for rec in out:
        rec["model"] = tag
    return out


# ----------------------------------------------------------------------
# Fourier, Gaussian and the Clifford group


def fourier_gaussian(ctx: ScalarContext) -> tuple[DenseOperator, DenseOperator]:
    """``F[l, k] = q^{kl} / sqrt(N)`` and ``G = diag(zeta^{k^2})``."""
    N = ctx.N
    k = np.arange(N)
    c = inv_sqrt_n(ctx)
    rows = [[ctx.q_pow(a * b) * c for b in range(N)] for a in range(N)]
    F = DenseOperator.from_scalars(ctx, rows)
    G = DenseOperator.phase_perm(ctx, k, k * k, unit="zeta")
    return F, G


def ad_matrix(U: DenseOperator, ctx: ScalarContext, convention: str = "column") -> np.ndarray:
    """Integer matrix of ``P -> U P U^*`` on exponent vectors ``(i, j)`` of ``X^i Z^j``.

    ``column`` puts the image of ``X`` in the first column, ``row`` in the first row.
    """
    X, _, Z = pauli_xyz(ctx.with_mode("approx"), "q")
    Ua = U.to_complex()
    cols = []
    for P in (X, Z):
        image = Ua @ P.array @ Ua.conj().T
        cols.append(_pauli_exponents(image, ctx.N))
    M = np.array(cols, dtype=np.int64).T % ctx.N
    return M if convention == "column" else M.T


def _pauli_exponents(M: np.ndarray, N: int) -> tuple[int, int]:
    """``(i, j)`` with ``M`` proportional to ``X^i Z^j`` (version ``q``)."""
    col = np.argmax(np.abs(M[:, 0]) > 1e-9)
    i = int(col) % N
    diag = np.array([M[(k + i) % N, k] for k in range(N)])
    ratio = diag[1] / diag[0] if N > 1 else 1.0
    j = int(round(np.angle(ratio) / (2 * np.pi / N))) % N
    X = np.roll(np.eye(N), i, axis=0)
    Z = np.diag(np.exp(2j * np.pi * np.arange(N) * j / N))
    P = X @ Z
    phase = M[i % N, 0] / P[i % N, 0]
    if not np.allclose(M, phase * P, atol=1e-8):
        raise ParameterError("conjugate is not a Pauli monomial")
    return i, j


def sl2_order(N: int) -> int:
    """``|SL(2, Z_N)|`` by brute-force count of determinant-one matrices."""
    count = 0
    for a, b, c, d in itertools.product(range(N), repeat=4):
        if (a * d - b * c) % N == 1:
            count += 1
    return count


def _projective_key(M: np.ndarray, decimals: int = 7) -> bytes:
    flat = M.ravel()
    idx = int(np.argmax(np.abs(flat) > 1e-9))
    phase = flat[idx] / abs(flat[idx])
    norm = M / phase
    r = np.round(norm, decimals) + 0.0
    return np.concatenate([r.real, r.imag]).tobytes()


class CliffordElement:
    """A unitary taken up to a global phase."""

    __slots__ = ("matrix", "key")

    def __init__(self, matrix: np.ndarray):
        self.matrix = np.asarray(matrix, dtype=complex)
        self.key = _projective_key(self.matrix)

    def __eq__(self, other):
        return isinstance(other, CliffordElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def clifford_enumerate(ctx: ScalarContext, cap: int = 100000) -> dict:
    """Breadth-first closure of ``{X, Z, F, G}`` modulo global phases."""
    actx = ctx.with_mode("approx")
    X, _, Z = pauli_xyz(actx, "q")
    F, G = fourier_gaussian(actx)
    gens = [X.array, Z.array, F.array, G.array]
    start = CliffordElement(np.eye(ctx.N))
    seen = {start.key}
    frontier = deque([start.matrix])
    closed = True
    while frontier:
        M = frontier.popleft()
        for g in gens:
            P = g @ M
            key = _projective_key(P)
            if key not in seen:
                if len(seen) >= cap:
                    closed = False
                    frontier.clear()
                    break
                seen.add(key)
                frontier.append(P)
    return {"order": len(seen), "closed": closed}


def clifford_relations(ctx: ScalarContext) -> list[dict]:
    """Relations among ``X, Y, Z, F, G`` and the adjoint actions of ``F`` and ``G``."""
    X, Y, Z = pauli_xyz(ctx, "q")
    F, G = fourier_gaussian(ctx)
    Fi, Gi = F.dagger(), G.dagger()
    one = _identity(ctx, ctx.N)
    out = [
        _relation("F unitary", F @ Fi, one),
        _relation("G unitary", G @ Gi, one),
        _relation("F X F^-1 = Z", F @ X @ Fi, Z),
        _relation("F Z F^-1 = X^-1", F @ Z @ Fi, X.dagger()),
        _relation("G X G^-1 = zeta X Z", G @ X @ Gi, (X @ Z).scale(ctx.zeta)),
        _relation("G X G^-1 = Y^-1", G @ X @ Gi, Y.dagger()),
        _relation("G Z G^-1 = Z", G @ Z @ Gi, Z),
        _relation("(FG)^3 = omega", (F @ G) ** 3, one.scale(gauss_omega(ctx))),
        _relation("F^4 = 1", F ** 4, one),
        _relation("G^N = 1", G ** ctx.N, one),
        _relation("F^2 G = G F^2", F @ F @ G, G @ F @ F),
    ]
    S = np.array([[0, -1], [1, 0]]) % ctx.N
    T = np.array([[1, 1], [0, 1]]) % ctx.N
    adF = ad_matrix(F, ctx, "column")
    adG = ad_matrix(G, ctx, "row")
    out.append({"identity": "Ad_F = S", "pass": bool(np.array_equal(adF, S)),
                "max_deviation": float(np.abs(adF - S).max())})
    out.append({"identity": "Ad_G = T", "pass": bool(np.array_equal(adG, T)),
                "max_deviation": float(np.abs(adG - T).max())})
    return out
