"""Braids ``b+`` and ``b-`` in PF_2 and the identities they satisfy.

``b- = omega^{1/2} N^{-1/2} sum_i zeta^{-i^2} u_i`` and
``b+ = omega^{-1/2} N^{-1/2} sum_i zeta^{i^2} u_i`` with
``u_i = zeta^{i^2} c_1^{-i} c_2^{i}``.  This is the only prefactor pattern
that is unitary, star-compatible, swapped by the string Fourier transform,
has Reidemeister-I scalars ``omega^{+-1/2}`` and solves Yang-Baxter.
"""

from __future__ import annotations

from .operators import DenseOperator
from .pf import (
    PFElement,
    conditional_expectation,
    jw_rep,
    normalized_trace,
    pf_star,
    place,
    sft,
    zero_graded_two_box,
)
from .scalars import ParameterError, ScalarContext, inv_sqrt_n, omega_sqrt, sqrt_n


def braid_elements(ctx: ScalarContext) -> tuple[PFElement, PFElement]:
    """``(b+, b-)`` as elements of PF_2."""
    key = "braids"
    if key in ctx._cache:
        return ctx._cache[key]
    half = omega_sqrt(ctx)
    pre_minus = half * inv_sqrt_n(ctx)
    pre_plus = ctx.conj(half) * inv_sqrt_n(ctx)
    plus, minus = PFElement.zero(ctx, 2), PFElement.zero(ctx, 2)
    for i in range(ctx.N):
        u = zero_graded_two_box(ctx, i)
        plus = plus + u.scale(pre_plus * ctx.zeta_pow(i * i))
        minus = minus + u.scale(pre_minus * ctx.zeta_pow(-i * i))
    ctx._cache[key] = (plus, minus)
    return plus, minus


def braid_matrices(ctx: ScalarContext) -> tuple[DenseOperator, DenseOperator]:
    """Jordan-Wigner images of ``(b+, b-)`` on ``N^2`` dimensions."""
    plus, minus = braid_elements(ctx)
    return jw_rep(plus), jw_rep(minus)


def braid_generator(ctx: ScalarContext, m: int, p: int, sign: int) -> PFElement:
    """Crossing of strings ``p`` and ``p+1`` in PF_m; ``sign`` is +1 for ``b+``."""
    if not 1 <= p <= m - 1:
        raise ParameterError(f"crossing index {p} out of range 1..{m - 1}")
    plus, minus = braid_elements(ctx)
    return place(plus if sign > 0 else minus, m, p - 1)


def _chain(ctx: ScalarContext, m: int, sign: int, order: str) -> PFElement:
    """``b_m ... b_1`` (``down``) or ``b_1 ... b_m`` (``up``) in PF_{m+1}."""
    idx = range(m, 0, -1) if order == "down" else range(1, m + 1)
    out = PFElement.identity(ctx, m + 1)
    for p in idx:
        out = out * braid_generator(ctx, m + 1, p, sign)
    return out


def _basis(ctx: ScalarContext, m: int):
    import itertools

    for I in itertools.product(range(ctx.N), repeat=m):
        yield I, PFElement.monomial(ctx, m, I)


def _compare(lhs: PFElement, rhs: PFElement) -> tuple[bool, float]:
    a, b = jw_rep(lhs), jw_rep(rhs)
    return a.equals(b), a.deviation(b)


def _record(name: str, results) -> dict:
    ok = all(r[0] for r in results)
    dev = max((r[1] for r in results), default=0.0)
    return {"identity": name, "pass": bool(ok), "max_deviation": float(dev), "cases": len(results)}


def verify_braid_axioms(ctx: ScalarContext) -> list[dict]:
    """Check the braid identities as Jordan-Wigner matrix identities, one record each."""
    plus, minus = braid_elements(ctx)
    one2 = PFElement.identity(ctx, 2)
    one1 = PFElement.identity(ctx, 1)
    half = omega_sqrt(ctx)
    root = sqrt_n(ctx)
    report = []

    report.append(_record("reidemeister_2", [_compare(plus * minus, one2), _compare(minus * plus, one2)]))
    report.append(_record("star", [_compare(pf_star(minus), plus)]))
    report.append(_record("fourier_swap", [_compare(sft(plus), minus), _compare(sft(minus), plus)]))
    report.append(_record("reidemeister_1", [
        _compare(conditional_expectation(minus).scale(root), one1.scale(half)),
        _compare(conditional_expectation(plus).scale(root), one1.scale(ctx.conj(half))),
    ]))

    yb = []
    for sign in (1, -1):
        b1, b2 = braid_generator(ctx, 3, 1, sign), braid_generator(ctx, 3, 2, sign)
        yb.append(_compare(b1 * b2 * b1, b2 * b1 * b2))
    report.append(_record("reidemeister_3", yb))

    c1 = PFElement.generator(ctx, 2, 1)
    c2 = PFElement.generator(ctx, 2, 2)
    report.append(_record("braid_parafermion", [
        _compare(c1 * minus, minus * c2),
        _compare(c2 * plus, plus * c1),
    ]))

    slide = []
    for m in (1, 2):
        B = _chain(ctx, m, -1, "down")
        for _, x in _basis(ctx, m):
            slide.append(_compare(place(x, m + 1, 0) * B, B * place(x, m + 1, 1)))
    report.append(_record("under_slide", slide))

    flip = []
    B = _chain(ctx, 2, 1, "down")
    for k in range(ctx.N):
        u, v = zero_graded_two_box(ctx, k), zero_graded_two_box(ctx, -k)
        flip.append(_compare(place(u, 3, 0) * B, B * place(v, 3, 1)))
    report.append(_record("z2_flip", flip))

    double = []
    b = [None] + [braid_generator(ctx, 4, p, 1) for p in (1, 2, 3)]
    D = b[2] * b[1] * b[3] * b[2]
    for k in range(ctx.N):
        u = zero_graded_two_box(ctx, k)
        double.append(_compare(place(u, 4, 0) * D, D * place(u, 4, 2)))
    report.append(_record("double_string_slide", double))
    return report


def under_slide(ctx: ScalarContext, x: PFElement) -> tuple[PFElement, PFElement]:
    """Both sides of sliding ``x`` under ``b-_m ... b-_1`` from the left to the right."""
    m = x.m
    B = _chain(ctx, m, -1, "down")
    return place(x, m + 1, 0) * B, B * place(x, m + 1, 1)


def braid_closure_invariant(ctx: ScalarContext, braid_word, strands: int) -> dict:
    """Closure of a braid word with generators ``+-i`` acting on ``strands`` strings.

    ``value`` is ``sqrt(N)^(strands-1)`` times the normalized trace of the
    product of Jordan-Wigner braid matrices.  Each positive kink costs
    ``omega^{-1/2}``, so ``invariant = value * omega^{writhe/2}`` is unchanged by
    stabilization; the factor is reported separately.
    """
    if strands < 1:
        raise ParameterError("need at least one strand")
    word = [int(g) for g in braid_word]
    for g in word:
        if g == 0 or not 1 <= abs(g) <= strands - 1:
            raise ParameterError(f"generator {g} out of range for {strands} strands")
    dim = ctx.N ** strands
    prod = DenseOperator.identity(ctx, dim)
    cache: dict[int, DenseOperator] = {}
    for g in word:
        if g not in cache:
            cache[g] = jw_rep(braid_generator(ctx, strands, abs(g), 1 if g > 0 else -1))
        prod = prod @ cache[g]
    tau = normalized_trace(prod)
    value = tau * sqrt_n(ctx) ** (strands - 1) if strands > 1 else tau
    writhe = sum(1 if g > 0 else -1 for g in word)
    half = omega_sqrt(ctx)
    factor = half ** writhe if writhe >= 0 else ctx.conj(half) ** (-writhe)
    return {"value": value, "writhe": writhe, "writhe_factor": factor, "invariant": value * factor}

