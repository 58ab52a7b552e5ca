"""Acceptance criteria, one test per criterion, each printing a single status line."""

import cmath
import math
import time

import numpy as np
import pytest

from oracles import gauss_omega as direct_omega
from oracles import sl2_order_formula
from pappa import pauli, suites, tangle
from pappa.scalars import gauss_omega, make_context

EVEN_SIGNS = {2: (1, -1), 4: (1, -1)}


def _contexts(Ns, mode="exact"):
    for N in Ns:
        for sign in EVEN_SIGNS.get(N, (-1, 1) if N % 2 == 0 else (1,)):
            yield make_context(N, sign, mode)


@pytest.fixture
def status(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}", flush=True)
    return emit


def _failures(records):
    return [(r["suite"], r["identity"], r["params"]) for r in records if not r["pass"]]


def test_criterion_01_parafermion_relations(status):
    t0 = time.perf_counter()
    recs = []
    for ctx in _contexts((2, 3, 4, 5)):
        for m in (1, 2, 3):
            recs += suites.pf_axioms(ctx, m)
    elapsed = time.perf_counter() - t0
    bad = _failures(recs)
    ok = not bad and elapsed < 10
    status(1, "parafermion relations and trace/adjoint/grading axioms", ok,
           f"{len(recs)} records, {len(bad)} failures, {elapsed:.1f} s (limit 10 s)")
    assert not bad
    assert elapsed < 10


def test_criterion_02_jordan_wigner(status):
    t0 = time.perf_counter()
    recs = []
    for ctx in _contexts((2, 3, 4)):
        for m in (1, 2, 3):
            recs += suites.jw_suite(ctx, m)
    elapsed = time.perf_counter() - t0
    bad = _failures(recs)
    cases = sum(r["params"]["cases"] for r in recs)
    ok = not bad and elapsed < 30
    status(2, "Jordan-Wigner *-homomorphism and trace", ok,
           f"{cases} exact comparisons, {len(bad)} failures, {elapsed:.1f} s (limit 30 s)")
    assert not bad
    assert elapsed < 30


def test_criterion_03_temperley_lieb(status):
    recs = []
    for ctx in _contexts((2, 3, 4)):
        for m in (2, 3):
            recs += suites.tl_suite(ctx, m)
    names = {r["identity"] for r in recs}
    bad = _failures(recs)
    status(3, "Temperley-Lieb relations", not bad, f"{len(names)} identities over {len(recs)} records, "
           f"{len(bad)} failures")
    assert "E_i c_i^k = zeta^{-k^2} E_i c_{i+1}^k" in names
    assert len(names) >= 5
    assert not bad


def test_criterion_04_string_fourier_transform(status):
    recs = []
    for ctx in _contexts((2, 3, 4)):
        for m in (1, 2):
            recs += suites.sft_suite(ctx, m)
    dft = []
    for ctx in _contexts((5, 6, 7), "approx"):
        dft += [r for r in suites.sft_suite(ctx, 1) if "u_i" in r["identity"]]
    worst = max(r["max_deviation"] for r in dft)
    bad = _failures(recs) + _failures(dft)
    ok = not bad and worst <= 1e-9
    status(4, "string Fourier transform", ok,
           f"exact N<=4: {len(recs)} records; DFT identity N=5..7 max deviation {worst:.1e} (tol 1e-9)")
    assert not bad
    assert worst <= 1e-9


def test_criterion_05_pauli_and_quaternions(status):
    ctx = make_context(2, 1)
    sigma = {"X": np.array([[0, 1], [1, 0]]), "Y": np.array([[0, -1j], [1j, 0]]), "Z": np.diag([1, -1])}
    std_dev = max(float(np.abs(M.to_complex() - sigma[n]).max())
                  for n, M in zip("XYZ", pauli.pauli_xyz(ctx, "q")))
    recs = []
    for c in _contexts((2, 3, 4, 5)):
        recs += suites.pauli_suite(c)
    bad = _failures(recs)
    ok = not bad and std_dev < 1e-12
    status(5, "Pauli matrices and quaternion relations", ok,
           f"sigma deviation {std_dev:.1e} at N=2, zeta=i; {len(recs)} exact records, {len(bad)} failures")
    assert std_dev < 1e-12
    assert not bad


def test_criterion_06_quadratic_models(status):
    recs = []
    for ctx in _contexts((2, 3)):
        recs += suites.quadratic_suite(ctx)
    dims = [r for r in recs if r["identity"] == "dim(gamma=1) = N^3"]
    bad = _failures(recs)
    status(6, "quadratic models on four parafermions", not bad,
           f"{len(recs)} records, {len(dims)} eigenspace-dimension checks, {len(bad)} failures")
    assert len(dims) == 4 * 3
    assert not bad


def test_criterion_07_braids(status):
    t0 = time.perf_counter()
    recs = []
    for ctx in list(_contexts((2, 3))) + list(_contexts((4, 5), "approx")):
        recs += suites.braid_suite(ctx)
    elapsed = time.perf_counter() - t0
    bad = _failures(recs)
    worst = max(r["max_deviation"] for r in recs if r["params"]["mode"] == "approx")
    ok = not bad and elapsed < 60 and worst <= 1e-9
    status(7, "braid unitarity, Reidemeister, Yang-Baxter and slide moves", ok,
           f"{len(recs)} records, approx max deviation {worst:.1e}, {elapsed:.1f} s (limit 60 s)")
    assert not bad
    assert worst <= 1e-9
    assert elapsed < 60


def test_criterion_08_clifford(status):
    recs = []
    for ctx in _contexts((2, 3, 4, 5)):
        recs += suites.clifford_suite(ctx, enumerate_group=False)
    orders = {}
    for N in (2, 3):
        res = pauli.clifford_enumerate(make_context(N))
        # |SL(2,Z_N)| counted by brute force and by the prime-power formula
        sl2 = pauli.sl2_order(N)
        assert sl2 == sl2_order_formula(N)
        orders[N] = (res["order"], N * N * sl2, res["closed"])
    order_ok = orders[2][:2] == (24, 24) and orders[3][:2] == (216, 216) and orders[2][2] and orders[3][2]
    known = [r for r in recs if not r["pass"] and r.get("known_failure")]
    other = [r for r in recs if not r["pass"] and not r.get("known_failure")]
    known_at = sorted({(r["params"]["N"]) for r in known})
    ok = order_ok and not other and not known
    status(8, "Clifford relations and group order", ok,
           f"orders {orders[2][0]} (N=2), {orders[3][0]} (N=3); "
           f"G^N = 1 fails at even N={known_at} where G^N = diag((-1)^k); "
           f"{len(other)} other failures")
    assert order_ok
    assert not other
    assert {r["identity"] for r in known} <= {"G^N = 1"}
    assert known_at == [2, 4]


@pytest.mark.xfail(strict=True, reason="G^N = diag((-1)^k) for even N")
@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (4, 1), (4, -1)])
def test_criterion_08_gaussian_order_even_n(N, sign):
    ctx = make_context(N, sign)
    G = pauli.fourier_gaussian(ctx)[1]
    assert (G ** N).equals(G.identity(ctx, N))


def test_criterion_09_reflection_positivity(status):
    t0 = time.perf_counter()
    recs = []
    for N, m, sign in ((2, 1, 1), (2, 1, -1), (2, 2, 1), (2, 2, -1), (3, 1, 1)):
        recs += suites.rp_suite(make_context(N, sign), m, ensemble=200, seed=2024 + N + m)
    elapsed = time.perf_counter() - t0
    eq = [r for r in recs if r["identity"] == "theorem equivalence"]
    mismatches = int(sum(r["max_deviation"] for r in eq))
    bad = _failures(recs)
    ok = not bad and elapsed < 60
    status(9, "reflection positivity iff J_0 >= 0", ok,
           f"{sum(r['params']['cases'] for r in eq)} couplings, {mismatches} mismatches; "
           f"exact Fourier-form oracle agrees; {elapsed:.1f} s (limit 60 s)")
    assert all(r["params"]["cases"] >= 200 for r in eq)
    assert not bad
    assert elapsed < 60


def test_criterion_10_tangle_evaluator(status):
    corpus = bad_corpus = 0
    for ctx in _contexts((2, 3, 4)):
        for labels in tangle.circle_corpus(ctx, max_labels=4, windings=(-1, 0, 1)):
            corpus += 1
            a = tangle.evaluate_closed(tangle.circle_word(ctx, labels))
            if a != tangle.closed_loop_oracle(ctx, labels):
                bad_corpus += 1
    pairs = bad_pairs = 0
    names = set()
    for ctx in _contexts((2, 3)):
        for name, a, b in tangle.isotopy_pairs(ctx):
            names.add(name)
            pairs += 1
            if not tangle.evaluate_tangle(a).equals(tangle.evaluate_tangle(b)):
                bad_pairs += 1
    ok = not bad_corpus and not bad_pairs and len(names) >= 20
    status(10, "tangle evaluator against loop oracle and isotopy pairs", ok,
           f"{corpus} closed circles ({bad_corpus} mismatches), {len(names)} distinct isotopy pairs "
           f"over {pairs} evaluations ({bad_pairs} mismatches)")
    assert bad_corpus == 0
    assert len(names) >= 20
    assert bad_pairs == 0


def test_criterion_11_gauss_sum(status):
    exact_ok = all(gauss_omega(c) * c.conj(gauss_omega(c)) == c.one for c in _contexts(range(2, 13)))
    # the two reference values, rederived by summing zeta^{j^2} directly
    w2 = direct_omega(2, 1)
    w3 = direct_omega(3)
    assert abs(w2 - cmath.exp(1j * math.pi / 4)) < 1e-12
    assert abs(w3 - (-1j)) < 1e-12
    lib2 = make_context(2, 1).to_complex(gauss_omega(make_context(2, 1)))
    lib3 = make_context(3).to_complex(gauss_omega(make_context(3)))
    dev = max(abs(lib2 - w2), abs(lib3 - w3))
    ok = exact_ok and dev < 1e-12
    status(11, "Gauss sum", ok, f"|omega| = 1 exactly for N = 2..12; omega(2) = {lib2:.6f}, "
           f"omega(3) = {lib3:.6f}, deviation from direct sums {dev:.1e}")
    assert exact_ok
    assert dev < 1e-12
