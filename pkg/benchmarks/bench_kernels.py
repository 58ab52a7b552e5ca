"""Time the numba kernels against their pure-numpy fallbacks.

Kernel timings run both backends in one process.  The end-to-end timing runs
an exact verification suite twice in subprocesses, once with
PAPPA_DISABLE_NUMBA=1.

    python3 benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from pappa import _kernels

CASES = [(3, 3), (4, 3), (5, 3), (3, 5), (4, 4)]

SUITE_SNIPPET = (
    "import time\n"
    "from pappa import suites\n"
    "from pappa.scalars import make_context\n"
    "t = time.perf_counter()\n"
    "recs = suites.pf_axioms(make_context({N}), {m}) + suites.jw_suite(make_context({N}), {m})\n"
    "assert all(r['pass'] for r in recs)\n"
    "print(time.perf_counter() - t)\n"
)


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_kernels(repeat: int):
    rows = []
    for N, m in CASES:
        codes = np.arange(N ** m)
        # warm up the JIT so compile time is not counted
        _kernels.product_table_raw(N, m, use_numba=True)
        _kernels.jw_phase_perm(N, m, codes[:1], use_numba=True)
        for name, fn in (
            ("product_table", lambda u: _kernels.product_table_raw(N, m, use_numba=u)),
            ("jw_phase_perm", lambda u: _kernels.jw_phase_perm(N, m, codes, use_numba=u)),
        ):
            fast = best_of(lambda: fn(True), repeat)
            slow = best_of(lambda: fn(False), repeat)
            rows.append((name, N, m, fast, slow))
    return rows


def bench_suite(N: int, m: int) -> tuple[float, float]:
    out = []
    for flag in ("0", "1"):
        env = dict(os.environ, PAPPA_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", SUITE_SNIPPET.format(N=N, m=m)], env=env,
                             capture_output=True, text=True, check=True)
        out.append(float(res.stdout.strip()))
    return out[0], out[1]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--suite-N", type=int, default=4)
    parser.add_argument("--suite-m", type=int, default=2)
    parser.add_argument("--skip-suite", action="store_true")
    args = parser.parse_args(argv)

    if not _kernels.HAS_NUMBA:
        print("numba is disabled or missing; only the numpy backend is available")
        return 1
    print(f"{'kernel':<15}{'N':>3}{'m':>3}{'numba [ms]':>13}{'numpy [ms]':>13}{'speedup':>10}")
    for name, N, m, fast, slow in bench_kernels(args.repeat):
        print(f"{name:<15}{N:>3}{m:>3}{fast * 1e3:>13.3f}{slow * 1e3:>13.3f}{slow / fast:>9.1f}x")
    if not args.skip_suite:
        fast, slow = bench_suite(args.suite_N, args.suite_m)
        print(f"\nexact pf + jw suites at N={args.suite_N}, m={args.suite_m} (includes JIT compile):")
        print(f"  numba {fast:.2f} s, numpy {slow:.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
