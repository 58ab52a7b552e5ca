"""Command-line front end.

Exit codes: 0 when everything selected passes, 1 for usage or input errors,
2 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import braid, pauli, positivity, suites, tangle
from .scalars import ParameterError, Unrepresentable, make_context, omega_sqrt

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_range(text: str) -> list[int]:
    """``3``, ``2-4`` or ``2,3,5``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from exc
    return out


def _signs(text: str) -> tuple[int, ...]:
    if text == "both":
        return (1, -1)
    if text in ("1", "+1"):
        return (1,)
    if text == "-1":
        return (-1,)
    raise argparse.ArgumentTypeError("zeta sign must be 1, -1 or both")


def _betas(text: str) -> list[float]:
    try:
        return [float(b) for b in text.split(",") if b.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc


def _matrix_json(op) -> list:
    arr = op.to_complex()
    return [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in arr]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=_int_range, default=None, help="N, a range like 2-4, or a list (default 2)")
    common.add_argument("--m", type=_int_range, default=[1, 2], help="box size(s) for suites that use it")
    common.add_argument("--mode", choices=("exact", "approx"), default="exact")
    common.add_argument("--zeta-sign", type=_signs, default=(1,), help="1, -1 or both (even N only)")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")

    parser = _Parser(prog="pappa", description="Parafermion planar para algebra engine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=suites.SUITES + ("all",), default="all")
    v.add_argument("--ensemble", type=int, default=50, help="random couplings per (N, m) in the rp suite")

    t = sub.add_parser("eval-tangle", parents=[common], help="evaluate a slice-word file")
    t.add_argument("file", help="tangle file, or - for stdin")

    r = sub.add_parser("rp", parents=[common], help="reflection positivity of a coupling matrix")
    r.add_argument("--input", help="coupling JSON")
    r.add_argument("--betas", type=_betas, default=list(positivity.DEFAULT_BETAS))
    r.add_argument("--ensemble", type=int, default=0, help="check the equivalence on k random couplings")

    p = sub.add_parser("pauli", parents=[common], help="export Pauli matrices")
    p.add_argument("--version", choices=pauli.VERSIONS, default="q")
    p.add_argument("--model", choices=pauli.MODEL_TAGS, default=None, help="export a quadratic model instead")

    b = sub.add_parser("braid", parents=[common], help="export braid matrices or a closure invariant")
    b.add_argument("--word", default=None, help="comma-separated generators, e.g. 1,-2,1")
    b.add_argument("--strands", type=int, default=2)

    c = sub.add_parser("clifford", parents=[common], help="Clifford generators and group order")
    c.add_argument("--enumerate", action="store_true", help="enumerate the projective group")
    c.add_argument("--cap", type=int, default=200000)
    return parser


def _single(values: list[int], name: str) -> int:
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value for this command")
    return values[0]


def _Ns(args) -> list[int]:
    return args.N or [2]


def _ctx(args):
    return make_context(_single(_Ns(args), "N"), args.zeta_sign[0], args.mode)


def cmd_verify(args) -> tuple[object, int]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        records = suites.run_suite(args.suite, _Ns(args), args.m, args.mode, args.zeta_sign,
                                   seed=args.seed, ensemble=args.ensemble, tol=args.tol)
    summary = suites.summarize(records)
    report = {"summary": summary, "records": records, "warnings": [str(w.message) for w in caught]}
    return report, EXIT_OK if summary["pass"] else EXIT_FAIL


def cmd_eval_tangle(args) -> tuple[object, int]:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    ctx = _ctx(args) if args.N is not None else None
    word = tangle.parse_tangle(text, ctx=ctx, mode=args.mode, zeta_sign=args.zeta_sign[0])
    value = tangle.evaluate_tangle(word)
    return {"in": word.in_strands, "out": word.out_strands, "value": value.to_json()}, EXIT_OK


def cmd_rp(args) -> tuple[object, int]:
    if any(b < 0 for b in args.betas):
        raise ParameterError("beta must be non-negative")
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
        ctx = make_context(int(data.get("N", 0)), args.zeta_sign[0], "approx")
        J = positivity.CouplingMatrix.from_json(ctx, data)
        report = positivity.rp_check(J, args.betas, None, args.tol)
        out = {"j0_psd": positivity.j0_psd(J, args.tol), **report.to_json()}
        return out, EXIT_OK if report.verdict else EXIT_FAIL
    if args.ensemble <= 0:
        raise UsageError("rp needs --input or --ensemble")
    rng = np.random.default_rng(args.seed)
    ctx = make_context(_single(_Ns(args), "N"), args.zeta_sign[0], "approx")
    m = _single(args.m, "m")
    ens = [positivity.random_coupling(ctx, m, rng) for _ in range(args.ensemble)]
    res = positivity.theorem_equivalence(ens, args.betas, args.tol)
    return res, EXIT_OK if res["pass"] else EXIT_FAIL


def cmd_pauli(args) -> tuple[object, int]:
    ctx = _ctx(args)
    if args.model:
        X, Y, Z, g = pauli.quadratic_model(ctx, args.model)
        mats = {"X": X, "Y": Y, "Z": Z, "gamma": g}
    else:
        X, Y, Z = pauli.pauli_xyz(ctx, args.version)
        mats = {"X": X, "Y": Y, "Z": Z}
    return {"N": ctx.N, "version": args.version, "model": args.model,
            "matrices": {k: _matrix_json(v) for k, v in mats.items()}}, EXIT_OK


def cmd_braid(args) -> tuple[object, int]:
    ctx = _ctx(args)
    if ctx.exact:
        try:
            omega_sqrt(ctx)
        except Unrepresentable as exc:
            print(f"warning: {exc}; using approx mode", file=sys.stderr)
            ctx = ctx.with_mode("approx")
    if args.word is not None:
        word = [int(g) for g in args.word.split(",") if g.strip()]
        res = braid.braid_closure_invariant(ctx, word, args.strands)
        return {k: (ctx.to_json(v) if k != "writhe" else v) for k, v in res.items()}, EXIT_OK
    plus, minus = braid.braid_matrices(ctx)
    return {"N": ctx.N, "b_plus": _matrix_json(plus), "b_minus": _matrix_json(minus)}, EXIT_OK


def cmd_clifford(args) -> tuple[object, int]:
    ctx = _ctx(args)
    recs = pauli.clifford_relations(ctx)
    gen_ok = all(r["pass"] for r in recs)
    out = {"N": ctx.N, "generators_verified": gen_ok,
           "relations": {r["identity"]: r["pass"] for r in recs}}
    if args.enumerate:
        res = pauli.clifford_enumerate(ctx, args.cap)
        out.update(order=res["order"], closed=res["closed"],
                   expected_order=ctx.N ** 2 * pauli.sl2_order(ctx.N))
    F, G = pauli.fourier_gaussian(ctx)
    out["F"], out["G"] = _matrix_json(F), _matrix_json(G)
    return out, EXIT_OK if gen_ok else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "eval-tangle": cmd_eval_tangle,
    "rp": cmd_rp,
    "pauli": cmd_pauli,
    "braid": cmd_braid,
    "clifford": cmd_clifford,
}


def _emit(payload, path):
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except tangle.TangleError as exc:
        print(f"tangle error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
