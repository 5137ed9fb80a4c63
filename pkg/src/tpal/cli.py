"""Command-line front end: ``tpal {solve,gen,check,oracle}``.

Exit codes: 0 success, 1 input error, 2 some root hit maxit, 3 residual
check failed, 4 oracle pairing failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .aberth import StartConfig, choose_params, solve
from .errors import PairingFailure, TpalError
from .fileio import read_coefficients, read_results, write_coefficients, write_history, write_results, write_spectrum
from .oracle import reference_spectrum, residual
from .polynomial import gen_h, gen_random

EXIT_OK, EXIT_INPUT, EXIT_MAXIT, EXIT_CHECK, EXIT_PAIRING = 0, 1, 2, 3, 4
CHECK_LIMIT = 1e-6


def _load(path):
    try:
        return read_coefficients(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
    except TpalError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return None


def cmd_solve(args) -> int:
    P = _load(args.input)
    if P is None:
        return EXIT_INPUT
    N = P.n * P.k
    base = choose_params(N, P.n, P.k, args.seed)
    try:
        cfg = StartConfig(args.ellipses or base.a, args.axis or base.b, args.seed)
    except TpalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    res = solve(P, tol=args.tol, maxit=args.maxit, cfg=cfg,
                record_history=args.history is not None, jacobi=args.jacobi)
    write_spectrum(args.out, res)
    if args.history:
        write_history(args.history, res.history)
    n_maxit = sum(r.status == "maxit" for r in res.y_roots)
    print(f"{2 * N} eigenvalues, {res.sweeps} sweeps, {res.trace_calls} trace calls, {n_maxit} unconverged")
    return EXIT_MAXIT if n_maxit else EXIT_OK


def cmd_gen(args) -> int:
    if args.n < 1 or args.k < 1:
        print("error: --n and --k must be positive", file=sys.stderr)
        return EXIT_INPUT
    P = gen_h(args.n, args.k) if args.kind == "h" else gen_random(args.n, args.k, args.seed)
    write_coefficients(args.output, P)
    return EXIT_OK


def cmd_check(args) -> int:
    P = _load(args.input)
    if P is None:
        return EXIT_INPUT
    try:
        rows = read_results(args.results)
    except OSError as exc:
        print(f"error: cannot read {args.results}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (TpalError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if len(rows) != 2 * P.n * P.k:
        print(f"error: expected {2 * P.n * P.k} rows, found {len(rows)}", file=sys.stderr)
        return EXIT_INPUT
    worst = 0.0
    for row in rows:
        if row["status"] == "synthetic":
            continue
        lam = row["lambda"]
        r = math.inf if lam == 0 or not np.isfinite(lam) else residual(P, lam)
        worst = max(worst, r)
    print(f"max residual {worst:.3e}")
    return EXIT_OK if worst <= CHECK_LIMIT else EXIT_CHECK


def cmd_oracle(args) -> int:
    P = _load(args.input)
    if P is None:
        return EXIT_INPUT
    try:
        ref = reference_spectrum(P)
    except PairingFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PAIRING
    m = len(ref.lambdas)
    ys = np.repeat(ref.y, 2)
    write_results(args.output, ref.lambdas, ys, [math.nan] * m, [0] * m, ["oracle"] * m)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tpal", description="Eigenvalues of T-palindromic matrix polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute all eigenvalues")
    s.add_argument("input")
    s.add_argument("--tol", type=float, default=1e-13)
    s.add_argument("--maxit", type=int, default=None, help="sweep limit (default 2nk)")
    s.add_argument("--ellipses", type=int, default=None, help="number of start ellipses a")
    s.add_argument("--axis", type=int, default=None, help="ellipse parameter b")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--history", default=None, help="write per-sweep approximations here")
    s.add_argument("--jacobi", action="store_true", help="Jacobi-style sweeps")
    s.add_argument("--out", "-o", required=True)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="write a test polynomial")
    g.add_argument("kind", choices=["h", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="recompute residuals of a result file")
    c.add_argument("input")
    c.add_argument("results")
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("oracle", help="reference spectrum by brute force")
    o.add_argument("input")
    o.add_argument("-o", "--output", required=True)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
