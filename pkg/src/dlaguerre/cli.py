"""Command-line entry point ``dlaguerre``.

Every subcommand prints a machine-readable summary (JSON by default, CSV
with ``--format csv``) and exits with status 0 only if its thresholds hold.
"""
import argparse
import sys

import mpmath

from .equilibrium import ModelParams, RegimeError, SolverError, support_for
from .gfield import build_context
from .harness import (
    SCHEMA,
    RunConfig,
    run_comparison,
    run_convergence,
    run_table1,
    to_csv,
    to_json,
)
from .oracle import LatticeMeasure, build_recurrence, zeros

# equilibrium residuals are accepted below this level
EQ_RESIDUAL_TOL = 1e-10


def _emit(payload, fmt, out):
    out.write(to_csv(payload) if fmt == "csv" else to_json(payload) + "\n")


def _digits(bits):
    return max(17, int(bits / 3.32))


def cmd_equilibrium(args, out):
    s = support_for(args.c, args.tol)
    payload = {"schema": SCHEMA, "kind": "equilibrium", "c": args.c, "regime": s.regime,
               "a": s.a, "b": s.b, "C1": s.C1, "C2": s.C2}
    ok = True
    if s.supercritical:
        r1, r2, redge = s.residuals
        payload.update(residual1=r1, residual2=r2, residual_edge=redge,
                       l=build_context(s).l)
        ok = max(abs(r1), abs(r2), abs(redge)) <= EQ_RESIDUAL_TOL
    else:
        payload.update(residual1=0.0, residual2=0.0, residual_edge=0.0, l=None)
    payload["passed"] = ok
    _emit(payload, args.format, out)
    return 0 if ok else 1


def _oracle_table(args):
    bigN = args.bigN if args.bigN is not None else args.n
    params = ModelParams(args.alpha, args.c, bigN, args.n)
    k_min = 0 if args.include_origin_node else 1
    m = LatticeMeasure(params, k_min, precision_bits=args.precision_bits)
    return params, build_recurrence(m, args.n)


def cmd_oracle(args, out):
    params, table = _oracle_table(args)
    d = _digits(args.precision_bits)
    base = {"schema": SCHEMA, "alpha": params.alpha, "c": params.c, "N": params.N,
            "n": params.n, "precision_bits": args.precision_bits, "K": table.K}
    with mpmath.workprec(args.precision_bits):
        if args.oracle_cmd == "recurrence":
            rows = [{"k": k, "B": mpmath.nstr(table.B[k], d), "A2": mpmath.nstr(table.A2[k], d),
                     "h": mpmath.nstr(table.h[k], d)} for k in range(args.n + 1)]
            payload = {**base, "kind": "recurrence", "rows": rows}
        else:
            zs = zeros(table, args.n, exact=True)
            rows = [{"index": i + 1, "zero": mpmath.nstr(z, d)} for i, z in enumerate(zs)]
            payload = {**base, "kind": "zeros", "rows": rows}
    if args.format == "csv":
        out.write(to_csv(payload["rows"]) if rows else "")
    else:
        out.write(to_json(payload) + "\n")
    return 0


def cmd_compare(args, out):
    cfg = RunConfig(c=args.c, alpha=args.alpha, n=args.n, bigN=args.bigN,
                    regime=args.regime.replace("-", "_"), grid=args.grid, delta=args.delta,
                    precision_bits=args.precision_bits, fmt=args.format, threads=args.threads)
    rep = run_comparison(cfg)
    _emit(rep, args.format, out)
    return 0 if rep.summary["passed"] else 1


def cmd_table1(args, out):
    rep = run_table1(args.precision_bits)
    _emit(rep, args.format, out)
    return 0 if rep.summary["passed"] else 1


def cmd_convergence(args, out):
    n_list = [int(v) for v in args.n_list.split(",") if v.strip()]
    cfg = RunConfig(c=args.c, alpha=args.alpha, n=n_list[-1], delta=args.delta,
                    precision_bits=args.precision_bits, fmt=args.format, threads=args.threads)
    point = complex(args.point) if args.point is not None else None
    if point is not None and point.imag == 0.0:
        point = point.real
    rep = run_convergence(args.quantity, n_list, cfg, point=point)
    if args.format == "csv":
        out.write(to_csv(rep))
    else:
        out.write(to_json(rep) + "\n")
    return 0 if rep.summary["passed"] else 1


def _common(p):
    p.add_argument("--c", type=float, default=4.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--precision-bits", type=int, default=160)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=None)


def build_parser():
    p = argparse.ArgumentParser(prog="dlaguerre",
                                description="Discrete Laguerre polynomials: oracle and asymptotics.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("equilibrium", help="solve for the band endpoints")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--tol", type=float, default=1e-12)
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_equilibrium)

    q = sub.add_parser("oracle", help="extended-precision recurrence or zeros")
    osub = q.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("recurrence", "zeros"):
        r = osub.add_parser(name)
        r.add_argument("--n", type=int, required=True)
        r.add_argument("--bigN", type=int, default=None)
        r.add_argument("--include-origin-node", action="store_true")
        _common(r)
        r.set_defaults(func=cmd_oracle)

    q = sub.add_parser("compare", help="oracle against asymptotics on a regime grid")
    q.add_argument("--regime", required=True,
                   choices=("void", "band", "saturated", "origin", "edge-a", "edge-b"))
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--bigN", type=int, default=None)
    q.add_argument("--grid", type=int, default=20)
    q.add_argument("--delta", type=float, default=None)
    _common(q)
    q.set_defaults(func=cmd_compare)

    q = sub.add_parser("table1", help="degree-10 zeros, discrete and continuous")
    q.add_argument("--precision-bits", type=int, default=160)
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_table1)

    q = sub.add_parser("convergence", help="error against n with a fitted rate")
    q.add_argument("--quantity", required=True, choices=("h", "A2", "B", "pn"))
    q.add_argument("--n-list", default="16,32,64")
    q.add_argument("--point", default=None, help="evaluation point for pn, e.g. 2.0 or 1+0.5j")
    q.add_argument("--delta", type=float, default=None)
    _common(q)
    q.set_defaults(func=cmd_convergence)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (RegimeError, SolverError, ValueError) as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc),
               "passed": False}, getattr(args, "format", "json"), out)
        return 2


if __name__ == "__main__":
    sys.exit(main())
