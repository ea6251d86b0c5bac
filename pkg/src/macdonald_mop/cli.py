"""Command line interface.

    macdonald-mop moments --nu 0 --alpha 0 --K 4
    macdonald-mop poly --type 2 --n 1 --m 1
    macdonald-mop recurrence --N 10
    macdonald-mop zeros --n 6
    macdonald-mop hermite-pade --N 4
    macdonald-mop verify --suite all --nu 1 --alpha 1

Output is JSON ``{"command", "params", "rows" | "report"}`` or CSV with a
header row. Exit codes: 0 ok, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import hermitepade, kernelcalc, mop, recurrence
from .errors import DegenerateSystemError, MacdonaldError, UnsupportedIndexError
from .numerics import Params, moment_table, scalar_to_str
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_value(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: cannot parse {text!r} as a number") from None


def make_params(args) -> Params:
    nu = _parse_value(args.nu, "nu")
    alpha = _parse_value(args.alpha, "alpha")
    mode = args.mode or "auto"
    if mode == "exact" and not (nu.denominator == 1 and alpha.denominator == 1
                                and nu >= 0 and alpha >= 0):
        raise UsageError("--mode exact requires nonnegative integer --nu and --alpha")
    if args.precision < 16:
        raise UsageError("--precision must be at least 16")
    try:
        return Params(nu, alpha, mode, args.precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit_code)


def cmd_moments(args, params):
    if args.K < 1:
        raise UsageError("--K must be >= 1")
    mt = moment_table(params)
    rows = [{"k": k, "moment": scalar_to_str(mt.moment(k))} for k in range(args.K)]
    return {"rows": rows}, EXIT_OK


def _poly_row(name, p):
    return {"name": name, "coefficients": p.to_json(),
            "descending": [scalar_to_str(c) for c in p.descending()]}


def cmd_poly(args, params):
    n = args.n
    m = args.m if args.m is not None else n
    via = args.via
    if args.type == 2:
        if n < 0 or m < 0:
            raise UsageError("type 2 indices must be nonnegative")
        if via == "moments":
            p = mop.type2(n, m, params).p
        elif via == "recurrence":
            if not mop.is_near_diagonal(n, m):
                raise UnsupportedIndexError(f"recurrence only yields (n,n) and (n+1,n), not ({n},{m})")
            p = recurrence.generate_sequence(params, n + m)[n + m]
        else:
            p = kernelcalc.type2_from_rodrigues(n, m, params)
        rows = [_poly_row("p", p)]
        meta = {"type": 2, "n": n, "m": m, "via": via}
    else:
        if via == "recurrence":
            raise UnsupportedIndexError("type 1 pairs are built from moments or Rodrigues")
        if via == "rodrigues":
            if not mop.is_near_diagonal(n, m):
                raise UnsupportedIndexError(f"Rodrigues formula only covers m in {{n, n-1}}, got ({n},{m})")
            pair = kernelcalc.rodrigues_type1(n, m == n, params)
        else:
            pair = mop.type1(n, m, params)
        rows = [_poly_row("A", pair.A), _poly_row("B", pair.B)]
        meta = {"type": 1, "n": n, "m": m, "via": via, "normalization": pair.normalization}
    return {"meta": meta, "rows": rows}, EXIT_OK


def cmd_recurrence(args, params):
    if args.N < 1:
        raise UsageError("--N must be >= 1")
    rc = (recurrence.coeffs_from_moments(params, args.N) if args.from_moments
          else recurrence.rec_coeffs(params, args.N))
    rows = [{"n": n, "b": scalar_to_str(b), "c": scalar_to_str(c), "d": scalar_to_str(d)}
            for n, b, c, d in rc.rows()]
    return {"rows": rows}, EXIT_OK


def cmd_zeros(args, params):
    indices = [args.n] if args.n is not None else list(range(1, args.N + 1))
    if any(i < 0 or i > 60 for i in indices):
        raise UsageError("zero computation supports 0 <= n <= 60")
    rows = []
    for n in indices:
        rep = recurrence.zero_report(params, n)
        for i, r in enumerate(rep.roots):
            rows.append({"n": n, "i": i, "zero": f"{float(r):.15g}",
                         "residual": f"{float(rep.residuals[i]):.3e}"})
    return {"rows": rows}, EXIT_OK


def cmd_hermite_pade(args, params):
    if args.n is not None:
        m = args.m if args.m is not None else args.n
        cells = [(args.n, m)]
    else:
        cells = [(n, m) for n in range(args.N + 1) for m in (n - 1, n) if m >= 0]
    rows, code = [], EXIT_OK
    for n, m in cells:
        K = args.K or 2 * (n + m) + 3
        t2 = hermitepade.order_check("type2", mop.type2(n, m, params), max(K, n + m + 3), strict=False)
        row = {"n": n, "m": m, "type2_f1": t2[0].to_dict(), "type2_f2": t2[1].to_dict()}
        ok = t2[0].ok and t2[1].ok
        if mop.is_near_diagonal(n, m):
            t1 = hermitepade.order_check("type1", mop.type1(n, m, params), max(K, n + m + 3),
                                         strict=False)
            row["type1"] = t1.to_dict()
            ok = ok and t1.ok
        row["ok"] = ok
        if not ok:
            code = EXIT_FAIL
        rows.append(row)
    return {"rows": rows}, code


def cmd_verify(args, params):
    checks = run_suites(args.suite, params, args.N, jobs=args.jobs)
    passed = all(c.ok for c in checks)
    report = {"passed": passed, "total": len(checks),
              "failed": sum(not c.ok for c in checks),
              "checks": [c.to_dict() for c in checks]}
    return {"report": report}, EXIT_OK if passed else EXIT_FAIL


COMMANDS = {
    "moments": cmd_moments,
    "poly": cmd_poly,
    "recurrence": cmd_recurrence,
    "zeros": cmd_zeros,
    "hermite-pade": cmd_hermite_pade,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# output


def _flatten(row: dict) -> dict:
    out = {}
    for key, value in row.items():
        if isinstance(value, dict):
            for k2, v2 in _flatten(value).items():
                out[f"{key}.{k2}"] = v2
        elif isinstance(value, list):
            out[key] = " ".join(str(v) for v in value)
        else:
            out[key] = value
    return out


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = payload.get("rows")
    if rows is None:
        rows = payload["report"]["checks"]
    flat = [_flatten(r) for r in rows]
    header = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macdonald-mop",
        description="Multiple orthogonal polynomials for the Macdonald weights rho_nu, rho_{nu+1}.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nu", default="0", help="order nu >= 0 (integer, fraction or decimal)")
    common.add_argument("--alpha", default="0", help="exponent alpha > -1")
    common.add_argument("--mode", choices=("exact", "float"),
                        help="arithmetic; default exact for integer parameters, else float")
    common.add_argument("--precision", type=int, default=50, help="float mode digits (>= 16)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write to file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="moment table m_k, k < K")
    p.add_argument("--K", type=int, default=8)

    p = sub.add_parser("poly", parents=[common], help="type 1 or type 2 polynomial")
    p.add_argument("--type", type=int, choices=(1, 2), default=2)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=None, help="defaults to n")
    p.add_argument("--via", choices=("moments", "rodrigues", "recurrence"), default="moments")

    p = sub.add_parser("recurrence", parents=[common], help="recurrence coefficients b_n, c_n, d_n")
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--from-moments", action="store_true",
                   help="recover coefficients from moment-solved polynomials (checked)")

    p = sub.add_parser("zeros", parents=[common], help="zeros of P_n")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--N", type=int, default=6, help="P_1..P_N when --n is not given")

    p = sub.add_parser("hermite-pade", parents=[common], help="Hermite-Pade residual orders")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--N", type=int, default=4, help="all near-diagonal cells with n <= N")
    p.add_argument("--K", type=int, default=None, help="series truncation")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="may be repeated; default all")
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None) is None and args.command == "verify":
        args.suite = ["all"]
    try:
        params = make_params(args)
        payload, code = COMMANDS[args.command](args, params)
    except (UsageError, UnsupportedIndexError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateSystemError, MacdonaldError) as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__,
                          "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    payload = {"command": args.command, "params": params.as_dict(), **payload}
    text = render(payload, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
