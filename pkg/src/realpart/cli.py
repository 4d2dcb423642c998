"""Command-line front end: ``realpart <command> [options]``.

Exit codes: 0 success, 1 a checked assertion failed, 2 usage or
admissibility error, 3 quadrature did not converge.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .constants import (
    PRINTED_RATIOS,
    ConstantQuery,
    ExponentP,
    bounds_even,
    check_admissible,
    k_alpha,
    k_profile,
    k_sharp,
)
from .qkernel import RegimeError, q_closed, q_integral, q_maximize, regime
from .quadrature import QuadratureConfig, QuadratureError
from .sharpness import TrigPolynomial, disk_constant, disk_verify, sharpness_report
from .verify import SUITES, run_suite

__all__ = ["main", "build_parser", "run"]

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
BOUNDS_K_MAX_M = 16


def _plain(x):
    """Convert numpy scalars and containers into JSON-friendly Python values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _to_csv(rows):
    if isinstance(rows, dict):
        rows = [rows]
    keys = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in rows:
        w.writerow([_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def _serialize(payload, fmt):
    payload = _plain(payload)
    if fmt == "csv":
        return _to_csv(payload)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _config(tol):
    return QuadratureConfig(abs_tol=tol * 1e-2, rel_tol=tol, max_panels=8192)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"{args.command} requires {', '.join(missing)}")


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit_code)


def cmd_k(args, cfg):
    _need(args, "n", "p")
    p = ExponentP.parse(args.p)
    if args.alpha is not None:
        value = k_alpha(args.n, p, args.alpha, cfg)
        out = {"value": value, "method": "quadrature", "alpha_star": None,
               "alpha": args.alpha, "err_estimate": None}
    else:
        r = k_sharp(ConstantQuery(args.n, p), cfg, use_closed_form=not args.no_closed_form,
                    points=args.points)
        out = {"value": r.value, "method": r.method, "alpha_star": r.alpha_star,
               "err_estimate": r.err_estimate}
    out.update(n=args.n, p=str(p))
    return out, EXIT_OK


def cmd_profile(args, cfg):
    _need(args, "n", "p")
    alphas, values = k_profile(args.n, args.p, points=args.points, cfg=cfg)
    return [{"alpha": float(a), "K": float(v)} for a, v in zip(alphas, values)], EXIT_OK


def cmd_q(args, cfg):
    _need(args, "m", "n", "gamma")
    m, n, gamma = args.m, args.n, args.gamma
    reg = regime(m, n, gamma)
    out = {"m": m, "n": n, "gamma": gamma, "regime": reg}
    if args.beta is not None:
        res = q_integral(2 * m, n, gamma, args.beta, cfg)
        out.update(beta=args.beta, numeric=res.value, err_estimate=res.err_estimate)
    else:
        beta_star, value = q_maximize(m, n, gamma, cfg, points=max(args.points, 128))
        out.update(beta_star=beta_star, numeric_max=value)
    try:
        out["closed"] = q_closed(m, n, gamma)
    except RegimeError:
        out["closed"] = None
    return out, EXIT_OK


def cmd_bounds(args, cfg):
    _need(args, "m")
    b = bounds_even(args.m)
    out = {"m": b.m, "lower": b.lower, "upper": b.upper, "log_lower": b.log_lower, "k_sharp": None}
    if 1 <= args.m <= BOUNDS_K_MAX_M:
        k = k_sharp(ConstantQuery(2 * args.m, "inf"), cfg).value
        out.update(k_sharp=k, l_over_k=b.lower / k, u_over_k=b.upper / k)
    return out, EXIT_OK


def cmd_verify(args, cfg):
    records = run_suite(args.suite, cfg, args.seed if args.seed is not None else 0)
    ok = all(r["ok"] for r in records)
    return records, EXIT_OK if ok else EXIT_ASSERT


def cmd_sharpness(args, cfg):
    _need(args, "n", "p")
    alpha = 0.0 if args.alpha is None else args.alpha
    rep = sharpness_report(args.n, args.p, alpha, args.T, args.N, cfg)
    return rep, EXIT_OK if rep["ok"] else EXIT_ASSERT


def _floats(text):
    return tuple(float(x) for x in text.split(",")) if text else ()


def cmd_disk(args, cfg):
    _need(args, "n", "p")
    p = check_admissible(args.n, args.p)
    out = {"n": args.n, "p": str(p), "constant": disk_constant(args.n, p, cfg)}
    code = EXIT_OK
    if args.cos or args.sin:
        u = TrigPolynomial(_floats(args.cos) or (0.0,), _floats(args.sin))
        z = complex(args.z.replace(" ", "")) if args.z else 0j
        rep = disk_verify(u, args.n, p, z, cfg)
        out["verify"] = dict(rep, z={"re": z.real, "im": z.imag})
        code = EXIT_OK if rep["ok"] else EXIT_ASSERT
    return out, code


def cmd_table(args, cfg):
    rows = []
    for n in range(9):
        row = {"n": n}
        for label, p in (("k_1", 1), ("k_2", 2), ("k_inf", "inf")):
            try:
                row[label] = k_sharp(ConstantQuery(n, p), cfg).value
            except ValueError:
                row[label] = None
        row["l_over_k"] = row["u_over_k"] = None
        if n >= 2 and n % 2 == 0:
            b = bounds_even(n // 2)
            row["l_over_k"] = b.lower / row["k_inf"]
            row["u_over_k"] = b.upper / row["k_inf"]
            if n // 2 in PRINTED_RATIOS:
                row["printed_l_over_k"], row["printed_u_over_k"] = PRINTED_RATIOS[n // 2]
        rows.append(row)
    return rows, EXIT_OK


COMMANDS = {
    "k": cmd_k,
    "profile": cmd_profile,
    "q": cmd_q,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "disk": cmd_disk,
    "table": cmd_table,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=str, help="'inf' or an exact rational such as 3/2")
    common.add_argument("--alpha", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--gamma", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance (default 1e-10, or $REALPART_TOL)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", type=str, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--points", type=int, default=256)

    parser = _Parser(prog="realpart", description="Sharp real-part constants for derivatives.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("k", parents=[common], help="K_{n,p} or K_{n,p}(alpha)").add_argument(
        "--no-closed-form", action="store_true", help="force quadrature and maximisation")
    sub.add_parser("profile", parents=[common], help="alpha -> K_{n,p}(alpha) on [0, pi/2]")
    sub.add_parser("q", parents=[common], help="kernel integral Q and its regime")
    sub.add_parser("bounds", parents=[common], help="two-sided bounds for K_{2m,inf}")
    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    s = sub.add_parser("sharpness", parents=[common], help="extremal density ratio at z = i")
    s.add_argument("--T", type=float, default=1e4)
    s.add_argument("--N", type=int, default=2**20)
    d = sub.add_parser("disk", parents=[common], help="disk constant and optional check")
    d.add_argument("--cos", type=str, default="", help="cosine coefficients a0,a1,...")
    d.add_argument("--sin", type=str, default="", help="sine coefficients b0,b1,...")
    d.add_argument("--z", type=str, default=None, help="point in the disk, e.g. 0.5 or 0.1+0.2j")
    sub.add_parser("table", parents=[common], help="K_{n,1}, K_{n,2}, K_{n,inf} for n <= 8")
    return parser


def _resolve_tol(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("REALPART_TOL")
    return float(env) if env else 1e-10


def run(argv=None):
    """Parse ``argv``, execute the command and return ``(exit_code, text)``."""
    args = build_parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command == "profile" else "json")
    try:
        tol = _resolve_tol(args)
        if not (tol > 0 and math.isfinite(tol)):
            raise ValueError(f"tolerance must be positive, got {tol}")
        payload, code = COMMANDS[args.command](args, _config(tol))
    except QuadratureError as exc:
        return EXIT_NUMERIC, _serialize({"error": str(exc), "kind": "non-convergence"}, "json")
    except (ValueError, ZeroDivisionError) as exc:
        return EXIT_USAGE, _serialize({"error": str(exc), "kind": "usage"}, "json")
    text = _serialize(payload, fmt)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        return code, ""
    return code, text


def main(argv=None):
    try:
        code, text = run(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if text:
        stream = sys.stdout if code in (EXIT_OK, EXIT_ASSERT) else sys.stderr
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
