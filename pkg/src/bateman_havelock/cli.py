"""Command-line front end.

Subcommands ``eval``, ``table``, ``coeffs``, ``contour`` and ``compare``.
Output is CSV (default) or JSON, one object per row, to stdout or
``--out``.  Exit status: 0 on success, 2 for domain or usage errors, 3 when
a numerical certification fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .asymptotics import METHODS, evaluate
from .closed_forms import PRINTED, closed_form
from .coefficients import CoefficientFamily, DomainError, generate_family
from .contours import CertificationError, PathTracingError, paths_csv, trace_path
from .oracle import OracleError, certified_value, oracle_contour, oracle_direct, oracle_U_negative
from .regimes import DEFAULT_TRANSITION_WIDTH, Regime, TruncationPolicy, classify
from .series import PrecisionConfig
from .tables import TableCellError, compute_table, rel_error

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3
ORACLE_METHODS = ("oracle-direct", "oracle-contour", "oracle-u")


def fmt(v) -> str:
    """12 significant digits, lowercase e; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.11e" % float(v)
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return fmt(v) if not math.isfinite(v) else float(fmt(v))
    return v


def emit(rows: list[dict], header: list[str], fmt_name: str, out) -> None:
    if fmt_name == "json":
        data = [{k: _json_value(r.get(k)) for k in header} for r in rows]
        out.write(json.dumps(data, indent=1) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(r.get(k)) for k in header])


# ---------------------------------------------------------------- commands

EVAL_HEADER = ["function", "x", "nu", "a", "method", "regime", "value", "K_used",
               "trunc_estimate", "abs_err_estimate", "warnings"]


def _fn(name: str) -> str:
    return {"k": "k", "bateman": "k", "h": "h", "havelock": "h"}[name]


def cmd_eval(args, cfg) -> list[dict]:
    if (args.nu is None) == (args.a is None):
        raise DomainError("give exactly one of --nu or --a")
    x = args.x
    nu = args.nu if args.nu is not None else args.a * abs(x)
    fn = _fn(args.fn)
    row = {"function": fn, "x": x, "nu": nu, "a": nu / abs(x) if x else None,
           "method": args.method, "regime": classify(x, nu, cfg["width"]).value if x else ""}
    if args.method in ORACLE_METHODS:
        if args.method == "oracle-direct":
            q = oracle_direct(x, nu, fn)
        elif args.method == "oracle-contour":
            q = oracle_contour(x, nu, fn)
        else:
            if fn != "k" or x > 0:
                raise DomainError("oracle-u evaluates k_nu at negative argument only")
            q = oracle_U_negative(x, nu)
        row.update(value=q.value, abs_err_estimate=q.abs_err_estimate)
        return [row]
    r = evaluate(args.method, x, nu, fn, cfg["policy"], cfg["precision"], cfg["width"])
    row.update(method=r.method, regime=r.regime.value, value=r.value, K_used=r.K_used,
               trunc_estimate=r.trunc_estimate, warnings=";".join(r.warnings))
    return [row]


TABLE_HEADER = ["function", "a", "x", "exact", "asymptotic", "rel_error", "method",
                "paper_exact", "paper_error"]


def cmd_table(args, cfg) -> list[dict]:
    rows = compute_table(args.which, cfg["policy"], cfg["precision"], cfg["width"])
    return [r.as_dict() for r in rows]


COEFF_HEADER = ["family", "k", "parameter", "re", "im", "closed_form_re", "closed_form_im", "deviation"]


def cmd_coeffs(args, cfg) -> list[dict]:
    fam = CoefficientFamily(args.family)
    if fam is CoefficientFamily.cNu:
        param = args.nu
    elif fam is CoefficientFamily.B:
        param = None
    else:
        param = args.a
    if fam is not CoefficientFamily.B and param is None:
        raise DomainError(f"family {fam.value} needs {'--nu' if fam is CoefficientFamily.cNu else '--a'}")
    digits = cfg["precision"].working_digits
    tab = generate_family(fam, param, args.K, digits)
    rows = []
    for k, v in tab.items():
        z = _clean(complex(v), cfg["precision"].tolerance)
        row = {"family": fam.value, "parameter": param, "k": k, "re": z.real, "im": z.imag}
        if k in PRINTED[fam.value]:
            c = complex(closed_form(fam.value, k, param, digits))
            row.update(closed_form_re=c.real, closed_form_im=c.imag,
                       deviation=abs(z - c) / max(abs(c), 1e-300))
        rows.append(row)
    return rows


def _clean(z: complex, tol: float) -> complex:
    # reversion leaves rounding residue in parts that vanish identically
    re_, im_ = z.real, z.imag
    if abs(re_) < tol * abs(z):
        re_ = 0.0
    if abs(im_) < tol * abs(z):
        im_ = 0.0
    return complex(re_, im_)


def cmd_contour(args, cfg):
    legs = trace_path(args.regime, args.a, args.n, x=args.x)
    for leg in legs:
        leg.certify()
    return legs


COMPARE_HEADER = ["function", "a", "x", "nu", "exact", "asymptotic", "rel_error",
                  "trunc_estimate", "method"]


def cmd_compare(args, cfg) -> list[dict]:
    lo, hi = _range(args.x)
    fn = _fn(args.fn)
    xs = np.geomspace(lo, hi, args.n) if args.n > 1 else np.array([lo])
    rows = []
    for x in xs:
        x = float(x)
        nu = args.a * abs(x)
        exact = certified_value(x, nu, fn).value
        r = evaluate(args.method, x, nu, fn, cfg["policy"], cfg["precision"], cfg["width"])
        rows.append({"function": fn, "a": args.a, "x": x, "nu": nu, "exact": exact,
                     "asymptotic": r.value, "rel_error": rel_error(exact, r.value),
                     "trunc_estimate": r.trunc_estimate, "method": r.method})
    return rows


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise DomainError(f"--x expects lo:hi, got {text!r}") from None
    if not (lo > 0 and hi >= lo) and not (hi < 0 and lo <= hi):
        raise DomainError("--x range must not contain 0 and needs lo <= hi")
    return lo, hi


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision-digits", type=int, default=argparse.SUPPRESS,
                   help="working digits for coefficient generation (>= 30)")
    p.add_argument("--trunc", default=argparse.SUPPRESS, help="all | optimal | K=<n>")
    p.add_argument("--transition-width", type=float, default=argparse.SUPPRESS,
                   help="half-width of the coalescing band around a = 1")
    p.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="bateman-havelock", parents=[common],
                                 description="Bateman k_nu(x) and Havelock h_nu(x) at large order.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate at one point")
    e.add_argument("--fn", required=True, choices=("k", "h", "bateman", "havelock"))
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--nu", type=float)
    e.add_argument("--a", type=float)
    e.add_argument("--method", default="auto", choices=METHODS + ORACLE_METHODS)

    t = sub.add_parser("table", parents=[common], help="recompute a reference value table")
    t.add_argument("which", type=int, choices=(1, 2, 3))

    c = sub.add_parser("coeffs", parents=[common], help="dump expansion coefficients")
    c.add_argument("--family", required=True, choices=[f.value for f in CoefficientFamily])
    c.add_argument("--a", type=float)
    c.add_argument("--nu", type=float)
    c.add_argument("--K", type=int, default=None)

    p = sub.add_parser("contour", parents=[common], help="export certified descent paths")
    p.add_argument("--regime", required=True, choices=[r.value for r in Regime])
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--x", type=float, default=None, help="argument fixing the negative-x leg heights")

    m = sub.add_parser("compare", parents=[common], help="asymptotic vs oracle sweep")
    m.add_argument("--fn", required=True, choices=("k", "h", "bateman", "havelock"))
    m.add_argument("--a", type=float, required=True)
    m.add_argument("--x", required=True, help="lo:hi (log-spaced)")
    m.add_argument("--n", type=int, default=5)
    m.add_argument("--method", default="auto", choices=METHODS)
    return ap


def _config(ns) -> dict:
    digits = getattr(ns, "precision_digits", None)
    return {
        "precision": PrecisionConfig(working_digits=digits) if digits else PrecisionConfig(),
        "policy": TruncationPolicy.parse(getattr(ns, "trunc", None)),
        "width": getattr(ns, "transition_width", DEFAULT_TRANSITION_WIDTH),
        "format": getattr(ns, "format", "csv"),
        "out": getattr(ns, "out", None),
    }


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = _config(ns)
        if cfg["width"] <= 0:
            raise DomainError("--transition-width must be positive")
        buf = io.StringIO()
        if ns.command == "contour":
            legs = cmd_contour(ns, cfg)
            if cfg["format"] == "json":
                rows = list(csv.DictReader(io.StringIO(paths_csv(legs))))
                buf.write(json.dumps(rows, indent=1) + "\n")
            else:
                buf.write(paths_csv(legs))
        else:
            fn, header = {
                "eval": (cmd_eval, EVAL_HEADER),
                "table": (cmd_table, TABLE_HEADER),
                "coeffs": (cmd_coeffs, COEFF_HEADER),
                "compare": (cmd_compare, COMPARE_HEADER),
            }[ns.command]
            emit(fn(ns, cfg), header, cfg["format"], buf)
    except (OracleError, CertificationError, PathTracingError, TableCellError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as f:
            f.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
