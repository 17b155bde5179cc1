"""Command-line front end: one subcommand per analysis family.

Artifacts are machine-readable (JSON or CSV), written to --out or stdout;
stderr carries human diagnostics.  Exit codes: 0 success, 2 validation
error (arguments, parse failures, refused preconditions), 1 compute error.
Identical argv always produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import catalog
from .parsing import ParseError, parse_poly
from .poly import BivariateLocalFactor, MultiPoly, UniPoly

DEFAULT_DEPTH = 12
DEFAULT_PRIME_BOUND = 10000
DEFAULT_K = 100


def _fmt_float(v: float) -> str:
    return f"{v:.15g}"


def _round_floats(doc):
    """Normalize every float to 15 significant digits for stable artifacts."""
    if isinstance(doc, float):
        return float(_fmt_float(doc))
    if isinstance(doc, dict):
        return {k: _round_floats(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_round_floats(v) for v in doc]
    from fractions import Fraction

    if isinstance(doc, Fraction):
        return str(doc.numerator) if doc.denominator == 1 else f"{doc.numerator}/{doc.denominator}"
    return doc


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
        print(f"wrote {out_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _emit_json(doc, out_path):
    _emit(json.dumps(_round_floats(doc), separators=(",", ":"), sort_keys=False) + "\n", out_path)


def _emit_csv(header, rows, out_path):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_float(v) if isinstance(v, float) else v for v in row])
    _emit(buf.getvalue(), out_path)


def _poly_arg(text: str):
    """--poly value: a catalog name or an expression."""
    if text in catalog.names():
        return catalog.lookup(text)
    return parse_poly(text)


def _parse_int_list(text: str):
    return [int(x) for x in text.replace(",", " ").split()]


def _parse_float_list(text: str):
    return [float(x) for x in text.replace(",", " ").split()]


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_cyclotomic(args) -> dict:
    from .cyclotomic import cyclotomic_factor_multi, cyclotomic_factor_uni

    p = _poly_arg(args.poly)
    if isinstance(p, UniPoly):
        verdict = cyclotomic_factor_uni(p)
    else:
        verdict = cyclotomic_factor_multi(p, depth=args.depth)
    return verdict.to_jsonable()


def _cmd_estermann(args) -> dict:
    from .cyclotomic import estermann_verdict

    p = _poly_arg(args.poly)
    if not isinstance(p, UniPoly):
        raise ValueError("the continuation dichotomy takes a univariate polynomial")
    return estermann_verdict(p).to_jsonable()


def _cmd_factorize(args) -> dict:
    from .zetafact import factorize_bivariate, factorize_multivariate

    p = _poly_arg(args.poly)
    if isinstance(p, BivariateLocalFactor):
        return factorize_bivariate(p, args.order).to_jsonable()
    if isinstance(p, MultiPoly):
        return factorize_multivariate(p, r=args.r).to_jsonable()
    raise ValueError("factorization needs a bivariate or multivariate polynomial")


def _cmd_classify(args) -> dict:
    from .classify import classify

    p = _poly_arg(args.poly)
    if not isinstance(p, BivariateLocalFactor):
        raise ValueError("classification applies to bivariate local factors")
    c = classify(p, depth=args.depth, prime_bound=args.prime_bound, threads=args.threads)
    return c.to_jsonable()


def _cmd_zeros(args) -> dict:
    from .analytic import load_zeros

    table = load_zeros(args.file)
    return {
        "source": table.source,
        "count": len(table),
        "first": table.first(),
        "last": table.gammas[-1],
        "precision_decimals": table.precision,
    }


def _cmd_cluster(args):
    from .classify import boundary_cluster

    p = _poly_arg(args.poly)
    rows = boundary_cluster(
        p, args.target_re, args.target_im, _parse_int_list(args.primes), threads=args.threads
    )
    if args.format == "csv":
        header = ["p", "found", "re", "im", "offset", "distance"]
        data = [
            [r["p"], r["found"], r.get("re", ""), r.get("im", ""), r.get("offset", ""), r.get("distance", "")]
            for r in rows
        ]
        return ("csv", header, data)
    return {"target": {"re": args.target_re, "im": args.target_im}, "rows": rows}


def _cmd_domain(args) -> dict:
    from .newton import domain_V

    p = _poly_arg(args.poly)
    if not isinstance(p, MultiPoly):
        raise ValueError("domains are defined for multivariate polynomials")
    from fractions import Fraction

    return domain_V(p, Fraction(args.delta), carrier_last=args.carrier_last).to_jsonable()


def _cmd_toric(args):
    from .newton import brute_count_toric, toric_degree, toric_local_series

    if args.degree_only:
        return {"n": args.n, "degree": toric_degree(args.n)}
    if args.series_cutoff:
        ser = toric_local_series(args.n, args.series_cutoff)
        return {
            "n": args.n,
            "cutoff": args.series_cutoff,
            "terms": [{"alpha": list(e), "coef": c} for e, c in ser.terms],
        }
    rows = [(t, brute_count_toric(args.n, t)) for t in range(1, args.t_max + 1)]
    return ("csv", ["t", "count"], rows)


def _cmd_goldbach(args):
    from .analytic import load_zeros
    from .goldbach import convolve_gr, lambda_table, residual_report

    xs = _parse_float_list(args.x)
    limit = args.N
    if max(xs) > limit:
        raise ValueError("every x must be <= N")
    zeros = load_zeros(args.zeros)
    if args.K > len(zeros):
        raise ValueError(f"K = {args.K} exceeds the {len(zeros)} zeros in the table")
    table = lambda_table(limit)
    series = convolve_gr(table, 2, method=args.method)
    rows = residual_report(xs, series, zeros, args.K)
    header = ["x", "S", "S_minus_main", "S_minus_main_minus_H2", "fujii_bound", "log5_bound"]
    if args.format == "json":
        return {"N": limit, "K": args.K, "rows": rows}
    return ("csv", header, [[r[k] for k in header] for r in rows])


def _cmd_gsp6(args):
    from .gsp6 import gsp6_coeffs, gsp6_smoothed, gsp6_term_structure

    if args.action == "coeffs":
        co = gsp6_coeffs(int(args.N))
        rows = [(int(n), int(a)) for n, a in co.as_dense_pairs()]
        if args.format == "json":
            return {"N": int(args.N), "coeffs": [{"n": n, "a": a} for n, a in rows]}
        return ("csv", ["n", "a_n"], rows)
    if args.action == "smoothed":
        n_top = int(args.N) if args.N else int(30 * args.x)
        co = gsp6_coeffs(n_top)
        value, tail = gsp6_smoothed(args.x, co)
        return {"x": args.x, "N": n_top, "A": value, "tail_bound": tail}
    return gsp6_term_structure()


def _cmd_zeta(args) -> dict:
    from .analytic import zeta_eval

    s = complex(args.s.replace("i", "j"))
    z = zeta_eval(s)
    return {"s": [s.real, s.imag], "zeta": [z.real, z.imag], "abs": abs(z)}


def _cmd_independence(args) -> dict:
    from .analytic import independence_margin, load_zeros

    table = load_zeros(args.zeros)
    margin, bound, quad = independence_margin(table, args.K, args.alpha)
    return {
        "K": args.K,
        "alpha": args.alpha,
        "min_margin": margin,
        "bound": bound,
        "ratio": margin / bound if bound else math.inf,
        "quadruple": list(quad),
    }


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eulerbound",
        description="Euler-product continuation diagnostics",
    )
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--seed", type=int, default=0, help="reserved for randomized suites")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json", "csv"], default=fmt_default)

    p = sub.add_parser("cyclotomic", help="cyclotomicity verdict")
    p.add_argument("--poly", required=True)
    p.add_argument("--depth", type=int, default=None)
    common(p)

    p = sub.add_parser("estermann", help="whole-plane continuation dichotomy")
    p.add_argument("--poly", required=True)
    common(p)

    p = sub.add_parser("factorize", help="zeta factorization of a local factor")
    p.add_argument("--poly", required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--r", type=int, default=1, help="depth parameter for multivariate input")
    common(p)

    p = sub.add_parser("classify", help="five-case boundary classification")
    p.add_argument("--poly", required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    common(p)

    p = sub.add_parser("zeros", help="validate a zeros table")
    p.add_argument("--file", default=None, help="defaults to $BF_ZEROS or the bundled table")
    common(p)

    p = sub.add_parser("cluster", help="nearest boundary zeros per prime")
    p.add_argument("--poly", required=True)
    p.add_argument("--target-re", type=float, required=True)
    p.add_argument("--target-im", type=float, default=0.0)
    p.add_argument("--primes", required=True, help="comma-separated primes")
    common(p)

    p = sub.add_parser("domain", help="convergence/continuation tube V(h; delta)")
    p.add_argument("--poly", required=True)
    p.add_argument("--delta", default="0")
    p.add_argument("--carrier-last", action="store_true",
                   help="treat the last variable as the prime carrier")
    common(p)

    p = sub.add_parser("toric", help="n-fold-product toric diagnostics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-max", type=int, default=10)
    p.add_argument("--degree-only", action="store_true")
    p.add_argument("--series-cutoff", type=int, default=0)
    common(p, fmt_default="csv")

    p = sub.add_parser("goldbach", help="Goldbach residual diagnostics")
    act = p.add_subparsers(dest="action", required=True)
    ps = act.add_parser("sum")
    ps.add_argument("--x", required=True, help="comma-separated sample points")
    ps.add_argument("--N", type=int, required=True)
    ps.add_argument("--zeros", default=None)
    ps.add_argument("--K", type=int, default=DEFAULT_K)
    ps.add_argument("--method", choices=["fast", "naive"], default="fast")
    common(ps, fmt_default="csv")

    p = sub.add_parser("gsp6", help="symplectic zeta coefficients and sums")
    act = p.add_subparsers(dest="action", required=True)
    pc = act.add_parser("coeffs")
    pc.add_argument("--N", type=float, required=True)
    common(pc, fmt_default="csv")
    pm = act.add_parser("smoothed")
    pm.add_argument("--x", type=float, required=True)
    pm.add_argument("--N", type=float, default=None)
    common(pm)
    pt = act.add_parser("structure")
    common(pt)

    p = sub.add_parser("zeta", help="evaluate zeta(s)")
    p.add_argument("--s", required=True, help='complex point, e.g. "0.5+14.1347i"')
    common(p)

    p = sub.add_parser("independence", help="zero-independence margin diagnostic")
    p.add_argument("--K", type=int, default=30)
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--zeros", default=None)
    common(p)

    return ap


_HANDLERS = {
    "cyclotomic": _cmd_cyclotomic,
    "estermann": _cmd_estermann,
    "factorize": _cmd_factorize,
    "classify": _cmd_classify,
    "zeros": _cmd_zeros,
    "cluster": _cmd_cluster,
    "domain": _cmd_domain,
    "toric": _cmd_toric,
    "goldbach": _cmd_goldbach,
    "gsp6": _cmd_gsp6,
    "zeta": _cmd_zeta,
    "independence": _cmd_independence,
}


def run(argv) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        result = _HANDLERS[args.command](args)
    except (ParseError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, OverflowError, MemoryError) as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, tuple) and result and result[0] == "csv":
        _, header, rows = result
        _emit_csv(header, rows, args.out)
    else:
        _emit_json(result, args.out)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
