"""Command-line surface: moments, beta, polys, zeros, density, decompose, verify.

Every command writes a machine-readable table (JSON or CSV) to a file or
stdout; numbers are rendered with enough decimal digits to round-trip the
working precision, so output is byte-identical across runs for a fixed
configuration.  Exit codes: 0 success, 2 validation error, 3 numerical
failure (with a diagnostic record on stderr naming the failed invariant).

``--plot PATH`` on the beta, zeros and density commands renders a
matplotlib figure alongside the data.  The environment variable
``FREUD_BITS`` overrides the default precision when ``--bits`` is absent.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

import mpmath
from mpmath import mpf

from . import __version__, painleve, polynomials, verify, zeros as zeros_mod
from .errors import FreudError, ParameterError
from .hankel import recurrence_table
from .moments import WeightParams, moment_table
from .scalar import DEFAULT_PRECISION, MIN_PRECISION

_EXIT_VALIDATION = 2
_EXIT_NUMERICAL = 3


def _digits(bits: int) -> int:
    return mpmath.libmp.prec_to_dps(bits) + 3


def fmt(x, bits: int) -> str:
    """Round-trip-exact decimal rendering of an mpf for the given precision."""
    if isinstance(x, (int, bool)):
        return str(x)
    with mpmath.workprec(max(bits, MIN_PRECISION)):
        return mpmath.nstr(mpf(x), _digits(bits), strip_zeros=True)


def _default_bits() -> int:
    env = os.environ.get("FREUD_BITS")
    if env is None:
        return DEFAULT_PRECISION
    try:
        bits = int(env)
    except ValueError as exc:
        raise ParameterError(f"FREUD_BITS must be an integer, got {env!r}") from exc
    if bits < MIN_PRECISION:
        raise ParameterError(f"FREUD_BITS must be >= {MIN_PRECISION}")
    return bits


def _add_weight_args(sub, need_lambda=True):
    sub.add_argument("--m", type=int, required=True, help="half-degree of the exponential, m >= 2")
    sub.add_argument("--t", default="0", help="quadratic deformation parameter (decimal string)")
    if need_lambda:
        sub.add_argument(
            "--lambda", dest="lam", default="0", help="singularity exponent lambda > -1"
        )
    sub.add_argument("--bits", type=int, default=None, help="working precision override in bits")


def _add_output_args(sub, plot=False):
    sub.add_argument("--format", choices=("csv", "json"), default="json")
    sub.add_argument("--out", default="-", help="output path, '-' for stdout")
    if plot:
        sub.add_argument("--plot", default=None, help="also render a figure to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hofreud",
        description="computations and identity verification for generalised "
        "higher-order Freud weights |x|^(2l+1) exp(t x^2 - x^(2m))",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="even moment table mu_0..mu_2K")
    _add_weight_args(p)
    p.add_argument("--count", type=int, required=True, help="highest half-index K")
    _add_output_args(p)

    p = sub.add_parser("beta", help="recurrence coefficients beta_1..beta_N")
    _add_weight_args(p)
    p.add_argument("--count", type=int, required=True, help="number of betas N")
    p.add_argument("--method", choices=("hankel", "painleve"), default="hankel")
    _add_output_args(p, plot=True)

    p = sub.add_parser("polys", help="monic polynomial coefficients P_0..P_N")
    _add_weight_args(p)
    p.add_argument("--count", type=int, required=True, help="highest degree N")
    _add_output_args(p)

    p = sub.add_parser("zeros", help="zeros of P_n")
    _add_weight_args(p)
    p.add_argument("--n", type=int, required=True, help="polynomial degree")
    p.add_argument("--tol", default="1e-30", help="absolute zero tolerance")
    _add_output_args(p, plot=True)

    p = sub.add_parser("density", help="asymptotic zero density a_m(ell)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", default="1", help="ratio n/N")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--bits", type=int, default=None)
    _add_output_args(p, plot=True)

    p = sub.add_parser("decompose", help="quadratic decomposition families B_n, R_n")
    _add_weight_args(p)
    p.add_argument("--count", type=int, required=True, help="highest family index N")
    _add_output_args(p)

    p = sub.add_parser("verify", help="run identity verification suites")
    p.add_argument(
        "--suite",
        action="append",
        default=None,
        help=f"suite name or 'all'; known: {', '.join(verify.SUITES)}",
    )
    p.add_argument("--m", type=int, action="append", default=None, help="repeatable")
    p.add_argument("--t", default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--bits", type=int, default=None)
    _add_output_args(p)
    return parser


def _emit(meta: dict, columns: list[str], rows: list[dict], args, bits: int) -> None:
    if args.format == "json":
        payload = {"meta": meta, "data": rows}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        for key, value in meta.items():
            buf.write(f"# {key}={value}\n")
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _meta(params: Optional[WeightParams], bits: int, method: str = "direct", **extra) -> dict:
    meta = {
        "m": params.m if params else extra.pop("m"),
        "t": fmt(params.t, bits) if params else extra.pop("t", "0"),
        "lambda": fmt(params.lam, bits) if params else extra.pop("lambda", "0"),
        "precision_bits": bits,
        "method": method,
        "version": __version__,
    }
    meta.update(extra)
    return meta


def _cmd_moments(args) -> int:
    bits = args.bits or _default_bits()
    params = WeightParams(m=args.m, t=args.t, lam=args.lam, precision_bits=bits)
    table = moment_table(params, args.count)
    rows = [
        {"k": 2 * i, "mu": fmt(table.even(i), bits)} for i in range(table.K + 1)
    ]
    _emit(_meta(params, bits), ["k", "mu"], rows, args, bits)
    return 0


def _cmd_beta(args) -> int:
    bits = args.bits or _default_bits()
    params = WeightParams(m=args.m, t=args.t, lam=args.lam, precision_bits=bits)
    if args.method == "hankel":
        table = recurrence_table(params, args.count)
    else:
        seeds_src = recurrence_table(params, max(args.m - 1, 1))
        seeds = [seeds_src.beta(i) for i in range(1, args.m)]
        if not seeds:
            seeds = [seeds_src.beta(1)]
        table = painleve.beta_forward(
            params.with_precision(max(bits, seeds_src.precision_bits)), seeds, args.count
        )
    eff = table.precision_bits
    rows = [
        {"n": n, "beta": fmt(table.beta(n), eff), "precision_bits": eff}
        for n in range(1, table.N + 1)
    ]
    meta = _meta(params, eff, method=table.method, truncated=table.truncated)
    _emit(meta, ["n", "beta", "precision_bits"], rows, args, eff)
    if args.plot:
        from . import figures

        figures.beta_figure(table, args.plot)
    return 0


def _cmd_polys(args) -> int:
    bits = args.bits or _default_bits()
    params = WeightParams(m=args.m, t=args.t, lam=args.lam, precision_bits=bits)
    table = recurrence_table(params, max(args.count - 1, 1))
    polys = polynomials.generate(table, args.count)
    eff = table.precision_bits
    rows = [
        {"n": p.degree, "power": i, "coefficient": fmt(c, eff)}
        for p in polys
        for i, c in enumerate(p.coeffs)
    ]
    _emit(_meta(params, eff, method="hankel"), ["n", "power", "coefficient"], rows, args, eff)
    return 0


def _cmd_zeros(args) -> int:
    bits = args.bits or _default_bits()
    params = WeightParams(m=args.m, t=args.t, lam=args.lam, precision_bits=bits)
    table = recurrence_table(params, max(args.n - 1, 1))
    eff = table.precision_bits
    with mpmath.workprec(eff):
        tol = mpf(args.tol)
    zset = zeros_mod.zeros(table, args.n, tol)
    rows = [{"index": i, "zero": fmt(z, eff)} for i, z in enumerate(zset.zeros, start=1)]
    _emit(_meta(params, eff, method="sturm-bisection", n=args.n), ["index", "zero"], rows, args, eff)
    if args.plot:
        from . import figures

        figures.zeros_figure(zset, args.plot)
    return 0


def _cmd_density(args) -> int:
    bits = args.bits or _default_bits()
    if args.samples < 2:
        raise ParameterError("need at least 2 samples")
    law = zeros_mod.DensityLaw(m=args.m, ell=args.ell, precision_bits=bits)
    with mpmath.workprec(bits + 32):
        pts = []
        for i in range(1, args.samples + 1):
            x = law.c * (2 * mpf(i) - args.samples - 1) / (args.samples + 1)
            pts.append((x, zeros_mod.density(law, x)))
    rows = [{"x": fmt(x, bits), "density": fmt(y, bits)} for x, y in pts]
    meta = _meta(
        None,
        bits,
        method="closed-form",
        m=args.m,
        ell=fmt(law.ell, bits),
        a=fmt(law.a, bits),
        c=fmt(law.c, bits),
    )
    _emit(meta, ["x", "density"], rows, args, bits)
    if args.plot:
        from . import figures

        figures.density_figure(law, pts, path=args.plot)
    return 0


def _cmd_decompose(args) -> int:
    bits = args.bits or _default_bits()
    params = WeightParams(m=args.m, t=args.t, lam=args.lam, precision_bits=bits)
    table = recurrence_table(params, max(2 * args.count, 1))
    b_fam, r_fam = polynomials.quadratic_decompose(table, args.count)
    eff = table.precision_bits
    rows = []
    for family, name in ((b_fam, "B"), (r_fam, "R")):
        for p in family:
            for i, c in enumerate(p.coeffs):
                rows.append(
                    {"family": name, "n": p.degree, "power": i, "coefficient": fmt(c, eff)}
                )
    _emit(
        _meta(params, eff, method="hankel"),
        ["family", "n", "power", "coefficient"],
        rows,
        args,
        eff,
    )
    return 0


def _cmd_verify(args) -> int:
    suites = args.suite or []
    if "all" in suites:
        suites = list(verify.SUITES)
    if not suites:
        raise ParameterError("empty suite selection; pass --suite NAME or --suite all")
    ms = args.m or [2]
    bits = args.bits or _default_bits()
    rows = []
    all_ok = True
    for name in suites:
        for m in ms:
            result = verify.run_suite(name, m, t=args.t, lam=args.lam, bits=bits)
            all_ok = all_ok and result.passed
            rows.append(
                {
                    "suite": result.suite,
                    "m": result.m,
                    "passed": result.passed,
                    "max_residual": "" if result.max_residual is None else fmt(result.max_residual, 64),
                    "detail": result.detail,
                }
            )
    meta = {
        "m": ",".join(str(m) for m in ms),
        "t": args.t or "suite-default",
        "lambda": args.lam or "suite-default",
        "precision_bits": bits,
        "method": "verify",
        "version": __version__,
    }
    _emit(meta, ["suite", "m", "passed", "max_residual", "detail"], rows, args, bits)
    return 0 if all_ok else 3


_COMMANDS = {
    "moments": _cmd_moments,
    "beta": _cmd_beta,
    "polys": _cmd_polys,
    "zeros": _cmd_zeros,
    "density": _cmd_density,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_VALIDATION if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"hofreud: invalid parameters: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except FreudError as exc:
        diagnostic = {
            "error": type(exc).__name__,
            "message": str(exc),
            "invariant": "numerical contract violated; see message",
        }
        print(json.dumps(diagnostic), file=sys.stderr)
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
