"""Command-line front end: price, coeffs, figures, validate, fd-solve."""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from . import validation
from .coefficients import DEFAULT_TOL, build_spectral
from .config import read_config_file, parse_assignments, resolve
from .errors import ConfigError, DomainError, InstabilityError, QuadratureError
from .figures import TITLES, figure_series, series_csv
from .models import EvalPoint, Variant
from .oracle_fd import solve_fd
from .pricing import bs_put, payoff_put, price_spectral
from .svgplot import line_plot

# flag name -> config key
_FLAG_KEYS = {
    "sigma": "sigma", "rate": "rate", "strike": "strike", "maturity": "maturity",
    "variant": "variant", "order": "order", "t": "t", "s": "s", "s_range": "s_range",
    "samples": "samples", "out": "out", "format": "format", "tol": "tol", "seed": "seed",
    "ns": "ns", "nt": "nt", "s_max": "s_max", "bc": "bc",
}


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model and run options")
    g.add_argument("--config", help="file of 'key = value' lines; flags override it")
    g.add_argument("--sigma")
    g.add_argument("--rate")
    g.add_argument("--strike")
    g.add_argument("--maturity")
    g.add_argument("--variant", help="standard, sub, supra or a comma-separated list")
    g.add_argument("--order", help="truncation order N")
    g.add_argument("--t")
    g.add_argument("--s")
    g.add_argument("--s-range", dest="s_range", help="lo,hi")
    g.add_argument("--samples")
    g.add_argument("--out")
    g.add_argument("--format", choices=("csv", "svg"))
    g.add_argument("--tol")
    g.add_argument("--seed")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="modbs",
                                     description="Spectral put pricing for modified Black-Scholes models")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("price", parents=[common], help="price at one (t, S) point")
    sub.add_parser("coeffs", parents=[common], help="dump expansion coefficients as CSV")
    sub.add_parser("figures", parents=[common], help="write the four figure datasets")
    sub.add_parser("validate", parents=[common], help="run the numerical self-checks")
    fd = sub.add_parser("fd-solve", parents=[common], help="Crank-Nicolson surface as CSV")
    fd.add_argument("--ns", help="price intervals (default 800)")
    fd.add_argument("--nt", help="time intervals (default 800)")
    fd.add_argument("--s-max", dest="s_max", help="far price boundary")
    fd.add_argument("--bc", help="dirichlet or spectral")
    return parser


def _resolve(args):
    file_over = read_config_file(args.config) if args.config else None
    items = [(0, key, str(getattr(args, flag))) for flag, key in _FLAG_KEYS.items()
             if getattr(args, flag, None) is not None]
    flag_over = parse_assignments(items, "<flags>")
    config = resolve(file_over, flag_over)
    sys.stderr.write("# resolved configuration\n" + config.dump())
    variant_given = any(o is not None and "variants" in o[1] for o in (file_over, flag_over))
    return config, variant_given


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline=""), True


def cmd_price(config, explicit_variant):
    p = config.params
    point = EvalPoint(config.t, config.s).check(p)
    variants = config.variants if explicit_variant else (Variant.SUB, Variant.SUPRA)
    tol = config.tol or DEFAULT_TOL
    for variant in variants:
        if variant is Variant.STANDARD:
            continue
        sol = build_spectral(variant, p, config.order, tol)
        res = price_spectral(sol, point)
        print(f"variant={variant.value} order={config.order} t={point.t!r} s={point.s!r} "
              f"value={res.value!r} terms={res.terms_used} tail={res.tail_estimate!r}")
    if point.t >= p.maturity:
        base = payoff_put(point.s, p.strike)
    else:
        base = bs_put(point.t, point.s, p)
    print(f"variant=standard t={point.t!r} s={point.s!r} value={base!r}")


def cmd_coeffs(config):
    variants = [v for v in config.variants if v is not Variant.STANDARD]
    if len(variants) != 1:
        raise ConfigError("coeffs needs exactly one of --variant sub|supra")
    sol = build_spectral(variants[0], config.params, config.order, config.tol or DEFAULT_TOL)
    fh, close = _open_out(None if config.out == "figures" else config.out)
    try:
        fh.write("index,value\n")
        for i, c in enumerate(sol.coeffs):
            fh.write(f"{i},{float(c)!r}\n")
    finally:
        if close:
            fh.close()


def cmd_figures(config):
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, series in figure_series(config).items():
        path = out / f"{name}.csv"
        path.write_text(series_csv(series))
        written.append(path)
        if config.fmt == "svg":
            svg = out / f"{name}.svg"
            svg.write_text(line_plot([(lbl, list(xs), list(ys)) for lbl, xs, ys in series],
                                     title=TITLES[name]))
            written.append(svg)
    for path in written:
        print(path)


def cmd_validate(config):
    results = validation.run_all(tol=config.tol, seed=config.seed)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_fd_solve(config, explicit_variant):
    extra = config.extra
    variant = config.variants[0] if explicit_variant else Variant.STANDARD
    try:
        n_s = int(extra.get("ns", 800))
        n_t = int(extra.get("nt", 800))
        s_max = float(extra["s_max"]) if "s_max" in extra else None
    except ValueError as exc:
        raise ConfigError(f"bad grid option: {exc}") from None
    bc = extra.get("bc", "dirichlet")
    spectral = None
    if bc.startswith("spectral"):
        spectral = build_spectral(variant, config.params, config.order, config.tol or DEFAULT_TOL)
    grid = solve_fd(variant, config.params, s_max, n_s, n_t, bc, spectral=spectral)
    sys.stderr.write("".join(f"# bc {k} = {v}\n" for k, v in grid.bc_spec.items()))
    fh, close = _open_out(None if config.out == "figures" else config.out)
    try:
        buf = io.StringIO()
        buf.write("t,s,value\n")
        for t, row in zip(grid.t_nodes, grid.values):
            for s, v in zip(grid.s_nodes, row):
                buf.write(f"{float(t)!r},{float(s)!r},{float(v)!r}\n")
        fh.write(buf.getvalue())
    finally:
        if close:
            fh.close()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, explicit_variant = _resolve(args)
        if args.command == "price":
            cmd_price(config, explicit_variant)
        elif args.command == "coeffs":
            cmd_coeffs(config)
        elif args.command == "figures":
            cmd_figures(config)
        elif args.command == "validate":
            return cmd_validate(config)
        elif args.command == "fd-solve":
            cmd_fd_solve(config, explicit_variant)
    except (ConfigError, DomainError, QuadratureError, InstabilityError) as exc:
        sys.stderr.write(f"modbs: error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
