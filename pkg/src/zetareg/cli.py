"""Command-line interface: ``zetareg <subcommand> [flags]``.

Exit codes are taken from the exception classes in :mod:`zetareg.errors`;
argument errors exit with 64 so they never collide with a numerical one.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import numtheory, primezeta, riemann as zmod, spectral
from .errors import ZetaRegError
from .primezeta import Window

USAGE_EXIT = 64
IO_EXIT = 9
SCHEMA_VERSION = 1
GRID_HEADER = ("sigma", "tau", "abs_p", "re_p", "im_p", "flag")


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-10
    sieve_limit: int = 10**7
    k_max: int = 1000
    exclusion_radius: float = 1e-3
    zeros_file: str | None = None
    output_path: str | None = None
    format: str | None = None

    def __post_init__(self):
        if min(self.tolerance, self.sieve_limit, self.k_max, self.exclusion_radius) <= 0:
            raise ValueError("numeric settings must be positive")

    def tables(self):
        return numtheory.cached_tables(self.sieve_limit)

    def zeros(self):
        if self.zeros_file is None:
            return None
        return zmod.ZerosTable.load(self.zeros_file)


def _num(x: float) -> str:
    return format(x, ".17g")


def _cnum(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _json(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n"


def _kv_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(obj, list):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            w.writerow((prefix, _num(obj) if isinstance(obj, float) else obj))

    walk("", payload)
    return buf.getvalue()


def _report(payload: dict, cfg: RunConfig) -> str:
    return _kv_csv(payload) if cfg.format == "csv" else _json(payload)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- subcommands

def cmd_zeta(args, cfg: RunConfig) -> str:
    s = complex(args.re, args.im)
    if s == 1:
        raise zmod.PoleError("pole at s=1")
    engine = zmod.DEFAULT_CONFIG
    if s.real >= engine.series_cutoff_re:
        value = zmod.zeta_dirichlet(s, tol=min(cfg.tolerance, 1e-12))
        method, err = "series", min(cfg.tolerance, 1e-12)
    else:
        value, err = zmod.zeta_continued_with_error(s)
        method = "continuation"
    return _report({"s": _cnum(s), "value": _cnum(value), "method": method,
                    "error_estimate": err}, cfg)


def cmd_prime_zeta(args, cfg: RunConfig) -> str:
    s = complex(args.re, args.im)
    if s.real <= 0:
        raise zmod.DomainError(primezeta.NO_CONTINUATION_MSG)
    pz = primezeta.prime_zeta_continued(s, cfg.tables(), tol=cfg.tolerance,
                                        exclusion_radius=cfg.exclusion_radius,
                                        zeros=cfg.zeros())
    return _report({"s": _cnum(s), **pz.to_dict()}, cfg)


def _default_window(args, fallback: str) -> Window:
    return Window.parse(args.window or fallback)


def cmd_scan(args, cfg: RunConfig) -> str:
    window = _default_window(args, "0.05,3,0,30")
    rows = primezeta.strip_scan(window, args.nx, args.ny, cfg.tables(), zeros=cfg.zeros(),
                                tol=cfg.tolerance, exclusion_radius=cfg.exclusion_radius)
    if cfg.format == "json":
        return _json({"window": window.to_dict(), "rows": [
            {"sigma": r.sigma, "tau": r.tau, "flag": r.flag.value,
             "value": None if r.value is None else _cnum(r.value)} for r in rows]})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_HEADER)
    for r in rows:
        if r.value is None:
            w.writerow((_num(r.sigma), _num(r.tau), "", "", "", r.flag.value))
        else:
            v = r.value
            w.writerow((_num(r.sigma), _num(r.tau), _num(abs(v)), _num(v.real), _num(v.imag),
                        r.flag.value))
    return buf.getvalue()


def cmd_singularities(args, cfg: RunConfig) -> str:
    window = _default_window(args, "0,1,-30,30")
    zeros = cfg.zeros()
    if zeros is None:
        height = max(abs(window.im_min), abs(window.im_max))
        # zero images reach height t/k; k = 1 is the tallest
        zeros = primezeta.zeros_up_to(min(height, zmod.DEFAULT_CONFIG.im_domain_limit))
    cat = primezeta.singularity_catalog(window, cfg.k_max, zeros, cfg.tables())
    return _report(cat.to_dict(), cfg)


def cmd_zeros(args, cfg: RunConfig) -> str:
    table = cfg.zeros()
    if table is None:
        table = zmod.find_zeros(args.t_min, args.t_max)
    return table.to_text()


def cmd_det(args, cfg: RunConfig) -> str:
    spec = spectral.parse_spectrum(args.spectrum)
    tables = cfg.tables() if isinstance(spec, spectral.Primes) else None
    verdict = spectral.regularized_log_det(spec, args.mu, tables, k_max=cfg.k_max,
                                           exclusion_radius=cfg.exclusion_radius)
    return _report({"spectrum": spec.to_dict(), "verdict": verdict.to_dict()}, cfg)


def cmd_cutoff(args, cfg: RunConfig) -> str:
    spec = spectral.parse_spectrum(args.spectrum)
    tables = cfg.tables() if isinstance(spec, spectral.Primes) else None
    grid = np.geomspace(args.eps_min, args.eps_max, args.points)
    fit = spectral.cutoff_fit(spec, grid, with_log=args.with_log, tables=tables)
    return _report({"spectrum": spec.to_dict(), "fit": fit.to_dict()}, cfg)


def cmd_pnt(args, cfg: RunConfig) -> str:
    xs = args.x or [10.0 ** e for e in range(3, int(math.log10(cfg.sieve_limit)) + 1)]
    rows = numtheory.pnt_table(xs, cfg.tables())
    if cfg.format == "json":
        return _json({"rows": [{"x": r.x, "pi": r.pi, "x_over_ln_x": r.x_over_ln_x,
                                "li": r.li, "ratio": r.ratio} for r in rows]})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("x", "pi", "x_over_ln_x", "li", "ratio"))
    for r in rows:
        w.writerow((_num(r.x), r.pi, _num(r.x_over_ln_x), _num(r.li), _num(r.ratio)))
    return buf.getvalue()


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--sieve-limit", type=int, default=10**7)
    common.add_argument("--k-max", type=int, default=1000)
    common.add_argument("--exclusion-radius", type=float, default=1e-3)
    common.add_argument("--zeros-file")
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"))

    p = _Parser(prog="zetareg", description="Zeta regularization and the prime zeta function.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (("zeta", cmd_zeta, "evaluate zeta(s)"),
                              ("prime-zeta", cmd_prime_zeta, "evaluate P(s) for Re(s) > 0")):
        sp = add(name, func, help_)
        sp.add_argument("--re", type=float, required=True)
        sp.add_argument("--im", type=float, default=0.0)

    sp = add("scan", cmd_scan, "grid of P(s) over a strip window (CSV)")
    sp.add_argument("--window")
    sp.add_argument("--nx", type=int, default=40)
    sp.add_argument("--ny", type=int, default=40)

    sp = add("singularities", cmd_singularities, "catalog of singular points of P(s)")
    sp.add_argument("--window")

    sp = add("zeros", cmd_zeros, "zeros of zeta on the critical line")
    sp.add_argument("--t-min", type=float, default=0.0)
    sp.add_argument("--t-max", type=float, default=30.0)

    sp = add("det", cmd_det, "zeta-regularized log-determinant of a spectrum")
    sp.add_argument("--spectrum", required=True, help="power:<p> | primes | file:<path>")
    sp.add_argument("--mu", type=float, default=1.0)

    sp = add("cutoff", cmd_cutoff, "exponential-cutoff expansion fit")
    sp.add_argument("--spectrum", required=True, help="power:<p> | primes | file:<path>")
    sp.add_argument("--eps-min", type=float, default=0.005)
    sp.add_argument("--eps-max", type=float, default=0.05)
    sp.add_argument("--points", type=int, default=16)
    sp.add_argument("--with-log", action="store_true")

    sp = add("pnt", cmd_pnt, "prime number theorem table")
    sp.add_argument("x", type=float, nargs="*")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(tolerance=args.tol, sieve_limit=args.sieve_limit, k_max=args.k_max,
                        exclusion_radius=args.exclusion_radius, zeros_file=args.zeros_file,
                        output_path=args.out, format=args.format)
    except ValueError as exc:
        print(f"zetareg: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        text = args.func(args, cfg)
        _emit(text, cfg)
    except ZetaRegError as exc:
        print(f"zetareg {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"zetareg {args.command}: {exc}", file=sys.stderr)
        return IO_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
