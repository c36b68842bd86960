"""Command-line front end: ``riesz-stencil <command> [flags]``."""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings
from collections.abc import Sequence

import numpy as np

from .errors import ConvergenceError, InstabilityError, ValidationError
from .experiments import emit_spectrum, run_cosine_experiment, run_poly_experiment
from .filters import FilterSpec, PositivityWarning, build_filter
from .reference import CosineCase, PolynomialCase
from .spectral import eigen_bound_estimate, maclaurin_residual, positivity_check, spectral_rate
from .stencil import GridSpec, apply_operator, build_stencil, stencil_to_csv

__all__ = ["main"]

EXIT_OK, EXIT_VALIDATION, EXIT_INSTABILITY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical trouble here
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _orders(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _cmd_filter(a: argparse.Namespace) -> int:
    filt = build_filter(FilterSpec(a.alpha, a.order))
    _emit(",".join(repr(float(g)) for g in filt.coeffs) + "\n", a.out)
    return EXIT_OK


def _cmd_stencil(a: argparse.Namespace) -> int:
    st = build_stencil(build_filter(FilterSpec(a.alpha, a.order)), GridSpec(a.nodes))
    _emit(stencil_to_csv(st), a.out)
    return EXIT_OK


def _cmd_apply(a: argparse.Namespace) -> int:
    if (a.q is None) == (a.freq is None):
        raise ValidationError("apply needs exactly one of --q or --freq")
    grid = GridSpec(a.nodes)
    if a.q is not None:
        if int(a.q) < 2:
            raise ValidationError("q must be an integer >= 2")
        samples = grid.x**a.q * (1.0 - grid.x) ** a.q
    else:
        if a.freq < 1:
            raise ValidationError("freq must be a positive integer")
        samples = np.cos(2.0 * math.pi * a.freq * grid.x)
    st = build_stencil(build_filter(FilterSpec(a.alpha, a.order)), grid)
    d = apply_operator(st, samples)
    lines = ["x,D"] + [f"{x:.17g},{v:.17g}" for x, v in zip(grid.x[1:-1], d)]
    _emit("\n".join(lines) + "\n", a.out)
    return EXIT_OK


def _cmd_experiment(a: argparse.Namespace) -> int:
    if a.levels < 2:
        raise ValidationError("--levels must be at least 2 to define a rate")
    if a.family == "poly":
        PolynomialCase(a.q, a.alpha)
        table = run_poly_experiment(a.q, a.alpha, a.orders, a.levels - 1)
    else:
        CosineCase(a.freq, a.alpha)
        table = run_cosine_experiment(a.freq, a.alpha, a.orders, a.levels - 1)
    _emit(table.to_csv(), a.out)
    return EXIT_OK


def _cmd_spectrum(a: argparse.Namespace) -> int:
    if a.points < 1:
        raise ValidationError("--points must be positive")
    for n in a.orders:
        FilterSpec(a.alpha, n)
    for path in emit_spectrum(a.alpha, a.orders, a.points, a.out or "."):
        print(path)
    return EXIT_OK


def _cmd_check(a: argparse.Namespace) -> int:
    ok = True
    for n in a.orders:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PositivityWarning)
            filt = build_filter(FilterSpec(a.alpha, n))
        pos = positivity_check(filt)
        eig = eigen_bound_estimate(build_stencil(filt, GridSpec(a.nodes)))
        resid = float(np.max(np.abs(maclaurin_residual(filt)), initial=0.0))
        slope = spectral_rate(filt, 0.2)
        flat = abs(slope - n) <= 0.15
        ok &= pos.dominant and eig.within_bound and flat
        print(f"N={n} alpha={a.alpha!r}")
        print(f"  positivity  {'ok' if pos.dominant else 'FAIL'}  margin={pos.margin:.6g}")
        print(
            f"  eigenbound  {'ok' if eig.within_bound else 'FAIL'}  "
            f"max|eig|={eig.max_abs_eig:.6g} bound={eig.bound:.6g} nodes={a.nodes}"
        )
        print(f"  flatness    {'ok' if flat else 'FAIL'}  r(0.2)={slope:.4f} residual={resid:.3g}")
    return EXIT_OK if ok else EXIT_INSTABILITY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riesz-stencil", description="High-order Riesz fractional derivative stencils.")
    p.add_argument("--time", action="store_true", help="report wall-clock time on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *, order=False, orders=False, nodes=False, out=True):
        sp.add_argument("--alpha", type=float, required=True)
        if order:
            sp.add_argument("--order", type=int, required=True)
        if orders:
            sp.add_argument("--orders", type=_orders, default=[4, 6, 8, 10])
        if nodes:
            sp.add_argument("--nodes", type=int, default=101)
        if out:
            sp.add_argument("--out")
        sp.add_argument("--time", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("filter", help="print prefilter coefficients g_0..g_Nh")
    common(sp, order=True)
    sp.set_defaults(func=_cmd_filter)

    sp = sub.add_parser("stencil", help="write the filtered stencil as n,k_n CSV")
    common(sp, order=True, nodes=True)
    sp.set_defaults(func=_cmd_stencil)

    sp = sub.add_parser("apply", help="apply the operator to a test function")
    common(sp, order=True, nodes=True)
    sp.add_argument("--q", type=int)
    sp.add_argument("--freq", type=int)
    sp.set_defaults(func=_cmd_apply)

    sp = sub.add_parser("experiment", help="grid-refinement error table")
    fam = sp.add_subparsers(dest="family", required=True, parser_class=_Parser)
    sp_poly = fam.add_parser("poly", help="u = x^q (1-x)^q")
    common(sp_poly, orders=True)
    sp_poly.add_argument("--q", type=int, required=True)
    sp_cos = fam.add_parser("cos", help="u = cos(2 pi f x)")
    common(sp_cos, orders=True)
    sp_cos.add_argument("--freq", type=int, required=True)
    for s in (sp_poly, sp_cos):
        s.add_argument("--levels", type=int, default=6)
        s.set_defaults(func=_cmd_experiment)

    sp = sub.add_parser("spectrum", help="write response_N.csv and rate_N.csv into --out")
    sp.add_argument("--alpha", type=float, default=1.3)
    sp.add_argument("--orders", type=_orders, default=list(range(2, 17, 2)))
    sp.add_argument("--points", type=int, default=512)
    sp.add_argument("--out")
    sp.add_argument("--time", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("check", help="positivity, eigenvalue bound and flatness report")
    common(sp, orders=True, nodes=True, out=False)
    sp.set_defaults(func=_cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_VALIDATION
    except (InstabilityError, ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        code = EXIT_INSTABILITY
    if args.time:
        print(f"elapsed {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
