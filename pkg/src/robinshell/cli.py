"""Command-line interface: ``robinshell {spectrum,figure,thresholds,bound,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 solver non-convergence or other infrastructure failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import radial_sl, trial_bounds
from .closed_form import disk_neumann_spectrum, expand
from .counterexamples import inner_dirichlet_tau
from .errors import ConvergenceError, RobinShellError
from .output import OutputRecord, rows_to_csv
from .radial_sl import DIRICHLET, ModeProblem, ShellGeometry, sl_eigenvalue
from .shell_spectrum import assemble_spectrum
from .thresholds import find_alpha_star, find_h0, find_h1, find_h_crossing
from .trial_bounds import (ConcentricShell, EccentricShell, StarShell, extend_profile,
                           weinberger_quotient)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFRA = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_h(text: str) -> float:
    """Real Robin parameter, or 'inf' (any case) for the Dirichlet limit."""
    s = text.strip()
    if s.lower() == "inf":
        return DIRICHLET
    try:
        x = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid Robin parameter {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a finite number; write 'inf' for the Dirichlet limit")
    return x


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return x


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return n


def _tol(text: str) -> float:
    x = _finite(text)
    if not 0 < x < 1:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1)")
    return x


def set_tolerances(tol_eig: float | None = None, tol_quad: float | None = None) -> None:
    if tol_eig is not None and tol_eig != radial_sl.RTOL:
        radial_sl.RTOL = tol_eig
        radial_sl._eigenvalue.cache_clear()
        radial_sl._eigenfunction.cache_clear()
    if tol_quad is not None:
        trial_bounds.QUAD_RTOL = tol_quad


def _geometry(args) -> ShellGeometry:
    try:
        return ShellGeometry(args.dim, args.alpha, args.beta)
    except RobinShellError as exc:
        raise UsageError(str(exc)) from exc


def _h_param(h: float):
    return "inf" if math.isinf(h) else h


def _emit(record: OutputRecord, fmt: str) -> None:
    sys.stdout.write(record.to_json() if fmt == "json" else record.to_csv())


# -- spectrum ------------------------------------------------------------------

def cmd_spectrum(args) -> OutputRecord:
    g = _geometry(args)
    if args.method in ("bessel", "both") and g.dimension != 2:
        raise UsageError(f"--method {args.method} requires --dim 2")
    method = "sl" if args.method == "both" else args.method
    spec = assemble_spectrum(g, args.h, args.count, method)
    columns = ["k", "tau", "l", "j", "multiplicity"]
    rows = [dict(k=e.k, tau=e.tau, l=e.l, j=e.j, multiplicity=e.multiplicity) for e in spec]
    diagnostics = {"method": args.method, "eigen_rtol": radial_sl.RTOL}
    if args.method == "both":
        other = assemble_spectrum(g, args.h, args.count, "bessel")
        for row, e in zip(rows, other):
            if (e.l, e.j) != (row["l"], row["j"]):
                raise ConvergenceError(f"methods disagree on the mode at k={row['k']}")
            row["delta"] = abs(row["tau"] - e.tau)
        columns.append("delta")
        diagnostics["max_delta"] = max(r["delta"] for r in rows)
    params = {"dim": g.dimension, "alpha": g.alpha, "beta": g.beta, "h": _h_param(args.h),
              "count": args.count, "method": args.method}
    return OutputRecord("spectrum", params, columns, rows, diagnostics)


# -- figures -------------------------------------------------------------------

FIG1_GEOMETRY = ShellGeometry(2, 1.0, 15.0)


def _fig1_point(h):
    return {"h": h,
            "tau_02": sl_eigenvalue(ModeProblem(FIG1_GEOMETRY, 0, h), 2),
            "tau_11": sl_eigenvalue(ModeProblem(FIG1_GEOMETRY, 1, h), 1)}


def _fig4_point(alpha, mu2):
    return {"alpha": alpha,
            "tau1_inner_disk": sl_eigenvalue(ModeProblem(ShellGeometry(2, alpha, 1.0), 0, DIRICHLET), 1),
            "tau2_sqrt2_shell": inner_dirichlet_tau(alpha, math.sqrt(2.0), 2),
            "mu2_disk_const": mu2}


def _init_worker(tol_eig, tol_quad):
    set_tolerances(tol_eig, tol_quad)


def _sweep(fn, points, jobs, extra=()):
    if jobs <= 1:
        return [fn(p, *extra) for p in points]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=(radial_sl.RTOL, trial_bounds.QUAD_RTOL)) as ex:
        # map preserves input order regardless of completion order
        return list(ex.map(fn, points, *[[e] * len(points) for e in extra]))


def figure_rows(fig_id: str, points: int, jobs: int = 1):
    if fig_id == "fig1":
        hs = [-1.01 + 1.51 * i / (points - 1) for i in range(points)]
        hs[-1] = 0.5
        return ["h", "tau_02", "tau_11"], _sweep(_fig1_point, hs, jobs)
    alphas = [(i + 1) / (points + 1) for i in range(points)]
    mu2 = expand(disk_neumann_spectrum(1.0, 2))[1]
    cols = ["alpha", "tau1_inner_disk", "tau2_sqrt2_shell", "mu2_disk_const"]
    return cols, _sweep(_fig4_point, alphas, jobs, (mu2,))


def cmd_figure(args) -> None:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    columns, rows = figure_rows(args.id, args.points, args.jobs)
    out = Path(args.out)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(columns, rows))
    print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)


# -- thresholds ----------------------------------------------------------------

def cmd_thresholds(args) -> OutputRecord:
    params = {"which": args.which, "dim": args.dim, "beta": args.beta, "l": args.l}
    if args.which == "alpha-star":
        if args.beta is None or args.beta <= 0:
            raise UsageError("--beta must be positive")
        reports = [find_alpha_star(args.dim, args.beta, args.l, args.points)]
    else:
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta are required")
        g = _geometry(args)
        params["alpha"] = g.alpha
        if args.which == "h1":
            reports = [find_h1(g, args.l)]
        elif args.which == "h0":
            reports = [find_h0(g, args.l)]
        else:
            lo, hi = args.range
            if not lo < hi:
                raise UsageError("--range needs LO < HI")
            params["range"] = [lo, hi]
            params["points"] = args.points
            reports = find_h_crossing(g, args.l, (lo, hi), args.points)
    columns = ["value", "bracket_lo", "bracket_hi", "residual", "iterations"]
    rows = [{"value": r.value, "bracket_lo": r.bracket[0], "bracket_hi": r.bracket[1],
             "residual": r.residual, "iterations": r.iterations} for r in reports]
    diagnostics = {"count": len(rows), "methods": sorted({r.method for r in reports})}
    return OutputRecord("thresholds", params, columns, rows, diagnostics)


# -- bound ---------------------------------------------------------------------

def parse_domain(spec: str, alpha: float, beta: float, dim: int):
    """``concentric`` | ``eccentric:d=X`` | ``star:q=Q,coeffs=A;B[,phase=P]``."""
    kind, _, rest = spec.partition(":")
    opts = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise UsageError(f"malformed domain option {item!r}")
        opts[key.strip()] = val.strip()
    try:
        if kind == "concentric" and not opts:
            return ConcentricShell(alpha, beta, dim)
        if kind == "eccentric" and set(opts) == {"d"}:
            return EccentricShell(alpha, beta, _finite(opts["d"]), dim)
        if kind == "star" and {"q", "coeffs"} <= set(opts) <= {"q", "coeffs", "phase"}:
            if dim != 2:
                raise UsageError("star-shaped shells are planar (--dim 2)")
            coeffs = tuple(_finite(c) for c in opts["coeffs"].split(";") if c)
            return StarShell(alpha, beta, coeffs, int(opts["q"]), _finite(opts.get("phase", "0")))
    except (argparse.ArgumentTypeError, ValueError) as exc:
        raise UsageError(f"invalid domain {spec!r}: {exc}") from exc
    raise UsageError(f"invalid domain {spec!r}")


def cmd_bound(args) -> OutputRecord:
    g = _geometry(args)
    dom = parse_domain(args.domain, g.alpha, g.beta, g.dimension)
    prof = extend_profile(ModeProblem(g, args.l, args.h), dom.r_max)
    qv = weinberger_quotient(dom, prof)
    row = {"quotient": qv, "tau_l1": prof.tau, "gap": prof.tau - qv}
    params = {"domain": args.domain, "dim": g.dimension, "alpha": g.alpha, "beta": g.beta,
              "l": args.l, "h": _h_param(args.h)}
    diagnostics = {"quad_rtol": trial_bounds.QUAD_RTOL, "r_max": dom.r_max}
    return OutputRecord("bound", params, ["quotient", "tau_l1", "gap"], [row], diagnostics)


# -- verify --------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .acceptance import run_suite
    results = run_suite(args.suite)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAIL if failed else EXIT_OK


# -- parser --------------------------------------------------------------------

def _add_geometry(p, required=True):
    p.add_argument("--dim", type=int, default=2, help="space dimension N >= 2")
    p.add_argument("--alpha", type=_finite, required=required, help="inner radius")
    p.add_argument("--beta", type=_finite, required=required, help="outer radius")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robinshell", description=__doc__.splitlines()[0])
    parser.add_argument("--tol-eig", type=_tol, default=None, help="relative tolerance of the radial integrator")
    parser.add_argument("--tol-quad", type=_tol, default=None, help="relative tolerance of the angular quadrature")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="first K eigenvalues of a spherical shell")
    _add_geometry(p)
    p.add_argument("--h", type=parse_h, required=True, help="Robin parameter on the inner sphere, or 'inf'")
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--method", choices=["sl", "bessel", "both"], default="sl")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("figure", help="write the data behind a figure as CSV")
    p.add_argument("--id", choices=["fig1", "fig4"], required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for the sweep")

    p = sub.add_parser("thresholds", help="critical Robin parameters and inner radii")
    p.add_argument("--which", choices=["h1", "h0", "crossing", "alpha-star"], required=True)
    _add_geometry(p, required=False)
    p.add_argument("--l", type=_positive_int, required=True)
    p.add_argument("--range", type=_finite, nargs=2, metavar=("LO", "HI"), default=(-1.01, 0.5))
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("bound", help="trial quotient of the extended radial profile")
    p.add_argument("--domain", required=True, help="concentric | eccentric:d=X | star:q=Q,coeffs=A;B[,phase=P]")
    _add_geometry(p)
    p.add_argument("--l", type=_nonneg_int, required=True)
    p.add_argument("--h", type=parse_h, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--suite", choices=["all", "fast"], default="all")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    set_tolerances(args.tol_eig, args.tol_quad)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "figure":
            cmd_figure(args)
            return EXIT_OK
        handler = {"spectrum": cmd_spectrum, "thresholds": cmd_thresholds, "bound": cmd_bound}[args.command]
        _emit(handler(args), args.format)
        return EXIT_OK
    except UsageError as exc:
        print(f"robinshell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, RobinShellError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"robinshell: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFRA


if __name__ == "__main__":
    sys.exit(main())
