"""Command-line front end: ``dtop <subcommand> ...``.

Exit codes: 0 success, 1 domain error (e.g. the matrix is not Toeplitz),
2 usage or I/O error.  ``DTOP_TOL`` overrides the default comparison
tolerance (1e-12).
"""

import argparse
import contextlib
import math
import sys

import numpy as np

from . import analysis, operator, quadrature_io as qio
from ._config import default_tol
from .errors import DtopError, SymbolFormatError
from .kernels import e_truncation_order
from .symbols import decompose

GRID_HELP = (
    "w-grid SPEC 'r0:r1:steps@angles': radii linspace(r0, r1, steps) times "
    "'angles' equispaced arguments starting at 0"
)
RADII_HELP = "radii SPEC: comma list '0.5,0.9,0.99' or 'r0:r1:steps'"
FAMILY_HELP = (
    "test family SPEC: 'monomials:NMAX' (z^1..z^NMAX) or "
    "'kernels:r0:r1:steps@angles' (normalized E_w on that grid)"
)


class UsageError(Exception):
    pass


def parse_grid(spec):
    """``r0:r1:steps@angles`` -> list of complex points (radius-major order)."""
    try:
        radial, angles = spec.split("@")
        r0, r1, steps = radial.split(":")
        r0, r1, steps, angles = float(r0), float(r1), int(steps), int(angles)
    except ValueError:
        raise UsageError(f"bad grid spec {spec!r}; expected r0:r1:steps@angles") from None
    if steps < 1 or angles < 1:
        raise UsageError(f"grid spec {spec!r}: steps and angles must be positive")
    radii = np.linspace(r0, r1, steps)
    pts = []
    for r in radii:
        for m in range(angles):
            pts.append(complex(r * np.exp(2j * np.pi * m / angles)))
    for w in pts:
        if not abs(w) < 1.0:
            raise UsageError(f"grid spec {spec!r} leaves the open unit disk")
    return pts


def parse_radii(spec):
    try:
        if ":" in spec:
            r0, r1, steps = spec.split(":")
            radii = list(np.linspace(float(r0), float(r1), int(steps)))
        else:
            radii = [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad radii spec {spec!r}") from None
    if not radii or any(not 0.0 <= r < 1.0 for r in radii):
        raise UsageError(f"radii spec {spec!r}: need a nonempty list in [0, 1)")
    return [float(r) for r in radii]


def parse_family(spec):
    kind, _, rest = spec.partition(":")
    if kind == "monomials":
        try:
            n_max = int(rest)
        except ValueError:
            raise UsageError(f"bad family spec {spec!r}") from None
        if n_max < 1:
            raise UsageError("monomial family needs NMAX >= 1")
        return analysis.monomial_family(n_max), f"monomials z^1..z^{n_max}"
    if kind == "kernels":
        return analysis.kernel_family(parse_grid(rest)), f"normalized E_w on grid {rest}"
    raise UsageError(f"unknown family kind {kind!r} in {spec!r}")


def _fmt(x):
    return "0" if x == 0 else f"{x:.6e}"


def _tol_line(tol):
    return f"tolerance = {tol:.1e}"


def cmd_matrix(args, out):
    a = operator.toeplitz_matrix(qio.load_symbol(args.symbol), args.n)
    if args.out.endswith(".json"):
        qio.write_matrix_json(a, args.out)
    else:
        qio.write_matrix_csv(a, args.out)
    print(f"wrote {a.N}x{a.N} matrix of T_phi to {args.out}", file=out)
    return 0


def cmd_apply(args, out):
    phi = qio.load_symbol(args.symbol)
    f = qio.load_vector(args.vector)
    qio.save_vector(operator.apply(phi, f), args.out)
    print(f"wrote T_phi f to {args.out}", file=out)
    return 0


def cmd_check_bh(args, out):
    if args.matrix:
        a = qio.read_matrix(args.matrix)
    else:
        a = operator.toeplitz_matrix(qio.load_symbol(args.symbol), args.n)
    res, (i, j) = operator.brown_halmos_worst(a)
    tol = default_tol()
    print(f"residual = {_fmt(res)}", file=out)
    print(_tol_line(tol), file=out)
    if res > tol:
        print(f"verdict = not Toeplitz (worst at i={i}, j={j})", file=out)
    else:
        print("verdict = Toeplitz", file=out)
    return 0


def cmd_recover(args, out):
    a = qio.read_matrix(args.matrix)
    tol = default_tol()
    oracle = operator.ToeplitzOracle.from_matrix(a, args.norm_bound)
    if args.k + 1 > a.N:
        raise UsageError(f"--k {args.k} needs a matrix of size >= {args.k + 1}, got {a.N}")
    phi = operator.recover_symbol(oracle, args.k, tol=tol)
    qio.save_symbol(phi, args.out)
    print(f"recovered symbol of degree {phi.degree} -> {args.out}", file=out)
    print(_tol_line(tol), file=out)
    return 0


def cmd_berezin(args, out):
    phi = qio.load_symbol(args.symbol)
    grid = parse_grid(args.grid)
    rows, worst = [], 0.0
    for w in grid:
        n = e_truncation_order(w, args.tail)
        got = analysis.berezin_form(phi, w, n)
        want = analysis.berezin_closed_form(phi, w)
        res = abs(got - want)
        worst = max(worst, res)
        rows.append((w.real, w.imag, got.real, got.imag, want.real, want.imag, res))
    qio.write_series_csv(
        rows, args.out, ("w_re", "w_im", "form_re", "form_im", "closed_re", "closed_im", "residual")
    )
    print(f"max residual = {_fmt(worst)} over {len(grid)} points", file=out)
    print(f"tail = {args.tail:.1e}", file=out)
    print(_tol_line(default_tol()), file=out)
    return 0


def cmd_commute(args, out):
    psi = qio.load_symbol(args.symbol_a)
    phi = qio.load_symbol(args.symbol_b)
    tol = default_tol()
    witness = operator.commute_witness(psi, phi, tol)
    print(f"commute = {'true' if witness is None else 'false'}", file=out)
    if witness is not None:
        m, n = witness
        print(f"witness m={m} n={n}", file=out)
    print(_tol_line(tol), file=out)
    return 0


def cmd_product(args, out):
    psi = qio.load_symbol(args.symbol_a)
    phi = qio.load_symbol(args.symbol_b)
    flag, tau = operator.product_is_toeplitz(psi, phi)
    print(f"product_is_toeplitz = {'true' if flag else 'false'}", file=out)
    if flag:
        qio.save_symbol(tau, args.out)
        print(f"tau -> {args.out}", file=out)
    print(_tol_line(default_tol()), file=out)
    return 0


def cmd_compact_witness(args, out):
    phi = qio.load_symbol(args.symbol)
    values = operator.compactness_witness(phi, args.m_max)
    for m, v in enumerate(values, start=1):
        print(f"m={m} norm={v:.15g}", file=out)
    print(f"min = {min(values):.15g}", file=out)
    print(_tol_line(default_tol()), file=out)
    if args.out:
        qio.write_series_csv(list(enumerate(values, start=1)), args.out, ("m", "value"))
    return 0


def cmd_carleson(args, out):
    phi = qio.load_symbol(args.symbol)
    family, desc = parse_family(args.family)
    need = 2 * (max(f.degree for f in family.values()) + phi.degree)
    q = analysis.make_quadrature(need // 2 + 1, need + 1)
    est = analysis.carleson_lower_bound(phi, family, q, desc)
    qio.write_series_csv(est.ratios, args.out, ("test", "ratio"))
    print(f"lower_bound = {est.lower_bound:.15g}", file=out)
    print(f"family = {est.family_description}", file=out)
    print(f"quadrature degree = {q.degree}", file=out)
    print(_tol_line(default_tol()), file=out)
    return 0


def cmd_decay(args, out):
    radii = parse_radii(args.radii)
    if args.mode == "bloch":
        phi1, _ = decompose(qio.load_symbol(args.symbol))
        values = analysis.bloch_decay(phi1, radii)
    else:
        psi = qio.load_symbol(args.symbol_a)
        phi = qio.load_symbol(args.symbol_b)
        tau = qio.load_symbol(args.tau)
        values = analysis.compact_product_decay(psi, phi, tau, radii)
    qio.write_series_csv(list(zip(radii, values)), args.out, ("r", "value"))
    for r, v in zip(radii, values):
        print(f"r={r:.6g} value={v:.15g}", file=out)
    print(_tol_line(default_tol()), file=out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="dtop",
        description="Toeplitz operators on the Dirichlet space D0 (truncated, numerical).",
        epilog="Set DTOP_TOL to override the comparison tolerance (default 1e-12).",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("matrix", help="matrix of T_phi in the basis z^1..z^N: entry (i,j) = c_{i-j}")
    s.add_argument("--symbol", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", required=True, help="CSV, or JSON if the name ends in .json")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("apply", help="exact action T_phi f = P(phi f)")
    s.add_argument("--symbol", required=True)
    s.add_argument("--vector", required=True, help='vector JSON {"coeffs": [[n, re, im], ...]}')
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser(
        "check-bh",
        help="Brown-Halmos identity T_zbar A T_z = A, i.e. constant diagonals; prints residual",
    )
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--symbol")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_check_bh)

    s = sub.add_parser(
        "recover",
        help="symbol of an operator satisfying T_zbar A T_z = A, c_{i-j} = <A z^j, z^i>/||z^i||^2",
    )
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--norm-bound", type=float, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_recover)

    s = sub.add_parser(
        "berezin",
        help="<T_phi E_w, E_w> against w(1-|w|^2) phi_1'(w) + phi(w) on a w-grid",
    )
    s.add_argument("--symbol", required=True)
    s.add_argument("--grid", required=True, help=GRID_HELP)
    s.add_argument("--tail", type=float, default=1e-10, help="E_w truncation tail norm")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_berezin)

    s = sub.add_parser(
        "commute",
        help="T_a T_b = T_b T_a iff b(m) a(-n) = a(m) b(-n) for all m, n >= 1",
    )
    s.add_argument("--symbol-a", required=True)
    s.add_argument("--symbol-b", required=True)
    s.set_defaults(func=cmd_commute)

    s = sub.add_parser(
        "product",
        help="T_a T_b is Toeplitz iff a is antiholomorphic or b holomorphic; tau = P[(ab)|_T]",
    )
    s.add_argument("--symbol-a", required=True)
    s.add_argument("--symbol-b", required=True)
    s.add_argument("--out", required=True, help="tau JSON (written only when Toeplitz)")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser(
        "compact-witness",
        help="||T_phi^* z^m/||z^m|| || for m <= m_max; bounded below unless phi = 0",
    )
    s.add_argument("--symbol", required=True)
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_compact_witness)

    s = sub.add_parser(
        "carleson",
        help="lower bound for C in int |f|^2 |dphi/dz|^2 dA <= C ||f||^2",
    )
    s.add_argument("--symbol", required=True)
    s.add_argument("--family", required=True, help=FAMILY_HELP)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_carleson)

    s = sub.add_parser(
        "decay",
        help="bloch: (1-r^2)|phi_1'(r)| -> 0; compact-product: |B(ab)(r) - tau(r)| -> 0",
    )
    s.add_argument("--mode", choices=("bloch", "compact-product"), required=True)
    s.add_argument("--radii", required=True, help=RADII_HELP)
    s.add_argument("--symbol", help="symbol for --mode bloch (its holomorphic part is used)")
    s.add_argument("--symbol-a")
    s.add_argument("--symbol-b")
    s.add_argument("--tau")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_decay)
    return p


def _validate(args):
    try:
        default_tol()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if getattr(args, "n", None) is not None and args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.command == "check-bh" and args.symbol and args.n is None:
        raise UsageError("check-bh --symbol needs --n")
    if args.command == "recover":
        if args.k < 0:
            raise UsageError("--k must be >= 0")
        if not (args.norm_bound >= 0 and math.isfinite(args.norm_bound)):
            raise UsageError("--norm-bound must be a finite number >= 0")
    if args.command == "compact-witness" and args.m_max < 1:
        raise UsageError("--m-max must be >= 1")
    if args.command == "berezin":
        if any(abs(w) > 0.95 for w in parse_grid(args.grid)):
            raise UsageError("berezin grid must satisfy |w| <= 0.95")
        if not args.tail > 0:
            raise UsageError("--tail must be positive")
    if args.command == "decay":
        parse_radii(args.radii)
        if args.mode == "bloch" and not args.symbol:
            raise UsageError("--mode bloch needs --symbol")
        if args.mode == "compact-product" and not (args.symbol_a and args.symbol_b and args.tau):
            raise UsageError("--mode compact-product needs --symbol-a, --symbol-b and --tau")
    if args.command == "carleson":
        parse_family(args.family)


def run(argv=None, out=None, err=None):
    """Run the CLI and return the exit code (never raises SystemExit)."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        _validate(args)
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(err)
        print(f"dtop: error: {exc}", file=err)
        return 2
    except (OSError, SymbolFormatError) as exc:
        print(f"dtop: error: {exc}", file=err)
        return 2
    except (DtopError, ValueError) as exc:
        print(f"dtop: error: {exc}", file=err)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
