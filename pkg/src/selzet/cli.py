"""Command-line front end.

Subcommands evaluate the library functions over points or grids, run the
class enumeration, and run the identity/residual suites.  JSON-lines is
the canonical output format (CSV alternative); every row echoes its
inputs next to the value, tail bound, and truncation metadata.

Exit codes: 0 success, 1 residual-tolerance failure in `suite`,
2 parse/validation error, 3 numerical domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import binom_zeta, completion, products, spectral, spectrum
from .errors import SelzetError
from .report import make_row, render_curve_figure, render_residual_figure, write_rows
from .suite import run_suite


class CLIParseError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse 're+imi' complex syntax, optional parentheses, plain reals."""
    raw = text.strip().strip("()").replace(" ", "")
    if not raw:
        raise CLIParseError(f"empty complex literal {text!r}")
    norm = raw.replace("i", "j").replace("I", "j")
    try:
        return complex(norm)
    except ValueError as exc:
        raise CLIParseError(f"cannot parse complex number {text!r}") from exc


def parse_values(text: str):
    """One complex value, or a real grid 'start:stop:count'."""
    if text.count(":") == 2:
        parts = text.split(":")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise CLIParseError(f"cannot parse grid {text!r}") from exc
        if count < 1:
            raise CLIParseError(f"grid count must be >= 1 in {text!r}")
        return [complex(v) for v in np.linspace(start, stop, count)]
    return [parse_complex(text)]


def parse_sign(text: str) -> int:
    if text in ("+", "+1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise CLIParseError(f"sign must be + or -, got {text!r}")


def _policy(args) -> products.TruncationPolicy:
    kwargs = {}
    if getattr(args, "norm_cutoff", None) is not None:
        kwargs["norm_cutoff"] = args.norm_cutoff
    if getattr(args, "n_cutoff", None) is not None:
        kwargs["n_cutoff"] = args.n_cutoff
    if getattr(args, "tol", None) is not None:
        kwargs["tail_tolerance"] = args.tol
    return products.TruncationPolicy(**kwargs)


def _trunc_meta(point: products.ZetaPoint) -> dict:
    pol = point.truncation
    return {"n_cutoff": pol.n_cutoff,
            "norm_cutoff": (None if math.isinf(pol.norm_cutoff)
                            else pol.norm_cutoff),
            "tail_tolerance": pol.tail_tolerance}


def _load_spec(args) -> spectrum.LengthSpectrum:
    if not args.spectrum:
        raise CLIParseError("--spectrum PATH is required for this subcommand")
    return spectrum.load_spectrum(args.spectrum)


def _load_eigen(args) -> spectrum.EigenSpectrum:
    if not args.eigen:
        raise CLIParseError("--eigen PATH is required for this subcommand")
    return spectrum.load_eigen(args.eigen)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (rows, exit_code)


def cmd_zeta_t(args):
    rows = []
    for z in parse_values(args.z):
        for s in parse_values(args.s):
            t = parse_complex(args.t)
            if args.deriv:
                n = binom_zeta._as_int(t)
                if n is not None:
                    v = binom_zeta.zeta_t_int_zderiv(z, s, n)
                elif abs(z) < 1e-12:
                    v = binom_zeta.log_gamma2(s, t)
                else:
                    raise CLIParseError(
                        "--deriv needs integer t, or z=0 for non-integer t")
                rows.append(make_row("zeta-t-deriv", value=v, z=z, s=s, t=t))
            else:
                v = binom_zeta.zeta_t(z, s, t)
                rows.append(make_row("zeta-t", value=v, z=z, s=s, t=t))
    return rows, 0


def cmd_gamma2(args):
    rows = []
    for s in parse_values(args.s):
        t = parse_complex(args.t)
        lg = binom_zeta.log_gamma2(s, t)
        rows.append(make_row("gamma2", value=np.exp(lg), s=s, t=t,
                             detail={"log_re": lg.real, "log_im": lg.imag}))
    return rows, 0


def cmd_msin(args):
    rows = []
    for s in parse_values(args.s):
        lg = binom_zeta.log_multisine(s, args.n)
        rows.append(make_row("msin", value=np.exp(lg), s=s, n=args.n,
                             detail={"log_re": lg.real, "log_im": lg.imag}))
    return rows, 0


def cmd_spectrum_enum(args):
    with open(args.generators) as fh:
        data = json.load(fh)
    try:
        G = spectrum.GroupPresentation(
            generators=tuple(np.array(g, dtype=float)
                             for g in data["generators"]),
            genus=int(data["genus"]))
    except KeyError as exc:
        raise CLIParseError(f"generator file missing key {exc}") from exc
    spec = spectrum.enumerate_classes(G, args.max_word_len, args.norm_cutoff)
    if args.out:
        spectrum.save_spectrum(spec, args.out)
    rows = [make_row(
        "spectrum-enum", n=len(spec.entries),
        detail={"classes": len(spec.entries),
                "primitives": len(spec.primitives()),
                "total_multiplicity": sum(e.multiplicity for e in spec.entries),
                "min_norm": spec.entries[0].norm if spec.entries else None,
                "max_word_len": args.max_word_len,
                "norm_cutoff": args.norm_cutoff,
                "out": args.out})]
    return rows, 0


def cmd_spectrum_info(args):
    spec = _load_spec(args)
    rows = [make_row(
        "spectrum-info",
        detail={"genus": spec.genus, "norm_cutoff": spec.norm_cutoff,
                "classes": len(spec.entries),
                "primitives": len(spec.primitives()),
                "total_multiplicity": sum(e.multiplicity for e in spec.entries),
                "min_norm": spec.entries[0].norm if spec.entries else None,
                "max_norm": spec.entries[-1].norm if spec.entries else None})]
    return rows, 0


def cmd_zprod(args):
    spec = _load_spec(args)
    pol = _policy(args)
    rows = []
    for s in parse_values(args.s):
        if args.kind == "classic":
            pt = products.log_Z_classic(s, spec, pol)
        elif args.kind == "ruelle":
            pt = products.log_ruelle(s, spec, pol)
        elif args.kind == "two-var":
            if args.t is None:
                raise CLIParseError("--t is required for --kind two-var")
            pt = products.log_Z2(s, parse_complex(args.t), spec, pol)
        elif args.kind == "rank":
            if args.r is None:
                raise CLIParseError("--r is required for --kind rank")
            pt = products.log_Z_rank(s, args.r, spec, pol)
        elif args.kind == "logderiv":
            t = parse_complex(args.t) if args.t is not None else 0j
            v = products.logderiv_Z2(s, t, spec, pol, order=args.m or 0)
            rows.append(make_row("zprod-logderiv", value=v, s=s, t=t,
                                 m=args.m or 0))
            continue
        else:  # pragma: no cover - argparse choices guard this
            raise CLIParseError(f"unknown kind {args.kind!r}")
        rows.append(make_row(
            "zprod-" + args.kind, value=pt.value, s=pt.s, t=pt.t,
            tail_bound=pt.tail_bound, truncation=_trunc_meta(pt),
            detail={"log_re": pt.log_value.real, "log_im": pt.log_value.imag}))
    return rows, 0


def cmd_det(args):
    eig = _load_eigen(args)
    rows = []
    for s in parse_values(args.s):
        if args.kind == "gamma":
            if args.t is None:
                raise CLIParseError("--t is required for --kind gamma")
            sign = parse_sign(args.sign)
            v = spectral.log_det_gamma_spec(s, parse_complex(args.t), eig, sign)
            rows.append(make_row("det-gamma", value=v, s=s, t=args.t,
                                 sign="+" if sign > 0 else "-"))
        elif args.kind == "sine":
            if args.n is None:
                raise CLIParseError("--n is required for --kind sine")
            sign = parse_sign(args.sign)
            v = spectral.log_det_sine_spec(s, args.n, eig, sign)
            rows.append(make_row("det-sine", value=v, s=s, n=args.n,
                                 sign="+" if sign > 0 else "-"))
        else:
            v = spectral.log_det_laplacian(s, eig,
                                           include_zero=args.include_zero)
            rows.append(make_row("det-laplacian", value=v, s=s,
                                 detail={"include_zero": args.include_zero}))
    return rows, 0


def cmd_trace_check(args):
    spec = _load_spec(args)
    eig = _load_eigen(args)
    pol = _policy(args)
    g = args.genus if args.genus is not None else spec.genus
    rows = []
    for s in parse_values(args.s):
        t = parse_complex(args.t)
        rep = spectral.trace_report(s, t, args.m, spec, eig, g, pol)
        rows.append(make_row(
            "trace-check", value=rep["residual"], s=s, t=t, m=args.m,
            tail_bound=rep["geometric_tail_bound"],
            detail={k: [rep[k].real, rep[k].imag]
                    for k in ("geometric", "spectral", "identity")}))
    return rows, 0


def cmd_fe_check(args):
    rows = []
    svals = parse_values(args.s)
    y = parse_complex(args.y) if args.y else 0.5 + 0j
    eig = spectrum.load_eigen(args.eigen) if args.eigen else None
    spec = spectrum.load_spectrum(args.spectrum) if args.spectrum else None
    lemfe_res, deriv_res, zhat_res = [], [], []
    for s in svals:
        r = completion.lemfe_residual(args.n, s, y)
        lemfe_res.append(r)
        rows.append(make_row("fe-lemfe", value=r, n=args.n, s=s, y=y))
        if eig is not None:
            rd = completion.fe_deriv_residual(args.n, s, args.m or 2, eig)
            deriv_res.append(rd)
            rows.append(make_row("fe-deriv", value=rd, n=args.n, s=s,
                                 m=args.m or 2))
            if spec is not None:
                g = args.genus if args.genus is not None else spec.genus
                rz = completion.zhat_reflection_residual(
                    s, args.n, spec, eig, g, _policy(args))
                zhat_res.append(rz)
                rows.append(make_row("fe-zhat", value=rz, n=args.n, s=s,
                                     detail={"genus": g}))
    if args.figures:
        x = [complex(s).real for s in svals]
        curves = {"lemfe": lemfe_res}
        if deriv_res:
            curves["fe-deriv"] = deriv_res
        if zhat_res:
            curves["zhat-reflection"] = zhat_res
        render_curve_figure(
            x, curves, f"{args.figures}/fe_check_n{args.n}.png",
            f"reflection residuals, n={args.n}", "Re s", "residual", logy=True)
    return rows, 0


def cmd_suite(args):
    results = run_suite()
    rows = []
    for r in results:
        rows.append(make_row(
            "suite", value=r.residual,
            detail={"check": r.check_id, "tolerance": r.tolerance,
                    "status": "pass" if r.passed else "fail"}))
    if args.figures:
        render_residual_figure(
            [r.check_id for r in results], [r.residual for r in results],
            [r.tolerance for r in results],
            f"{args.figures}/suite_residuals.png", "property-suite residuals")
    failed = [r for r in results if not r.passed]
    return rows, (1 if failed else 0)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selzet",
        description="Two-variable Selberg zeta numerics: special functions, "
                    "length spectra, Euler products, regularized "
                    "determinants, and identity checkers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spectrum_flag=False, eigen_flag=False):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write rows to this path")
        p.add_argument("--tol", type=float, help="tail tolerance")
        if spectrum_flag:
            p.add_argument("--spectrum", help="length-spectrum JSON-lines file")
            p.add_argument("--norm-cutoff", type=float, dest="norm_cutoff")
            p.add_argument("--n-cutoff", type=int, dest="n_cutoff")
        if eigen_flag:
            p.add_argument("--eigen", help="eigenvalue JSON-lines file")

    p = sub.add_parser("zeta-t", help="binomial Hurwitz zeta values")
    p.add_argument("--z", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--deriv", action="store_true",
                   help="z-derivative instead of the value")
    common(p)
    p.set_defaults(handler=cmd_zeta_t)

    p = sub.add_parser("gamma2", help="two-variable gamma")
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    common(p)
    p.set_defaults(handler=cmd_gamma2)

    p = sub.add_parser("msin", help="multiple sine")
    p.add_argument("--s", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_msin)

    p = sub.add_parser("spectrum-enum", help="enumerate conjugacy classes")
    p.add_argument("--generators", required=True,
                   help="JSON file with genus and 2x2 generator matrices")
    p.add_argument("--max-word-len", type=int, required=True,
                   dest="max_word_len")
    p.add_argument("--norm-cutoff", type=float, required=True,
                   dest="norm_cutoff")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the spectrum file here")
    p.set_defaults(handler=cmd_spectrum_enum)

    p = sub.add_parser("spectrum-info", help="summarize a spectrum file")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_spectrum_info)

    p = sub.add_parser("zprod", help="truncated Euler products")
    p.add_argument("--kind", required=True,
                   choices=("classic", "ruelle", "two-var", "rank", "logderiv"))
    p.add_argument("--s", required=True)
    p.add_argument("--t")
    p.add_argument("--r", type=int, help="rank for --kind rank")
    p.add_argument("--m", type=int, help="derivative order for logderiv")
    common(p, spectrum_flag=True)
    p.set_defaults(handler=cmd_zprod)

    p = sub.add_parser("det", help="regularized determinants")
    p.add_argument("--kind", required=True,
                   choices=("gamma", "sine", "laplacian"))
    p.add_argument("--s", required=True)
    p.add_argument("--t")
    p.add_argument("--n", type=int)
    p.add_argument("--sign", default="+")
    p.add_argument("--include-zero", action="store_true", dest="include_zero")
    common(p, eigen_flag=True)
    p.set_defaults(handler=cmd_det)

    p = sub.add_parser("trace-check", help="trace-formula residual report")
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--genus", type=int)
    common(p, spectrum_flag=True, eigen_flag=True)
    p.set_defaults(handler=cmd_trace_check)

    p = sub.add_parser("fe-check",
                       help="reflection-identity residuals (and figures)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--y")
    p.add_argument("--m", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--figures", help="directory for rendered figures")
    common(p, spectrum_flag=True, eigen_flag=True)
    p.set_defaults(handler=cmd_fe_check)

    p = sub.add_parser("suite", help="full property-test battery")
    p.add_argument("--figures", help="directory for rendered figures")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rows, status = args.handler(args)
    except CLIParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SelzetError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    out_path = getattr(args, "out", None)
    if args.command == "spectrum-enum":
        out_path = None  # --out already holds the spectrum artifact
    text = write_rows(rows, args.format, out_path)
    if not out_path:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
