"""``polynet`` command line.

Exit codes: 0 success, 1 verification or fit failure, 2 usage error,
3 input-file error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import sle_kpz as sk
from .enumeration import (
    Ensemble,
    EnsembleKind,
    InvalidFugacity,
    Lattice,
    NMaxTooLarge,
    Weighting,
    census_from_csv,
    census_to_csv,
    default_threads,
    enumerate_walks,
)
from .exact import as_exact, format_exact
from .fitting import FitMethod, InsufficientData, NonPositiveCount, fit_entropic, fit_nu, \
    fit_report_csv, fit_report_text, stable
from .network import NetworkError, census, gamma_exponent, parse_network, with_surface_bc
from .tables import (
    BoundaryCondition,
    DimensionSetting,
    UniversalityClass,
    UnsupportedCombination,
    x_bulk,
    x_surface,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FILE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class FileError(Exception):
    pass


def _fmt(value) -> str:
    return format_exact(value) if not hasattr(value, "coefficients") else str(value)


def _class(text: str) -> UniversalityClass:
    try:
        return UniversalityClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bc(text: str) -> BoundaryCondition:
    try:
        return BoundaryCondition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _setting(text: str) -> DimensionSetting:
    try:
        return DimensionSetting.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact(text: str):
    try:
        return as_exact(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror or exc}") from None


# -- commands --------------------------------------------------------------------

def cmd_exponent(args) -> int:
    out = []
    if not args.no_meta:
        out.append(f"# x_L|x_L^S  class={args.cls.value} bc={args.bc.value} setting={args.setting}")
    for L in range(1, args.L_max + 1):
        out.append(f"{_fmt(x_bulk(L, args.cls, args.setting))}|"
                   f"{_fmt(x_surface(L, args.cls, args.bc, args.setting))}")
    print("\n".join(out))
    return EXIT_OK


def cmd_gamma(args) -> int:
    try:
        net = parse_network(_read(args.network))
    except NetworkError as exc:
        raise FileError(f"{args.network}: {exc}") from None
    net = with_surface_bc(net, args.bc_default)
    c = census(net)
    g = gamma_exponent(net, args.cls, args.setting)
    lines = []
    if not args.no_meta:
        lines.append(f"# network {args.network} class={args.cls.value} "
                     f"bc-default={args.bc_default.value} setting={args.setting}")
    lines.append(f"V={c.V} V_S={c.V_S} chains={c.N_chains} loops={c.loops} L_S={c.L_S}")
    for label, counts in (("bulk", c.n_bulk), ("surface", c.n_surface), ("special", c.n_special),
                          ("mixed", c.n_mixed), ("bridge", c.n_bridge)):
        if counts:
            lines.append(f"{label} legs: " + " ".join(f"{L}x{n}" for L, n in counts.items()))
    lines.append(f"gamma = {_fmt(g)}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_kpz(args) -> int:
    k = args.kappa
    op = args.op
    if op == "u":
        print(_fmt(sk.kpz_u(k, args.delta)))
    elif op == "v":
        print(_fmt(sk.kpz_v(k, args.delta)))
    elif op == "u-inverse":
        print(_fmt(sk.kpz_u_inverse(k, args.x)))
    elif op == "surface":
        print(_fmt(sk.x_surface_Lj(k, args.L, args.j)))
    elif op == "bulk":
        print(_fmt(sk.x_bulk_Lj(k, args.L, args.j)))
    elif op == "rho":
        print(_fmt(sk.x_L_rho(k, args.L, args.rho1, args.rho2)))
    elif op == "special":
        print(_fmt(sk.special_x(k, args.L)))
    elif op == "mixed":
        print(_fmt(sk.mixed_x(k, args.L)))
    elif op == "welding":
        ok = sk.welding_consistency(k, args.L, args.j)
        std, dual = sk.weight_to_dims(sk.wedge_weight_boundary(k, args.L, args.j), k)
        print(f"W={_fmt(sk.wedge_weight_boundary(k, args.L, args.j).W)} "
              f"Delta={_fmt(std.value)} dual={_fmt(dual.value)} consistent={ok}")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_enumerate(args) -> int:
    weighting = Weighting(args.weighting)
    if weighting is Weighting.CONTACT and args.ensemble is not EnsembleKind.POLYGON:
        raise UsageError("--weighting contact applies to polygons only")
    ens = Ensemble(args.ensemble, args.fugacity, weighting)
    threads = args.threads if args.threads is not None else default_threads()
    result = enumerate_walks(args.lattice, ens, args.n_max, threads)
    text = census_to_csv(result, meta=not args.no_meta, long=args.long)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise FileError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_fit(args) -> int:
    if args.acceptance:
        from .acceptance import run_acceptance
        results = run_acceptance(args.criteria, args.threads)
        for r in results:
            print(r.line())
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if not args.census:
        raise UsageError("fit needs a census CSV file (or --acceptance)")
    try:
        data = census_from_csv(_read(args.census))
    except ValueError as exc:
        raise FileError(f"{args.census}: {exc}") from None
    methods = [FitMethod.THREE_POINT, FitMethod.RATIO] if args.method == "both" \
        else [FitMethod(args.method)]
    rows = []
    try:
        if args.quantity in ("gamma", "all"):
            fits = [fit_entropic(data.counts, m) for m in methods]
            rows += [("gamma", f) for f in fits]
        if args.quantity in ("nu", "all"):
            if data.r2_sums is None:
                if args.quantity == "nu":
                    raise InsufficientData("census has no r2_sum column")
            else:
                rows.append(("nu", fit_nu(data.counts, data.r2_sums)))
    except (InsufficientData, NonPositiveCount) as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "csv":
        sys.stdout.write(fit_report_csv(rows))
    else:
        sys.stdout.write(fit_report_text(rows))
        gam = [f for name, f in rows if name == "gamma"]
        if len(gam) == 2:
            print(f"stable: {'yes' if stable(*gam) else 'no'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, run_all
    if args.list:
        print("\n".join(SUITES))
        return EXIT_OK
    unknown = [s for s in args.suite or [] if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    results = run_all(args.suite or None)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.checks - len(r.failures)}/{r.checks}")
        for f in r.failures[: args.show]:
            print(f"    {f}")
        if len(r.failures) > args.show:
            print(f"    ... {len(r.failures) - args.show} more")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polynet", description="Polymer network exponents, "
                                "SLE/KPZ algebra and exact walk enumeration.")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    e = sub.add_parser("exponent", help="print x_L|x_L^S rows", formatter_class=fmt)
    e.add_argument("--class", dest="cls", type=_class, default=UniversalityClass.SAW,
                   help="saw, theta, brownian or maw")
    e.add_argument("--bc", type=_bc, default=BoundaryCondition.ORDINARY,
                   help="ordinary, special or mixed")
    e.add_argument("--setting", type=_setting, default=DimensionSetting.parse("exact2d"),
                   help="exact2d, d=<rational>, eps1 or eps2")
    e.add_argument("--L-max", dest="L_max", type=int, default=5, help="largest L")
    e.add_argument("--no-meta", action="store_true", help="omit the '#' header line")
    e.set_defaults(func=cmd_exponent)

    g = sub.add_parser("gamma", help="configuration exponent of a network file", formatter_class=fmt)
    g.add_argument("network", help="network file")
    g.add_argument("--class", dest="cls", type=_class, default=UniversalityClass.SAW)
    g.add_argument("--bc-default", type=_bc, default=BoundaryCondition.ORDINARY,
                   help="boundary condition applied to plain 'surface' vertices")
    g.add_argument("--setting", type=_setting, default=DimensionSetting.parse("exact2d"))
    g.add_argument("--no-meta", action="store_true")
    g.set_defaults(func=cmd_gamma)

    k = sub.add_parser("kpz", help="SLE/KPZ exponent algebra", formatter_class=fmt)
    k.add_argument("op", choices=["u", "v", "u-inverse", "surface", "bulk", "rho", "special",
                                  "mixed", "welding"])
    k.add_argument("--kappa", type=_exact, required=True, help="rational kappa")
    k.add_argument("--delta", type=_exact, default=None, help="quantum dimension (u, v)")
    k.add_argument("--x", type=_exact, default=None, help="Euclidean dimension (u-inverse)")
    k.add_argument("--L", type=int, default=1)
    k.add_argument("--j", type=int, default=0)
    k.add_argument("--rho1", type=_exact, default=0)
    k.add_argument("--rho2", type=_exact, default=0)
    k.set_defaults(func=cmd_kpz)

    n = sub.add_parser("enumerate", help="exact walk census as CSV", formatter_class=fmt)
    n.add_argument("--lattice", type=Lattice, default=Lattice.SQUARE, help="square or hexagonal")
    n.add_argument("--ensemble", type=EnsembleKind, default=EnsembleKind.FREE,
                   help="free, taw, arch, bridge or polygon")
    n.add_argument("--n-max", type=int, default=20, help="largest length (guardrail 28)")
    n.add_argument("--fugacity", type=_exact, default="1",
                   help="surface fugacity, e.g. 3/2 or 1+sqrt(2)")
    n.add_argument("--weighting", choices=["unit", "contact"], default="unit",
                   help="polygon weighting")
    n.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: POLYNET_THREADS or 1)")
    n.add_argument("--long", action="store_true",
                   help="write the contact histogram (N,contacts,count)")
    n.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    n.add_argument("--no-meta", action="store_true", help="omit '#' metadata lines")
    n.set_defaults(func=cmd_enumerate)

    f = sub.add_parser("fit", help="fit exponents from a census CSV", formatter_class=fmt)
    f.add_argument("census", nargs="?", help="CSV written by 'polynet enumerate'")
    f.add_argument("--quantity", choices=["gamma", "nu", "all"], default="all")
    f.add_argument("--method", choices=["three_point", "ratio", "both"], default="both")
    f.add_argument("--format", choices=["text", "csv"], default="text")
    f.add_argument("--acceptance", action="store_true",
                   help="run the enumeration-based acceptance criteria instead")
    f.add_argument("--criteria", type=int, nargs="+", default=[4, 5, 6, 7],
                   help="criteria to run with --acceptance")
    f.add_argument("--threads", type=int, default=None)
    f.set_defaults(func=cmd_fit)

    v = sub.add_parser("verify", help="run the exact identity suites", formatter_class=fmt)
    v.add_argument("--list", action="store_true", help="list suite names")
    v.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    v.add_argument("--show", type=int, default=5, help="failures shown per suite")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "kpz":
            need = {"u": "delta", "v": "delta", "u-inverse": "x"}.get(args.op)
            if need and getattr(args, need) is None:
                raise UsageError(f"kpz {args.op} needs --{need}")
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args)
    except FileError as exc:
        print(f"polynet: error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (UsageError, UnsupportedCombination, NMaxTooLarge, InvalidFugacity,
            sk.JOutOfRange, sk.NegativeDiscriminant) as exc:
        print(f"polynet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"polynet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
