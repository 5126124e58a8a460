"""Command line entry point: ``qgrowth <verb> ...``.

Exit status is 0 on success, 1 when a congruence or reproduction check fails,
and 2 for usage, precision or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import congruence as C
from . import eta as E
from . import series as S
from .growth import PARTITION_BUDGET, OracleBudgetError, oracle_partition_count
from .operators import HeckeParams, OperatorError, apply_hecke, progression_extract, u_op, v_op
from .series import QSeries, SeriesError

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ring(mod):
    return S.residues(mod) if mod else S.ZZ


def _load_or_build(args, prec=None) -> QSeries:
    if getattr(args, "load", None):
        f = QSeries.loads(Path(args.load).read_text())
        if args.mod:
            f = S.reduce_mod(f, args.mod)
        return f
    series_id = args.series
    if getattr(args, "family", None):
        series_id = f"{args.family}:{args.M}" if args.family in ("wreath-alt", "f") else args.family
    if not series_id:
        raise UsageError("give --series ID, --family or --load FILE")
    return C.build_named_series(series_id, prec if prec is not None else args.prec, _ring(args.mod))


def _emit(args, f: QSeries):
    if getattr(args, "save", None):
        Path(args.save).write_text(f.dumps())
    if args.json:
        print(f.dumps())
        return
    denom = f"/{f.grain}" if f.grain != 1 else ""
    ring = "Z" if f.ring.is_exact else f"Z/{f.ring.modulus}"
    print(f"# grain {f.grain}, offset {f.offset}, prec {f.prec}, ring {ring}")
    for i, c in enumerate(f.coeffs):
        print(f"{f.offset + i}{denom}\t{c}")


def cmd_series(args):
    _emit(args, _load_or_build(args))
    return EXIT_OK


def cmd_eta(args):
    eq = E.parse_eta_quotient(args.expr, args.level)
    verdict = E.modularity_check(eq)
    info = {
        "quotient": str(eq),
        "level": eq.level,
        "weight": str(verdict.weight),
        "sum_delta_r_mod_24": verdict.cond_A,
        "sum_level_over_delta_r_mod_24": verdict.cond_B,
        "character_top": verdict.character_top,
        "modular": verdict.holds,
    }
    if args.json and not args.prec:
        print(json.dumps(info))
        return EXIT_OK
    if not args.json:
        for k, v in info.items():
            print(f"# {k}: {v}")
    if args.prec:
        f = E.eta_quotient_expansion(eq, 24 * args.prec, _ring(args.mod))
        try:
            f = S.to_integral(f)
        except SeriesError:
            pass
        _emit(args, f)
    return EXIT_OK


def cmd_op(args):
    f = _load_or_build(args)
    if args.operator == "U":
        g = u_op(f, args.t)
    elif args.operator == "V":
        g = v_op(f, args.t)
    elif args.operator == "extract":
        if args.B is None:
            raise UsageError("extract needs --B")
        g = progression_extract(f, args.t, args.B)
    else:
        maker = HeckeParams.integer if args.operator == "T" else HeckeParams.half_integral
        if args.weight is None:
            raise UsageError("Hecke operators need --weight")
        g = apply_hecke(f, args.t, maker(args.weight, args.character, args.level))
    _emit(args, g)
    return EXIT_OK


def _parse_filter(text):
    if not text:
        return None
    c, _, rs = text.partition(":")
    try:
        return int(c), tuple(int(r) for r in rs.split(","))
    except ValueError:
        raise UsageError(f"bad --filter {text!r}; expected C:r1,r2,...") from None


def _print_report(args, report: C.CongruenceReport):
    if args.json:
        print(json.dumps(report.to_json()))
        return
    cl = report.claim
    print(f"{cl.series_id}: coeff({cl.A} n + {cl.B}) = 0 mod {cl.modulus}, n <= {cl.n_max}: "
          f"{report.verdict} ({report.verified_count} checked)")
    for n, c in report.violations:
        print(f"  n = {n}: {c}")


def cmd_verify(args):
    claim = C.CongruenceClaim(args.series or "<loaded>", args.A, args.B, args.mod, args.nmax,
                              _parse_filter(args.filter))
    f = _load_or_build(args, claim.top_index + 1) if args.load else None
    report = C.verify_congruence(claim, f)
    _print_report(args, report)
    return EXIT_OK if report.holds else EXIT_VIOLATED


def cmd_scan(args):
    f = _load_or_build(args, args.Amax * args.nmax)
    found = C.scan_congruences(f, args.mod, args.Amax, args.nmax, args.workers,
                               series_id=args.series or "<loaded>")
    if args.json:
        print(json.dumps([c.to_json() for c in found]))
    else:
        for c in found:
            print(f"A={c.A}\tB={c.B}")
        print(f"# {len(found)} candidate progressions mod {args.mod} (n < {args.nmax})")
    return EXIT_OK


def cmd_reproduce(args):
    if args.target == "section6":
        report = C.reproduce_section6(strict=False)
        if args.json:
            print(json.dumps([{"name": c.name, "passed": c.passed, "detail": c.detail}
                              for c in report.checks]))
        else:
            print("\n".join(report.lines()))
        return EXIT_OK if report.passed else EXIT_VIOLATED
    report = C.verify_congruence(C.WREATH_CLAIMS[args.target])
    _print_report(args, report)
    return EXIT_OK if report.holds else EXIT_VIOLATED


def cmd_oracle(args):
    if args.kind == "partitions":
        if args.nmax > PARTITION_BUDGET:
            raise OracleBudgetError(f"n = {args.nmax} exceeds the enumeration budget {PARTITION_BUDGET}")
        values = [oracle_partition_count(n, args.predicate) for n in range(args.nmax + 1)]
    else:
        from .groups import GroupSpec, oracle_bfs_conjugacy_growth

        flavor = "alternating" if args.generators.endswith("3-cycles") else "symmetric"
        values = oracle_bfs_conjugacy_growth(GroupSpec(args.degree, flavor, args.generators), args.nmax)
    print(json.dumps(values) if args.json else " ".join(map(str, values)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgrowth", description="Conjugacy growth series and their congruences.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, source=True, prec=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--mod", type=int, default=None, help="work in Z/mZ")
        if source:
            sp.add_argument("--series", help="series id, e.g. alt, wreath-alt:2, f:2, eta:eta(24)^10")
            sp.add_argument("--load", help="read a series saved with --save")
        if prec:
            sp.add_argument("--prec", type=int, default=50, help="number of integral exponents")
            sp.add_argument("--save", help="write the resulting series as JSON")

    sp = sub.add_parser("series", help="expand a named series")
    common(sp)
    sp.add_argument("--family", choices=["sym", "partition", "even-parts", "alt", "wreath-alt", "f"])
    sp.add_argument("--M", type=int, default=1, help="wreath exponent for wreath-alt and f")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("eta", help="modularity check and expansion of an eta-quotient")
    sp.add_argument("expr", help='e.g. "eta(12)^-2*eta(24)^-1"')
    sp.add_argument("--level", type=int, default=None)
    common(sp, source=False)
    # expansion only on request
    sp.set_defaults(func=cmd_eta, prec=None)

    sp = sub.add_parser("op", help="apply U, V, a Hecke operator or progression extraction")
    sp.add_argument("operator", choices=["U", "V", "T", "T2", "extract"])
    sp.add_argument("t", type=int, help="index t, prime p / ell, or modulus A")
    sp.add_argument("--B", type=int, default=None)
    sp.add_argument("--weight", type=int, default=None, help="k, or lambda for weight lambda + 1/2")
    sp.add_argument("--character", type=int, default=1, help="D in d -> (D/d)")
    sp.add_argument("--level", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("verify", help="check coeff(A n + B) = 0 mod m for n = 0..nmax")
    common(sp, prec=False)
    sp.add_argument("--A", type=int, required=True)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--filter", help="restrict n mod C to residues, as C:r1,r2")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="search for vanishing progressions")
    common(sp, prec=False)
    sp.add_argument("--Amax", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("reproduce", help="rerun a known congruence computation")
    sp.add_argument("target", choices=["section6", "wreath-mod5", "wreath-mod49"])
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("oracle", help="brute-force oracles")
    sp.add_argument("kind", choices=["partitions", "bfs"])
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--predicate", default="all", choices=["all", "even-part-count"])
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--generators", default="all-transpositions",
                    choices=["coxeter", "all-transpositions", "consecutive-3-cycles", "all-3-cycles"])
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "mod", None) is not None and args.mod < 2:
        print("qgrowth: --mod must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.verb in ("verify", "scan") and not args.mod:
        print(f"qgrowth: {args.verb} needs --mod", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, SeriesError, OperatorError, OracleBudgetError, E.EtaQuotientError,
            ValueError, OSError) as exc:
        print(f"qgrowth: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
