"""Command-line interface: ``imbalance analyze | bounds | verify | gen | search``.

JSON goes to stdout, a short human-readable summary to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage or parse error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .bounds import evaluate_bounds, gather_analyses, open_problem_info
from .errors import CapacityError, ImbalanceError
from .functable import FunctionTable, random_bijection, random_function
from .gfield import build_gold, build_inverse, build_power, build_projection, build_quadratic, parse_field
from .group import parse_group
from .report import analyze_function, dumps, tool_version, verify_function
from .search import exhaustive_min_nb
from .tableio import dump_table, load_affine_shifts, parse_table

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_table(path: str) -> FunctionTable:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_table(text)


def _shifts(args, F):
    if not getattr(args, "affine_shifts", None):
        return []
    return load_affine_shifts(args.affine_shifts, F.domain, F.codomain)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_analyze(args) -> int:
    F = _read_table(args.path)
    report = analyze_function(
        F,
        oracle_check=args.oracle_check,
        include_ddt=args.ddt,
        affine_shifts=_shifts(args, F),
        provenance={"source": args.path},
    )
    sys.stdout.write(dumps(report.to_json()))
    ind = report.indicators
    line = (
        f"NB_F = {ind['nb']['num']}/{ind['nb']['den']}  ambiguity = {ind['ambiguity']}  "
        f"deficiency = {ind['deficiency']}  uniformity = {ind['differential_uniformity']}"
    )
    if report.spectral.get("nonlinearity_classical") is not None:
        line += f"  NL = {report.spectral['nonlinearity_classical']:g}"
    _say(line)
    if not report.verification["all_ok"]:
        _say("verification failed")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bounds(args) -> int:
    F = _read_table(args.path)
    an = gather_analyses(F)
    records = evaluate_bounds(F, an, _shifts(args, F))
    out = {"bounds": [r.to_json() for r in records], "open_problem": open_problem_info(F, an.indicators.nb)}
    sys.stdout.write(dumps(out))
    applicable = [r for r in records if r.applicable]
    failed = [r.id for r in applicable if r.holds is False and r.discrepancy is None]
    tight = [r.id for r in applicable if r.tight]
    _say(f"{len(applicable)} applicable bounds, tight: {', '.join(tight) or 'none'}")
    if failed:
        _say(f"violated: {', '.join(failed)}")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    F = _read_table(args.path)
    rep = verify_function(F)
    sys.stdout.write(dumps(rep.to_json()))
    if rep.ok:
        _say("all identities hold")
        return EXIT_OK
    _say(f"failed: {', '.join(rep.failures)}")
    return EXIT_VERIFY


def _field_table(args) -> FunctionTable:
    f = parse_field(args.field, args.poly)
    chosen = [
        name
        for name in ("power", "gold", "quadratic", "inverse", "trace")
        if getattr(args, name) not in (None, False)
    ]
    if len(chosen) != 1:
        raise UsageError("--field needs exactly one of --power, --gold, --quadratic, --inverse, --trace")
    kind = chosen[0]
    if kind == "power":
        return build_power(f, args.power)
    if kind == "gold":
        return build_gold(f, args.gold)
    if kind == "inverse":
        return build_inverse(f)
    if kind == "trace":
        return build_projection(f, args.trace)
    try:
        i, j = (int(v) for v in args.quadratic.split(","))
    except ValueError:
        raise UsageError("--quadratic expects i,j") from None
    return build_quadratic(f, i, j)


def cmd_gen(args) -> int:
    if args.field and args.group:
        raise UsageError("--field and --group are mutually exclusive")
    if args.field:
        if args.random is not None or args.bijection or args.codomain:
            raise UsageError("--random/--bijection/--codomain only apply with --group")
        F = _field_table(args)
    elif args.group:
        if any(getattr(args, k) not in (None, False) for k in ("power", "gold", "quadratic", "inverse", "trace", "poly")):
            raise UsageError("family flags need --field")
        if args.random is None:
            raise UsageError("--group needs --random SEED")
        g = parse_group(args.group)
        if args.bijection:
            if args.codomain:
                raise UsageError("--bijection maps a group to itself")
            F = random_bijection(g, args.random)
        else:
            F = random_function(g, parse_group(args.codomain) if args.codomain else g, args.random)
        F = F.with_meta(family="random", seed=args.random, bijection=bool(args.bijection))
    else:
        raise UsageError("gen needs --field or --group")
    text = dump_table(F, args.output, as_json=args.json)
    if args.output is None:
        sys.stdout.write(text)
    _say(f"generated {F.meta.get('family', 'table')} on G1=[{F.domain}] G2=[{F.codomain}]")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.group and (args.g1 or args.g2):
        raise UsageError("use either --group or --g1/--g2")
    if args.group:
        g1 = g2 = parse_group(args.group)
    elif args.g1:
        g1 = parse_group(args.g1)
        g2 = parse_group(args.g2) if args.g2 else g1
    else:
        raise UsageError("search needs --group or --g1")
    if args.exhaustive == (args.sample is not None):
        raise UsageError("choose exactly one of --exhaustive and --sample N")
    if args.exhaustive:
        mode = "bijections" if args.bijections else "all-functions"
        try:
            res = exhaustive_min_nb(g1, g2, mode)
        except CapacityError as exc:
            raise CapacityError(f"{exc} (try --sample N --seed S)") from None
    else:
        res = exhaustive_min_nb(g1, g2, "sample", bijections=args.bijections, samples=args.sample, seed=args.seed)
    out = res.to_json()
    out["groups"] = {"G1": list(g1.orders), "G2": list(g2.orders)}
    out["seed"] = args.seed
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["G1", "G2", "mode", "examined", "min_nb", "min_ambiguity", "minimizers", "witness"])
        w.writerow([
            str(g1), str(g2), out["mode"], out["examined"],
            f"{res.min_nb.numerator}/{res.min_nb.denominator}", out["min_ambiguity"], out["minimizers"],
            " ".join(map(str, out["witness"])),
        ])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(dumps(out))
    _say(f"{out['mode']}: examined {res.examined}, min NB_F = {res.min_nb}, min ambiguity = {res.min_ambiguity}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="imbalance", description="Derivative imbalance, ambiguity and bounds.")
    p.add_argument("--version", action="version", version=tool_version())
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis report of a table")
    a.add_argument("path", help="table file, or - for stdin")
    a.add_argument("--oracle-check", action="store_true", help="cross-check NB_F by direct pair counting")
    a.add_argument("--ddt", action="store_true", help="embed the full difference distribution table")
    a.add_argument("--affine-shifts", metavar="FILE", help="extra affine maps for the B3 bound")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="bound ledger only")
    b.add_argument("path")
    b.add_argument("--affine-shifts", metavar="FILE")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="check every identity; exit 1 on failure")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="generate a function table")
    g.add_argument("--field", metavar="p^n")
    g.add_argument("--poly", metavar="c0,c1,...", help="modulus coefficients, low degree first")
    g.add_argument("--power", type=int, metavar="d")
    g.add_argument("--gold", type=int, metavar="i")
    g.add_argument("--quadratic", metavar="i,j")
    g.add_argument("--inverse", action="store_true")
    g.add_argument("--trace", type=int, metavar="m")
    g.add_argument("--group", metavar="ORDERS")
    g.add_argument("--codomain", metavar="ORDERS")
    g.add_argument("--random", type=int, metavar="SEED")
    g.add_argument("--bijection", action="store_true")
    g.add_argument("-o", "--output", metavar="FILE")
    g.add_argument("--json", action="store_true", help="write the JSON form")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("search", help="minimise NB_F by enumeration or sampling")
    s.add_argument("--group", metavar="ORDERS")
    s.add_argument("--g1", metavar="ORDERS")
    s.add_argument("--g2", metavar="ORDERS")
    s.add_argument("--bijections", action="store_true")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--sample", type=int, metavar="N")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _say(f"usage error: {exc}")
        return EXIT_USAGE
    except CapacityError as exc:
        _say(f"capacity error: {exc}")
        return EXIT_CAPACITY
    except (ImbalanceError, OSError, ValueError) as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
