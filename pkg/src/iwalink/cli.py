"""Command-line interface.

Every command prints one report; ``--format`` picks JSON (canonical), CSV or
text.  JSON reports carry the configuration that produced them.

Exit codes: 0 success, 1 bad input or I/O, 2 mu/lambda mismatch,
3 vanishing (an infinite homology group or a zero on the torus).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .covers import (CoverSpec, Infinite, LinkPresentation, homology_growth,
                     homology_order_tln, padic_limit_nonp, torres_check, vanishing_check)
from .errors import IwalinkError, MismatchMuLambda, ParseError, ScaleExceeded, VanishesOnTorus
from .families import catalog, catalog_names, dumps_entries, entry_from_json_obj, export_catalog
from .iwasawa import fit_growth_polynomial, verify_asymptotic
from .polyring import LaurentPoly, shift_substitute, unshift_substitute, vp
from .torus import TorusRegion, Vanishes, norm_det_oracle, sigma

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_VANISHES = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --- input helpers ----------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from None


def _load_poly(path: str) -> LaurentPoly:
    return LaurentPoly.from_json_obj(_read_json(path))


def _load_link(args) -> LinkPresentation:
    if getattr(args, "catalog", None):
        return catalog(args.catalog).link
    if not getattr(args, "link", None):
        raise ParseError("give --link FILE or --catalog NAME")
    obj = _read_json(args.link)
    if isinstance(obj, dict) and "result" in obj and "command" in obj:
        obj = obj["result"]
    if isinstance(obj, dict) and "link" in obj:
        return entry_from_json_obj(obj).link
    return LinkPresentation.from_json_obj(obj)


def _load_cover(args, link: LinkPresentation) -> CoverSpec:
    if args.cover:
        return CoverSpec.from_json_obj(_read_json(args.cover))
    if args.p is None:
        raise ParseError("give --cover FILE or -p P (identity cover)")
    return CoverSpec.identity(args.p, link.c)


def _config(args) -> dict:
    skip = {"func", "format", "json"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# --- output -----------------------------------------------------------------

def _jsonable(x):
    if x is Infinite or x is Vanishes:
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _level_rows(levels, p):
    for n, e in levels:
        finite = e is not Infinite and e is not Vanishes
        yield [n, p ** n, e if finite else "", "finite" if finite else "infinite"]


def _emit(args, command: str, result: dict, levels=None, p=None, text: str | None = None):
    fmt = "json" if args.json else args.format
    out = sys.stdout
    if fmt == "json":
        report = {"command": command, "version": __version__, "config": _config(args),
                  "result": _jsonable(result)}
        out.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if levels is not None:
            writer.writerow(["n", "p^n", "exponent", "status"])
            writer.writerows(_level_rows(levels, p))
        else:
            writer.writerow(["key", "value"])
            for k, v in _jsonable(result).items():
                writer.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
        out.write(buf.getvalue())
    else:
        if text is None:
            text = "\n".join(f"{k}: {v}" for k, v in _jsonable(result).items())
        out.write(text.rstrip("\n") + "\n")


# --- commands ---------------------------------------------------------------

def cmd_mu_lambda(args) -> int:
    F = _load_poly(args.poly)
    if args.alexander:
        F = shift_substitute(F)
    try:
        report = verify_asymptotic(F, args.p, args.nmax, args.policy)
    except MismatchMuLambda as exc:
        _emit(args, "mu-lambda", {"error": "mismatch", "message": str(exc)})
        return EXIT_MISMATCH
    except VanishesOnTorus as exc:
        _emit(args, "mu-lambda", {"error": "vanishes", "message": str(exc)})
        return EXIT_VANISHES
    obj = report.to_json_obj()
    _emit(args, "mu-lambda", obj,
          text=f"mu = {report.mu}\nlambda = {report.lam}\nf(U,V) = {report.growth}")
    return EXIT_OK


def cmd_growth(args) -> int:
    link = _load_link(args)
    spec = _load_cover(args, link)
    report = homology_growth(link, spec, args.nmax, fit=not args.no_fit,
                             full_order=args.full_order)
    obj = report.to_json_obj()
    lines = [f"{n:>3}  {spec.p ** n:>8}  {e!r}" for n, e in report.levels]
    if report.orders:
        lines += [f"|H_1| at n={n}: {o!r}" for n, o in report.orders]
    lines.append(f"f(U,V) = {report.growth}" if report.growth is not None
                 else f"fit: {report.fit_status}")
    _emit(args, "growth", obj, levels=report.levels, p=spec.p, text="\n".join(lines))
    return EXIT_VANISHES if any(e is Infinite for _, e in report.levels) else EXIT_OK


def _region(args) -> TorusRegion:
    if args.region == "full":
        return TorusRegion.full(args.p, args.n, args.d)
    if args.region == "punctured":
        return TorusRegion.punctured(args.p, args.n, args.d)
    return TorusRegion.from_json_obj(_read_json(args.region))


def _norm_det_check(F, region, value) -> dict:
    """Compare with the group-ring determinant when the region is a small full torus."""
    if not region.is_full():
        return {"status": "skipped", "reason": "region is not a full torus"}
    try:
        det = norm_det_oracle(unshift_substitute(F), region.p, region.n)
    except ScaleExceeded as exc:
        return {"status": "skipped", "reason": str(exc)}
    if det == 0:
        # under the skip policy a zero product cannot be compared with a finite sum
        return {"status": "vanishes", "agrees": True if value is Vanishes else None}
    return {"status": "checked", "value": det, "agrees": vp(det, region.p) == value}


def cmd_sigma(args) -> int:
    F = _load_poly(args.poly)
    if args.alexander:
        F = shift_substitute(F)
    if args.d is None:
        args.d = F.nvars
    region = _region(args)
    value = sigma(F, region, args.policy)
    result = {"sigma": value, "region": region.to_json_obj(), "policy": args.policy}
    if args.oracle:
        check = sigma(F, region, args.policy, method="orbits")
        result["oracle"] = {"route": "orbits", "value": check, "agrees": check == value}
        if args.policy == "strict":
            prod = sigma(F, region, "strict", method="products")
            result["oracle"]["products"] = prod
            result["oracle"]["agrees"] = result["oracle"]["agrees"] and prod == value
        result["oracle"]["norm_det"] = _norm_det_check(F, region, value)
    _emit(args, "sigma", result, text=repr(value))
    return EXIT_VANISHES if value is Vanishes else EXIT_OK


def cmd_tln(args) -> int:
    link = _load_link(args)
    levels = [(n, homology_order_tln(link, args.p, n)) for n in range(args.nmin, args.nmax + 1)]
    result = {"p": args.p, "levels": [{"n": n, "exponent": e} for n, e in levels]}
    _emit(args, "tln", result, levels=levels, p=args.p,
          text="\n".join(f"{n:>3}  {e!r}" for n, e in levels))
    return EXIT_VANISHES if any(e is Infinite for _, e in levels) else EXIT_OK


def cmd_torres(args) -> int:
    link = _load_link(args)
    report = torres_check(link)
    result = {"passed": report.passed, "first_failure": report.first_failure,
              "components": [{"component": r.component, "passed": r.passed,
                              "lhs": str(r.lhs), "rhs": str(r.rhs)} for r in report.results]}
    _emit(args, "torres", result,
          text="\n".join(f"component {r.component}: {'pass' if r.passed else 'FAIL'}"
                         for r in report.results) or "nothing to check")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_vanishing(args) -> int:
    link = _load_link(args)
    report = vanishing_check(link, args.p, args.nmax)
    _emit(args, "vanishing", report.to_json_obj())
    return EXIT_OK if report.finiteness_hypothesis else EXIT_VANISHES


def cmd_padic_limit(args) -> int:
    if args.orders:
        raw = _read_json(args.orders)
        try:
            orders = [(int(n), int(v)) for n, v in raw]
        except (TypeError, ValueError):
            raise ParseError("orders must be a list of [n, value] pairs", field="orders") from None
    elif args.base is not None:
        orders = [(n, args.base ** (args.p ** n - 1)) for n in range(1, args.nmax + 1)]
    else:
        raise ParseError("give --orders FILE or --base A")
    report = padic_limit_nonp(orders, args.p, args.precision, args.base)
    _emit(args, "padic-limit", report.to_json_obj(), text=str(report.residue))
    return EXIT_OK if report.agrees in (None, True) else EXIT_MISMATCH


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog_names()
        _emit(args, "catalog", {"names": names}, text="\n".join(names))
    elif args.action == "show":
        if not args.name:
            raise ParseError("catalog show needs a name")
        entry = catalog(args.name)
        _emit(args, "catalog", entry.to_json_obj(),
              text=f"{entry.name}: {entry.link.full()}\n{entry.provenance}")
    else:
        text = dumps_entries([catalog(n) for n in catalog_names()])
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_fit(args) -> int:
    raw = _read_json(args.samples)
    try:
        samples = [(int(n), int(v)) for n, v in raw]
    except (TypeError, ValueError):
        raise ParseError("samples must be a list of [n, value] pairs", field="samples") from None
    f = fit_growth_polynomial(samples, args.p, args.d)
    _emit(args, "fit", {"growth_poly": f.to_json_obj(), "mu": f.mu, "lambda": f.lam,
                        "threshold": f.threshold}, text=str(f))
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")

    parser = _Parser(prog="iwalink", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def link_args(p):
        p.add_argument("--link", help="link JSON file ('-' for stdin)")
        p.add_argument("--catalog", help="name of a shipped link")

    p = sub.add_parser("mu-lambda", parents=[common], help="mu and lambda of a polynomial")
    p.add_argument("--poly", required=True, help="polynomial JSON in T ('-' for stdin)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--alexander", action="store_true", help="input is in t; shift it first")
    p.add_argument("--policy", "--vanishing-policy", dest="policy", choices=("skip", "strict"),
                   default="skip")
    p.set_defaults(func=cmd_mu_lambda)

    p = sub.add_parser("growth", parents=[common], help="torsion growth of a branched cover")
    link_args(p)
    p.add_argument("--cover", help="cover JSON file")
    p.add_argument("-p", type=int, help="prime for the identity cover")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--full-order", action="store_true", help="also exact |H_1| (d = c, V = I)")
    p.add_argument("--no-fit", action="store_true")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("sigma", parents=[common], help="valuation sum over a torus region")
    p.add_argument("--poly", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int)
    p.add_argument("--region", default="full", help="full, punctured or a region JSON file")
    p.add_argument("--policy", "--vanishing-policy", dest="policy", choices=("skip", "strict"),
                   default="skip")
    p.add_argument("--alexander", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check with an independent route")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("tln", parents=[common], help="total linking number cover exponents")
    link_args(p)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--nmin", type=int, default=1)
    p.set_defaults(func=cmd_tln)

    p = sub.add_parser("torres", parents=[common], help="check the Torres condition")
    link_args(p)
    p.set_defaults(func=cmd_torres)

    p = sub.add_parser("vanishing", parents=[common], help="zeros of Delta on torsion tori")
    link_args(p)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--nmax", type=int, default=2)
    p.set_defaults(func=cmd_vanishing)

    p = sub.add_parser("padic-limit", parents=[common], help="limit of non-p torsion orders")
    p.add_argument("--orders", help="JSON list of [n, order]")
    p.add_argument("--base", type=int, help="use orders base^(p^n - 1) and cross-check")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--precision", type=int, default=6)
    p.add_argument("--nmax", type=int, default=12)
    p.set_defaults(func=cmd_padic_limit)

    p = sub.add_parser("catalog", parents=[common], help="shipped example links")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("fit", parents=[common], help="fit a growth polynomial to samples")
    p.add_argument("--samples", required=True, help="JSON list of [n, value]")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IwalinkError, OSError, ValueError, KeyError) as exc:
        print(f"iwalink: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
