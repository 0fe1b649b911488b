"""Command-line front end.

Verbs: parse, diff, antidiff, mul, borel, weights, sum, eval, integrate,
check, catalog.  Text output by default, --json for machine-readable form.
Exit codes: 0 success, 1 domain or numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from . import errors
from .resummation import (
    Address,
    QuadratureConfig,
    average_consistency_check,
    borel_transform,
    catalan_weight,
    catalan_weight_literal,
    eb_sum,
)
from .surreal import omega, parse_nf
from .transseries import (
    ts_antidiff,
    ts_diff,
    ts_from_json,
    ts_mul_minus,
    ts_parse,
    ts_print,
    ts_to_json,
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=8, help="series terms to print (default 8)")
    common.add_argument("--prec", type=int, default=None, help="working decimal precision (default 50)")
    common.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance target")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(
        prog="tsr",
        description="transseries calculus, Ecalle-Borel resummation, and surreal integration",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(verb, hlp):
        return sub.add_parser(verb, help=hlp, parents=[common])

    for verb, hlp in [
        ("parse", "parse an expression and print its normalized form"),
        ("diff", "differentiate a transseries expression"),
        ("antidiff", "antidifferentiate a transseries expression"),
    ]:
        add(verb, hlp).add_argument("expression")

    p = add("mul", "multiply two decaying transseries")
    p.add_argument("left")
    p.add_argument("right")

    p = add("borel", "Borel transform of the k = 0 series of an expression")
    p.add_argument("expression")
    p.add_argument("--order", type=int, default=12)

    p = add("weights", "exact Catalan weight of an address like ++-")
    p.add_argument("address")
    p.add_argument("--literal", action="store_true", help="use the printed (inconsistent) formula")

    p = add("sum", "Ecalle-Borel sum a transseries (JSON or expression) at x")
    p.add_argument("transseries", help="expression, or @file.json / - for JSON input")
    p.add_argument("x", type=float)

    p = add("eval", "evaluate a catalog function at a point")
    p.add_argument("name")
    p.add_argument("point", help="a real number, 'omega', or a normal form like 'w+3'")

    p = add("integrate", "integrate a catalog function between two points")
    p.add_argument("name")
    p.add_argument("lower")
    p.add_argument("upper")

    p = add("check", "run the diagnostic suites")
    p.add_argument(
        "suite",
        nargs="?",
        default="all",
        choices=["all", "averaging", "laws", "watson"],
    )

    p = add("catalog", "list catalog entries or dump the manifest")
    p.add_argument("--manifest", action="store_true")
    return ap


def _point(text: str):
    text = text.strip()
    if text in ("omega", "w"):
        return omega()
    if text in ("-omega", "-w"):
        return -omega()
    try:
        return Fraction(text)
    except ValueError:
        return parse_nf(text)


def _config(ns) -> QuadratureConfig:
    prec = ns.prec
    if prec is None:
        prec = int(os.environ.get("TSR_PRECISION", "50"))
    return QuadratureConfig(abs_tol=ns.tol / 100, rel_tol=ns.tol, precision=prec)


def _emit_value(ns, payload: dict, text: str) -> None:
    if ns.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def run(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = _config(ns)
    try:
        return _dispatch(ns, cfg)
    except errors.ExpressionSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except (errors.TsrError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(ns, cfg: QuadratureConfig) -> int:
    verb = ns.verb

    if verb in ("parse", "diff", "antidiff"):
        ts = ts_parse(ns.expression)
        if verb == "diff":
            ts = ts_diff(ts)
        elif verb == "antidiff":
            ts = ts_antidiff(ts)
        _emit_value(ns, ts_to_json(ts, ns.terms), ts_print(ts, ns.terms))
        return 0

    if verb == "mul":
        out = ts_mul_minus(ts_parse(ns.left), ts_parse(ns.right))
        _emit_value(ns, ts_to_json(out, ns.terms), ts_print(out, ns.terms))
        return 0

    if verb == "borel":
        ts = ts_parse(ns.expression)
        k0 = (0,) * ts.minus.n
        poly = borel_transform(ts.minus.series_at(k0), ns.order)
        payload = {"coeffs": [str(c) for c in poly.coeffs]}
        _emit_value(ns, payload, " ".join(str(c) for c in poly.coeffs))
        return 0

    if verb == "weights":
        address = Address.parse(ns.address)
        w = catalan_weight_literal(address) if ns.literal else catalan_weight(address)
        _emit_value(ns, {"address": str(address), "weight": str(w)}, str(w))
        return 0

    if verb == "sum":
        src = ns.transseries
        if src == "-":
            ts = ts_from_json(json.load(sys.stdin))
        elif src.startswith("@"):
            with open(src[1:]) as fh:
                ts = ts_from_json(json.load(fh))
        else:
            ts = ts_parse(src)
        val, err = eb_sum(ts, ns.x, cfg)
        payload = {"value": float(val), "error_estimate": float(err)}
        _emit_value(ns, payload, f"{mp.nstr(val, 20)}  (error <= {mp.nstr(err, 3)})")
        return 0

    if verb == "eval":
        from .operators import catalog, extend

        entry = _entry(ns.name)
        point = _point(ns.point)
        result = extend(entry, point, ns.terms, cfg=cfg)
        return _print_result(ns, result)

    if verb == "integrate":
        from .operators import integrate

        entry = _entry(ns.name)
        result = integrate(entry, _point(ns.lower), _point(ns.upper), ns.terms, cfg=cfg)
        return _print_result(ns, result)

    if verb == "check":
        return _run_checks(ns, cfg)

    if verb == "catalog":
        from .operators import catalog, catalog_manifest

        if ns.manifest:
            print(json.dumps(catalog_manifest(), indent=2, sort_keys=True))
        else:
            for name in sorted(catalog()):
                print(name)
        return 0

    return 2


def _entry(name: str):
    from .operators import catalog, monomial_entry

    reg = catalog()
    if name in reg:
        return reg[name]
    if name.startswith("monomial_"):
        return monomial_entry(int(name.split("_")[1]))
    raise errors.DomainError(f"unknown catalog entry {name!r}; see `tsr catalog`")


def _print_result(ns, result) -> int:
    from .operators import DecoratedValue, NumericTaylor, SurrealValue

    if isinstance(result, SurrealValue):
        if ns.json:
            payload = {
                "normal_form_terms": [
                    {
                        "prefactor": g.prefactor.render(),
                        "terms": [{"exp": e.to_json_obj(), "coef": str(c)} for e, c in g.stream.terms(ns.terms)],
                    }
                    for g in result.merged().groups
                ]
            }
            print(json.dumps(payload))
        else:
            print(result.render(ns.terms))
        return 0
    if isinstance(result, (DecoratedValue, NumericTaylor)):
        if ns.json:
            print(json.dumps({"value": result.render(ns.terms)}))
        else:
            print(result.render(ns.terms))
        return 0
    _emit_value(ns, {"value": float(result), "error_estimate": 0.0}, mp.nstr(result, 20))
    return 0


def _run_checks(ns, cfg: QuadratureConfig) -> int:
    ok = True
    results = {}
    if ns.suite in ("all", "averaging"):
        rep = average_consistency_check(10)
        lit = average_consistency_check(2, catalan_weight_literal, "literal formula")
        results["averaging"] = {
            "consistent_family_passes": rep.passed,
            "total_mass": {n: str(m) for n, m in sorted(rep.total_mass.items())},
            "literal_formula_fails": not lit.passed,
            "literal_failure": {"at": lit.first_failure, "children_sum": str(lit.lhs), "parent": str(lit.rhs)},
        }
        if not ns.json:
            print(rep.summary())
            print("  total mass per length:", {n: str(m) for n, m in sorted(rep.total_mass.items())})
            print(lit.summary())
        ok = ok and rep.passed and not lit.passed
    if ns.suite in ("all", "watson"):
        from .resummation import coth_kernel, sqrt_branch_kernel, watson_check

        results["watson"] = []
        for label, kernel, a, b in [
            ("sqrt-branch", sqrt_branch_kernel(1, 1), 1, 0),
            ("coth", coth_kernel(), 2, 0),
        ]:
            rep = watson_check(kernel, a=a, b=b, K=3, cfg=cfg)
            results["watson"].append({"kernel": label, "passed": rep.passed, "fitted_C": rep.fitted_C})
            if not ns.json:
                print(rep.summary())
            ok = ok and rep.passed
    if ns.suite in ("all", "laws"):
        from .operators.laws import antidiff_laws, extension_laws, integral_laws

        results["laws"] = {}
        for suite in (antidiff_laws(cfg), extension_laws(cfg), integral_laws(cfg)):
            results["laws"][suite.suite] = {law: good for law, good, _ in suite.results}
            if not ns.json:
                print(suite.summary())
            ok = ok and suite.passed
    if ns.json:
        print(json.dumps({"passed": ok, "results": results}, sort_keys=True))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
