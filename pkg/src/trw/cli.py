"""Command-line front end.

Exit codes: 0 when every check passed, 1 when checks ran and some failed,
2 on usage or parse errors.  ``--json PATH`` writes a certificate; its
``elapsed_ms`` is 0 unless ``--timing`` is given, so reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, TextIO

from . import __version__
from .certificate import (
    Certificate,
    family_to_json,
    intpoly_to_json,
    multipoly_to_json,
)
from .dsl import parse_expr, parse_range
from .errors import HypothesisViolation, TRWError
from .families import (
    build_witness,
    cyclic_cubic_check,
    default_jobs,
    gen_quartic_2param,
    gen_unit_family,
    get_family,
    parse_family,
    registry,
    verify_range,
)
from .intpoly import IntPoly, discriminant, trace_power
from .multipoly import MultiParamPoly
from .realroots import count_real_roots, is_totally_real, sturm_chain
from .symfun import power_sums_from_coeffs, root_power_transform
from .waring import four_squares, kamke_represent, kamke_scan, normalize_poly, phi_w_set


class UsageError(Exception):
    pass


def parse_intpoly(text: str) -> IntPoly:
    pf = parse_expr(text, ())
    return IntPoly(c.constant_value() for c in pf.coeffs)


def _parse_poly_in(text: str, var: str) -> IntPoly:
    """A univariate literal written in `var`; plain x is accepted too."""
    pf = parse_expr(text, (var,))
    if pf.degree <= 0:
        return pf.coefficient(0).to_intpoly()
    if any(not c.is_constant() for c in pf.coeffs):
        raise UsageError(f"mix of x and {var} in {text!r}")
    return IntPoly(c.constant_value() for c in pf.coeffs)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _load_family(args):
    if getattr(args, "family_file", None):
        return parse_family(Path(args.family_file).read_text(encoding="utf-8"))
    if getattr(args, "family", None):
        try:
            return get_family(args.family)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc
    raise UsageError("one of --family or --family-file is required")


def _ranges(specs, fam):
    out = {}
    for spec in specs or ():
        name, sep, rng = spec.partition("=")
        if not sep:
            raise UsageError(f"bad --range {spec!r}; expected NAME=LO..HI")
        name = name.strip()
        if name not in fam.params:
            raise UsageError(f"family {fam.name} has no parameter {name!r}")
        out[name] = parse_range(rng)
    for p in fam.params:
        out.setdefault(p, fam.default_range[p])
    return out


def _instance_json(res) -> dict:
    return {
        "assignment": {k: str(v) for k, v in res.assignment.items()},
        "totally_real": res.totally_real,
        "unit_constant": res.unit_constant,
        "degree_ok": res.degree_ok,
    }


# subcommand handlers: (args, out) -> Certificate


def cmd_list_families(args, out):
    fams = registry()
    for fam in fams:
        rng = ", ".join(f"{p} in [{lo}, {hi}]" for p, (lo, hi) in fam.default_range.items())
        print(f"{fam.name:16s} deg {fam.degree}  {fam.poly}  ({rng})", file=out)
    return Certificate("list-families", {}, {"families": [family_to_json(f) for f in fams]})


def cmd_verify(args, out):
    fam = _load_family(args)
    ranges = _ranges(args.range, fam)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    rep = verify_range(fam, ranges, jobs=jobs)
    print(
        f"{fam.name}: {rep.instances} instances verified, {len(rep.failures)} failures", file=out
    )
    for f in rep.failures:
        flags = [k for k in ("totally_real", "unit_constant", "degree_ok") if not getattr(f, k)]
        print(f"  FAIL {f.assignment}: {', '.join(flags)}", file=out)
    return Certificate(
        "verify",
        {
            "family": family_to_json(fam),
            "ranges": {p: [str(lo), str(hi)] for p, (lo, hi) in ranges.items()},
        },
        {
            "instances": rep.instances,
            "passed": rep.instances - len(rep.failures),
            "failed": len(rep.failures),
        },
        [_instance_json(f) for f in rep.failures],
    )


def cmd_witness(args, out):
    fam = _load_family(args)
    w = build_witness(fam, args.torsion_half_order)
    print(f"family: {fam.name}", file=out)
    print(f"k: {w.k}", file=out)
    print(f"exponent: {w.exponent}", file=out)
    print(f"witness: {w.witness}", file=out)
    return Certificate(
        "witness",
        {"family": family_to_json(fam), "torsion_half_order": w.torsion_half_order},
        {
            "k": w.k,
            "exponent": w.exponent,
            "witness": multipoly_to_json(w.witness),
            "witness_text": str(w.witness),
            "nonconstant": w.nonconstant,
            "samples": [{"param": str(a), "value": str(v)} for a, v in w.samples],
        },
    )


def cmd_powersum(args, out):
    f = parse_intpoly(args.poly)
    ps = power_sums_from_coeffs(f, args.m)
    failures = []
    for k in range(1, args.m + 1):
        t = trace_power(f, k)
        if t != ps[k]:
            failures.append({"k": k, "newton": str(ps[k]), "trace": str(t)})
    print("power sums: " + ", ".join(str(v) for v in ps.values), file=out)
    return Certificate(
        "powersum",
        {"poly": intpoly_to_json(f), "m": args.m},
        {"power_sums": [str(v) for v in ps.values]},
        failures,
    )


def cmd_rootpower(args, out):
    f = parse_intpoly(args.poly)
    g = root_power_transform(f, args.n)
    print(g, file=out)
    return Certificate(
        "rootpower", {"poly": intpoly_to_json(f), "n": args.n},
        {"poly": intpoly_to_json(g), "poly_text": str(g)},
    )


def cmd_sturm(args, out):
    f = parse_intpoly(args.poly)
    sc = sturm_chain(f)
    for p in sc.chain:
        print(p, file=out)
    n = sc.count()
    print(f"distinct real roots: {n}", file=out)
    return Certificate(
        "sturm", {"poly": intpoly_to_json(f)},
        {"chain": [intpoly_to_json(p) for p in sc.chain], "real_roots": n,
         "totally_real": n == sc.chain[0].degree},
    )


def cmd_count_roots(args, out):
    f = parse_intpoly(args.poly)
    if (args.lo is None) != (args.hi is None):
        raise UsageError("--lo and --hi go together")
    interval = None if args.lo is None else (args.lo, args.hi)
    n = count_real_roots(f, interval)
    print(n, file=out)
    inputs = {"poly": intpoly_to_json(f)}
    if interval:
        inputs["interval"] = [str(args.lo), str(args.hi)]
    return Certificate("count-roots", inputs, {"count": n})


def cmd_discriminant(args, out):
    f = parse_intpoly(args.poly)
    d = discriminant(f)
    print(d, file=out)
    return Certificate("discriminant", {"poly": intpoly_to_json(f)}, {"discriminant": str(d)})


def cmd_cyclic_cubic(args, out):
    f = parse_intpoly(args.poly)
    ok = cyclic_cubic_check(f)
    d = discriminant(f)
    print(f"discriminant: {d}", file=out)
    print(f"square discriminant: {'yes' if ok else 'no'}", file=out)
    failures = [] if ok else [{"check": "square_discriminant", "discriminant": str(d)}]
    return Certificate(
        "cyclic-cubic", {"poly": intpoly_to_json(f)},
        {"discriminant": str(d), "square_discriminant": ok}, failures,
    )


def cmd_gen_quartic2(args, out):
    g = gen_quartic_2param(args.a, args.b, args.d)
    tr = is_totally_real(g)
    print(g, file=out)
    print(f"totally real: {'yes' if tr else 'no'}", file=out)
    failures = [] if tr else [{"check": "totally_real"}]
    return Certificate(
        "gen-quartic2", {"a": str(args.a), "b": str(args.b), "d": str(args.d)},
        {"poly": intpoly_to_json(g), "poly_text": str(g), "totally_real": tr}, failures,
    )


def cmd_gen_unit_family(args, out):
    pf = parse_expr(args.h, ("t1", "t2"))
    if pf.degree > 0:
        raise UsageError("h must not involve x")
    h = pf.coefficient(0) if pf.coeffs else MultiParamPoly.const(("t1", "t2"), 0)
    alpha = _parse_poly_in(args.alpha, "y")
    fam = gen_unit_family(h, alpha)
    rep = verify_range(fam, jobs=1)
    print(f"{fam.name}: {fam.poly}", file=out)
    print(f"verified {rep.instances} instances, {len(rep.failures)} failures", file=out)
    return Certificate(
        "gen-unit-family",
        {"h": multipoly_to_json(h), "alpha": intpoly_to_json(alpha, "y")},
        {"family": family_to_json(fam), "instances": rep.instances},
        [_instance_json(f) for f in rep.failures],
    )


def cmd_foursquares(args, out):
    fs = four_squares(args.m)
    print(" + ".join(f"{p}^2" for p in fs.parts) + f" = {args.m}", file=out)
    return Certificate("foursquares", {"m": str(args.m)}, {"parts": [str(p) for p in fs.parts]})


def _kamke_poly(args):
    f = parse_intpoly(args.poly)
    inputs = {"poly": intpoly_to_json(f)}
    if args.normalize is not None:
        norm = normalize_poly(f, args.normalize)
        inputs["normalize_n0"] = str(args.normalize)
        inputs["normalized"] = {
            "poly": intpoly_to_json(norm.poly), "shift": str(norm.shift), "negated": norm.negated,
        }
        f = norm.poly
    return f, inputs


def cmd_kamke(args, out):
    f, inputs = _kamke_poly(args)
    inputs.update({"m": str(args.m), "r": str(args.r)})
    rep = kamke_represent(f, args.m, args.r)
    if rep is None:
        print("NotFound", file=out)
        return Certificate("kamke", inputs, {"found": False})
    shown = " + ".join([f"f({a})" for a in rep.terms] + ([str(rep.s2)] if rep.s2 else []))
    print(f"{args.m} = {shown or '0'}", file=out)
    return Certificate(
        "kamke", inputs,
        {"found": True, "terms": [str(a) for a in rep.terms], "s2": str(rep.s2), "size": rep.size},
    )


def cmd_kamke_scan(args, out):
    f, inputs = _kamke_poly(args)
    inputs.update({"m_max": str(args.m_max), "r_max": str(args.r_max)})
    jobs = args.jobs if args.jobs is not None else default_jobs()
    scan = kamke_scan(f, args.m_max, args.r_max, jobs=jobs)
    print(f"overall maximum r: {scan.overall_max} (first at m={scan.argmax})", file=out)
    if scan.gaps:
        print(f"gaps (no representation with r <= {args.r_max}): {scan.gaps}", file=out)
    return Certificate(
        "kamke-scan", inputs,
        {
            "overall_max": scan.overall_max,
            "argmax": None if scan.argmax is None else str(scan.argmax),
            "gaps": [str(m) for m in scan.gaps],
            "minimal_r": {str(m): (None if e is None else e[0]) for m, e in scan.table.items()},
        },
    )


def cmd_phiw(args, out):
    res = phi_w_set(args.a, args.b, args.x_max)
    print("{" + ", ".join(str(x) for x in res.members) + "}", file=out)
    print(f"containment chain: {res.chain}", file=out)
    failures = [] if res.chain == "EQUAL" else [{"check": "containment_chain", "status": res.chain}]
    return Certificate(
        "phiw", {"a": str(args.a), "b": str(args.b), "x_max": str(args.x_max)},
        {
            "members": [str(x) for x in res.members],
            "lower": [str(x) for x in res.lower],
            "upper": [str(x) for x in res.upper],
            "chain": res.chain,
        },
        failures,
    )


def cmd_parse(args, out):
    text = Path(args.file).read_text(encoding="utf-8")
    try:
        fam = parse_family(text)
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}", file=out)
        return Certificate(
            "parse", {"file": args.file}, {"valid": False},
            [{"hypothesis": exc.hypothesis,
              "coefficient": exc.coefficient, "detail": exc.detail}],
        )
    print(f"{fam.name}: {fam.poly}  (params {', '.join(fam.params)}; degree {fam.degree})", file=out)
    return Certificate("parse", {"file": args.file}, {"valid": True, "family": family_to_json(fam)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trw", description="Power-sum witnesses for totally real unit families."
    )
    parser.add_argument("--version", action="version", version=f"trw {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write a JSON certificate")
    common.add_argument("--timing", action="store_true", help="record wall time in the certificate")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(handler=handler)
        return p

    def family_opts(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--family", help="built-in family name or alias")
        g.add_argument("--family-file", help="family definition document")

    add("list-families", cmd_list_families, "list the built-in families")

    p = add("verify", cmd_verify, "check total reality, unit constant term and degree over a box")
    family_opts(p)
    p.add_argument("--range", action="append", metavar="NAME=LO..HI")
    p.add_argument("--jobs", type=int, default=None)

    p = add("witness", cmd_witness, "build Q_{2Nk}(p_0(a), ..., p_{n-1}(a))")
    family_opts(p)
    p.add_argument("--torsion-half-order", type=int, default=1, metavar="N")

    p = add("powersum", cmd_powersum, "power sums q_1..q_m of the roots")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("rootpower", cmd_rootpower, "polynomial whose roots are N-th powers")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("sturm", cmd_sturm, "Sturm chain of the squarefree part")
    p.add_argument("--poly", required=True)

    p = add("count-roots", cmd_count_roots, "count distinct real roots")
    p.add_argument("--poly", required=True)
    p.add_argument("--lo", type=_rational)
    p.add_argument("--hi", type=_rational)

    p = add("discriminant", cmd_discriminant, "discriminant of a monic polynomial")
    p.add_argument("--poly", required=True)

    p = add("cyclic-cubic", cmd_cyclic_cubic, "square-discriminant test for a monic cubic")
    p.add_argument("--poly", required=True)

    p = add("gen-quartic2", cmd_gen_quartic2, "quartic unit polynomial from a + b*sqrt(d)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("gen-unit-family", cmd_gen_unit_family, "family prod (x^2 - 2 h(a, alpha_i) x - 1)")
    p.add_argument("--h", required=True, help="polynomial in t1, t2")
    p.add_argument("--alpha", required=True, help="monic polynomial in y")

    p = add("foursquares", cmd_foursquares, "four-square decomposition")
    p.add_argument("--m", type=int, required=True)

    p = add("kamke", cmd_kamke, "represent m as f(a_1) + ... + f(a_s1) + s2")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--normalize", type=int, metavar="N0", help="replace f by +-f(x+k), k >= N0")

    p = add("kamke-scan", cmd_kamke_scan, "least r for every m up to m_max")
    p.add_argument("--poly", required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--normalize", type=int, metavar="N0")
    p.add_argument("--jobs", type=int, default=None)

    p = add("phiw", cmd_phiw, "definable-set demo over the integers")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--x-max", type=int, default=100)

    p = add("parse", cmd_parse, "validate a family definition document")
    p.add_argument("file")

    return parser


def run(argv=None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        cert = args.handler(args, out)
    except (UsageError, TRWError, ValueError, OSError) as exc:
        print(f"trw {args.command}: error: {exc}", file=err)
        return 2
    if args.timing:
        cert.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    if args.json:
        Path(args.json).write_text(cert.dumps(), encoding="utf-8")
    return 1 if cert.failures else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
