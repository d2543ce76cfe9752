"""Command-line driver: ``curveforge <command> [options]``.

Every command prints a JSON report (or CSV with ``--format csv``) to
stdout or ``--out``.  Exit codes:

    0  success, all checks passed
    1  a check failed
    2  usage error (unknown command, bad flags)
    3  malformed input file
    4  field-size cap exceeded
    5  mathematical precondition violated (singular curve, common component, ...)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .arcs import (
    ArcError,
    format_arc,
    lines_of_class,
    parse_arc,
    point_type,
    spectrum,
    verify_arc_lemmas,
)
from .codes import (
    CodeError,
    code_from_arc,
    enumerator_from_spectrum,
    format_generator,
    parse_generator,
    spectrum_of_code,
    spectrum_weight_check,
    validate_declared,
)
from .curve import (
    FAMILY_TAGS,
    CurveError,
    FamilyId,
    PlaneCurve,
    count_points_ext,
    family_catalog,
    linear_component_check,
    singular_points_check,
    sziklai_bound,
)
from .data import Q7_CONSTRAINTS, q7_quartic, q7_sextic
from .equiv import EquivError, are_equivalent, count_family_classes
from .gf import CapExceeded, FieldError, field_of_order, format_element, make_field, parse_element
from .hpoly import HPoly, PolyError, parse_curve
from .linsolve import LinAlgError, NoetherError, QQ, high_k0_system, noether_reconstruct, solve
from .projplane import GeometryError, format_line, format_point, parse_point
from .svfrob import SVError, frobenius_classical, inflection_points, sv_refined_bound
from .verify import run_criteria

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_CAP, EXIT_MATH = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


# -- input helpers ------------------------------------------------------------

def _field(args):
    if getattr(args, "q", None):
        return field_of_order(args.q)
    if getattr(args, "p", None):
        return make_field(args.p, args.h or 1)
    return None


def _params(f, text):
    if not text:
        return ()
    return tuple(parse_element(f, x.strip()) for x in text.split(","))


def _curve(args):
    if args.curve:
        F = parse_curve(Path(args.curve).read_text(), _field(args))
        return PlaneCurve(F, name=Path(args.curve).stem)
    if args.family:
        f = _field(args)
        if f is None:
            raise UsageError("--family needs --q (or --p/--h)")
        if args.family in ("hermitian", "hermitian_fermat"):
            params = tuple(int(x) for x in args.params.split(",")) if args.params else ()
        else:
            params = _params(f, args.params)
        return family_catalog(FamilyId(args.family, params), f)
    raise UsageError("give --curve FILE or --family NAME")


def _point_set(args):
    """(field, points) from --arc or from the points of a curve."""
    if getattr(args, "arc", None):
        return parse_arc(Path(args.arc).read_text(), _field(args))
    C = _curve(args)
    return C.field, list(C.points)


def _add_curve_opts(p):
    p.add_argument("--curve", help="curve file")
    p.add_argument("--family", choices=FAMILY_TAGS, help="named family")
    p.add_argument("--params", help="comma-separated parameters in field text form")


def _add_field_opts(p):
    p.add_argument("--q", type=int, help="field order")
    p.add_argument("--p", type=int, help="characteristic")
    p.add_argument("--h", type=int, help="extension degree over GF(p)")


# -- commands -----------------------------------------------------------------

def cmd_points(args):
    C = _curve(args)
    return {"curve": C.F.to_str(), "q": C.field.q, "N": C.N, "points": [format_point(P) for P in C.points]}, []


def cmd_points_ext(args):
    C = _curve(args)
    m = args.ext or 2
    return {"q": C.field.q, "ext": m, "N": count_points_ext(C, m)}, []


def cmd_spectrum(args):
    f, S = _point_set(args)
    return spectrum(S, f).as_dict(), []


def cmd_point_type(args):
    f, S = _point_set(args)
    if not args.point:
        raise UsageError("--point is required")
    P = parse_point(f, args.point)
    t = point_type(S, P, f)
    lines = {str(i): [format_line(l) for l in lines_of_class(S, P, i, f)] for i, _ in t.classes()}
    return {"point": format_point(P), "type": t.render(), "psi": list(t.psi), "lines": lines}, []


def cmd_zset(args):
    C = _curve(args)
    from .arcs import complement_zset

    Z = complement_zset(C)
    return {"q": C.field.q, "size": len(Z), "arc": format_arc(Z, C.field)}, []


def cmd_sziklai_check(args):
    C = _curve(args)
    comps = linear_component_check(C)
    bound = sziklai_bound(C.degree, C.field.q)
    res = {
        "d": C.degree,
        "q": C.field.q,
        "N": C.N,
        "bound": bound,
        "linear_components": [format_line(l) for l in comps],
        "attains": C.N == bound,
    }
    checks = [] if comps else [("sziklai_bound", bound, C.N, C.N <= bound)]
    return res, checks


def cmd_arc_import(args):
    if not args.arc:
        raise UsageError("--arc is required")
    f, S = parse_arc(Path(args.arc).read_text(), _field(args))
    checks = [(c.name, True, c.detail, c.passed) for c in verify_arc_lemmas(S, f)]
    return {"q": f.q, "k": len(S), "spectrum": spectrum(S, f).as_dict()}, checks


def cmd_arc_export(args):
    f, S = _point_set(args)
    return {"arc": format_arc(S, f)}, []


def cmd_code(args):
    if args.gen:
        code = parse_generator(Path(args.gen).read_text())
    else:
        f, S = _point_set(args)
        code = code_from_arc(S, f)
    return {"n": code.n, "k": 3, "d": code.d, "q": code.field.q, "generator": format_generator(code, True)}, []


def cmd_weights(args):
    if args.gen:
        code = parse_generator(Path(args.gen).read_text())
    else:
        f, S = _point_set(args)
        code = code_from_arc(S, f)
    W = code.weight_enumerator
    return {"n": code.n, "d": W.d, "weights": list(W.c)}, [("enumerator_total", code.field.q ** 3, sum(W.c), W.check())]


def cmd_weight_check(args):
    checks = []
    if args.gen:
        code = parse_generator(Path(args.gen).read_text())
        problems = validate_declared(code)
        checks.append(("declared_data", [], problems, not problems))
        sp = spectrum_of_code(code)
    else:
        f, S = _point_set(args)
        code = code_from_arc(S, f)
        sp = spectrum(S, f)
    derived = enumerator_from_spectrum(sp, code.n).c
    brute = code.weight_enumerator.c
    checks.append(("weight_relation", True, spectrum_weight_check(code, sp), spectrum_weight_check(code, sp)))
    checks.append(("enumerator_oracle", list(derived), list(brute), derived == brute))
    return {"n": code.n, "d": code.d, "q": code.field.q}, checks


def _load_object(path, kind, f):
    text = Path(path).read_text()
    if kind == "arc" or (kind is None and path.endswith(".arc")):
        g, S = parse_arc(text, f)
        return g, S
    F = parse_curve(text, f)
    return F.field, PlaneCurve(F)


def cmd_equiv(args):
    if len(args.files) != 2:
        raise UsageError("equiv needs two files")
    f = _field(args)
    f1, X1 = _load_object(args.files[0], args.kind, f)
    f2, X2 = _load_object(args.files[1], args.kind, f1)
    if f1 != f2:
        raise EquivError("the two inputs live over different fields")
    if isinstance(X1, PlaneCurve) != isinstance(X2, PlaneCurve):
        raise UsageError("cannot compare a curve with an arc")
    W = are_equivalent(X1, X2, field=f1)
    res = {"equivalent": W is not None}
    if W is not None:
        res["witness"] = [format_element(x) for x in W.entries()]
    return res, []


def cmd_nu_q(args):
    f = _field(args)
    if f is None:
        raise UsageError("--q is required")
    nu, reps = count_family_classes(f)
    return {"q": f.q, "nu": nu, "representatives": [[format_element(x) for x in t] for t in reps]}, []


def cmd_frobenius(args):
    return frobenius_classical(_curve(args)).as_dict(), []


def cmd_sv_bound(args):
    C = _curve(args)
    rep = sv_refined_bound(C, nu=args.nu, ext=args.ext or 2)
    return rep.as_dict(), [("refined_bound", f"2N <= {2 * rep.rhs}", 2 * rep.N, 2 * rep.N <= 2 * rep.rhs)]


def cmd_inflections(args):
    C = _curve(args)
    rep = singular_points_check(C, 1)
    if not rep.nonsingular:
        raise SVError("curve has singular rational points")
    return {"inflections": [format_point(P) for P in inflection_points(C)]}, []


def cmd_noether(args):
    if args.preset == "q7":
        G, H = q7_sextic(), q7_quartic()
        D, vanish, nonvanish = 6, list(Q7_CONSTRAINTS), []
        fixed = HPoly.constant(G.field, 1)
    else:
        if not (args.g and args.hpoly and args.degree is not None):
            raise UsageError("noether needs --g, --hpoly and --degree (or --preset q7)")
        G = parse_curve(Path(args.g).read_text(), _field(args))
        H = parse_curve(Path(args.hpoly).read_text(), G.field)
        D = args.degree
        vanish = parse_arc(Path(args.vanish).read_text(), G.field)[1] if args.vanish else []
        nonvanish = parse_arc(Path(args.nonvanish).read_text(), G.field)[1] if args.nonvanish else []
        fixed = None
        if args.fix_a is not None:
            fixed = HPoly.constant(G.field, parse_element(G.field, args.fix_a)) if D == G.degree else None
            if fixed is None:
                raise UsageError("--fix-a only supports a constant A (D equal to deg G)")
    res = noether_reconstruct(G, H, D, vanish, nonvanish, fixed_a=fixed)
    out = {
        "degree": D,
        "intersection": [format_point(P) for P in res.intersection],
        "dimension": len(res.basis),
        "verdict": res.verdict,
        "b_vanishes": res.b_vanishes(),
    }
    if res.particular is not None:
        out["particular_B"] = res.particular[1].to_str()
    out["basis"] = [[A.to_str(), B.to_str()] for A, B in res.basis]
    return out, []


def _read_matrix(path, f):
    rows = [r.split() for r in Path(path).read_text().splitlines() if r.strip() and not r.startswith("#")]
    if f is None:
        from fractions import Fraction

        return [[Fraction(x) for x in r] for r in rows]
    return [[parse_element(f, x) for x in r] for r in rows]


def cmd_solve(args):
    f = _field(args) if not args.rational else None
    if args.system == "high-k0":
        if not args.q:
            raise UsageError("--system high-k0 needs --q")
        M, b = high_k0_system(args.q)
        dom = QQ
    else:
        if not args.matrix:
            raise UsageError("solve needs --matrix FILE (augmented, last column is b)")
        aug = _read_matrix(args.matrix, f)
        M, b = [r[:-1] for r in aug], [r[-1] for r in aug]
        dom = QQ if f is None else f
    sol = solve(M, b, dom)
    fmt = (lambda x: str(x)) if dom is QQ else format_element
    out = {"kind": sol.kind}
    if sol.particular is not None:
        out["solution"] = [fmt(x) for x in sol.particular]
        out["nullspace"] = [[fmt(x) for x in v] for v in sol.basis]
    return out, []


def cmd_verify_paper(args):
    qs = set(args.q_list) if args.q_list else None
    selected = set(args.criteria) if args.criteria else None
    res, checks = {"criteria": []}, []
    for n, title, results in run_criteria(qs=qs, seed=args.seed, selected=selected):
        res["criteria"].append({"number": n, "title": title, "pass": all(r.passed is not False for r in results)})
        for r in results:
            d = r.as_dict()
            checks.append((f"{n}:{d['name']}", d["expected"], d["got"], d["pass"]))
    return res, checks


COMMANDS = {
    "points": cmd_points,
    "points-ext": cmd_points_ext,
    "spectrum": cmd_spectrum,
    "point-type": cmd_point_type,
    "zset": cmd_zset,
    "sziklai-check": cmd_sziklai_check,
    "arc-import": cmd_arc_import,
    "arc-export": cmd_arc_export,
    "code": cmd_code,
    "weights": cmd_weights,
    "weight-check": cmd_weight_check,
    "equiv": cmd_equiv,
    "nu-q": cmd_nu_q,
    "frobenius": cmd_frobenius,
    "sv-bound": cmd_sv_bound,
    "inflections": cmd_inflections,
    "noether": cmd_noether,
    "solve": cmd_solve,
    "verify-paper": cmd_verify_paper,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, help="largest admissible field order")

    parser = argparse.ArgumentParser(prog="curveforge", description="Plane curves, arcs and codes over small finite fields.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, helptext, curve=True, arc=False, field=True):
        p = sub.add_parser(name, help=helptext, parents=[common])
        if field:
            _add_field_opts(p)
        if curve:
            _add_curve_opts(p)
        if arc:
            p.add_argument("--arc", help="arc file")
        return p

    add("points", "rational points of a curve")
    add("points-ext", "number of points over GF(q^m)").add_argument("--ext", type=int, default=2)
    add("spectrum", "line-intersection spectrum", arc=True)
    add("point-type", "point type w.r.t. a point set", arc=True).add_argument("--point")
    add("zset", "points off a curve, as an arc file")
    add("sziklai-check", "compare N_q with (d-1)q+1")
    add("arc-import", "read an arc file and run the arc lemmas", curve=False, arc=True)
    add("arc-export", "write a point set as an arc file", arc=True)
    for name, helptext in (("code", "generator matrix of the code of a point set"),
                           ("weights", "weight enumerator by brute force"),
                           ("weight-check", "weight enumerator against the spectrum relation")):
        add(name, helptext, arc=True).add_argument("--gen", help="generator-matrix file")
    p = add("equiv", "projective equivalence of two curves or arcs", curve=False)
    p.add_argument("files", nargs="*")
    p.add_argument("--kind", choices=("curve", "arc"))
    add("nu-q", "number of classes in the Fermat-type family", curve=False)
    add("frobenius", "Frobenius classicality")
    p = add("sv-bound", "Stohr-Voloch bounds")
    p.add_argument("--nu", type=int)
    p.add_argument("--ext", type=int, default=2)
    add("inflections", "rational inflection points")
    p = add("noether", "F = A G + B H through prescribed points", curve=False)
    p.add_argument("--g", help="curve file for G")
    p.add_argument("--hpoly", help="curve file for H")
    p.add_argument("--degree", type=int)
    p.add_argument("--vanish", help="arc file of points F must vanish on")
    p.add_argument("--nonvanish", help="arc file of points F must not vanish on")
    p.add_argument("--fix-a", help="fix A to this constant")
    p.add_argument("--preset", choices=("q7",))
    p = add("solve", "exact linear system", curve=False)
    p.add_argument("--matrix", help="augmented matrix file")
    p.add_argument("--rational", action="store_true", help="solve over Q instead of GF(q)")
    p.add_argument("--system", choices=("high-k0",))
    p = sub.add_parser("verify-paper", help="rerun every acceptance check", parents=[common])
    p.add_argument("--q", dest="q_list", type=int, action="append", help="restrict to this q (repeatable)")
    p.add_argument("--criteria", type=int, action="append", help="run only this criterion (repeatable)")
    return parser


def _render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "name", "expected", "got", "pass"])
    for key, val in sorted(report["result"].items()):
        w.writerow(["result", key, "", json.dumps(val, default=str), ""])
    for c in report["checks"]:
        w.writerow(["check", c["name"], json.dumps(c["expected"], default=str), json.dumps(c["got"], default=str), c["pass"]])
    return buf.getvalue()


def run(argv=None, stdout=None):
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved_cap = os.environ.get("CURVEFORGE_CAP")
    if args.cap:
        os.environ["CURVEFORGE_CAP"] = str(args.cap)
    try:
        return _execute(args, stdout)
    finally:
        if saved_cap is None:
            os.environ.pop("CURVEFORGE_CAP", None)
        else:
            os.environ["CURVEFORGE_CAP"] = saved_cap


def _execute(args, stdout):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "out", "format")}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        result, checks = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ArcError, PolyError, CodeError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CurveError, EquivError, SVError, NoetherError, LinAlgError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    rows = [{"name": n, "expected": e, "got": g, "pass": p} for n, e, g, p in checks]
    if any(r["pass"] is False for r in rows):
        code = EXIT_FAIL
    report = {
        "command": args.command,
        "parameters": params,
        "result": result,
        "checks": rows,
        "wall_time": round(time.perf_counter() - start, 3),
    }
    text = _render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
