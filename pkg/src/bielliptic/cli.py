"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure, 2 input error,
3 expectation mismatch (search --expect-found / --expect-empty).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .constants import WorkedExample, load_example
from .curves import (
    INFINITY,
    QuarticCurvePoint,
    QuarticPoint,
    QuarticTwistCurve,
    BiquadricPoint,
    BiquadricTwistCurve,
    certify_nontorsion,
    delta_phi,
    ec_count_points,
    ec_reduce,
    good_reduction,
    torsion_bound,
)
from .errors import (
    ArithmeticGeometryError,
    FieldMismatch,
    NotMonic,
    PointNotOnCurve,
    ReducibleDetected,
    TorsionDetected,
    ZeroTwist,
)
from .io import (
    LiteralError,
    ecpoint_from_json,
    ecpoint_to_json,
    element_from_json,
    element_to_json,
    field_from_json,
    field_to_json,
    load_json,
    poly_to_json,
    surface_from_json,
    surface_point_from_json,
    surface_point_to_json,
)
from .numberfield import PrimeSite, fe_eval, fe_is_square, fe_sqrt, sqrt as sqrt_module
from .search import (
    DEFAULT_SCREEN_SITES,
    SearchBounds,
    density_points,
    search_biquadric,
    search_quartic,
    search_surface,
    twist_classes,
)
from .surface import (
    BiellipticSurface,
    ClosedPoint,
    degree_four_point,
    descend_point,
    lift_point,
    model_a_to_b,
    model_b_to_a,
    zero_cycle_of_degree_one,
)

INPUT_ERRORS = (LiteralError, FieldMismatch, NotMonic, ReducibleDetected, ZeroTwist)


class InputError(Exception):
    pass


class ExpectationMismatch(Exception):
    def __init__(self, message: str, payload):
        super().__init__(message)
        self.payload = payload


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# shared argument helpers


def _field(args):
    if getattr(args, "field", None):
        return field_from_json(load_json(args.field))
    return load_example(getattr(args, "fixture_dir", None)).L


def _surface(args, field) -> BiellipticSurface:
    if getattr(args, "surface", None):
        return surface_from_json(load_json(args.surface), field)
    return BiellipticSurface().base_change(field)


def _element(text: str, field):
    data = load_json(text) if text.lstrip()[:1] in "[{" or Path(text).exists() else text
    return element_from_json(data, field)


def _ecpoint(text: str, field, E):
    P = ecpoint_from_json(load_json(text), field)
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    return P


# verify-point


def cmd_verify_point(args) -> int:
    if len(args.files) == 1:
        field, point_file = None, args.files[0]
    elif len(args.files) == 2:
        field, point_file = field_from_json(load_json(args.files[0])), args.files[1]
    else:
        raise InputError("verify-point takes [FIELD] POINT")
    P = surface_point_from_json(load_json(point_file), field)
    S = _surface(args, P.field)
    ok = S.contains(P)
    emit({"on_surface": ok, "model": P.model, "field": field_to_json(P.field)})
    return 0 if ok else 1


# reproduce


class Check:
    def __init__(self, name: str, fn):
        self.name, self.fn = name, fn


def _check_published_point(ex: WorkedExample, state: dict):
    S = ex.surface_L
    ok = ex.point.model == "A" and S.contains(ex.point)
    return ok, surface_point_to_json(ex.point, with_field=False)


def _check_generator(ex: WorkedExample, state: dict):
    S = ex.surface_L
    model = S.dprime
    qp = QuarticCurvePoint(ex.generator_X, ex.generator_W)
    on_dprime = model.quartic_contains(qp)
    G = model.to_weierstrass(qp) if on_dprime else None
    px0 = fe_eval(S.p, ex.point.x)
    cls = fe_is_square(ex.a * px0.inv())
    state["model"] = model
    state["G"] = G
    ok = (
        on_dprime
        and ex.generator_X == ex.point.x
        and G.x == ex.a
        and G == ex.generator
        and cls.is_square
    )
    witness = {
        "weierstrass": {k: element_to_json(getattr(model.curve, k)) for k in ("a2", "a4", "a6")},
        "G": ecpoint_to_json(G) if G is not None else None,
        "a": element_to_json(ex.a),
        "sqrt_a_over_p_x0": element_to_json(cls.witness) if cls.is_square else None,
    }
    return ok, witness


def _check_delta(ex: WorkedExample, state: dict):
    model, G = state["model"], state["G"]
    E = model.curve
    twoG = E.add(G, G)
    dG, d2G = delta_phi(model, G), delta_phi(model, twoG)
    r1, r2 = fe_is_square(dG * ex.a), fe_is_square(d2G)
    ok = r1.is_square and r2.is_square
    return ok, {
        "delta_G": element_to_json(dG),
        "delta_2G": element_to_json(d2G),
        "sqrt_delta_G_times_a": element_to_json(r1.witness) if r1.is_square else r1.status.value,
        "sqrt_delta_2G": element_to_json(r2.witness) if r2.is_square else r2.status.value,
    }


def _check_nontorsion(ex: WorkedExample, state: dict):
    E, G = state["model"].curve, state["G"]
    counts = {str(s.p): ec_count_points(ec_reduce(E, s)) for s in ex.torsion_sites}
    bound = torsion_bound(E, list(ex.torsion_sites))
    try:
        cert = certify_nontorsion(E, G, bound)
    except TorsionDetected as exc:
        return False, {"counts": counts, "bound": bound, "torsion_order_divides": exc.n}
    return True, {"counts": counts, "bound": bound, "multiples_checked": len(cert.multiples)}


def _check_quartic_point(ex: WorkedExample, state: dict):
    S = ex.surface_L
    C = QuarticTwistCurve(ex.L, ex.a, S.g)
    res = fe_is_square(fe_eval(S.g, ex.t0) * ex.a)
    if not res.is_square:
        return False, {"g_t0_times_a": res.status.value}
    U = res.witness / ex.a
    cp = QuarticPoint(ex.t0, U)
    state["c_point"] = cp
    return C.contains(cp), {"T": element_to_json(ex.t0), "U": element_to_json(U)}


def _check_round_trip(ex: WorkedExample, state: dict):
    S = ex.surface_L
    P = ex.point
    orbit = (P, P.negate_yz())
    # through the twist by g(t)
    a_t, cp, dp = lift_point(S, model_a_to_b(S, P))
    back_t = model_b_to_a(S, descend_point(S, a_t, cp, dp))
    # through the twist by the class representative a
    Y = fe_sqrt(fe_eval(S.p, ex.generator_X) / ex.a)
    Z = ex.generator_W / (ex.a * Y)
    back_a = model_b_to_a(S, descend_point(S, ex.a, state["c_point"], BiquadricPoint(ex.generator_X, Y, Z)))
    ok = back_t in orbit and back_a in orbit
    return ok, {
        "via_g_t": surface_point_to_json(back_t, with_field=False),
        "via_a": surface_point_to_json(back_a, with_field=False),
        "D_a_point": {"X": element_to_json(ex.generator_X), "Y": element_to_json(Y), "Z": element_to_json(Z)},
    }


def _check_zero_cycle(ex: WorkedExample, state: dict):
    P3 = ClosedPoint(ex.point)
    x, t = ex.degree_four_xt
    P4 = degree_four_point(ex.surface, x, t)
    cycle = zero_cycle_of_degree_one(P3, P4)
    ok = P3.degree == 3 and P4.degree == 4 and cycle.degree == 1
    return ok, {
        "degree_three_field": poly_to_json(P3.field.poly),
        "degree_four_field": poly_to_json(P4.field.poly),
        "cycle": "P4 - P3",
        "degree": cycle.degree,
    }


def _check_searches(ex: WorkedExample, state: dict):
    from .surface import QQ

    out, ok = {}, True
    for name, field in (("Q", QQ), ("L1", ex.L1)):
        rep = search_surface(ex.surface, field, ex.search_bounds[name], jobs=state["jobs"])
        ok = ok and not rep.points_found and rep.exhaustive
        out[name] = {
            "bounds": [rep.bounds.coeff_bound, rep.bounds.denom_bound],
            "points_found": len(rep.points_found),
            "exhaustive": rep.exhaustive,
            "x_candidates": rep.notes["x_candidates"],
            "x_with_pq_square": rep.notes["x_with_pq_square"],
        }
    return ok, out


def _check_density(ex: WorkedExample, state: dict):
    S = ex.surface_L
    n = state["density_count"]
    pts = density_points(S, state["G"], ex.a, state["c_point"], n)
    xs = {P.x for P in pts}
    ok = len(pts) == n and len(xs) == n and all(S.contains(P) for P in pts)
    return ok, {"count": len(pts), "x_heights": [P.x.height() for P in pts]}


CHECKS = [
    Check("published_point_on_surface", _check_published_point),
    Check("generator_weierstrass_image", _check_generator),
    Check("delta_classes", _check_delta),
    Check("nontorsion_certificate", _check_nontorsion),
    Check("quartic_twist_point", _check_quartic_point),
    Check("lift_descend_round_trip", _check_round_trip),
    Check("zero_cycle_degree_one", _check_zero_cycle),
    Check("bounded_empty_searches", _check_searches),
    Check("density_points", _check_density),
]


def run_reproduce(fixture_dir=None, keep_going=False, skip_search=False, jobs=1, density_count=None) -> dict:
    ex = load_example(fixture_dir)
    state = {"jobs": jobs, "density_count": density_count or ex.density_count}
    checks, aborted = [], False
    for chk in CHECKS:
        entry = {"name": chk.name}
        if aborted or (skip_search and chk.name == "bounded_empty_searches"):
            entry.update(status="skip", witness="aborted" if aborted else "skipped by --skip-search", elapsed=0.0)
            checks.append(entry)
            continue
        start = time.perf_counter()
        try:
            ok, witness = chk.fn(ex, state)
        except (ArithmeticGeometryError, ArithmeticError, KeyError, TypeError, AttributeError) as exc:
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        entry.update(status="pass" if ok else "fail", witness=witness,
                     elapsed=round(time.perf_counter() - start, 6))
        checks.append(entry)
        if not ok and not keep_going:
            aborted = True
    return {"checks": checks, "passed": all(c["status"] != "fail" for c in checks)}


def cmd_reproduce(args) -> int:
    report = run_reproduce(args.fixture_dir, args.keep_going, args.skip_search, args.jobs, args.density_count)
    emit(report)
    return 0 if report["passed"] else 1


# search


def cmd_search(args) -> int:
    if args.coeff_bound < 1 or args.denom_bound < 1:
        raise InputError("bounds must be >= 1")
    field = field_from_json(load_json(args.field))
    bounds = SearchBounds(args.coeff_bound, args.denom_bound)
    S = _surface(args, field)
    if args.kind == "surface":
        report = search_surface(S, field, bounds, jobs=args.jobs, screen_count=args.screen_sites)
    else:
        if not args.a:
            raise InputError(f"search {args.kind} needs --a")
        a = _element(args.a, field)
        if args.kind == "quartic":
            report = search_quartic(QuarticTwistCurve(field, a, S.g), bounds, args.jobs, args.screen_sites)
        else:
            report = search_biquadric(BiquadricTwistCurve(field, a, S.p, S.q), bounds, args.jobs, args.screen_sites)
    out = report.to_json(include_timing=args.timing)
    found = bool(report.points_found)
    if args.expect_found and not found:
        raise ExpectationMismatch("no point found", out)
    if args.expect_empty and (found or not report.exhaustive):
        raise ExpectationMismatch("search was not empty and exhaustive", out)
    emit(out)
    return 0


# elliptic curve commands


def _default_sites(field, E, count=2) -> list[PrimeSite]:
    chosen = []
    for s in field.sites(60):
        if s.p != 2 and good_reduction(E, s) and all(c.p != s.p for c in chosen):
            chosen.append(s)
            if len(chosen) == count:
                break
    return chosen


def _parse_sites(text: str, field) -> list[PrimeSite]:
    try:
        pairs = [item.split(":") for item in text.split(",") if item]
        return [PrimeSite(field, int(p), int(r)) for p, r in pairs]
    except ValueError as exc:
        raise InputError(f"bad --sites {text!r}; expected p:root,p:root") from exc


def cmd_ec(args) -> int:
    field = _field(args)
    model = _surface(args, field).dprime
    E = model.curve
    if args.ec_cmd == "add":
        emit(ecpoint_to_json(E.add(_ecpoint(args.P, field, E), _ecpoint(args.Q, field, E))))
    elif args.ec_cmd == "mul":
        emit(ecpoint_to_json(E.mul(args.n, _ecpoint(args.P, field, E))))
    elif args.ec_cmd == "delta":
        emit(element_to_json(delta_phi(model, _ecpoint(args.P, field, E))))
    elif args.ec_cmd == "torsion-bound":
        sites = _parse_sites(args.sites, field) if args.sites else _default_sites(field, E)
        bound = torsion_bound(E, sites)
        counts = {f"{s.p}:{s.root}": ec_count_points(ec_reduce(E, s)) for s in sites}
        emit({"bound": bound, "counts": counts})
    elif args.ec_cmd == "nontorsion":
        P = _ecpoint(args.P, field, E)
        bound = args.bound or torsion_bound(E, _default_sites(field, E))
        try:
            certify_nontorsion(E, P, bound)
        except TorsionDetected as exc:
            emit({"infinite_order": False, "order_divides": exc.n, "bound": bound})
            return 1
        emit({"infinite_order": True, "bound": bound})
    return 0


# square roots, twists, density


def cmd_is_square(args) -> int:
    field = _field(args)
    res = fe_is_square(_element(args.element, field), precision_budget=args.precision_budget)
    out = {"status": res.status.value}
    if res.is_square:
        out["witness"] = element_to_json(res.witness)
    if res.certificate is not None:
        kind, where = res.certificate
        out["certificate"] = {"real_embedding": where} if kind == "real" else {"site": [where.p, where.root]}
    emit(out)
    return 0


def cmd_sqrt(args) -> int:
    field = _field(args)
    emit(element_to_json(fe_sqrt(_element(args.element, field), precision_budget=args.precision_budget)))
    return 0


def cmd_twists(args) -> int:
    field = _field(args)
    model = _surface(args, field).dprime
    if args.generators:
        data = load_json(args.generators)
        if isinstance(data, dict):
            data = [data]
        gens = [ecpoint_from_json(d, field) for d in data]
    else:
        ex = load_example(args.fixture_dir)
        if field != ex.L:
            raise InputError("--generators is required outside the default field")
        gens = [ex.generator]
    classes = twist_classes(model, gens, args.n_max, torsion=None if args.with_torsion else [INFINITY])
    emit([element_to_json(c) for c in classes])
    return 0


def cmd_density(args) -> int:
    ex = load_example(args.fixture_dir)
    S = ex.surface_L
    res = fe_is_square(fe_eval(S.g, ex.t0) * ex.a)
    if not res.is_square:
        raise ArithmeticGeometryError("g(t0)*a is not a square")
    pts = density_points(S, ex.generator, ex.a, QuarticPoint(ex.t0, res.witness / ex.a), args.count)
    emit([surface_point_to_json(P, with_field=False) for P in pts])
    return 0


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="JSON output (the only format; accepted for compatibility)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for the random module, for replaying property tests")
    common.add_argument("--precision-budget", type=int, default=argparse.SUPPRESS,
                        help="precision escalations allowed in square root computations")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for searches")

    parser = argparse.ArgumentParser(prog="bielliptic", parents=[common],
                                     description="Exact arithmetic on a bielliptic surface and its covering curves.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-point", parents=[common], help="check a point lies on the surface")
    p.add_argument("files", nargs="+", metavar="FILE", help="[FIELD] POINT")
    p.add_argument("--surface", help="surface literal (default: the built-in surface)")
    p.set_defaults(func=cmd_verify_point)

    p = sub.add_parser("reproduce", parents=[common], help="run the full reproduction pipeline")
    p.add_argument("--keep-going", action="store_true")
    p.add_argument("--skip-search", action="store_true")
    p.add_argument("--fixture-dir")
    p.add_argument("--density-count", type=int)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("search", parents=[common], help="bounded point search")
    p.add_argument("kind", choices=["surface", "quartic", "biquadric"])
    p.add_argument("--field", required=True)
    p.add_argument("--a", help="twist parameter (element literal or file)")
    p.add_argument("--surface")
    p.add_argument("--coeff-bound", type=int, required=True)
    p.add_argument("--denom-bound", type=int, default=1)
    p.add_argument("--screen-sites", type=int, default=DEFAULT_SCREEN_SITES)
    p.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--expect-found", action="store_true")
    group.add_argument("--expect-empty", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("ec", parents=[common], help="operations on the Weierstrass model of D'")
    p.add_argument("--field")
    p.add_argument("--surface")
    p.add_argument("--fixture-dir")
    ec_sub = p.add_subparsers(dest="ec_cmd", required=True)
    q = ec_sub.add_parser("add", parents=[common])
    q.add_argument("P")
    q.add_argument("Q")
    q = ec_sub.add_parser("mul", parents=[common])
    q.add_argument("n", type=int)
    q.add_argument("P")
    q = ec_sub.add_parser("delta", parents=[common])
    q.add_argument("P")
    q = ec_sub.add_parser("torsion-bound", parents=[common])
    q.add_argument("--sites", help="comma separated p:root pairs")
    q = ec_sub.add_parser("nontorsion", parents=[common])
    q.add_argument("P")
    q.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_ec)

    for name, fn in (("is-square", cmd_is_square), ("sqrt", cmd_sqrt)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("element", help="element literal or file")
        p.add_argument("--field")
        p.add_argument("--fixture-dir")
        p.set_defaults(func=fn)

    p = sub.add_parser("twists", parents=[common], help="square classes delta(sum c_i G_i)")
    p.add_argument("--field")
    p.add_argument("--surface")
    p.add_argument("--fixture-dir")
    p.add_argument("--generators", help="point literal or list of point literals")
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--with-torsion", action="store_true", help="also add the 2-torsion point (0, 0)")
    p.set_defaults(func=cmd_twists)

    p = sub.add_parser("density", parents=[common], help="exact points from odd multiples of the generator")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--fixture-dir")
    p.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.jobs = getattr(args, "jobs", 1)
    args.precision_budget = getattr(args, "precision_budget", None)
    if args.jobs < 1:
        emit({"error": "--jobs must be >= 1"})
        return 2
    if args.precision_budget is not None:
        if args.precision_budget < 1:
            emit({"error": "--precision-budget must be >= 1"})
            return 2
        sqrt_module.DEFAULT_PRECISION_BUDGET = args.precision_budget
    if getattr(args, "seed", None) is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except ExpectationMismatch as exc:
        emit(exc.payload)
        print(f"expectation failed: {exc}", file=sys.stderr)
        return 3
    except (InputError, *INPUT_ERRORS) as exc:
        emit({"error": str(exc), "kind": type(exc).__name__})
        return 2
    except (ArithmeticGeometryError, ArithmeticError) as exc:
        emit({"error": str(exc), "kind": type(exc).__name__})
        return 1


if __name__ == "__main__":
    sys.exit(main())
