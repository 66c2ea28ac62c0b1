"""Command line front end.

Scalar results are printed as single-line JSON with sorted keys; traces and
rasters go to CSV or PGM files.  Every run is deterministic given its flags;
failures exit nonzero after printing one machine-readable error line to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebraic, curves, symbolic, tentmap, theta


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _spec_from_args(args) -> theta.ThetaSpec:
    if getattr(args, "preset", None) == "thex":
        return curves.thex_spec()
    if getattr(args, "preset", None) == "exceptional":
        return curves.exceptional_spec()
    if getattr(args, "seq", None):
        return theta.ThetaSpec.from_seq(symbolic.parse_seq(args.seq))
    if getattr(args, "gaps", None):
        return theta.ThetaSpec.from_text(args.gaps)
    raise ValueError("provide --seq, --gaps or a preset")


def _maybe_exact(x):
    return str(x) if isinstance(x, Fraction) else None


def cmd_knead(args) -> None:
    p = tentmap.TentParams(args.alpha, args.beta)
    print("".join(tentmap.kneading_prefix(p, args.depth, eps_c=args.eps_c)))


def cmd_theta(args) -> None:
    spec = _spec_from_args(args)
    tv = theta.theta_eval(spec, args.alpha, args.beta, tol=args.tol)
    _emit({
        "alpha": args.alpha,
        "beta": args.beta,
        "spec": spec.gaps.to_text(),
        "value": tv.value,
        "error_bound": tv.error_bound,
        "terms_used": tv.terms_used,
    })


def cmd_grad(args) -> None:
    spec = _spec_from_args(args)
    da, db = theta.theta_grad(spec, args.alpha, args.beta, tol=args.tol)
    _emit({"alpha": args.alpha, "beta": args.beta, "d_alpha": da, "d_beta": db})


def cmd_hessian(args) -> None:
    spec = _spec_from_args(args)
    q = theta.theta_hessian(spec, args.alpha, args.beta, tol=args.tol)
    _emit({"alpha": args.alpha, "beta": args.beta, "a": q.a, "b": q.b, "c": q.c})


def cmd_isentrope(args) -> None:
    m = symbolic.parse_seq(args.seq)
    n = args.steps
    alphas = [args.alpha_from + (args.alpha_to - args.alpha_from) * i / (n - 1) for i in range(n)] \
        if n > 1 else [args.alpha_from]
    points = curves.trace_isentrope(m, alphas, tol=args.tol)
    text = curves.trace_csv(points)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_diagonal(args) -> None:
    poly = algebraic.compose_branch_condition(args.seq)
    roots = algebraic.diagonal_critical_points(poly)
    cands = []
    for b0 in roots:
        (one, other), quad = algebraic.slope_at_diagonal(poly, b0)
        cands.append({
            "beta0": float(b0),
            "beta0_exact": _maybe_exact(b0),
            "slopes": [float(one), float(other)],
            "tangent_slope_exact": _maybe_exact(other),
            "quadratic": {"a": float(quad.a), "b": float(quad.b), "c": float(quad.c)},
        })
    _emit({"seq": args.seq, "polynomial": poly.to_text(), "candidates": cands})


def cmd_counterexample(args) -> None:
    spec = _spec_from_args(args)
    alpha0 = args.alpha0 if args.alpha0 is not None else curves.THEX_ALPHA0
    beta_lo = args.beta_lo if args.beta_lo is not None else curves.THEX_BETAS[0]
    beta_hi = args.beta_hi if args.beta_hi is not None else curves.THEX_BETAS[-1]
    roots = curves.counterexample_scan(spec, alpha0, beta_lo, beta_hi, samples=args.samples)
    _emit({
        "alpha0": alpha0,
        "beta_lo": beta_lo,
        "beta_hi": beta_hi,
        "spec": spec.gaps.to_text(),
        "roots": [{"beta": r.beta, "relation": r.relation} for r in roots],
    })


def cmd_raster(args) -> None:
    window = tuple(float(t) for t in args.window.split(","))
    if len(window) != 4:
        raise ValueError("--window needs a0,a1,b0,b1")
    w, _, h = args.size.partition("x")
    width, height = int(w), int(h)
    if args.field == "kneading_class":
        field = curves.KneadingClassField(args.depth)
    else:
        spec = _spec_from_args(args)
        field = curves.ThetaValueField(spec) if args.field == "theta_value" \
            else curves.ThetaSignField(spec)
    grid = curves.raster(field, window, width, height)
    if args.format == "csv":
        out = args.out if args.out.endswith(".csv") else args.out + ".csv"
        curves.write_csv(grid, out)
        _emit({"csv": out, "width": width, "height": height})
    else:
        out = args.out if args.out.endswith(".pgm") else args.out + ".pgm"
        sidecar = curves.write_pgm(grid, out)
        _emit({"pgm": out, "sidecar": out[: -len(".pgm")] + ".json",
               "min": sidecar["min"], "max": sidecar["max"]})


def cmd_entropy(args) -> None:
    p = tentmap.TentParams(args.alpha, args.beta)
    _emit({"alpha": args.alpha, "beta": args.beta, "depth": args.depth,
           "entropy_nats": tentmap.entropy_lap(p, args.depth)})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skewtent",
        description="Kneading calculus, Theta series and isentrope geometry for skew tent maps.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_point(sp, betas=True):
        sp.add_argument("--alpha", type=float, required=True)
        if betas:
            sp.add_argument("--beta", type=float, required=True)

    def add_spec(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--seq", help="kneading sequence, e.g. RLC or RLL(RL)")
        g.add_argument("--gaps", help="gap spec, e.g. 'gaps=6,5,0;tail=R' or 'gaps=1;period=0,1'")
        g.add_argument("--preset", choices=["thex", "exceptional"],
                       help="bundled counterexample gap data, or the exceptional diagonal demo")

    sp = sub.add_parser("knead", help="kneading prefix at a parameter point")
    add_point(sp)
    sp.add_argument("--depth", type=int, default=32)
    sp.add_argument("--eps-c", dest="eps_c", type=float, default=0.0)
    sp.set_defaults(func=cmd_knead)

    sp = sub.add_parser("theta", help="Theta value with error bound")
    add_spec(sp)
    add_point(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("grad", help="first partials of Theta")
    add_spec(sp)
    add_point(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_grad)

    sp = sub.add_parser("hessian", help="second differential of Theta")
    add_spec(sp)
    add_point(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_hessian)

    sp = sub.add_parser("isentrope", help="trace an equi-kneading curve (CSV)")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--alpha-from", dest="alpha_from", type=float, required=True)
    sp.add_argument("--alpha-to", dest="alpha_to", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_isentrope)

    sp = sub.add_parser("diagonal", help="diagonal meet point and tangent slopes of a finite word")
    sp.add_argument("--seq", required=True)
    sp.set_defaults(func=cmd_diagonal)

    sp = sub.add_parser("counterexample", help="roots of Theta along a vertical with kneading labels")
    add_spec(sp)
    sp.add_argument("--alpha0", type=float)
    sp.add_argument("--beta-lo", dest="beta_lo", type=float)
    sp.add_argument("--beta-hi", dest="beta_hi", type=float)
    sp.add_argument("--samples", type=int, default=400)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("raster", help="level-set raster (PGM + sidecar JSON, or CSV)")
    sp.add_argument("--field", choices=["theta_value", "theta_sign", "kneading_class"], required=True)
    add_spec(sp)
    sp.add_argument("--depth", type=int, default=8, help="prefix depth for kneading_class")
    sp.add_argument("--window", required=True, help="a0,a1,b0,b1")
    sp.add_argument("--size", required=True, help="WIDTHxHEIGHT")
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["pgm", "csv"], default="pgm")
    sp.set_defaults(func=cmd_raster)

    sp = sub.add_parser("entropy", help="lap-count entropy estimate (nats)")
    add_point(sp)
    sp.add_argument("--depth", type=int, default=16)
    sp.set_defaults(func=cmd_entropy)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
