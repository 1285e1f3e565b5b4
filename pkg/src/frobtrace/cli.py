"""Command-line interface.  Results go to stdout as JSON Lines (or CSV for trace
tables); a short human-readable summary goes to stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import classno, ecurves, hecke, hgf, mforms, quaddecomp, verify
from .ecurves import CurveFamily
from .errors import BadArgument, BadParameter, BadResidue, FrobTraceError, NonPrime
from .ffield import is_prime, make_context

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# --- serialisation -----------------------------------------------------------


def _float(x: float) -> float:
    x = float(f"{float(x):.12g}")
    return 0.0 if x == 0 else x


def jsonable(obj):
    """Plain JSON types with floats rounded to 12 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return str(obj)
        return _float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _float(obj.real), "im": _float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit(out, schema: str, record: dict):
    rec = dict(record)
    rec["schema"] = schema
    out.write(json.dumps(jsonable(rec), separators=(",", ":"), ensure_ascii=True) + "\n")


# --- subcommands -------------------------------------------------------------


def _exps(ctx, exps):
    return [ctx.char(m) for m in exps]


def cmd_hg(args, out, err):
    ctx = make_context(args.p)
    if args.upper is None and args.lower is None:
        xi = hgf.canonical_xi(ctx)
        a = ecurves.trace_family(CurveFamily.T1728, args.p, args.t)
        F = hgf.hg_theorem1(ctx, args.t, xi)
        psi = hgf.psi_theorem1(ctx, args.t, xi)
        emit(out, "hg", {"p": args.p, "t": args.t, "upper": [xi.m, (5 * xi.m) % (args.p - 1)], "lower": [0],
                         "value": F, "psi": psi, "a_t": a, "residual": abs(args.p * F - psi * a)})
        return EXIT_OK
    upper = args.upper or []
    lower = args.lower or []
    spec = hgf.HgSpec(tuple(_exps(ctx, upper)), tuple(_exps(ctx, lower)), args.t)
    val = hgf.hg_general(spec)
    emit(out, "hg", {"p": args.p, "t": args.t, "upper": upper, "lower": lower, "value": val})
    return EXIT_OK


def family_rows(p: int, family: CurveFamily):
    """(t, a_t, F, residual) for every valid t; F is the hypergeometric value tied to the family."""
    ctx = make_context(p)
    traces = ecurves.family_traces(family, p)
    phi = ctx.quadratic
    rows = []
    for t, a in traces.items():
        F = res = None
        if family is CurveFamily.T1728 and p % 12 == 1:
            F = hgf.hg_theorem1(ctx, t)
            res = abs(p * F - hgf.psi_theorem1(ctx, t) * a)
        elif family is CurveFamily.LEGENDRE:
            F = hgf.hg_legendre(ctx, t)
            res = abs(p * F + phi(-1) * a)
        elif family is CurveFamily.TWISTED:
            F = hgf.hg_twisted(ctx, t)
            res = abs(p * p * F - phi(-t) * (a * a - p))
        elif family is CurveFamily.BEUKERS_A and p % 12 == 1:
            F = hgf.hg_beukers_a(ctx, t)
            res = abs(p * F - hgf.chi_beukers_a(ctx, t) * a)
        elif family is CurveFamily.BEUKERS_B and p % 12 == 1:
            F = hgf.hg_beukers_b(ctx, t)
            res = abs(p * F + hgf.sign_beukers_b(ctx) * a) if t else None
        rows.append((t, a, F, res))
    return rows


def cmd_trace(args, out, err):
    family = CurveFamily[args.family.upper()]
    rows = family_rows(args.p, family)
    if args.t is not None:
        rows = [r for r in rows if r[0] == args.t % args.p]
        if not rows:
            raise BadParameter(f"t={args.t} is excluded for {family.value} at p={args.p}")
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "t", "a_t", "re_F", "im_F", "residual"])
        for t, a, F, res in rows:
            w.writerow([args.p, t, a,
                        "" if F is None else repr(_float(F.real)),
                        "" if F is None else repr(_float(F.imag)),
                        "" if res is None else repr(_float(res))])
        return EXIT_OK
    for t, a, F, res in rows:
        emit(out, "trace", {"p": args.p, "family": family.value, "t": t, "a_t": a, "F": F, "residual": res})
    return EXIT_OK


def _decomp_record(p: int) -> dict:
    rec = {"p": p}
    try:
        g = quaddecomp.gaussian_decomp(p)
        rec["gaussian"] = {"a": g.a, "b": g.b}
        rec["gaussian_normalized"] = [[x.a, x.b] for x in quaddecomp.all_gaussian_normalized(p)]
    except BadResidue:
        rec["gaussian"] = None
    try:
        e = quaddecomp.eisenstein_decomp(p)
        rec["eisenstein"] = {"c": e.c, "d": e.d}
        rec["eisenstein_normalized"] = [[x.c, x.d] for x in quaddecomp.all_eisenstein_normalized(p)]
    except BadResidue:
        rec["eisenstein"] = None
    return rec


def cmd_decomp(args, out, err):
    rec = _decomp_record(args.p)
    if rec["gaussian"] is None and rec["eisenstein"] is None:
        raise BadResidue(f"p={args.p} is neither 1 mod 4 nor 1 mod 3")
    emit(out, "decomp", rec)
    return EXIT_OK


def cmd_classno(args, out, err):
    data = classno.class_number(args.d)
    emit(out, "classno", {"d": args.d, "h": data.h, "w": data.w, "h_star": data.h_star,
                          "H": classno.hurwitz_H(args.d), "forms": [list(f) for f in data.forms]})
    return EXIT_OK


def _decomps(p: int) -> dict:
    d = hecke.Decomps.for_prime(p)
    return {"a": d.a, "b": d.b, "c": d.c, "d": d.d}


def cmd_hecke(args, out, err):
    k, p = args.k, args.p
    rec = {"k": k, "p": p, "method": args.method}
    traces = None
    if args.method == "thm2":
        traces = ecurves.t1728_traces(p)
        rec["trace"] = hecke.trace_thm2(k, p, traces)
        rec["lambda"] = hecke.lambda_eval(k, p)
        rec["decomps"] = _decomps(p)
    elif args.method == "recursion":
        traces = ecurves.t1728_traces(p)
        prior = hecke.traces_by_recursion(k, p)
        rec["trace"] = prior[k]
        rec["lambda"] = hecke.lambda_eval(k, p)
        rec["decomps"] = _decomps(p)
        rec["prior_traces"] = {w: v for w, v in prior.items() if w < k}
        rec["b"] = list(hecke.recursion_coeffs(k // 2 - 1, p).b)
        rec["power_sum"] = hecke.power_sum(traces, k - 2)
    elif args.method == "hijikata":
        rec["trace"] = hecke.trace_hijikata(k, p)
        rec["h_star_minus_4p"] = classno.class_number(-4 * p).h_star
        rec["class_sums"] = [[s, h] for s, h in hecke.hijikata_class_sum(p)]
    else:
        rec["trace"] = mforms.trace_oracle(k, p)
    if args.per_t:
        traces = ecurves.t1728_traces(p) if traces is None else traces
        G = hecke.trace_polynomial(k)
        rec["per_t"] = [[t, a, G(a, p)] for t, a in zip(range(2, p), traces)]
    emit(out, "hecke_trace", rec)
    return EXIT_OK


def cmd_tau(args, out, err):
    p = args.p
    if not is_prime(p):
        raise NonPrime(f"p={p} is not prime")
    rec = {"p": p}
    if args.method == "oracle":
        rec["tau"] = mforms.tau(p)
        rec["method"] = "oracle"
    else:
        traces = ecurves.t1728_traces(p)
        if args.method == "cor1":
            rec["tau"] = hecke.tau_cor1(p, traces)
        elif args.method == "cor2":
            S = hecke.power_sum(traces, 10)
            rec["tau"] = hecke.tau_cor2(p, traces)
            rec["power_sum_10"] = S
        else:
            S = hecke.power_sum(traces, 12)
            rec["tau"] = hecke.tau_cor3(p, traces)
            rec["power_sum_12"] = S
            rec["exact"] = hecke.tau_cor3_exact(p, S)
        rec["method"] = args.method
        rec["decomps"] = _decomps(p)
    emit(out, "tau", rec)
    return EXIT_OK


FORMS = {
    "delta": lambda N: mforms.delta_series(N),
    "e4": lambda N: mforms.eisenstein(4, N),
    "e6": lambda N: mforms.eisenstein(6, N),
    **{f"cusp{k}": (lambda N, k=k: mforms.cusp_form(k, N)) for k in mforms.CUSP_WEIGHTS},
}


def cmd_mforms(args, out, err):
    if args.n < 1:
        raise BadArgument("--n must be at least 1")
    series = FORMS[args.form](args.n)
    emit(out, "mforms_coeffs", {"form": args.form, "n": args.n, "coeffs": series.coeffs})
    return EXIT_OK


def cmd_verify(args, out, err):
    targets = verify.TARGETS if args.target == "all" else (args.target,)
    ok = True
    for target in targets:
        t0 = time.perf_counter()
        _, reports = verify.run_target(target, pmax=args.pmax, tol=args.tolerance, threads=args.threads)
        elapsed = time.perf_counter() - t0
        for r in reports:
            rec = {"target": target, "theorem": r.theorem, "passed": r.passed, "primes": r.primes,
                   "failed_primes": [p for p, good in r.per_prime.items() if not good],
                   "max_residual": r.max_residual, "mismatches": r.mismatches}
            if args.timings:
                rec["wall_time"] = r.wall_time
            emit(out, "verification_report", rec)
            ok &= r.passed
            status = "ok  " if r.passed else "FAIL"
            resid = "" if r.max_residual is None else f" max residual {r.max_residual:.3g}"
            err.write(f"{status} {r.theorem} ({len(r.per_prime)} primes){resid}\n")
        err.write(f"{target}: {elapsed:.2f}s\n")
    return EXIT_OK if ok else EXIT_FAIL


# --- parser ------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so values given before the subcommand survive
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g.add_argument("--tolerance", type=float, default=d(verify.DEFAULT_TOLERANCE),
                   help="absolute tolerance on p-scaled residuals")
    g.add_argument("--threads", type=int, default=d(os.cpu_count() or 1))
    g.add_argument("--seed", type=int, default=d(0), help="reserved; every computation is deterministic")
    return g


def build_parser() -> argparse.ArgumentParser:
    top = _global_flags(suppress=False)
    common = _global_flags(suppress=True)

    ap = argparse.ArgumentParser(prog="frobtrace", parents=[top], allow_abbrev=False,
                                 description="Finite-field hypergeometric functions and Hecke traces.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hg", parents=[common], allow_abbrev=False, help="evaluate a finite-field hypergeometric function")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--upper", type=int, nargs="+", help="exponents m of T^m for the top row")
    s.add_argument("--lower", type=int, nargs="*", help="exponents for the bottom row")
    s.set_defaults(func=cmd_hg)

    s = sub.add_parser("trace", parents=[common], allow_abbrev=False, help="traces of Frobenius over a curve family")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--family", default="T1728", choices=[f.value for f in CurveFamily] +
                   [f.value.lower() for f in CurveFamily])
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("hecke", parents=[common], allow_abbrev=False, help="traces of Hecke operators")
    hsub = s.add_subparsers(dest="hecke_command", required=True)
    h = hsub.add_parser("trace", parents=[common], allow_abbrev=False)
    h.add_argument("--k", type=int, required=True)
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--method", choices=("thm2", "recursion", "hijikata", "oracle"), default="thm2")
    h.add_argument("--per-t", action="store_true", help="include the per-t trace table")
    h.set_defaults(func=cmd_hecke)

    s = sub.add_parser("tau", parents=[common], allow_abbrev=False, help="Ramanujan tau(p)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--method", choices=("cor1", "cor2", "cor3", "oracle"), default="oracle")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("decomp", parents=[common], allow_abbrev=False, help="normalised p = a^2+b^2 and p = c^2-cd+d^2")
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_decomp)

    s = sub.add_parser("classno", parents=[common], allow_abbrev=False, help="class numbers of imaginary quadratic orders")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_classno)

    s = sub.add_parser("mforms", parents=[common], allow_abbrev=False, help="q-expansions of level-one forms")
    msub = s.add_subparsers(dest="mforms_command", required=True)
    m = msub.add_parser("coeffs", parents=[common], allow_abbrev=False)
    m.add_argument("--form", choices=sorted(FORMS), default="delta")
    m.add_argument("--n", type=int, required=True)
    m.set_defaults(func=cmd_mforms)

    s = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="run verification sweeps")
    s.add_argument("--target", choices=verify.TARGETS + ("all",), default="all")
    s.add_argument("--pmax", type=int, default=500)
    s.add_argument("--timings", action="store_true", help="include wall time in the JSON records")
    s.set_defaults(func=cmd_verify)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out, err)
    except FrobTraceError as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())
