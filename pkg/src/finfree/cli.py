"""Command-line entry point.

Subcommands: convolve, cumulants, moments, family, verify, genus-table,
expand, infinitesimal, derivative-flow, transform.  Reports are JSON by
default (CSV or pretty text where it makes sense), byte-stable for a
fixed argv and seed, and every rational crosses the boundary as a
"num/den" string, never as a float.

Exit status: 0 on success, 1 when a verification ran and failed (the
report carries a first-failure locator), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, asymptotics, caps, verify
from .errors import FinfreeError
from .families import FamilySpec
from .ffpoly import MonicPoly, boxplus, boxtimes, cumulants, moments
from .identities import OneOverDPoly, WeightSequences, genus_layer, genus_lhs, order_d_expansion
from .series import LaurentSeries


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational 'num/den' value: {text!r}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, OneOverDPoly):
        return [str(c) for c in value.coeffs]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report, out, fmt="json"):
    if fmt == "json":
        text = json.dumps(_jsonable(report), indent=2)
    else:
        text = report
    print(text, file=out)


def _wrap(subcommand, params, results, seed=None, all_passed=True):
    return {
        "tool_version": __version__,
        "schema": 1,
        "subcommand": subcommand,
        "params": _jsonable(params),
        "seed": seed,
        "caps": caps.defaults(),
        "results": _jsonable(results),
        "all_passed": bool(all_passed),
    }


def _load_poly(text) -> MonicPoly:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FinfreeError(f"polynomial must be JSON with 'a' or 'roots': {exc}") from exc
    return MonicPoly.from_dict(data)


def _family_from_args(args) -> FamilySpec:
    return FamilySpec(args.family, a=getattr(args, "a", Fraction(0)) or Fraction(0),
                      lam=getattr(args, "lam", Fraction(1)) or Fraction(1))


def _poly_payload(p: MonicPoly):
    return {"d": p.d, "a": [str(x) for x in p.a], "monomial": str(p)}


def _cmd_family(args, out):
    fam = _family_from_args(args)
    poly = fam.instantiate(args.d)
    if args.emit == "pretty":
        _emit(str(poly), out, fmt="pretty")
        return 0
    _emit(_wrap("family", {"family": fam.label(), "d": args.d},
                _poly_payload(poly)), out)
    return 0


def _cmd_convolve(args, out):
    p = _load_poly(args.p)
    q = _load_poly(args.q)
    conv = boxplus(p, q) if args.op == "boxplus" else boxtimes(p, q)
    _emit(_wrap("convolve", {"op": args.op, "d": p.d}, _poly_payload(conv)), out)
    return 0


def _cmd_cumulants(args, out):
    p = _load_poly(args.p)
    kv = cumulants(p)
    _emit(_wrap("cumulants", {"d": p.d}, {"kappa": [str(x) for x in kv]}), out)
    return 0


def _cmd_moments(args, out):
    p = _load_poly(args.p)
    mv = moments(p, args.upto)
    _emit(_wrap("moments", {"d": p.d, "upto": args.upto},
                {"m": [str(x) for x in mv]}), out)
    return 0


def _cmd_expand(args, out):
    fam = _family_from_args(args)
    orders = args.n
    results = []
    for n in orders:
        poly = order_d_expansion(n, fam.limit_cumulants(n))
        results.append({"n": n, "coefficients": [str(c) for c in poly.coeffs],
                        "display": str(poly)})
    if args.emit == "pretty":
        for row in results:
            print(f"m_{row['n']} = {row['display']}", file=out)
        return 0
    _emit(_wrap("expand", {"family": fam.label(), "n": orders}, results), out)
    return 0


def _cmd_verify(args, out):
    identities = [x for x in args.identity.split(",") if x]
    reports = []
    ok = True
    for name in identities:
        report = verify.run_identity(name, n=args.n, d=args.d, seed=args.seed,
                                     cases=args.cases, verbose=args.verbose)
        if not args.verbose:
            report = dict(report)
            report["cases"] = len(report["cases"])
        reports.append(report)
        ok = ok and report["all_passed"]
    _emit(_wrap("verify", {"identity": args.identity, "n": args.n, "d": args.d,
                           "cases": args.cases},
                reports, seed=args.seed, all_passed=ok), out)
    return 0 if ok else 1


def _cmd_genus_table(args, out):
    import random

    from .identities import seeded_weights
    n = args.n
    if args.seed is None:
        w = WeightSequences((Fraction(1),) * n, (Fraction(1),) * n)
    else:
        w = seeded_weights(random.Random(args.seed), n)
    rows = []
    ok = True
    for k in range(n):
        layers = [genus_layer(n, k, g, w) for g in range(k // 2 + 1)]
        lhs = genus_lhs(n, k, w)
        sign = -1 if k % 2 else 1
        rhs = sign * sum((layer.value for layer in layers), Fraction(0))
        match = lhs == rhs
        ok = ok and match
        rows.append({"k": k,
                     "layers": [{"g": layer.g, "value": layer.value} for layer in layers],
                     "lhs": lhs, "match": match})
    _emit(_wrap("genus-table", {"n": n}, rows, seed=args.seed, all_passed=ok), out)
    return 0 if ok else 1


def _infinitesimal_rows(label, profile, order):
    ann = asymptotics.infinitesimal_from_annular(profile, order)
    g = asymptotics.cauchy_from_moments(
        asymptotics.free_moments_from_cumulants(profile, order))
    series = asymptotics.infinitesimal_moments(asymptotics.g_inf_from_cauchy(g), order)
    expansion = tuple(order_d_expansion(n, profile).coefficient(1)
                      for n in range(1, order + 1))
    kt = asymptotics.k_transform(g, order)
    kprimes = asymptotics.r_inf_from_k(kt)
    kp = tuple(kprimes.coeff(n - 1) for n in range(1, min(order, kprimes.order + 1) + 1))
    agree = ann.mp == series == expansion
    markov = asymptotics.markov_transform(g)
    markov2 = asymptotics.markov_transform(markov)
    markov_ok = all(
        series[n - 1] == (markov.coeff(n + 1) - markov2.coeff(n + 1)) / 2
        for n in range(1, order + 1))
    return {"profile": label,
            "m_prime": ann.mp,
            "kappa_prime": kp,
            "paths_agree": agree,
            "markov_identity_ok": markov_ok}


def _cmd_infinitesimal(args, out):
    order = args.order
    rows = []
    if args.family == "all":
        import random

        from .identities import seeded_profile
        specs = [("hermite", FamilySpec("hermite").limit_cumulants(order)),
                 ("laguerre(1/3)", FamilySpec("laguerre", lam=Fraction(1, 3)).limit_cumulants(order)),
                 ("laguerre(1)", FamilySpec("laguerre", lam=1).limit_cumulants(order)),
                 ("laguerre(2)", FamilySpec("laguerre", lam=2).limit_cumulants(order)),
                 ("power(1/2)", FamilySpec("power", a=Fraction(1, 2)).limit_cumulants(order))]
        rng = random.Random(args.seed or 0)
        for i in range(args.cases):
            specs.append((f"random-{i}", seeded_profile(rng, order)))
        for label, prof in specs:
            rows.append(_infinitesimal_rows(label, prof, order))
    else:
        fam = _family_from_args(args)
        rows.append(_infinitesimal_rows(fam.label(), fam.limit_cumulants(order), order))
    ok = all(r["paths_agree"] and r["markov_identity_ok"] for r in rows)
    if args.emit == "csv":
        print("profile,n,m_prime,kappa_prime,paths_agree,markov_identity_ok", file=out)
        for r in rows:
            for n in range(1, order + 1):
                kp = r["kappa_prime"][n - 1] if n - 1 < len(r["kappa_prime"]) else ""
                print(f"{r['profile']},{n},{r['m_prime'][n - 1]},{kp},"
                      f"{r['paths_agree']},{r['markov_identity_ok']}", file=out)
        return 0 if ok else 1
    _emit(_wrap("infinitesimal", {"family": args.family, "order": order},
                rows, seed=args.seed, all_passed=ok), out)
    return 0 if ok else 1


def _cmd_derivative_flow(args, out):
    results = []
    if args.trend in ("derivative", "both"):
        fam = _family_from_args(args)
        for n in range(1, args.n + 1):
            results.append(asymptotics.derivative_flow_trend(fam, args.t, n, args.ds))
    if args.trend in ("boxtimes", "both"):
        p_fam = FamilySpec("hermite")
        q_fam = FamilySpec("laguerre", lam=args.q_lambda)
        for n in range(1, args.n + 1):
            results.append(asymptotics.convolution_trend(p_fam, q_fam, n, args.ds))
    ok = all(r["trend_ok"] for r in results)
    _emit(_wrap("derivative-flow",
                {"trend": args.trend, "t": args.t, "n": args.n, "ds": args.ds},
                results, all_passed=ok), out)
    return 0 if ok else 1


def _cmd_transform(args, out):
    if args.infile.startswith("@"):
        with open(args.infile[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = args.infile
    data = json.loads(text)
    if "m" in data:
        mvals = [Fraction(str(x)) for x in data["m"]]
    elif "k" in data:
        kv = [Fraction(str(x)) for x in data["k"]]
        mvals = list(asymptotics.free_moments_from_cumulants(kv, len(kv)))
    else:
        raise FinfreeError("transform input needs an 'm' or 'k' field")
    g = asymptotics.cauchy_from_moments(mvals)
    n = len(mvals)
    if args.op == "cauchy":
        payload = {"w_powers": list(range(g.lo, g.hi + 1)),
                   "coefficients": [str(x) for x in g.c]}
    elif args.op in ("k", "r"):
        kt = asymptotics.k_transform(g, n)
        payload = {"kappa": [str(kt.coeff(j)) for j in range(kt.order + 1)]}
    elif args.op == "markov":
        m = asymptotics.markov_transform(g)
        payload = {"m": [str(m.coeff(j + 1)) for j in range(1, m.hi)]}
    elif args.op == "ginf":
        ginf = asymptotics.g_inf_from_cauchy(g)
        payload = {"m_prime": [str(x) for x in
                               asymptotics.infinitesimal_moments(ginf, n)]}
    else:  # rinf
        kt = asymptotics.k_transform(g, n)
        rinf = asymptotics.r_inf_from_k(kt)
        payload = {"kappa_prime": [str(rinf.coeff(j)) for j in range(rinf.order + 1)]}
    _emit(_wrap("transform", {"op": args.op}, payload), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finfree",
        description="Exact finite free probability: convolutions, cumulants, "
                    "genus expansions, infinitesimal distributions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_family_flags(sp, with_all=False):
        choices = ["power", "hermite", "laguerre"] + (["all"] if with_all else [])
        sp.add_argument("--family", required=True, choices=choices)
        sp.add_argument("--a", type=_rational, default=Fraction(0),
                        help="parameter of the power family (x-a)^d")
        sp.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1),
                        help="Laguerre parameter as a rational")

    sp = sub.add_parser("family", help="construct a named family member")
    add_family_flags(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--emit", choices=["json", "pretty"], default="json")
    sp.set_defaults(func=_cmd_family)

    sp = sub.add_parser("convolve", help="finite free convolution of two polynomials")
    sp.add_argument("--op", choices=["boxplus", "boxtimes"], required=True)
    sp.add_argument("--p", required=True, help='JSON {"a": ...}/{"roots": ...} or @file')
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=_cmd_convolve)

    sp = sub.add_parser("cumulants", help="finite free cumulants of a polynomial")
    sp.add_argument("--p", required=True)
    sp.set_defaults(func=_cmd_cumulants)

    sp = sub.add_parser("moments", help="moments of the empirical root distribution")
    sp.add_argument("--p", required=True)
    sp.add_argument("--upto", type=int, required=True)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("expand", help="moment as an exact polynomial in 1/d")
    add_family_flags(sp)
    sp.add_argument("--n", type=_int_list, required=True,
                    help="comma-separated moment orders")
    sp.add_argument("--emit", choices=["json", "pretty"], default="json")
    sp.set_defaults(func=_cmd_expand)

    sp = sub.add_parser("verify", help="run identity checks on seeded exact inputs")
    sp.add_argument("--identity", required=True,
                    help="comma-separated subset of: "
                         + ", ".join(sorted(verify.IDENTITY_DEFAULTS)))
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--cases", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--verbose", action="store_true",
                    help="keep per-case witness values in the report")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("genus-table", help="genus layers s_k^(g) and the LHS check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None,
                    help="seed for random weights; omit for u = v = 1")
    sp.set_defaults(func=_cmd_genus_table)

    sp = sub.add_parser("infinitesimal", help="order-1/d moments and cumulants")
    add_family_flags(sp, with_all=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--cases", type=int, default=5,
                    help="random profiles when --family all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--emit", choices=["json", "csv"], default="json")
    sp.set_defaults(func=_cmd_infinitesimal)

    sp = sub.add_parser("derivative-flow",
                        help="finite-d trends toward the free limits")
    sp.add_argument("--trend", choices=["derivative", "boxtimes", "both"],
                    default="derivative")
    add_family_flags(sp)
    sp.add_argument("--t", type=_rational, default=Fraction(1, 2))
    sp.add_argument("--n", type=int, required=True, help="largest moment order")
    sp.add_argument("--ds", type=_int_list, required=True)
    sp.add_argument("--q-lambda", dest="q_lambda", type=_rational, default=Fraction(1),
                    help="Laguerre parameter of the boxtimes partner")
    sp.set_defaults(func=_cmd_derivative_flow)

    sp = sub.add_parser("transform", help="series transforms of a moment sequence")
    sp.add_argument("--in", dest="infile", required=True,
                    help='JSON {"m": [...]} / {"k": [...]} or @file')
    sp.add_argument("--op", choices=["cauchy", "k", "r", "markov", "ginf", "rinf"],
                    required=True)
    sp.set_defaults(func=_cmd_transform)

    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except FinfreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
