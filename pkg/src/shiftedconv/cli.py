"""Command-line interface: per-object commands plus the acceptance-suite runner."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import mpmath
from mpmath import mp

from .config import PrecisionConfig
from .curves import load_registry, get_curve
from .eisenstein import indicator_basis
from .lattice import build_lattice
from .mockform import zhat_plus, eta_derivative_series, q_derivative
from .newform import an_coefficients
from .poincare import bp_coefficient, bq_coefficient
from .shifted import d_direct_table, l_series_closed_form
from .verify import verify_all


def _nstr(x, digits):
    return mpmath.nstr(x, digits, strip_zeros=False)


def _common(sub):
    sub.add_argument("--digits", type=int, default=64, help="working decimal precision")
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--curve-file", default=None, help="curve table overriding the built-in one")
    return sub


def _get(args, key):
    return get_curve(key, args.curve_file)


def cmd_curves(args):
    models = load_registry(args.curve_file)
    rows = [{"label": m.label, "conductor": m.conductor,
             "a_invariants": list(m.ainvs), "discriminant": m.discriminant,
             "has_cm": m.has_cm, "squarefree_level": m.squarefree_level}
            for m in models]
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['label']:>5}  N={r['conductor']:<3} a={r['a_invariants']} "
                  f"disc={r['discriminant']} cm={r['has_cm']}")
    return 0


def cmd_coeffs(args):
    f = an_coefficients(_get(args, args.label), args.n_max)
    rows = [(n, int(f[n])) for n in range(1, args.n_max + 1)]
    if args.format == "json":
        print(json.dumps([[n, a] for n, a in rows]))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "a_n"])
        w.writerows(rows)
    else:
        for n, a in rows:
            print(f"{n:6d} {a}")
    return 0


def cmd_lattice(args):
    mp.dps = args.digits
    lat = build_lattice(_get(args, args.label), args.digits)
    d = args.digits
    fields = {
        "omega1": _nstr(lat.omega1, d), "omega2": _nstr(lat.omega2, d),
        "tau": _nstr(lat.tau, d), "volume": _nstr(lat.volume, d),
        "eta1": _nstr(lat.eta1, d), "eta2": _nstr(lat.eta2, d),
        "S": _nstr(lat.s_lambda, d),
    }
    if args.format == "json":
        print(json.dumps(fields, indent=2))
    else:
        for k, v in fields.items():
            print(f"{k:>7} = {v}")
    return 0


def cmd_mockform(args):
    mp.dps = args.digits
    z = zhat_plus(_get(args, args.label), args.n_max, args.digits)
    rows = [(n, _nstr(z[n], args.digits)) for n in range(-1, args.n_max + 1)]
    if args.format == "json":
        print(json.dumps(rows))
    else:
        for n, c in rows:
            print(f"q^{n:<4} {c}")
    if args.check_eta:
        model = _get(args, args.label)
        if model.conductor not in (27, 32, 36):
            print("no eta-quotient tabulated for this level", file=sys.stderr)
            return 2
        eta = eta_derivative_series(model.conductor, args.n_max + 1)
        dz = q_derivative(z)
        worst = mp.mpf(0)
        for e in range(-1, args.n_max + 1):
            c = eta[e] if e >= eta.leading_exponent else 0
            if hasattr(c, "numerator"):
                c = mp.mpf(c.numerator) / c.denominator
            worst = max(worst, abs(dz[e] - c))
        print(f"# eta-quotient check: max deviation {_nstr(worst, 6)}")
    return 0


def cmd_eisenstein(args):
    mp.dps = args.digits
    ind = indicator_basis(args.level, args.n_max)
    out = {}
    for cusp, series in ind.items():
        out[str(cusp)] = [(str(e), _nstr(series[e], args.digits))
                          for e in range(args.n_max + 1)]
    if args.format == "json":
        print(json.dumps(out, indent=1))
    else:
        for cusp, rows in out.items():
            nonzero = [(e, c) for e, c in rows if not c.startswith("0.0")]
            print(f"F^({cusp}): " + " + ".join(f"({c})q^{e}" for e, c in nonzero[:12]))
    return 0


def cmd_poincare(args):
    mp.dps = args.digits
    rows = []
    for n in range(0 if args.maass else 1, args.n_max + 1):
        if args.maass:
            r = bq_coefficient(args.index, args.weight, args.level, n, args.c_max)
        else:
            if n == 0:
                continue
            r = bp_coefficient(args.index, args.weight, args.level, n, args.c_max,
                               bessel_argument=args.bessel_arg)
        rows.append({"n": n, "value": repr(r.value), "tail_estimate": repr(r.tail_estimate)})
    if args.format == "json":
        print(json.dumps(rows, indent=1))
    else:
        for r in rows:
            print(f"n={r['n']:<4} {r['value']}  (tail ~ {r['tail_estimate']})")
    return 0


def cmd_lseries(args):
    mp.dps = args.digits
    model = _get(args, args.label)
    tables = []
    if args.method in ("direct", "both"):
        tables.append(d_direct_table(model, args.h_max, args.terms))
    if args.method in ("closed", "both"):
        tables.append(l_series_closed_form(model, args.h_max, args.digits, args.terms))
    payload = []
    for tab in tables:
        payload.append({
            "label": tab.label,
            "method": tab.method,
            "entries": [{"h": h, "value": _nstr(tab.entries[h], args.digits) if tab.method == "closed-form"
                         else repr(tab.entries[h]),
                         "err": repr(tab.errors[h]) if isinstance(tab.errors[h], float)
                         else _nstr(tab.errors[h], 3)}
                        for h in sorted(tab.entries)],
            "metadata": {k: str(v) for k, v in tab.metadata.items()},
        })
    if args.format == "json":
        print(json.dumps(payload, indent=1))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["label", "method", "h", "value", "err"])
        for tab in payload:
            for e in tab["entries"]:
                w.writerow([tab["label"], tab["method"], e["h"], e["value"], e["err"]])
    else:
        for tab in payload:
            print(f"== {tab['label']} ({tab['method']})")
            for e in tab["entries"]:
                print(f" h={e['h']:<3} {e['value']}  (err ~ {e['err']})")
    return 0


def cmd_verify(args):
    mp.dps = args.digits
    cfg = PrecisionConfig(digits=args.digits, direct_terms=args.terms,
                          kloosterman_c_max=args.c_max)
    labels = [args.label] if args.label else None
    results = verify_all(cfg, labels)
    if args.format == "json":
        print(json.dumps([{"id": r.check_id, "description": r.description,
                           "passed": r.passed, "details": r.details,
                           "runtime_s": round(r.runtime_s, 2)} for r in results], indent=1))
    else:
        for r in results:
            print(r.line())
            for k, v in r.details.items():
                print(f"        {k} = {v}")
    n_fail = sum(not r.passed for r in results)
    print(f"# {len(results) - n_fail}/{len(results)} checks passed", file=sys.stderr)
    return 1 if n_fail else 0


def build_parser():
    p = argparse.ArgumentParser(prog="shiftedconv",
                                description="Shifted convolution L-values for the ten "
                                            "genus-one modular elliptic curves")
    sub = p.add_subparsers(dest="command", required=True)

    s = _common(sub.add_parser("curves", help="list the curve registry"))
    s.set_defaults(fn=cmd_curves)

    s = _common(sub.add_parser("coeffs", help="newform coefficients a(n)"))
    s.add_argument("--label", required=True)
    s.add_argument("--n-max", type=int, default=50)
    s.set_defaults(fn=cmd_coeffs)

    s = _common(sub.add_parser("lattice", help="periods, quasi-periods, volume, S"))
    s.add_argument("--label", required=True)
    s.set_defaults(fn=cmd_lattice)

    s = _common(sub.add_parser("mockform", help="Weierstrass mock modular form expansion"))
    s.add_argument("--label", required=True)
    s.add_argument("--n-max", type=int, default=40)
    s.add_argument("--check-eta", action="store_true")
    s.set_defaults(fn=cmd_mockform)

    s = _common(sub.add_parser("eisenstein", help="cusp indicator basis"))
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--n-max", type=int, default=30)
    s.set_defaults(fn=cmd_eisenstein)

    s = _common(sub.add_parser("poincare", help="Poincare series coefficients"))
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--index", type=int, default=1)
    s.add_argument("--weight", type=int, default=2)
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--c-max", type=int, default=10_000)
    s.add_argument("--bessel-arg", type=float, default=4.0,
                   help="J-Bessel argument multiplier in pi sqrt(mn)/c units")
    s.add_argument("--maass", action="store_true", help="Maass-Poincare b_Q instead of b_P")
    s.set_defaults(fn=cmd_poincare)

    s = _common(sub.add_parser("lseries", help="shifted convolution L-values"))
    s.add_argument("--label", required=True)
    s.add_argument("--method", choices=("direct", "closed", "both"), default="both")
    s.add_argument("--h-max", type=int, default=30)
    s.add_argument("--terms", type=int, default=100_000)
    s.set_defaults(fn=cmd_lseries)

    s = _common(sub.add_parser("verify", help="run the acceptance suite"))
    s.add_argument("--label", default=None, help="restrict checks to one curve")
    s.add_argument("--terms", type=int, default=100_000)
    s.add_argument("--c-max", type=int, default=10_000)
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    mp.dps = args.digits
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
