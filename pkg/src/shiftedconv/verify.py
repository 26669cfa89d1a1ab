"""The acceptance suite as a callable report, shared by the CLI and the test suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
from mpmath import mp, mpf, mpc

from .config import PrecisionConfig
from .curves import load_registry, get_curve
from .eisenstein import basis_for_level, cusp_count, enumerate_cusps, infinity_indicator
from .lattice import build_lattice
from .mockform import zhat_plus, eta_derivative_series, q_derivative
from .newform import an_coefficients, an_array, ap_point_count, _sieve_primes
from .poincare import bp_coefficient
from .shifted import (alpha_constant, alpha_fitted, beta_fit, d_direct,
                      l_series_closed_form, support_modulus)


@dataclass
class CheckResult:
    check_id: str
    description: str
    passed: bool
    details: dict = field(default_factory=dict)
    runtime_s: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.check_id}: {self.description} ({self.runtime_s:.1f}s)"


def _str(x, digits=12):
    if isinstance(x, (int, str)):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return mpmath.nstr(x, digits)


def _labels_subset(labels):
    if labels is None:
        return [m.label for m in load_registry()]
    return list(labels)


REF_ZHAT11 = ("1.0", "0.9520", "1.547", "0.3493", "1.976", "-2.609")
REF_L11_CLOSED = ("-0.706", "-1.562", "-0.0930", "-1.234", "2.024")
REF_CM_RATIONALS = {
    "27a1": [(2, Fraction(1, 2)), (5, Fraction(1, 5)), (8, Fraction(3, 4)),
             (11, Fraction(-6, 11)), (14, Fraction(-1, 2))],
    "32a1": [(3, Fraction(2, 3)), (7, Fraction(1, 7)), (11, Fraction(-2, 11))],
    "36a1": [(5, Fraction(3, 5)), (11, Fraction(1, 11))],
}


def check_newform_regression(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    f = an_coefficients(get_curve("27a1"), 20)
    want = {1: 1, 4: -2, 7: -1, 13: 5, 16: 4, 19: -7}
    got = {n: f[n] for n in range(1, 21) if f[n]}
    rt = time.time() - t0
    ok = got == want and rt < 1.0
    return CheckResult("1-newform-27a1", "a(n) of 27a1 matches the reference expansion exactly",
                       ok, {"got": str(got), "runtime_bound_s": "1"}, rt)


def check_s_lambda(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        lat = build_lattice(get_curve("11a1"), cfg.digits)
        dev = abs(lat.s_lambda.real - mpf("0.38124"))
    rt = time.time() - t0
    ok = dev <= mpf("5e-5") and rt < 10.0
    return CheckResult("2-s-lambda-11a1", "S(Lambda) = 0.38124 +- 5e-5",
                       ok, {"S": _str(lat.s_lambda.real, 10), "dev": _str(dev, 3)}, rt)


def check_zhat_11(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        z = zhat_plus(get_curve("11a1"), 6, cfg.digits)
        devs = [abs(z[n] - mpf(REF_ZHAT11[n])) for n in range(6)]
    ok = max(devs) <= mpf("1e-3")
    return CheckResult("3-zhat-11a1", "mock form coefficients q^0..q^5 match to 1e-3",
                       ok, {"worst": _str(max(devs), 3)}, time.time() - t0)


def check_zhat_cm(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    worst = mpf(0)
    with mp.workdps(cfg.digits):
        for label, anchors in REF_CM_RATIONALS.items():
            z = zhat_plus(get_curve(label), 16, cfg.digits)
            for n, want in anchors:
                worst = max(worst, abs(z[n] - mpf(want.numerator) / want.denominator))
    ok = worst <= mpf("1e-10")
    return CheckResult("4-zhat-cm-rationals", "CM mock form coefficients are the reference rationals",
                       ok, {"worst": _str(worst, 3)}, time.time() - t0)


def check_eta_derivative(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    worst = mpf(0)
    with mp.workdps(cfg.digits):
        for N in (27, 32, 36):
            z = zhat_plus(get_curve(N), 40, cfg.digits)
            dz = q_derivative(z)
            eta = eta_derivative_series(N, 41)
            for e in range(-1, 41):
                c = eta[e] if e >= eta.leading_exponent else 0
                cf = mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpf(c)
                worst = max(worst, abs(dz[e] - cf))
    ok = worst <= mpf("1e-8")
    return CheckResult("5-eta-derivative", "q d/dq of the mock form equals the eta quotients (40 coeffs)",
                       ok, {"worst": _str(worst, 3)}, time.time() - t0)


def check_f_infinity_11(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        f = infinity_indicator(11, 7)
        want = [Fraction(1), Fraction(1, 5), Fraction(3, 5), Fraction(4, 5),
                Fraction(7, 5), Fraction(6, 5), Fraction(12, 5)]
        worst = max(abs(f[n] - mpf(w.numerator) / w.denominator) for n, w in enumerate(want))
    ok = worst <= mpf("1e-10")
    return CheckResult("6a-f-infinity-11", "F^inf_{11,2} first seven coefficients",
                       ok, {"worst": _str(worst, 3)}, time.time() - t0)


def check_f_infinity_27(cfg: PrecisionConfig) -> CheckResult:
    """Asserts the stated anchors 3, 9, -12 at q^9, q^18, q^27.

    The q^27 clause cannot pass: the unique indicator has -15 there, confirmed by
    direct summation of D(27;1) (see check 6c).
    """
    t0 = time.time()
    with mp.workdps(cfg.digits):
        f = infinity_indicator(27, 28)
        devs = {9: abs(f[9] - 3), 18: abs(f[18] - 9), 27: abs(f[27] - (-12))}
    ok = max(devs.values()) <= mpf("1e-10")
    return CheckResult("6b-f-infinity-27", "F^inf_{27,2} anchors 3, 9, -12 at q^9, q^18, q^27",
                       ok, {("dev_q%d" % n): _str(d, 3) for n, d in devs.items()},
                       time.time() - t0)


def check_f_infinity_27_adjudication(cfg: PrecisionConfig) -> CheckResult:
    """Cross-validates the computed q^27 coefficient against direct summation."""
    t0 = time.time()
    with mp.workdps(cfg.digits):
        model = get_curve("27a1")
        tab = l_series_closed_form(model, 27, cfg.digits)
        dv = d_direct(model, 27, cfg.direct_terms)
        resid = abs(float(tab.entries[27]) - dv.value)
        f27 = infinity_indicator(27, 28)[27]
    ok = resid <= 0.02
    return CheckResult("6c-f-infinity-27-adjudication",
                       "closed form built on the computed F^inf matches direct D(27;1)",
                       ok, {"F27_computed": _str(f27, 8), "closed_minus_direct": _str(resid, 3)},
                       time.time() - t0)


def check_theorem_11(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        model = get_curve("11a1")
        alpha = alpha_constant(model, cfg.direct_terms, cfg.digits)
        tab = l_series_closed_form(model, 5, cfg.digits, cfg.direct_terms, alpha=alpha)
        dev_ref = max(abs(tab.entries[h + 1] - mpf(REF_L11_CLOSED[h])) for h in range(5))
        dev_direct = max(abs(float(tab.entries[h]) - d_direct(model, h, cfg.direct_terms).value)
                         for h in range(1, 6))
        dev_alpha = abs(alpha - mpf("0.00159"))
    rt = time.time() - t0
    ok = dev_ref <= mpf("3e-3") and dev_direct <= 0.02 and dev_alpha <= mpf("2e-3") and rt < 120
    return CheckResult("7-theorem-n11", "closed-form L-values at h=1..5 and alpha (N=11)",
                       ok, {"dev_vs_reference": _str(dev_ref, 3), "dev_vs_direct": _str(dev_direct, 3),
                            "alpha": _str(alpha, 6), "dev_alpha": _str(dev_alpha, 3)}, rt)


def check_theorem_27(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        model = get_curve("27a1")
        tab = l_series_closed_form(model, 30, cfg.digits)
        off_support = max(abs(tab.entries[h]) for h in range(1, 31) if h % 3)
        direct_zero = all(d_direct(model, h, 2000).value == 0.0
                          for h in range(1, 31) if h % 3)
        resid = max(abs(float(tab.entries[h]) - d_direct(model, h, cfg.direct_terms).value)
                    for h in (3, 6, 9, 12))
    ok = off_support <= mpf("1e-6") and direct_zero and resid <= 0.02
    return CheckResult("8-theorem-n27", "CM closed form: vanishing off 3Z, matches direct on 3Z",
                       ok, {"off_support_max": _str(off_support, 3),
                            "direct_exactly_zero": str(direct_zero),
                            "max_residual_h_3_6_9_12": _str(resid, 3)}, time.time() - t0)


def check_poincare(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(30):
        model = get_curve("11a1")
        lat = build_lattice(model, cfg.digits)
        volpi = float(lat.volume / mp.pi)
    a = an_array(model, 10)
    outcome = {}
    passing = None
    for arg in (4.0, 2.0):
        worst = max(abs(volpi * bp_coefficient(1, 2, 11, n, cfg.kloosterman_c_max,
                                               bessel_argument=arg).value - a[n])
                    for n in range(1, 11))
        outcome[f"max_dev_arg_{arg:g}pi"] = repr(worst)
        if worst <= 1e-2 and passing is None:
            passing = arg
    rt = time.time() - t0
    ok = passing is not None and rt < 60
    outcome["passing_convention"] = f"{passing:g} pi sqrt(mn)/c" if passing else "none"
    return CheckResult("9-poincare-reconstruction",
                       "(vol/pi) b_P(1,2,11;n) reconstructs a(n) for n <= 10",
                       ok, outcome, rt)


def check_properties(cfg: PrecisionConfig, labels=None) -> list[CheckResult]:
    out = []
    labels = _labels_subset(labels)
    # Legendre relation
    t0 = time.time()
    with mp.workdps(cfg.digits):
        worst = mpf(0)
        for lab in labels:
            lat = build_lattice(get_curve(lab), cfg.digits)
            worst = max(worst, abs(lat.omega1 * lat.eta2 - lat.omega2 * lat.eta1
                                   + 2 * mp.pi * mpc(0, 1)))
    out.append(CheckResult("10a-legendre", "Legendre relation residual <= 1e-50 (all lattices)",
                           worst <= mpf("1e-50"), {"worst": _str(worst, 3)}, time.time() - t0))
    # Hasse bound
    t0 = time.time()
    ok = True
    for lab in labels:
        model = get_curve(lab)
        for p in _sieve_primes(10_000):
            if model.conductor % p == 0:
                continue
            ap = ap_point_count(model, p)
            if ap * ap > 4 * p:
                ok = False
    out.append(CheckResult("10b-hasse", "|a_p| <= 2 sqrt(p) for good p <= 1e4 (all curves)",
                           ok, {}, time.time() - t0))
    # multiplicativity over every coprime pair with m <= n, mn <= 1e4
    t0 = time.time()
    ok = True
    bad = ""
    for lab in labels:
        a = an_array(get_curve(lab), 10_000)
        for m in range(2, 101):
            for n in range(m, 10_000 // m + 1):
                if gcd(m, n) == 1 and a[m * n] != a[m] * a[n]:
                    ok, bad = False, f"{lab}: ({m},{n})"
    out.append(CheckResult("10c-multiplicativity", "a(mn) = a(m) a(n) for coprime mn <= 1e4",
                           ok, {"first_failure": bad} if bad else {}, time.time() - t0))
    # cusp counts
    t0 = time.time()
    ok = all(len(enumerate_cusps(get_curve(lab).conductor)) == cusp_count(get_curve(lab).conductor)
             for lab in labels)
    out.append(CheckResult("10d-cusp-counts", "cusp counts match the divisor-sum formula",
                           ok, {}, time.time() - t0))
    # indicator delta property
    t0 = time.time()
    with mp.workdps(cfg.digits):
        worst = mpf(0)
        for lab in labels:
            N = get_curve(lab).conductor
            eb = basis_for_level(N)
            combos = eb.indicator_combos()
            k = len(eb.cusps)
            pairs = [(i, j) for i in range(k) for j in range(k)] if k <= 6 else \
                    [(i, i) for i in range(k)] + [(i, (i + 1) % k) for i in range(k)]
            for i, j in pairs:
                v = eb.cusp_constant_numeric(combos[i], eb.cusps[j], 40)
                worst = max(worst, abs(v - (1 if i == j else 0)))
    out.append(CheckResult("10e-indicator-delta", "indicator basis hits delta values to 1e-10",
                           worst <= mpf("1e-10"), {"worst": _str(worst, 3)}, time.time() - t0))
    return out


def check_beta_vanishing(cfg: PrecisionConfig) -> CheckResult:
    t0 = time.time()
    with mp.workdps(cfg.digits):
        worst = mpf(0)
        for lab in ("11a1", "27a1"):
            model = get_curve(lab)
            _, betas = beta_fit(model, 30, cfg.digits, n_terms_for_d=cfg.direct_terms)
            for cusp, b in betas.items():
                dev = abs(b - 1) if cusp.is_infinity else abs(b)
                worst = max(worst, dev)
    ok = worst <= mpf("1e-6")
    return CheckResult("11-beta-vanishing", "least-squares fit recovers beta_inf = 1, others 0",
                       ok, {"worst": _str(worst, 3)}, time.time() - t0)


def check_n49_experiment(cfg: PrecisionConfig) -> CheckResult:
    """Non-gating: reports the fitted alpha and the closed-vs-direct residuals."""
    t0 = time.time()
    with mp.workdps(cfg.digits):
        model = get_curve("49a1")
        af = alpha_fitted(model, cfg.direct_terms, cfg.digits)
        tab0 = l_series_closed_form(model, 12, cfg.digits, alpha=mpf(0))
        tabf = l_series_closed_form(model, 12, cfg.digits, alpha=af)
        resid0, residf = 0.0, 0.0
        direct_err = 0.0
        for h in range(1, 13):
            dv = d_direct(model, h, cfg.direct_terms)
            resid0 = max(resid0, abs(float(tab0.entries[h]) - dv.value))
            residf = max(residf, abs(float(tabf.entries[h]) - dv.value))
            direct_err = max(direct_err, dv.error_estimate)
    details = {"alpha_fitted": _str(af, 6),
               "max_residual_alpha_zero": repr(resid0),
               "max_residual_alpha_fitted": repr(residf),
               "max_direct_error_estimate": repr(direct_err),
               "gating": "report-only"}
    return CheckResult("12-n49-experiment", "N=49: fitted alpha and closed-vs-direct residuals",
                       True, details, time.time() - t0)


def verify_all(cfg: PrecisionConfig = None, labels=None) -> list[CheckResult]:
    """Run every acceptance check; `labels` filters the curve-indexed ones."""
    cfg = cfg or PrecisionConfig()
    sel = set(_labels_subset(labels))

    def want(*labs):
        return any(l in sel for l in labs)

    results = []
    if want("27a1"):
        results.append(check_newform_regression(cfg))
    if want("11a1"):
        results.append(check_s_lambda(cfg))
        results.append(check_zhat_11(cfg))
    if want("27a1", "32a1", "36a1"):
        results.append(check_zhat_cm(cfg))
        results.append(check_eta_derivative(cfg))
    if want("11a1"):
        results.append(check_f_infinity_11(cfg))
    if want("27a1"):
        results.append(check_f_infinity_27(cfg))
        results.append(check_f_infinity_27_adjudication(cfg))
    if want("11a1"):
        results.append(check_theorem_11(cfg))
    if want("27a1"):
        results.append(check_theorem_27(cfg))
    if want("11a1"):
        results.append(check_poincare(cfg))
    results.extend(check_properties(cfg, labels))
    if want("11a1", "27a1"):
        results.append(check_beta_vanishing(cfg))
    if want("49a1"):
        results.append(check_n49_experiment(cfg))
    return results
