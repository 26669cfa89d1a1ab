import pytest
from mpmath import mp, mpf, mpc

from shiftedconv.curves import get_curve, load_registry
from shiftedconv.lattice import (build_lattice, compute_periods, eisenstein_numbers,
                                 lattice_from_generators, quasi_periods, s_lambda,
                                 weierstrass_zeta)


def integration_period(model, dps):
    """Oracle: real period by direct numerical integration of dx/y.

    The substitution x = e1 + t^2 removes the endpoint singularity so tanh-sinh
    quadrature converges to full precision.
    """
    with mp.workdps(dps):
        g2q, g3q = model.short_invariants()
        g2 = mpf(g2q.numerator) / g2q.denominator
        g3 = mpf(g3q.numerator) / g3q.denominator
        roots = mp.polyroots([4, 0, -g2, -g3], extraprec=60)
        if model.discriminant > 0:
            e1 = max(r.real for r in roots)
        else:
            e1 = min(roots, key=lambda r: abs(r.imag)).real

        def integrand(t):
            x = e1 + t * t
            return 2 * t / mp.sqrt(4 * x ** 3 - g2 * x - g3)

        return 2 * mp.quad(integrand, [0, 1, mp.inf])


# frozen oracle values (integration + Carlson cross-check, 50 digits)
ORACLE_OMEGA1 = {
    "11a1": "1.2692093042795534216887946167545473052194922418306",
    "15a1": "1.4006030423326020231801808368097186046139673287334",
}


@pytest.mark.parametrize("label", sorted(ORACLE_OMEGA1))
def test_agm_periods_against_integration_oracle(label):
    model = get_curve(label)
    lat = compute_periods(model, 60)
    with mp.workdps(60):
        want = mpf(ORACLE_OMEGA1[label])
        live = integration_period(model, 110)
        # oracle self-consistency, then AGM vs oracle, both at 40+ digits
        assert abs(live.real - want) < mpf(10) ** -45
        # omega1 of the reduced basis generates the same lattice; the real period
        # is the positive real lattice generator
        cands = [abs(lat.omega1), abs(lat.omega2), abs(lat.omega1 + lat.omega2),
                 abs(lat.omega2 - lat.omega1), abs(2 * lat.omega1)]
        assert any(abs(c - want) < mpf(10) ** -40 for c in cands), label


def test_tau_orientation_and_volume():
    for m in load_registry():
        lat = build_lattice(m, 40)
        assert lat.tau.imag > 0
        with mp.workdps(50):
            assert abs(lat.volume - abs((mp.conj(lat.omega1) * lat.omega2).imag)) < mpf(10) ** -35
        assert lat.volume > 0


def test_legendre_relation_all_curves():
    for m in load_registry():
        lat = build_lattice(m, 64)
        with mp.workdps(80):
            resid = abs(lat.omega1 * lat.eta2 - lat.omega2 * lat.eta1 + 2 * mp.pi * mpc(0, 1))
        assert resid < mpf(10) ** -50, m.label


def test_square_lattice_classics():
    lat = lattice_from_generators(1, mpc(0, 1), 48)
    eta1, eta2 = quasi_periods(lat)
    with mp.workdps(58):
        assert abs(eta1 - mp.pi) < mpf(10) ** -45
        assert abs(s_lambda(lat)) < mpf(10) ** -45
        g4, g6 = eisenstein_numbers(lat, 6)
        assert abs(g6) < mpf(10) ** -45
        assert abs(g4) > mpf("0.1")


def test_weight_scaling_of_eisenstein_numbers():
    lat1 = lattice_from_generators(1, mpc(0, 1), 40)
    lat2 = lattice_from_generators(2, mpc(0, 2), 40)
    with mp.workdps(50):
        g4a = eisenstein_numbers(lat1, 4)[0]
        g4b = eisenstein_numbers(lat2, 4)[0]
        assert abs(g4b - g4a / 16) < mpf(10) ** -38


def test_g_recursion_oracle():
    """Classical recursion (2n+3)(n-2) c_n = 3 sum c_m c_{n-1-m} for c_n = (2n+1) G_{2n+2}."""
    lat = build_lattice(get_curve("11a1"), 64)
    with mp.workdps(80):
        gs = eisenstein_numbers(lat, 24)  # G_4 .. G_24
        c = {n: (2 * n + 1) * gs[n - 1] for n in range(1, 12)}
        for n in range(3, 11):
            lhs = (2 * n + 3) * (n - 2) * c[n]
            rhs = 3 * sum(c[m] * c[n - 1 - m] for m in range(1, n - 1))
            assert abs(lhs - rhs) < mpf(10) ** -30 * (1 + abs(lhs)), n


def test_g2_g3_reproduction_all_curves():
    for m in load_registry():
        lat = build_lattice(m, 40)
        g2q, g3q = m.short_invariants()
        with mp.workdps(50):
            g4, g6 = eisenstein_numbers(lat, 6)
            g2 = mpf(g2q.numerator) / g2q.denominator
            g3 = mpf(g3q.numerator) / g3q.denominator
            scale = max(abs(g2), abs(g3), mpf(1))
            assert abs(60 * g4 - g2) / scale < mpf(10) ** -20, m.label
            assert abs(140 * g6 - g3) / scale < mpf(10) ** -20, m.label


def test_s_lambda_reference_value():
    lat = build_lattice(get_curve("11a1"), 64)
    assert abs(lat.s_lambda.real - mpf("0.38124")) < mpf("5e-5")
    assert abs(lat.s_lambda.imag) < mpf(10) ** -50


def test_s_lambda_cm_vanishing_and_49():
    for label in ("27a1", "32a1", "36a1"):
        lat = build_lattice(get_curve(label), 48)
        assert abs(lat.s_lambda) < mpf(10) ** -40, label
    lat49 = build_lattice(get_curve("49a1"), 48)
    with mp.workdps(58):
        assert abs(lat49.s_lambda - mpf(1) / 4) < mpf(10) ** -40


def test_s_lambda_eisenstein_summation_oracle():
    """Regularized Eisenstein summation vs the quasi-period solve.

    The row-ordered (Eisenstein) value of the weight-2 lattice sum is
    (pi^2/3) E2(tau) / omega1^2; passing to the s -> 0 regularized value subtracts
    pi conj(omega1) / (vol omega1).  Both ingredients here come from the plain E2
    q-series, independent of the production path through the zeta Laurent series.
    """
    for label in ("27a1", "11a1"):
        lat = build_lattice(get_curve(label), 48)
        with mp.workdps(58):
            q = mp.expjpi(2 * lat.tau)
            e2 = 1 - 24 * mp.nsum(lambda n: n * q ** n / (1 - q ** n), [1, mp.inf])
            s_oracle = (mp.pi ** 2 / 3) * e2 / lat.omega1 ** 2 \
                - mp.pi * mp.conj(lat.omega1) / (lat.volume * lat.omega1)
            assert abs(s_oracle - lat.s_lambda) < mpf(10) ** -40, label


def test_stability_under_precision_doubling():
    m = get_curve("19a1")
    lat_a = build_lattice(m, 30)
    lat_b = build_lattice(m, 60)
    with mp.workdps(70):
        assert abs(lat_a.omega1 - lat_b.omega1) < mpf(10) ** -25
        assert abs(lat_a.s_lambda - lat_b.s_lambda) < mpf(10) ** -25


def test_zeta_duplication_consistency():
    """zeta evaluated through the duplication path agrees with the series path."""
    lat = build_lattice(get_curve("11a1"), 48)
    with mp.workdps(58):
        z = lat.omega1 * mpf("0.31")  # inside the series radius
        direct = weierstrass_zeta(lat, z)
        # force duplication: evaluate at 2z via formula and compare to series at 2z
        from shiftedconv.lattice import _zeta_series, _wp_and_derivative
        wp, wpd = _wp_and_derivative(lat, z)
        g4 = eisenstein_numbers(lat, 4)[0]
        wpdd = 6 * wp * wp - 30 * g4
        dup = 2 * direct + wpdd / (2 * wpd)
        ser = _zeta_series(lat, 2 * z)
        assert abs(dup - ser) < mpf(10) ** -40


def test_precondition_on_digits():
    with pytest.raises(ValueError):
        compute_periods(get_curve("11a1"), 10)


def test_quasi_periods_kmax_too_small_reports_tail():
    from shiftedconv.lattice import LatticeError
    lat = compute_periods(get_curve("14a1"), 40)
    with pytest.raises(LatticeError, match="tail"):
        quasi_periods(lat, k_max=20)
    eta1, eta2 = quasi_periods(lat, k_max=2000)
    assert eta1 is not None and eta2 is not None
