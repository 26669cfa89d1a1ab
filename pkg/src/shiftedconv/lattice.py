"""Period lattices: AGM periods, Eisenstein numbers, quasi-periods, and S(Lambda)."""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpf, mpc

from .curves import EllipticCurveModel


class LatticeError(ArithmeticError):
    """Numerical failure while constructing lattice data."""


@dataclass
class Lattice:
    """Generators with Im(omega2/omega1) > 0, reduced so omega1 is a shortest vector."""

    omega1: mpc
    omega2: mpc
    tau: mpc
    volume: mpf
    eta1: mpc = None
    eta2: mpc = None
    s_lambda: mpc = None
    precision_digits: int = 0
    _g_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def lambda_min(self):
        return abs(self.omega1)


def _reduce_basis(omega1, omega2):
    """Gauss-reduce so that |Re tau| <= 1/2 and |tau| >= 1 (then omega1 is shortest)."""
    for _ in range(200):
        tau = omega2 / omega1
        m = mp.nint(tau.real)
        if m != 0:
            omega2 = omega2 - int(m) * omega1
            tau = omega2 / omega1
        if abs(tau) < 1 - mpf(10) ** (-mp.dps + 8):
            omega1, omega2 = omega2, -omega1
        else:
            break
    else:
        raise LatticeError("basis reduction did not terminate")
    if (omega2 / omega1).imag <= 0:
        raise LatticeError("orientation lost during reduction")
    return omega1, omega2


def compute_periods(model: EllipticCurveModel, precision_digits: int) -> Lattice:
    """Period lattice of the invariant differential, by the AGM.

    Discriminant > 0: rectangular lattice from the three real 2-division values.
    Discriminant < 0: one real 2-division value; the complex-conjugate pair enters
    through A = |e1 - e2|.  The result is validated downstream by reproducing g2, g3.
    """
    if precision_digits < 30:
        raise ValueError("precision_digits must be >= 30")
    g2q, g3q = model.short_invariants()
    with mp.workdps(precision_digits + 20):
        g2 = mpf(g2q.numerator) / g2q.denominator
        g3 = mpf(g3q.numerator) / g3q.denominator
        roots = mp.polyroots([4, 0, -g2, -g3], extraprec=60)
        if model.discriminant > 0:
            es = sorted((r.real for r in roots), reverse=True)
            e1, e2, e3 = es
            omega1 = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
            omega2 = mp.pi * mpc(0, 1) / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
        else:
            e1 = min(roots, key=lambda r: abs(r.imag)).real
            a = mp.sqrt(3 * e1 * e1 - g2 / 4)
            omega1 = 2 * mp.pi / mp.agm(2 * mp.sqrt(a), mp.sqrt(2 * a + 3 * e1))
            omega2 = omega1 / 2 + mp.pi * mpc(0, 1) / mp.agm(2 * mp.sqrt(a), mp.sqrt(2 * a - 3 * e1))
        omega1, omega2 = _reduce_basis(mpc(omega1), mpc(omega2))
        tau = omega2 / omega1
        volume = abs((mp.conj(omega1) * omega2).imag)
        lat = Lattice(omega1, omega2, tau, volume, precision_digits=precision_digits)
        # reproducing the short Weierstrass invariants certifies the AGM branch
        g4, g6 = eisenstein_numbers(lat, 6)
        err = max(abs(60 * g4 - g2), abs(140 * g6 - g3)) / max(abs(g2), abs(g3), mpf(1))
        if err > mpf(10) ** (-(precision_digits + 5)):
            raise LatticeError(f"{model.label}: lattice fails to reproduce g2/g3 (rel err {err})")
    return lat


def eisenstein_numbers(lat: Lattice, k_max: int) -> list:
    """[G_4(L), G_6(L), ..., G_{k_max}(L)] via the weight-2k q-series at tau."""
    if k_max < 4:
        return []
    if k_max % 2:
        raise ValueError("k_max must be even")
    cached = lat._g_cache
    need = [w for w in range(4, k_max + 1, 2) if w not in cached]
    if need:
        with mp.workdps(mp.dps + 10):
            _fill_g_cache(lat, max(need))
    return [cached[w] for w in range(4, k_max + 1, 2)]


def _series_horizon(w: int, log_qinv: float, digits: int) -> int:
    """First n past the peak where n^(w-1) |q|^n has dropped by 10^-(digits)."""
    import math
    peak = max(1, int((w - 1) / log_qinv))
    peak_log = (w - 1) * math.log(peak) - log_qinv * peak
    target = peak_log - digits * math.log(10)
    n = peak
    while (w - 1) * math.log(n + 1) - log_qinv * (n + 1) > target:
        n += 1 + n // 8
    return n + 8


def _fill_g_cache(lat: Lattice, w_max: int) -> None:
    q = mp.expjpi(2 * lat.tau)
    log_qinv = -mp.log(abs(q))
    tol = mpf(10) ** (-(mp.dps + 5))
    n_cap = _series_horizon(w_max, float(log_qinv), mp.dps + 10)
    divs = [[] for _ in range(n_cap + 1)]
    for d in range(1, n_cap + 1):
        for m in range(d, n_cap + 1, d):
            divs[m].append(d)
    pow_cache = [mpf(d) ** 3 for d in range(n_cap + 1)]  # d^(w-1) maintained incrementally
    qn = [q ** n for n in range(n_cap + 1)]
    inv_o2 = 1 / (lat.omega1 * lat.omega1)
    for w in range(4, w_max + 1, 2):
        if w > 4:
            for d in range(1, n_cap + 1):
                pow_cache[d] *= d * d
        if w in lat._g_cache:
            continue
        # G_w(tau) = 2 zeta(w) + 2 (2 pi i)^w / (w-1)! * sum sigma_{w-1}(n) q^n
        pref = 2 * (-1) ** (w // 2) * (2 * mp.pi) ** w / mp.factorial(w - 1)
        total = mp.mpc(0)
        peak = int((w - 1) / log_qinv) + 1
        biggest = mpf(0)
        for n in range(1, n_cap + 1):
            sig = mp.fsum(pow_cache[d] for d in divs[n])
            term = sig * qn[n]
            total += term
            biggest = max(biggest, abs(term))
            if n > peak and abs(term) < tol * max(1, biggest):
                break
        else:
            raise LatticeError(f"q-series for G_{w} did not converge within {n_cap} terms")
        g_tau = 2 * mp.zeta(w) + pref * total
        lat._g_cache[w] = g_tau * inv_o2 ** (w // 2)


def _zeta_series(lat: Lattice, z, radius_ratio=mpf(0.72)):
    """Weierstrass zeta via its Laurent expansion; |z| must be within the safe radius."""
    lam = lat.lambda_min
    r = abs(z) / lam
    if r > radius_ratio:
        raise LatticeError("point outside the zeta series' safe radius")
    w_needed = int((mp.dps + 8) * mp.log(10) / mp.log(1 / r)) + 6 if r > 0 else 4
    w_needed = max(4, w_needed + w_needed % 2)
    gs = eisenstein_numbers(lat, w_needed)
    acc = 1 / z
    zp = z ** 3
    z2 = z * z
    for g in gs:  # g = G_{2k+2}, term -G_{2k+2} z^{2k+1}
        acc -= g * zp
        zp *= z2
    return acc


def _wp_and_derivative(lat: Lattice, z):
    """(wp(z), wp'(z)) by the same Laurent data; same radius constraint as the zeta series."""
    lam = lat.lambda_min
    r = abs(z) / lam
    if r > mpf(0.72):
        raise LatticeError("point outside the wp series' safe radius")
    w_needed = int((mp.dps + 8) * mp.log(10) / mp.log(1 / r)) + 6
    w_needed = max(4, w_needed + w_needed % 2)
    gs = eisenstein_numbers(lat, w_needed)
    wp = 1 / (z * z)
    wpd = -2 / (z * z * z)
    zp = z * z
    z2 = z * z
    k = 1
    for g in gs:
        wp += (2 * k + 1) * g * zp
        wpd += (2 * k + 1) * (2 * k) * g * zp / z
        zp *= z2
        k += 1
    return wp, wpd


def weierstrass_zeta(lat: Lattice, z):
    """zeta(Lambda; z) for any z, by duplication when outside the series radius.

    zeta(2u) = 2 zeta(u) + wp''(u) / (2 wp'(u)), with wp'' = 6 wp^2 - g2/2.
    """
    if abs(z) / lat.lambda_min <= mpf(0.72):
        return _zeta_series(lat, z)
    u = z / 2
    zu = weierstrass_zeta(lat, u)
    wp, wpd = _wp_and_derivative_any(lat, u)
    g2 = 60 * eisenstein_numbers(lat, 4)[0]
    wpdd = 6 * wp * wp - g2 / 2
    if abs(wpd) < mpf(10) ** (-mp.dps // 2):
        raise LatticeError("duplication hit a critical point of wp")
    return 2 * zu + wpdd / (2 * wpd)


def _wp_and_derivative_any(lat: Lattice, z):
    """(wp, wp') at any z: Laurent series inside the safe radius, duplication outside."""
    if abs(z) / lat.lambda_min <= mpf(0.72):
        return _wp_and_derivative(lat, z)
    u = z / 2
    wp, wpd = _wp_and_derivative_any(lat, u)
    g2 = 60 * eisenstein_numbers(lat, 4)[0]
    if abs(wpd) < mpf(10) ** (-mp.dps // 2):
        raise LatticeError("duplication hit a critical point of wp")
    wpdd = 6 * wp * wp - g2 / 2
    lam = wpdd / (2 * wpd)
    # lam' = (wp''' wp' - wp''^2) / (2 wp'^2) with wp''' = 12 wp wp'
    lamd = (12 * wp * wpd * wpd - wpdd * wpdd) / (2 * wpd * wpd)
    return lam * lam - 2 * wp, lam * lamd - wpd


def quasi_periods(lat: Lattice, k_max: int = None) -> tuple:
    """eta_i = 2 zeta(omega_i / 2), with the Legendre relation enforced as a check.

    The zeta series depth is chosen adaptively; passing `k_max` caps the available
    Eisenstein weights and raises with a tail estimate when that is not enough.
    """
    with mp.workdps(lat.precision_digits + 15):
        if k_max is not None:
            r = mpf(0.72)
            needed = int((mp.dps + 8) * mp.log(10) / mp.log(1 / r)) + 6
            if k_max < needed:
                tail = r ** k_max
                raise LatticeError(
                    f"k_max={k_max} leaves a zeta-series tail of order {mp.nstr(tail, 3)}; "
                    f"need weights through {needed}")
        eta1 = 2 * weierstrass_zeta(lat, lat.omega1 / 2)
        eta2 = 2 * weierstrass_zeta(lat, lat.omega2 / 2)
        resid = abs(lat.omega1 * eta2 - lat.omega2 * eta1 + 2 * mp.pi * mpc(0, 1))
        if resid > mpf(10) ** (-(lat.precision_digits - 10)):
            raise LatticeError(f"Legendre relation residual too large: {resid}")
    lat.eta1, lat.eta2 = eta1, eta2
    return eta1, eta2


def s_lambda(lat: Lattice):
    """S(Lambda) from eta_1 = S omega_1 + (pi/vol) conj(omega_1); cross-checked on omega_2."""
    if lat.eta1 is None:
        quasi_periods(lat)
    with mp.workdps(lat.precision_digits + 15):
        c = mp.pi / lat.volume
        s = (lat.eta1 - c * mp.conj(lat.omega1)) / lat.omega1
        resid = abs(lat.eta2 - (s * lat.omega2 + c * mp.conj(lat.omega2)))
        if resid > mpf(10) ** (-(lat.precision_digits - 12)) * (1 + abs(lat.eta2)):
            raise LatticeError(f"quasi-period relations inconsistent: {resid}")
    lat.s_lambda = s
    return s


_LATTICE_CACHE: dict = {}


def build_lattice(model: EllipticCurveModel, precision_digits: int) -> Lattice:
    """Fully populated Lattice (periods, volume, quasi-periods, S), cached."""
    key = (model.label, precision_digits)
    if key not in _LATTICE_CACHE:
        lat = compute_periods(model, precision_digits)
        quasi_periods(lat)
        s_lambda(lat)
        _LATTICE_CACHE[key] = lat
    return _LATTICE_CACHE[key]


def lattice_from_generators(omega1, omega2, precision_digits: int) -> Lattice:
    """Lattice from explicit generators (test scaffolding; no curve attached)."""
    with mp.workdps(precision_digits + 20):
        o1, o2 = mpc(omega1), mpc(omega2)
        if (o2 / o1).imag < 0:
            o1, o2 = o2, o1
        o1, o2 = _reduce_basis(o1, o2)
        tau = o2 / o1
        volume = abs((mp.conj(o1) * o2).imag)
    return Lattice(o1, o2, tau, volume, precision_digits=precision_digits)
