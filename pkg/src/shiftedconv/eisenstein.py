"""Weight-2 quasimodular Eisenstein indicator basis: value 1 at one cusp, 0 at the rest.

Construction.  For a row vector v = (c1, c2) in (Z/N)^2, v != 0, let

    G2^v(z) = sum_{m = c1 (N)} sum_{n = c2 (N)} (m z + n)^{-2}

summed in Eisenstein order (inner n, outer m).  Its completion by -pi/(N^2 y) slashes
equivariantly: G2^v |_2 sigma = G2^{v sigma} for every sigma in SL2(Z), and G2^{-v} =
G2^v.  Since Gamma0(N) reduces to the upper-triangular subgroup mod N, it acts on the
vectors by permutation, so sums over Gamma0(N)-orbits span the full space of weight-2
quasimodular Eisenstein forms for Gamma0(N) and are invariant by construction.  The
value of G2^v at the cusp sigma(infinity) is the constant term of G2^{v sigma}:
pi^2 / (N sin(pi w2 / N))^2 when w1 = 0 mod N (else 0), with the w2 = 0 case giving
pi^2/3.  Indicators are solved from this (cusps x orbits) value matrix and re-verified
by a Richardson-extrapolated numerical limit up each cusp.

The textbook spanning set {E2(z)} u {E2(z) - d E2(dz)} is also provided; it cannot
separate same-denominator cusps at the non-squarefree levels, which is why the
indicator construction works with the vector family instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import mp, mpf, mpc

from .series import FourierSeries


@dataclass(frozen=True)
class Cusp:
    """Representative a/c in lowest terms; infinity is 1/0."""

    a: int
    c: int
    width: int

    @property
    def is_infinity(self) -> bool:
        return self.c == 0

    def __str__(self):
        return "oo" if self.c == 0 else f"{self.a}/{self.c}"


@dataclass(frozen=True)
class CuspSet:
    level: int
    cusps: tuple

    def __len__(self):
        return len(self.cusps)

    def __iter__(self):
        return iter(self.cusps)

    def __getitem__(self, i):
        return self.cusps[i]


def cusp_count(N: int) -> int:
    """sum over d | N of phi(gcd(d, N/d))."""
    total = 0
    for d in range(1, N + 1):
        if N % d == 0:
            g = gcd(d, N // d)
            total += sum(1 for a in range(1, g + 1) if gcd(a, g) == 1)
    return total


def enumerate_cusps(N: int) -> CuspSet:
    """Inequivalent cusp representatives of Gamma0(N), infinity first."""
    cusps = [Cusp(1, 0, 1)]
    for c in range(1, N):
        if N % c:
            continue
        g = gcd(c, N // c)
        width = N // gcd(c * c, N)
        for a0 in range(g):
            if gcd(a0, g) != 1 and g > 1:
                continue
            if g == 1 and a0 != 0:
                continue
            a = a0 if a0 else g
            while gcd(a, c) != 1:
                a += g
            cusps.append(Cusp(a % c if c > 1 else 0, c, width))
    cs = CuspSet(N, tuple(cusps))
    assert len(cs) == cusp_count(N), f"cusp enumeration mismatch at level {N}"
    return cs


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1, 0))
    g, (x, y) = _ext_gcd(b, a % b)
    return g, (y, x - (a // b) * y)


def _scaling_matrix(cusp: Cusp):
    """sigma in SL2(Z) with sigma(infinity) = cusp."""
    if cusp.is_infinity:
        return (1, 0, 0, 1)
    _, (x, y) = _ext_gcd(cusp.a, cusp.c)
    # a*x + c*y = 1  ->  det [[a, -y],[c, x]] = 1
    return (cusp.a, -y, cusp.c, x)


# -- vector Eisenstein family ----------------------------------------------


def _canon(v, N):
    c1, c2 = v[0] % N, v[1] % N
    return min((c1, c2), ((-c1) % N, (-c2) % N))


def vector_orbits(N: int):
    """Gamma0(N)-orbits on nonzero vectors of (Z/N)^2, up to v ~ -v."""
    units = [a for a in range(1, N) if gcd(a, N) == 1]
    inv = {a: pow(a, -1, N) for a in units}
    seen = {}
    orbits = []
    for c1 in range(N):
        for c2 in range(N):
            if c1 == 0 and c2 == 0:
                continue
            start = _canon((c1, c2), N)
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                v = frontier.pop()
                images = [_canon((v[0], v[0] + v[1]), N)]
                images.extend(_canon((v[0] * a, v[1] * inv[a]), N) for a in units)
                for w in images:
                    if w not in orbit:
                        orbit.add(w)
                        frontier.append(w)
            for w in orbit:
                seen[w] = len(orbits)
            orbits.append(sorted(orbit))
    return orbits


def _kappa(c2: int, N: int):
    """Constant term of G2^{(0, c2)}: the n-only lattice sum."""
    c2 %= N
    if c2 == 0:
        return mp.pi ** 2 / 3
    return (mp.pi / (N * mp.sin(mp.pi * mpf(c2) / N))) ** 2


def vector_value_at_cusp(v, sigma, N: int):
    """Exact-form value of the completed G2^v at the cusp sigma(infinity)."""
    a, b, c, d = sigma
    w1 = (v[0] * a + v[1] * c) % N
    w2 = (v[0] * b + v[1] * d) % N
    if w1 != 0:
        return mp.mpf(0)
    return _kappa(w2, N)


_ZETA_CACHE: dict = {}


def _zeta_table(N: int):
    """[e^{2 pi i k / N} for k in 0..N-1] at the current precision."""
    key = (N, mp.prec)
    if key not in _ZETA_CACHE:
        _ZETA_CACHE[key] = [mp.expjpi(mpf(2 * k) / N) for k in range(N)]
    return _ZETA_CACHE[key]


def _vector_qexp_array(v, N: int, top: int, acc: list, coeff) -> None:
    """Accumulate coeff * (nonconstant part of G2^v) into acc[rm] for rm < top.

    By the Lipschitz formula, G2^v = [c1=0] kappa(c2)
        - (4 pi^2/N^2) sum_{m>0, m=+-c1 (N)} sum_{r>=1} r zeta_N^{+-r c2} q^{rm/N}.
    """
    c1, c2 = v[0] % N, v[1] % N
    zeta = _zeta_table(N)
    pref = -4 * mp.pi ** 2 / N ** 2 * coeff
    for sign in (1, -1):
        m0 = (sign * c1) % N
        sc2 = (sign * c2) % N
        for m in range(m0 if m0 else N, top, N):
            for r in range(1, (top - 1) // m + 1):
                acc[r * m] += pref * r * zeta[(r * sc2) % N]


def _vector_qexp_terms(v, N: int, n_max: int):
    """Nonconstant q-expansion of G2^v: {exponent (Fraction) -> mpc coefficient}."""
    top = N * (n_max + 1)
    acc = [mp.mpc(0)] * top
    _vector_qexp_array(v, N, top, acc, mpf(1))
    return {Fraction(k, N): c for k, c in enumerate(acc) if c != 0}


def vector_eval(v, N: int, z, tol_digits: int, qpow: dict = None):
    """Numerical value of the completed G2^v at a point z in the upper half-plane.

    `qpow` optionally shares e^{2 pi i m z / N} powers between calls at the same z.
    """
    c1, c2 = v[0] % N, v[1] % N
    if qpow is None:
        qpow = {}
    if 1 not in qpow:
        qpow[1] = mp.expjpi(2 * z / N)
    q1n = qpow[1]
    tol = mpf(10) ** (-tol_digits)
    total = mp.mpc(0)
    if c1 == 0:
        total += _kappa(c2, N)
    zeta = _zeta_table(N)
    pref = -4 * mp.pi ** 2 / N ** 2
    for sign in (1, -1):
        m0 = (sign * c1) % N
        sc2 = (sign * c2) % N
        m = m0 if m0 else N
        while True:
            if m not in qpow:
                qpow[m] = q1n ** m
            qm = qpow[m]
            if abs(qm) * m * 4 < tol * (1 - abs(q1n) ** N):
                break
            r = 1
            qrm = qm
            while abs(qrm) * r * 4 > tol:
                total += pref * r * zeta[(r * sc2) % N] * qrm
                r += 1
                qrm *= qm
            m += N
    return total - mp.pi / (N * N * z.imag)


class EisensteinBasis:
    """Vector-orbit data and cusp indicators for one level."""

    def __init__(self, N: int):
        self.level = N
        self.cusps = enumerate_cusps(N)
        self.orbits = vector_orbits(N)
        self.build_dps = mp.dps + 25
        with mp.workdps(self.build_dps):
            self.values = mp.matrix(len(self.cusps), len(self.orbits))
            for j, cusp in enumerate(self.cusps):
                sigma = _scaling_matrix(cusp)
                for i, orbit in enumerate(self.orbits):
                    self.values[j, i] = mp.fsum(
                        vector_value_at_cusp(v, sigma, N) for v in orbit).real
        self._indicators = None

    def indicator_combos(self):
        """Per cusp: {orbit index -> coefficient} solving the delta value conditions."""
        if self._indicators is None:
            with mp.workdps(mp.dps + 25):
                sols = _solve_rect_mp(self.values, len(self.cusps))
            self._indicators = [
                {i: x for i, x in enumerate(col) if abs(x) > mpf(10) ** (-mp.dps)}
                for col in sols]
        return self._indicators

    def combo_qexp(self, combo: dict, n_max: int) -> FourierSeries:
        """q-expansion of sum over orbits; fractional exponents must cancel."""
        N = self.level
        with mp.workdps(mp.dps + 15):
            tol = mpf(10) ** (-(mp.dps - 25))
            top = N * (n_max + 1)
            acc = [mp.mpc(0)] * top
            const = mp.mpc(0)
            for i, coeff in combo.items():
                for v in self.orbits[i]:
                    if v[0] % N == 0:
                        const += coeff * _kappa(v[1], N)
                    _vector_qexp_array(v, N, top, acc, coeff)
            scale = max(max(abs(x) for x in acc), abs(const), mpf(1))
            out = {0: const}
            for k, x in enumerate(acc):
                if k == 0 or x == 0:
                    continue
                if k % N == 0:
                    out[k // N] = out.get(k // N, 0) + x
                elif abs(x) > tol * scale:
                    raise ArithmeticError(
                        f"level {N}: non-integer exponent {Fraction(k, N)} survived "
                        f"({abs(x)} vs scale {scale}); combination not invariant")
            clean = {}
            for e, x in out.items():
                if abs(x.imag) <= tol * scale:
                    x = x.real
                clean[e] = x
        return FourierSeries(clean, n_max + 1)

    def cusp_constant_numeric(self, combo: dict, cusp: Cusp, digits: int = None):
        """Richardson-extrapolated limit of the slashed combination up the cusp.

        The completion decays like 1/Y exactly, so one extrapolation step on a
        geometric ladder leaves only exponentially small error; a third rung
        guards against ladder misconfiguration.
        """
        digits = digits or mp.dps
        N = self.level
        sigma = _scaling_matrix(cusp)
        a, b, c, d = sigma
        with mp.workdps(digits + 10):
            y0 = mpf(N) * (digits * 2.303 / 6.283 + 4)
            vals = []
            for k in (1, 2, 4):
                z = mpc(0, y0 * k)
                qpow = {}
                tot = mp.mpc(0)
                for i, coeff in combo.items():
                    for v in self.orbits[i]:
                        w = ((v[0] * a + v[1] * c) % N, (v[0] * b + v[1] * d) % N)
                        tot += coeff * vector_eval(w, N, z, digits + 8, qpow)
                vals.append(tot)
            r1 = 2 * vals[1] - vals[0]
            r2 = 2 * vals[2] - vals[1]
            if abs(r2 - r1) > mpf(10) ** (-(digits - 8)) * (1 + abs(r2)):
                raise ArithmeticError(
                    f"cusp-limit extrapolation disagreement at {cusp}: {abs(r2 - r1)}")
            return r2


def _solve_rect_mp(A, n_rhs: int):
    """Solutions x of A x = e_j for j < n_rhs, via Gauss-Jordan with column pivoting.

    A is an mpmath matrix with at least as many columns as rows; free columns get
    zero.  Raises on rank deficiency.
    """
    nr, nc = A.rows, A.cols
    m = mp.matrix(nr, nc + n_rhs)
    m[:, :nc] = A.copy()
    for j in range(n_rhs):
        m[j, nc + j] = 1
    scale = max(abs(A[i, j]) for i in range(nr) for j in range(nc))
    pivots = []
    row = 0
    for col in range(nc):
        piv, best = None, scale * mpf(10) ** (-(mp.dps // 2))
        for r in range(row, nr):
            if abs(m[r, col]) > best:
                piv, best = r, abs(m[r, col])
        if piv is None:
            continue
        m[row, :], m[piv, :] = m[piv, :], m[row, :]
        m[row, :] = m[row, :] / m[row, col]
        for r in range(nr):
            if r != row:
                f = m[r, col]
                if f:
                    m[r, :] = m[r, :] - f * m[row, :]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    if row < nr:
        raise ArithmeticError("cusp-value matrix has deficient rank")
    sols = []
    for j in range(n_rhs):
        x = [mpf(0)] * nc
        for r, col in enumerate(pivots):
            x[col] = m[r, nc + j]
        sols.append(x)
    return sols


_BASIS_CACHE: dict = {}


def basis_for_level(N: int) -> EisensteinBasis:
    cached = _BASIS_CACHE.get(N)
    if cached is None or cached.build_dps < mp.dps + 25:
        _BASIS_CACHE[N] = EisensteinBasis(N)
    return _BASIS_CACHE[N]


def indicator_basis(N: int, n_max: int) -> dict:
    """Map cusp -> q-expansion of the indicator form F at that cusp."""
    eb = basis_for_level(N)
    combos = eb.indicator_combos()
    return {cusp: eb.combo_qexp(combo, n_max)
            for cusp, combo in zip(eb.cusps, combos)}


_INFTY_CACHE: dict = {}


def infinity_indicator(N: int, n_max: int) -> FourierSeries:
    """F^infinity_{N,2}: 1 at the infinite cusp, 0 at all other cusps."""
    key = (N, n_max, mp.dps)
    if key not in _INFTY_CACHE:
        eb = basis_for_level(N)
        combo = eb.indicator_combos()[0]
        _INFTY_CACHE[key] = eb.combo_qexp(combo, n_max)
    return _INFTY_CACHE[key]


# -- the textbook raw spanning set -----------------------------------------


@lru_cache(maxsize=4096)
def _sigma1(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def e2_series(d: int, n_max: int) -> FourierSeries:
    """E2(d z) = 1 - 24 sum sigma_1(n) q^{dn}, exact coefficients, O(q^{n_max+1})."""
    coeffs = {0: 1}
    for n in range(1, n_max // d + 1):
        coeffs[d * n] = -24 * _sigma1(n)
    return FourierSeries(coeffs, n_max + 1)


@dataclass
class RawForm:
    """A spanning form: E2(z) itself or E2(z) - d E2(dz), with its V-weights."""

    name: str
    weights: dict          # {d: coefficient} meaning sum coeff * E2(d z)
    qexp: FourierSeries


def raw_basis(N: int, n_max: int):
    """{E2(z)} u {E2(z) - d E2(dz) : d | N, d > 1} with q-expansions."""
    rows = [RawForm("E2", {1: Fraction(1)}, e2_series(1, n_max))]
    for d in range(2, N + 1):
        if N % d == 0:
            rows.append(RawForm(
                f"E2 - {d} E2({d}z)",
                {1: Fraction(1), d: Fraction(-d)},
                e2_series(1, n_max) - d * e2_series(d, n_max)))
    return rows


def _e2_star_value(w):
    """E2*(w) = 1 - 24 sum sigma_1(n) e^{2 pi i n w} - 3/(pi Im w)."""
    q = mp.expjpi(2 * w)
    tol = mpf(10) ** (-(mp.dps + 3))
    total = mp.mpc(0)
    qn = q
    n = 1
    while abs(qn) * (n * n) > tol and n < 100000:
        total += _sigma1(n) * qn
        qn *= q
        n += 1
    return 1 - 24 * total - 3 / (mp.pi * w.imag)


def _hnf_triple(m11: int, m12: int, m21: int, m22: int):
    """(A,B,D) with [[m11,m12],[m21,m22]] = gamma [[A,B],[0,D]], gamma in SL2(Z)."""
    g = gcd(m11, m21)
    r, s = -m21 // g, m11 // g
    _, (u, v) = _ext_gcd(s, r)          # u s + v r = 1
    p, q = u, -v
    a = p * m11 + q * m21
    b = p * m12 + q * m22
    d = r * m12 + s * m22
    if a < 0:
        a, b, d = -a, -b, -d
    b %= d
    return a, b, d


def cusp_constant(weights: dict, cusp: Cusp, digits: int = None):
    """Numerical limit of a completed E2-combination slashed to a cusp.

    `weights` maps d -> coefficient for sum coeff * E2*(d z).  Each E2*(d z) slashed
    by the cusp's scaling matrix is an exact rescaling of E2* at a transported point
    (column Hermite reduction), evaluated up a Y-ladder and Richardson-extrapolated.
    """
    digits = digits or mp.dps
    sigma = _scaling_matrix(cusp)
    a, b, c, dd = sigma
    with mp.workdps(digits + 10):
        dmax = max(weights)
        y0 = mpf(dmax) * (digits * 2.303 / 6.283 + 4)
        vals = []
        for k in (1, 2, 4):
            y = y0 * k
            tot = mp.mpc(0)
            for d, coeff in weights.items():
                A2, B2, D2 = _hnf_triple(d * a, d * b, c, dd)
                cf = mpf(coeff.numerator) / coeff.denominator if isinstance(coeff, Fraction) else coeff
                # (E2* o (d .)) |_2 sigma = D2^{-2} E2*((A2 z + B2)/D2) with A2 D2 = d
                tot += cf * _e2_star_value((mpc(B2, A2 * y)) / D2) / (D2 * D2)
            vals.append(tot)
        r1 = 2 * vals[1] - vals[0]
        r2 = 2 * vals[2] - vals[1]
        if abs(r2 - r1) > mpf(10) ** (-(digits - 8)) * (1 + abs(r2)):
            raise ArithmeticError(f"cusp-limit extrapolation disagreement at {cusp}")
        return r2
