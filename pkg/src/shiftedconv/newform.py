"""Fourier coefficients a_E(n) of the weight-2 newform and the Eichler integral."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .curves import EllipticCurveModel
from .series import FourierSeries


def _sieve_primes(n: int) -> list[int]:
    if n < 2:
        return []
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return [int(p) for p in np.nonzero(mask)[0]]


def _count_points_naive(model: EllipticCurveModel, p: int) -> int:
    """#E(F_p) by exhaustive enumeration of (x, y) pairs, plus the point at infinity."""
    a1, a2, a3, a4, a6 = (a % p for a in model.ainvs)
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lx = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lx * y - rhs) % p == 0:
                count += 1
    return count


def _count_points_char_sum(model: EllipticCurveModel, p: int) -> int:
    """#E(F_p) for odd p via the quadratic character of 4x^3 + b2 x^2 + 2b4 x + b6."""
    if p > 1_300_000:
        raise ValueError("prime too large for the single-reduction Horner kernel")
    b2, b4, b6 = model.b2 % p, model.b4 % p, model.b6 % p
    x = np.arange(p, dtype=np.int64)
    # (4x + b2) x + 2 b4 <= 4.1 p^2, times x stays below 2^63 for p <= 1.3e6
    f = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
    sq = np.zeros(p, dtype=bool)
    sq[x * x % p] = True
    counts = np.bincount(f, minlength=p)
    n_zero = int(counts[0])
    n_square = int(counts[sq].sum()) - (n_zero if sq[0] else 0)
    # chi sum = (+1) squares + (-1) nonsquares, zeros contribute 0
    chi_sum = 2 * n_square + n_zero - p
    return int(1 + p + chi_sum)


def _nonsingular_count(model: EllipticCurveModel, p: int) -> int:
    """#E^ns(F_p): nonsingular affine points of the reduction, plus infinity."""
    a1, a2, a3, a4, a6 = (a % p for a in model.ainvs)
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lx = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lx * y - rhs) % p != 0:
                continue
            dy = (2 * y + lx) % p
            dx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
            if dy == 0 and dx == 0:
                continue
            count += 1
    return count


def ap_point_count(model: EllipticCurveModel, p: int) -> int:
    """Trace of Frobenius a_p; for bad p the split/nonsplit/additive code in {1,-1,0}."""
    if model.conductor % p == 0:
        return p - _nonsingular_count(model, p)
    if p <= 3:
        ap = p + 1 - _count_points_naive(model, p)
    else:
        ap = p + 1 - _count_points_char_sum(model, p)
    if ap * ap > 4 * p:
        raise ArithmeticError(f"Hasse bound violated at p={p} for {model.label}")
    return ap


@lru_cache(maxsize=None)
def _an_table(model: EllipticCurveModel, n_max: int) -> tuple[int, ...]:
    """a(n) for 1 <= n <= n_max as exact integers, index n (index 0 unused)."""
    a = [0] * (n_max + 1)
    a[1] = 1
    # smallest-prime-factor sieve drives the multiplicative assembly
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in _sieve_primes(n_max):
        sel = spf[p::p] == 0
        spf[p::p][sel] = p
        ap = ap_point_count(model, p)
        good = model.conductor % p != 0
        # prime powers by the Hecke recursion (bad primes: a(p^k) = a(p)^k)
        pk = p
        prev, cur = 1, ap
        while pk <= n_max:
            a[pk] = cur
            pk *= p
            if good:
                prev, cur = cur, ap * cur - p * prev
            else:
                cur = cur * ap
    for n in range(2, n_max + 1):
        p = int(spf[n])
        pk = p
        m = n // p
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            a[n] = a[pk] * a[m]
    return tuple(a)


def an_coefficients(model: EllipticCurveModel, n_max: int) -> FourierSeries:
    """The newform q-expansion sum a(n) q^n, exact integer coefficients, O(q^{n_max+1})."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    table = _an_table(model, n_max)
    return FourierSeries({n: table[n] for n in range(1, n_max + 1) if table[n]}, n_max + 1)


def an_array(model: EllipticCurveModel, n_max: int) -> np.ndarray:
    """a(0..n_max) as int64 (a(0) = 0), for bulk numeric work."""
    return np.array(_an_table(model, n_max), dtype=np.int64)


def eichler_integral(f: FourierSeries) -> FourierSeries:
    """Term-by-term antiderivative: coefficient at q^n becomes a(n)/n."""
    if f.leading_exponent < 1:
        raise ValueError("Eichler integral needs leading exponent >= 1")
    out = {}
    for e, c in f.coeffs.items():
        out[e] = Fraction(c, e) if isinstance(c, int) else c / e
    return FourierSeries(out, f.truncation)
