import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
from mpmath import mp, mpf

from shiftedconv.poincare import (bp_coefficient, bq_coefficient, kloosterman,
                                  kloosterman_float)


@pytest.fixture(scope="module", autouse=True)
def _dps():
    mp.dps = 30
    yield


def test_trivial_modulus():
    assert kloosterman(5, 7, 1) == 1


def test_k113_enumeration():
    # d in {1,2}: e(2 pi i 2/3) + e(2 pi i 4/3) = 2 cos(2 pi/3) = -1
    assert abs(kloosterman(1, 1, 3) + 1) < mpf("1e-25")


def test_symmetry_and_realness_specific():
    assert abs(kloosterman(2, 5, 7) - kloosterman(5, 2, 7)) < mpf("1e-25")


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5),
       st.integers(min_value=1, max_value=50))
@settings(max_examples=60, deadline=None)
def test_kloosterman_symmetry_property(m, n, c):
    with mp.workdps(30):
        assert abs(kloosterman(m, n, c) - kloosterman(n, m, c)) < mpf("1e-20")


def test_realness_contract():
    with mp.workdps(30):
        for (m, n, c) in [(1, 1, 12), (2, 3, 25), (1, 4, 33), (3, 3, 49)]:
            v = kloosterman(m, n, c)
            assert abs(getattr(v, "imag", 0)) < mpf("1e-20")


def test_weil_magnitude_sanity():
    primes = [p for p in range(2, 200) if all(p % q for q in range(2, p))]
    for p in primes:
        assert abs(kloosterman(1, 1, p)) <= 2 * mp.sqrt(p) + mpf("1e-18"), p


def test_float_path_matches_mp_path():
    for (m, n, c) in [(1, 1, 11), (1, 3, 22), (-1, 2, 27), (2, 5, 36)]:
        with mp.workdps(25):
            precise = kloosterman(m, n, c)
        assert abs(kloosterman_float(m, n, c) - float(precise)) < 1e-9, (m, n, c)


def test_bp_empty_sum_is_delta():
    r = bp_coefficient(3, 2, 11, 3, 0)
    assert r.value == 1.0
    r2 = bp_coefficient(1, 2, 11, 4, 0)
    assert r2.value == (4 / 1) ** 0.5 * 0.0
    r3 = bp_coefficient(2, 4, 11, 2, 0)
    assert r3.value == 1.0


def test_bq_empty_sum_vanishes():
    assert bq_coefficient(1, 2, 11, 3, 0).value == 0.0


def test_bq_constant_term_stable_under_cmax_doubling():
    a = bq_coefficient(1, 2, 11, 0, 4000).value
    b = bq_coefficient(1, 2, 11, 0, 8000).value
    assert abs(a - b) < 1e-4
    # frozen from the doubling oracle at c_max 1e4/2e4: -0.19999...
    assert abs(a + 0.2) < 1e-3


def test_bq_matches_mock_form_coefficients():
    from shiftedconv.curves import get_curve
    from shiftedconv.mockform import zhat_plus
    mp.dps = 64
    z = zhat_plus(get_curve("11a1"), 4, 64)
    for n in (1, 2, 3):
        bq = bq_coefficient(1, 2, 11, n, 10_000)
        assert abs(bq.value - float(z[n])) < 1e-2, n


def test_bp_tail_estimate_reported():
    r = bp_coefficient(1, 2, 11, 2, 2000)
    assert r.tail_estimate > 0
    assert r.tail_estimate < 1e-2


def test_petersson_reconstruction_small():
    """(vol/pi) b_P(1,2,11;n) tracks a(n) under the 4-pi Bessel convention."""
    from shiftedconv.curves import get_curve
    from shiftedconv.lattice import build_lattice
    from shiftedconv.newform import an_array
    model = get_curve("11a1")
    lat = build_lattice(model, 40)
    volpi = float(lat.volume / mp.pi)
    a = an_array(model, 5)
    for n in range(1, 6):
        got = volpi * bp_coefficient(1, 2, 11, n, 4000, bessel_argument=4.0).value
        assert abs(got - a[n]) < 2e-2, n


def test_weight_validation():
    with pytest.raises(ValueError):
        bp_coefficient(1, 3, 11, 1, 10)
    with pytest.raises(ValueError):
        bq_coefficient(1, 2, 11, -1, 10)
    with pytest.raises(ValueError):
        kloosterman(1, 1, 0)
