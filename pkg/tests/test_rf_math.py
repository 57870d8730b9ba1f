import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmlink.errors import DomainError
from mmlink.rf_math import SPEED_OF_LIGHT, RfCarrier, binomial, from_db, q_function, to_db, wavelength_m


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


@pytest.mark.parametrize("ratio, expected", [(1.0, 0.0), (1000.0, 30.0)])
def test_to_db_trivial(ratio, expected):
    assert to_db(ratio) == pytest.approx(expected, abs=1e-12)


def test_to_db_karachi_terrain_term():
    # 6 * 4 * 0.5 * 60 = 720, 28.57 to two decimals
    assert to_db(720.0) == pytest.approx(28.57, abs=0.005)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_to_db_rejects_non_positive(bad):
    with pytest.raises(DomainError):
        to_db(bad)


def test_from_db_examples():
    assert from_db(0.0) == 1.0
    assert from_db(-3.0103) == pytest.approx(0.5, rel=1e-5)
    # mpmath: 10**5.3 = 199526.231497
    assert from_db(53.0) == pytest.approx(199526.231497, rel=1e-11)


def test_db_round_trip_log_grid():
    x = np.logspace(-12, 12, 241)
    np.testing.assert_allclose(from_db(to_db(x)), x, rtol=1e-12)


@given(st.floats(min_value=1e-12, max_value=1e12))
def test_db_round_trip_property(x):
    assert from_db(to_db(x)) == pytest.approx(x, rel=1e-12)


def test_wavelengths():
    assert wavelength_m(60e9) == pytest.approx(4.9965e-3, rel=1e-4)
    # c = 3e8 rounding gives 0.33 cm and 3 m
    assert wavelength_m(100e9) == pytest.approx(2.998e-3, rel=1e-3)
    assert wavelength_m(100e6) == pytest.approx(2.998, rel=1e-3)
    assert wavelength_m(100e9) == pytest.approx(0.0033, rel=0.1)
    with pytest.raises(DomainError):
        wavelength_m(0.0)


@given(st.floats(min_value=1e3, max_value=1e13))
def test_carrier_invariants(f):
    c = RfCarrier(f)
    assert c.wavelength_m * c.frequency_hz == pytest.approx(SPEED_OF_LIGHT, rel=1e-9)
    assert c.wavenumber_per_m * c.wavelength_m == pytest.approx(2 * math.pi, rel=1e-12)


def test_carrier_rejects_non_positive():
    with pytest.raises(DomainError):
        RfCarrier(-1.0)


# values frozen from mpmath erfc at 30 digits
@pytest.mark.parametrize(
    "x, expected",
    [(0.0, 0.5), (1.4142, 0.0786515939942), (2.2414, 0.0125000882612), (math.sqrt(8), 0.00233886749052)],
)
def test_q_function_values(x, expected):
    assert q_function(x) == pytest.approx(expected, rel=1e-10)


@given(st.floats(min_value=-30, max_value=30))
def test_q_symmetry(x):
    assert q_function(-x) == pytest.approx(1.0 - q_function(x), abs=1e-15)


@given(st.floats(min_value=1e-6, max_value=35))
def test_q_chernoff_bound(x):
    q = q_function(x)
    assert 0.0 < q < 0.5 * math.exp(-x * x / 2)


def test_q_monotone():
    x = np.linspace(-10, 10, 2001)
    q = q_function(x)
    assert np.all(np.diff(q) <= 0)
    # below about -8 the tail rounds to exactly 1.0
    assert np.all(np.diff(q[x >= -7]) < 0)


def test_binomial_examples():
    assert binomial(0, 0) == 1
    assert binomial(3, 1) == 3
    assert binomial(15, 8) == pascal_row(15)[8] == 6435


def test_binomial_matches_pascal_to_64():
    for n in range(65):
        assert [binomial(n, k) for k in range(n + 1)] == pascal_row(n)


@given(st.integers(0, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_binomial_symmetry(nk):
    n, k = nk
    assert binomial(n, k) == binomial(n, n - k)


def test_binomial_rejects_k_above_n():
    with pytest.raises(DomainError):
        binomial(3, 4)
