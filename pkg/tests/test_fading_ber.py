import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmlink.errors import DomainError
from mmlink.fading_ber import (
    AWGN,
    MRC,
    DiversityConfig,
    Modulation,
    RayleighBFSK,
    RiceanBFSK,
    RiceanSpec,
    awgn_ber,
    forward_ber,
    mrc_diversity_ber,
    required_mean_snr,
    ricean_bfsk_ber,
)
from mmlink.rf_math import from_db, q_function
from oracles import ricean_bfsk_quadrature, square_law_bfsk_monte_carlo

GRID = [(k, g) for k in (0.0, 1.0, 5.0, 10.0) for g in (1.0, 10.0, 100.0)]


@pytest.mark.parametrize("k, g", GRID)
def test_ricean_matches_quadrature(k, g):
    assert abs(ricean_bfsk_ber(RiceanSpec(k, g)) - ricean_bfsk_quadrature(k, g)) < 1e-6


def test_ricean_examples():
    assert ricean_bfsk_ber(RiceanSpec(0.0, 0.0)) == 0.5
    assert ricean_bfsk_ber(RiceanSpec(0.0, 8.0)) == pytest.approx(0.1, abs=1e-15)
    assert ricean_bfsk_ber(RiceanSpec(0.0, 8.0)) == pytest.approx(ricean_bfsk_quadrature(0.0, 8.0), abs=1e-9)
    awgn_limit = 0.5 * math.exp(-5.0)
    assert ricean_bfsk_ber(RiceanSpec(1e6, 10.0)) == pytest.approx(awgn_limit, rel=1e-4)


@given(st.floats(0, 1e3))
def test_ricean_zero_snr_is_half(k):
    assert ricean_bfsk_ber(RiceanSpec(k, 0.0)) == 0.5


@given(st.floats(0, 50), st.floats(0.01, 1e3))
def test_ricean_monotone(k, g):
    assert ricean_bfsk_ber(RiceanSpec(k, g * 1.01)) < ricean_bfsk_ber(RiceanSpec(k, g))
    assert ricean_bfsk_ber(RiceanSpec(k + 0.5, g)) < ricean_bfsk_ber(RiceanSpec(k, g))


def test_ricean_rejects_negative():
    with pytest.raises(DomainError):
        RiceanSpec(-1.0, 1.0)


# -- diversity ------------------------------------------------------------------


def test_mrc_examples():
    assert mrc_diversity_ber(DiversityConfig(1, 2.0)) == 0.25
    assert mrc_diversity_ber(DiversityConfig(2, 2.0)) == 0.15625


@pytest.mark.parametrize("g", np.logspace(-3, 6, 37))
def test_mrc_single_branch_is_rayleigh_bfsk(g):
    assert mrc_diversity_ber(DiversityConfig(1, g)) == pytest.approx(ricean_bfsk_ber(RiceanSpec(0.0, g)), abs=1e-12)


@pytest.mark.parametrize("g", [0.1, 1.0, 10.0, 1e3])
def test_mrc_diversity_gain(g):
    values = [mrc_diversity_ber(DiversityConfig(L, g)) for L in range(1, 10)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("g", [1e3, 1e4])
def test_mrc_slope_two_per_decade(g):
    ratio = mrc_diversity_ber(DiversityConfig(2, g)) / mrc_diversity_ber(DiversityConfig(2, 10 * g))
    assert 100 / 1.3 <= ratio <= 100 * 1.3


def test_mrc_l8_uses_big_binomials():
    # brute-force sum with the binomial written out as a product
    g = 3.0
    mu = g / (g + 2)
    total = 0.0
    for k in range(8):
        c = math.prod(range(k + 1, 8 + k)) // math.factorial(7)
        total += c * (0.5 * (1 + mu)) ** k
    assert mrc_diversity_ber(DiversityConfig(8, g)) == pytest.approx((0.5 * (1 - mu)) ** 8 * total, rel=1e-12)


@pytest.mark.slow
def test_mrc_monte_carlo_two_branches():
    trials = 10_000_000
    errors, n = square_law_bfsk_monte_carlo(2, 2.0, trials, seed=20120611)
    p = 0.15625
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(errors / n - p) < 3 * sigma


def test_diversity_config_validation():
    with pytest.raises(DomainError):
        DiversityConfig(0, 1.0)
    with pytest.raises(DomainError):
        DiversityConfig(2, -1.0)


# -- AWGN theory ------------------------------------------------------------------


def test_awgn_examples():
    assert awgn_ber(Modulation.BPSK, 1.0) == pytest.approx(0.0786496035251, rel=1e-10)
    assert awgn_ber("QPSK", 1.0) == awgn_ber("BPSK", 1.0)
    assert awgn_ber("16-QAM", 10.0) == pytest.approx(0.75 * q_function(math.sqrt(8.0)), rel=1e-14)
    assert awgn_ber("QAM16", 10.0) == pytest.approx(1.754e-3, rel=1e-3)


def test_awgn_ordering_on_db_grid():
    for db in np.linspace(0, 30, 121):
        g = from_db(db)
        b64, b16, b4, b2 = (awgn_ber(m, g) for m in ("QAM64", "QAM16", "QPSK", "BPSK"))
        assert b64 >= b16 >= b4 == b2


def test_awgn_monotone():
    g = from_db(np.linspace(0, 20, 201))
    for m in Modulation:
        assert np.all(np.diff(awgn_ber(m, g)) < 0)


def test_awgn_rejects_unknown_modulation():
    with pytest.raises(DomainError):
        awgn_ber("8PSK", 1.0)


# -- inverse ------------------------------------------------------------------------


def test_required_snr_rayleigh_1e12():
    g = required_mean_snr(1e-12, RayleighBFSK())
    assert g == pytest.approx(1e12 - 2, rel=1e-8)
    assert 119.9 <= 10 * math.log10(g) <= 120.1


def test_required_snr_boundaries():
    assert required_mean_snr(0.5 - 1e-12, RayleighBFSK()) == pytest.approx(0.0, abs=1e-9)
    assert required_mean_snr(0.25, MRC(1)) == pytest.approx(2.0, rel=1e-8)


@pytest.mark.parametrize(
    "channel", [RayleighBFSK(), RiceanBFSK(5.0), MRC(3), AWGN(Modulation.BPSK), AWGN(Modulation.QAM64)]
)
def test_required_snr_inverse_consistency(channel):
    for t in np.logspace(-10, math.log10(0.4), 25):
        g = required_mean_snr(float(t), channel)
        assert forward_ber(channel, g) <= t
        if g > 0:
            assert forward_ber(channel, g * (1 - 1e-6)) > t


@pytest.mark.parametrize("t", [0.0, 0.5, 0.7, -1e-3])
def test_required_snr_rejects_target(t):
    with pytest.raises(DomainError):
        required_mean_snr(t, RayleighBFSK())
