"""Independent reference computations used by the tests.

Nothing here calls the closed forms under test.
"""

import math

import numpy as np
from scipy import integrate
from scipy.special import i0e


def ricean_snr_pdf(g, k, mean):
    """Density of the instantaneous SNR under Ricean fading with factor k."""
    if g < 0:
        return 0.0
    z = 2.0 * math.sqrt(k * (1.0 + k) * g / mean)
    # I0(z) = i0e(z) * exp(z), folded into the exponent
    return (1.0 + k) / mean * math.exp(-k - (1.0 + k) * g / mean + z) * i0e(z)


def ricean_bfsk_quadrature(k, mean):
    """Average of the noncoherent BFSK error 0.5 exp(-g/2) over the density."""

    def integrand(g):
        return 0.5 * math.exp(-g / 2.0) * ricean_snr_pdf(g, k, mean)

    # split at the density peak so quad sees the bulk
    peak = mean
    a, _ = integrate.quad(integrand, 0.0, peak, epsabs=1e-14, epsrel=1e-12, limit=500)
    b, _ = integrate.quad(integrand, peak, math.inf, epsabs=1e-14, epsrel=1e-12, limit=500)
    return a + b


def square_law_bfsk_monte_carlo(branches, mean_snr, trials, seed, chunk=1_000_000):
    """Noncoherent BFSK, square-law combining over independent Rayleigh branches.

    Returns (errors, trials). Noise per tone is CN(0, 1); the signal tone of
    branch l carries sqrt(mean_snr) * h_l with h_l ~ CN(0, 1).
    """
    rng = np.random.default_rng(seed)
    errors = 0
    done = 0
    amp = math.sqrt(mean_snr)

    def cn(shape):
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)

    while done < trials:
        n = min(chunk, trials - done)
        h = cn((n, branches))
        mark = amp * h + cn((n, branches))
        space = cn((n, branches))
        d_mark = np.sum(np.abs(mark) ** 2, axis=1)
        d_space = np.sum(np.abs(space) ** 2, axis=1)
        errors += int(np.count_nonzero(d_space > d_mark))
        done += n
    return errors, done


def coherent_rayleigh_bpsk(mean_snr):
    return 0.5 * (1.0 - math.sqrt(mean_snr / (1.0 + mean_snr)))
