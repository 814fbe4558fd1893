#!/usr/bin/env python3
"""Scan how faithfully the rescaled three-photon squeezing factor Q_1 copies
the single-photon atomic inversion as the mean photon number grows.

The rescaling uses the asymptotic frequency ratio 3N/2; the exact ratio at
photon number n is mu_1(n, 3), so the copy carries O(1/n_bar) time-base
errors. This scan documents where the Pearson and revival-alignment
thresholds used in the acceptance suite become attainable.
"""

import math

import numpy as np
from scipy.signal import hilbert

from jcmbinom import atomic_inversion, mean_photon, mu_exact, q_rescaled_series, sbs_amplitudes

CASES = [
    # (eta, M, epsilon, window t_max, revival search t_min)
    (0.1, 370, 0, 25.0, 5.0),
    (0.3, 100, 0, 25.0, 5.0),
    (0.3, 200, 0, 45.0, 12.0),
    (0.3, 370, 0, 60.0, 20.0),
    (0.6, 200, 0, 60.0, 20.0),
    (0.6, 200, 1, 30.0, 10.0),
]


def revival_argmax(grid, values, t_min, carrier_period):
    env = np.abs(hilbert(values - values.mean()))
    width = max(3, int(round(3.0 * carrier_period / (grid[1] - grid[0]))))
    env = np.convolve(env, np.ones(width) / width, mode="same")
    mask = grid >= t_min
    return float(grid[mask][np.argmax(env[mask])])


def main():
    print(f"{'eta':>4} {'M':>4} {'eps':>4} {'n_bar':>6} {'mu_1(n_bar)':>11} "
          f"{'pearson':>8} {'t_sz':>7} {'t_q':>7} {'shift%':>7}")
    for eta, M, eps, t_max, t_min in CASES:
        state = sbs_amplitudes(M, eta, eps)
        n_bar = mean_photon(sbs_amplitudes(M, eta, 0))
        grid = np.linspace(0.0, t_max, int(120 * t_max))
        sz = atomic_inversion(state, 1, grid)
        q = q_rescaled_series(state, grid, 1, eps, n_bar)
        pearson = float(np.corrcoef(q, sz)[0, 1])
        carrier = math.pi / math.sqrt(n_bar)
        t_sz = revival_argmax(grid, sz, t_min, carrier)
        t_q = revival_argmax(grid, q, t_min, carrier)
        shift = 100.0 * abs(t_q - t_sz) / t_sz
        mu = mu_exact(int(round(n_bar)), 3, 1)
        print(f"{eta:>4.1f} {M:>4} {eps!s:>4} {n_bar:>6.1f} {mu:>11.4f} "
              f"{pearson:>8.4f} {t_sz:>7.2f} {t_q:>7.2f} {shift:>7.2f}")


if __name__ == "__main__":
    main()
