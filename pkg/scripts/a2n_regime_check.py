#!/usr/bin/env python3
"""Measure how well the smooth-envelope approximation of <a^{2N}(T)> tracks
the exact moment, inside and outside its intended regime.

The in-regime tolerance frozen into the test suite came from this run.
"""

import numpy as np

from jcmbinom import a2n_approx, a2n_exact, sbs_amplitudes

CASES = [
    # (M, eta, k, N, t_max, note)
    (370, 0.3, 3, 1, 30.0, "intended regime (large M, large mean)"),
    (370, 0.1, 3, 1, 30.0, "small mean, still smooth"),
    (200, 0.6, 3, 1, 30.0, "large mean"),
    (370, 0.3, 3, 2, 30.0, "higher order"),
    (10, 0.9, 3, 1, 10.0, "negative control (small M, eta near 1)"),
]


def main():
    print(f"{'M':>4} {'eta':>5} {'k':>2} {'N':>2}   max |approx - Re exact| / max |Re exact|")
    for M, eta, k, N, t_max, note in CASES:
        state = sbs_amplitudes(M, eta, 0)
        tau = np.linspace(0.0, t_max, int(40 * t_max) + 1)
        exact = a2n_exact(state, k, tau, N).real
        approx = a2n_approx(state, k, tau, N)
        dev = np.max(np.abs(approx - exact)) / np.max(np.abs(exact))
        print(f"{M:>4} {eta:>5.2f} {k:>2} {N:>2}   {dev:.4f}   ({note})")


if __name__ == "__main__":
    main()
