"""Nth-order quadrature squeezing factors and their rescaled variants.

The factors attached to the quadratures (a^N + adag^N)/2 and
(a^N - adag^N)/2i are

    F_N(T) = <adag^N a^N> + Re <a^{2N}> - 2 (Re <a^N>)^2
    S_N(T) = <adag^N a^N> - Re <a^{2N}> - 2 (Im <a^N>)^2

Two rescalings turn their traces into copies of the single-photon atomic
inversion: ``w_rescaled`` (odd order, mod-4 states, k = 1 exact route) and
``q_rescaled`` (three-photon coupling, time-dilated route).
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import MomentTable, rabi_frequency
from .errors import ParameterError
from .numerics import CompensatedSum, falling_factorial
from .states import FockAmplitudes, canonical_epsilon, photon_distribution

__all__ = [
    "SqueezeRecord",
    "SqueezeSeries",
    "squeezing_factors",
    "squeezing_series",
    "initial_diagonal_moment",
    "w_rescaled",
    "w_rescaled_series",
    "oebs_odd_factor_explicit",
    "q_rescaled",
    "q_rescaled_series",
    "mu_exact",
    "a2n_exact",
    "a2n_approx",
]


@dataclass(frozen=True)
class SqueezeRecord:
    """Squeezing factors and their contributing moments at one scaled time."""

    T: float
    N: int
    F: float
    S: float
    m_aN: complex
    m_a2N: complex
    m_adNaN: float


@dataclass(frozen=True)
class SqueezeSeries:
    """Per-grid-point squeezing factors with the moments that built them."""

    grid: np.ndarray
    N: int
    F: np.ndarray
    S: np.ndarray
    m_aN: np.ndarray
    m_a2N: np.ndarray
    m_adNaN: np.ndarray

    def record(self, i) -> SqueezeRecord:
        return SqueezeRecord(
            T=float(self.grid[i]),
            N=self.N,
            F=float(self.F[i]),
            S=float(self.S[i]),
            m_aN=complex(self.m_aN[i]),
            m_a2N=complex(self.m_a2N[i]),
            m_adNaN=float(self.m_adNaN[i]),
        )


def squeezing_series(state: FockAmplitudes, k, grid, N) -> SqueezeSeries:
    """Evaluate F_N, S_N and the three contributing moments over a grid."""
    if N < 1:
        raise ParameterError(f"squeezing order N must be a positive integer, got {N}")
    table = MomentTable(state, k, grid)
    m_aN = table.moment_series(N, 0)
    m_a2N = table.moment_series(2 * N, 0)
    m_adNaN = table.moment_series(N, N).real
    F = m_adNaN + m_a2N.real - 2.0 * m_aN.real**2
    S = m_adNaN - m_a2N.real - 2.0 * m_aN.imag**2
    return SqueezeSeries(table.grid, int(N), F, S, m_aN, m_a2N, m_adNaN)


def squeezing_factors(state: FockAmplitudes, k, T, N) -> SqueezeRecord:
    """Squeezing factors at a single scaled time, with stored constituents."""
    return squeezing_series(state, k, [T], N).record(0)


def initial_diagonal_moment(state: FockAmplitudes, m) -> float:
    """<adag^m a^m(0)> = sum_n P(n) n!/(n-m)! by direct summation."""
    P = photon_distribution(state)
    return math.fsum(p * falling_factorial(n, m) for n, p in enumerate(P) if p != 0.0)


def _check_w_pair(oebs_state: FockAmplitudes, bs_state: FockAmplitudes):
    if oebs_state.meta.get("kind") != "oebs":
        raise ParameterError("the first state must come from oebs_amplitudes")
    if bs_state.meta.get("kind") != "sbs" or bs_state.meta.get("epsilon") != 0:
        raise ParameterError("the reference state must be a plain (epsilon = 0) binomial state")
    if (oebs_state.meta.get("M"), oebs_state.meta.get("eta")) != (
        bs_state.meta.get("M"),
        bs_state.meta.get("eta"),
    ):
        raise ParameterError(
            f"mismatched (M, eta): orthogonal-even state has "
            f"({oebs_state.meta.get('M')}, {oebs_state.meta.get('eta')}), "
            f"reference has ({bs_state.meta.get('M')}, {bs_state.meta.get('eta')})"
        )


def w_rescaled_series(oebs_state: FockAmplitudes, bs_state: FockAmplitudes, grid, N) -> np.ndarray:
    """Rescaled odd-order factor of the mod-4 state; k = 1 throughout.

    W_N(T) = [2 <adag^{2N+1} a^{2N+1}(0)> + (2N+1) <adag^{2N} a^{2N}(0)>
              - 2 F_{2N+1}(T)] / [(2N+1) <adag^{2N} a^{2N}(0)>_b]

    Numerator moments belong to the mod-4 state (F_{2N+1} computed exactly
    through the moment evaluator); the denominator moment belongs to the
    plain binomial state with the same (M, eta).
    """
    if N < 1:
        raise ParameterError(f"N must be a positive integer, got {N}")
    _check_w_pair(oebs_state, bs_state)
    order = 2 * N + 1
    sq = squeezing_series(oebs_state, 1, grid, order)
    m_hi0 = initial_diagonal_moment(oebs_state, order)
    m_lo0 = initial_diagonal_moment(oebs_state, order - 1)
    denom = order * initial_diagonal_moment(bs_state, order - 1)
    if denom == 0.0:
        raise ParameterError("reference state has vanishing <adag^2N a^2N(0)>")
    return (2.0 * m_hi0 + order * m_lo0 - 2.0 * sq.F) / denom


def w_rescaled(oebs_state: FockAmplitudes, bs_state: FockAmplitudes, T, N) -> float:
    return float(w_rescaled_series(oebs_state, bs_state, [T], N)[0])


def oebs_odd_factor_explicit(oebs_state: FockAmplitudes, grid, N) -> np.ndarray:
    """Second, independent evaluation of F_{2N+1}(T) for a mod-4 state at k = 1.

    Because <a^{2N+1}> and <a^{4N+2}> vanish structurally on mod-4 support,
    the factor reduces to the diagonal moment, which rearranges exactly into
    initial moments plus one cosine sum:

        F = <adag^{2N+1} a^{2N+1}(0)> + (N + 1/2) <adag^{2N} a^{2N}(0)>
            - (N + 1/2) sum_j P(j) j!/(j-2N)! cos(2 T sqrt(j+1))
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    P = photon_distribution(oebs_state)
    order = 2 * N + 1
    m_hi0 = initial_diagonal_moment(oebs_state, order)
    m_lo0 = initial_diagonal_moment(oebs_state, order - 1)
    half = N + 0.5
    acc = CompensatedSum(grid.shape)
    for j, p in enumerate(P):
        if p == 0.0:
            continue
        ff = falling_factorial(j, 2 * N)
        if ff == 0:
            continue
        acc.add((p * ff) * np.cos((2.0 * math.sqrt(j + 1.0)) * grid))
    return m_hi0 + half * m_lo0 - half * acc.value


def q_rescaled_series(state: FockAmplitudes, grid, N, epsilon, n_bar_bs) -> np.ndarray:
    """Rescaled squeezing factor of the three-photon coupling, Q_N(T).

    Q_N(T) = [n_b^N - V_N(T)] / n_b^N with n_b the mean photon number of
    the reference plain binomial state. V_N reads the factor free of the
    squared-mean contamination for the given parity token: F_N for
    epsilon = i, S_N otherwise (for epsilon = +/-1 with odd N the two
    coincide in their oscillating content and either applies).

    k is fixed to 3: only there does the ladder-gap-to-inversion frequency
    ratio become the constant 3N/2 independent of the photon number. The
    factor is therefore sampled at squeezing time 2T/(3N), which undoes
    that ratio and aligns the trace with the k = 1 inversion at time T.
    """
    if N < 1:
        raise ParameterError(f"N must be a positive integer, got {N}")
    if n_bar_bs <= 0:
        raise ParameterError(f"n_bar_bs must be positive, got {n_bar_bs}")
    eps = canonical_epsilon(epsilon)
    tau = np.atleast_1d(np.asarray(grid, dtype=float)) * (2.0 / (3.0 * N))
    sq = squeezing_series(state, 3, tau, N)
    V = sq.F if eps == 1j else sq.S
    scale = float(n_bar_bs) ** N
    return (scale - V) / scale


def q_rescaled(state: FockAmplitudes, T, N, epsilon, n_bar_bs) -> float:
    return float(q_rescaled_series(state, [T], N, epsilon, n_bar_bs)[0])


def mu_exact(n, k, N) -> float:
    """Frequency ratio (nu_{n+2N,k} - nu_{n,k}) / (2 sqrt(n+1)).

    The ratio between the oscillation rate of <a^{2N}> under the k-photon
    coupling and that of the single-photon inversion at photon number n.
    Tends to 3N/2 for k = 3 and decays like 1/n for k = 1.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if N < 1:
        raise ParameterError(f"N must be a positive integer, got {N}")
    return (rabi_frequency(n + 2 * N, k) - rabi_frequency(n, k)) / (2.0 * math.sqrt(n + 1.0))


def a2n_exact(state: FockAmplitudes, k, T, N):
    """<a^{2N}(T)>, the exact moment (same evaluation path as field_moment)."""
    table = MomentTable(state, k, np.atleast_1d(np.asarray(T, dtype=float)))
    out = table.moment_series(2 * N, 0)
    return complex(out[0]) if np.ndim(T) == 0 else out


def a2n_approx(state: FockAmplitudes, k, T, N):
    """Smooth-envelope approximation of <a^{2N}(T)>:

        eta^{2N} M^N sum_n P(n) cos[T (nu_{n+2N,k} - nu_{n,k})]

    Intended for M >> 2N, 0 < eta < 1 and large mean photon number; it is
    evaluated (inaccurately) outside that regime as well.
    """
    meta = state.meta
    if "M" not in meta or "eta" not in meta:
        raise ParameterError("the approximation needs a binomial-family state carrying (M, eta)")
    M, eta = meta["M"], meta["eta"]
    P = photon_distribution(state)
    n = np.arange(state.n_max + 1)
    gap = rabi_frequency(n + 2 * N, k) - rabi_frequency(n, k)
    grid = np.atleast_1d(np.asarray(T, dtype=float))
    acc = CompensatedSum(grid.shape)
    for p, g in zip(P, gap):
        if p == 0.0:
            continue
        acc.add(p * np.cos(g * grid))
    out = (eta ** (2 * N) * M**N) * acc.value
    return float(out[0]) if np.ndim(T) == 0 else out
