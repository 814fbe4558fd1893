"""Series comparison metrics, the coherent baseline, and a high-precision
small-instance oracle for the moment evaluator."""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import TimeSeries, atomic_inversion
from .errors import NumericalDomainError, ParameterError
from .states import (
    CoherentSpec,
    FieldStateSpec,
    OrthogonalEvenBSSpec,
    SBSSpec,
    coherent_amplitudes,
    default_coherent_cutoff,
)

_ORACLE_MAX_M = 30
_GRID_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class ComparisonReport:
    """Pointwise and correlation metrics between two series on one grid."""

    sup_norm: float
    rms: float
    pearson: float
    grid_size: int
    labels: tuple


def compare_series(a: TimeSeries, b: TimeSeries) -> ComparisonReport:
    """Sup-norm, RMS and Pearson correlation of two series on identical grids."""
    if len(a.grid) != len(b.grid):
        raise ParameterError(
            f"series grids differ in length: {len(a.grid)} vs {len(b.grid)}"
        )
    if np.max(np.abs(a.grid - b.grid)) > _GRID_MATCH_TOL:
        raise ParameterError("series grids differ by more than 1e-12")
    x = np.asarray(a.values, dtype=float)
    y = np.asarray(b.values, dtype=float)
    diff = x - y
    sup = float(np.max(np.abs(diff)))
    rms = float(np.sqrt(np.mean(diff * diff)))
    # identical series are perfectly correlated; skip corrcoef round-off
    pearson = 1.0 if sup == 0.0 else float(np.corrcoef(x, y)[0, 1])
    return ComparisonReport(sup, rms, pearson, len(x), (a.label, b.label))


def coherent_inversion_baseline(alpha, k, grid) -> TimeSeries:
    """Atomic inversion of the truncated coherent state, as a labeled series."""
    state = coherent_amplitudes(alpha)
    grid = np.asarray(grid, dtype=float)
    values = atomic_inversion(state, k, grid)
    return TimeSeries(grid, values, label=f"inversion k={k} coherent(alpha={alpha:g})")


def _falling(m, s):
    # m! / (m - s)! as an exact integer; 0 when m < s (kept local so the
    # oracle stays self-contained)
    if m < s:
        return 0
    out = 1
    for i in range(s):
        out *= m - i
    return out


def exact_amplitudes(spec: FieldStateSpec) -> np.ndarray:
    """Reference amplitude vector built from exact integer factorials.

    Independent of the log-gamma construction path; restricted to sizes
    where the integer arithmetic is trivially exact.
    """
    if isinstance(spec, SBSSpec):
        if spec.M > _ORACLE_MAX_M:
            raise ParameterError(f"M={spec.M} too large for the exact reference (max {_ORACLE_MAX_M})")
        M, eta, eps = spec.M, spec.eta, spec.epsilon
        raw = np.zeros(M + 1, dtype=complex)
        for n in range(M + 1):
            parity = 1.0 + (-1.0) ** n * eps
            if eta == 1.0:
                base = 1.0 if n == M else 0.0
            else:
                base = math.sqrt(math.comb(M, n)) * eta**n * (1.0 - eta * eta) ** (0.5 * (M - n))
            raw[n] = base * parity
    elif isinstance(spec, OrthogonalEvenBSSpec):
        if spec.M > _ORACLE_MAX_M:
            raise ParameterError(f"M={spec.M} too large for the exact reference (max {_ORACLE_MAX_M})")
        M, eta = spec.M, spec.eta
        raw = np.zeros(M + 1, dtype=complex)
        for n in range(0, M + 1, 4):
            raw[n] = math.sqrt(math.comb(M, n)) * eta**n * (1.0 - eta * eta) ** (0.5 * (M - n))
    elif isinstance(spec, CoherentSpec):
        cutoff = spec.n_cutoff if spec.n_cutoff is not None else default_coherent_cutoff(spec.alpha)
        if cutoff > 2 * _ORACLE_MAX_M + 40:
            raise ParameterError(f"cutoff {cutoff} too large for the exact reference")
        raw = np.zeros(cutoff + 1, dtype=complex)
        for n in range(cutoff + 1):
            # the common e^{-alpha^2/2} factor cancels in the normalization
            raw[n] = spec.alpha**n / math.sqrt(math.factorial(n))
        if spec.parity == "even":
            raw[1::2] = 0.0
        elif spec.parity == "odd":
            raw[0::2] = 0.0
    else:
        raise ParameterError(f"unknown state spec {spec!r}")
    norm_sq = math.fsum(raw.real**2 + raw.imag**2)
    if norm_sq == 0.0:
        raise NumericalDomainError("reference state has zero norm")
    return raw / math.sqrt(norm_sq)


def _vector_moment(coeffs, base, s1, s2):
    # <v| adag^{s2} a^{s1} |v> for a coefficient vector v over Fock indices
    # base, base+1, ...: ladder operators applied directly, exact integer
    # factorial products, exactly rounded summation.
    re_parts = []
    im_parts = []
    size = len(coeffs)
    for idx, vn in enumerate(coeffs):
        if vn == 0.0:
            continue
        m = base + idx
        m2 = m - s1 + s2
        j2 = m2 - base
        if j2 < 0 or j2 >= size:
            continue
        f1 = _falling(m, s1)
        f2 = _falling(m2, s2)
        if f1 == 0 or f2 == 0:
            continue
        z = np.conj(coeffs[j2]) * vn * math.sqrt(f1 * f2)
        re_parts.append(z.real)
        im_parts.append(z.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def oracle_moment(spec: FieldStateSpec, k, T, s1, s2) -> complex:
    """<adag^{s2}(T) a^{s1}(T)> computed independently of the main evaluator.

    The evolved state is built explicitly (excited branch on |n>, de-excited
    branch on |n + k>) and the ladder operators are applied to it directly,
    with exact integer factorial products and math.fsum accumulation.
    Restricted to small instances where that arithmetic is exact.
    """
    if k < 1:
        raise ParameterError(f"k must be a positive integer, got {k}")
    c = exact_amplitudes(spec)
    n_max = len(c) - 1
    nu = [math.sqrt(_falling(n + k, k)) for n in range(n_max + 1)]
    plus = np.array([c[n] * math.cos(T * nu[n]) for n in range(n_max + 1)])
    minus = np.array([-1j * c[n] * math.sin(T * nu[n]) for n in range(n_max + 1)])
    return _vector_moment(plus, 0, s1, s2) + _vector_moment(minus, k, s1, s2)
