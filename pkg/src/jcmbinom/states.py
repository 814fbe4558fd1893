"""Initial-field amplitude vectors over the Fock basis.

Three state families are provided:

* ``sbs_amplitudes``: binomial states and their parity superpositions,
  with amplitudes proportional to

      sqrt(M! / ((M-n)! n!)) * eta^n * (1 - eta^2)^((M-n)/2) * [1 + (-1)^n eps]

  where eps is one of the four tokens 0 (plain), +1 (even), -1 (odd), i
  (phased superposition).
* ``oebs_amplitudes``: the orthogonal-even binomial state, supported on
  Fock indices divisible by 4.
* ``coherent_amplitudes``: truncated Poissonian amplitudes with optional
  parity projection; the large-M limit baseline of the binomial family.

Binomial weights are evaluated in log space so M of order 10^3 stays
finite, and every constructor normalizes numerically. Closed-form
normalization constants are exposed separately as cross-checks only.
"""

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import gammaln, logsumexp
from scipy.stats import poisson

from .errors import NumericalDomainError, ParameterError

EPSILON_TOKENS = (0, 1, -1, 1j)

_TAIL_TOL = 1e-14
_MIN_CUTOFF = 40
_NORM_TOL = 1e-12


def canonical_epsilon(epsilon) -> complex:
    """Map an epsilon token to its canonical complex value, rejecting others."""
    for token in EPSILON_TOKENS:
        if epsilon == token:
            return complex(token)
    raise ParameterError(f"epsilon must be one of 0, +1, -1, i; got {epsilon!r}")


def epsilon_label(epsilon) -> str:
    return {complex(0): "0", complex(1): "1", complex(-1): "-1", complex(1j): "i"}[
        canonical_epsilon(epsilon)
    ]


@dataclass(frozen=True)
class SBSSpec:
    """Binomial-state superposition parameters: size M, amplitude eta, parity token."""

    M: int
    eta: float
    epsilon: complex = 0

    def __post_init__(self):
        if self.M < 1:
            raise ParameterError(f"M must be a positive integer, got {self.M}")
        if not 0.0 < self.eta <= 1.0:
            raise ParameterError(f"eta must lie in (0, 1], got {self.eta}")
        object.__setattr__(self, "epsilon", canonical_epsilon(self.epsilon))


@dataclass(frozen=True)
class OrthogonalEvenBSSpec:
    """Orthogonal-even binomial state parameters (support on multiples of 4)."""

    M: int
    eta: float

    def __post_init__(self):
        if self.M < 1:
            raise ParameterError(f"M must be a positive integer, got {self.M}")
        if not 0.0 < self.eta < 1.0:
            raise ParameterError(f"eta must lie in (0, 1), got {self.eta}")


@dataclass(frozen=True)
class CoherentSpec:
    """Truncated coherent state parameters with optional parity projection."""

    alpha: float
    parity: str = "none"
    n_cutoff: Union[int, None] = None

    def __post_init__(self):
        if self.alpha < 0:
            raise ParameterError(f"alpha must be nonnegative, got {self.alpha}")
        if self.parity not in ("none", "even", "odd"):
            raise ParameterError(f"parity must be none, even or odd, got {self.parity!r}")


FieldStateSpec = Union[SBSSpec, OrthogonalEvenBSSpec, CoherentSpec]


@dataclass(frozen=True)
class FockAmplitudes:
    """Finite complex amplitude vector C_0..C_{n_max} with normalization metadata.

    ``norm_residual`` is |1 - sum |C_n|^2| recomputed after normalization.
    The amplitude array is marked read-only; instances are safe to share.
    """

    amps: np.ndarray
    n_max: int
    norm_residual: float
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        if len(amps) != self.n_max + 1:
            raise ParameterError(
                f"amplitude vector has length {len(amps)}, expected n_max + 1 = {self.n_max + 1}"
            )
        if self.norm_residual > _NORM_TOL:
            raise NumericalDomainError(
                f"normalization residual {self.norm_residual:.3e} exceeds {_NORM_TOL}"
            )


def _half_log_binom_weight(M, n, eta):
    """log of sqrt(C(M, n)) * eta^n * (1 - eta^2)^((M - n) / 2), elementwise.

    Requires 0 < eta < 1; the eta = 1 degenerate case is handled by callers
    as an exact Kronecker delta at n = M.
    """
    n = np.asarray(n, dtype=float)
    log_binom = gammaln(M + 1.0) - gammaln(M - n + 1.0) - gammaln(n + 1.0)
    return 0.5 * log_binom + n * math.log(eta) + 0.5 * (M - n) * math.log1p(-eta * eta)


def _parity_factor(n, epsilon: complex):
    """1 + (-1)^n eps with structurally exact zeros for eps = +/-1."""
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    if epsilon == 0:
        return np.ones(len(n), dtype=complex)
    if epsilon == 1 or epsilon == -1:
        return (1.0 + sign * epsilon.real).astype(complex)
    return 1.0 + sign * 1j


def _normalized(raw, n_max, meta) -> FockAmplitudes:
    norm_sq = math.fsum(raw.real**2 + raw.imag**2)
    if norm_sq == 0.0:
        raise NumericalDomainError(
            "state has zero norm: the parity factor annihilates every populated Fock component"
        )
    amps = raw / math.sqrt(norm_sq)
    residual = abs(1.0 - math.fsum(amps.real**2 + amps.imag**2))
    return FockAmplitudes(amps, n_max, residual, meta)


def sbs_amplitudes(M, eta, epsilon=0, *, allow_vacuum=False) -> FockAmplitudes:
    """Amplitude vector of the binomial-state superposition.

    Args:
        M: number of Fock components minus one (positive integer).
        eta: amplitude parameter in (0, 1]; eta = 1 gives the Fock state
            path exactly (no 0^0 is evaluated).
        epsilon: parity token, one of 0, +1, -1, i.
        allow_vacuum: permit the degenerate M = 0 case, which returns the
            vacuum vector instead of raising.

    The closed forms in ``sbs_norm_closed_form`` are never used here;
    normalization is always numerical.
    """
    eps = canonical_epsilon(epsilon)
    if M == 0:
        if not allow_vacuum:
            raise ParameterError("M must be >= 1 (pass allow_vacuum=True for the vacuum-only case)")
        meta = {"kind": "sbs", "M": 0, "eta": eta, "epsilon": eps, "degenerate": True}
        return _normalized(np.array([1.0 + 0j]), 0, meta)
    if M < 0:
        raise ParameterError(f"M must be a positive integer, got {M}")
    if not 0.0 < eta <= 1.0:
        raise ParameterError(f"eta must lie in (0, 1], got {eta}")

    n = np.arange(M + 1)
    factor = _parity_factor(n, eps)
    if eta == 1.0:
        weights = np.zeros(M + 1)
        weights[M] = 1.0
    else:
        half_log = _half_log_binom_weight(M, n, eta)
        weights = np.exp(half_log - half_log.max())
    meta = {"kind": "sbs", "M": int(M), "eta": float(eta), "epsilon": eps}
    return _normalized(weights * factor, M, meta)


def sbs_norm_closed_form(M, eta, epsilon) -> float:
    """Closed-form |lambda|^-2 = 1 + eps^2 + 2 (1 - 2 eta^2)^M eps for eps in {0, +1, -1}.

    Cross-check only; the phased token eps = i has no such closed form here
    (its raw squared norm is the constant 2 for every M, eta).
    """
    eps = canonical_epsilon(epsilon)
    if eps == 1j:
        raise ParameterError("closed-form normalization is defined for epsilon in {0, +1, -1} only")
    e = eps.real
    z = 1.0 - 2.0 * eta * eta
    return 1.0 + e * e + 2.0 * (z**M) * e


def sbs_norm_numeric(M, eta, epsilon) -> float:
    """Raw squared norm sum_n C(M,n) eta^(2n) (1-eta^2)^(M-n) |1 + (-1)^n eps|^2.

    Evaluated with a log-sum-exp over the binomial weights; the partner of
    ``sbs_norm_closed_form`` in the normalization cross-check.
    """
    eps = canonical_epsilon(epsilon)
    if M < 1:
        raise ParameterError(f"M must be a positive integer, got {M}")
    if not 0.0 < eta <= 1.0:
        raise ParameterError(f"eta must lie in (0, 1], got {eta}")
    n = np.arange(M + 1)
    factor_sq = np.abs(_parity_factor(n, eps)) ** 2
    if eta == 1.0:
        return float(factor_sq[M])
    log_p = 2.0 * _half_log_binom_weight(M, n, eta)
    return float(np.exp(logsumexp(log_p, b=factor_sq)))


def oebs_amplitudes(M, eta) -> FockAmplitudes:
    """Amplitude vector of the orthogonal-even binomial state.

    Support is restricted to Fock indices divisible by 4 using the plain
    (eps = 0) binomial weights. M < 4 collapses to the vacuum and is
    flagged as degenerate in the metadata rather than rejected.
    """
    if M < 1:
        raise ParameterError(f"M must be a positive integer, got {M}")
    if not 0.0 < eta < 1.0:
        raise ParameterError(f"eta must lie in (0, 1) for the orthogonal-even family, got {eta}")
    support = np.arange(0, M + 1, 4)
    half_log = _half_log_binom_weight(M, support, eta)
    raw = np.zeros(M + 1, dtype=complex)
    raw[support] = np.exp(half_log - half_log.max())
    meta = {"kind": "oebs", "M": int(M), "eta": float(eta), "degenerate": bool(M < 4)}
    return _normalized(raw, M, meta)


def oebs_norm_closed_form(M, eta) -> float:
    """Closed-form A^2 = 4 / (1 + (1-2 eta^2)^M + 2 Re (1 - eta^2 + i eta^2)^M)."""
    z = 1.0 - 2.0 * eta * eta
    w = complex(1.0 - eta * eta, eta * eta)
    return 4.0 / (1.0 + z**M + 2.0 * (w**M).real)


def oebs_support_mass(M, eta) -> float:
    """Binomial mass on Fock indices divisible by 4; the reciprocal of A^2."""
    support = np.arange(0, M + 1, 4)
    log_p = 2.0 * _half_log_binom_weight(M, support, eta)
    return float(np.exp(logsumexp(log_p)))


def default_coherent_cutoff(alpha) -> int:
    """Smallest cutoff whose excluded Poisson tail mass is below 1e-14 (floor 40)."""
    mu = alpha * alpha
    n = _MIN_CUTOFF
    while poisson.sf(n, mu) >= _TAIL_TOL:
        n += 1
    return n


def coherent_amplitudes(alpha, parity="none", n_cutoff=None) -> FockAmplitudes:
    """Truncated coherent-state amplitudes alpha^n e^(-alpha^2/2) / sqrt(n!).

    Computed in log space; parity = even/odd projects and renormalizes.
    A user-supplied cutoff whose excluded tail mass is not below 1e-14
    raises NumericalDomainError.
    """
    if alpha < 0:
        raise ParameterError(f"alpha must be nonnegative, got {alpha}")
    if parity not in ("none", "even", "odd"):
        raise ParameterError(f"parity must be none, even or odd, got {parity!r}")
    mu = alpha * alpha
    if alpha == 0.0:
        if parity == "odd":
            raise NumericalDomainError("odd-parity projection of the vacuum has zero norm")
        meta = {"kind": "coherent", "alpha": 0.0, "parity": parity, "n_cutoff": 0}
        return _normalized(np.array([1.0 + 0j]), 0, meta)
    if n_cutoff is None:
        n_cutoff = default_coherent_cutoff(alpha)
    else:
        tail = float(poisson.sf(n_cutoff, mu))
        if tail >= _TAIL_TOL:
            raise NumericalDomainError(
                f"n_cutoff={n_cutoff} too small: excluded Poisson tail mass {tail:.3e} >= {_TAIL_TOL}"
            )
    n = np.arange(n_cutoff + 1)
    log_amp = n * math.log(alpha) - 0.5 * mu - 0.5 * gammaln(n + 1.0)
    raw = np.exp(log_amp).astype(complex)
    if parity == "even":
        raw[1::2] = 0.0
    elif parity == "odd":
        raw[0::2] = 0.0
    meta = {"kind": "coherent", "alpha": float(alpha), "parity": parity, "n_cutoff": int(n_cutoff)}
    return _normalized(raw, int(n_cutoff), meta)


def build_state(spec: FieldStateSpec) -> FockAmplitudes:
    """Construct the amplitude vector described by a state spec."""
    if isinstance(spec, SBSSpec):
        return sbs_amplitudes(spec.M, spec.eta, spec.epsilon)
    if isinstance(spec, OrthogonalEvenBSSpec):
        return oebs_amplitudes(spec.M, spec.eta)
    if isinstance(spec, CoherentSpec):
        return coherent_amplitudes(spec.alpha, spec.parity, spec.n_cutoff)
    raise ParameterError(f"unknown state spec {spec!r}")


def state_label(state: FockAmplitudes) -> str:
    """Short human-readable descriptor built from construction metadata."""
    meta = state.meta
    kind = meta.get("kind", "state")
    if kind == "sbs":
        return f"sbs(M={meta['M']}, eta={meta['eta']:g}, epsilon={epsilon_label(meta['epsilon'])})"
    if kind == "oebs":
        return f"oebs(M={meta['M']}, eta={meta['eta']:g})"
    if kind == "coherent":
        return f"coherent(alpha={meta['alpha']:g}, parity={meta['parity']})"
    return kind


def photon_distribution(state: FockAmplitudes) -> np.ndarray:
    """P(n) = |C_n|^2 over the full index range 0..n_max."""
    return state.amps.real**2 + state.amps.imag**2


def mean_photon(state: FockAmplitudes) -> float:
    """Mean photon number sum_n n P(n) of a normalized state."""
    P = photon_distribution(state)
    return math.fsum(n * p for n, p in enumerate(P))


def even_sbs_mean_closed_form(M, eta) -> float:
    """Closed-form mean photon number of the even (eps = +1) binomial state.

    eta^2 M (1 - z^(M-1)) / (1 + z^M) with z = 1 - 2 eta^2.
    """
    z = 1.0 - 2.0 * eta * eta
    return eta * eta * M * (1.0 - z ** (M - 1)) / (1.0 + z**M)
