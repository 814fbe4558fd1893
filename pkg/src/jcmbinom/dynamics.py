"""Closed-form resonant evolution of the k-photon two-level coupling.

The atom starts excited and exchanges k photons per flip; on resonance the
joint state at scaled time T = lambda t is an explicit superposition of an
excited branch on |n> and a de-excited branch on |n + k>, weighted by
cos(T nu_{n,k}) and sin(T nu_{n,k}). Every observable here is therefore a
finite sum over the Fock support: no differential equation is integrated,
and each grid point is independent of the others.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .numerics import CompensatedSum, sqrt_factorial_ratio
from .states import FockAmplitudes, photon_distribution, state_label


@dataclass(frozen=True)
class JCMConfig:
    """Transition parameter k and a uniform scaled-time grid T_i = i t_max / (steps - 1)."""

    k: int
    t_max: float = 50.0
    steps: int = 4000

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k}")
        if self.steps < 2:
            raise ParameterError(f"steps must be at least 2, got {self.steps}")
        if self.t_max < 0:
            raise ParameterError(f"t_max must be nonnegative, got {self.t_max}")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


@dataclass(frozen=True)
class TimeSeries:
    """A scalar observable sampled on a strictly increasing time grid."""

    grid: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        grid = np.ascontiguousarray(self.grid, dtype=float)
        values = np.ascontiguousarray(self.values)
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if len(grid) != len(values):
            raise ParameterError(
                f"grid and values must have equal length, got {len(grid)} and {len(values)}"
            )
        if len(grid) > 1 and not np.all(np.diff(grid) > 0):
            raise ParameterError("grid must be strictly increasing")


def rabi_frequency(n, k):
    """Generalized Rabi frequency sqrt((n+1)(n+2)...(n+k)).

    Evaluated as a k-term product, so large n never forms a factorial.
    Accepts scalars or arrays of Fock indices.
    """
    if k < 1:
        raise ParameterError(f"k must be a positive integer, got {k}")
    arr = np.asarray(n, dtype=float)
    if np.any(arr < 0):
        raise ParameterError("Fock index must be nonnegative")
    prod = np.ones_like(arr)
    for j in range(1, k + 1):
        prod = prod * (arr + j)
    out = np.sqrt(prod)
    return float(out) if out.ndim == 0 else out


def atomic_inversion(state: FockAmplitudes, k, T):
    """<sigma_z(T)> = sum_n P(n) cos(2 T nu_{n,k}) for the initially excited atom.

    T may be a scalar or a grid; the per-point sum is compensated.
    """
    P = photon_distribution(state)
    nu = rabi_frequency(np.arange(state.n_max + 1), k)
    grid = np.atleast_1d(np.asarray(T, dtype=float))
    acc = CompensatedSum(grid.shape)
    for p, f in zip(P, nu):
        if p == 0.0:
            continue
        acc.add(p * np.cos((2.0 * f) * grid))
    out = acc.value
    return float(out[0]) if np.ndim(T) == 0 else out


class MomentTable:
    """Field-moment evaluator for one (state, k, grid) triple.

    The cos/sin tables over nu_{n,k} T are built once; each (s1, s2)
    request is then a single compensated sum over the Fock support,
    O(n_max) per grid point.
    """

    def __init__(self, state: FockAmplitudes, k, grid):
        if k < 1:
            raise ParameterError(f"k must be a positive integer, got {k}")
        self.state = state
        self.k = int(k)
        self.grid = np.atleast_1d(np.asarray(grid, dtype=float))
        nu = rabi_frequency(np.arange(state.n_max + 1), self.k)
        phase = np.outer(nu, self.grid)
        self._cos = np.cos(phase)
        self._sin = np.sin(phase)

    def moment_series(self, s1, s2) -> np.ndarray:
        """<adag^{s2}(T) a^{s1}(T)> at every grid time, as a complex array.

        Amplitudes indexed outside [0, n_max] are exactly zero. The excited
        branch contributes sqrt((l+s1)!(l+s2)!)/l! and only exists for
        l >= 0, since 1/l! vanishes for negative l; the de-excited branch
        carries sqrt((l+k+s1)!(l+k+s2)!)/(l+k)! and reaches down to
        l = -min(s1, s2, k). Both ratio factors are evaluated in log space.
        """
        state, k = self.state, self.k
        amps = state.amps
        n_max = state.n_max
        if s1 < 0 or s2 < 0:
            raise ParameterError("operator powers must be nonnegative")
        if s1 > n_max + 1 or s2 > n_max + 1:
            raise ParameterError(
                f"s1={s1}, s2={s2} must not exceed the amplitude vector length {n_max + 1}"
            )
        re = CompensatedSum(self.grid.shape)
        im = CompensatedSum(self.grid.shape)
        for l in range(-min(s1, s2, k), 0):
            w = np.conj(amps[l + s2]) * amps[l + s1]
            if w == 0.0:
                continue
            r2 = float(sqrt_factorial_ratio(l + k, s1, s2))
            term = (w * r2) * (self._sin[l + s2] * self._sin[l + s1])
            re.add(term.real)
            im.add(term.imag)
        for l in range(0, n_max - max(s1, s2) + 1):
            w = np.conj(amps[l + s2]) * amps[l + s1]
            if w == 0.0:
                continue
            r1 = float(sqrt_factorial_ratio(l, s1, s2))
            r2 = float(sqrt_factorial_ratio(l + k, s1, s2))
            term = w * (r1 * (self._cos[l + s2] * self._cos[l + s1])
                        + r2 * (self._sin[l + s2] * self._sin[l + s1]))
            re.add(term.real)
            im.add(term.imag)
        return re.value + 1j * im.value


def field_moment(state: FockAmplitudes, k, T, s1, s2) -> complex:
    """<adag^{s2}(T) a^{s1}(T)> at a single scaled time."""
    return complex(MomentTable(state, k, [T]).moment_series(s1, s2)[0])


def field_moment_series(state: FockAmplitudes, k, grid, s1, s2) -> np.ndarray:
    """<adag^{s2} a^{s1}> over a grid of scaled times."""
    return MomentTable(state, k, grid).moment_series(s1, s2)


def excitation_invariant(state: FockAmplitudes, k, T):
    """<n(T)> + (k/2) <sigma_z(T)>; constant in T and equal to <n(0)> + k/2."""
    grid = np.atleast_1d(np.asarray(T, dtype=float))
    n_t = field_moment_series(state, k, grid, 1, 1).real
    sz = atomic_inversion(state, k, grid)
    out = n_t + 0.5 * k * sz
    return float(out[0]) if np.ndim(T) == 0 else out


def inversion_series(state: FockAmplitudes, k, grid) -> TimeSeries:
    """Atomic inversion packaged as a labeled series."""
    grid = np.asarray(grid, dtype=float)
    values = atomic_inversion(state, k, grid)
    return TimeSeries(grid, values, label=f"inversion k={k} {state_label(state)}")
