"""k-photon Jaynes-Cummings dynamics with binomial field states.

Initial-field constructors, the closed-form resonant evolution (atomic
inversion and normally ordered field moments), Nth-order quadrature
squeezing factors with the two inversion-mirroring rescalings, and the
comparison/oracle utilities used by the test suite.
"""

__version__ = "0.1.0"

from .analysis import (
    ComparisonReport,
    coherent_inversion_baseline,
    compare_series,
    exact_amplitudes,
    oracle_moment,
)
from .dynamics import (
    JCMConfig,
    MomentTable,
    TimeSeries,
    atomic_inversion,
    excitation_invariant,
    field_moment,
    field_moment_series,
    inversion_series,
    rabi_frequency,
)
from .errors import NumericalDomainError, ParameterError
from .squeezing import (
    SqueezeRecord,
    SqueezeSeries,
    a2n_approx,
    a2n_exact,
    initial_diagonal_moment,
    mu_exact,
    oebs_odd_factor_explicit,
    q_rescaled,
    q_rescaled_series,
    squeezing_factors,
    squeezing_series,
    w_rescaled,
    w_rescaled_series,
)
from .states import (
    CoherentSpec,
    FieldStateSpec,
    FockAmplitudes,
    OrthogonalEvenBSSpec,
    SBSSpec,
    build_state,
    coherent_amplitudes,
    default_coherent_cutoff,
    even_sbs_mean_closed_form,
    mean_photon,
    oebs_amplitudes,
    oebs_norm_closed_form,
    oebs_support_mass,
    photon_distribution,
    sbs_amplitudes,
    sbs_norm_closed_form,
    sbs_norm_numeric,
    state_label,
)

__all__ = [name for name in dir() if not name.startswith("_")]
