"""Steady-state simulator for a coherently driven quantum dot coupled to a
single-mode cavity under an acoustic phonon bath.

Computes the polaron-renormalized master-equation steady state and the
derived squeezing, coherence, and photon-statistics observables.
"""

from .constants import (
    HBAR_UEV_PS,
    KB_UEV_PER_K,
    angular_frequency_to_energy,
    energy_to_angular_frequency,
)
from .errors import (
    ConfigError,
    LiouvillianError,
    ParameterError,
    QdcavError,
    QuadratureError,
    SpaceMismatchError,
    SteadyStateError,
    StateValidationError,
)
from .liouville import Liouvillian, assemble, build_hamiltonian, dissipator
from .observables import (
    ObservableSet,
    cavity_field_relation_check,
    compute_observables,
    exciton_coherence,
    fock_statistics,
    quadrature_variance,
)
from .operators import (
    DensityMatrix,
    HilbertSpace,
    QOperator,
    build_operators,
    expectation,
    partial_trace_qd,
)
from .params import PhononEnv, SystemParams, load_config
from .phonon import (
    BathKernel,
    PhononRates,
    compute_rates,
    get_kernel,
    mean_displacement,
    phonon_phase,
    spectral_function,
)
from .steady import SteadyStateResult, converge_truncation, evolve, steady_state

__version__ = "0.1.0"
