"""Pumped Kerr nonlinear coupler: quantum dynamics and entanglement.

Simulates two linearly coupled Kerr oscillators with one mode driven
by a coherent pump: closed unitary evolution in a truncated two-mode
Fock basis, open Lindblad evolution with photon leakage, Bell-basis
analysis and Wootters concurrence, plus an independent reduced
four-state model used as a cross-check.
"""

from .closed import SpectralPropagator, TimeSeriesRecord, propagate, run_closed
from .entanglement import (
    BellDecomposition,
    TwoQubitDensity,
    bell_decompose,
    bell_states,
    concurrence,
    reduce_to_two_qubits,
)
from .errors import (
    ConfigError,
    CouplerError,
    DimensionError,
    EigensolverError,
    HermiticityError,
    LeakageError,
    SpectralFallbackError,
    StepSizeError,
)
from .fock import (
    FockSpace,
    annihilation,
    creation,
    general_eigendecompose,
    hermitian_eigendecompose,
    tensor,
)
from .hamiltonian import (
    FIG5_KAPPAS,
    CouplerConfig,
    build_collapse_operators,
    build_hamiltonian,
    open_preset,
    reference_preset,
)
from .lindblad import Liouvillian, build_liouvillian, evolve_integrate, evolve_spectral, run_open
from .oracle import QubitAmplitudes, closed_form_amplitudes, integrate_reduced

__version__ = "0.1.0"

__all__ = [
    "BellDecomposition",
    "ConfigError",
    "CouplerConfig",
    "CouplerError",
    "DimensionError",
    "EigensolverError",
    "FIG5_KAPPAS",
    "FockSpace",
    "HermiticityError",
    "LeakageError",
    "Liouvillian",
    "QubitAmplitudes",
    "SpectralFallbackError",
    "SpectralPropagator",
    "StepSizeError",
    "TimeSeriesRecord",
    "TwoQubitDensity",
    "annihilation",
    "bell_decompose",
    "bell_states",
    "build_collapse_operators",
    "build_hamiltonian",
    "build_liouvillian",
    "closed_form_amplitudes",
    "concurrence",
    "creation",
    "evolve_integrate",
    "evolve_spectral",
    "general_eigendecompose",
    "hermitian_eigendecompose",
    "integrate_reduced",
    "open_preset",
    "propagate",
    "reduce_to_two_qubits",
    "reference_preset",
    "run_closed",
    "run_open",
    "tensor",
]
