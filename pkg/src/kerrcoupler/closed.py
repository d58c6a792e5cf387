"""Unitary evolution in the full truncated basis.

The Hamiltonian is time independent, so one Hermitian
eigendecomposition gives exp(-iHt) at every requested time with
machine-precision unitarity: psi(t) = V exp(-i w t) V† psi0.
"""

from dataclasses import dataclass

import numpy as np

from .entanglement import bell_decompose, concurrence, reduce_to_two_qubits
from .errors import ConfigError, LeakageError
from .fock import FockSpace, hermitian_eigendecompose
from .hamiltonian import CouplerConfig, build_hamiltonian

NORM_TOL = 1e-9

# A run aborts when this much population has left the qubit subspace;
# results past that point would no longer describe a two-qubit system.
LEAKAGE_LIMIT = 0.05


@dataclass(frozen=True)
class TimeSeriesRecord:
    """One sampled instant of a run.

    populations maps (n_a, n_b) to occupation probability for every
    basis state; bell_probs are the Bell-like weights; leakage is the
    population outside the qubit block; norm_or_trace is the total
    population (norm squared for pure states, trace for mixed ones).
    """

    t: float
    populations: dict[tuple[int, int], float]
    bell_probs: tuple[float, float, float, float]
    concurrence: float
    leakage: float
    norm_or_trace: float

    def population(self, n_a: int, n_b: int) -> float:
        return self.populations.get((n_a, n_b), 0.0)

    def qubit_populations(self) -> tuple[float, float, float, float]:
        """(p00, p10, p01, p11)."""
        return (
            self.population(0, 0),
            self.population(1, 0),
            self.population(0, 1),
            self.population(1, 1),
        )


def make_record(
    space: FockSpace,
    t: float,
    state: np.ndarray,
    leakage_limit: float | None = LEAKAGE_LIMIT,
) -> TimeSeriesRecord:
    """Build a record from a pure state (1-D) or density operator (2-D)."""
    state = np.asarray(state)
    if state.ndim == 1:
        occupations = np.abs(state) ** 2
    else:
        occupations = np.diag(state).real

    populations = {
        space.unflatten(i): float(occupations[i]) for i in range(space.dim)
    }
    total = float(np.sum(occupations))
    p00 = populations[(0, 0)]
    p01 = populations[(0, 1)]
    p10 = populations[(1, 0)]
    p11 = populations[(1, 1)]
    leakage = 1.0 - (p00 + p01 + p10 + p11)

    if leakage_limit is not None and leakage > leakage_limit:
        raise LeakageError(
            f"leakage {leakage:.4f} exceeds {leakage_limit} at t = {t:g}; "
            "the two-qubit picture has broken down (raise the couplings "
            "ratio or inspect the configuration)"
        )

    decomposition = bell_decompose(state, space)
    c = concurrence(reduce_to_two_qubits(state, space))
    return TimeSeriesRecord(
        t=float(t),
        populations=populations,
        bell_probs=decomposition.probabilities,
        concurrence=c,
        leakage=leakage,
        norm_or_trace=total,
    )


class SpectralPropagator:
    """exp(-iHt) applied through a cached eigendecomposition of H."""

    def __init__(self, h: np.ndarray):
        self.eigenvalues, self.eigenvectors = hermitian_eigendecompose(h)

    def propagate(self, psi0: np.ndarray, t: float) -> np.ndarray:
        psi0 = np.asarray(psi0, dtype=complex)
        norm = np.linalg.norm(psi0)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"initial state is not normalized: |psi0| = {norm}")
        v = self.eigenvectors
        y0 = v.conj().T @ psi0
        return v @ (np.exp(-1j * self.eigenvalues * t) * y0)

    def evolve_series(self, psi0: np.ndarray, times) -> np.ndarray:
        """States at all requested times, one row per time."""
        psi0 = np.asarray(psi0, dtype=complex)
        norm = np.linalg.norm(psi0)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"initial state is not normalized: |psi0| = {norm}")
        v = self.eigenvectors
        y0 = v.conj().T @ psi0
        times = np.asarray(times, dtype=float)
        phases = np.exp(-1j * np.outer(times, self.eigenvalues))
        return (phases * y0) @ v.T


def propagate(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """One-shot unitary evolution; see :class:`SpectralPropagator` for reuse."""
    return SpectralPropagator(h).propagate(psi0, t)


def run_closed(cfg: CouplerConfig, leakage_limit: float | None = LEAKAGE_LIMIT) -> list[TimeSeriesRecord]:
    """Sample a closed (kappa = 0) run on the configured time grid."""
    if not cfg.is_closed:
        raise ConfigError(
            "run_closed handles kappa_a = kappa_b = 0 only; "
            "use the open-system solver (lindblad.run_open) for "
            f"kappa = ({cfg.kappa_a}, {cfg.kappa_b})"
        )
    space = cfg.space
    propagator = SpectralPropagator(build_hamiltonian(cfg))
    psi0 = space.basis_state(*cfg.initial)
    times = cfg.times()
    states = propagator.evolve_series(psi0, times)
    return [
        make_record(space, t, psi, leakage_limit)
        for t, psi in zip(times, states)
    ]
