"""Bell-basis analysis and Wootters concurrence.

The two-qubit block of the coupler lives on (|00⟩, |01⟩, |10⟩, |11⟩),
ordered like the row-major flat index.  The Bell-like basis used here
carries a relative factor i compared with the textbook Bell states:

    B1 = (|11⟩ + i|00⟩)/sqrt2       B2 = (|00⟩ + i|11⟩)/sqrt2
    B3 = (|01⟩ - i|10⟩)/sqrt2       B4 = (|10⟩ - i|01⟩)/sqrt2
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, LeakageError
from .fock import FockSpace

_SQRT2 = np.sqrt(2.0)

# sigma_y x sigma_y in the (|00⟩, |01⟩, |10⟩, |11⟩) ordering, with the
# sigma_y convention (0,1) = -i, (1,0) = +i per qubit.
SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)

# Magnitude below which eigenvalues of rho * rho-tilde are treated as
# numerical zeros before the square root.
EIGENVALUE_CLAMP = 1e-12

# Smallest qubit-block weight for which a renormalized projection is
# still considered representative.
MIN_BLOCK_TRACE = 0.5


def bell_states() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four Bell-like states as vectors over (|00⟩, |01⟩, |10⟩, |11⟩)."""
    b1 = np.array([1j, 0.0, 0.0, 1.0], dtype=complex) / _SQRT2
    b2 = np.array([1.0, 0.0, 0.0, 1j], dtype=complex) / _SQRT2
    b3 = np.array([0.0, 1.0, -1j, 0.0], dtype=complex) / _SQRT2
    b4 = np.array([0.0, -1j, 1.0, 0.0], dtype=complex) / _SQRT2
    return b1, b2, b3, b4


@dataclass(frozen=True)
class BellDecomposition:
    """Weights of a state in the Bell-like basis.

    For pure states ``amplitudes`` holds the overlaps ⟨B_i|ψ⟩ and the
    probabilities are their squared moduli; for density operators only
    the probabilities ⟨B_i|ρ|B_i⟩ are defined and ``amplitudes`` is
    None.  ``leakage`` is the population outside the qubit block.
    """

    probabilities: tuple[float, float, float, float]
    leakage: float
    amplitudes: tuple[complex, complex, complex, complex] | None = None


@dataclass(frozen=True)
class TwoQubitDensity:
    """Renormalized 4x4 density matrix over (|00⟩, |01⟩, |10⟩, |11⟩).

    ``pre_normalization_trace`` records the qubit-block weight before
    renormalization, so downstream numbers stay honest about how much
    of the state the block actually captured.
    """

    matrix: np.ndarray
    pre_normalization_trace: float


def _qubit_block_indices(state: np.ndarray, space: FockSpace | None) -> tuple[int, ...]:
    if space is not None:
        return space.qubit_indices()
    if state.shape[0] == 4:
        return (0, 1, 2, 3)
    raise DimensionError(
        "a FockSpace is required to locate the qubit block in a "
        f"{state.shape[0]}-dimensional state"
    )


def bell_decompose(state: np.ndarray, space: FockSpace | None = None) -> BellDecomposition:
    """Bell-basis weights of a pure state (1-D) or density operator (2-D).

    ``space`` locates the qubit block inside a full-basis state; it may
    be omitted for states already living on the 4-dimensional block.
    """
    state = np.asarray(state, dtype=complex)
    idx = _qubit_block_indices(state, space)
    bells = bell_states()

    if state.ndim == 1:
        block = state[list(idx)]
        amps = tuple(complex(np.vdot(b, block)) for b in bells)
        probs = tuple(abs(a) ** 2 for a in amps)
        leakage = float(np.vdot(state, state).real - np.vdot(block, block).real)
        return BellDecomposition(probs, leakage, amps)

    if state.ndim == 2:
        block = state[np.ix_(idx, idx)]
        probs = tuple(float(np.vdot(b, block @ b).real) for b in bells)
        leakage = float(np.trace(state).real - np.trace(block).real)
        return BellDecomposition(probs, leakage)

    raise DimensionError(f"state must be 1-D or 2-D, got ndim = {state.ndim}")


def reduce_to_two_qubits(state: np.ndarray, space: FockSpace | None = None) -> TwoQubitDensity:
    """Project onto the qubit block and renormalize by its trace.

    Raises :class:`LeakageError` when the block holds less than half of
    the total population, since the renormalized matrix would then say
    little about the actual state.
    """
    state = np.asarray(state, dtype=complex)
    idx = _qubit_block_indices(state, space)

    if state.ndim == 1:
        block = state[list(idx)]
        pre_trace = float(np.vdot(block, block).real)
        if pre_trace < MIN_BLOCK_TRACE:
            raise LeakageError(
                f"qubit block holds only {pre_trace:.3f} of the population; "
                "a renormalized projection would be unrepresentative"
            )
        rho = np.outer(block, block.conj()) / pre_trace
        return TwoQubitDensity(rho, pre_trace)

    if state.ndim == 2:
        block = state[np.ix_(idx, idx)]
        pre_trace = float(np.trace(block).real)
        if pre_trace < MIN_BLOCK_TRACE:
            raise LeakageError(
                f"qubit block holds only {pre_trace:.3f} of the population; "
                "a renormalized projection would be unrepresentative"
            )
        return TwoQubitDensity(block / pre_trace, pre_trace)

    raise DimensionError(f"state must be 1-D or 2-D, got ndim = {state.ndim}")


def concurrence(rho: TwoQubitDensity | np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the descending square
    roots of the eigenvalues of rho (sy x sy) rho* (sy x sy); the
    conjugate is entrywise in the computational basis.  Eigenvalues
    are clamped to [0, inf) before the square root.
    """
    m = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 density matrix, got shape {m.shape}")
    product = m @ SIGMA_YY @ m.conj() @ SIGMA_YY
    eigs = np.linalg.eigvals(product).real
    eigs[np.abs(eigs) < EIGENVALUE_CLAMP] = 0.0
    lam = np.sort(np.sqrt(np.maximum(eigs, 0.0)))[::-1]
    value = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(1.0, max(0.0, value)))
