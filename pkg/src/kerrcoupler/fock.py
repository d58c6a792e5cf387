"""Dense linear algebra over truncated two-mode Fock spaces.

Basis convention: the product basis |n⟩_a|m⟩_b is flattened row-major,
flat index = n_a * (cutoff_b + 1) + n_b.  Every module in the package
goes through :class:`FockSpace` for this mapping; nothing else is
allowed to hard-code the ordering.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, EigensolverError, HermiticityError

HERMITIAN_TOL = 1e-10
EIG_RESIDUAL_TOL = 1e-8


def annihilation(cutoff: int) -> np.ndarray:
    """Single-mode annihilation operator on the Fock ladder 0..cutoff.

    Entry (n-1, n) = sqrt(n); everything else is zero.
    """
    if cutoff < 1:
        raise DimensionError(f"cutoff must be >= 1, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1).astype(complex)


def creation(cutoff: int) -> np.ndarray:
    """Single-mode creation operator, adjoint of :func:`annihilation`."""
    return annihilation(cutoff).conj().T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product consistent with the row-major flat ordering.

    Entry ((i_a, i_b), (j_a, j_b)) = a[i_a, j_a] * b[i_b, j_b].
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"first factor is not square: shape {a.shape}")
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DimensionError(f"second factor is not square: shape {b.shape}")
    return np.kron(a, b)


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation |m - m†|."""
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "matrix") -> None:
    """Raise :class:`HermiticityError` unless ``m`` is Hermitian within ``tol``."""
    defect = hermiticity_defect(m)
    if defect > tol:
        raise HermiticityError(
            f"{name} is not Hermitian: max |M - M†| = {defect:.3e} > {tol:.0e}"
        )


@dataclass(frozen=True)
class FockSpace:
    """Truncated two-mode Fock space with cutoffs per mode.

    Mode a keeps photon numbers 0..cutoff_a, mode b keeps 0..cutoff_b,
    giving dimension (cutoff_a + 1) * (cutoff_b + 1).
    """

    cutoff_a: int
    cutoff_b: int

    def __post_init__(self):
        if self.cutoff_a < 1 or self.cutoff_b < 1:
            raise DimensionError(
                f"cutoffs must be >= 1, got ({self.cutoff_a}, {self.cutoff_b})"
            )

    @property
    def dim(self) -> int:
        return (self.cutoff_a + 1) * (self.cutoff_b + 1)

    def flatten(self, n_a: int, n_b: int) -> int:
        """Flat index of the basis state |n_a⟩_a |n_b⟩_b."""
        if not (0 <= n_a <= self.cutoff_a and 0 <= n_b <= self.cutoff_b):
            raise DimensionError(
                f"photon numbers ({n_a}, {n_b}) outside cutoffs "
                f"({self.cutoff_a}, {self.cutoff_b})"
            )
        return n_a * (self.cutoff_b + 1) + n_b

    def unflatten(self, index: int) -> tuple[int, int]:
        """Photon-number pair (n_a, n_b) of a flat index."""
        if not (0 <= index < self.dim):
            raise DimensionError(f"flat index {index} outside [0, {self.dim})")
        return divmod(index, self.cutoff_b + 1)

    def basis_state(self, n_a: int, n_b: int) -> np.ndarray:
        """Unit amplitude vector for |n_a⟩_a |n_b⟩_b."""
        psi = np.zeros(self.dim, dtype=complex)
        psi[self.flatten(n_a, n_b)] = 1.0
        return psi

    def basis_labels(self) -> list[tuple[int, int]]:
        """All (n_a, n_b) pairs in flat-index order."""
        return [self.unflatten(i) for i in range(self.dim)]

    def qubit_indices(self) -> tuple[int, int, int, int]:
        """Flat indices of (|00⟩, |01⟩, |10⟩, |11⟩), the two-qubit block order."""
        return (
            self.flatten(0, 0),
            self.flatten(0, 1),
            self.flatten(1, 0),
            self.flatten(1, 1),
        )

    def annihilation_a(self) -> np.ndarray:
        """Mode-a annihilation operator extended to the product space."""
        return tensor(annihilation(self.cutoff_a), np.eye(self.cutoff_b + 1, dtype=complex))

    def annihilation_b(self) -> np.ndarray:
        """Mode-b annihilation operator extended to the product space."""
        return tensor(np.eye(self.cutoff_a + 1, dtype=complex), annihilation(self.cutoff_b))

    def number_a(self) -> np.ndarray:
        a = self.annihilation_a()
        return a.conj().T @ a

    def number_b(self) -> np.ndarray:
        b = self.annihilation_b()
        return b.conj().T @ b

    def total_number(self) -> np.ndarray:
        """Total photon number operator a†a + b†b."""
        return self.number_a() + self.number_b()


def hermitian_eigendecompose(
    m: np.ndarray, tol: float = HERMITIAN_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition M = V diag(w) V† of a Hermitian matrix.

    Eigenvalues are returned ascending; V has orthonormal columns.
    Raises :class:`HermiticityError` if the input is not Hermitian
    within ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    require_hermitian(m, tol)
    w, v = np.linalg.eigh(m)
    return w, v


class GeneralEigendecomposition(NamedTuple):
    """Right eigendecomposition of a general square matrix.

    ``condition`` estimates cond_2 of the eigenvector matrix; a huge
    value flags a defective or near-defective input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    condition: float


def general_eigendecompose(m: np.ndarray) -> GeneralEigendecomposition:
    """Right eigendecomposition M v_k = w_k v_k for a general matrix.

    Verifies the residual max_k |M v_k - w_k v_k| against
    ``EIG_RESIDUAL_TOL * |M|_2`` and raises :class:`EigensolverError`
    when the solver fails or the residual is out of contract.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix is not square: shape {m.shape}")
    try:
        w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc

    scale = float(np.linalg.norm(m, 2))
    residual = float(np.max(np.abs(m @ v - v * w)))
    if residual > EIG_RESIDUAL_TOL * max(scale, 1e-300):
        raise EigensolverError(
            f"eigenvector residual {residual:.3e} exceeds "
            f"{EIG_RESIDUAL_TOL:.0e} * |M| = {EIG_RESIDUAL_TOL * scale:.3e}",
            residual=residual,
        )

    try:
        condition = float(np.linalg.cond(v))
    except np.linalg.LinAlgError:
        condition = np.inf
    if not np.isfinite(condition):
        condition = np.inf
    return GeneralEigendecomposition(w, v, condition)
