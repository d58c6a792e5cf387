"""Exception types shared across the package."""


class CouplerError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(CouplerError, ValueError):
    """A matrix or vector has an invalid or mismatched dimension."""


class HermiticityError(CouplerError, ValueError):
    """An operator required to be Hermitian is not, within tolerance."""


class EigensolverError(CouplerError, RuntimeError):
    """The eigensolver failed to converge or produced a bad decomposition.

    Carries the offending residual (when available) in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpectralFallbackError(CouplerError, RuntimeError):
    """The spectral solver cannot meet its accuracy contract.

    Raised when the eigenvector matrix of a Liouvillian is too
    ill-conditioned; the caller should use the step integrator instead.
    """


class StepSizeError(CouplerError, RuntimeError):
    """Fixed-step integration became inaccurate; a smaller step is needed."""


class LeakageError(CouplerError, RuntimeError):
    """Population outside the two-qubit subspace exceeds a safety bound."""


class ConfigError(CouplerError, ValueError):
    """A configuration is invalid; the message lists the offending fields."""
