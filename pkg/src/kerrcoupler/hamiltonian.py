"""Coupler configuration and operator construction.

The model: two Kerr oscillators a and b inside a cavity, linearly
coupled to each other with strength epsilon, with mode a driven by an
external coherent pump of strength alpha.  Photon leakage is modelled
by rates kappa_a and kappa_b.  Units use hbar = 1, so chi, epsilon,
alpha and kappa all carry the same frequency unit and time is
dimensionless.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .fock import FockSpace

# Ratio |chi| / max(|epsilon|, |alpha|) above which the four-state
# truncation of the dynamics is considered trustworthy.
SCISSORS_RATIO = 10.0

DEFAULT_CLOSED_CUTOFF = 9
DEFAULT_OPEN_CUTOFF = 3

FIG5_KAPPAS = (0.0, 1e-4, 1e-3)


@dataclass(frozen=True)
class CouplerConfig:
    """Physical and numerical parameters of one simulation run.

    chi_a, chi_b     Kerr nonlinearity constants.
    epsilon          mode a <-> mode b coupling strength (complex).
    alpha            external pump strength on mode a (complex).
    kappa_a, kappa_b cavity leakage rates (>= 0; 0 means closed system).
    cutoff_a/_b      Fock cutoffs per mode.
    t_max, dt        sampling grid: t = k*dt for k = 0..floor(t_max/dt).
    initial          initial Fock occupation (n_a, n_b).
    """

    chi_a: float
    chi_b: float
    epsilon: complex
    alpha: complex
    kappa_a: float = 0.0
    kappa_b: float = 0.0
    cutoff_a: int = DEFAULT_CLOSED_CUTOFF
    cutoff_b: int = DEFAULT_CLOSED_CUTOFF
    t_max: float = 250.0
    dt: float = 0.5
    initial: tuple[int, int] = (0, 0)

    def __post_init__(self):
        problems = []
        if self.kappa_a < 0:
            problems.append(f"kappa_a = {self.kappa_a} (must be >= 0)")
        if self.kappa_b < 0:
            problems.append(f"kappa_b = {self.kappa_b} (must be >= 0)")
        if self.cutoff_a < 1:
            problems.append(f"cutoff_a = {self.cutoff_a} (must be >= 1)")
        if self.cutoff_b < 1:
            problems.append(f"cutoff_b = {self.cutoff_b} (must be >= 1)")
        if self.dt <= 0:
            problems.append(f"dt = {self.dt} (must be > 0)")
        if self.t_max < 0:
            problems.append(f"t_max = {self.t_max} (must be >= 0)")
        n_a, n_b = self.initial
        if not (0 <= n_a <= self.cutoff_a and 0 <= n_b <= self.cutoff_b):
            problems.append(
                f"initial = {self.initial} (must lie within the cutoffs)"
            )
        if problems:
            raise ConfigError("invalid configuration: " + "; ".join(problems))

    @property
    def space(self) -> FockSpace:
        return FockSpace(self.cutoff_a, self.cutoff_b)

    @property
    def is_closed(self) -> bool:
        return self.kappa_a == 0.0 and self.kappa_b == 0.0

    @property
    def scissors_valid(self) -> bool:
        """True when both nonlinearities dominate the couplings 10-fold."""
        coupling = max(abs(self.epsilon), abs(self.alpha))
        return min(abs(self.chi_a), abs(self.chi_b)) >= SCISSORS_RATIO * coupling

    def times(self) -> np.ndarray:
        """Sampling grid t = k*dt, k = 0..floor(t_max/dt)."""
        n = int(math.floor(self.t_max / self.dt + 1e-9))
        return np.arange(n + 1) * self.dt

    def with_(self, **overrides) -> "CouplerConfig":
        """Copy with some fields replaced."""
        return replace(self, **overrides)


def reference_preset(**overrides) -> CouplerConfig:
    """The standard closed-run scenario: chi = 25, epsilon = alpha = pi/25.

    Couplings 200 times weaker than the nonlinearity put the run deep
    in the regime where only the n, m <= 1 states take part.
    """
    cfg = CouplerConfig(
        chi_a=25.0,
        chi_b=25.0,
        epsilon=math.pi / 25.0,
        alpha=math.pi / 25.0,
        cutoff_a=DEFAULT_CLOSED_CUTOFF,
        cutoff_b=DEFAULT_CLOSED_CUTOFF,
        t_max=250.0,
        dt=0.5,
    )
    return cfg.with_(**overrides) if overrides else cfg


def open_preset(kappa: float, **overrides) -> CouplerConfig:
    """Reference scenario with symmetric leakage and open-run cutoffs.

    Cutoffs default to (3, 3): leakage diagnostics of the closed runs
    put the population beyond two photons below 1e-4 here, and the
    density-operator solvers scale as dim**6.
    """
    cfg = reference_preset(
        kappa_a=kappa,
        kappa_b=kappa,
        cutoff_a=DEFAULT_OPEN_CUTOFF,
        cutoff_b=DEFAULT_OPEN_CUTOFF,
    )
    return cfg.with_(**overrides) if overrides else cfg


def build_hamiltonian(cfg: CouplerConfig) -> np.ndarray:
    """Full coupler Hamiltonian in the truncated product basis.

    H = (chi_a/2) a†a†aa + (chi_b/2) b†b†bb
        + epsilon a†b + epsilon* a b†
        + alpha a† + alpha* a

    Hermitian by construction for any complex epsilon and alpha.
    """
    space = cfg.space
    a = space.annihilation_a()
    b = space.annihilation_b()
    ad = a.conj().T
    bd = b.conj().T

    h = 0.5 * cfg.chi_a * (ad @ ad @ a @ a)
    h += 0.5 * cfg.chi_b * (bd @ bd @ b @ b)
    h += cfg.epsilon * (ad @ b) + np.conj(cfg.epsilon) * (a @ bd)
    h += cfg.alpha * ad + np.conj(cfg.alpha) * a
    return h


def build_collapse_operators(cfg: CouplerConfig) -> list[np.ndarray]:
    """Photon-loss collapse operators sqrt(2 kappa_a) a and sqrt(2 kappa_b) b.

    Modes with zero leakage contribute no operator; a fully closed
    configuration yields an empty list.
    """
    space = cfg.space
    ops = []
    if cfg.kappa_a > 0:
        ops.append(math.sqrt(2.0 * cfg.kappa_a) * space.annihilation_a())
    if cfg.kappa_b > 0:
        ops.append(math.sqrt(2.0 * cfg.kappa_b) * space.annihilation_b())
    return ops
