"""Shared fixtures: the expensive reference runs are computed once."""

import numpy as np
import pytest

from kerrcoupler import (
    build_collapse_operators,
    build_hamiltonian,
    build_liouvillian,
    evolve_spectral,
    open_preset,
    reference_preset,
    run_closed,
    run_open,
)

OPEN_KAPPAS = (0.0, 1e-5, 1e-4, 1e-3)


@pytest.fixture(scope="session")
def reference_cfg():
    return reference_preset()


@pytest.fixture(scope="session")
def closed_9_run(reference_cfg):
    return run_closed(reference_cfg)


@pytest.fixture(scope="session")
def closed_12_run():
    return run_closed(reference_preset(cutoff_a=12, cutoff_b=12))


@pytest.fixture(scope="session")
def open_records():
    """run_open records for each leakage rate of the dissipation study."""
    return {kappa: run_open(open_preset(kappa)) for kappa in OPEN_KAPPAS}


@pytest.fixture(scope="session")
def open_states():
    """Raw evolved density operators for the same runs, for invariant checks."""
    out = {}
    for kappa in OPEN_KAPPAS:
        cfg = open_preset(kappa)
        liouvillian = build_liouvillian(
            build_hamiltonian(cfg), build_collapse_operators(cfg)
        )
        psi0 = cfg.space.basis_state(*cfg.initial)
        rho0 = np.outer(psi0, psi0.conj())
        out[kappa] = evolve_spectral(liouvillian, rho0, cfg.times())
    return out
