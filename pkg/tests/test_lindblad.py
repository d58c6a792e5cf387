import math

import numpy as np
import pytest

from kerrcoupler import (
    DimensionError,
    HermiticityError,
    SpectralFallbackError,
    SpectralPropagator,
    StepSizeError,
    annihilation,
    build_collapse_operators,
    build_hamiltonian,
    build_liouvillian,
    evolve_integrate,
    evolve_spectral,
    open_preset,
    run_closed,
    run_open,
)
from kerrcoupler.lindblad import Liouvillian


def _reference_liouvillian(kappa, **overrides):
    cfg = open_preset(kappa, **overrides)
    return cfg, build_liouvillian(build_hamiltonian(cfg), build_collapse_operators(cfg))


def _vacuum_density(cfg):
    psi0 = cfg.space.basis_state(*cfg.initial)
    return np.outer(psi0, psi0.conj())


def _decay_liouvillian(kappa, cutoff=3):
    a = annihilation(cutoff)
    h = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    return build_liouvillian(h, [math.sqrt(2.0 * kappa) * a])


def _master_equation_rhs(h, collapse_ops, rho):
    out = -1j * (h @ rho - rho @ h)
    for c in collapse_ops:
        cdc = c.conj().T @ c
        out += c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc)
    return out


def test_liouvillian_reproduces_master_equation():
    cfg = open_preset(1e-3, cutoff_a=2, cutoff_b=2)
    h = build_hamiltonian(cfg)
    ops = build_collapse_operators(cfg)
    liouvillian = build_liouvillian(h, ops)
    rng = np.random.default_rng(41)
    for _ in range(10):
        a = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        direct = _master_equation_rhs(h, ops, rho)
        assert np.max(np.abs(liouvillian.apply(rho) - direct)) <= 1e-12


def test_commutator_limit_without_collapse():
    omega = 0.8
    h = np.diag([0.0, omega]).astype(complex)
    liouvillian = build_liouvillian(h, [])
    rng = np.random.default_rng(43)
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    expected = -1j * (h @ rho - rho @ h)
    assert np.max(np.abs(liouvillian.apply(rho) - expected)) <= 1e-15


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionError):
        build_liouvillian(np.zeros((3, 3), dtype=complex), [annihilation(3)])


def test_non_hermitian_hamiltonian_rejected():
    with pytest.raises(HermiticityError):
        build_liouvillian(annihilation(2), [])


def test_generator_annihilates_trace():
    cfg, liouvillian = _reference_liouvillian(1e-4)
    rng = np.random.default_rng(47)
    for _ in range(10):
        v = rng.normal(size=256) + 1j * rng.normal(size=256)
        image = liouvillian.unvec(liouvillian.matrix @ v)
        assert abs(np.trace(image)) <= 1e-10 * np.linalg.norm(v)


def test_reference_spectrum_in_left_half_plane():
    for kappa in (1e-4, 1e-3):
        _, liouvillian = _reference_liouvillian(kappa)
        assert liouvillian.spectrum.eigenvalues.real.max() <= 1e-10


def test_single_mode_decay_both_solvers():
    kappa = 0.05
    liouvillian = _decay_liouvillian(kappa)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[1, 1] = 1.0
    times = np.linspace(0.0, 20.0, 21)
    for states in (
        evolve_spectral(liouvillian, rho0, times),
        evolve_integrate(liouvillian, rho0, times),
    ):
        for t, rho in zip(times, states):
            assert abs(rho[1, 1].real - math.exp(-2.0 * kappa * t)) <= 1e-7


def test_purity_decreases_until_mixing_crossover():
    # under pure decay the state repurifies toward the vacuum after
    # p1 = 1/2, so monotonicity is checked up to that crossover
    kappa = 0.05
    liouvillian = _decay_liouvillian(kappa)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[1, 1] = 1.0
    crossover = math.log(2.0) / (2.0 * kappa)
    times = np.linspace(0.0, crossover, 30)
    purities = [
        float(np.trace(rho @ rho).real)
        for rho in evolve_spectral(liouvillian, rho0, times)
    ]
    assert all(b <= a + 1e-12 for a, b in zip(purities, purities[1:]))


def test_spectral_zero_time():
    cfg, liouvillian = _reference_liouvillian(1e-3)
    rho0 = _vacuum_density(cfg)
    states = evolve_spectral(liouvillian, rho0, [0.0])
    assert np.max(np.abs(states[0] - rho0)) <= 1e-10


def test_kappa_zero_matches_closed_solver():
    cfg, liouvillian = _reference_liouvillian(0.0, t_max=50.0)
    rho0 = _vacuum_density(cfg)
    times = cfg.times()
    states = evolve_spectral(liouvillian, rho0, times)
    propagator = SpectralPropagator(build_hamiltonian(cfg))
    psis = propagator.evolve_series(cfg.space.basis_state(0, 0), times)
    for rho, psi in zip(states, psis):
        assert np.max(np.abs(rho - np.outer(psi, psi.conj()))) <= 1e-7


def test_dissipation_reduces_concurrence_at_fixed_time(open_records):
    index = 230  # t = 115
    weaker = open_records[1e-4][index]
    stronger = open_records[1e-3][index]
    assert weaker.t == 115.0
    assert stronger.concurrence < weaker.concurrence


def test_integrator_constant_under_zero_generator():
    liouvillian = Liouvillian(np.zeros((16, 16), dtype=complex), 4)
    rho0 = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    for rho in evolve_integrate(liouvillian, rho0, np.linspace(0.0, 10.0, 5)):
        assert np.max(np.abs(rho - rho0)) <= 1e-15


def test_integrator_agrees_with_spectral():
    cfg, liouvillian = _reference_liouvillian(1e-4, t_max=25.0, dt=0.5)
    rho0 = _vacuum_density(cfg)
    times = cfg.times()
    spectral = evolve_spectral(liouvillian, rho0, times)
    integrated = evolve_integrate(liouvillian, rho0, times)
    dev = max(
        float(np.max(np.abs(a - b))) for a, b in zip(spectral, integrated)
    )
    assert dev <= 1e-6


def test_integrator_trace_drift_bounded():
    cfg, liouvillian = _reference_liouvillian(1e-4, t_max=25.0, dt=0.5)
    rho0 = _vacuum_density(cfg)
    for rho in evolve_integrate(liouvillian, rho0, cfg.times()):
        assert abs(np.trace(rho).real - 1.0) <= 1e-7


def test_integrator_step_guard():
    liouvillian = _decay_liouvillian(5.0)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[3, 3] = 1.0
    with pytest.raises(StepSizeError, match="dt_internal"):
        evolve_integrate(liouvillian, rho0, np.linspace(0.0, 50.0, 6), dt_internal=1.0)


def test_spectral_refuses_defective_generator():
    nilpotent = np.zeros((4, 4), dtype=complex)
    nilpotent[0, 1] = 1.0
    liouvillian = Liouvillian(nilpotent, 2)
    rho0 = np.eye(2, dtype=complex) / 2.0
    with pytest.raises(SpectralFallbackError, match="condition"):
        evolve_spectral(liouvillian, rho0, [0.0, 1.0])


def test_grid_validation():
    cfg, liouvillian = _reference_liouvillian(1e-4)
    rho0 = _vacuum_density(cfg)
    with pytest.raises(ValueError):
        evolve_spectral(liouvillian, rho0, [0.0, 2.0, 1.0])
    with pytest.raises(ValueError):
        evolve_integrate(liouvillian, rho0, [])


def test_initial_density_validation():
    cfg, liouvillian = _reference_liouvillian(1e-4)
    with pytest.raises(ValueError):
        evolve_spectral(liouvillian, np.eye(16, dtype=complex), [0.0, 1.0])
    with pytest.raises(HermiticityError):
        bad = _vacuum_density(cfg)
        bad[0, 1] = 0.5
        evolve_spectral(liouvillian, bad, [0.0, 1.0])


def test_run_open_kappa_zero_matches_run_closed(open_records):
    closed = run_closed(open_preset(0.0))
    for rc, ro in zip(closed, open_records[0.0]):
        assert max(
            abs(a - b) for a, b in zip(rc.qubit_populations(), ro.qubit_populations())
        ) <= 1e-7
        assert max(abs(a - b) for a, b in zip(rc.bell_probs, ro.bell_probs)) <= 1e-7
        assert abs(rc.concurrence - ro.concurrence) <= 1e-7
        assert abs(rc.leakage - ro.leakage) <= 1e-7
        assert abs(rc.norm_or_trace - ro.norm_or_trace) <= 1e-7


def test_run_open_integrate_solver():
    cfg = open_preset(1e-4, t_max=10.0, dt=1.0)
    spectral = run_open(cfg, solver="spectral")
    integrated = run_open(cfg, solver="integrate")
    for rs, ri in zip(spectral, integrated):
        assert abs(rs.concurrence - ri.concurrence) <= 1e-6
        assert abs(rs.norm_or_trace - ri.norm_or_trace) <= 1e-6


def test_run_open_rejects_unknown_solver():
    with pytest.raises(ValueError):
        run_open(open_preset(1e-4), solver="magic")


def test_trace_preserved_on_reference_runs(open_states):
    for states in open_states.values():
        for rho in states:
            assert abs(np.trace(rho).real - 1.0) <= 1e-8


def test_positivity_on_reference_runs(open_states):
    for states in open_states.values():
        for rho in states:
            assert np.linalg.eigvalsh(rho).min() >= -1e-8


def test_hermiticity_on_reference_runs(open_states):
    for states in open_states.values():
        for rho in states:
            assert np.max(np.abs(rho - rho.conj().T)) <= 1e-10


def test_open_cutoff_insensitivity():
    base = run_open(open_preset(1e-3))
    bigger = run_open(open_preset(1e-3, cutoff_a=4, cutoff_b=4))
    dev = max(abs(a.concurrence - b.concurrence) for a, b in zip(base, bigger))
    assert dev <= 1e-4
