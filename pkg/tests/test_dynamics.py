import numpy as np
import pytest

from qclock import (
    IncompatibleSpectrum,
    Spectrum,
    clock_power,
    clock_run,
    decompose_spectrum,
    evolve_density,
    exp_hermitian,
    measure_shift_sign,
    shift_eigenvector,
    shift_vs_evolution_residual,
    stroboscopic_step,
    wigner_of_density,
)
from conftest import cached_basis, cached_pair

HARMONIC5 = Spectrum(5, (0, 1, 2, 3, 4))
SKEWED5 = Spectrum(5, (0, 7, 24, 51, 88))


def pure_state(pair, index):
    vec = shift_eigenvector(pair, index)
    return np.outer(vec, vec.conj())


def random_mixed(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_zero_time_is_identity():
    rng = np.random.default_rng(30)
    rho = random_mixed(rng, 5)
    h = np.diag(np.arange(5.0))
    assert np.max(np.abs(evolve_density(rho, h, 0.0) - rho)) < 1e-12


def test_purity_preserved():
    rng = np.random.default_rng(31)
    rho = random_mixed(rng, 5)
    h = np.diag(np.arange(5.0))
    out = evolve_density(rho, h, 0.83)
    assert abs(np.trace(out @ out).real - np.trace(rho @ rho).real) < 1e-10


def test_one_tick_moves_down_by_one():
    pair = cached_pair(5)
    rho = pure_state(pair, 0)
    out = evolve_density(rho, np.diag(np.arange(5.0)), 2 * np.pi / 5)
    assert np.max(np.abs(out - pure_state(pair, 4))) < 1e-10


def test_energy_eigenstate_is_stationary():
    rho = np.zeros((5, 5), dtype=complex)
    rho[2, 2] = 1.0
    out = evolve_density(rho, np.diag(np.arange(5.0)), 1.7)
    assert np.max(np.abs(out - rho)) < 1e-12


def test_stroboscopic_step_constant_grid_unchanged():
    grid = np.full((5, 5), 0.2)
    assert np.array_equal(stroboscopic_step(grid, 2, -1), grid)


def test_stroboscopic_step_moves_delta_column():
    grid = np.zeros((5, 5))
    grid[:, 3] = 1.0
    out = stroboscopic_step(grid, 2, -1)
    expected = np.zeros((5, 5))
    expected[:, 1] = 1.0
    assert np.array_equal(out, expected)


def test_stroboscopic_step_preserves_energy_marginal():
    rng = np.random.default_rng(32)
    grid = rng.normal(size=(5, 5))
    out = stroboscopic_step(grid, 3, -1)
    assert np.allclose(out.sum(axis=1), grid.sum(axis=1))


def test_stroboscopic_full_cycle():
    rng = np.random.default_rng(33)
    grid = rng.normal(size=(7, 7))
    out = grid
    for _ in range(7):
        out = stroboscopic_step(out, 3, -1)
    assert np.array_equal(out, grid)


def test_measured_shift_sign_is_negative():
    pair = cached_pair(5)
    assert measure_shift_sign(pair, decompose_spectrum(HARMONIC5)) == -1
    assert measure_shift_sign(pair, decompose_spectrum(SKEWED5)) == -1


def test_shift_rule_matches_direct_evolution_for_delta_grid():
    # the measured sign makes the shift rule reproduce the evolved grid
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    sign = measure_shift_sign(pair, dec)
    rho = pure_state(pair, 2)
    evolved = evolve_density(rho, np.diag(HARMONIC5.as_floats()), dec.delta_tau)
    direct = wigner_of_density(basis, evolved)
    shifted = stroboscopic_step(wigner_of_density(basis, rho), dec.k, sign)
    assert np.max(np.abs(direct - shifted)) < 1e-10


def test_clock_run_harmonic_sequence():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    trace = clock_run(pair, basis, dec, HARMONIC5, 0, 5)
    assert [rec.occupied_index for rec in trace.steps] == [0, 4, 3, 2, 1, 0]
    assert trace.direction_sign == -1
    assert trace.k == 1


def test_clock_run_skewed_sequence():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(SKEWED5)
    trace = clock_run(pair, basis, dec, SKEWED5, 0, 5)
    assert [rec.occupied_index for rec in trace.steps] == [0, 3, 1, 4, 2, 0]


def test_clock_run_occupancy_sharp():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(SKEWED5)
    trace = clock_run(pair, basis, dec, SKEWED5, 1, 10)
    for rec in trace.steps:
        assert rec.occupied_probability >= 1 - 1e-9
        assert rec.max_offsite <= 1e-9
    assert trace.steps[5].occupied_index == trace.steps[0].occupied_index


def test_clock_run_covers_every_site():
    pair, basis = cached_pair(7), cached_basis(7)
    spec = Spectrum(7, tuple(range(7)))
    dec = decompose_spectrum(spec)
    for start in range(7):
        trace = clock_run(pair, basis, dec, spec, start, 7)
        occupied = [rec.occupied_index for rec in trace.steps]
        assert sorted(occupied[:7]) == list(range(7))
        assert occupied[7] == start


def test_clock_run_times_and_metadata():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    trace = clock_run(pair, basis, dec, HARMONIC5, 0, 3)
    for j, rec in enumerate(trace.steps):
        assert rec.j == j
        assert abs(rec.time - j * dec.delta_tau) < 1e-15


def test_clock_run_rejects_mismatched_spectrum():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    with pytest.raises(IncompatibleSpectrum):
        clock_run(pair, basis, dec, SKEWED5, 0, 5)


def test_shift_vs_evolution_pure_state():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    rho = pure_state(pair, 2)
    assert shift_vs_evolution_residual(pair, basis, dec, HARMONIC5, rho, 3) < 1e-9


def test_shift_vs_evolution_random_mixed():
    pair, basis = cached_pair(7), cached_basis(7)
    spec = Spectrum(7, tuple(range(7)))
    dec = decompose_spectrum(spec)
    rng = np.random.default_rng(34)
    rho = random_mixed(rng, 7)
    assert shift_vs_evolution_residual(pair, basis, dec, spec, rho, 7) < 1e-9


def test_shift_vs_evolution_maximally_mixed():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(SKEWED5)
    assert shift_vs_evolution_residual(pair, basis, dec, SKEWED5, np.eye(5) / 5, 4) < 1e-12


@pytest.mark.parametrize("spec", [HARMONIC5, SKEWED5])
def test_hypothesis_soundness_up_to_two_cycles(spec):
    pair = cached_pair(5)
    dec = decompose_spectrum(spec)
    h = np.diag(spec.as_floats())
    for n in range(1, 11):
        u = exp_hermitian(h, n * dec.delta_tau)
        assert np.max(np.abs(u - clock_power(pair, -(n * dec.k) % 5))) < 1e-10


def test_clock_periodicity_at_full_cycle():
    pair = cached_pair(5)
    dec = decompose_spectrum(SKEWED5)
    rho0 = pure_state(pair, 3)
    rho = rho0
    for _ in range(5):
        rho = evolve_density(rho, np.diag(SKEWED5.as_floats()), dec.delta_tau)
    assert np.max(np.abs(rho - rho0)) < 1e-10


def offsite_after(pair, basis, spec, t):
    rho = evolve_density(pure_state(pair, 0), np.diag(spec.as_floats()), t)
    populations = wigner_of_density(basis, rho).real.sum(axis=0) / spec.dim
    populations[int(np.argmax(populations))] = -np.inf
    return float(np.max(populations))


def test_half_tick_is_not_stroboscopic():
    pair, basis = cached_pair(5), cached_basis(5)
    dec = decompose_spectrum(HARMONIC5)
    assert offsite_after(pair, basis, HARMONIC5, dec.delta_tau / 2) > 0.01


def test_incompatible_spectrum_never_confines():
    pair, basis = cached_pair(5), cached_basis(5)
    squares = Spectrum(5, (0, 1, 4, 9, 16))
    scan = [2 * np.pi * j / 40 for j in range(1, 40)]
    assert min(offsite_after(pair, basis, squares, t) for t in scan) > 0.01


def test_stroboscopic_step_gates():
    grid = np.zeros((5, 5))
    with pytest.raises(ValueError):
        stroboscopic_step(grid, 5, -1)
    with pytest.raises(ValueError):
        stroboscopic_step(grid, 1, 2)
