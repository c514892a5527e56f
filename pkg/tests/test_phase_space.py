import numpy as np
import pytest

from qclock import (
    DimensionMismatch,
    NotADensityMatrix,
    check_density,
    clock_power,
    map_operator,
    shift_eigenvector,
    unmap_grid,
    wigner_of_density,
)
from conftest import cached_basis, cached_pair


def all_elements(basis):
    n = basis.dim
    return [basis.elements[m, nn] for m in range(n) for nn in range(n)]


def test_unit_traces_n3():
    for g in all_elements(cached_basis(3)):
        assert abs(np.trace(g) - 1.0) < 1e-12


def test_hermiticity_n3():
    for g in all_elements(cached_basis(3)):
        assert np.max(np.abs(g - g.conj().T)) < 1e-12


def test_orthogonality_spot_n5():
    basis = cached_basis(5)
    inner = np.vdot(basis.elements[0, 0], basis.elements[1, 2])
    assert abs(inner) < 1e-10


@pytest.mark.parametrize("dim", [3, 5, 7])
def test_orthogonality_full_gram(dim):
    basis = cached_basis(dim)
    flat = basis.elements.reshape(dim * dim, dim * dim)
    gram = flat.conj() @ flat.T
    assert np.max(np.abs(gram - dim * np.eye(dim * dim))) < 1e-10


@pytest.mark.parametrize("dim", [3, 5, 7])
def test_sum_of_elements_is_scaled_identity(dim):
    basis = cached_basis(dim)
    total = basis.elements.sum(axis=(0, 1))
    assert np.max(np.abs(total - dim * np.eye(dim))) < 1e-10


def test_identity_maps_to_constant_grid(basis5):
    grid = map_operator(basis5, np.eye(5))
    assert np.max(np.abs(grid - 1.0)) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 4])
def test_clock_inverse_power_grid(basis5, pair5, k):
    grid = map_operator(basis5, clock_power(pair5, -k))
    expected = np.exp(-2j * np.pi * k * np.arange(5) / 5)[:, None] * np.ones((1, 5))
    assert np.max(np.abs(grid - expected)) < 1e-10


def test_propagator_grid_is_diagonal_phases(basis5):
    energies = np.array([0.3, 1.7, -2.2, 0.9, 4.1])
    dt = 0.37
    op = np.diag(np.exp(-1j * energies * dt))
    grid = map_operator(basis5, op)
    expected = np.exp(-1j * energies * dt)[:, None] * np.ones((1, 5))
    assert np.max(np.abs(grid - expected)) < 1e-10


def test_unmap_constant_grid_gives_identity(basis5):
    op = unmap_grid(basis5, np.ones((5, 5)))
    assert np.max(np.abs(op - np.eye(5))) < 1e-10


def test_unmap_phase_grid_gives_clock_power(basis5, pair5):
    grid = np.exp(-2j * np.pi * 2 * np.arange(5) / 5)[:, None] * np.ones((1, 5))
    op = unmap_grid(basis5, grid)
    assert np.max(np.abs(op - clock_power(pair5, -2))) < 1e-10


@pytest.mark.parametrize("dim", [3, 5, 7])
def test_roundtrip_seeded_operators(dim):
    basis = cached_basis(dim)
    rng = np.random.default_rng(100 + dim)
    for _ in range(50):
        op = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        back = unmap_grid(basis, map_operator(basis, op))
        assert np.max(np.abs(back - op)) < 1e-10


def test_map_linearity(basis5):
    rng = np.random.default_rng(8)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    ca, cb = 0.7 - 0.3j, -1.1 + 0.4j
    combined = map_operator(basis5, ca * a + cb * b)
    split = ca * map_operator(basis5, a) + cb * map_operator(basis5, b)
    assert np.max(np.abs(combined - split)) < 1e-12


def test_dimension_mismatch(basis5):
    with pytest.raises(DimensionMismatch):
        map_operator(basis5, np.eye(3))
    with pytest.raises(DimensionMismatch):
        unmap_grid(basis5, np.ones((3, 3)))


def test_wigner_of_shift_eigenstate_is_one_column(basis5, pair5):
    vec = shift_eigenvector(pair5, 1)
    grid = wigner_of_density(basis5, np.outer(vec, vec.conj()))
    expected = np.zeros((5, 5))
    expected[:, 1] = 1.0
    assert np.max(np.abs(grid - expected)) < 1e-10


def test_wigner_of_energy_eigenstate_is_one_row(basis5):
    rho = np.zeros((5, 5), dtype=complex)
    rho[3, 3] = 1.0
    grid = wigner_of_density(basis5, rho)
    expected = np.zeros((5, 5))
    expected[3, :] = 1.0
    assert np.max(np.abs(grid - expected)) < 1e-10


def test_wigner_of_maximally_mixed_is_flat(basis5):
    grid = wigner_of_density(basis5, np.eye(5) / 5)
    assert np.max(np.abs(grid - 0.2)) < 1e-10


def test_wigner_reality_and_normalization(basis5):
    rng = np.random.default_rng(9)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    grid = wigner_of_density(basis5, rho)
    assert np.max(np.abs(grid.imag)) < 1e-10
    assert abs(grid.real.sum() / 5 - 1.0) < 1e-10


def test_wigner_marginals(basis5, pair5):
    rng = np.random.default_rng(10)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    grid = wigner_of_density(basis5, rho).real
    energy_marginal = grid.sum(axis=1)
    assert np.max(np.abs(energy_marginal - 5 * np.diag(rho).real)) < 1e-10
    fourier_pops = np.array(
        [np.vdot(shift_eigenvector(pair5, k), rho @ shift_eigenvector(pair5, k)).real for k in range(5)]
    )
    assert np.max(np.abs(grid.sum(axis=0) - 5 * fourier_pops)) < 1e-10


def test_density_checks_name_the_failure(basis5):
    with pytest.raises(NotADensityMatrix, match="Hermitian"):
        wigner_of_density(basis5, np.triu(np.ones((5, 5))) / 5)
    with pytest.raises(NotADensityMatrix, match="trace"):
        wigner_of_density(basis5, np.eye(5))
    bad = np.diag([1.5, -0.5, 0.0, 0.0, 0.0]).astype(complex)
    with pytest.raises(NotADensityMatrix, match="negative eigenvalue"):
        wigner_of_density(basis5, bad)


def test_check_density_accepts_pure_state():
    vec = np.array([1.0, 1j, 0.0]) / np.sqrt(2)
    check_density(np.outer(vec, vec.conj()))
