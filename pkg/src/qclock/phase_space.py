"""Hermitian operator basis on the N x N phase-space lattice.

The basis element at lattice point (m, n) is a double Fourier sum of
clock/shift products over the symmetric exponent range -(N-1)/2..(N-1)/2,

    B(m, n) = (1/N) * sum_{j,l} clock^j shift^l
              * exp(i*pi*j*l/N) * exp(-2*pi*i*(m*j + n*l)/N),

where m indexes the diagonal (energy) sector and n the Fourier-dual sector.
The N^2 elements are Hermitian, have unit trace, and are trace-orthogonal
with norm N, which makes mapping an operator to its lattice representative
and back a pair of plain tensor contractions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotADensityMatrix
from .numerics import hermitian_eig, hermiticity_defect
from .schwinger import SchwingerPair, clock_power, shift_power

DENSITY_HERM_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-10
DENSITY_EIG_FLOOR = -1e-10


@dataclass(frozen=True)
class OperatorBasis:
    """Precomputed basis elements, shape (N, N, N, N); elements[m, n] is B(m, n)."""

    dim: int
    elements: np.ndarray


def build_basis(pair: SchwingerPair) -> OperatorBasis:
    """Assemble and cache all N^2 basis matrices for the given pair."""
    n = pair.dim
    half = (n - 1) // 2
    sym = np.arange(-half, half + 1)

    weighted = np.empty((n, n, n, n), dtype=np.complex128)
    for a, j in enumerate(sym):
        cj = clock_power(pair, j)
        for b, l in enumerate(sym):
            half_phase = np.exp(1j * np.pi * ((j * l) % (2 * n)) / n)
            weighted[a, b] = (cj @ shift_power(pair, l)) * half_phase

    # fourier[m, a] = exp(-2*pi*i*m*sym[a]/N); contract j then l
    fourier = np.exp(-2j * np.pi * (np.outer(np.arange(n), sym) % n) / n)
    partial = np.tensordot(fourier, weighted, axes=(1, 0))  # (m, b, r, s)
    elements = np.einsum("nb,mbrs->mnrs", fourier, partial) / n
    elements.setflags(write=False)
    return OperatorBasis(dim=n, elements=elements)


def _require_dim(basis: OperatorBasis, arr: np.ndarray, what: str) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.complex128)
    if arr.shape != (basis.dim, basis.dim):
        raise DimensionMismatch(
            f"{what} has shape {arr.shape}, expected ({basis.dim}, {basis.dim})"
        )
    return arr


def map_operator(basis: OperatorBasis, op) -> np.ndarray:
    """Lattice representative of an operator: grid[m, n] = Tr[B(m, n)^dag op]."""
    op = _require_dim(basis, op, "operator")
    return np.einsum("mnrs,rs->mn", basis.elements.conj(), op)


def unmap_grid(basis: OperatorBasis, grid) -> np.ndarray:
    """Operator with the given lattice representative: (1/N) sum grid[m, n] B(m, n)."""
    grid = _require_dim(basis, grid, "grid")
    return np.einsum("mn,mnrs->rs", grid, basis.elements) / basis.dim


def check_density(rho) -> np.ndarray:
    """Validate a density matrix, naming the violated sub-check on failure.

    Requires Hermiticity within 1e-10, unit trace within 1e-10, and all
    eigenvalues >= -1e-10.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    defect = hermiticity_defect(rho)
    if defect > DENSITY_HERM_TOL:
        raise NotADensityMatrix(f"not Hermitian: max |rho - rho^dag| = {defect:.3e}")
    trace_defect = abs(complex(np.trace(rho)) - 1.0)
    if trace_defect > DENSITY_TRACE_TOL:
        raise NotADensityMatrix(f"trace differs from 1 by {trace_defect:.3e}")
    # symmetrize: the 1e-10 hermiticity allowance exceeds the eigensolver's gate
    smallest = float(hermitian_eig(0.5 * (rho + rho.conj().T)).values[0])
    if smallest < DENSITY_EIG_FLOOR:
        raise NotADensityMatrix(f"negative eigenvalue {smallest:.3e}")
    return rho


def wigner_of_density(basis: OperatorBasis, rho) -> np.ndarray:
    """Discrete Wigner function of a density matrix.

    The grid is real (within roundoff) because every basis element is
    Hermitian, and averages to 1: (1/N) * sum grid = Tr rho = 1.  Column
    sums give N times the Fourier-sector populations, row sums N times the
    energy-sector populations.
    """
    rho = check_density(rho)
    rho = _require_dim(basis, rho, "density matrix")
    return map_operator(basis, rho)
