"""Continuous and stroboscopic evolution of density matrices.

The clock protocol: start in a shift eigenvector, evolve by the interval
dtau tick by tick.  Each tick moves the occupied Fourier-sector site by k
places in a fixed direction, so the site index counts ticks; after N ticks
the state is back where it started.  The simulator always computes the true
unitary evolution -- the rigid lattice shift is only ever a cross-check,
and the shift direction is measured from the evolution, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IncompatibleSpectrum,
    IndexOutOfRange,
    InternalConsistency,
)
from .numerics import exp_hermitian
from .phase_space import OperatorBasis, check_density, wigner_of_density
from .schwinger import SchwingerPair, shift_eigenvector
from .spectrum import Spectrum, SpectrumDecomposition


@dataclass(frozen=True)
class ClockStep:
    """Occupancy record at tick j (time j * dtau)."""

    j: int
    time: float
    occupied_index: int
    occupied_probability: float
    max_offsite: float


@dataclass(frozen=True)
class ClockTrace:
    """Tick-by-tick record of a clock run plus the measured direction."""

    dim: int
    k: int
    direction_sign: int
    delta_tau: float
    steps: tuple


def evolve_density(rho, hamiltonian, t: float) -> np.ndarray:
    """Conjugate a density matrix by the propagator exp(-i*H*t).

    Purity is preserved; t = 0 is the identity.
    """
    rho = check_density(rho)
    hamiltonian = np.asarray(hamiltonian, dtype=np.complex128)
    if hamiltonian.shape != rho.shape:
        raise DimensionMismatch(
            f"hamiltonian shape {hamiltonian.shape} != state shape {rho.shape}"
        )
    g = exp_hermitian(hamiltonian, t)
    return g @ rho @ g.conj().T


def stroboscopic_step(grid, k: int, sign: int) -> np.ndarray:
    """Rigid one-tick shift rule: permute grid columns by sign*k (mod N).

    A pure column permutation, so the row (energy) marginal is untouched.
    """
    grid = np.asarray(grid)
    n = grid.shape[1]
    if not 0 <= k < n:
        raise ValueError(f"shift power k={k} outside 0..{n - 1}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return np.roll(grid, sign * k, axis=1)


def _fourier_populations(pair: SchwingerPair, rho: np.ndarray) -> np.ndarray:
    # <s_n| rho |s_n> for every shift eigenvector
    return np.real(np.einsum("kn,nm,km->k", pair.fourier, rho, pair.fourier.conj()))


def measure_shift_sign(pair: SchwingerPair, decomp: SpectrumDecomposition) -> int:
    """Direction of the per-tick site shift, measured by one direct evolution.

    Evolves |s_0> by dtau and checks whether the occupied site moved to +k
    or -k (mod N); those differ for every k in 1..N-1 at odd prime N.
    """
    n = pair.dim
    hamiltonian = np.diag(np.array([float(e) for e in decomp.energies()], dtype=np.complex128))
    state = shift_eigenvector(pair, 0)
    moved = exp_hermitian(hamiltonian, decomp.delta_tau) @ state
    populations = np.abs(pair.fourier @ moved) ** 2
    occupied = int(np.argmax(populations))
    if occupied == decomp.k % n:
        return 1
    if occupied == (-decomp.k) % n:
        return -1
    raise InternalConsistency(
        f"one tick moved the occupied site to {occupied}, expected +-{decomp.k} (mod {n})"
    )


def _require_match(decomp: SpectrumDecomposition, spec: Spectrum) -> None:
    if not decomp.matches(spec):
        raise IncompatibleSpectrum(
            "decomposition does not reproduce the spectrum exactly"
        )


def clock_run(
    pair: SchwingerPair,
    basis: OperatorBasis,
    decomp: SpectrumDecomposition,
    spec: Spectrum,
    initial_index: int,
    steps: int,
) -> ClockTrace:
    """Run the clock protocol for the given number of ticks.

    The state starts in shift eigenvector |s_i| and is propagated tick by
    tick with the true unitary evolution (never the shift rule).  Occupancy
    is read from the Wigner grid column sums; ties break to the smallest
    index.  One record is emitted per tick j = 0..steps.  The direction sign
    is set at tick 1 and asserted constant for the whole trace.
    """
    n = pair.dim
    if basis.dim != n or decomp.dim != n or spec.dim != n:
        raise DimensionMismatch("pair, basis, decomposition, and spectrum dims differ")
    _require_match(decomp, spec)
    if not 0 <= initial_index < n:
        raise IndexOutOfRange(f"initial index {initial_index} outside 0..{n - 1}")
    if steps < 1:
        raise ValueError("steps must be >= 1")

    hamiltonian = np.diag(spec.as_floats().astype(np.complex128))
    dtau = decomp.delta_tau
    state = shift_eigenvector(pair, initial_index)
    rho = np.outer(state, state.conj())

    records = []
    for j in range(steps + 1):
        grid = wigner_of_density(basis, rho)
        populations = grid.real.sum(axis=0) / n
        occupied = int(np.argmax(populations))
        offsite = populations.copy()
        offsite[occupied] = -np.inf
        records.append(
            ClockStep(
                j=j,
                time=j * dtau,
                occupied_index=occupied,
                occupied_probability=float(populations[occupied]),
                max_offsite=float(np.max(offsite)),
            )
        )
        if j < steps:
            rho = evolve_density(rho, hamiltonian, dtau)

    first = records[1].occupied_index
    if first == (initial_index + decomp.k) % n:
        sign = 1
    elif first == (initial_index - decomp.k) % n:
        sign = -1
    else:
        raise InternalConsistency(
            f"tick 1 occupies site {first}, expected {initial_index} +- {decomp.k} (mod {n})"
        )
    for rec in records:
        expected = (initial_index + sign * rec.j * decomp.k) % n
        if rec.occupied_index != expected:
            raise InternalConsistency(
                f"tick {rec.j} occupies site {rec.occupied_index}, expected {expected}"
            )

    return ClockTrace(
        dim=n, k=decomp.k, direction_sign=sign, delta_tau=dtau, steps=tuple(records)
    )


def shift_vs_evolution_residual(
    pair: SchwingerPair,
    basis: OperatorBasis,
    decomp: SpectrumDecomposition,
    spec: Spectrum,
    rho,
    n_steps: int,
) -> float:
    """Largest entrywise gap between direct evolution and the shift rule.

    Path A evolves rho tick by tick and maps the final state to its Wigner
    grid; path B applies the rigid column shift (with the measured sign) to
    the initial grid the same number of times.  Works for any valid density
    matrix, mixed states included.
    """
    n = pair.dim
    if basis.dim != n or decomp.dim != n or spec.dim != n:
        raise DimensionMismatch("pair, basis, decomposition, and spectrum dims differ")
    _require_match(decomp, spec)
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")

    rho = check_density(rho)
    sign = measure_shift_sign(pair, decomp)
    hamiltonian = np.diag(spec.as_floats().astype(np.complex128))

    evolved = rho
    for _ in range(n_steps):
        evolved = evolve_density(evolved, hamiltonian, decomp.delta_tau)
    direct_grid = wigner_of_density(basis, evolved)

    shifted_grid = wigner_of_density(basis, rho)
    for _ in range(n_steps):
        shifted_grid = stroboscopic_step(shifted_grid, decomp.k % n, sign)

    return float(np.max(np.abs(direct_grid - shifted_grid)))
