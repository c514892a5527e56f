"""The time-interval operator of a clock-compatible spectrum.

For a spectrum E_m = omega*(k*m + N*f(m)) the Hermitian operator

    T = dtau * sum_l l |s_l><s_l|,   dtau = 2*pi/(N*omega),

built on the shift eigenvectors |s_l>, generates cyclic shifts in the
energy ladder: exp(-i*T*(E_{m+s} - E_m)) equals shift^(-k*s) because the
integer f-part only contributes full turns of phase.  Its exponentials and
the propagator exchange with a scalar phase exp(sigma*2*pi*i*n*j*k^2/N)
whose sign sigma is measured from the matrices, never assumed.

T is diagonal in the Fourier-dual basis while the Hamiltonian is diagonal
in the clock basis, so the two eigenbases are mutually unbiased.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InternalConsistency, NotScalarMultiple
from .numerics import exp_from_eig, exp_hermitian, hermitian_eig
from .phase_space import OperatorBasis, map_operator
from .schwinger import SchwingerPair, build_pair, shift_power
from .spectrum import Spectrum, SpectrumDecomposition

_SCALAR_TOL = 1e-10


@dataclass(frozen=True)
class TimeIntervalOperator:
    """T in the clock basis, with its (analytic) eigenvalues dtau * l."""

    dim: int
    delta_tau: float
    matrix: np.ndarray
    eigenvalues: np.ndarray
    decomp: SpectrumDecomposition


def build_time_operator(pair: SchwingerPair, decomp: SpectrumDecomposition) -> TimeIntervalOperator:
    """Assemble T = dtau * sum_l l |s_l><s_l| in the clock basis."""
    if pair.dim != decomp.dim:
        raise DimensionMismatch(f"pair dim {pair.dim} != decomposition dim {decomp.dim}")
    n = pair.dim
    dtau = decomp.delta_tau
    eigvecs = pair.fourier.conj().T  # column l is the l-th shift eigenvector
    eigvals = dtau * np.arange(n)
    matrix = (eigvecs * eigvals) @ eigvecs.conj().T
    matrix.setflags(write=False)
    eigvals.setflags(write=False)
    return TimeIntervalOperator(
        dim=n, delta_tau=dtau, matrix=matrix, eigenvalues=eigvals, decomp=decomp
    )


def time_operator_grid(basis: OperatorBasis, top: TimeIntervalOperator) -> np.ndarray:
    """Lattice representative of T; equals dtau * n on every row (computed, not asserted)."""
    if basis.dim != top.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != operator dim {top.dim}")
    return map_operator(basis, top.matrix)


def verify_energy_shift(top: TimeIntervalOperator, spec: Spectrum, s: int) -> float:
    """Residual of the ladder-shift identity at gap s.

    Returns max over m in 0..N-1-s of
        || exp(-i*T*(E_{m+s} - E_m)) - shift^(-k*s) ||_max.
    Energy indices are a plain list (no wrap-around), since wrapping would
    change the difference by something other than a full phase turn.  For a
    spectrum matching the decomposition T was built from this is roundoff;
    for anything else it is O(1) -- the function measures, it does not gate.
    """
    n = top.dim
    if spec.dim != n:
        raise DimensionMismatch(f"spectrum dim {spec.dim} != operator dim {n}")
    if not 0 <= s < n:
        raise ValueError(f"gap s={s} outside 0..{n - 1}")
    pair = build_pair(n)
    reference = shift_power(pair, -top.decomp.k * s)
    energies = spec.energies
    es = hermitian_eig(top.matrix)  # one decomposition serves every gap
    worst = 0.0
    for m in range(n - s):
        gap = float(energies[m + s] - energies[m])
        w = exp_from_eig(es, gap)
        worst = max(worst, float(np.max(np.abs(w - reference))))
    return worst


def verify_weyl_pair(
    top: TimeIntervalOperator, decomp: SpectrumDecomposition, n: int, j: int
) -> complex:
    """Measured exchange phase of the propagator with exp(-i*T*(E_j - E_0)).

    Returns the scalar c with G*W = c*W*G, where G propagates by n ticks and
    W = exp(-i*T*(E_j - E_0)); validated entrywise to 1e-10 (failure raises
    NotScalarMultiple and indicates a bug).  |c| = 1 and c^N = 1.
    """
    if top.dim != decomp.dim:
        raise DimensionMismatch(f"operator dim {top.dim} != decomposition dim {decomp.dim}")
    if n < 0:
        raise ValueError("tick count must be >= 0")
    if not 0 <= j < top.dim:
        raise IndexOutOfRange(f"ladder index {j} outside 0..{top.dim - 1}")

    energies = [float(e) for e in decomp.energies()]
    hamiltonian = np.diag(np.array(energies, dtype=np.complex128))
    propagator = exp_hermitian(hamiltonian, n * top.delta_tau)
    wexp = exp_hermitian(top.matrix, energies[j] - energies[0])
    lhs = propagator @ wexp
    rhs = wexp @ propagator
    idx = int(np.argmax(np.abs(rhs)))
    c = complex(lhs.flat[idx] / rhs.flat[idx])
    defect = float(np.max(np.abs(lhs - c * rhs)))
    if defect > _SCALAR_TOL:
        raise NotScalarMultiple(
            f"propagator and ladder-shift exponential do not exchange with a "
            f"scalar (defect {defect:.3e})"
        )
    return c


def measure_weyl_sign(top: TimeIntervalOperator, decomp: SpectrumDecomposition) -> int:
    """Sign sigma in c(n, j) = exp(sigma*2*pi*i*n*j*k^2/N), measured at (1, 1)."""
    c = verify_weyl_pair(top, decomp, 1, 1)
    n = top.dim
    angle = 2.0 * np.pi * ((decomp.k * decomp.k) % n) / n
    if abs(c - np.exp(-1j * angle)) < 1e-8:
        return -1
    if abs(c - np.exp(1j * angle)) < 1e-8:
        return 1
    raise InternalConsistency(f"exchange phase {c!r} matches neither sign convention")
