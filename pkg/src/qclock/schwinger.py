"""Schwinger clock-and-shift unitary pair on an odd-prime dimensional space.

Labels run over 0..N-1 with mod-N arithmetic; the diagonal (clock) basis is
the computational basis, so every matrix in the package is expressed in it.
The two eigenbases are linked by the discrete Fourier transform and the pair
obeys a scalar-phase exchange rule whose sign is *measured*, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionNotOddPrime, IndexOutOfRange, NotScalarMultiple
from .numerics import is_odd_prime

_SCALAR_TOL = 1e-12


@dataclass(frozen=True)
class SchwingerPair:
    """The unitary pair plus the Fourier overlap table.

    clock   -- diagonal, entries exp(2*pi*i*k/N)
    shift   -- cyclic permutation taking basis vector e_n to e_{n-1 (mod N)}
    fourier -- row k holds the overlaps of shift-eigenvector k with the
               clock basis: fourier[k, n] = exp(-2*pi*i*k*n/N)/sqrt(N)
    """

    dim: int
    clock: np.ndarray
    shift: np.ndarray
    fourier: np.ndarray


def build_pair(dim: int) -> SchwingerPair:
    """Construct the clock/shift pair at an odd prime dimension.

    Raises DimensionNotOddPrime otherwise (primality by trial division).
    """
    if not is_odd_prime(dim):
        raise DimensionNotOddPrime(f"dimension must be an odd prime, got {dim}")
    labels = np.arange(dim)
    clock = np.diag(np.exp(2j * np.pi * labels / dim))
    shift = np.roll(np.eye(dim, dtype=np.complex128), -1, axis=0)
    fourier = np.exp(-2j * np.pi * (np.outer(labels, labels) % dim) / dim) / np.sqrt(dim)
    for arr in (clock, shift, fourier):
        arr.setflags(write=False)
    return SchwingerPair(dim=dim, clock=clock, shift=shift, fourier=fourier)


def clock_power(pair: SchwingerPair, exponent: int) -> np.ndarray:
    """clock**exponent, any integer exponent, reduced mod N.

    Built directly from the reduced phase angles, so negative powers are as
    accurate as positive ones.
    """
    e = exponent % pair.dim
    labels = np.arange(pair.dim)
    return np.diag(np.exp(2j * np.pi * ((e * labels) % pair.dim) / pair.dim))


def shift_power(pair: SchwingerPair, exponent: int) -> np.ndarray:
    """shift**exponent, any integer exponent, reduced mod N (exact 0/1 matrix)."""
    e = exponent % pair.dim
    return np.roll(np.eye(pair.dim, dtype=np.complex128), -e, axis=0)


def shift_eigenvector(pair: SchwingerPair, k: int) -> np.ndarray:
    """k-th eigenvector of the shift operator, in the clock basis.

    Components are exp(+2*pi*i*k*n/N)/sqrt(N); the eigenvalue is
    exp(2*pi*i*k/N).  Raises IndexOutOfRange unless 0 <= k < N.
    """
    if not 0 <= k < pair.dim:
        raise IndexOutOfRange(f"label {k} outside 0..{pair.dim - 1}")
    return pair.fourier[k].conj().copy()


def commutation_phase(pair: SchwingerPair, j: int, l: int) -> complex:
    """The scalar c with clock^j shift^l = c * shift^l clock^j.

    c is read off from the first nonzero entry pair and then validated
    entrywise; a validation failure raises NotScalarMultiple (which would
    indicate a bug, not a physical condition).  |c| = 1 always.
    """
    lhs = clock_power(pair, j) @ shift_power(pair, l)
    rhs = shift_power(pair, l) @ clock_power(pair, j)
    idx = int(np.flatnonzero(np.abs(rhs) > 0.5)[0])
    c = complex(lhs.flat[idx] / rhs.flat[idx])
    defect = float(np.max(np.abs(lhs - c * rhs)))
    if defect > _SCALAR_TOL:
        raise NotScalarMultiple(
            f"clock^{j} shift^{l} is not a scalar multiple of the reversed "
            f"product (defect {defect:.3e})"
        )
    return c


def measure_commutation_sign(pair: SchwingerPair) -> int:
    """Sign s in commutation_phase(j, l) = exp(s * 2*pi*i*j*l/N), measured at (1, 1)."""
    c = commutation_phase(pair, 1, 1)
    root = np.exp(2j * np.pi / pair.dim)
    if abs(c - root.conjugate()) < 1e-10:
        return -1
    if abs(c - root) < 1e-10:
        return 1
    raise NotScalarMultiple(f"commutation phase {c!r} is not a primitive root")
