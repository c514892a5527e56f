"""Decide whether a spectrum supports a stroboscopic clock.

A spectrum {E_m} at odd prime dimension N admits a time interval dtau with
propagator equal to a power of the clock operator iff it can be written

    E_m = omega * (k*m + N*f(m)),   k in 1..N-1,  f integer-valued,

with hbar = 1 throughout (energies are dimensionless multiples of a
reference frequency).  The decision procedure is exact rational arithmetic:

1. omega is the rational gcd of the nonzero energies, so every ratio
   r_m = E_m/omega is an integer.  Scaling omega down by an integer t
   multiplies the residues r_m mod N by t, which preserves the linear form
   above iff it already held, so only the maximal omega needs testing.
2. The residues must be r_m = k*m (mod N) for a single nonzero k.  N prime
   makes m = 1 invertible, so k is read off at m = 1 and validated at every
   other index; the first index where no k fits goes into the certificate.
   The ground energy is *not* shifted away: r_0 != 0 is a legitimate failure.

On success the smallest admissible interval is dtau = 2*pi/(N*omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import DegenerateSpectrum, DimensionNotOddPrime, NoRationalWithinTolerance
from .numerics import is_odd_prime, rational_gcd, rationalize

NOT_COMMENSURABLE = "NotCommensurable"
RESIDUES_NOT_LINEAR = "ResiduesNotLinear"


@dataclass(frozen=True)
class Spectrum:
    """Exactly N rational energies, indexed by the diagonal-basis label m."""

    dim: int
    energies: tuple

    def __post_init__(self):
        if not is_odd_prime(self.dim):
            raise DimensionNotOddPrime(f"dimension must be an odd prime, got {self.dim}")
        energies = tuple(Fraction(e) for e in self.energies)
        if len(energies) != self.dim:
            raise ValueError(f"expected {self.dim} energies, got {len(energies)}")
        object.__setattr__(self, "energies", energies)

    def as_floats(self) -> np.ndarray:
        return np.array([float(e) for e in self.energies])


@dataclass(frozen=True)
class SpectrumDecomposition:
    """Solution (omega, k, f) of the clock condition, exact in rationals.

    omega is the spectral gcd (the lambda of the commensurability test),
    k the clock power per tick, f the integer offsets; E_m is recovered
    exactly as omega*(k*m + dim*f[m]).
    """

    dim: int
    omega: Fraction
    k: int
    f: tuple

    @property
    def delta_tau(self) -> float:
        """Smallest interval at which the propagator is a clock power."""
        return 2.0 * math.pi / (self.dim * float(self.omega))

    def energy(self, m: int) -> Fraction:
        return self.omega * (self.k * m + self.dim * self.f[m])

    def energies(self) -> tuple:
        return tuple(self.energy(m) for m in range(self.dim))

    def matches(self, spec: Spectrum) -> bool:
        return self.dim == spec.dim and self.energies() == spec.energies


@dataclass(frozen=True)
class IncompatibilityCertificate:
    """Why a spectrum fails: the reason plus enough detail to audit it.

    For RESIDUES_NOT_LINEAR, ``residues`` holds E_m/omega mod N and
    ``first_bad_index`` the first m at which no single k can fit.  For
    NOT_COMMENSURABLE (float front-end only), ``first_bad_index`` is the
    energy that failed rationalization and ``residues`` is None.
    """

    reason: str
    residues: Optional[tuple] = None
    first_bad_index: Optional[int] = None
    detail: str = ""

    def __post_init__(self):
        if self.reason == RESIDUES_NOT_LINEAR:
            assert self.residues is not None and self.first_bad_index is not None
        elif self.reason == NOT_COMMENSURABLE:
            assert self.residues is None
        else:
            raise ValueError(f"unknown reason {self.reason!r}")


DecompositionResult = Union[SpectrumDecomposition, IncompatibilityCertificate]


def decompose_spectrum(spec: Spectrum) -> DecompositionResult:
    """Exact decision procedure described in the module docstring.

    Returns a SpectrumDecomposition or an IncompatibilityCertificate; raises
    DegenerateSpectrum when all energies are equal (only the trivial k = 0
    would fit, and the residues then cannot cover all classes mod N).
    """
    n = spec.dim
    energies = spec.energies
    if all(e == energies[0] for e in energies):
        raise DegenerateSpectrum("all energies equal; no nonzero clock power fits")

    omega = rational_gcd([e for e in energies if e != 0])
    ratios = [e / omega for e in energies]
    assert all(r.denominator == 1 for r in ratios)
    ratios = [int(r) for r in ratios]
    residues = tuple(r % n for r in ratios)

    def certificate(first_bad):
        return IncompatibilityCertificate(
            reason=RESIDUES_NOT_LINEAR,
            residues=residues,
            first_bad_index=first_bad,
            detail=f"residues {list(residues)} are not k*m (mod {n}) for any k; "
            f"first obstruction at m={first_bad}",
        )

    if residues[0] != 0:
        return certificate(0)
    k = residues[1]
    if k == 0:
        return certificate(1)
    for m in range(2, n):
        if residues[m] != (k * m) % n:
            return certificate(m)

    f = tuple((ratios[m] - k * m) // n for m in range(n))
    assert all((ratios[m] - k * m) % n == 0 for m in range(n))
    return SpectrumDecomposition(dim=n, omega=omega, k=k, f=f)


def analyze_float_spectrum(
    energies, dim: int, tolerance: float, max_denominator: int
) -> DecompositionResult:
    """Float front-end: rationalize each energy, then run the exact gate.

    An energy with no admissible rational approximation yields a
    NOT_COMMENSURABLE certificate pointing at its index.
    """
    fracs = []
    for i, x in enumerate(energies):
        try:
            fracs.append(rationalize(float(x), tolerance, max_denominator))
        except NoRationalWithinTolerance:
            return IncompatibilityCertificate(
                reason=NOT_COMMENSURABLE,
                first_bad_index=i,
                detail=f"energy {i} ({float(x)!r}) has no rational approximation "
                f"within {tolerance} at denominators <= {max_denominator}",
            )
    return decompose_spectrum(Spectrum(dim=dim, energies=tuple(fracs)))


def power_at_step(decomp: SpectrumDecomposition, n: int) -> int:
    """Clock power after n ticks: (n * k) mod N."""
    if n < 1:
        raise ValueError("step count must be >= 1")
    return (n * decomp.k) % decomp.dim


def check_hypothesis(spec: Spectrum, delta_t: float, tolerance: float = 1e-10) -> Optional[int]:
    """The k (if any) with exp(-i*E_m*delta_t) = exp(-2*pi*i*k*m/N) for all m.

    Returns the unique matching k in 0..N-1, or None when no k (or more than
    one, which only happens for sloppy tolerances) fits.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = spec.dim
    phases = np.exp(-1j * spec.as_floats() * float(delta_t))
    m = np.arange(n)
    matches = []
    for k in range(n):
        reference = np.exp(-2j * np.pi * ((k * m) % n) / n)
        if np.max(np.abs(phases - reference)) < tolerance:
            matches.append(k)
    return matches[0] if len(matches) == 1 else None
