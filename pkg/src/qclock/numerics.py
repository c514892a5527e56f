"""Dense complex linear algebra and exact rational helpers.

All functions are pure and never mutate their inputs, so concurrent use is
safe.  Matrices are plain ``numpy`` arrays of ``complex128``; exact rational
values are ``fractions.Fraction`` (arbitrary precision, always in lowest
terms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AllZero,
    DimensionMismatch,
    NoConvergence,
    NoRationalWithinTolerance,
    NotHermitian,
)

HERMITICITY_TOL = 1e-12

_JACOBI_SWEEPS = 100
_JACOBI_OFF_TOL = 1e-14  # scaled by the largest input magnitude
_GAUGE_FLOOR = 1e-8  # smallest component considered "nonzero" when phase-fixing
_CLUSTER_TOL = 1e-10  # eigenvalue gap below which vectors count as degenerate


def is_odd_prime(n: int) -> bool:
    """Trial-division primality, restricted to odd primes (3, 5, 7, ...)."""
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _as_square_complex(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix entries must be finite")
    return arr


def hermiticity_defect(a) -> float:
    """Largest entrywise deviation of a matrix from its adjoint."""
    arr = _as_square_complex(a)
    return float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (real, ascending) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def _max_offdiag(a: np.ndarray) -> float:
    mask = ~np.eye(a.shape[0], dtype=bool)
    return float(np.max(np.abs(a[mask]))) if a.shape[0] > 1 else 0.0


def _rotate(a: np.ndarray, vecs: np.ndarray, p: int, q: int) -> None:
    """One complex Jacobi rotation zeroing a[p, q] (and a[q, p]) in place.

    The 2x2 Hermitian block is reduced to a real symmetric one by pulling
    out the phase of a[p, q], then rotated by the classic stable angle.
    """
    apq = a[p, q]
    phase = apq / abs(apq)
    tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    # unitary is [[c, s], [-s*conj(phase), c*conj(phase)]] on the (p, q) plane
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * np.conj(phase) * col_q
    a[:, q] = s * col_p + c * np.conj(phase) * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * phase * row_q
    a[q, :] = s * row_p + c * phase * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vcol_p = vecs[:, p].copy()
    vcol_q = vecs[:, q].copy()
    vecs[:, p] = c * vcol_p - s * np.conj(phase) * vcol_q
    vecs[:, q] = s * vcol_p + c * np.conj(phase) * vcol_q


def _first_sizable(col: np.ndarray) -> int:
    idx = np.flatnonzero(np.abs(col) > _GAUGE_FLOOR)
    return int(idx[0]) if idx.size else int(np.argmax(np.abs(col)))


def hermitian_eig(a) -> EigenSystem:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.

    Eigenvalues come back ascending; eigenvector columns are orthonormal and
    gauge-fixed (first sizable component real positive).  Within a degenerate
    cluster the columns are ordered by that component's real part, so repeated
    runs on the same matrix give identical output.

    Raises NotHermitian when max|a - a^dag| exceeds 1e-12, NoConvergence if
    the off-diagonal has not shrunk below threshold after 100 sweeps.
    """
    arr = _as_square_complex(a)
    defect = hermiticity_defect(arr)
    if defect > HERMITICITY_TOL:
        raise NotHermitian(f"max |A - A^dag| = {defect:.3e} exceeds {HERMITICITY_TOL}")

    n = arr.shape[0]
    work = 0.5 * (arr + arr.conj().T)  # exact Hermitian symmetrization
    vecs = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(work))) if work.size else 0.0)
    off_tol = _JACOBI_OFF_TOL * scale

    for _ in range(_JACOBI_SWEEPS):
        if _max_offdiag(work) <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > off_tol:
                    _rotate(work, vecs, p, q)
    if _max_offdiag(work) > off_tol:
        raise NoConvergence(
            f"off-diagonal {_max_offdiag(work):.3e} after {_JACOBI_SWEEPS} sweeps"
        )

    values = np.diag(work).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vecs = vecs[:, order]

    for j in range(n):
        pivot = vecs[_first_sizable(vecs[:, j]), j]
        vecs[:, j] = vecs[:, j] * (np.conj(pivot) / abs(pivot))

    # deterministic order inside degenerate clusters
    cluster_tol = _CLUSTER_TOL * scale
    start = 0
    for end in range(1, n + 1):
        if end == n or values[end] - values[end - 1] > cluster_tol:
            if end - start > 1:
                keys = [vecs[_first_sizable(vecs[:, j]), j].real for j in range(start, end)]
                perm = sorted(range(end - start), key=lambda i: keys[i])
                block = vecs[:, start:end].copy()
                vals = values[start:end].copy()
                for i, src in enumerate(perm):
                    vecs[:, start + i] = block[:, src]
                    values[start + i] = vals[src]
            start = end

    values.setflags(write=False)
    vecs.setflags(write=False)
    return EigenSystem(values=values, vectors=vecs)


def exp_from_eig(es: EigenSystem, t: float) -> np.ndarray:
    """exp(-i*A*t) rebuilt from a precomputed eigensystem of A."""
    phases = np.exp(-1j * es.values * float(t))
    return (es.vectors * phases) @ es.vectors.conj().T


def exp_hermitian(a, t: float) -> np.ndarray:
    """exp(-i*a*t) for Hermitian a, via eigendecomposition (hbar = 1).

    The result is unitary to working precision and satisfies the group law
    exp(-i*a*s) exp(-i*a*t) = exp(-i*a*(s+t)).
    """
    return exp_from_eig(hermitian_eig(a), t)


def rationalize(x: float, tolerance: float, max_denominator: int) -> Fraction:
    """Smallest-denominator continued-fraction convergent of x within tolerance.

    Walks the convergents p/q of x in order of increasing q and returns the
    first with |x - p/q| <= tolerance and q <= max_denominator.  The distance
    check is exact (x is converted to its binary rational value), so a float
    that was produced from a modest fraction is recovered verbatim.

    Raises NoRationalWithinTolerance when no admissible convergent exists.
    """
    if tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    if not math.isfinite(x):
        raise ValueError("x must be finite")

    target = Fraction(x)
    tol = Fraction(tolerance)
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    xi = float(x)
    for _ in range(64):
        a0 = math.floor(xi)
        p_cur = a0 * p_prev + p_prev2
        q_cur = a0 * q_prev + q_prev2
        if q_cur > max_denominator:
            break
        candidate = Fraction(p_cur, q_cur)
        if abs(candidate - target) <= tol:
            return candidate
        p_prev, p_prev2 = p_cur, p_prev
        q_prev, q_prev2 = q_cur, q_prev
        frac = xi - a0
        if frac <= 0.0:
            break
        xi = 1.0 / frac
        if not math.isfinite(xi):
            break
    raise NoRationalWithinTolerance(
        f"no p/q with q <= {max_denominator} lies within {tolerance} of {x!r}"
    )


def rational_gcd(xs) -> Fraction:
    """Largest positive rational dividing every input into an integer.

    For fractions p_i/q_i in lowest terms this is gcd(p_i)/lcm(q_i); signs
    are ignored and zeros are transparent.  Raises AllZero when every input
    vanishes (every rational would divide).
    """
    fracs = [abs(Fraction(x)) for x in xs]
    nonzero = [f for f in fracs if f != 0]
    if not nonzero:
        raise AllZero("rational gcd needs at least one nonzero value")
    num = math.gcd(*(f.numerator for f in nonzero))
    den = math.lcm(*(f.denominator for f in nonzero))
    return Fraction(num, den)
