"""Library-wide invariant suite backing the ``verify`` CLI command.

Every check is a named residual with an explicit threshold; "upper" checks
pass when the residual is at most the threshold, "lower" checks (negative
controls) when it is at least the threshold.  The suite is deterministic
for a given (dim, seed) and also reports the three measured sign
conventions: the clock/shift exchange sign, the per-tick site-shift
direction, and the propagator/time-operator exchange sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dynamics import (
    clock_run,
    evolve_density,
    measure_shift_sign,
    shift_vs_evolution_residual,
    stroboscopic_step,
)
from .numerics import exp_from_eig, exp_hermitian, hermitian_eig, rational_gcd, rationalize
from .phase_space import build_basis, map_operator, unmap_grid, wigner_of_density
from .schwinger import (
    build_pair,
    clock_power,
    commutation_phase,
    measure_commutation_sign,
    shift_eigenvector,
    shift_power,
)
from .spectrum import Spectrum, SpectrumDecomposition, analyze_float_spectrum, decompose_spectrum
from .time_interval import (
    build_time_operator,
    measure_weyl_sign,
    time_operator_grid,
    verify_energy_shift,
    verify_weyl_pair,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float
    mode: str  # "upper": pass iff residual <= threshold; "lower": iff >=
    passed: bool


@dataclass(frozen=True)
class SuiteReport:
    dim: int
    seed: int
    passed: bool
    signs: dict
    checks: tuple


def _upper(name: str, residual: float, threshold: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, threshold, "upper", residual <= threshold)


def _lower(name: str, residual: float, threshold: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, threshold, "lower", residual >= threshold)


def random_hermitian(rng, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


def random_density(rng, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_compatible_spectrum(rng, dim: int):
    """Seeded spectrum of the clock-compatible form; returns (spectrum, k, f, omega)."""
    k = int(rng.integers(1, dim))
    f = [int(x) for x in rng.integers(-20, 21, size=dim)]
    omega = Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 13)))
    energies = tuple(omega * (k * m + dim * f[m]) for m in range(dim))
    return Spectrum(dim=dim, energies=energies), k, f, omega


def harmonic_spectrum(dim: int) -> Spectrum:
    """Equally spaced ladder 0..N-1 (clock power 1)."""
    return Spectrum(dim=dim, energies=tuple(range(dim)))


def skewed_spectrum(dim: int) -> Spectrum:
    """Clock power 2 with a small integer offset pattern (safe at any dim)."""
    return Spectrum(dim=dim, energies=tuple(2 * m + dim * ((m % 3) - 1) for m in range(dim)))


def _diag_hamiltonian(spec: Spectrum) -> np.ndarray:
    return np.diag(spec.as_floats().astype(np.complex128))


def _offsite_after(pair, hamiltonian, t: float) -> float:
    """Max population outside the dominant Fourier-sector site after evolving |s_0>."""
    state = exp_hermitian(hamiltonian, t) @ shift_eigenvector(pair, 0)
    populations = np.abs(pair.fourier @ state) ** 2
    occupied = int(np.argmax(populations))
    populations[occupied] = -np.inf
    return float(np.max(populations))


def run_suite(dim: int, seed: int = 42) -> SuiteReport:
    """Run every invariant check at the given odd prime dimension."""
    rng = np.random.default_rng(seed)
    pair = build_pair(dim)
    basis = build_basis(pair)
    n = dim

    harmonic = harmonic_spectrum(n)
    skewed = skewed_spectrum(n)
    d_harm = decompose_spectrum(harmonic)
    d_skew = decompose_spectrum(skewed)
    assert isinstance(d_harm, SpectrumDecomposition) and isinstance(d_skew, SpectrumDecomposition)
    top_harm = build_time_operator(pair, d_harm)
    top_skew = build_time_operator(pair, d_skew)

    signs = {
        "commutation_sign": measure_commutation_sign(pair),
        "shift_direction_sign": measure_shift_sign(pair, d_skew),
        "weyl_pair_sign": measure_weyl_sign(top_skew, d_skew),
    }

    checks = []

    # numerics
    a = random_hermitian(rng, n)
    es = hermitian_eig(a)
    recon = (es.vectors * es.values) @ es.vectors.conj().T
    checks.append(_upper("eig-reconstruction", np.max(np.abs(recon - a)), 1e-10))
    checks.append(
        _upper("eig-orthonormality", np.max(np.abs(es.vectors.conj().T @ es.vectors - np.eye(n))), 1e-12)
    )
    s_t, t_t = 0.37, -1.91
    prod = exp_hermitian(a, s_t) @ exp_hermitian(a, t_t)
    checks.append(_upper("exp-additivity", np.max(np.abs(prod - exp_hermitian(a, s_t + t_t))), 1e-10))
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    c = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    checks.append(_upper("trace-cyclicity", abs(np.trace(b @ c) - np.trace(c @ b)), 1e-12))

    failures = 0
    for _ in range(150):
        q = int(rng.integers(1, 1001))
        p = int(rng.integers(-1000 * q, 1000 * q + 1))
        want = Fraction(p, q)
        if rationalize(float(want), 1e-9, 10**6) != want:
            failures += 1
    checks.append(_upper("rationalize-roundtrip", failures, 0.0))

    # clock/shift pair
    worst = 0.0
    for j in range(n):
        for l in range(n):
            target = np.exp(-2j * np.pi * ((j * l) % n) / n)
            worst = max(worst, abs(commutation_phase(pair, j, l) - target))
    checks.append(_upper("schwinger-commutation-table", worst, 1e-12))
    worst = max(
        float(np.max(np.abs(clock_power(pair, n - k) - np.linalg.inv(clock_power(pair, k)))))
        for k in range(1, n)
    )
    checks.append(_upper("schwinger-cyclic-inverse", worst, 1e-12))
    eye = np.eye(n)
    worst = max(
        float(np.max(np.abs(shift_power(pair, s) @ eye[:, m] - eye[:, (m - s) % n])))
        for s in range(n)
        for m in range(n)
    )
    checks.append(_upper("schwinger-shift-action", worst, 0.0))
    checks.append(
        _upper("schwinger-fourier-unitary", np.max(np.abs(pair.fourier @ pair.fourier.conj().T - eye)), 1e-12)
    )
    worst = max(
        float(
            np.max(
                np.abs(
                    pair.shift @ shift_eigenvector(pair, k)
                    - np.exp(2j * np.pi * k / n) * shift_eigenvector(pair, k)
                )
            )
        )
        for k in range(n)
    )
    checks.append(_upper("schwinger-fourier-eigen", worst, 1e-12))
    checks.append(_upper("mub-overlap", np.max(np.abs(np.abs(pair.fourier) ** 2 - 1.0 / n)), 1e-12))

    # operator basis
    g = basis.elements
    flat = g.reshape(n * n, n * n)
    checks.append(
        _upper("basis-orthogonality", np.max(np.abs(flat.conj() @ flat.T - n * np.eye(n * n))), 1e-10)
    )
    checks.append(
        _upper("basis-hermiticity", np.max(np.abs(g - np.conj(np.transpose(g, (0, 1, 3, 2))))), 1e-10)
    )
    checks.append(
        _upper("basis-trace", np.max(np.abs(np.einsum("mnrr->mn", g) - 1.0)), 1e-12)
    )
    checks.append(_upper("basis-sum-identity", np.max(np.abs(g.sum(axis=(0, 1)) - n * eye)), 1e-10))
    worst = 0.0
    for _ in range(50):
        op = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        worst = max(worst, float(np.max(np.abs(unmap_grid(basis, map_operator(basis, op)) - op))))
    checks.append(_upper("basis-roundtrip", worst, 1e-10))
    op_a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    op_b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    ca, cb = complex(0.7, -0.3), complex(-1.1, 0.4)
    lin = map_operator(basis, ca * op_a + cb * op_b) - (
        ca * map_operator(basis, op_a) + cb * map_operator(basis, op_b)
    )
    checks.append(_upper("basis-linearity", np.max(np.abs(lin)), 1e-12))
    rho = random_density(rng, n)
    grid = wigner_of_density(basis, rho)
    row_defect = np.max(np.abs(grid.sum(axis=1) - n * np.diag(rho)))
    col_defect = np.max(
        np.abs(grid.sum(axis=0) - n * np.einsum("kn,nm,km->k", pair.fourier, rho, pair.fourier.conj()))
    )
    checks.append(_upper("basis-marginals", max(row_defect, col_defect), 1e-10))

    # spectrum gate
    soundness = 0.0
    id_failures = 0
    gcd_failures = 0
    perturb_failures = 0
    for _ in range(100):
        spec, _, _, _ = random_compatible_spectrum(rng, n)
        result = decompose_spectrum(spec)
        if not isinstance(result, SpectrumDecomposition) or not result.matches(spec):
            id_failures += 1
            continue
        ratios = [int(e / result.omega) for e in spec.energies]
        if rational_gcd([r for r in ratios if r != 0]) != 1:
            gcd_failures += 1
        h = _diag_hamiltonian(spec)
        gap = np.max(
            np.abs(exp_hermitian(h, result.delta_tau) - clock_power(pair, -result.k))
        )
        soundness = max(soundness, float(gap))
        floats = list(spec.as_floats())
        floats[int(rng.integers(0, n))] += np.sqrt(2.0) * 1e-3
        if isinstance(analyze_float_spectrum(floats, n, 1e-9, 10**6), SpectrumDecomposition):
            perturb_failures += 1
    checks.append(_upper("spectrum-soundness", soundness, 1e-10))
    checks.append(_upper("spectrum-completeness", id_failures, 0.0))
    checks.append(_upper("spectrum-lambda-maximality", gcd_failures, 0.0))
    checks.append(_upper("spectrum-perturbation-reject", perturb_failures, 0.0))

    # time-interval operator (both canonical spectra)
    for label, spec, dec, top in (
        ("harmonic", harmonic, d_harm, top_harm),
        ("skewed", skewed, d_skew, top_skew),
    ):
        checks.append(
            _upper(f"tio-hermiticity-{label}", np.max(np.abs(top.matrix - top.matrix.conj().T)), 1e-12)
        )
        worst = max(
            float(
                np.max(
                    np.abs(
                        top.matrix @ shift_eigenvector(pair, l)
                        - top.delta_tau * l * shift_eigenvector(pair, l)
                    )
                )
            )
            for l in range(n)
        )
        checks.append(_upper(f"tio-eigen-action-{label}", worst, 1e-10))
        checks.append(
            _upper(
                f"tio-trace-{label}",
                abs(np.trace(top.matrix).real - top.delta_tau * n * (n - 1) / 2.0),
                1e-10,
            )
        )
        tgrid = time_operator_grid(basis, top)
        expected = np.broadcast_to(top.delta_tau * np.arange(n), (n, n))
        checks.append(_upper(f"tio-grid-{label}", np.max(np.abs(tgrid - expected)), 1e-10))
        worst = max(verify_energy_shift(top, spec, s) for s in range(n))
        checks.append(_upper(f"tio-energy-shift-{label}", worst, 1e-10))

        sigma = signs["weyl_pair_sign"]
        if n <= 7:
            table = [(a, b) for a in range(n) for b in range(n)]
        else:
            table = [(a, b) for a in range(3) for b in range(3)]
            table += [
                (int(rng.integers(0, n)), int(rng.integers(0, n))) for _ in range(6)
            ]
        worst = 0.0
        for a, b in table:
            phase = verify_weyl_pair(top, dec, a, b)
            target = np.exp(sigma * 2j * np.pi * ((a * b * dec.k * dec.k) % n) / n)
            worst = max(worst, abs(phase - target))
        checks.append(_upper(f"tio-weyl-phase-{label}", worst, 1e-10))

    # the exchange phase only sees the ladder gap, not which rung it starts on
    energies = [float(e) for e in d_skew.energies()]
    es_top = hermitian_eig(top_skew.matrix)
    prop = exp_hermitian(_diag_hamiltonian(skewed), top_skew.delta_tau)
    worst = 0.0
    for j in (1, 2):
        reference = verify_weyl_pair(top_skew, d_skew, 1, j)
        for m in range(n - j):
            w = exp_from_eig(es_top, energies[m + j] - energies[m])
            lhs = prop @ w
            rhs = w @ prop
            idx = int(np.argmax(np.abs(rhs)))
            worst = max(worst, abs(complex(lhs.flat[idx] / rhs.flat[idx]) - reference))
    checks.append(_upper("tio-weyl-gap-only", worst, 1e-10))

    # dynamics
    for label, spec, dec in (("harmonic", harmonic, d_harm), ("skewed", skewed, d_skew)):
        h = _diag_hamiltonian(spec)
        worst = max(
            float(
                np.max(
                    np.abs(
                        exp_hermitian(h, t * dec.delta_tau)
                        - clock_power(pair, -(t * dec.k) % n)
                    )
                )
            )
            for t in range(1, 2 * n + 1)
        )
        checks.append(_upper(f"dynamics-hypothesis-{label}", worst, 1e-10))

        trace = clock_run(pair, basis, dec, spec, initial_index=0, steps=n)
        occupied = [rec.occupied_index for rec in trace.steps]
        missing = len(set(range(n)) - set(occupied[:n]))
        checks.append(_upper(f"clock-coverage-{label}", missing, 0.0))
        worst = max(
            max(1.0 - rec.occupied_probability, rec.max_offsite) for rec in trace.steps
        )
        checks.append(_upper(f"clock-occupancy-{label}", worst, 1e-9))
        state = shift_eigenvector(pair, 0)
        rho0 = np.outer(state, state.conj())
        rho_n = rho0
        for _ in range(n):
            rho_n = evolve_density(rho_n, h, dec.delta_tau)
        checks.append(_upper(f"clock-periodicity-{label}", np.max(np.abs(rho_n - rho0)), 1e-10))

        mixed = random_density(rng, n)
        checks.append(
            _upper(
                f"dynamics-shift-vs-evolution-{label}",
                shift_vs_evolution_residual(pair, basis, dec, spec, mixed, n),
                1e-9,
            )
        )

    grid0 = wigner_of_density(basis, random_density(rng, n))
    rolled = grid0
    for _ in range(n):
        rolled = stroboscopic_step(rolled, d_skew.k, -1)
    checks.append(_upper("dynamics-shift-cyclic", np.max(np.abs(rolled - grid0)), 0.0))
    column = np.zeros((n, n))
    column[:, 2 % n] = 1.0
    sign = signs["shift_direction_sign"]
    target = np.zeros((n, n))
    target[:, (2 + sign * d_skew.k) % n] = 1.0
    checks.append(
        _upper(
            "dynamics-shift-delta",
            np.max(np.abs(stroboscopic_step(column, d_skew.k, sign) - target)),
            0.0,
        )
    )

    # negative controls: between ticks and for an incommensurate ladder the
    # state is never confined to one site
    h_harm = _diag_hamiltonian(harmonic)
    checks.append(
        _lower(
            "control-half-tick-offsite",
            _offsite_after(pair, h_harm, d_harm.delta_tau / 2.0),
            0.01,
        )
    )
    squares = Spectrum(dim=n, energies=tuple(m * m for m in range(n)))
    h_sq = _diag_hamiltonian(squares)
    scan = [2.0 * np.pi * j / 40.0 for j in range(1, 40)]
    checks.append(
        _lower(
            "control-incompatible-scan",
            min(_offsite_after(pair, h_sq, t) for t in scan),
            0.01,
        )
    )

    checks.sort(key=lambda chk: chk.name)
    return SuiteReport(
        dim=dim,
        seed=seed,
        passed=all(chk.passed for chk in checks),
        signs=signs,
        checks=tuple(checks),
    )
