"""The time-interval operator of a compatible spectrum.

T is Hermitian, diagonal in the shift eigenbasis with evenly spaced time
eigenvalues, and generates cyclic shifts along the energy ladder: the
exponential exp(-i*T*(E_{m+s} - E_m)) equals a pure shift power, and its
exchange phase with the propagator closes the clock/shift algebra.
"""

import numpy as np

from qclock import (
    Spectrum,
    build_pair,
    build_basis,
    build_time_operator,
    decompose_spectrum,
    exp_hermitian,
    measure_weyl_sign,
    shift_power,
    time_operator_grid,
    verify_energy_shift,
    verify_weyl_pair,
)

spec = Spectrum(5, (0, 7, 24, 51, 88))
pair = build_pair(5)
basis = build_basis(pair)
dec = decompose_spectrum(spec)
top = build_time_operator(pair, dec)

print("spectrum:", [int(e) for e in spec.energies], f"-> k={dec.k}, tick={top.delta_tau:.6f}")
print("time eigenvalues (tick * 0..N-1):", np.round(top.eigenvalues, 6))
print("hermiticity defect:", float(np.max(np.abs(top.matrix - top.matrix.conj().T))))

grid = time_operator_grid(basis, top)
print("\nphase-space representative (every row is tick * column):")
for row in np.round(grid.real, 4):
    print("   ", row)

print("\nladder-shift identity: exp(-i*T*(E_1 - E_0)) vs shift^(-k)")
w = exp_hermitian(top.matrix, float(spec.energies[1] - spec.energies[0]))
print("   max difference:", float(np.max(np.abs(w - shift_power(pair, -dec.k)))))
print("residuals over every gap s:",
      [f"{verify_energy_shift(top, spec, s):.2e}" for s in range(5)])

sigma = measure_weyl_sign(top, dec)
print("\nexchange phase with the propagator, measured sign:", sigma)
for n in range(3):
    phases = [verify_weyl_pair(top, dec, n, j) for j in range(5)]
    print(f"   n={n}:", "  ".join(f"{np.angle(c) / (2 * np.pi / 5):+5.1f}" for c in phases),
          "(units of 2*pi/5)")
