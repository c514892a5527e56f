"""Which spectra support a stroboscopic clock, and which do not.

A spectrum passes iff E_m = omega*(k*m + N*f(m)) with integer k, f; the
decision runs in exact rational arithmetic and returns either the solution
(omega, k, f) or a certificate naming the first obstruction.  The float
front-end shows both a clean rejection and its fundamental limit: numbers
within tolerance of an exactly-compatible spectrum are accepted, because at
finite precision they are indistinguishable from one.
"""

import numpy as np

from qclock import (
    IncompatibilityCertificate,
    Spectrum,
    SpectrumDecomposition,
    analyze_float_spectrum,
    decompose_spectrum,
)

CASES = [
    ("equally spaced ladder", Spectrum(5, (0, 1, 2, 3, 4))),
    ("double-step ladder with quadratic offsets", Spectrum(5, (0, 7, 24, 51, 88))),
    ("perfect squares", Spectrum(5, (0, 1, 4, 9, 16))),
    ("half-integer ladder", Spectrum(3, (0, "1/2", 1))),
]

for label, spec in CASES:
    result = decompose_spectrum(spec)
    print(f"{label}: {[str(e) for e in spec.energies]}")
    if isinstance(result, SpectrumDecomposition):
        print(f"   compatible: omega={result.omega}, k={result.k}, f={result.f}, "
              f"tick={result.delta_tau:.6f}")
    else:
        print(f"   incompatible: {result.detail}")
    print()

print("float front-end, irrational member:")
outcome = analyze_float_spectrum([0.0, 1.0, np.sqrt(2.0)], 3, 1e-12, 10**3)
print("  ", outcome.detail)

print("\nfloat front-end limit: sqrt(2)*1e-3 is within 1e-9 of 28/19799,")
print("so a perturbed integer ladder at N=7 lands on an exactly compatible")
print("rational spectrum and is accepted:")
floats = [float(m) for m in range(7)]
floats[3] += np.sqrt(2.0) * 1e-3
outcome = analyze_float_spectrum(floats, 7, 1e-9, 10**6)
if isinstance(outcome, SpectrumDecomposition):
    print(f"   verdict: compatible with omega={outcome.omega} "
          f"(tick stretched to {outcome.delta_tau:.1f})")
else:
    print("   verdict:", outcome.reason)
print("the same perturbation at N=5 is rejected (28 is not 0 mod 5):")
floats = [float(m) for m in range(5)]
floats[3] += np.sqrt(2.0) * 1e-3
print("   verdict:", analyze_float_spectrum(floats, 5, 1e-9, 10**6).reason)
